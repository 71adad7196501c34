//! OEIS b-files: "n a(n)" per line, `#` comments.

use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::parser::ProductSpec;
use crate::series::{expand, max_order, SeriesError, SeriesPoly};

#[derive(Debug, Error)]
pub enum BfileError {
    #[error("line {line}: expected \"n a(n)\", got {text:?}")]
    Format { line: usize, text: String },
    #[error("line {line}: expected index {expected}, found {found}")]
    Gap { line: usize, expected: i64, found: i64 },
    #[error("b-file has no data lines")]
    Empty,
    #[error("mismatch at n = {n}: expansion gives {expected}, b-file has {found}")]
    Mismatch { n: i64, expected: BigInt, found: BigInt },
    #[error("b-file offset {0} is negative; product series start at 0")]
    NegativeOffset(i64),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Offset and consecutive values of a b-file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bfile {
    pub offset: i64,
    pub values: Vec<BigInt>,
}

pub fn bfile_parse(text: &str) -> Result<Bfile, BfileError> {
    let mut offset = None;
    let mut values = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || BfileError::Format { line: i + 1, text: raw.to_string() };
        let mut it = line.split_whitespace();
        let (Some(n), Some(a), None) = (it.next(), it.next(), it.next()) else {
            return Err(bad());
        };
        let n: i64 = n.parse().map_err(|_| bad())?;
        let a: BigInt = a.parse().map_err(|_| bad())?;
        let start = *offset.get_or_insert(n);
        let expected = start + values.len() as i64;
        if n != expected {
            return Err(BfileError::Gap { line: i + 1, expected, found: n });
        }
        values.push(a);
    }
    let offset = offset.ok_or(BfileError::Empty)?;
    Ok(Bfile { offset, values })
}

pub fn bfile_read(path: &Path) -> Result<Bfile, BfileError> {
    bfile_parse(&fs::read_to_string(path)?)
}

pub fn bfile_write(path: &Path, series: &SeriesPoly) -> Result<(), BfileError> {
    fs::write(path, series.to_bfile(None))?;
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossCheck {
    pub first: i64,
    pub last: i64,
    pub compared: usize,
}

/// Exact comparison of the expansion against the b-file over their overlap.
pub fn cross_check_oeis(spec: &ProductSpec, bfile: &Bfile) -> Result<CrossCheck, BfileError> {
    if bfile.offset < 0 {
        return Err(BfileError::NegativeOffset(bfile.offset));
    }
    let last = (bfile.offset + bfile.values.len() as i64 - 1).min(max_order() as i64);
    if last < bfile.offset {
        return Ok(CrossCheck { first: bfile.offset, last, compared: 0 });
    }
    let poly = expand(spec, last as usize)?;
    for (i, found) in bfile.values.iter().enumerate() {
        let n = bfile.offset + i as i64;
        if n > last {
            break;
        }
        let expected = &poly.coeffs[n as usize];
        if expected != found {
            return Err(BfileError::Mismatch { n, expected: expected.clone(), found: found.clone() });
        }
    }
    Ok(CrossCheck { first: bfile.offset, last, compared: (last - bfile.offset + 1) as usize })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    #[test]
    fn parse_plain_and_commented() {
        let a = bfile_parse("0 1\n1 1\n2 2").unwrap();
        assert_eq!(a.offset, 0);
        assert_eq!(a.values, vec![BigInt::from(1), BigInt::from(1), BigInt::from(2)]);
        let b = bfile_parse("# A000041\n# header\n\n0 1\n1 1\n2 2\n").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn format_and_gap_errors() {
        assert!(matches!(bfile_parse("0 1\n1"), Err(BfileError::Format { line: 2, .. })));
        assert!(matches!(bfile_parse("0 1\n1 x"), Err(BfileError::Format { .. })));
        assert!(matches!(bfile_parse("0 1\n1 1 1"), Err(BfileError::Format { .. })));
        assert!(matches!(bfile_parse("0 1\n2 2"), Err(BfileError::Gap { expected: 1, found: 2, .. })));
        assert!(matches!(bfile_parse("# only\n"), Err(BfileError::Empty)));
    }

    #[test]
    fn round_trip_through_disk() {
        let spec = parse("prod(k>=1, 1/(1-q^k))").unwrap();
        let p = expand(&spec, 20).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("b.txt");
        bfile_write(&path, &p).unwrap();
        let back = bfile_read(&path).unwrap();
        assert_eq!(back.offset, 0);
        assert_eq!(back.values, p.coeffs);
    }

    #[test]
    fn cross_check_and_fault_injection() {
        let spec = parse("prod(k>=1, (1+q^k)/(1-q^k))").unwrap();
        let good = bfile_parse("0 1\n1 2\n2 4\n3 8\n4 14").unwrap();
        assert_eq!(cross_check_oeis(&spec, &good).unwrap().compared, 5);
        let bad = bfile_parse("0 1\n1 2\n2 4\n3 9\n4 14").unwrap();
        match cross_check_oeis(&spec, &bad) {
            Err(BfileError::Mismatch { n, .. }) => assert_eq!(n, 3),
            other => panic!("{other:?}"),
        }
        let shifted = bfile_parse("2 4\n3 8").unwrap();
        assert_eq!(cross_check_oeis(&spec, &shifted).unwrap().compared, 2);
    }
}

//! Text format for infinite q-products.
//!
//! ```text
//! prod(k>=1, 1/(1-q^k))
//! prod(k>=0, (1+q^(5k+2)))
//! prod(k>=1, (1+q^k)^k / (1-q^k)^k)
//! prod(k>=1, 1/((1+q^k)*(1-q^k)^3))
//! prod(k>=1, 1/(1-q^k)^(2k-1))
//! prod(k>=1, 1/(1-q^k)^2^k)
//! ```
//!
//! Factors are `(1+q^e)` or `(1-q^e)` with `e` either `k` or a parenthesised
//! `s*k+t`; the optional power is an integer, `k`, `k^m`, `m^k` or a
//! parenthesised `m*k+c`. Everything after `/` is the denominator, which
//! may also be wrapped in one extra pair of parentheses. Whitespace is
//! ignored.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: expected {expected}")]
    Syntax { position: usize, expected: String },
    #[error("invalid product: {0}")]
    Validation(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Location {
    Numerator,
    Denominator,
}

/// Exponent of a factor as a function of the product index k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExponentFn {
    Constant(u64),
    /// m·k + c
    Affine {
        m: u64,
        c: i64,
    },
    /// k^m
    Power(u32),
    /// m^k
    Geometric(u64),
}

impl ExponentFn {
    /// Value at k when it fits in an i128; `None` for geometric overflow.
    pub fn eval_i128(&self, k: u64) -> Option<i128> {
        match *self {
            ExponentFn::Constant(m) => Some(m as i128),
            ExponentFn::Affine { m, c } => Some(m as i128 * k as i128 + c as i128),
            ExponentFn::Power(m) => (k as i128).checked_pow(m),
            ExponentFn::Geometric(m) => (m as i128).checked_pow(u32::try_from(k).ok()?),
        }
    }

    /// Upper bound on the bit length of the value at k.
    pub fn bits_at(&self, k: u64) -> u64 {
        match *self {
            ExponentFn::Geometric(m) => {
                let lg = 64 - u64::from(m.leading_zeros());
                lg.saturating_mul(k).max(1)
            }
            _ => 128,
        }
    }

    fn min_on(&self, start: u64) -> i128 {
        match *self {
            // nondecreasing in k
            ExponentFn::Affine { .. } | ExponentFn::Power(_) | ExponentFn::Geometric(_) => {
                self.eval_i128(start).unwrap_or(i128::MAX)
            }
            ExponentFn::Constant(m) => m as i128,
        }
    }

    /// Shift so that `self(k) == shifted(k + 1)`; only constant and affine
    /// exponents survive.
    fn shift_start(&self) -> Option<ExponentFn> {
        match *self {
            ExponentFn::Constant(m) => Some(ExponentFn::Constant(m)),
            ExponentFn::Affine { m, c } => Some(normalize_affine(m, c.checked_sub(m as i64)?)),
            _ => None,
        }
    }
}

fn normalize_affine(m: u64, c: i64) -> ExponentFn {
    match (m, c) {
        (0, c) if c >= 0 => ExponentFn::Constant(c as u64),
        (1, 0) => ExponentFn::Power(1),
        _ => ExponentFn::Affine { m, c },
    }
}

/// One factor (1 ± q^d)^{±e(k)} with d = s·j + t for j = 0, 1, 2, …
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FactorTerm {
    pub sign: Sign,
    pub s: u64,
    /// degree at the first product index
    pub t: u64,
    pub exponent: ExponentFn,
    pub location: Location,
}

impl FactorTerm {
    pub fn degree(&self, j: u64) -> u64 {
        self.s * j + self.t
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductSpec {
    /// first value of the product index k (0 or 1)
    pub start: u64,
    pub factors: Vec<FactorTerm>,
}

impl ProductSpec {
    /// Exponent of `factor` at its j-th degree (product index k = j + start).
    pub fn exponent_i128(&self, factor: &FactorTerm, j: u64) -> Option<i128> {
        factor.exponent.eval_i128(j + self.start)
    }

    pub fn validate(&self) -> Result<(), ParseError> {
        if self.factors.is_empty() {
            return Err(ParseError::Validation("product has no factors".into()));
        }
        if self.start > 1 {
            return Err(ParseError::Validation("product index must start at 0 or 1".into()));
        }
        for f in &self.factors {
            validate_factor(f, self.start)?;
        }
        Ok(())
    }

    /// Rewrites k>=0 as k>=1 where every factor allows it.
    fn canonicalize(mut self) -> ProductSpec {
        if self.start == 0 && self.factors.iter().all(|f| f.t > f.s) {
            let shifted: Option<Vec<ExponentFn>> = self.factors.iter().map(|f| f.exponent.shift_start()).collect();
            if let Some(exps) = shifted {
                self.start = 1;
                for (f, e) in self.factors.iter_mut().zip(exps) {
                    f.exponent = e;
                }
            }
        }
        self
    }
}

fn validate_factor(f: &FactorTerm, start: u64) -> Result<(), ParseError> {
    if f.s == 0 {
        return Err(ParseError::Validation("q-exponent must grow with k".into()));
    }
    if f.t == 0 {
        return Err(ParseError::Validation("q-exponent must be positive for every k in range".into()));
    }
    match f.exponent {
        ExponentFn::Constant(0) => return Err(ParseError::Validation("factor power 0".into())),
        ExponentFn::Affine { m: 0, .. } => return Err(ParseError::Validation("affine power needs a slope".into())),
        ExponentFn::Power(0) => return Err(ParseError::Validation("power k^0 is a constant".into())),
        ExponentFn::Geometric(m) if m < 2 => {
            return Err(ParseError::Validation("geometric power m^k needs m >= 2".into()))
        }
        _ => {}
    }
    if f.exponent.min_on(start) < 0 {
        return Err(ParseError::Validation(format!(
            "factor power is negative at k = {start}; use the denominator instead"
        )));
    }
    Ok(())
}

/// Parses and canonicalizes a product.
pub fn parse(text: &str) -> Result<ProductSpec, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let spec = p.product()?;
    spec.validate()?;
    Ok(spec.canonicalize())
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

struct RawFactor {
    sign: Sign,
    s: i64,
    t: i64,
    exponent: ExponentFn,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn peek2(&mut self) -> Option<u8> {
        self.skip_ws();
        let mut i = self.pos + 1;
        while i < self.src.len() && self.src[i].is_ascii_whitespace() {
            i += 1;
        }
        self.src.get(i).copied()
    }

    fn err<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax { position: self.pos, expected: expected.to_string() })
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&format!("'{}'", c as char))
        }
    }

    fn keyword(&mut self, word: &str) -> Result<(), ParseError> {
        for &c in word.as_bytes() {
            self.expect(c)?;
        }
        Ok(())
    }

    fn integer(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().map_err(|_| ParseError::Syntax { position: start, expected: "integer below 2^64".into() })
    }

    fn small_integer(&mut self) -> Result<i64, ParseError> {
        let at = self.pos;
        let n = self.integer()?;
        i64::try_from(n).map_err(|_| ParseError::Syntax { position: at, expected: "integer below 2^63".into() })
    }

    fn product(&mut self) -> Result<ProductSpec, ParseError> {
        self.keyword("prod(k>=")?;
        let start = match self.peek() {
            Some(b'0') => 0,
            Some(b'1') => 1,
            _ => return self.err("'0' or '1'"),
        };
        self.pos += 1;
        self.expect(b',')?;
        let factors = self.ratio(start)?;
        self.expect(b')')?;
        if self.peek().is_some() {
            return self.err("end of input");
        }
        Ok(ProductSpec { start, factors })
    }

    fn ratio(&mut self, start: u64) -> Result<Vec<FactorTerm>, ParseError> {
        let mut out = Vec::new();
        let numerator_is_one = self.peek() == Some(b'1');
        if numerator_is_one {
            self.pos += 1;
            if self.peek() != Some(b'/') {
                return self.err("'/' after 1");
            }
        } else {
            for raw in self.term()? {
                out.push(self.finish(raw, start, Location::Numerator)?);
            }
        }
        if self.eat(b'/') {
            let grouped = self.peek() == Some(b'(') && self.peek2() == Some(b'(');
            if grouped {
                self.pos += 1;
            }
            for raw in self.term()? {
                out.push(self.finish(raw, start, Location::Denominator)?);
            }
            if grouped {
                self.expect(b')')?;
            }
        }
        Ok(out)
    }

    fn finish(&self, raw: RawFactor, start: u64, location: Location) -> Result<FactorTerm, ParseError> {
        if raw.s <= 0 {
            return Err(ParseError::Validation("q-exponent must grow with k".into()));
        }
        let t = raw.t + raw.s * start as i64;
        if t <= 0 {
            return Err(ParseError::Validation(format!(
                "q-exponent {}k{:+} is not positive at k = {start}",
                raw.s, raw.t
            )));
        }
        Ok(FactorTerm { sign: raw.sign, s: raw.s as u64, t: t as u64, exponent: raw.exponent, location })
    }

    fn term(&mut self) -> Result<Vec<RawFactor>, ParseError> {
        let mut out = vec![self.factor()?];
        loop {
            // juxtaposition multiplies too
            if self.eat(b'*') || self.peek() == Some(b'(') {
                out.push(self.factor()?);
            } else {
                return Ok(out);
            }
        }
    }

    fn factor(&mut self) -> Result<RawFactor, ParseError> {
        self.expect(b'(')?;
        if self.peek() != Some(b'1') {
            return self.err("'1'");
        }
        self.pos += 1;
        let sign = if self.eat(b'+') {
            Sign::Plus
        } else if self.eat(b'-') {
            Sign::Minus
        } else {
            return self.err("'+' or '-'");
        };
        self.expect(b'q')?;
        self.expect(b'^')?;
        let (s, t) = self.q_exponent()?;
        self.expect(b')')?;
        let exponent = if self.eat(b'^') { self.epow()? } else { ExponentFn::Constant(1) };
        Ok(RawFactor { sign, s, t, exponent })
    }

    fn q_exponent(&mut self) -> Result<(i64, i64), ParseError> {
        match self.peek() {
            Some(b'k') => {
                self.pos += 1;
                Ok((1, 0))
            }
            Some(b'(') => {
                self.pos += 1;
                let lin = self.linear()?;
                self.expect(b')')?;
                Ok(lin)
            }
            Some(c) if c.is_ascii_digit() => {
                self.integer()?;
                Err(ParseError::Validation("a constant q-exponent repeats the same factor for every k".into()))
            }
            _ => self.err("'k' or '('"),
        }
    }

    /// `[s[*]]k[(+|-)t]`
    fn linear(&mut self) -> Result<(i64, i64), ParseError> {
        let s = if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let s = self.small_integer()?;
            self.eat(b'*');
            s
        } else {
            1
        };
        self.expect(b'k')?;
        let t = if self.eat(b'+') {
            self.small_integer()?
        } else if self.eat(b'-') {
            -self.small_integer()?
        } else {
            0
        };
        Ok((s, t))
    }

    fn epow(&mut self) -> Result<ExponentFn, ParseError> {
        match self.peek() {
            Some(b'k') => {
                self.pos += 1;
                if self.eat(b'^') {
                    let at = self.pos;
                    let m = self.integer()?;
                    let m = u32::try_from(m)
                        .map_err(|_| ParseError::Syntax { position: at, expected: "small integer".into() })?;
                    Ok(ExponentFn::Power(m))
                } else {
                    Ok(ExponentFn::Power(1))
                }
            }
            Some(b'(') => {
                self.pos += 1;
                let (m, c) = self.linear()?;
                self.expect(b')')?;
                Ok(normalize_affine(m as u64, c))
            }
            Some(c) if c.is_ascii_digit() => {
                let m = self.integer()?;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.expect(b'k')?;
                    Ok(ExponentFn::Geometric(m))
                } else {
                    Ok(ExponentFn::Constant(m))
                }
            }
            _ => self.err("factor power"),
        }
    }
}

/// Canonical text; `parse(&render(&s)) == s` for every parsed `s`.
pub fn render(spec: &ProductSpec) -> String {
    spec.to_string()
}

fn render_factor(f: &FactorTerm, start: u64) -> String {
    let sign = match f.sign {
        Sign::Plus => '+',
        Sign::Minus => '-',
    };
    let t = f.t as i64 - (f.s * start) as i64;
    let q = if f.s == 1 && t == 0 { "k".to_string() } else { format!("({})", linear_text(f.s, t)) };
    let pow = match f.exponent {
        ExponentFn::Constant(1) => String::new(),
        ExponentFn::Constant(m) => format!("^{m}"),
        ExponentFn::Affine { m, c } => format!("^({})", linear_text(m, c)),
        ExponentFn::Power(1) => "^k".to_string(),
        ExponentFn::Power(m) => format!("^k^{m}"),
        ExponentFn::Geometric(m) => format!("^{m}^k"),
    };
    format!("(1{sign}q^{q}){pow}")
}

fn linear_text(s: u64, t: i64) -> String {
    let head = if s == 1 { "k".to_string() } else { format!("{s}k") };
    match t {
        0 => head,
        t if t > 0 => format!("{head}+{t}"),
        t => format!("{head}{t}"),
    }
}

impl fmt::Display for ProductSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |loc: Location| -> Vec<String> {
            self.factors.iter().filter(|x| x.location == loc).map(|x| render_factor(x, self.start)).collect()
        };
        let num = part(Location::Numerator);
        let den = part(Location::Denominator);
        write!(f, "prod(k>={}, ", self.start)?;
        match (num.is_empty(), den.is_empty()) {
            (_, true) => write!(f, "{}", num.join("*"))?,
            (true, false) => write!(f, "1/{}", group(&den))?,
            (false, false) => write!(f, "{}/{}", num.join("*"), group(&den))?,
        }
        write!(f, ")")
    }
}

fn group(factors: &[String]) -> String {
    if factors.len() == 1 {
        factors[0].clone()
    } else {
        format!("({})", factors.join("*"))
    }
}

/// Informational notes on the coprimality of the (s, t) progressions.
///
/// One note per progression whose gcd is not 1, and for products with
/// several progressions a note on the gcd of the whole tuple. Never blocks
/// expansion.
pub fn validate_coprimality(spec: &ProductSpec) -> Vec<String> {
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    for f in &spec.factors {
        let pair = (f.s, f.t);
        if !pairs.contains(&pair) {
            pairs.push(pair);
        }
    }
    let mut out = Vec::new();
    for &(s, t) in &pairs {
        let g = s.gcd(&t);
        if g != 1 {
            out.push(format!("GCD({s},{t})={g} ≠ 1"));
        }
    }
    if pairs.len() > 1 && !out.is_empty() {
        let all: Vec<String> = pairs.iter().flat_map(|&(s, t)| [s.to_string(), t.to_string()]).collect();
        let g = pairs.iter().fold(0u64, |acc, &(s, t)| acc.gcd(&s).gcd(&t));
        let holds = if g == 1 { "yes" } else { "no" };
        out.push(format!("GCD({})={g} holds? {holds}", all.join(",")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn partitions() {
        let spec = parse("prod(k>=1, 1/(1-q^k))").unwrap();
        assert_eq!(spec.start, 1);
        assert_eq!(
            spec.factors,
            vec![FactorTerm {
                sign: Sign::Minus,
                s: 1,
                t: 1,
                exponent: ExponentFn::Constant(1),
                location: Location::Denominator
            }]
        );
    }

    #[test]
    fn progression_from_zero() {
        let spec = parse("prod(k>=0, (1+q^(5k+2)))").unwrap();
        assert_eq!(spec.start, 0);
        let f = spec.factors[0];
        assert_eq!(
            (f.sign, f.s, f.t, f.exponent, f.location),
            (Sign::Plus, 5, 2, ExponentFn::Constant(1), Location::Numerator)
        );
    }

    #[test]
    fn power_k_ratio() {
        let spec = parse("prod(k>=1, (1+q^k)^k / (1-q^k)^k)").unwrap();
        assert_eq!(spec.factors.len(), 2);
        assert!(spec.factors.iter().all(|f| f.exponent == ExponentFn::Power(1)));
        assert_eq!(spec.factors[0].location, Location::Numerator);
        assert_eq!(spec.factors[1].location, Location::Denominator);
    }

    #[test]
    fn exponent_kinds() {
        let cases = [
            ("prod(k>=1, 1/(1-q^k)^3)", ExponentFn::Constant(3)),
            ("prod(k>=1, 1/(1-q^k)^(2k-1))", ExponentFn::Affine { m: 2, c: -1 }),
            ("prod(k>=1, 1/(1-q^k)^(k))", ExponentFn::Power(1)),
            ("prod(k>=1, 1/(1-q^k)^k^3)", ExponentFn::Power(3)),
            ("prod(k>=1, 1/(1-q^k)^3^k)", ExponentFn::Geometric(3)),
        ];
        for (text, e) in cases {
            assert_eq!(parse(text).unwrap().factors[0].exponent, e, "{text}");
        }
    }

    #[test]
    fn grouped_denominator_and_implicit_product() {
        let a = parse("prod(k>=1, 1/((1+q^k)*(1-q^k)^3))").unwrap();
        let b = parse("prod(k>=1, 1/(1+q^k)(1-q^k)^3)").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.factors.len(), 2);
        assert!(a.factors.iter().all(|f| f.location == Location::Denominator));
    }

    #[test]
    fn whitespace_is_ignored() {
        let a = parse("prod ( k >= 1 , ( 1 - q ^ ( 2 * k - 1 ) ) )").unwrap();
        let b = parse("prod(k>=1,(1-q^(2k-1)))").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn canonicalization_shifts_start() {
        let a = parse("prod(k>=0, 1/(1-q^(2k+3))^(k+1))").unwrap();
        assert_eq!(a.start, 1);
        assert_eq!(render(&a), "prod(k>=1, 1/(1-q^(2k+1))^k)");
        // t <= s keeps the written start
        let b = parse("prod(k>=0, 1/(1-q^(k+1)))").unwrap();
        assert_eq!(b.start, 0);
        // k^m cannot be shifted
        let c = parse("prod(k>=0, 1/(1-q^(k+2))^k^2)").unwrap();
        assert_eq!(c.start, 0);
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse("prod(k>=1, 1/(1-p^k))") {
            Err(ParseError::Syntax { position, expected }) => {
                assert_eq!(position, 16);
                assert_eq!(expected, "'q'");
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("prod(k>=2, (1-q^k))"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("prod(k>=1, (1-q^k)) x"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse(""), Err(ParseError::Syntax { position: 0, .. })));
    }

    #[test]
    fn validation_errors() {
        for text in [
            "prod(k>=0, (1-q^k))",
            "prod(k>=1, (1-q^(k-1)))",
            "prod(k>=1, (1-q^(k-3)))",
            "prod(k>=1, (1-q^k)^0)",
            "prod(k>=1, (1-q^k)^(2k-3))",
            "prod(k>=1, (1-q^k)^1^k)",
            "prod(k>=1, (1-q^5))",
            "prod(k>=1, (1-q^(0k+2)))",
        ] {
            assert!(matches!(parse(text), Err(ParseError::Validation(_))), "{text}");
        }
    }

    #[test]
    fn coprimality_notes() {
        let two = parse("prod(k>=0, (1-q^(2k+1))/(1-q^(4k+2)))").unwrap();
        assert_eq!(validate_coprimality(&two), vec!["GCD(4,2)=2 ≠ 1", "GCD(2,1,4,2)=1 holds? yes"]);
        let alone = parse("prod(k>=0, 1/(1-q^(4k+2)))").unwrap();
        assert_eq!(validate_coprimality(&alone), vec!["GCD(4,2)=2 ≠ 1"]);
        let fine = parse("prod(k>=0, 1/((1-q^(3k+1))*(1-q^(3k+2))))").unwrap();
        assert!(validate_coprimality(&fine).is_empty());
    }

    fn arb_exponent() -> impl Strategy<Value = ExponentFn> {
        prop_oneof![
            (1u64..5).prop_map(ExponentFn::Constant),
            (1u64..4, 0i64..4).prop_map(|(m, c)| normalize_affine(m, c)),
            (1u32..4).prop_map(ExponentFn::Power),
            (2u64..4).prop_map(ExponentFn::Geometric),
        ]
    }

    fn arb_spec() -> impl Strategy<Value = ProductSpec> {
        let factor =
            (any::<bool>(), 1u64..6, 1u64..9, arb_exponent(), any::<bool>()).prop_map(|(plus, s, t, e, num)| {
                FactorTerm {
                    sign: if plus { Sign::Plus } else { Sign::Minus },
                    s,
                    t,
                    exponent: e,
                    location: if num { Location::Numerator } else { Location::Denominator },
                }
            });
        (0u64..2, prop::collection::vec(factor, 1..5)).prop_map(|(start, mut factors)| {
            // numerator first: the text form cannot interleave
            factors.sort_by_key(|f| f.location == Location::Denominator);
            ProductSpec { start, factors }
        })
    }

    proptest! {
        #[test]
        fn render_parse_is_idempotent(spec in arb_spec()) {
            let once = parse(&render(&spec)).unwrap();
            let twice = parse(&render(&once)).unwrap();
            prop_assert_eq!(&once, &twice);
            prop_assert_eq!(render(&once), render(&twice));
        }

        #[test]
        fn degrees_are_positive(spec in arb_spec()) {
            let spec = parse(&render(&spec)).unwrap();
            for f in &spec.factors {
                for j in 0..20 {
                    prop_assert!(f.degree(j) >= 1);
                    prop_assert!(spec.exponent_i128(f, j).unwrap() >= 0);
                }
            }
        }

        #[test]
        fn random_text_never_panics(text in "[prod(k>=01,q^+*/ )2345-]{0,40}") {
            let _ = parse(&text);
        }

        #[test]
        fn mutated_valid_text_never_panics(spec in arb_spec(), cut in 0usize..60, junk in "[()^k*+/0-9q-]{0,3}") {
            let mut text = render(&spec);
            let cut = cut.min(text.len());
            text.insert_str(cut, &junk);
            let _ = parse(&text);
        }
    }
}

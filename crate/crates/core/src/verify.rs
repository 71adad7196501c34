//! Log-space comparison of exact coefficients against an asymptotic form.

use glob::Pattern;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::asymptotic::AsymptoticForm;
use crate::catalog::{list_families, CatalogError, Family};
use crate::parser::ProductSpec;
use crate::series::{expand, SeriesError, SeriesPoly};

pub const DEFAULT_CHECKPOINTS: &[u64] = &[100, 500, 1000, 2000, 5000];

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("sign mismatch at n = {n}: form predicts {expected}, coefficient is {found}")]
    SignMismatch { n: u64, expected: i8, found: i8 },
    #[error("coefficient a_{n} is zero")]
    ZeroCoefficient { n: u64 },
    #[error("bad checkpoints: {0}")]
    BadCheckpoints(String),
    #[error("bad family filter: {0}")]
    BadFilter(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub n: u64,
    /// ln|a_n|
    pub exact: f64,
    /// ln|f(n)|
    pub predicted: f64,
    pub delta: f64,
    /// a_n / f(n) when it is a finite double
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Converging,
    Inconclusive,
    Diverging,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub checkpoints: Vec<Checkpoint>,
    pub sign_ok: bool,
    /// least-squares slope of ln|delta| against ln n
    pub trend: Option<f64>,
    pub verdict: Verdict,
}

fn check_points(points: &[u64]) -> Result<(), VerifyError> {
    if points.is_empty() {
        return Err(VerifyError::BadCheckpoints("no checkpoints".into()));
    }
    if points[0] < 1 {
        return Err(VerifyError::BadCheckpoints("checkpoints must be >= 1".into()));
    }
    if points.windows(2).any(|w| w[0] >= w[1]) {
        return Err(VerifyError::BadCheckpoints("checkpoints must be strictly increasing".into()));
    }
    Ok(())
}

/// Expands `spec` far enough and compares it with `form`.
pub fn verify(
    id: &str,
    spec: &ProductSpec,
    form: &AsymptoticForm,
    checkpoints: &[u64],
) -> Result<VerificationReport, VerifyError> {
    check_points(checkpoints)?;
    let poly = expand(spec, *checkpoints.last().expect("nonempty") as usize)?;
    verify_series(id, &poly, form, checkpoints)
}

/// Same as [`verify`] on an already expanded series.
pub fn verify_series(
    id: &str,
    poly: &SeriesPoly,
    form: &AsymptoticForm,
    checkpoints: &[u64],
) -> Result<VerificationReport, VerifyError> {
    check_points(checkpoints)?;
    let mut out = Vec::with_capacity(checkpoints.len());
    for &n in checkpoints {
        let a = poly.coeffs.get(n as usize).ok_or(SeriesError::OutOfRange { n: n as usize, order: poly.order() })?;
        let exact = poly.log_abs_coeff(n as usize).map_err(|_| VerifyError::ZeroCoefficient { n })?;
        let found: i8 = if a.sign() == num_bigint::Sign::Minus { -1 } else { 1 };
        let pred = form.evaluate_log(n);
        if found != pred.sign {
            return Err(VerifyError::SignMismatch { n, expected: pred.sign, found });
        }
        let delta = exact - pred.ln_abs;
        let ratio = Some(delta.exp()).filter(|r| r.is_finite() && *r > 0.0);
        out.push(Checkpoint { n, exact, predicted: pred.ln_abs, delta, ratio });
    }
    Ok(VerificationReport {
        id: id.to_string(),
        trend: trend(&out),
        verdict: verdict(&out),
        checkpoints: out,
        sign_ok: true,
    })
}

fn verdict(points: &[Checkpoint]) -> Verdict {
    if points.len() < 3 {
        return Verdict::Inconclusive;
    }
    let last: Vec<f64> = points[points.len() - 3..].iter().map(|c| c.delta.abs()).collect();
    if last[0] > last[1] && last[1] > last[2] {
        Verdict::Converging
    } else if last[0] < last[1] && last[1] < last[2] {
        Verdict::Diverging
    } else {
        Verdict::Inconclusive
    }
}

fn trend(points: &[Checkpoint]) -> Option<f64> {
    let xy: Vec<(f64, f64)> =
        points.iter().filter(|c| c.delta != 0.0).map(|c| ((c.n as f64).ln(), c.delta.abs().ln())).collect();
    if xy.len() < 2 {
        return None;
    }
    let k = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / k;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(sxy / sxx)
}

/// Outcome of one family in a suite run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteEntry {
    pub id: String,
    pub params: Vec<i64>,
    pub report: Option<VerificationReport>,
    pub error: Option<String>,
}

impl SuiteEntry {
    pub fn failed(&self) -> bool {
        self.error.is_some() || self.report.as_ref().is_some_and(|r| r.verdict == Verdict::Diverging)
    }
}

/// Families whose id matches the glob.
pub fn select_families(filter: &str) -> Result<Vec<&'static Family>, VerifyError> {
    let m = Pattern::new(filter).map_err(|e| VerifyError::BadFilter(e.to_string()))?;
    Ok(list_families().iter().filter(|f| m.matches(f.id)).collect())
}

/// Verifies every matching family at its smallest parameters. Output is
/// sorted by id.
pub fn run_suite(filter: &str, checkpoints: &[u64]) -> Result<Vec<SuiteEntry>, VerifyError> {
    check_points(checkpoints)?;
    let fams = select_families(filter)?;
    let mut out: Vec<SuiteEntry> = fams
        .par_iter()
        .map(|fam| {
            let params = fam.samples[0].to_vec();
            let res = run_one(fam, &params, checkpoints);
            let (report, error) = match res {
                Ok(r) => (Some(r), None),
                Err(e) => (None, Some(e.to_string())),
            };
            SuiteEntry { id: fam.id.to_string(), params, report, error }
        })
        .collect();
    out.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(out)
}

fn run_one(fam: &Family, params: &[i64], checkpoints: &[u64]) -> Result<VerificationReport, VerifyError> {
    let spec = fam.product(params)?;
    let form = fam.closed_form(params)?;
    verify(fam.id, &spec, &form, checkpoints)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotic::SignMode;
    use crate::catalog::instantiate;
    use crate::parser::parse;

    #[test]
    fn partitions_converge() {
        let inst = instantiate("partminus", &[1, 1]).unwrap();
        let r = verify("p", &inst.spec, &inst.form, &[100, 1000, 10_000]).unwrap();
        assert_eq!(r.verdict, Verdict::Converging);
        assert!(r.checkpoints[2].delta.abs() < 0.01);
        assert!(r.trend.unwrap() < 0.0);
    }

    #[test]
    fn overpartitions_converge() {
        let inst = instantiate("partratio", &[1, 1]).unwrap();
        let r = verify("op", &inst.spec, &inst.form, &[100, 1000, 4000]).unwrap();
        assert_eq!(r.verdict, Verdict::Converging);
    }

    #[test]
    fn checkpoint_rules() {
        let inst = instantiate("partminus", &[1, 1]).unwrap();
        assert!(matches!(verify("p", &inst.spec, &inst.form, &[0, 10]), Err(VerifyError::BadCheckpoints(_))));
        assert!(matches!(verify("p", &inst.spec, &inst.form, &[10, 10]), Err(VerifyError::BadCheckpoints(_))));
    }

    #[test]
    fn sign_mismatch_both_ways() {
        let inst = instantiate("powerplusdenom", &[1]).unwrap();
        let plain = inst.form.clone().with_sign(SignMode::Plain);
        assert!(matches!(verify("x", &inst.spec, &plain, &[100, 101]), Err(VerifyError::SignMismatch { .. })));
        let p = instantiate("partminus", &[1, 1]).unwrap();
        let alt = p.form.clone().with_sign(SignMode::Alternating);
        assert!(matches!(verify("x", &p.spec, &alt, &[100, 101]), Err(VerifyError::SignMismatch { .. })));
    }

    #[test]
    fn zero_coefficient() {
        // only multiples of 3 are hit
        let spec = parse("prod(k>=1, 1/(1-q^(3k)))").unwrap();
        let form = instantiate("partminus", &[1, 1]).unwrap().form;
        assert!(matches!(verify("z", &spec, &form, &[10]), Err(VerifyError::ZeroCoefficient { n: 10 })));
    }

    #[test]
    fn report_json_round_trip() {
        let inst = instantiate("partplus", &[1, 1]).unwrap();
        let r = verify("d", &inst.spec, &inst.form, &[50, 100, 200]).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn suite_filter_and_order() {
        let ids: Vec<&str> = select_families("power*").unwrap().iter().map(|f| f.id).collect();
        assert!(ids.contains(&"powerminus") && ids.contains(&"powerkexpratio"));
        assert!(!ids.contains(&"hagis"));
        let out = run_suite("part*", &[50, 100, 200]).unwrap();
        let got: Vec<&str> = out.iter().map(|e| e.id.as_str()).collect();
        assert_eq!(got, ["partminus", "partplus", "partratio"]);
        assert!(out.iter().all(|e| !e.failed()));
    }
}

//! Algebra on subexponential asymptotic forms
//!
//! ```text
//!     a_n ~ v · base^n · exp(Σ s_i n^{p_i}) / n^b        (0 < p_i < 1)
//! ```
//!
//! with an optional (−1)^n sign. The operations mirror what happens to the
//! coefficient asymptotics when generating functions are multiplied:
//! [`convolve`] for a product of two series with the same growth exponent,
//! [`self_convolve`] and [`power`] for g² and g^h, [`deconvolve`] to solve
//! g0 · g1 = g2 for g0, and [`convolve_mixed`] for forms carrying both an
//! n^{2/3} and an n^{1/3} term.
//!
//! All of them work on the saddle point of the convolution sum Σ α_{n−k} β_k;
//! only the leading asymptotic is produced.

use std::f64::consts::PI;
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AsymError {
    #[error("growth exponents differ: {0} vs {1}")]
    MixedExponentMismatch(Rational64, Rational64),
    #[error("alternating forms cannot be combined directly")]
    AlternatingInput,
    #[error("expected exponent set {expected}, found {found}")]
    WrongExponentSet { expected: &'static str, found: String },
    #[error("known coefficient {known} must be smaller than target coefficient {target}")]
    OrderViolation { known: f64, target: f64 },
    #[error("geometric bases differ: {0} vs {1}")]
    BaseMismatch(f64, f64),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid form: {0}")]
    InvalidForm(String),
}

/// One exp(s · n^p) factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Term {
    #[serde(with = "rational_str")]
    pub p: Rational64,
    pub s: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignMode {
    Plain,
    /// the coefficients carry an extra (−1)^n
    Alternating,
}

/// `v · base^n · exp(Σ s_i n^{p_i}) / n^b`, optionally times (−1)^n.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticForm {
    pub v: f64,
    /// sorted by p, no duplicate exponents
    pub terms: Vec<Term>,
    pub b: Scalar,
    pub sign: SignMode,
    /// Geometric growth m^n of the m^k product families; 1 for everything
    /// subexponential.
    pub base: f64,
}

/// ln|a_n| together with the sign of a_n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue {
    pub ln_abs: f64,
    pub sign: i8,
}

impl AsymptoticForm {
    /// Single-term form `v · exp(r n^p) / n^b`.
    pub fn single(v: f64, p: Rational64, r: f64, b: impl Into<Scalar>) -> Result<Self, AsymError> {
        let form = AsymptoticForm { v, terms: vec![Term { p, s: r }], b: b.into(), sign: SignMode::Plain, base: 1.0 };
        form.validate()?;
        Ok(form)
    }

    /// Two-term form `v · exp(s n^{1/3} + r n^{2/3}) / n^b`.
    pub fn mixed(v: f64, s: f64, r: f64, b: impl Into<Scalar>) -> Result<Self, AsymError> {
        let form = AsymptoticForm {
            v,
            terms: vec![Term { p: Rational64::new(1, 3), s }, Term { p: Rational64::new(2, 3), s: r }],
            b: b.into(),
            sign: SignMode::Plain,
            base: 1.0,
        };
        form.validate()?;
        Ok(form)
    }

    pub fn with_sign(mut self, sign: SignMode) -> Self {
        self.sign = sign;
        self
    }

    pub fn with_base(mut self, base: f64) -> Self {
        self.base = base;
        self
    }

    pub fn is_alternating(&self) -> bool {
        self.sign == SignMode::Alternating
    }

    /// Checks the structural invariants.
    pub fn validate(&self) -> Result<(), AsymError> {
        if !(self.v > 0.0) || !self.v.is_finite() {
            return Err(AsymError::InvalidForm(format!("amplitude must be positive, got {}", self.v)));
        }
        if !(self.base > 0.0) || !self.base.is_finite() {
            return Err(AsymError::InvalidForm(format!("base must be positive, got {}", self.base)));
        }
        if !self.b.to_f64().is_finite() {
            return Err(AsymError::InvalidForm("n-power is not finite".into()));
        }
        for w in self.terms.windows(2) {
            if w[0].p >= w[1].p {
                return Err(AsymError::InvalidForm("exponents must be strictly increasing".into()));
            }
        }
        for t in &self.terms {
            if t.p <= Rational64::zero() || t.p >= Rational64::one() {
                return Err(AsymError::InvalidForm(format!("exponent {} outside (0, 1)", t.p)));
            }
            if !t.s.is_finite() {
                return Err(AsymError::InvalidForm("non-finite exponent coefficient".into()));
            }
        }
        match self.terms.as_slice() {
            [] => {}
            [t] => {
                if !(t.s > 0.0) {
                    return Err(AsymError::InvalidForm(format!("coefficient {} must be positive", t.s)));
                }
            }
            [a, b] if a.p == Rational64::new(1, 3) && b.p == Rational64::new(2, 3) => {
                if !(b.s > 0.0) {
                    return Err(AsymError::InvalidForm("n^(2/3) coefficient must be positive".into()));
                }
            }
            _ => return Err(AsymError::InvalidForm("terms must be one exponent or {1/3, 2/3}".into())),
        }
        Ok(())
    }

    /// The (p, r) pair of a single-term form.
    pub fn single_term(&self) -> Result<(Rational64, f64), AsymError> {
        match self.terms.as_slice() {
            [t] => Ok((t.p, t.s)),
            _ => Err(AsymError::WrongExponentSet { expected: "a single exponent", found: self.exponent_set() }),
        }
    }

    /// Coefficient at exponent p, zero when absent.
    pub fn coefficient(&self, p: Rational64) -> f64 {
        self.terms.iter().find(|t| t.p == p).map_or(0.0, |t| t.s)
    }

    fn exponent_set(&self) -> String {
        let ps: Vec<String> = self.terms.iter().map(|t| t.p.to_string()).collect();
        format!("{{{}}}", ps.join(", "))
    }

    /// ln|a_n| and the sign of a_n predicted by the form.
    pub fn evaluate_log(&self, n: u64) -> LogValue {
        let nf = n as f64;
        let mut ln = self.v.ln() - self.b.to_f64() * nf.ln();
        if self.base != 1.0 {
            ln += nf * self.base.ln();
        }
        for t in &self.terms {
            ln += t.s * nf.powf(t.p.to_f64().unwrap_or(f64::NAN));
        }
        let sign = if self.is_alternating() && n % 2 == 1 { -1 } else { 1 };
        LogValue { ln_abs: ln, sign }
    }

    /// Multiplies the amplitude by a positive constant.
    pub fn scale(mut self, c: f64) -> Self {
        self.v *= c;
        self
    }

    /// Substitutes n → n/c: the form of a sequence read at index n/c.
    pub fn rescale_index(&self, c: f64) -> Self {
        let mut out = self.clone();
        out.v *= c.powf(self.b.to_f64());
        for t in &mut out.terms {
            t.s *= c.powf(-t.p.to_f64().unwrap_or(f64::NAN));
        }
        out.base = self.base.powf(1.0 / c);
        out
    }

    /// Largest per-field discrepancy: |ln v − ln v'|, |b − b'|, |s_p − s'_p|
    /// over the union of exponents, and |ln base − ln base'|. Missing terms
    /// count as zero coefficients.
    pub fn field_distance(&self, other: &AsymptoticForm) -> f64 {
        let mut d = (self.v.ln() - other.v.ln()).abs();
        d = d.max((self.b.to_f64() - other.b.to_f64()).abs());
        d = d.max((self.base.ln() - other.base.ln()).abs());
        for t in self.terms.iter().chain(other.terms.iter()) {
            d = d.max((self.coefficient(t.p) - other.coefficient(t.p)).abs());
        }
        if self.sign != other.sign {
            d = f64::INFINITY;
        }
        d
    }

    /// Relative per-field discrepancy: amplitude and coefficients compared
    /// relative to their magnitude, b absolutely.
    pub fn relative_field_distance(&self, other: &AsymptoticForm) -> f64 {
        let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(1e-300);
        let mut d = rel(self.v, other.v);
        d = d.max((self.b.to_f64() - other.b.to_f64()).abs());
        d = d.max(rel(self.base, other.base));
        for t in self.terms.iter().chain(other.terms.iter()) {
            let (a, b) = (self.coefficient(t.p), other.coefficient(t.p));
            d = d.max(if a == 0.0 && b == 0.0 { 0.0 } else { rel(a, b) });
        }
        if self.sign != other.sign {
            d = f64::INFINITY;
        }
        d
    }
}

fn check_plain(forms: &[&AsymptoticForm]) -> Result<(), AsymError> {
    for f in forms {
        if f.is_alternating() {
            return Err(AsymError::AlternatingInput);
        }
        f.validate()?;
    }
    Ok(())
}

fn common_base(a: &AsymptoticForm, b: &AsymptoticForm) -> Result<f64, AsymError> {
    if (a.base - b.base).abs() > 1e-15 * a.base.max(b.base) {
        return Err(AsymError::BaseMismatch(a.base, b.base));
    }
    Ok(a.base)
}

fn p_f64(p: Rational64) -> f64 {
    p.to_f64().expect("small rational")
}

/// Both forms single-term with a shared exponent p and positive coefficients.
fn paired(a1: &AsymptoticForm, a2: &AsymptoticForm) -> Result<(Rational64, f64, f64), AsymError> {
    let (p1, r1) = a1.single_term()?;
    let (p2, r2) = a2.single_term()?;
    if p1 != p2 {
        return Err(AsymError::MixedExponentMismatch(p1, p2));
    }
    Ok((p1, r1, r2))
}

/// Asymptotics of the Cauchy product of two sequences with the same
/// subexponential growth exponent p.
///
/// With q = 1/(1−p) and R = r1^q + r2^q the product has coefficient R^{1−p},
/// n-power b1 + b2 + p/2 − 1 and amplitude
/// √(2π) v1 v2 R^{b1+b2−(3−p)/2} / (√((1−p)p) r1^{(b1−1/2)q} r2^{(b2−1/2)q}).
pub fn convolve(a1: &AsymptoticForm, a2: &AsymptoticForm) -> Result<AsymptoticForm, AsymError> {
    check_plain(&[a1, a2])?;
    let base = common_base(a1, a2)?;
    let (p, r1, r2) = paired(a1, a2)?;
    let pf = p_f64(p);
    let q = 1.0 / (1.0 - pf);
    let (b1, b2) = (a1.b.to_f64(), a2.b.to_f64());
    let ln_r1 = r1.ln();
    let ln_r2 = r2.ln();
    let big_r = (q * ln_r1).exp() + (q * ln_r2).exp();
    let ln_big_r = big_r.ln();

    let ln_v = 0.5 * (2.0 * PI).ln() + a1.v.ln() + a2.v.ln() + (b1 + b2 - 0.5 * (3.0 - pf)) * ln_big_r
        - 0.5 * ((1.0 - pf) * pf).ln()
        - (b1 - 0.5) * q * ln_r1
        - (b2 - 0.5) * q * ln_r2;
    let b = a1.b + a2.b + Scalar::Exact(p / 2) - Scalar::int(1);
    let r = ((1.0 - pf) * ln_big_r).exp();
    Ok(AsymptoticForm { v: ln_v.exp(), terms: vec![Term { p, s: r }], b, sign: SignMode::Plain, base })
}

/// g(x)² in closed form: v²√π 2^{2b+p/2−1} exp(r 2^{1−p} n^p) / (√(pr(1−p)) n^{2b+p/2−1}).
pub fn self_convolve(a: &AsymptoticForm) -> Result<AsymptoticForm, AsymError> {
    check_plain(&[a])?;
    let (p, r) = a.single_term()?;
    let pf = p_f64(p);
    let b = a.b.to_f64();
    let expo = 2.0 * b + pf / 2.0 - 1.0;
    let v = a.v * a.v * PI.sqrt() * 2f64.powf(expo) / (pf * r * (1.0 - pf)).sqrt();
    Ok(AsymptoticForm {
        v,
        terms: vec![Term { p, s: r * 2f64.powf(1.0 - pf) }],
        b: Scalar::int(2) * a.b + Scalar::Exact(p / 2) - Scalar::int(1),
        sign: SignMode::Plain,
        base: a.base * a.base,
    })
}

/// g(x)^h for real h ≥ 1.
///
/// r_h = h^{1−p} r, b_h = b h + (p/2 − 1)(h − 1) and
/// v_h = v^h h^{bh + hp/2 − h − p/2 + 1/2} (2π/((1−p)pr))^{(h−1)/2}.
pub fn power(a: &AsymptoticForm, h: impl Into<Scalar>) -> Result<AsymptoticForm, AsymError> {
    let h = h.into();
    let hf = h.to_f64();
    if !(hf >= 1.0) || !hf.is_finite() {
        return Err(AsymError::Domain(format!("power needs h >= 1, got {hf}")));
    }
    check_plain(&[a])?;
    let (p, r) = a.single_term()?;
    let pf = p_f64(p);
    let half_p = Scalar::Exact(p / 2);
    let one = Scalar::int(1);

    let b_h = a.b * h + (half_p - one) * (h - one);
    // the same quantity written as the n-exponent b h − (h−1)(2−p)/2
    let b_alt = a.b * h - (h - one) * (Scalar::int(2) - Scalar::Exact(p)) * Scalar::ratio(1, 2);
    match (b_h, b_alt) {
        (Scalar::Exact(x), Scalar::Exact(y)) => assert_eq!(x, y, "power: n-exponent identities disagree"),
        _ => assert!((b_h.to_f64() - b_alt.to_f64()).abs() <= 1e-12 * (1.0 + b_h.to_f64().abs())),
    }

    let b = a.b.to_f64();
    let ln_h = hf.ln();
    let ln_v = hf * a.v.ln()
        + (b * hf + hf * pf / 2.0 - hf - pf / 2.0 + 0.5) * ln_h
        + 0.5 * (hf - 1.0) * (2.0 * PI / ((1.0 - pf) * pf * r)).ln();
    Ok(AsymptoticForm {
        v: ln_v.exp(),
        terms: vec![Term { p, s: ((1.0 - pf) * ln_h).exp() * r }],
        b: b_h,
        sign: SignMode::Plain,
        base: a.base.powf(hf),
    })
}

/// Solves `result ⊛ known = target` for the unknown factor.
///
/// Needs r_known < r_target; then r0 = (r2^q − r1^q)^{1−p},
/// b0 = b2 − b1 − p/2 + 1 and the amplitude is the inverse of the
/// convolution amplitude.
pub fn deconvolve(target: &AsymptoticForm, known: &AsymptoticForm) -> Result<AsymptoticForm, AsymError> {
    check_plain(&[target, known])?;
    let base = common_base(target, known)?;
    let (p, r1, r2) = paired(known, target)?;
    if !(r1 < r2) {
        return Err(AsymError::OrderViolation { known: r1, target: r2 });
    }
    let pf = p_f64(p);
    let q = 1.0 / (1.0 - pf);
    let (b1, b2) = (known.b.to_f64(), target.b.to_f64());
    let ln_r1 = r1.ln();
    let ln_r2 = r2.ln();
    let diff = (q * ln_r2).exp() - (q * ln_r1).exp();
    let ln_diff = diff.ln();

    let ln_v = 0.5 * ((1.0 - pf) * pf).ln()
        + target.v.ln()
        + (1.0 - 2.0 * b2) / (2.0 * (1.0 - pf)) * ln_r2
        + (b2 - b1 - pf / 2.0 + 0.5) * ln_diff
        - 0.5 * (2.0 * PI).ln()
        - known.v.ln()
        - (1.0 - 2.0 * b1) / (2.0 * (1.0 - pf)) * ln_r1;
    let b = target.b - known.b - Scalar::Exact(p / 2) + Scalar::int(1);
    Ok(AsymptoticForm {
        v: ln_v.exp(),
        terms: vec![Term { p, s: ((1.0 - pf) * ln_diff).exp() }],
        b,
        sign: SignMode::Plain,
        base,
    })
}

/// (s, r) of a form whose terms sit in {1/3, 2/3}; a missing 1/3 term is zero.
fn third_pair(a: &AsymptoticForm) -> Result<(f64, f64), AsymError> {
    let third = Rational64::new(1, 3);
    let two_thirds = Rational64::new(2, 3);
    let ok = !a.terms.is_empty()
        && a.terms.iter().all(|t| t.p == third || t.p == two_thirds)
        && a.terms.iter().any(|t| t.p == two_thirds);
    if !ok {
        return Err(AsymError::WrongExponentSet { expected: "{1/3, 2/3}", found: a.exponent_set() });
    }
    Ok((a.coefficient(third), a.coefficient(two_thirds)))
}

/// Convolution of two forms `v exp(s n^{1/3} + r n^{2/3}) / n^b`.
///
/// The n^{1/3} terms shift the saddle of the convolution sum, which costs
/// the constant factor exp((r2² s1 − r1² s2)² / (4 r1 r2 (r1³ + r2³))).
pub fn convolve_mixed(a1: &AsymptoticForm, a2: &AsymptoticForm) -> Result<AsymptoticForm, AsymError> {
    check_plain(&[a1, a2])?;
    let base = common_base(a1, a2)?;
    let (s1, r1) = third_pair(a1)?;
    let (s2, r2) = third_pair(a2)?;
    let (b1, b2) = (a1.b.to_f64(), a2.b.to_f64());
    let cubes = r1.powi(3) + r2.powi(3);
    let cube_root = cubes.cbrt();
    let shift = (r2 * r2 * s1 - r1 * r1 * s2).powi(2) / (4.0 * r1 * r2 * cubes);

    let ln_v = 3f64.ln() + a1.v.ln() + a2.v.ln() + 0.5 * PI.ln() + (b1 + b2 - 7.0 / 6.0) * cubes.ln()
        - (3.0 * b1 - 1.5) * r1.ln()
        - (3.0 * b2 - 1.5) * r2.ln()
        + shift;
    let b = a1.b + a2.b - Scalar::ratio(2, 3);
    Ok(AsymptoticForm {
        v: ln_v.exp(),
        terms: vec![
            Term { p: Rational64::new(1, 3), s: (r1 * s1 + r2 * s2) / cube_root },
            Term { p: Rational64::new(2, 3), s: cube_root },
        ],
        b,
        sign: SignMode::Plain,
        base,
    })
}

/// JSON shape: `{v, terms: [{p: "1/2", s}], b: "num/den", alternating, base?}`.
#[derive(Serialize, Deserialize)]
struct FormRepr {
    v: f64,
    terms: Vec<Term>,
    b: Scalar,
    #[serde(default)]
    alternating: bool,
    #[serde(default = "one_f64", skip_serializing_if = "is_one")]
    base: f64,
}

fn one_f64() -> f64 {
    1.0
}

fn is_one(x: &f64) -> bool {
    *x == 1.0
}

impl Serialize for AsymptoticForm {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        FormRepr {
            v: self.v,
            terms: self.terms.clone(),
            b: self.b,
            alternating: self.is_alternating(),
            base: self.base,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AsymptoticForm {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = FormRepr::deserialize(deserializer)?;
        let mut terms = repr.terms;
        terms.sort_by_key(|a| a.p);
        let form = AsymptoticForm {
            v: repr.v,
            terms,
            b: repr.b,
            sign: if repr.alternating { SignMode::Alternating } else { SignMode::Plain },
            base: repr.base,
        };
        form.validate().map_err(serde::de::Error::custom)?;
        Ok(form)
    }
}

mod rational_str {
    use num_rational::Rational64;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::scalar::Scalar;

    pub fn serialize<S: Serializer>(p: &Rational64, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&Scalar::Exact(*p).to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rational64, D::Error> {
        let s = String::deserialize(deserializer)?;
        match s.parse::<Scalar>().map_err(serde::de::Error::custom)? {
            Scalar::Exact(r) => Ok(r),
            Scalar::Approx(_) => Err(serde::de::Error::custom("exponent p must be a rational \"num/den\"")),
        }
    }
}

impl fmt::Display for AsymptoticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_alternating() {
            write!(f, "(-1)^n * ")?;
        }
        write!(f, "{:.12e}", self.v)?;
        if self.base != 1.0 {
            write!(f, " * {}^n", self.base)?;
        }
        if !self.terms.is_empty() {
            let parts: Vec<String> =
                self.terms.iter().map(|t| format!("{:.12e}*n^({})", t.s, Scalar::Exact(t.p))).collect();
            write!(f, " * exp({})", parts.join(" + "))?;
        }
        write!(f, " / n^({})", self.b)
    }
}

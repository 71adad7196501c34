//! Registry of named product families: parameter checks, the product in
//! DSL form, a hard-coded closed form and, where the family is a
//! composition of simpler ones, an independent derivation through the
//! convolution calculus.

use std::f64::consts::PI;

use num_integer::Integer;
use num_rational::Rational64;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::asymptotic::{convolve, convolve_mixed, deconvolve, power, AsymError, AsymptoticForm, SignMode};
use crate::meinardus::{
    dirichlet_from_exponent, single_pole_minus, single_pole_plus, two_pole, MeinardusError, ProductKind,
};
use crate::parser::{parse, ExponentFn, ParseError, ProductSpec};
use crate::scalar::Scalar;
use crate::special::{gamma, saddle_constant, zeta, zeta_neg, ConstantTable, SaddleVariant, SpecialError};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown family {0}")]
    UnknownFamily(String),
    #[error("{family}: {message}")]
    ParamError { family: String, message: String },
    #[error("{0} has no derivation path")]
    NotComposable(String),
    #[error(transparent)]
    Form(#[from] AsymError),
    #[error(transparent)]
    Meinardus(#[from] MeinardusError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Special(#[from] SpecialError),
}

type Res = Result<AsymptoticForm, CatalogError>;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Param {
    pub name: &'static str,
    pub constraint: &'static str,
}

/// One registry entry.
pub struct Family {
    pub id: &'static str,
    pub params: &'static [Param],
    pub oeis: &'static [&'static str],
    pub description: &'static str,
    /// closed form as text, n is the coefficient index
    pub formula: &'static str,
    pub note: Option<&'static str>,
    pub alternating: bool,
    /// m^k families, growth m^n
    pub saddle: bool,
    /// the smallest valid parameter tuples
    pub samples: &'static [&'static [i64]],
    check: fn(&[i64]) -> Result<(), String>,
    spec: fn(&[i64]) -> String,
    closed: fn(&[i64]) -> Res,
    derive: Option<fn(&[i64]) -> Res>,
}

impl std::fmt::Debug for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Family").field("id", &self.id).finish_non_exhaustive()
    }
}

/// A family at concrete parameters.
#[derive(Debug, Clone)]
pub struct Instance {
    pub id: &'static str,
    pub params: Vec<i64>,
    pub spec_text: String,
    pub spec: ProductSpec,
    pub form: AsymptoticForm,
}

impl Family {
    pub fn composable(&self) -> bool {
        self.derive.is_some()
    }

    pub fn check_params(&self, params: &[i64]) -> Result<(), CatalogError> {
        let err = |message: String| CatalogError::ParamError { family: self.id.to_string(), message };
        if params.len() != self.params.len() {
            let names: Vec<&str> = self.params.iter().map(|p| p.name).collect();
            return Err(err(format!("expected parameters ({}), got {} values", names.join(", "), params.len())));
        }
        (self.check)(params).map_err(err)
    }

    pub fn spec_text(&self, params: &[i64]) -> Result<String, CatalogError> {
        self.check_params(params)?;
        Ok((self.spec)(params))
    }

    pub fn product(&self, params: &[i64]) -> Result<ProductSpec, CatalogError> {
        Ok(parse(&self.spec_text(params)?)?)
    }

    /// The hard-coded closed form.
    pub fn closed_form(&self, params: &[i64]) -> Res {
        self.check_params(params)?;
        let f = (self.closed)(params)?;
        Ok(self.signed(f))
    }

    /// The closed form rebuilt from simpler families.
    pub fn derive(&self, params: &[i64]) -> Res {
        self.check_params(params)?;
        let d = self.derive.ok_or_else(|| CatalogError::NotComposable(self.id.to_string()))?;
        let f = d(params)?;
        Ok(self.signed(f))
    }

    fn signed(&self, f: AsymptoticForm) -> AsymptoticForm {
        if self.alternating {
            f.with_sign(SignMode::Alternating)
        } else {
            f
        }
    }

    /// Reads `k=v,...` (or bare positional values) into the parameter order.
    pub fn parse_params(&self, text: &str) -> Result<Vec<i64>, CatalogError> {
        let err = |message: String| CatalogError::ParamError { family: self.id.to_string(), message };
        let mut out: Vec<Option<i64>> = vec![None; self.params.len()];
        let items: Vec<&str> = text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        for (i, item) in items.iter().enumerate() {
            let (slot, value) = match item.split_once('=') {
                Some((k, v)) => {
                    let k = k.trim();
                    let slot = self
                        .params
                        .iter()
                        .position(|p| p.name == k)
                        .ok_or_else(|| err(format!("unknown parameter {k}")))?;
                    (slot, v.trim())
                }
                None => (i, *item),
            };
            if slot >= out.len() {
                return Err(err(format!("too many parameters ({})", items.len())));
            }
            let v: i64 = value.parse().map_err(|_| err(format!("not an integer: {value}")))?;
            out[slot] = Some(v);
        }
        out.iter()
            .zip(self.params)
            .map(|(v, p)| v.ok_or_else(|| err(format!("missing parameter {}", p.name))))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let formula = self.samples.first().and_then(|s| self.closed_form(s).ok()).map(|f| f.to_string());
        json!({
            "id": self.id,
            "params": self.params,
            "oeis": self.oeis,
            "description": self.description,
            "formula": self.formula,
            "note": self.note,
            "alternating": self.alternating,
            "saddle": self.saddle,
            "composable": self.composable(),
            "samples": self.samples,
            "first_sample_form": formula,
        })
    }
}

pub fn list_families() -> &'static [Family] {
    FAMILIES
}

pub fn family(id: &str) -> Result<&'static Family, CatalogError> {
    FAMILIES.iter().find(|f| f.id == id).ok_or_else(|| CatalogError::UnknownFamily(id.to_string()))
}

pub fn instantiate(id: &str, params: &[i64]) -> Result<Instance, CatalogError> {
    let fam = family(id)?;
    let spec_text = fam.spec_text(params)?;
    let spec = parse(&spec_text)?;
    let form = fam.closed_form(params)?;
    Ok(Instance { id: fam.id, params: params.to_vec(), spec_text, spec, form })
}

pub fn derive(id: &str, params: &[i64]) -> Res {
    family(id)?.derive(params)
}

pub fn catalog_json() -> Value {
    Value::Array(FAMILIES.iter().map(Family::to_json).collect())
}

// ---------------------------------------------------------------------------
// small helpers

fn f(x: i64) -> f64 {
    x as f64
}

fn g(x: f64) -> f64 {
    gamma(x).expect("positive argument")
}

fn zeta3() -> f64 {
    ConstantTable::get().zeta3
}

fn glaisher() -> f64 {
    ConstantTable::get().glaisher
}

fn half() -> Rational64 {
    Rational64::new(1, 2)
}

fn third2() -> Rational64 {
    Rational64::new(2, 3)
}

fn sq(v: f64, r: f64, b: Scalar) -> Res {
    Ok(AsymptoticForm::single(v, half(), r, b)?)
}

fn b34() -> Scalar {
    Scalar::ratio(3, 4)
}

/// q^(s k + t) in DSL form.
fn q(s: i64, t: i64) -> String {
    match (s, t) {
        (1, 0) => "q^k".into(),
        (_, 0) => format!("q^({s}k)"),
        (1, _) => format!("q^(k+{t})"),
        _ => format!("q^({s}k+{t})"),
    }
}

/// Exponent suffix for a constant power.
fn pw(m: i64) -> String {
    if m == 1 {
        String::new()
    } else {
        format!("^{m}")
    }
}

/// Exponent suffix for m k + c.
fn aff(m: i64, c: i64) -> String {
    let lead = if m == 1 { "k".to_string() } else { format!("{m}k") };
    match c {
        0 if m == 1 => "^k".into(),
        0 => format!("^({lead})"),
        c if c > 0 => format!("^({lead}+{c})"),
        c => format!("^({lead}{c})"),
    }
}

/// Exponent suffix for k^m.
fn kpow(m: i64) -> String {
    match m {
        0 => String::new(),
        1 => "^k".into(),
        _ => format!("^k^{m}"),
    }
}

fn positive(names: &[&str], vals: &[i64]) -> Result<(), String> {
    for (n, v) in names.iter().zip(vals) {
        if *v <= 0 {
            return Err(format!("{n} > 0 violated ({n} = {v})"));
        }
    }
    Ok(())
}

fn gcd_all(vals: &[i64]) -> i64 {
    vals.iter().fold(0, |a, &b| a.gcd(&b))
}

fn check_st(p: &[i64]) -> Result<(), String> {
    positive(&["s", "t"], p)?;
    match gcd_all(p) {
        1 => Ok(()),
        g => Err(format!("GCD(s, t) = 1 violated (GCD = {g})")),
    }
}

fn check_stcd(p: &[i64]) -> Result<(), String> {
    positive(&["s", "t", "c", "d"], p)?;
    match gcd_all(p) {
        1 => Ok(()),
        g => Err(format!("GCD(s, t, c, d) = 1 violated (GCD = {g})")),
    }
}

fn check_stm(p: &[i64]) -> Result<(), String> {
    check_st(&p[..2])?;
    positive(&["m"], &p[2..])
}

fn check_none(_: &[i64]) -> Result<(), String> {
    Ok(())
}

fn check_m_min(min: i64) -> impl Fn(&[i64]) -> Result<(), String> {
    move |p: &[i64]| {
        if p[0] < min {
            Err(format!("m >= {min} violated (m = {})", p[0]))
        } else {
            Ok(())
        }
    }
}

fn m_ge0(p: &[i64]) -> Result<(), String> {
    check_m_min(0)(p)
}
fn m_ge1(p: &[i64]) -> Result<(), String> {
    check_m_min(1)(p)
}
fn m_ge2(p: &[i64]) -> Result<(), String> {
    check_m_min(2)(p)
}
fn m_ge3(p: &[i64]) -> Result<(), String> {
    check_m_min(3)(p)
}

fn m_ge2_h_ge1(p: &[i64]) -> Result<(), String> {
    m_ge2(p)?;
    if p[1] < 1 {
        return Err(format!("h >= 1 violated (h = {})", p[1]));
    }
    Ok(())
}

fn m_even(p: &[i64]) -> Result<(), String> {
    m_ge2(p)?;
    if p[0] % 2 != 0 {
        return Err(format!("m even violated (m = {})", p[0]));
    }
    Ok(())
}

fn check_twopole(p: &[i64]) -> Result<(), String> {
    m_ge1(p)?;
    if p[0] + p[1] <= 0 {
        return Err(format!("m + c > 0 violated (m = {}, c = {})", p[0], p[1]));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// single progression families, index k >= 0, degrees s k + t

fn partminus(p: &[i64]) -> Res {
    let (s, t) = (f(p[0]), f(p[1]));
    let u = t / s;
    let v = g(u) * PI.powf(u - 1.0) * 2f64.powf(-1.5 - u / 2.0) * 3f64.powf(-u / 2.0) * s.powf(-0.5 + u / 2.0);
    sq(v, PI * (2.0 / (3.0 * s)).sqrt(), Scalar::ratio(p[0] + p[1], 2 * p[0]))
}

fn partplus(p: &[i64]) -> Res {
    let (s, t) = (f(p[0]), f(p[1]));
    let v = 1.0 / (2f64.powf(1.0 + t / s) * (3.0 * s).powf(0.25));
    sq(v, PI / (3.0 * s).sqrt(), b34())
}

fn partratio(p: &[i64]) -> Res {
    let (s, t) = (f(p[0]), f(p[1]));
    let u = t / s;
    let v = g(u) * s.powf(u / 2.0 - 0.5) * PI.powf(u - 1.0) / 2f64.powf(2.0 * u + 1.0);
    sq(v, PI / s.sqrt(), Scalar::ratio(p[0] + p[1], 2 * p[0]))
}

fn partratio_derive(p: &[i64]) -> Res {
    Ok(convolve(&partminus(p)?, &partplus(p)?)?)
}

fn convminus(p: &[i64]) -> Res {
    let (s, t, c, d) = (f(p[0]), f(p[1]), f(p[2]), f(p[3]));
    let (u, w) = (t / s, d / c);
    let v = g(u)
        * g(w)
        * s.powf((2.0 * u - 2.0 * w - 1.0) / 4.0)
        * c.powf((2.0 * w - 2.0 * u - 1.0) / 4.0)
        * (s + c).powf((2.0 * u + 2.0 * w - 1.0) / 4.0)
        * PI.powf(u + w - 2.0)
        / (2f64.powf((2.0 * u + 2.0 * w + 7.0) / 4.0) * 3f64.powf((2.0 * u + 2.0 * w - 1.0) / 4.0));
    let r = PI * (2.0 * (1.0 / s + 1.0 / c) / 3.0).sqrt();
    let (si, ti, ci, di) = (p[0], p[1], p[2], p[3]);
    sq(v, r, Scalar::ratio(si * ci + 2 * ti * ci + 2 * di * si, 4 * si * ci))
}

fn convplus(p: &[i64]) -> Res {
    let (s, t, c, d) = (f(p[0]), f(p[1]), f(p[2]), f(p[3]));
    let v = 2f64.powf(-0.5 - t / s - d / c) * (s + c).powf(0.25) / (3.0 * s * c).powf(0.25);
    sq(v, PI * ((1.0 / s + 1.0 / c) / 3.0).sqrt(), b34())
}

fn convratio(p: &[i64]) -> Res {
    let (s, t, c, d) = (f(p[0]), f(p[1]), f(p[2]), f(p[3]));
    let w = d / c;
    let v =
        2f64.powf(-w - (s + t) / s) * c.powf(-0.5 + w / 2.0) * (c + 2.0 * s).powf(w / 2.0) * PI.powf(w - 1.0) * g(w)
            / (3f64.powf(w / 2.0) * s.powf(w / 2.0));
    sq(v, PI * ((2.0 / c + 1.0 / s) / 3.0).sqrt(), Scalar::ratio(p[2] + p[3], 2 * p[2]))
}

fn convminus_derive(p: &[i64]) -> Res {
    Ok(convolve(&partminus(&p[..2])?, &partminus(&p[2..])?)?)
}

fn convplus_derive(p: &[i64]) -> Res {
    Ok(convolve(&partplus(&p[..2])?, &partplus(&p[2..])?)?)
}

fn convratio_derive(p: &[i64]) -> Res {
    Ok(convolve(&partplus(&p[..2])?, &partminus(&p[2..])?)?)
}

fn powerminus(p: &[i64]) -> Res {
    let (s, t, m) = (f(p[0]), f(p[1]), f(p[2]));
    let e = m * t / s;
    let v = g(t / s).powf(m)
        * 2f64.powf(-(m + 5.0) / 4.0 - e / 2.0)
        * 3f64.powf((m - 1.0) / 4.0 - e / 2.0)
        * m.powf(-(m - 1.0) / 4.0 + e / 2.0)
        * s.powf(-(m + 1.0) / 4.0 + e / 2.0)
        * PI.powf(-m + e);
    let (si, ti, mi) = (p[0], p[1], p[2]);
    // b = (3 − m)/4 + m t/(2 s)
    let b = Scalar::ratio((3 - mi) * si + 2 * mi * ti, 4 * si);
    sq(v, PI * (2.0 * m / (3.0 * s)).sqrt(), b)
}

fn powerplus(p: &[i64]) -> Res {
    let (s, t, m) = (f(p[0]), f(p[1]), f(p[2]));
    let v = 2f64.powf((m - 3.0) / 2.0 - m * t / s) * m.powf(0.25) / (3.0 * s).powf(0.25);
    sq(v, PI * (m / (3.0 * s)).sqrt(), b34())
}

fn powerratio(p: &[i64]) -> Res {
    let (s, t, m) = (f(p[0]), f(p[1]), f(p[2]));
    let e = t * m / s;
    let v = g(t / s).powf(m)
        * 2f64.powf(m / 2.0 - 1.5 - 2.0 * e)
        * s.powf(-m / 4.0 - 0.25 + e / 2.0)
        * m.powf(0.25 - m / 4.0 + e / 2.0)
        * PI.powf(e - m);
    let (si, ti, mi) = (p[0], p[1], p[2]);
    // b = 3/4 − m/4 + t m/(2 s)
    let b = Scalar::ratio((3 - mi) * si + 2 * ti * mi, 4 * si);
    sq(v, PI * (m / s).sqrt(), b)
}

fn powerminus_derive(p: &[i64]) -> Res {
    Ok(power(&partminus(&p[..2])?, p[2])?)
}

fn powerplus_derive(p: &[i64]) -> Res {
    Ok(power(&partplus(&p[..2])?, p[2])?)
}

fn powerratio_derive(p: &[i64]) -> Res {
    Ok(power(&partratio(&p[..2])?, p[2])?)
}

fn powerratio_odd(p: &[i64]) -> Res {
    let m = f(p[0]);
    sq(m.powf(0.25) / 2f64.powf(m / 2.0 + 1.75), PI * (m / 2.0).sqrt(), b34())
}

fn powerratio_odd_derive(p: &[i64]) -> Res {
    Ok(power(&partratio(&[2, 1])?, p[0])?)
}

// ---------------------------------------------------------------------------
// powers of the three basic products

fn powerm_minus(p: &[i64]) -> Res {
    let m = f(p[0]);
    let v = m.powf((m + 1.0) / 4.0) / (2f64.powf((3.0 * m + 5.0) / 4.0) * 3f64.powf((m + 1.0) / 4.0));
    sq(v, PI * (2.0 * m / 3.0).sqrt(), Scalar::ratio(p[0] + 3, 4))
}

fn powerm_plus(p: &[i64]) -> Res {
    let m = f(p[0]);
    let v = m.powf(0.25) / (2f64.powf((m + 3.0) / 2.0) * 3f64.powf(0.25));
    sq(v, PI * (m / 3.0).sqrt(), b34())
}

fn powerm_ratio(p: &[i64]) -> Res {
    let m = f(p[0]);
    let v = m.powf((m + 1.0) / 4.0) / 2f64.powf(1.5 * (m + 1.0));
    sq(v, PI * m.sqrt(), Scalar::ratio(p[0] + 3, 4))
}

fn powerm_minus_derive(p: &[i64]) -> Res {
    Ok(power(&partminus(&[1, 1])?, p[0])?)
}

fn powerm_plus_derive(p: &[i64]) -> Res {
    Ok(power(&partplus(&[1, 1])?, p[0])?)
}

fn powerm_ratio_derive(p: &[i64]) -> Res {
    Ok(power(&partratio(&[1, 1])?, p[0])?)
}

// ---------------------------------------------------------------------------
// assorted quotients

fn convplusdenom(p: &[i64]) -> Res {
    let m = f(p[0]);
    let v = (m - 1.0).powf(0.25) / (2f64.powf(1.5) * 3f64.powf(0.25) * m.powf(0.25));
    sq(v, PI * ((m - 1.0) / (3.0 * m)).sqrt(), b34())
}

/// The m − 1 progressions m k + j, j = 1..m−1, are all (1+q^·) factors
/// with the same growth; their product is one power times 2^{−3(m−1)/2}.
fn convplusdenom_derive(p: &[i64]) -> Res {
    let m = f(p[0]);
    let base = sq((3.0 * m).powf(-0.25), PI / (3.0 * m).sqrt(), b34())?;
    Ok(power(&base, p[0] - 1)?.scale(2f64.powf(-1.5 * (m - 1.0))))
}

fn convplusdenom_power(p: &[i64]) -> Res {
    let (m, h) = (f(p[0]), f(p[1]));
    let x = h * (m - 1.0) / (3.0 * m);
    sq(x.powf(0.25) / 2f64.powf(1.5), PI * x.sqrt(), b34())
}

fn convplusdenom_power_derive(p: &[i64]) -> Res {
    Ok(power(&convplusdenom_derive(&p[..1])?, p[1])?)
}

fn powerplusdenom(p: &[i64]) -> Res {
    let m = f(p[0]);
    sq(m.powf(0.25) / (2f64.powf(1.75) * 3f64.powf(0.25)), PI * (m / 6.0).sqrt(), b34())
}

/// q → −q turns 1/(1+q^k) into (1+q^{2k−1}), i.e. the (2, 1) progression.
fn powerplusdenom_derive(p: &[i64]) -> Res {
    Ok(power(&partplus(&[2, 1])?, p[0])?)
}

fn convplusnumer(p: &[i64]) -> Res {
    let m = f(p[0]);
    if p[0] % 2 == 0 {
        let v = (m + 2.0).powf(0.25) / (4.0 * (6.0 * m).powf(0.25));
        sq(v, PI * ((m + 2.0) / (6.0 * m)).sqrt(), b34())
    } else {
        let v = (m - 1.0).powf(0.25) / (2f64.powf(1.5) * (6.0 * m).powf(0.25));
        sq(v, PI * ((m - 1.0) / (6.0 * m)).sqrt(), b34())
    }
}

fn convplusnumer_derive(p: &[i64]) -> Res {
    let m = p[0];
    if m % 2 == 0 {
        convplus_derive(&[2, 1, m, m])
    } else {
        let target = convolve(&powerplus_derive(&[2, 1, 1])?, &convplus_derive(&[2 * m, 2 * m, 2 * m, m])?)?;
        let known = powerratio_derive(&[2 * m, m, 1])?;
        Ok(deconvolve(&target, &known)?)
    }
}

fn hagis(p: &[i64]) -> Res {
    let m = f(p[0]);
    let v = (m - 1.0).powf(0.25) / (2.0 * 6f64.powf(0.25) * m.powf(0.75));
    sq(v, PI * (2.0 * (m - 1.0) / (3.0 * m)).sqrt(), b34())
}

/// Fold of the m − 1 progressions m k + j.
fn hagis_derive(p: &[i64]) -> Res {
    let m = p[0];
    let mut acc = partminus(&[m, 1])?;
    for j in 2..m {
        acc = convolve(&acc, &partminus(&[m, j])?)?;
    }
    Ok(acc)
}

fn hagis_power(p: &[i64]) -> Res {
    let (m, h) = (f(p[0]), f(p[1]));
    let v = h.powf(0.25) * (m - 1.0).powf(0.25) / (2f64.powf(1.25) * 3f64.powf(0.25) * m.powf(0.25 + h / 2.0));
    sq(v, PI * (2.0 * h * (m - 1.0) / (3.0 * m)).sqrt(), b34())
}

fn hagis_power_derive(p: &[i64]) -> Res {
    Ok(power(&hagis_derive(&p[..1])?, p[1])?)
}

fn odd_over_even(p: &[i64]) -> Res {
    let m = f(p[0]);
    let v = (4.0 * m + 1.0).powf(0.25) / (2f64.powf(1.75) * 3f64.powf(0.25) * (2.0 * m + 1.0).powf(0.75));
    sq(v, PI * ((4.0 * m + 1.0) / (6.0 * (2.0 * m + 1.0))).sqrt(), b34())
}

fn odd_over_even_derive(p: &[i64]) -> Res {
    let k = 2 * p[0] + 1;
    let target = convolve(&partplus(&[2 * k, k])?, &hagis_derive(&[k])?)?;
    Ok(deconvolve(&target, &convplusdenom_derive(&[k])?)?)
}

fn odd_over_even0(_: &[i64]) -> Res {
    sq(1.0 / (2f64.powf(1.75) * 3f64.powf(0.25)), PI / 6f64.sqrt(), b34())
}

fn odd_over_even0_derive(_: &[i64]) -> Res {
    partplus(&[2, 1])
}

fn mixed_pm(p: &[i64]) -> Res {
    let m = f(p[0]);
    sq(1.0 / 2f64.powf((m + 1.0) / 2.0), PI * ((m - 2.0) / 3.0).sqrt(), Scalar::ratio(1, 2))
}

fn mixed_pm_derive(p: &[i64]) -> Res {
    Ok(deconvolve(&powerplus_derive(&[1, 1, p[0] + 1])?, &powerratio_derive(&[1, 1, 1])?)?)
}

fn inv_plus_minus(p: &[i64]) -> Res {
    let m = f(p[0]);
    let v = (2.0 * m - 1.0).powf((m + 1.0) / 4.0) / (2f64.powf(m + 1.0) * 3f64.powf((m + 1.0) / 4.0));
    sq(v, PI * ((2.0 * m - 1.0) / 3.0).sqrt(), Scalar::ratio(p[0] + 3, 4))
}

fn inv_plus_minus_derive(p: &[i64]) -> Res {
    Ok(deconvolve(&powerminus_derive(&[1, 1, p[0] + 1])?, &powerratio_derive(&[1, 1, 1])?)?)
}

fn a100823(_: &[i64]) -> Res {
    sq(37f64.sqrt() / (12.0 * 5f64.sqrt()), PI / 3.0 * (37.0f64 / 5.0).sqrt(), Scalar::int(1))
}

fn a100823_derive(_: &[i64]) -> Res {
    let left = convolve(&convplus_derive(&[5, 1, 5, 4])?, &convplus_derive(&[5, 2, 5, 3])?)?;
    let right = convolve(&convminus_derive(&[3, 1, 3, 2])?, &partminus(&[6, 6])?)?;
    Ok(convolve(&left, &right)?)
}

fn a147785(_: &[i64]) -> Res {
    sq((7.0f64 / 5.0).sqrt() / 12.0, PI / 3.0 * (14.0f64 / 5.0).sqrt(), Scalar::int(1))
}

fn a147785_derive(_: &[i64]) -> Res {
    let t = convolve(&convolve(&hagis_derive(&[15])?, &partplus(&[1, 1])?)?, &convminus_derive(&[3, 3, 5, 5])?)?;
    Ok(deconvolve(&t, &partratio(&[1, 1])?)?)
}

// ---------------------------------------------------------------------------
// exponent k: plane partitions and relatives, growth n^{2/3}

fn third(v: f64, r: f64, b: Scalar) -> Res {
    Ok(AsymptoticForm::single(v, third2(), r, b)?)
}

fn wright_plane(_: &[i64]) -> Res {
    let z = zeta3();
    let v = z.powf(7.0 / 36.0) * (1.0f64 / 12.0).exp() / (glaisher() * 2f64.powf(11.0 / 36.0) * (3.0 * PI).sqrt());
    third(v, 3.0 * z.cbrt() / 2f64.powf(2.0 / 3.0), Scalar::ratio(25, 36))
}

fn a026007(_: &[i64]) -> Res {
    let z = zeta3();
    let v = z.powf(1.0 / 6.0) / (2f64.powf(0.75) * 3f64.cbrt() * PI.sqrt());
    third(v, 1.5f64.powf(4.0 / 3.0) * z.cbrt(), third2().into())
}

fn a156616(_: &[i64]) -> Res {
    let z7 = 7.0 * zeta3();
    let v = z7.powf(7.0 / 36.0) * (1.0f64 / 12.0).exp() / (glaisher() * 2f64.powf(7.0 / 9.0) * (3.0 * PI).sqrt());
    third(v, 3.0 * 2f64.powf(-4.0 / 3.0) * z7.cbrt(), Scalar::ratio(25, 36))
}

fn meinardus(e: ExponentFn, kind: ProductKind) -> Res {
    let dd = dirichlet_from_exponent(&e)?;
    Ok(match kind {
        ProductKind::Minus => single_pole_minus(&dd)?,
        ProductKind::Plus => single_pole_plus(&dd)?,
    })
}

fn wright_plane_derive(_: &[i64]) -> Res {
    meinardus(ExponentFn::Power(1), ProductKind::Minus)
}

fn a026007_derive(_: &[i64]) -> Res {
    meinardus(ExponentFn::Power(1), ProductKind::Plus)
}

fn a156616_derive(_: &[i64]) -> Res {
    Ok(convolve(&wright_plane(&[])?, &a026007(&[])?)?)
}

fn powerkminus(p: &[i64]) -> Res {
    let m = f(p[0]);
    let mz = m * zeta3();
    let v = 2f64.powf(m / 36.0 - 1.0 / 3.0) * (m / 12.0).exp() * mz.powf(m / 36.0 + 1.0 / 6.0)
        / (glaisher().powf(m) * (3.0 * PI).sqrt());
    third(v, 3.0 * 2f64.powf(-2.0 / 3.0) * mz.cbrt(), Scalar::ratio(p[0] + 24, 36))
}

fn powerkplus(p: &[i64]) -> Res {
    let m = f(p[0]);
    let mz = m * zeta3();
    let v = 2f64.powf(-2.0 / 3.0 - m / 12.0) * mz.powf(1.0 / 6.0) / (3f64.cbrt() * PI.sqrt());
    third(v, 1.5f64.powf(4.0 / 3.0) * mz.cbrt(), third2().into())
}

fn powerkratio(p: &[i64]) -> Res {
    let m = f(p[0]);
    let z7 = 7.0 * zeta3();
    let v = (m / 12.0).exp() * m.powf(1.0 / 6.0 + m / 36.0) * z7.powf(1.0 / 6.0 + m / 36.0)
        / (glaisher().powf(m) * 2f64.powf(2.0 / 3.0 + m / 9.0) * (3.0 * PI).sqrt());
    third(v, 1.5 * (z7 * m / 2.0).cbrt(), Scalar::ratio(p[0] + 24, 36))
}

fn powerkminus_derive(p: &[i64]) -> Res {
    Ok(power(&wright_plane(&[])?, p[0])?)
}

fn powerkplus_derive(p: &[i64]) -> Res {
    Ok(power(&a026007(&[])?, p[0])?)
}

fn powerkratio_derive(p: &[i64]) -> Res {
    Ok(power(&a156616(&[])?, p[0])?)
}

fn a255528(_: &[i64]) -> Res {
    let z = zeta3();
    let v = glaisher() * z.powf(5.0 / 36.0) * (-1.0f64 / 12.0).exp() / (2f64.powf(7.0 / 9.0) * (3.0 * PI).sqrt());
    third(v, 3.0 * z.cbrt() * 2f64.powf(-5.0 / 3.0), Scalar::ratio(23, 36))
}

/// q → −q: ∏(1+q^{2k})^{2k} lives on even indices, read at n/2 with half
/// density; removing it from ∏(1+q^k)^k leaves the odd-index factors.
fn a255528_derive(_: &[i64]) -> Res {
    let even = powerkplus(&[2])?.rescale_index(2.0);
    let odd = deconvolve(&powerkplus(&[1])?, &even)?.scale(2.0);
    let t = convolve(&odd, &powerkplus(&[1])?)?;
    Ok(deconvolve(&t, &powerkminus(&[1])?)?)
}

// ---------------------------------------------------------------------------
// exponent k^m

fn zneg(m: i64) -> Scalar {
    Scalar::from(zeta_neg(m as u32))
}

fn pkexp_b(m: i64, d0: Scalar) -> Scalar {
    (Scalar::int(m + 3) - Scalar::int(2) * d0) * Scalar::ratio(1, 2 * m + 4)
}

fn gz(m: f64) -> f64 {
    g(m + 2.0) * zeta(m + 2.0).expect("argument above one")
}

fn powerkexpminus(p: &[i64]) -> Res {
    let m = f(p[0]);
    let d0 = zneg(p[0]);
    let k = gz(m);
    let zd = ConstantTable::get().zeta_deriv_neg(p[0] as u32);
    let v = k.powf((1.0 - 2.0 * d0.to_f64()) / (2.0 * m + 4.0)) * zd.exp() / (2.0 * PI * (m + 2.0)).sqrt();
    let r = (m + 2.0) / (m + 1.0) * k.powf(1.0 / (m + 2.0));
    Ok(AsymptoticForm::single(v, Rational64::new(p[0] + 1, p[0] + 2), r, pkexp_b(p[0], d0))?)
}

fn powerkexpplus(p: &[i64]) -> Res {
    let m = f(p[0]);
    let d0 = zneg(p[0]).to_f64();
    let k = (1.0 - 2f64.powf(-m - 1.0)) * gz(m);
    let v = 2f64.powf(d0) * k.powf(1.0 / (2.0 * m + 4.0)) / (2.0 * PI * (m + 2.0)).sqrt();
    let r = (m + 2.0) / (m + 1.0) * k.powf(1.0 / (m + 2.0));
    Ok(AsymptoticForm::single(v, Rational64::new(p[0] + 1, p[0] + 2), r, Scalar::ratio(p[0] + 3, 2 * p[0] + 4))?)
}

fn powerkexpratio(p: &[i64]) -> Res {
    let m = f(p[0]);
    let d0 = zneg(p[0]);
    let k = (2f64.powf(m + 2.0) - 1.0) * gz(m);
    let zd = ConstantTable::get().zeta_deriv_neg(p[0] as u32);
    let v = (k / 2f64.powf(2.0 * m + 3.0)).powf((1.0 - 2.0 * d0.to_f64()) / (2.0 * m + 4.0)) * zd.exp()
        / ((m + 2.0) * PI).sqrt();
    let r = (m + 2.0) / (m + 1.0) * (k / 2f64.powf(m + 1.0)).powf(1.0 / (m + 2.0));
    Ok(AsymptoticForm::single(v, Rational64::new(p[0] + 1, p[0] + 2), r, pkexp_b(p[0], d0))?)
}

/// Even m: ζ(−m) = 0 and ζ′(−m) = (−1)^{m/2} m! ζ(m+1)/(2^{m+1} π^m).
fn powerkexpratioeven(p: &[i64]) -> Res {
    let m = f(p[0]);
    let k = (2f64.powf(m + 2.0) - 1.0) * gz(m);
    let sign = if (p[0] / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let zd = sign * g(m + 1.0) * zeta(m + 1.0)? / (2f64.powf(m + 1.0) * PI.powf(m));
    let v = (k / 2f64.powf(2.0 * m + 3.0)).powf(1.0 / (2.0 * m + 4.0)) * zd.exp() / ((m + 2.0) * PI).sqrt();
    let r = (m + 2.0) / (m + 1.0) * (k / 2f64.powf(m + 1.0)).powf(1.0 / (m + 2.0));
    Ok(AsymptoticForm::single(v, Rational64::new(p[0] + 1, p[0] + 2), r, Scalar::ratio(p[0] + 3, 2 * p[0] + 4))?)
}

fn kpow_exponent(m: i64) -> ExponentFn {
    if m == 0 {
        ExponentFn::Constant(1)
    } else {
        ExponentFn::Power(m as u32)
    }
}

fn powerkexpminus_derive(p: &[i64]) -> Res {
    meinardus(kpow_exponent(p[0]), ProductKind::Minus)
}

fn powerkexpplus_derive(p: &[i64]) -> Res {
    meinardus(kpow_exponent(p[0]), ProductKind::Plus)
}

fn powerkexpratio_derive(p: &[i64]) -> Res {
    Ok(convolve(&powerkexpminus_derive(p)?, &powerkexpplus_derive(p)?)?)
}

// ---------------------------------------------------------------------------
// exponent m k + c, growth n^{2/3} with an n^{1/3} correction

fn two_term(v: f64, s: f64, r: f64, b: Scalar) -> Res {
    if s == 0.0 {
        return third(v, r, b);
    }
    Ok(AsymptoticForm::mixed(v, s, r, b)?)
}

fn twopole_minus(p: &[i64]) -> Res {
    let (m, c) = (f(p[0]), f(p[1]));
    let mz = m * zeta3();
    let ln_v = (m / 36.0 + c / 6.0 + 1.0 / 6.0) * mz.ln() + m / 12.0
        - c * c * PI.powi(4) / (432.0 * mz)
        - m * glaisher().ln()
        - (c / 3.0 + 1.0 / 3.0 - m / 36.0) * 2f64.ln()
        - 0.5 * 3f64.ln()
        - (c + 1.0) / 2.0 * PI.ln();
    let s = c * PI * PI / (3.0 * 2f64.powf(4.0 / 3.0) * mz.cbrt());
    let r = 3.0 * mz.cbrt() / 2f64.powf(2.0 / 3.0);
    two_term(ln_v.exp(), s, r, Scalar::ratio(p[0] + 6 * p[1] + 24, 36))
}

fn twopole_plus(p: &[i64]) -> Res {
    let (m, c) = (f(p[0]), f(p[1]));
    let mz = m * zeta3();
    let ln_v = mz.ln() / 6.0
        - c * c * PI.powi(4) / (1296.0 * mz)
        - (m / 12.0 + c / 2.0 + 2.0 / 3.0) * 2f64.ln()
        - 3f64.ln() / 3.0
        - 0.5 * PI.ln();
    let s = c * PI * PI / (2f64.powf(5.0 / 3.0) * 3f64.powf(4.0 / 3.0) * mz.cbrt());
    let r = 3f64.powf(4.0 / 3.0) * mz.cbrt() / 2f64.powf(4.0 / 3.0);
    two_term(ln_v.exp(), s, r, third2().into())
}

fn twopole_ratio(p: &[i64]) -> Res {
    let (m, c) = (f(p[0]), f(p[1]));
    let mz = m * zeta3();
    let z7 = 7.0 * mz;
    let ln_v = (1.0 / 6.0 + c / 6.0 + m / 36.0) * z7.ln() + m / 12.0
        - c * c * PI.powi(4) / (336.0 * mz)
        - m * glaisher().ln()
        - (2.0 / 3.0 + 7.0 * c / 6.0 + m / 9.0) * 2f64.ln()
        - 0.5 * 3f64.ln()
        - (c + 1.0) / 2.0 * PI.ln();
    let s = c * PI * PI / (2f64.powf(5.0 / 3.0) * z7.cbrt());
    let r = 3.0 * z7.cbrt() / 2f64.powf(4.0 / 3.0);
    two_term(ln_v.exp(), s, r, Scalar::ratio(p[0] + 6 * p[1] + 24, 36))
}

fn affine(p: &[i64]) -> ExponentFn {
    ExponentFn::Affine { m: p[0] as u64, c: p[1] }
}

fn twopole_minus_derive(p: &[i64]) -> Res {
    Ok(two_pole(&dirichlet_from_exponent(&affine(p))?, ProductKind::Minus)?)
}

fn twopole_plus_derive(p: &[i64]) -> Res {
    Ok(two_pole(&dirichlet_from_exponent(&affine(p))?, ProductKind::Plus)?)
}

fn twopole_ratio_derive(p: &[i64]) -> Res {
    Ok(convolve_mixed(&twopole_minus_derive(p)?, &twopole_plus_derive(p)?)?)
}

// ---------------------------------------------------------------------------
// exponent m^k, growth m^n exp(c √n)

fn saddle(v: f64, s: f64, base: i64) -> Res {
    let form = AsymptoticForm::single(v, half(), s, b34())?.with_base(base as f64);
    form.validate()?;
    Ok(form)
}

fn saddle_minus(p: &[i64]) -> Res {
    let c = saddle_constant(p[0] as u32, SaddleVariant::Minus)?;
    saddle((c - 0.5).exp() / (2.0 * PI.sqrt()), 2.0, p[0])
}

fn saddle_plus(p: &[i64]) -> Res {
    let c = saddle_constant(p[0] as u32, SaddleVariant::Plus)?;
    saddle((-0.5 - c).exp() / (2.0 * PI.sqrt()), 2.0, p[0])
}

fn saddle_ratio(p: &[i64]) -> Res {
    let c = saddle_constant(p[0] as u32, SaddleVariant::Ratio)?;
    saddle((c - 1.0).exp() / (PI.sqrt() * 2f64.powf(0.75)), 2.0 * 2f64.sqrt(), p[0])
}

// ---------------------------------------------------------------------------
// DSL builders

fn spec_partminus(p: &[i64]) -> String {
    format!("prod(k>=0, 1/(1-{}))", q(p[0], p[1]))
}
fn spec_partplus(p: &[i64]) -> String {
    format!("prod(k>=0, (1+{}))", q(p[0], p[1]))
}
fn spec_partratio(p: &[i64]) -> String {
    let x = q(p[0], p[1]);
    format!("prod(k>=0, (1+{x})/(1-{x}))")
}
fn spec_convminus(p: &[i64]) -> String {
    format!("prod(k>=0, 1/((1-{})*(1-{})))", q(p[0], p[1]), q(p[2], p[3]))
}
fn spec_convplus(p: &[i64]) -> String {
    format!("prod(k>=0, (1+{})*(1+{}))", q(p[0], p[1]), q(p[2], p[3]))
}
fn spec_convratio(p: &[i64]) -> String {
    format!("prod(k>=0, (1+{})/(1-{}))", q(p[0], p[1]), q(p[2], p[3]))
}
fn spec_powerminus(p: &[i64]) -> String {
    format!("prod(k>=0, 1/(1-{}){})", q(p[0], p[1]), pw(p[2]))
}
fn spec_powerplus(p: &[i64]) -> String {
    format!("prod(k>=0, (1+{}){})", q(p[0], p[1]), pw(p[2]))
}
fn spec_powerratio(p: &[i64]) -> String {
    let x = q(p[0], p[1]);
    let e = pw(p[2]);
    format!("prod(k>=0, (1+{x}){e}/(1-{x}){e})")
}
fn spec_powerratio_odd(p: &[i64]) -> String {
    spec_powerratio(&[2, 1, p[0]])
}
fn spec_powerm_minus(p: &[i64]) -> String {
    format!("prod(k>=1, 1/(1-q^k){})", pw(p[0]))
}
fn spec_powerm_plus(p: &[i64]) -> String {
    format!("prod(k>=1, (1+q^k){})", pw(p[0]))
}
fn spec_powerm_ratio(p: &[i64]) -> String {
    let e = pw(p[0]);
    format!("prod(k>=1, (1+q^k){e}/(1-q^k){e})")
}
fn spec_convplusdenom(p: &[i64]) -> String {
    format!("prod(k>=1, (1+q^k)/(1+{}))", q(p[0], 0))
}
fn spec_convplusdenom_power(p: &[i64]) -> String {
    let e = pw(p[1]);
    format!("prod(k>=1, (1+q^k){e}/(1+{}){e})", q(p[0], 0))
}
fn spec_powerplusdenom(p: &[i64]) -> String {
    format!("prod(k>=1, 1/(1+q^k){})", pw(p[0]))
}
fn spec_convplusnumer(p: &[i64]) -> String {
    format!("prod(k>=1, (1+{})/(1+q^k))", q(p[0], 0))
}
fn spec_hagis(p: &[i64]) -> String {
    format!("prod(k>=1, (1-{})/(1-q^k))", q(p[0], 0))
}
fn spec_hagis_power(p: &[i64]) -> String {
    let e = pw(p[1]);
    format!("prod(k>=1, (1-{}){e}/(1-q^k){e})", q(p[0], 0))
}
fn spec_odd_over_even(p: &[i64]) -> String {
    format!("prod(k>=1, (1-{})/(1-q^(2k)))", q(2 * p[0] + 1, 0))
}
fn spec_odd_over_even0(_: &[i64]) -> String {
    "prod(k>=1, (1-q^k)/(1-q^(2k)))".into()
}
fn spec_mixed_pm(p: &[i64]) -> String {
    format!("prod(k>=1, (1-q^k)*(1+q^k){})", pw(p[0]))
}
fn spec_inv_plus_minus(p: &[i64]) -> String {
    format!("prod(k>=1, 1/((1+q^k)*(1-q^k){}))", pw(p[0]))
}
fn spec_a100823(_: &[i64]) -> String {
    "prod(k>=1, (1+q^k)/((1-q^k)*(1+q^(3k))*(1+q^(5k))))".into()
}
fn spec_a147785(_: &[i64]) -> String {
    "prod(k>=1, (1-q^(15k))/((1-q^(3k))*(1-q^(5k))))".into()
}
fn spec_wright_plane(_: &[i64]) -> String {
    "prod(k>=1, 1/(1-q^k)^k)".into()
}
fn spec_a026007(_: &[i64]) -> String {
    "prod(k>=1, (1+q^k)^k)".into()
}
fn spec_a156616(_: &[i64]) -> String {
    "prod(k>=1, (1+q^k)^k/(1-q^k)^k)".into()
}
fn spec_powerkminus(p: &[i64]) -> String {
    format!("prod(k>=1, 1/(1-q^k){})", aff(p[0], 0))
}
fn spec_powerkplus(p: &[i64]) -> String {
    format!("prod(k>=1, (1+q^k){})", aff(p[0], 0))
}
fn spec_powerkratio(p: &[i64]) -> String {
    let e = aff(p[0], 0);
    format!("prod(k>=1, (1+q^k){e}/(1-q^k){e})")
}
fn spec_a255528(_: &[i64]) -> String {
    "prod(k>=1, 1/(1+q^k)^k)".into()
}
fn spec_powerkexpminus(p: &[i64]) -> String {
    format!("prod(k>=1, 1/(1-q^k){})", kpow(p[0]))
}
fn spec_powerkexpplus(p: &[i64]) -> String {
    format!("prod(k>=1, (1+q^k){})", kpow(p[0]))
}
fn spec_powerkexpratio(p: &[i64]) -> String {
    let e = kpow(p[0]);
    format!("prod(k>=1, (1+q^k){e}/(1-q^k){e})")
}
fn spec_twopole_minus(p: &[i64]) -> String {
    format!("prod(k>=1, 1/(1-q^k){})", aff(p[0], p[1]))
}
fn spec_twopole_plus(p: &[i64]) -> String {
    format!("prod(k>=1, (1+q^k){})", aff(p[0], p[1]))
}
fn spec_twopole_ratio(p: &[i64]) -> String {
    let e = aff(p[0], p[1]);
    format!("prod(k>=1, (1+q^k){e}/(1-q^k){e})")
}
fn spec_saddle_minus(p: &[i64]) -> String {
    format!("prod(k>=1, 1/(1-q^k)^{}^k)", p[0])
}
fn spec_saddle_plus(p: &[i64]) -> String {
    format!("prod(k>=1, (1+q^k)^{}^k)", p[0])
}
fn spec_saddle_ratio(p: &[i64]) -> String {
    let m = p[0];
    format!("prod(k>=1, (1+q^k)^{m}^k/(1-q^k)^{m}^k)")
}

// ---------------------------------------------------------------------------
// the registry

const P_ST: &[Param] =
    &[Param { name: "s", constraint: "s > 0" }, Param { name: "t", constraint: "t > 0, GCD(s, t) = 1" }];
const P_STCD: &[Param] = &[
    Param { name: "s", constraint: "s > 0" },
    Param { name: "t", constraint: "t > 0" },
    Param { name: "c", constraint: "c > 0" },
    Param { name: "d", constraint: "d > 0, GCD(s, t, c, d) = 1" },
];
const P_STM: &[Param] = &[
    Param { name: "s", constraint: "s > 0" },
    Param { name: "t", constraint: "t > 0, GCD(s, t) = 1" },
    Param { name: "m", constraint: "m > 0" },
];
const P_M0: &[Param] = &[Param { name: "m", constraint: "m >= 0" }];
const P_M1: &[Param] = &[Param { name: "m", constraint: "m >= 1" }];
const P_M2: &[Param] = &[Param { name: "m", constraint: "m > 1" }];
const P_M3: &[Param] = &[Param { name: "m", constraint: "m > 2" }];
const P_MEVEN: &[Param] = &[Param { name: "m", constraint: "m even, m >= 2" }];
const P_MH: &[Param] = &[Param { name: "m", constraint: "m > 1" }, Param { name: "h", constraint: "h >= 1" }];
const P_MC: &[Param] = &[Param { name: "m", constraint: "m >= 1" }, Param { name: "c", constraint: "m + c > 0" }];

const S_ST: &[&[i64]] = &[&[1, 1], &[2, 1], &[3, 1]];
const S_STCD: &[&[i64]] = &[&[1, 1, 1, 1], &[1, 1, 2, 1], &[2, 1, 1, 1]];
const S_STM: &[&[i64]] = &[&[1, 1, 1], &[1, 1, 2], &[2, 1, 1]];
const S_M0: &[&[i64]] = &[&[0], &[1], &[2]];
const S_M1: &[&[i64]] = &[&[1], &[2], &[3]];
const S_M2: &[&[i64]] = &[&[2], &[3], &[4]];
const S_M3: &[&[i64]] = &[&[3], &[4], &[5]];
const S_MEVEN: &[&[i64]] = &[&[2], &[4], &[6]];
const S_MH: &[&[i64]] = &[&[2, 1], &[2, 2], &[3, 1]];
const S_MC: &[&[i64]] = &[&[1, 0], &[1, 1], &[2, -1]];
const S_NONE: &[&[i64]] = &[&[]];

static FAMILIES: &[Family] = &[
    Family {
        id: "partminus",
        params: P_ST,
        oeis: &["A000041"],
        description: "partitions into parts congruent to t mod s",
        formula: "Γ(t/s) π^(t/s−1) 2^(−3/2−t/(2s)) 3^(−t/(2s)) s^(−1/2+t/(2s)) exp(π√(2n/(3s))) / n^((s+t)/(2s))",
        note: None,
        alternating: false,
        saddle: false,
        samples: S_ST,
        check: check_st,
        spec: spec_partminus,
        closed: partminus,
        derive: None,
    },
    Family {
        id: "partplus",
        params: P_ST,
        oeis: &["A000009"],
        description: "distinct parts congruent to t mod s",
        formula: "exp(π√(n/(3s))) / (2^(1+t/s) (3s)^(1/4) n^(3/4))",
        note: None,
        alternating: false,
        saddle: false,
        samples: S_ST,
        check: check_st,
        spec: spec_partplus,
        closed: partplus,
        derive: None,
    },
    Family {
        id: "partratio",
        params: P_ST,
        oeis: &["A015128"],
        description: "overpartitions into parts congruent to t mod s",
        formula: "Γ(t/s) s^(t/(2s)−1/2) π^(t/s−1) exp(π√(n/s)) / (2^(2t/s+1) n^(t/(2s)+1/2))",
        note: None,
        alternating: false,
        saddle: false,
        samples: S_ST,
        check: check_st,
        spec: spec_partratio,
        closed: partratio,
        derive: Some(partratio_derive),
    },
    Family {
        id: "convminus",
        params: P_STCD,
        oeis: &[],
        description: "partitions into parts from two progressions",
        formula: "Γ(t/s) Γ(d/c) s^((2t/s−2d/c−1)/4) c^((2d/c−2t/s−1)/4) (s+c)^((2t/s+2d/c−1)/4) π^(t/s+d/c−2) exp(π√(2(1/s+1/c)n/3)) / (2^((2t/s+2d/c+7)/4) 3^((2t/s+2d/c−1)/4) n^((1+2t/s+2d/c)/4))",
        note: None,
        alternating: false,
        saddle: false,
        samples: S_STCD,
        check: check_stcd,
        spec: spec_convminus,
        closed: convminus,
        derive: Some(convminus_derive),
    },
    Family {
        id: "convplus",
        params: P_STCD,
        oeis: &[],
        description: "distinct parts from two progressions",
        formula: "2^(−1/2−t/s−d/c) (s+c)^(1/4) exp(π√((1/s+1/c)n/3)) / ((3sc)^(1/4) n^(3/4))",
        note: None,
        alternating: false,
        saddle: false,
        samples: S_STCD,
        check: check_stcd,
        spec: spec_convplus,
        closed: convplus,
        derive: Some(convplus_derive),
    },
    Family {
        id: "convratio",
        params: P_STCD,
        oeis: &[],
        description: "distinct parts from one progression, unrestricted parts from another",
        formula: "2^(−d/c−(s+t)/s) c^(d/(2c)−1/2) (c+2s)^(d/(2c)) π^(d/c−1) Γ(d/c) exp(π√((2/c+1/s)n/3)) / (3^(d/(2c)) s^(d/(2c)) n^((c+d)/(2c)))",
        note: None,
        alternating: false,
        saddle: false,
        samples: S_STCD,
        check: check_stcd,
        spec: spec_convratio,
        closed: convratio,
        derive: Some(convratio_derive),
    },
    Family {
        id: "powerminus",
        params: P_STM,
        oeis: &[],
        description: "m-colored partitions into parts congruent to t mod s",
        formula: "Γ(t/s)^m 2^(−(m+5)/4−mt/(2s)) 3^((m−1)/4−mt/(2s)) m^(mt/(2s)−(m−1)/4) s^(mt/(2s)−(m+1)/4) π^(mt/s−m) n^((m−3)/4−mt/(2s)) exp(π√(2mn/(3s)))",
        note: None,
        alternating: false,
        saddle: false,
        samples: S_STM,
        check: check_stm,
        spec: spec_powerminus,
        closed: powerminus,
        derive: Some(powerminus_derive),
    },
    Family {
        id: "powerplus",
        params: P_STM,
        oeis: &[],
        description: "m-colored distinct parts congruent to t mod s",
        formula: "2^((m−3)/2−mt/s) m^(1/4) exp(π√(mn/(3s))) / ((3s)^(1/4) n^(3/4))",
        note: None,
        alternating: false,
        saddle: false,
        samples: S_STM,
        check: check_stm,
        spec: spec_powerplus,
        closed: powerplus,
        derive: Some(powerplus_derive),
    },
    Family {
        id: "powerratio",
        params: P_STM,
        oeis: &[],
        description: "m-colored overpartitions into parts congruent to t mod s",
        formula: "Γ(t/s)^m 2^(m/2−3/2−2tm/s) s^(tm/(2s)−m/4−1/4) m^(1/4−m/4+tm/(2s)) π^(tm/s−m) n^(m/4−3/4−tm/(2s)) exp(π√(mn/s))",
        note: None,
        alternating: false,
        saddle: false,
        samples: S_STM,
        check: check_stm,
        spec: spec_powerratio,
        closed: powerratio,
        derive: Some(powerratio_derive),
    },
    Family {
        id: "powerratio_odd",
        params: P_M1,
        oeis: &["A080054", "A007096"],
        description: "m-colored overpartitions into odd parts",
        formula: "m^(1/4) exp(π√(mn/2)) / (2^(m/2+7/4) n^(3/4))",
        note: None,
        alternating: false,
        saddle: false,
        samples: S_M1,
        check: m_ge1,
        spec: spec_powerratio_odd,
        closed: powerratio_odd,
        derive: Some(powerratio_odd_derive),
    },
    Family {
        id: "powerm_minus",
        params: P_M1,
        oeis: &["A000041", "A000712", "A000716", "A023003"],
        description: "partitions into m colors",
        formula: "m^((m+1)/4) exp(π√(2mn/3)) / (2^((3m+5)/4) 3^((m+1)/4) n^((m+3)/4))",
        note: None,
        alternating: false,
        saddle: false,
        samples: S_M1,
        check: m_ge1,
        spec: spec_powerm_minus,
        closed: powerm_minus,
        derive: Some(powerm_minus_derive),
    },
    Family {
        id: "powerm_plus",
        params: P_M1,
        oeis: &["A000009", "A022567", "A022568", "A022569"],
        description: "distinct parts in m colors",
        formula: "m^(1/4) exp(π√(mn/3)) / (2^((m+3)/2) 3^(1/4) n^(3/4))",
        note: None,
        alternating: false,
        saddle: false,
        samples: S_M1,
        check: m_ge1,
        spec: spec_powerm_plus,
        closed: powerm_plus,
        derive: Some(powerm_plus_derive),
    },
    Family {
        id: "powerm_ratio",
        params: P_M1,
        oeis: &["A015128", "A001934", "A004404"],
        description: "overpartitions in m colors",
        formula: "m^((m+1)/4) exp(π√(mn)) / (2^(3(m+1)/2) n^((m+3)/4))",
        note: None,
        alternating: false,
        saddle: false,
        samples: S_M1,
        check: m_ge1,
        spec: spec_powerm_ratio,
        closed: powerm_ratio,
        derive: Some(powerm_ratio_derive),
    },
    Family {
        id: "convplusdenom",
        params: P_M2,
        oeis: &["A000700", "A003105", "A070048"],
        description: "distinct parts not divisible by m",
        formula: "(m−1)^(1/4) exp(π√((m−1)n/(3m))) / (2^(3/2) 3^(1/4) m^(1/4) n^(3/4))",
        note: None,
        alternating: false,
        saddle: false,
        samples: S_M2,
        check: m_ge2,
        spec: spec_convplusdenom,
        closed: convplusdenom,
        derive: Some(convplusdenom_derive),
    },
    Family {
        id: "convplusdenom_power",
        params: P_MH,
        oeis: &[],
        description: "h-th power of distinct parts not divisible by m",
        formula: "(h(m−1)/(3m))^(1/4) exp(π√(h(m−1)n/(3m))) / (2^(3/2) n^(3/4))",
        note: None,
        alternating: false,
        saddle: false,
        samples: S_MH,
        check: m_ge2_h_ge1,
        spec: spec_convplusdenom_power,
        closed: convplusdenom_power,
        derive: Some(convplusdenom_power_derive),
    },
    Family {
        id: "powerplusdenom",
        params: P_M1,
        oeis: &["A081362", "A022597", "A022598"],
        description: "reciprocal of the m-th power of the distinct-parts product",
        formula: "(−1)^n m^(1/4) exp(π√(mn/6)) / (2^(7/4) 3^(1/4) n^(3/4))",
        note: None,
        alternating: true,
        saddle: false,
        samples: S_M1,
        check: m_ge1,
        spec: spec_powerplusdenom,
        closed: powerplusdenom,
        derive: Some(powerplusdenom_derive),
    },
    Family {
        id: "convplusnumer",
        params: P_M2,
        oeis: &["A081360", "A109389", "A261734"],
        description: "distinct multiples of m over distinct parts",
        formula: "m even: (−1)^n (m+2)^(1/4) exp(π√((m+2)n/(6m))) / (4 (6m)^(1/4) n^(3/4)); m odd: (−1)^n (m−1)^(1/4) exp(π√((m−1)n/(6m))) / (2^(3/2) (6m)^(1/4) n^(3/4))",
        note: Some("odd m: the first few coefficients vanish or break the sign pattern (m = 3 settles at n = 16)"),
        alternating: true,
        saddle: false,
        samples: S_M2,
        check: m_ge2,
        spec: spec_convplusnumer,
        closed: convplusnumer,
        derive: Some(convplusnumer_derive),
    },
    Family {
        id: "hagis",
        params: P_M2,
        oeis: &["A000009", "A000726", "A001935"],
        description: "partitions with no part repeated m or more times",
        formula: "(m−1)^(1/4) exp(π√(2(m−1)n/(3m))) / (2 6^(1/4) m^(3/4) n^(3/4))",
        note: Some("This formula circulates in the literature with a wrong amplitude; the amplitude here matches the convolution of the m − 1 residue classes and the exact coefficients."),
        alternating: false,
        saddle: false,
        samples: S_M2,
        check: m_ge2,
        spec: spec_hagis,
        closed: hagis,
        derive: Some(hagis_derive),
    },
    Family {
        id: "hagis_power",
        params: P_MH,
        oeis: &[],
        description: "h-th power of the hagis product",
        formula: "h^(1/4) (m−1)^(1/4) exp(π√(2h(m−1)n/(3m))) / (2^(5/4) 3^(1/4) m^(1/4+h/2) n^(3/4))",
        note: None,
        alternating: false,
        saddle: false,
        samples: S_MH,
        check: m_ge2_h_ge1,
        spec: spec_hagis_power,
        closed: hagis_power,
        derive: Some(hagis_power_derive),
    },
    Family {
        id: "odd_over_even",
        params: P_M1,
        oeis: &["A262346", "A262364"],
        description: "∏(1−q^((2m+1)k))/(1−q^(2k))",
        formula: "(−1)^n (4m+1)^(1/4) exp(π√((4m+1)n/(6(2m+1)))) / (2^(7/4) 3^(1/4) (2m+1)^(3/4) n^(3/4))",
        note: None,
        alternating: true,
        saddle: false,
        samples: S_M1,
        check: m_ge1,
        spec: spec_odd_over_even,
        closed: odd_over_even,
        derive: Some(odd_over_even_derive),
    },
    Family {
        id: "odd_over_even0",
        params: &[],
        oeis: &["A081362"],
        description: "m = 0 member of odd_over_even, ∏1/(1+q^k)",
        formula: "(−1)^n exp(π√(n/6)) / (2^(7/4) 3^(1/4) n^(3/4))",
        note: Some("kept separate: the general amplitude does not specialize to m = 0"),
        alternating: true,
        saddle: false,
        samples: S_NONE,
        check: check_none,
        spec: spec_odd_over_even0,
        closed: odd_over_even0,
        derive: Some(odd_over_even0_derive),
    },
    Family {
        id: "mixed_pm",
        params: P_M3,
        oeis: &["A085140", "A261998"],
        description: "∏(1−q^k)(1+q^k)^m",
        formula: "exp(π√((m−2)n/3)) / (2^((m+1)/2) n^(1/2))",
        note: None,
        alternating: false,
        saddle: false,
        samples: S_M3,
        check: m_ge3,
        spec: spec_mixed_pm,
        closed: mixed_pm,
        derive: Some(mixed_pm_derive),
    },
    Family {
        id: "inv_plus_minus",
        params: P_M2,
        oeis: &["A002513", "A029863", "A262380"],
        description: "∏1/((1+q^k)(1−q^k)^m)",
        formula: "(2m−1)^((m+1)/4) exp(π√((2m−1)n/3)) / (2^(m+1) 3^((m+1)/4) n^((m+3)/4))",
        note: None,
        alternating: false,
        saddle: false,
        samples: S_M2,
        check: m_ge2,
        spec: spec_inv_plus_minus,
        closed: inv_plus_minus,
        derive: Some(inv_plus_minus_derive),
    },
    Family {
        id: "wright_plane",
        params: &[],
        oeis: &["A000219"],
        description: "plane partitions",
        formula: "ζ(3)^(7/36) exp(3ζ(3)^(1/3)(n/2)^(2/3) + 1/12) / (A 2^(11/36) √(3π) n^(25/36))",
        note: Some("A common misquotation of this formula drops or misplaces the Glaisher constant A; the form here matches the exact coefficients."),
        alternating: false,
        saddle: false,
        samples: S_NONE,
        check: check_none,
        spec: spec_wright_plane,
        closed: wright_plane,
        derive: Some(wright_plane_derive),
    },
    Family {
        id: "a026007",
        params: &[],
        oeis: &["A026007"],
        description: "∏(1+q^k)^k",
        formula: "ζ(3)^(1/6) exp((3/2)^(4/3) ζ(3)^(1/3) n^(2/3)) / (2^(3/4) 3^(1/3) √π n^(2/3))",
        note: None,
        alternating: false,
        saddle: false,
        samples: S_NONE,
        check: check_none,
        spec: spec_a026007,
        closed: a026007,
        derive: Some(a026007_derive),
    },
    Family {
        id: "a156616",
        params: &[],
        oeis: &["A156616"],
        description: "∏((1+q^k)/(1−q^k))^k",
        formula: "(7ζ(3))^(7/36) exp(1/12 + 3 2^(−4/3) (7ζ(3))^(1/3) n^(2/3)) / (A 2^(7/9) √(3π) n^(25/36))",
        note: None,
        alternating: false,
        saddle: false,
        samples: S_NONE,
        check: check_none,
        spec: spec_a156616,
        closed: a156616,
        derive: Some(a156616_derive),
    },
    Family {
        id: "powerkminus",
        params: P_M1,
        oeis: &["A000219", "A161870", "A255610"],
        description: "∏1/(1−q^k)^(mk)",
        formula: "2^(m/36−1/3) (mζ(3))^(m/36+1/6) exp(m/12 + 3 2^(−2/3) (mζ(3))^(1/3) n^(2/3)) / (A^m √(3π) n^(m/36+2/3))",
        note: None,
        alternating: false,
        saddle: false,
        samples: S_M1,
        check: m_ge1,
        spec: spec_powerkminus,
        closed: powerkminus,
        derive: Some(powerkminus_derive),
    },
    Family {
        id: "powerkplus",
        params: P_M1,
        oeis: &["A026007", "A026011", "A027346"],
        description: "∏(1+q^k)^(mk)",
        formula: "2^(−2/3−m/12) (mζ(3))^(1/6) exp((3/2)^(4/3) (mζ(3))^(1/3) n^(2/3)) / (3^(1/3) √π n^(2/3))",
        note: None,
        alternating: false,
        saddle: false,
        samples: S_M1,
        check: m_ge1,
        spec: spec_powerkplus,
        closed: powerkplus,
        derive: Some(powerkplus_derive),
    },
    Family {
        id: "powerkratio",
        params: P_M1,
        oeis: &["A156616", "A261386", "A261389"],
        description: "∏((1+q^k)/(1−q^k))^(mk)",
        formula: "(7mζ(3))^(1/6+m/36) exp(m/12 + (3/2)(7mζ(3)/2)^(1/3) n^(2/3)) / (A^m 2^(2/3+m/9) √(3π) n^(2/3+m/36))",
        note: None,
        alternating: false,
        saddle: false,
        samples: S_M1,
        check: m_ge1,
        spec: spec_powerkratio,
        closed: powerkratio,
        derive: Some(powerkratio_derive),
    },
    Family {
        id: "a255528",
        params: &[],
        oeis: &["A255528"],
        description: "∏1/(1+q^k)^k",
        formula: "(−1)^n A ζ(3)^(5/36) exp(3 ζ(3)^(1/3) 2^(−5/3) n^(2/3) − 1/12) / (2^(7/9) √(3π) n^(23/36))",
        note: Some("the sign pattern (−1)^n only holds from n = 22 on"),
        alternating: true,
        saddle: false,
        samples: S_NONE,
        check: check_none,
        spec: spec_a255528,
        closed: a255528,
        derive: Some(a255528_derive),
    },
    Family {
        id: "powerkexpminus",
        params: P_M1,
        oeis: &["A000219", "A023871", "A023872"],
        description: "∏1/(1−q^k)^(k^m)",
        formula: "(Γ(m+2)ζ(m+2))^((1−2ζ(−m))/(2m+4)) exp((m+2)/(m+1) (Γ(m+2)ζ(m+2))^(1/(m+2)) n^((m+1)/(m+2)) + ζ′(−m)) / (√(2π(m+2)) n^((m+3−2ζ(−m))/(2m+4)))",
        note: None,
        alternating: false,
        saddle: false,
        samples: S_M1,
        check: m_ge1,
        spec: spec_powerkexpminus,
        closed: powerkexpminus,
        derive: Some(powerkexpminus_derive),
    },
    Family {
        id: "powerkexpplus",
        params: P_M1,
        oeis: &["A026007", "A027998", "A248882"],
        description: "∏(1+q^k)^(k^m)",
        formula: "2^ζ(−m) ((1−2^(−m−1))Γ(m+2)ζ(m+2))^(1/(2m+4)) exp((m+2)/(m+1) ((1−2^(−m−1))Γ(m+2)ζ(m+2))^(1/(m+2)) n^((m+1)/(m+2))) / (√(2π(m+2)) n^((m+3)/(2m+4)))",
        note: None,
        alternating: false,
        saddle: false,
        samples: S_M1,
        check: m_ge1,
        spec: spec_powerkexpplus,
        closed: powerkexpplus,
        derive: Some(powerkexpplus_derive),
    },
    Family {
        id: "powerkexpratio",
        params: P_M0,
        oeis: &["A015128", "A156616", "A206622", "A206623"],
        description: "∏((1+q^k)/(1−q^k))^(k^m)",
        formula: "((2^(m+2)−1)Γ(m+2)ζ(m+2)/(2^(2m+3) n))^((1−2ζ(−m))/(2m+4)) exp((m+2)/(m+1) ((2^(m+2)−1)Γ(m+2)ζ(m+2)/2^(m+1))^(1/(m+2)) n^((m+1)/(m+2)) + ζ′(−m)) / √((m+2)πn)",
        note: None,
        alternating: false,
        saddle: false,
        samples: S_M0,
        check: m_ge0,
        spec: spec_powerkexpratio,
        closed: powerkexpratio,
        derive: Some(powerkexpratio_derive),
    },
    Family {
        id: "powerkexpratioeven",
        params: P_MEVEN,
        oeis: &["A206622"],
        description: "powerkexpratio at even m with ζ′(−m) in closed form",
        formula: "((2^(m+2)−1)Γ(m+2)ζ(m+2)/(2^(2m+3) n))^(1/(2m+4)) exp((m+2)/(m+1) ((2^(m+2)−1)Γ(m+2)ζ(m+2)/2^(m+1))^(1/(m+2)) n^((m+1)/(m+2)) + (−1)^(m/2) Γ(m+1)ζ(m+1)/(2^(m+1)π^m)) / √((m+2)πn)",
        note: None,
        alternating: false,
        saddle: false,
        samples: S_MEVEN,
        check: m_even,
        spec: spec_powerkexpratio,
        closed: powerkexpratioeven,
        derive: Some(powerkexpratio_derive),
    },
    Family {
        id: "twopole_minus",
        params: P_MC,
        oeis: &["A000219"],
        description: "∏1/(1−q^k)^(mk+c)",
        formula: "(mζ(3))^(m/36+c/6+1/6) exp(m/12 − c²π⁴/(432mζ(3)) + cπ² n^(1/3)/(3 2^(4/3) (mζ(3))^(1/3)) + 3(mζ(3))^(1/3) n^(2/3)/2^(2/3)) / (A^m 2^(c/3+1/3−m/36) √3 π^((c+1)/2) n^(m/36+c/6+2/3))",
        note: None,
        alternating: false,
        saddle: false,
        samples: S_MC,
        check: check_twopole,
        spec: spec_twopole_minus,
        closed: twopole_minus,
        derive: Some(twopole_minus_derive),
    },
    Family {
        id: "twopole_plus",
        params: P_MC,
        oeis: &["A026007"],
        description: "∏(1+q^k)^(mk+c)",
        formula: "(mζ(3))^(1/6) exp(−c²π⁴/(1296mζ(3)) + cπ² n^(1/3)/(2^(5/3) 3^(4/3) (mζ(3))^(1/3)) + 3^(4/3)(mζ(3))^(1/3) n^(2/3)/2^(4/3)) / (2^(m/12+c/2+2/3) 3^(1/3) √π n^(2/3))",
        note: None,
        alternating: false,
        saddle: false,
        samples: S_MC,
        check: check_twopole,
        spec: spec_twopole_plus,
        closed: twopole_plus,
        derive: Some(twopole_plus_derive),
    },
    Family {
        id: "twopole_ratio",
        params: P_MC,
        oeis: &["A156616", "A261452"],
        description: "∏((1+q^k)/(1−q^k))^(mk+c)",
        formula: "(7mζ(3))^(1/6+c/6+m/36) exp(m/12 − c²π⁴/(336mζ(3)) + cπ² n^(1/3)/(2^(5/3)(7mζ(3))^(1/3)) + 3(7mζ(3))^(1/3) n^(2/3)/2^(4/3)) / (A^m 2^(2/3+7c/6+m/9) √3 π^((c+1)/2) n^(2/3+c/6+m/36))",
        note: None,
        alternating: false,
        saddle: false,
        samples: S_MC,
        check: check_twopole,
        spec: spec_twopole_ratio,
        closed: twopole_ratio,
        derive: Some(twopole_ratio_derive),
    },
    Family {
        id: "saddle_minus",
        params: P_M2,
        oeis: &["A034899"],
        description: "∏1/(1−q^k)^(m^k)",
        formula: "m^n exp(2√n − 1/2 + c_m) / (2√π n^(3/4)), c_m = Σ_{j≥2} 1/(j(m^(j−1)−1))",
        note: None,
        alternating: false,
        saddle: true,
        samples: S_M2,
        check: m_ge2,
        spec: spec_saddle_minus,
        closed: saddle_minus,
        derive: None,
    },
    Family {
        id: "saddle_plus",
        params: P_M2,
        oeis: &["A102866"],
        description: "∏(1+q^k)^(m^k)",
        formula: "m^n exp(2√n − 1/2 − c_m) / (2√π n^(3/4)), c_m = Σ_{j≥2} (−1)^j/(j(m^(j−1)−1))",
        note: None,
        alternating: false,
        saddle: true,
        samples: S_M2,
        check: m_ge2,
        spec: spec_saddle_plus,
        closed: saddle_plus,
        derive: None,
    },
    Family {
        id: "saddle_ratio",
        params: P_M2,
        oeis: &["A261519"],
        description: "∏((1+q^k)/(1−q^k))^(m^k)",
        formula: "m^n exp(2√(2n) − 1 + c_m) / (2^(3/4) √π n^(3/4)), c_m = 2 Σ_{j≥1} 1/((2j+1)(m^(2j)−1))",
        note: None,
        alternating: false,
        saddle: true,
        samples: S_M2,
        check: m_ge2,
        spec: spec_saddle_ratio,
        closed: saddle_ratio,
        derive: None,
    },
    Family {
        id: "a100823",
        params: &[],
        oeis: &["A100823"],
        description: "∏(1+q^k)/((1−q^k)(1+q^(3k))(1+q^(5k)))",
        formula: "√37 exp((π/3)√(37n/5)) / (12√5 n)",
        note: None,
        alternating: false,
        saddle: false,
        samples: S_NONE,
        check: check_none,
        spec: spec_a100823,
        closed: a100823,
        derive: Some(a100823_derive),
    },
    Family {
        id: "a147785",
        params: &[],
        oeis: &["A147785"],
        description: "∏(1−q^(15k))/((1−q^(3k))(1−q^(5k)))",
        formula: "√(7/5) exp((π/3)√(14n/5)) / (12n)",
        note: None,
        alternating: false,
        saddle: false,
        samples: S_NONE,
        check: check_none,
        spec: spec_a147785,
        closed: a147785,
        derive: Some(a147785_derive),
    },
];

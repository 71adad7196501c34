//! Meinardus-type asymptotics for ∏_{k≥1} (1 ∓ q^k)^{∓b(k)} from the
//! Dirichlet series D(s) = Σ b(k) k^{−s}.
//!
//! One simple pole at ρ gives the classical single-term result. Poles at 1
//! and 2 give the two-term {1/3, 2/3} form through a series expansion of the
//! saddle point in z = n^{−1/3}.

use std::f64::consts::PI;

use num_rational::Rational64;
use serde::Serialize;
use thiserror::Error;

use crate::asymptotic::{AsymError, AsymptoticForm, Term};
use crate::parser::ExponentFn;
use crate::scalar::Scalar;
use crate::special::{gamma, zeta, zeta_deriv_neg, zeta_neg};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeinardusError {
    #[error("exponent {0} has no meromorphic Dirichlet series")]
    UnsupportedExponent(String),
    #[error("single-pole path needs exactly one pole, found {0}")]
    MultiplePoles(usize),
    #[error("unsupported pole set {0}")]
    UnsupportedPoleSet(String),
    #[error("saddle expansion is singular")]
    SingularSystem,
    #[error(transparent)]
    Form(#[from] AsymError),
}

/// Product type: `Minus` is ∏ 1/(1−q^k)^{b(k)}, `Plus` is ∏ (1+q^k)^{b(k)}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductKind {
    Minus,
    Plus,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Pole {
    pub at: u32,
    pub residue: f64,
}

/// Poles of D(s) with D(0) and D′(0).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DirichletData {
    /// ascending in `at`, zero residues removed
    pub poles: Vec<Pole>,
    pub d0: Scalar,
    pub dd0: f64,
}

impl DirichletData {
    /// b(k) = Σ c_j k^j.
    pub fn from_polynomial(coeffs: &[i64]) -> Self {
        let mut poles = Vec::new();
        let mut d0 = Scalar::int(0);
        let mut dd0 = 0.0;
        for (j, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let j = j as u32;
            poles.push(Pole { at: j + 1, residue: c as f64 });
            d0 = d0 + Scalar::int(c) * Scalar::from(zeta_neg(j));
            dd0 += c as f64 * zeta_deriv_neg(j);
        }
        DirichletData { poles, d0, dd0 }
    }
}

/// Dirichlet data of a product exponent read as a function of k ≥ 1.
pub fn dirichlet_from_exponent(e: &ExponentFn) -> Result<DirichletData, MeinardusError> {
    match *e {
        ExponentFn::Constant(c) => Ok(DirichletData::from_polynomial(&[c as i64])),
        ExponentFn::Affine { m, c } => Ok(DirichletData::from_polynomial(&[c, m as i64])),
        ExponentFn::Power(m) => {
            let mut coeffs = vec![0; m as usize + 1];
            coeffs[m as usize] = 1;
            Ok(DirichletData::from_polynomial(&coeffs))
        }
        ExponentFn::Geometric(m) => Err(MeinardusError::UnsupportedExponent(format!("{m}^k"))),
    }
}

fn g(x: f64) -> f64 {
    gamma(x).expect("positive argument")
}

fn z(s: f64) -> f64 {
    zeta(s).expect("argument above one")
}

fn single_pole(dd: &DirichletData) -> Result<Pole, MeinardusError> {
    match dd.poles.as_slice() {
        [p] if p.residue > 0.0 => Ok(*p),
        [p] => Err(MeinardusError::UnsupportedPoleSet(format!("negative residue {} at {}", p.residue, p.at))),
        ps => Err(MeinardusError::MultiplePoles(ps.len())),
    }
}

/// ∏ 1/(1−q^k)^{b(k)} with one pole of D at ρ.
pub fn single_pole_minus(dd: &DirichletData) -> Result<AsymptoticForm, MeinardusError> {
    let pole = single_pole(dd)?;
    single_pole_form(pole.at, pole.residue, dd.d0, dd.dd0)
}

/// ∏ (1+q^k)^{b(k)} with one pole of D at ρ.
///
/// Same as the minus case with residue A(1 − 2^{−ρ}), D(0) → 0 and
/// D′(0) → D(0) ln 2.
pub fn single_pole_plus(dd: &DirichletData) -> Result<AsymptoticForm, MeinardusError> {
    let pole = single_pole(dd)?;
    let rho = pole.at;
    let residue = pole.residue * (1.0 - 2f64.powi(-(rho as i32)));
    single_pole_form(rho, residue, Scalar::int(0), dd.d0.to_f64() * 2f64.ln())
}

fn single_pole_form(rho: u32, residue: f64, d0: Scalar, dd0: f64) -> Result<AsymptoticForm, MeinardusError> {
    let rf = rho as f64;
    let k = residue * g(rf + 1.0) * z(rf + 1.0);
    let d0f = d0.to_f64();
    let v = dd0.exp() * (2.0 * PI * (rf + 1.0)).powf(-0.5) * k.powf((1.0 - 2.0 * d0f) / (2.0 * (rf + 1.0)));
    let r = (1.0 + 1.0 / rf) * k.powf(1.0 / (rf + 1.0));
    let b = (Scalar::int(rho as i64 + 2) - Scalar::int(2) * d0) * Scalar::ratio(1, 2 * rho as i64 + 2);
    Ok(AsymptoticForm::single(v, Rational64::new(rho as i64, rho as i64 + 1), r, b)?)
}

/// Coefficients ps_0..ps_{r+1} of the saddle x = h^{1/(r+1)} Σ ps_j z^{j+1},
/// z = n^{−1/(r+1)}, together with h.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SaddleExpansion {
    pub ps: Vec<f64>,
    pub h: f64,
    pub order: u32,
}

struct PoleTable {
    order: u32,
    /// residue of D at each i = 1..=order, plus-type adjusted
    residues: Vec<f64>,
    d0: f64,
    /// exponent constant from D′(0)
    dd0: f64,
}

impl PoleTable {
    fn new(dd: &DirichletData, kind: ProductKind) -> Result<Self, MeinardusError> {
        let order = dd.poles.iter().map(|p| p.at).max().unwrap_or(0);
        if order < 2 || dd.poles.iter().any(|p| p.at == 0) {
            return Err(MeinardusError::UnsupportedPoleSet(pole_set(dd)));
        }
        let mut residues = vec![0.0; order as usize + 1];
        for p in &dd.poles {
            let mut a = p.residue;
            if kind == ProductKind::Plus {
                a *= 1.0 - 2f64.powi(-(p.at as i32));
            }
            residues[p.at as usize] = a;
        }
        if !(residues[order as usize] > 0.0) {
            return Err(MeinardusError::UnsupportedPoleSet(pole_set(dd)));
        }
        let (d0, dd0) = match kind {
            ProductKind::Minus => (dd.d0.to_f64(), dd.dd0),
            ProductKind::Plus => (0.0, dd.d0.to_f64() * 2f64.ln()),
        };
        Ok(PoleTable { order, residues, d0, dd0 })
    }

    /// i A_i Γ(i) ζ(i+1); the i = 0 slot is D(0).
    fn weight(&self, i: u32) -> f64 {
        if i == 0 {
            return self.d0;
        }
        let fi = i as f64;
        fi * self.residues[i as usize] * g(fi) * z(fi + 1.0)
    }

    /// A_j Γ(j) ζ(j+1); the j = 0 slot is the D′(0) constant.
    fn exp_weight(&self, j: u32) -> f64 {
        if j == 0 {
            return self.dd0;
        }
        let fj = j as f64;
        self.residues[j as usize] * g(fj) * z(fj + 1.0)
    }
}

fn pole_set(dd: &DirichletData) -> String {
    let ats: Vec<String> = dd.poles.iter().map(|p| p.at.to_string()).collect();
    format!("{{{}}}", ats.join(", "))
}

/// Truncated power series in z, coefficient i is z^i.
///
/// P^α for P(0) = 1.
fn series_pow(p: &[f64], alpha: f64, len: usize) -> Vec<f64> {
    let mut q = vec![0.0; len];
    q[0] = 1.0;
    for k in 1..len {
        let mut acc = 0.0;
        for i in 1..=k.min(p.len() - 1) {
            acc += (alpha * i as f64 - (k - i) as f64) * p[i] * q[k - i];
        }
        q[k] = acc / k as f64;
    }
    q
}

/// Coefficients of h P^{r+1} − Σ_i w_i h^{(r−i)/(r+1)} z^{r−i} P^{r−i}.
fn saddle_residual_series(tab: &PoleTable, h: f64, ps: &[f64], len: usize) -> Vec<f64> {
    let r = tab.order;
    let rf = r as f64;
    let mut out: Vec<f64> = series_pow(ps, rf + 1.0, len).into_iter().map(|c| h * c).collect();
    for i in 0..=r {
        let w = tab.weight(i);
        if w == 0.0 {
            continue;
        }
        let shift = (r - i) as usize;
        let coef = w * h.powf((rf - i as f64) / (rf + 1.0));
        let pk = series_pow(ps, (r - i) as f64, len);
        for t in shift..len {
            out[t] -= coef * pk[t - shift];
        }
    }
    out
}

/// Solves the saddle equation order by order in z.
pub fn solve_saddle_expansion(dd: &DirichletData, kind: ProductKind) -> Result<SaddleExpansion, MeinardusError> {
    let tab = PoleTable::new(dd, kind)?;
    solve_with(&tab)
}

fn solve_with(tab: &PoleTable) -> Result<SaddleExpansion, MeinardusError> {
    let r = tab.order;
    let h = tab.weight(r);
    let lin = h * (r as f64 + 1.0);
    if !(lin.abs() > 0.0) || !lin.is_finite() {
        return Err(MeinardusError::SingularSystem);
    }
    let len = r as usize + 2;
    let mut ps = vec![0.0; len];
    ps[0] = 1.0;
    for t in 1..len {
        // ps_t enters the z^t coefficient only through h (r+1) ps_t
        let rest = saddle_residual_series(tab, h, &ps[..=t], t + 1)[t];
        ps[t] = -rest / lin;
    }
    Ok(SaddleExpansion { ps, h, order: r })
}

impl SaddleExpansion {
    /// z^0..z^{r+1} coefficients of the saddle equation at the solution.
    pub fn residual(&self, dd: &DirichletData, kind: ProductKind) -> Result<Vec<f64>, MeinardusError> {
        let tab = PoleTable::new(dd, kind)?;
        Ok(saddle_residual_series(&tab, self.h, &self.ps, self.ps.len()))
    }
}

/// Two-pole (or degenerate single-pole) product.
///
/// Poles at 1 and 2 give `v exp(s n^{1/3} + r n^{2/3}) / n^b`. A zero
/// residue is dropped before dispatch, so b(k) = mk goes through the
/// single-pole formulas.
pub fn two_pole(dd: &DirichletData, kind: ProductKind) -> Result<AsymptoticForm, MeinardusError> {
    if dd.poles.len() == 1 {
        return match kind {
            ProductKind::Minus => single_pole_minus(dd),
            ProductKind::Plus => single_pole_plus(dd),
        };
    }
    let ats: Vec<u32> = dd.poles.iter().map(|p| p.at).collect();
    if ats != [1, 2] {
        return Err(MeinardusError::UnsupportedPoleSet(pole_set(dd)));
    }
    let tab = PoleTable::new(dd, kind)?;
    let sol = solve_with(&tab)?;
    let r = tab.order;
    let rf = r as f64;
    let h = sol.h;
    let ru = r as usize;

    // exponent as a Laurent series in z, index e + r holds z^e, e = −r..=0
    let mut expo = vec![0.0; ru + 1];
    // n x = h^{1/(r+1)} Σ ps_j z^{j−r}
    let hr = h.powf(1.0 / (rf + 1.0));
    for (j, &p) in sol.ps.iter().enumerate().take(ru + 1) {
        expo[j] += hr * p;
    }
    // Σ_j u_j x^{−j}
    for j in 0..=r {
        let u = tab.exp_weight(j);
        if u == 0.0 {
            continue;
        }
        let q = series_pow(&sol.ps, -(j as f64), ru + 1);
        let c = u * h.powf(-(j as f64) / (rf + 1.0));
        // z^{−j} q(z): z^e picks q_{e+j}
        for e in -(j as i64)..=0 {
            expo[(e + r as i64) as usize] += c * q[(e + j as i64) as usize];
        }
    }

    let a_r = tab.residues[ru];
    let top = a_r * g(rf + 2.0) * z(rf + 1.0);
    let d0 = tab.d0;
    let pref = h.powf(-d0 / (rf + 1.0)) * h.powf((2.0 + rf) / (2.0 * (rf + 1.0))) / (2.0 * PI * top).sqrt();
    let v = pref * expo[ru].exp();

    let d0s = match kind {
        ProductKind::Minus => dd.d0,
        ProductKind::Plus => Scalar::int(0),
    };
    let b = (Scalar::int(r as i64 + 2) - Scalar::int(2) * d0s) * Scalar::ratio(1, 2 * r as i64 + 2);
    let mut terms = Vec::new();
    for k in 1..=ru {
        let s = expo[ru - k];
        terms.push(Term { p: Rational64::new(k as i64, r as i64 + 1), s });
    }
    let form = AsymptoticForm { v, terms, b, sign: crate::asymptotic::SignMode::Plain, base: 1.0 };
    form.validate()?;
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::glaisher;

    fn zeta3() -> f64 {
        z(3.0)
    }

    #[test]
    fn dirichlet_data_of_k() {
        let dd = dirichlet_from_exponent(&ExponentFn::Power(1)).unwrap();
        assert_eq!(dd.poles, vec![Pole { at: 2, residue: 1.0 }]);
        assert_eq!(dd.d0, Scalar::ratio(-1, 12));
        assert!((dd.dd0 - (1.0 / 12.0 - glaisher().ln())).abs() < 1e-14);
        assert!(dirichlet_from_exponent(&ExponentFn::Geometric(2)).is_err());
    }

    #[test]
    fn partitions_from_constant_exponent() {
        let dd = dirichlet_from_exponent(&ExponentFn::Constant(1)).unwrap();
        let f = single_pole_minus(&dd).unwrap();
        let want =
            AsymptoticForm::single(1.0 / (4.0 * 3f64.sqrt()), Rational64::new(1, 2), PI * (2.0f64 / 3.0).sqrt(), 1)
                .unwrap();
        assert!(f.field_distance(&want) < 1e-13, "{f}");
        let f = single_pole_plus(&dd).unwrap();
        let want = AsymptoticForm::single(
            1.0 / (4.0 * 3f64.powf(0.25)),
            Rational64::new(1, 2),
            PI / 3f64.sqrt(),
            Scalar::ratio(3, 4),
        )
        .unwrap();
        assert!(f.field_distance(&want) < 1e-13, "{f}");
    }

    #[test]
    fn plane_partitions_field_by_field() {
        let dd = dirichlet_from_exponent(&ExponentFn::Power(1)).unwrap();
        let f = single_pole_minus(&dd).unwrap();
        let z3 = zeta3();
        let v = z3.powf(7.0 / 36.0) * (1.0f64 / 12.0).exp() / (glaisher() * 2f64.powf(11.0 / 36.0) * (3.0 * PI).sqrt());
        let r = 3.0 * z3.cbrt() / 2f64.powf(2.0 / 3.0);
        assert!((f.v / v - 1.0).abs() < 1e-12);
        assert!((f.coefficient(Rational64::new(2, 3)) - r).abs() < 1e-12);
        assert_eq!(f.b, Scalar::ratio(25, 36));
    }

    #[test]
    fn zero_residue_falls_back_to_single_pole() {
        let dd = dirichlet_from_exponent(&ExponentFn::Affine { m: 3, c: 0 }).unwrap();
        assert_eq!(dd.poles.len(), 1);
        let a = two_pole(&dd, ProductKind::Minus).unwrap();
        let b = single_pole_minus(&dd).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn two_pole_solution_solves_saddle_equation() {
        for (m, c) in [(1u64, 1i64), (2, -1), (3, 4)] {
            let dd = dirichlet_from_exponent(&ExponentFn::Affine { m, c }).unwrap();
            for kind in [ProductKind::Minus, ProductKind::Plus] {
                let sol = solve_saddle_expansion(&dd, kind).unwrap();
                for (i, res) in sol.residual(&dd, kind).unwrap().iter().enumerate() {
                    assert!(res.abs() < 1e-12, "m={m} c={c} {kind:?} z^{i}: {res}");
                }
            }
        }
    }

    #[test]
    fn two_pole_minus_matches_closed_expression() {
        let (m, c) = (2.0, -1.0);
        let dd = dirichlet_from_exponent(&ExponentFn::Affine { m: 2, c: -1 }).unwrap();
        let f = two_pole(&dd, ProductKind::Minus).unwrap();
        let mz = m * zeta3();
        let s = c * PI * PI / (3.0 * 2f64.powf(4.0 / 3.0) * mz.cbrt());
        let r = 3.0 * mz.cbrt() / 2f64.powf(2.0 / 3.0);
        let ln_v = (m / 36.0 + c / 6.0 + 1.0 / 6.0) * mz.ln() + m / 12.0
            - c * c * PI.powi(4) / (432.0 * mz)
            - m * glaisher().ln()
            - (c / 3.0 + 1.0 / 3.0 - m / 36.0) * 2f64.ln()
            - 0.5 * 3f64.ln()
            - (c + 1.0) / 2.0 * PI.ln();
        assert!((f.coefficient(Rational64::new(1, 3)) - s).abs() < 1e-12);
        assert!((f.coefficient(Rational64::new(2, 3)) - r).abs() < 1e-12);
        assert!((f.v.ln() - ln_v).abs() < 1e-12);
        assert_eq!(f.b, Scalar::ratio(2 - 6 + 24, 36));
    }

    #[test]
    fn unsupported_pole_sets() {
        let dd = DirichletData::from_polynomial(&[0, 0, 1]);
        assert!(matches!(
            two_pole(&DirichletData::from_polynomial(&[1, 1, 1]), ProductKind::Minus),
            Err(MeinardusError::UnsupportedPoleSet(_))
        ));
        assert!(single_pole_minus(&dd).is_ok());
        assert!(matches!(
            single_pole_minus(&DirichletData::from_polynomial(&[1, 1])),
            Err(MeinardusError::MultiplePoles(2))
        ));
    }
}

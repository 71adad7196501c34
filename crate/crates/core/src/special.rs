//! Real special functions used by the closed forms: Γ, ζ and ζ′ at real
//! arguments, exact ζ at non-positive integers, the Glaisher–Kinkelin
//! constant and the constants of the m^k product families.
//!
//! Everything runs in `f64`; the tolerances downstream are all ≥ 1e-12.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_rational::Ratio;
use num_traits::{One, Zero};
use thiserror::Error;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecialError {
    #[error("{function} is not defined for argument {arg}")]
    Domain { function: &'static str, arg: f64 },
}

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) for x > 0.
pub fn gamma(x: f64) -> Result<f64, SpecialError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(SpecialError::Domain { function: "gamma", arg: x });
    }
    // Integers are exact through the factorial; Lanczos carries ~1e-15
    // relative error which is fine everywhere else.
    if x.fract() == 0.0 && x <= 171.0 {
        let mut acc = 1.0;
        let mut k = 2.0;
        while k < x {
            acc *= k;
            k += 1.0;
        }
        return Ok(acc);
    }
    if x < 0.5 {
        // reflection keeps the Lanczos sum in its accurate range
        let g = lanczos(1.0 - x);
        return Ok(PI / ((PI * x).sin() * g));
    }
    Ok(lanczos(x))
}

fn lanczos(x: f64) -> f64 {
    let x = x - 1.0;
    let mut sum = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        sum += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * sum
}

/// ψ(n) for a positive integer n, via harmonic numbers.
pub fn digamma_int(n: u32) -> f64 {
    assert!(n >= 1, "digamma_int needs n >= 1");
    let h: f64 = (1..n).map(|k| 1.0 / k as f64).sum();
    h - EULER_GAMMA
}

/// Exact Bernoulli numbers B_0..=B_n with the B_1 = -1/2 convention.
pub fn bernoulli(n: usize) -> Vec<Ratio<i128>> {
    // Akiyama–Tanigawa would give B_1 = +1/2; the classical recurrence
    // Σ_{k<m+1} C(m+1,k) B_k = 0 is used instead.
    let mut b: Vec<Ratio<i128>> = Vec::with_capacity(n + 1);
    b.push(Ratio::one());
    for m in 1..=n {
        let mut acc = Ratio::<i128>::zero();
        let mut binom: i128 = 1; // C(m+1, k)
        for (k, bk) in b.iter().enumerate() {
            acc += *bk * Ratio::from_integer(binom);
            binom = binom * (m as i128 + 1 - k as i128) / (k as i128 + 1);
        }
        b.push(-acc / Ratio::from_integer(m as i128 + 1));
    }
    b
}

/// ζ(−m) as an exact rational.
pub fn zeta_neg(m: u32) -> Ratio<i64> {
    let b = bernoulli(m as usize + 1);
    let bm = b[m as usize + 1];
    // ζ(−m) = (−1)^m B_{m+1}/(m+1)
    let mut v = bm / Ratio::from_integer(m as i128 + 1);
    if m % 2 == 1 {
        v = -v;
    }
    Ratio::new(*v.numer() as i64, *v.denom() as i64)
}

// Euler–Maclaurin cut: direct sum over k < EM_N, then 12 correction terms.
const EM_N: usize = 12;
const EM_TERMS: usize = 12;

fn em_bernoulli() -> &'static [f64] {
    static CELL: OnceLock<Vec<f64>> = OnceLock::new();
    CELL.get_or_init(|| {
        let b = bernoulli(2 * EM_TERMS);
        let mut out = Vec::with_capacity(EM_TERMS);
        let mut fact = 1.0f64;
        for j in 1..=EM_TERMS {
            fact *= (2 * j - 1) as f64 * (2 * j) as f64;
            let bj = b[2 * j];
            out.push(*bj.numer() as f64 / *bj.denom() as f64 / fact);
        }
        out
    })
}

/// ζ(s) for real s > 1.
pub fn zeta(s: f64) -> Result<f64, SpecialError> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(SpecialError::Domain { function: "zeta", arg: s });
    }
    let n = EM_N as f64;
    let mut sum: f64 = (1..EM_N).rev().map(|k| (k as f64).powf(-s)).sum();
    sum += n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s);
    // rising factorial s(s+1)…(s+2j−2) times N^{−s−2j+1}
    let mut rising = s;
    let mut npow = n.powf(-s - 1.0);
    for (j, c) in em_bernoulli().iter().enumerate() {
        sum += c * rising * npow;
        let j = j as f64 + 1.0;
        rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
        npow /= n * n;
    }
    Ok(sum)
}

/// ζ′(s) for real s > 1, differentiating the Euler–Maclaurin form termwise.
pub fn zeta_deriv(s: f64) -> Result<f64, SpecialError> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(SpecialError::Domain { function: "zeta_deriv", arg: s });
    }
    let n = EM_N as f64;
    let ln_n = n.ln();
    let mut sum: f64 = (2..EM_N)
        .rev()
        .map(|k| {
            let k = k as f64;
            -k.ln() * k.powf(-s)
        })
        .sum();
    let tail = n.powf(1.0 - s);
    sum += tail * (-ln_n / (s - 1.0) - 1.0 / ((s - 1.0) * (s - 1.0)));
    sum += -0.5 * ln_n * n.powf(-s);
    let mut rising = s;
    let mut rising_log_deriv = 1.0 / s;
    let mut npow = n.powf(-s - 1.0);
    for (j, c) in em_bernoulli().iter().enumerate() {
        sum += c * rising * npow * (rising_log_deriv - ln_n);
        let j = j as f64 + 1.0;
        let a = s + 2.0 * j - 1.0;
        let b = s + 2.0 * j;
        rising *= a * b;
        rising_log_deriv += 1.0 / a + 1.0 / b;
        npow /= n * n;
    }
    Ok(sum)
}

/// ζ′(−m) for integer m ≥ 0.
pub fn zeta_deriv_neg(m: u32) -> f64 {
    if m == 0 {
        return -0.5 * (2.0 * PI).ln();
    }
    let mf = m as f64;
    if m.is_multiple_of(2) {
        // ζ′(−m) = (−1)^{m/2} m! ζ(m+1) / (2 (2π)^m)
        let sign = if (m / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
        let fact = gamma(mf + 1.0).expect("positive argument");
        let z = zeta(mf + 1.0).expect("argument above one");
        return sign * fact * z / (2.0 * (2.0 * PI).powi(m as i32));
    }
    // odd m: log-derivative of the functional equation, the cotangent term
    // vanishes at odd negative integers
    let zm = zeta_neg(m);
    let zm = *zm.numer() as f64 / *zm.denom() as f64;
    let s1 = mf + 1.0;
    let ratio = zeta_deriv(s1).expect("argument above one") / zeta(s1).expect("argument above one");
    zm * ((2.0 * PI).ln() - digamma_int(m + 1) - ratio)
}

/// The Glaisher–Kinkelin constant A, from ln A = 1/12 − ζ′(−1).
pub fn glaisher() -> f64 {
    (1.0 / 12.0 - zeta_deriv_neg(1)).exp()
}

/// Which m^k product family a saddle constant belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SaddleVariant {
    /// ∏ 1/(1−q^k)^{m^k}
    Minus,
    /// ∏ (1+q^k)^{m^k}
    Plus,
    /// ∏ ((1+q^k)/(1−q^k))^{m^k}
    Ratio,
}

/// Series constant of the m^k families, summed to the first index whose
/// term drops below 1e-18 (or `max_terms`, whichever comes first).
pub fn saddle_constant(m: u32, variant: SaddleVariant) -> Result<f64, SpecialError> {
    saddle_constant_with_cutoff(m, variant, 400)
}

/// Same as [`saddle_constant`] with an explicit cap on the number of terms.
pub fn saddle_constant_with_cutoff(m: u32, variant: SaddleVariant, max_terms: usize) -> Result<f64, SpecialError> {
    if m < 2 {
        return Err(SpecialError::Domain { function: "saddle_constant", arg: m as f64 });
    }
    let mf = m as f64;
    let mut terms = Vec::new();
    match variant {
        SaddleVariant::Minus | SaddleVariant::Plus => {
            for j in 2..(2 + max_terms) {
                let denom = j as f64 * (mf.powi(j as i32 - 1) - 1.0);
                let mut t = 1.0 / denom;
                if variant == SaddleVariant::Plus && j % 2 == 1 {
                    t = -t;
                }
                terms.push(t);
                if t.abs() < 1e-18 || !denom.is_finite() {
                    break;
                }
            }
        }
        SaddleVariant::Ratio => {
            for j in 1..(1 + max_terms) {
                let denom = (2 * j + 1) as f64 * (mf.powi(2 * j as i32) - 1.0);
                let t = 2.0 / denom;
                terms.push(t);
                if t.abs() < 1e-18 || !denom.is_finite() {
                    break;
                }
            }
        }
    }
    // smallest terms first
    Ok(terms.iter().rev().sum())
}

/// Constants shared by the closed forms, computed once.
#[derive(Debug, Clone)]
pub struct ConstantTable {
    pub pi: f64,
    pub zeta3: f64,
    pub glaisher: f64,
    /// ζ(s) for s = 2..=14, index s − 2.
    pub zeta_int: Vec<f64>,
    /// ζ′(−m) for m = 0..=12.
    pub zeta_deriv_neg: Vec<f64>,
}

impl ConstantTable {
    fn build() -> Self {
        let zeta_int: Vec<f64> = (2..=14).map(|s| zeta(s as f64).expect("s > 1")).collect();
        Self {
            pi: PI,
            zeta3: zeta_int[1],
            glaisher: glaisher(),
            zeta_int,
            zeta_deriv_neg: (0..=12).map(zeta_deriv_neg).collect(),
        }
    }

    /// The process-wide table.
    pub fn get() -> &'static ConstantTable {
        static TABLE: OnceLock<ConstantTable> = OnceLock::new();
        TABLE.get_or_init(Self::build)
    }

    pub fn zeta(&self, s: u32) -> f64 {
        match s {
            2..=14 => self.zeta_int[s as usize - 2],
            _ => zeta(s as f64).expect("integer argument above one"),
        }
    }

    pub fn zeta_deriv_neg(&self, m: u32) -> f64 {
        self.zeta_deriv_neg.get(m as usize).copied().unwrap_or_else(|| zeta_deriv_neg(m))
    }
}

/// ζ(−m) as `f64`.
pub fn zeta_neg_f64(m: u32) -> f64 {
    let r = zeta_neg(m);
    *r.numer() as f64 / *r.denom() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn gamma_known_values() {
        assert_eq!(gamma(1.0).unwrap(), 1.0);
        assert_eq!(gamma(3.0).unwrap(), 2.0);
        assert!(close(gamma(0.5).unwrap(), PI.sqrt(), 1e-14));
        assert!(close(gamma(1.5).unwrap(), PI.sqrt() / 2.0, 1e-14));
        // Γ(1/3), Γ(1/4) reference values
        assert!(close(gamma(1.0 / 3.0).unwrap(), 2.678_938_534_707_747_6, 1e-13));
        assert!(close(gamma(0.25).unwrap(), 3.625_609_908_221_908, 1e-13));
        assert!(close(gamma(2.0 / 3.0).unwrap(), 1.354_117_939_426_400_4, 1e-13));
    }

    #[test]
    fn gamma_matches_factorials() {
        let mut fact = 1.0f64;
        for n in 1..=20u32 {
            fact *= n as f64;
            let g = gamma(n as f64 + 1.0).unwrap();
            assert!(close(g, fact, 1e-15), "n = {n}");
        }
    }

    #[test]
    fn gamma_rejects_nonpositive() {
        assert!(gamma(0.0).is_err());
        assert!(gamma(-1.5).is_err());
    }

    #[test]
    fn bernoulli_numbers() {
        let b = bernoulli(12);
        assert_eq!(b[1], Ratio::new(-1, 2));
        assert_eq!(b[2], Ratio::new(1, 6));
        assert_eq!(b[4], Ratio::new(-1, 30));
        assert_eq!(b[12], Ratio::new(-691, 2730));
        assert_eq!(b[7], Ratio::zero());
    }

    #[test]
    fn zeta_negative_integers() {
        assert_eq!(zeta_neg(0), Ratio::new(-1, 2));
        assert_eq!(zeta_neg(1), Ratio::new(-1, 12));
        assert_eq!(zeta_neg(3), Ratio::new(1, 120));
        assert_eq!(zeta_neg(11), Ratio::new(691, 32760));
        for k in 1..=6 {
            assert_eq!(zeta_neg(2 * k), Ratio::zero(), "trivial zero at -{}", 2 * k);
        }
    }

    /// Direct partial sum plus the integral and midpoint tail; independent
    /// of the Euler–Maclaurin constants used above.
    fn zeta_oracle(s: f64) -> f64 {
        let n = 200_000usize;
        let direct: f64 = (1..n).rev().map(|k| (k as f64).powf(-s)).sum();
        let nf = n as f64;
        direct + nf.powf(1.0 - s) / (s - 1.0) + 0.5 * nf.powf(-s) + s / 12.0 * nf.powf(-s - 1.0)
    }

    #[test]
    fn zeta_positive_arguments() {
        assert!(close(zeta(2.0).unwrap(), PI * PI / 6.0, 1e-15));
        assert!(close(zeta(4.0).unwrap(), PI.powi(4) / 90.0, 1e-15));
        assert!(close(zeta(3.0).unwrap(), 1.202_056_903_159_594_3, 1e-15));
        for s in [1.5, 2.5, 3.0, 5.0, 7.25] {
            assert!(close(zeta(s).unwrap(), zeta_oracle(s), 1e-12), "s = {s}");
        }
        assert!(zeta(1.0).is_err());
    }

    #[test]
    fn zeta_deriv_against_finite_differences() {
        for s in [2.0, 3.0, 4.0, 6.5] {
            let h = 1e-5;
            let fd = (zeta(s + h).unwrap() - zeta(s - h).unwrap()) / (2.0 * h);
            assert!(close(zeta_deriv(s).unwrap(), fd, 1e-9), "s = {s}");
        }
        // ζ′(2) = −0.93754825431584375370...
        assert!(close(zeta_deriv(2.0).unwrap(), -0.937_548_254_315_843_8, 1e-14));
    }

    #[test]
    fn zeta_deriv_at_negative_integers() {
        assert!(close(zeta_deriv_neg(0), -0.918_938_533_204_672_7, 1e-15));
        assert!(close(zeta_deriv_neg(1), -0.165_421_143_700_450_93, 1e-13));
        // ζ′(−2) = −ζ(3)/(4π²)
        assert!(close(zeta_deriv_neg(2), -1.202_056_903_159_594_3 / (4.0 * PI * PI), 1e-14));
        // ζ′(−3) = 0.00537857635777430114...
        assert!(close(zeta_deriv_neg(3), 0.005_378_576_357_774_301, 1e-12));
    }

    #[test]
    fn glaisher_identity() {
        let a = glaisher();
        assert!(close(a, 1.282_427_129_100_622_6, 1e-14));
        assert!((a.ln() + zeta_deriv_neg(1) - 1.0 / 12.0).abs() < 1e-13);
    }

    #[test]
    fn saddle_constants() {
        let minus = saddle_constant(2, SaddleVariant::Minus).unwrap();
        assert!((minus - 0.669_59).abs() < 5e-5, "{minus}");
        let ratio = saddle_constant(2, SaddleVariant::Ratio).unwrap();
        // 2 Σ 1/((2j+1)(4^j − 1)) summed by hand to six terms
        assert!((ratio - 0.254_51).abs() < 5e-5, "{ratio}");
        let plus_big = saddle_constant(1_000_000, SaddleVariant::Plus).unwrap();
        assert!(plus_big.abs() < 1e-6);
        assert!(saddle_constant(1, SaddleVariant::Minus).is_err());
    }

    #[test]
    fn saddle_constants_stable_under_cutoff_doubling() {
        for m in 2..=6 {
            for v in [SaddleVariant::Minus, SaddleVariant::Plus, SaddleVariant::Ratio] {
                let a = saddle_constant_with_cutoff(m, v, 60).unwrap();
                let b = saddle_constant_with_cutoff(m, v, 120).unwrap();
                assert!((a - b).abs() < 1e-14, "m = {m}, {v:?}");
            }
        }
    }

    #[test]
    fn constant_table_is_consistent() {
        let t = ConstantTable::get();
        assert_eq!(t.zeta3, t.zeta(3));
        assert!((t.glaisher.ln() - (1.0 / 12.0 - t.zeta_deriv_neg(1))).abs() < 1e-15);
        for m in 0..=12 {
            assert_eq!(t.zeta_deriv_neg(m), zeta_deriv_neg(m));
        }
    }
}

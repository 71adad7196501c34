use num_bigint::BigInt;
use proptest::prelude::*;

use qasym::catalog::{instantiate, list_families};
use qasym::parser::parse;
use qasym::series::{all_nonnegative, cauchy_product, expand, expand_signed};

/// (in numerator, factor text)
fn factor() -> impl Strategy<Value = (bool, String)> {
    let exp = prop_oneof![
        (1i64..4).prop_map(|m| m.to_string()),
        (1i64..3, 0i64..3).prop_map(|(m, c)| format!("({m}k+{c})")),
        (1i64..3).prop_map(|m| format!("k^{m}")),
    ];
    (any::<bool>(), any::<bool>(), 1i64..4, 0i64..3, exp).prop_map(|(plus, numer, s, t, e)| {
        let sign = if plus { '+' } else { '-' };
        (numer, format!("(1{sign}q^({s}k+{t}))^{e}"))
    })
}

fn product(fs: &[&(bool, String)]) -> String {
    let side = |n: bool| fs.iter().filter(|f| f.0 == n).map(|f| f.1.as_str()).collect::<Vec<_>>().join("*");
    let (num, den) = (side(true), side(false));
    let body = match (num.is_empty(), den.is_empty()) {
        (_, true) => num,
        (true, false) => format!("1/{den}"),
        (false, false) => format!("{num}/{den}"),
    };
    format!("prod(k>=1, {body})")
}

fn seq(vals: &[i64]) -> Vec<BigInt> {
    vals.iter().map(|&v| BigInt::from(v)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn expansion_is_multiplicative(a in factor(), b in factor()) {
        let pa = expand(&parse(&product(&[&a])).unwrap(), 40).unwrap();
        let pb = expand(&parse(&product(&[&b])).unwrap(), 40).unwrap();
        let pab = expand(&parse(&product(&[&a, &b])).unwrap(), 40).unwrap();
        prop_assert_eq!(pab.coeffs, cauchy_product(&pa, &pb).coeffs);
    }

    #[test]
    fn minus_denominators_are_nonnegative(s in 1i64..4, t in 0i64..3, m in 1i64..4) {
        let p = expand(&parse(&format!("prod(k>=1, 1/(1-q^({s}k+{t}))^k^{m})")).unwrap(), 60).unwrap();
        prop_assert!(all_nonnegative(&p));
    }

    #[test]
    fn prefix_is_stable_in_order(a in factor(), n in 5usize..40) {
        let spec = parse(&product(&[&a])).unwrap();
        let short = expand(&spec, n).unwrap();
        let long = expand(&spec, 60).unwrap();
        prop_assert_eq!(&short.coeffs[..], &long.coeffs[..=n]);
    }
}

#[test]
fn known_sequences() {
    let cases: &[(&str, &[i64])] = &[
        ("prod(k>=1, 1/(1-q^k))", &[1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]),
        ("prod(k>=1, (1+q^k))", &[1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10]),
        ("prod(k>=1, (1+q^k)/(1-q^k))", &[1, 2, 4, 8, 14, 24, 40, 64, 100, 154, 232]),
        ("prod(k>=1, 1/(1-q^k)^k)", &[1, 1, 3, 6, 13, 24, 48, 86, 160, 282, 500]),
        ("prod(k>=1, (1+q^k)^k)", &[1, 1, 2, 5, 8, 16, 28, 49, 83, 142, 235]),
        ("prod(k>=1, 1/(1+q^k))", &[1, -1, 0, -1, 1, -1, 1, -1, 2, -2, 2]),
    ];
    for (text, want) in cases {
        let p = expand(&parse(text).unwrap(), want.len() - 1).unwrap();
        assert_eq!(p.coeffs, seq(want), "{text}");
    }
}

#[test]
fn signed_expansion_agrees() {
    for text in ["prod(k>=1, 1/(1+q^k)^k)", "prod(k>=1, (1-q^(2k-1))/(1+q^(2k)))", "prod(k>=1, 1/(1-q^k))"] {
        let spec = parse(text).unwrap();
        assert_eq!(expand(&spec, 80).unwrap().coeffs, expand_signed(&spec, 80).unwrap().coeffs, "{text}");
    }
}

#[test]
fn non_alternating_families_are_nonnegative() {
    for fam in list_families().iter().filter(|f| !f.alternating) {
        for s in fam.samples {
            let p = expand(&fam.product(s).unwrap(), 200).unwrap();
            assert!(all_nonnegative(&p), "{} {s:?}", fam.id);
        }
    }
}

#[test]
fn every_family_verifies_at_small_n() {
    for fam in list_families() {
        let inst = instantiate(fam.id, fam.samples[0]).unwrap();
        qasym::verify::verify(fam.id, &inst.spec, &inst.form, &[300, 301])
            .unwrap_or_else(|e| panic!("{}: {e}", fam.id));
    }
}

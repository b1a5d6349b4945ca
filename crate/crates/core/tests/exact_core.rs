//! Substrate checks: rational arithmetic, polynomials, truncated series,
//! Bernoulli data, and combinatorial helpers.

use projzeta_core::bernoulli::{bernoulli_number, bernoulli_polynomial, hurwitz_zeta_neg_int};
use projzeta_core::combinatorics::{
    binomial, factorial, harmonic, partial_fraction_g, rational_binomial, rising_binomial_coeffs,
};
use projzeta_core::polynomial::QPolynomial;
use projzeta_core::series::QPowerSeries;
use projzeta_core::{Int, Rational};
use proptest::prelude::*;
use std::str::FromStr;

fn r(num: i64, den: i64) -> Rational {
    Rational::new(Int::from(num), Int::from(den))
}

#[test]
fn rational_normalization_and_ops() {
    assert_eq!(r(2, 4), r(1, 2));
    assert_eq!(r(-3, -6), r(1, 2));
    assert_eq!(r(3, -6), r(-1, 2));
    assert_eq!(&r(1, 6) + &r(1, 3), r(1, 2));
    assert_eq!(&r(1, 2) - &r(2, 3), r(-1, 6));
    assert_eq!(&r(2, 3) * &r(9, 4), r(3, 2));
    assert_eq!(&r(2, 3) / &r(4, 3), r(1, 2));
    assert_eq!(r(-5, 7).abs(), r(5, 7));
    assert_eq!(r(-5, 7).recip(), r(-7, 5));
    assert_eq!(r(2, 3).powi(3), r(8, 27));
    assert_eq!(r(2, 3).powi(-2), r(9, 4));
    assert_eq!(r(7, 1).to_int(), Some(Int::from(7)));
    assert_eq!(r(7, 2).to_int(), None);
    assert!(r(0, 5).is_zero());
    assert!(r(9, 3).is_integer());
}

#[test]
fn rational_parse_and_compact_string() {
    assert_eq!(Rational::from_str("3/4").unwrap(), r(3, 4));
    assert_eq!(Rational::from_str("-12").unwrap(), r(-12, 1));
    assert_eq!(r(-3, 4).to_compact_string(), "-3/4");
    assert_eq!(r(5, 1).to_compact_string(), "5");
    assert!(Rational::from_str("1/0").is_err());
    assert!(Rational::from_str("x").is_err());
}

#[test]
fn rational_serde_struct_and_string_forms() {
    let v = r(-22, 7);
    let js = serde_json::to_string(&v).unwrap();
    assert_eq!(js, r#"{"num":"-22","den":"7"}"#);
    let back: Rational = serde_json::from_str(&js).unwrap();
    assert_eq!(back, v);
    let from_string: Rational = serde_json::from_str(r#""-22/7""#).unwrap();
    assert_eq!(from_string, v);
}

#[test]
fn polynomial_eval_shift_reflect() {
    // p(x) = (x - 1)(x + 2) = x^2 + x - 2
    let p = QPolynomial::from_roots(&[r(1, 1), r(-2, 1)], Rational::one());
    assert_eq!(p.coeffs(), &[r(-2, 1), r(1, 1), r(1, 1)]);
    assert_eq!(p.eval(&r(3, 1)), r(10, 1));
    assert_eq!(p.eval_int(3), r(10, 1));
    // shift: q(x) = p(x + c)
    let c = r(5, 3);
    let q = p.shift(&c);
    for x in -3..4 {
        let xr = Rational::from_int(x);
        assert_eq!(q.eval(&xr), p.eval(&(&xr + &c)));
    }
    // reflect: q(x) = p(-x)
    let q = p.reflect();
    for x in -3..4 {
        assert_eq!(q.eval_int(x), p.eval_int(-x));
    }
    let d = p.derivative();
    assert_eq!(d.coeffs(), &[r(1, 1), r(2, 1)]);
}

#[test]
fn polynomial_interpolation_roundtrip() {
    let p = QPolynomial::new(vec![r(1, 2), r(-3, 1), r(0, 1), r(7, 5)]);
    let points: Vec<(Rational, Rational)> = (-2..2)
        .map(|x| (Rational::from_int(x), p.eval_int(x)))
        .collect();
    let q = QPolynomial::interpolate(&points).unwrap();
    assert_eq!(p, q);
    let dup = [(r(1, 1), r(0, 1)), (r(1, 1), r(2, 1))];
    assert!(QPolynomial::interpolate(&dup).is_err());
}

#[test]
fn series_truncation_discipline() {
    let s = QPowerSeries::new(vec![r(1, 1), r(2, 1), r(3, 1)], 2);
    assert_eq!(*s.coefficient(2), r(3, 1));
    assert_eq!(s.try_coefficient(3), None);
    let shifted = s.shift_up(2);
    assert_eq!(*shifted.coefficient(2), r(1, 1));
    assert_eq!(shifted.order(), 4);
    // 1/(1-z)^2 = 1 + 2z + 3z^2 + ...
    let inv = QPowerSeries::inv_one_minus_z_pow(2, 5);
    assert_eq!(*inv.coefficient(4), r(5, 1));
}

#[test]
#[should_panic]
fn series_access_past_order_panics() {
    let s = QPowerSeries::new(vec![r(1, 1)], 0);
    let _ = s.coefficient(1);
}

#[test]
fn bernoulli_values() {
    assert_eq!(bernoulli_number(0), r(1, 1));
    assert_eq!(bernoulli_number(1), r(-1, 2));
    assert_eq!(bernoulli_number(2), r(1, 6));
    assert_eq!(bernoulli_number(3), r(0, 1));
    assert_eq!(bernoulli_number(4), r(-1, 30));
    assert_eq!(bernoulli_number(12), r(-691, 2730));
    // B_3(x) = x^3 - (3/2)x^2 + (1/2)x
    let b3 = bernoulli_polynomial(3);
    assert_eq!(b3.coeffs(), &[r(0, 1), r(1, 2), r(-3, 2), r(1, 1)]);
    // B_l(x+1) - B_l(x) = l x^{l-1}
    for l in 1..8u32 {
        let bl = bernoulli_polynomial(l);
        let diff = bl.shift(&Rational::one()) - bl;
        let expect = QPolynomial::monomial(Rational::from_int(l as i64), (l - 1) as usize);
        assert_eq!(diff, expect);
    }
}

#[test]
fn hurwitz_negative_integer_values() {
    // zeta(-l, alpha) = -B_{l+1}(alpha)/(l+1)
    assert_eq!(hurwitz_zeta_neg_int(0, &r(1, 1)), r(-1, 2));
    assert_eq!(hurwitz_zeta_neg_int(1, &r(1, 1)), r(-1, 12));
    assert_eq!(hurwitz_zeta_neg_int(0, &r(2, 1)), r(-3, 2));
    assert_eq!(hurwitz_zeta_neg_int(1, &r(2, 1)), r(-13, 12));
    // shifting alpha by 1 removes the first term: zeta(-l, a) - zeta(-l, a+1) = a^l
    for l in 0..6u32 {
        for a in 1..5i64 {
            let ar = Rational::from_int(a);
            let lhs = &hurwitz_zeta_neg_int(l, &ar) - &hurwitz_zeta_neg_int(l, &(&ar + &r(1, 1)));
            assert_eq!(lhs, ar.powi(l as i32));
        }
    }
}

#[test]
fn combinatorial_helpers() {
    assert_eq!(factorial(0), Int::from(1));
    assert_eq!(factorial(6), Int::from(720));
    assert_eq!(binomial(7, 3), Int::from(35));
    assert_eq!(binomial(3, 7), Int::from(0));
    assert_eq!(harmonic(4), r(25, 12));
    // binom(-s, 2) at s = 1/2: (-1/2)(-3/2)/2 = 3/8
    assert_eq!(rational_binomial(&r(-1, 2), 2), r(3, 8));
    assert_eq!(rational_binomial(&r(5, 1), 2), r(10, 1));
}

#[test]
fn rising_binomial_coefficient_table() {
    // binom(z+2, 2) = (z+1)(z+2)/2 = 1 + (3/2)z + (1/2)z^2
    assert_eq!(rising_binomial_coeffs(2), vec![r(1, 1), r(3, 2), r(1, 2)]);
    assert_eq!(rising_binomial_coeffs(0), vec![r(1, 1)]);
    for d in 1..7u32 {
        let b = rising_binomial_coeffs(d);
        assert_eq!(b.len(), d as usize + 1);
        assert_eq!(b[0], r(1, 1));
        assert_eq!(
            b[d as usize],
            Rational::from_big(factorial(d as u64)).recip()
        );
        // evaluating the polynomial at z = 1 gives binom(1+d, d) = d+1
        let at_one: Rational = b.iter().fold(Rational::zero(), |acc, c| &acc + c);
        assert_eq!(at_one, Rational::from_int(d as i64 + 1));
    }
}

#[test]
fn partial_fraction_weights() {
    // a_k = binom(2n+1-k, n), k = 1..=n+1
    assert_eq!(partial_fraction_g(1), vec![r(2, 1), r(1, 1)]);
    assert_eq!(partial_fraction_g(2), vec![r(6, 1), r(3, 1), r(1, 1)]);
    // defining identity: 1/(x(1-x))^{n+1} = G(1/x) + G(1/(1-x))
    for n in 1..5u32 {
        let g = partial_fraction_g(n);
        let x = r(3, 7);
        let one_minus = &r(1, 1) - &x;
        let mut rhs = Rational::zero();
        for (idx, a) in g.iter().enumerate() {
            let k = (idx + 1) as i32;
            rhs = &rhs + &(a * &(x.recip().powi(k) + one_minus.recip().powi(k)));
        }
        let lhs = (&x * &one_minus).recip().powi(n as i32 + 1);
        assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_laws(
        an in -200i64..200, ad in 1i64..40,
        bn in -200i64..200, bd in 1i64..40,
        cn in -200i64..200, cd in 1i64..40,
    ) {
        let a = r(an, ad); let b = r(bn, bd); let c = r(cn, cd);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip(), Rational::one());
        }
    }

    #[test]
    fn rational_serde_roundtrip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let v = r(n, d);
        let js = serde_json::to_string(&v).unwrap();
        let back: Rational = serde_json::from_str(&js).unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn polynomial_ring_laws(
        a in prop::collection::vec(-50i64..50, 0..5),
        b in prop::collection::vec(-50i64..50, 0..5),
        x in -6i64..6,
    ) {
        let pa = QPolynomial::new(a.iter().map(|&v| Rational::from_int(v)).collect());
        let pb = QPolynomial::new(b.iter().map(|&v| Rational::from_int(v)).collect());
        let sum = &pa + &pb;
        let prod = &pa * &pb;
        prop_assert_eq!(sum.eval_int(x), &pa.eval_int(x) + &pb.eval_int(x));
        prop_assert_eq!(prod.eval_int(x), &pa.eval_int(x) * &pb.eval_int(x));
        // shift then unshift is the identity
        let c = r(3, 2);
        prop_assert_eq!(pa.shift(&c).shift(&-&c), pa);
    }

    #[test]
    fn interpolation_recovers_low_degree(coeffs in prop::collection::vec(-30i64..30, 1..5)) {
        let p = QPolynomial::new(coeffs.iter().map(|&v| Rational::from_int(v)).collect());
        let pts: Vec<(Rational, Rational)> = (0..coeffs.len() as i64)
            .map(|x| (Rational::from_int(x), p.eval_int(x)))
            .collect();
        prop_assert_eq!(QPolynomial::interpolate(&pts).unwrap(), p);
    }
}

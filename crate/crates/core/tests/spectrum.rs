//! Spectral data: eigenvalues, normalized weights, factorial multiplicities,
//! and the relation between them, including the weight normalization gap.

use projzeta_core::combinatorics::factorial;
use projzeta_core::spectrum::{
    alpha, alpha_poly, eigenvalue, multiplicity, zeta_components, SpectrumParams, StartIndex,
};
use projzeta_core::{DomainError, Int, Rational};
use proptest::prelude::*;

fn r(num: i64, den: i64) -> Rational {
    Rational::new(Int::from(num), Int::from(den))
}

fn params(n: u32, q: u32) -> SpectrumParams {
    SpectrumParams::new(n, q).unwrap()
}

#[test]
fn parameter_validation() {
    assert!(SpectrumParams::new(1, 1).is_ok());
    assert!(SpectrumParams::new(4, 4).is_ok());
    assert!(matches!(
        SpectrumParams::new(2, 0),
        Err(DomainError::InvalidForm { .. })
    ));
    assert!(matches!(
        SpectrumParams::new(2, 3),
        Err(DomainError::InvalidForm { .. })
    ));
    assert!(SpectrumParams::new(0, 0).is_err());
    let p = params(3, 2);
    assert_eq!((p.n(), p.q(), p.a()), (3, 2, 2));
    assert_eq!(p.start_k(), 2);
    let p = SpectrumParams::with_start(3, 2, StartIndex::AfterQ).unwrap();
    assert_eq!(p.start_k(), 3);
}

#[test]
fn eigenvalue_ladder() {
    let p = params(2, 1);
    assert_eq!(eigenvalue(&p, 1).unwrap(), 3); // k(k+2) at k=1
    assert_eq!(eigenvalue(&p, 5).unwrap(), 35);
    assert!(matches!(
        eigenvalue(&p, 0),
        Err(DomainError::IndexBelowStart { .. })
    ));
    assert!(matches!(
        eigenvalue(&p, i64::MAX / 2),
        Err(DomainError::EigenvalueOverflow { .. })
    ));
    // strictly increasing in k
    let mut prev = 0;
    for k in 1..50 {
        let lam = eigenvalue(&p, k).unwrap();
        assert!(lam > prev);
        prev = lam;
    }
}

#[test]
fn weight_pinned_families() {
    // alpha_{1,1}(k) = 1
    let p11 = params(1, 1);
    for k in 1..8 {
        assert_eq!(alpha(&p11, k).unwrap(), r(1, 1));
    }
    // alpha_{2,1}(k) = (k+1)^2/8
    let p21 = params(2, 1);
    for k in 1..8 {
        assert_eq!(alpha(&p21, k).unwrap(), r((k + 1) * (k + 1), 8));
    }
    // alpha_{2,2}(k) = (k+2)(k-1)/8
    let p22 = params(2, 2);
    for k in 2..9 {
        assert_eq!(alpha(&p22, k).unwrap(), r((k + 2) * (k - 1), 8));
    }
    assert!(alpha(&p22, 1).is_err());
}

#[test]
fn weight_polynomial_structure() {
    for n in 1..=5u32 {
        for q in 1..=n {
            let p = params(n, q);
            let ap = alpha_poly(&p);
            if n == 1 {
                assert_eq!(ap.degree(), Some(0));
            } else {
                assert_eq!(ap.degree(), Some((2 * n - 2) as usize));
            }
            // symmetry alpha(x) = alpha(-x - a): shifting by -a equals reflection
            let a = Rational::from_int(p.a());
            assert_eq!(ap.shift(&-&a), ap.reflect());
            // polynomial agrees with the weight at ladder points
            for k in (q as i64)..(q as i64 + 6) {
                assert_eq!(ap.eval_int(k), alpha(&p, k).unwrap());
            }
        }
    }
}

#[test]
fn multiplicity_is_factorial_weight_product() {
    // d(k) = (n!)^2 (2k+a) alpha(k), an integer; the bare (2k+a) alpha(k)
    // normalization printed alongside it is off by exactly (n!)^2.
    for n in 1..=5u32 {
        let nf2 = Rational::from_big(&factorial(n as u64) * &factorial(n as u64));
        for q in 1..=n {
            let p = params(n, q);
            for k in (q as i64)..(q as i64 + 8) {
                let d = multiplicity(&p, k).unwrap();
                let two_k_a = Rational::from_int(2 * k + p.a());
                let via_weight = &nf2 * &(&two_k_a * &alpha(&p, k).unwrap());
                assert_eq!(Rational::from_big(d.clone()), via_weight);
                assert!(d > Int::from(0));
            }
        }
    }
}

#[test]
fn weight_normalization_gap_exhibit() {
    // at (n,q,k) = (2,1,1): the true dimension is 8 while (2k+a) alpha(k)
    // evaluates to 2; the ratio is (2!)^2 = 4.
    let p = params(2, 1);
    let d = multiplicity(&p, 1).unwrap();
    assert_eq!(d, Int::from(8));
    let claimed = Rational::from_int(2 * 1 + p.a()) * alpha(&p, 1).unwrap();
    assert_eq!(claimed, r(2, 1));
    assert_eq!(Rational::from_big(d) / claimed, r(4, 1));
}

#[test]
fn multiplicity_known_dimensions() {
    // (1,1): d(k) = 2k+1
    let p = params(1, 1);
    for k in 1..10 {
        assert_eq!(multiplicity(&p, k).unwrap(), Int::from(2 * k + 1));
    }
    // (2,1): d(k) = (2k+2)(k+1)^2/2 = (k+1)^3
    let p = params(2, 1);
    for k in 1..10 {
        assert_eq!(multiplicity(&p, k).unwrap(), Int::from((k + 1).pow(3)));
    }
    // (2,2): d(k) = (2k+1)(k+2)(k-1)/2
    let p = params(2, 2);
    for k in 2..10 {
        assert_eq!(
            multiplicity(&p, k).unwrap(),
            Int::from((2 * k + 1) * (k + 2) * (k - 1) / 2)
        );
    }
}

#[test]
fn component_ladders() {
    assert_eq!(zeta_components(3, 1).unwrap(), vec![1, 2]);
    assert_eq!(zeta_components(3, 2).unwrap(), vec![2, 3]);
    assert_eq!(zeta_components(3, 3).unwrap(), vec![3]);
    assert_eq!(zeta_components(1, 1).unwrap(), vec![1]);
    assert!(zeta_components(2, 0).is_err());
    assert!(zeta_components(2, 3).is_err());
}

#[test]
fn serde_params_roundtrip() {
    let p = SpectrumParams::with_start(3, 2, StartIndex::AfterQ).unwrap();
    let js = serde_json::to_string(&p).unwrap();
    let back: SpectrumParams = serde_json::from_str(&js).unwrap();
    assert_eq!(back, p);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn multiplicity_integrality_everywhere(n in 1u32..6, qs in 0u32..5, k_off in 0i64..40) {
        let q = 1 + qs % n;
        let p = params(n, q);
        let k = q as i64 + k_off;
        let d = multiplicity(&p, k).unwrap();
        prop_assert!(d > Int::from(0));
        // consistency with the weight route
        let nf2 = Rational::from_big(&factorial(n as u64) * &factorial(n as u64));
        let w = &nf2 * &(&Rational::from_int(2 * k + p.a()) * &alpha(&p, k).unwrap());
        prop_assert_eq!(Rational::from_big(d), w);
    }

    #[test]
    fn eigenvalue_factorization(n in 1u32..6, qs in 0u32..5, k_off in 0i64..60) {
        let q = 1 + qs % n;
        let p = params(n, q);
        let k = p.start_k() + k_off;
        let lam = eigenvalue(&p, k).unwrap();
        prop_assert_eq!(lam, k * (k + n as i64 + 1 - q as i64));
    }
}

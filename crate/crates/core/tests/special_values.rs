use projzeta_core::values::{
    beta_coeff, eta_value_neg, gamma_residue, multi_hurwitz_neg, multi_hurwitz_residue,
    multi_hurwitz_residue_printed, p1_zeta_neg, xi_value_neg, zeta_q_neg, zetabar_neg,
    FormulaVariant,
};
use projzeta_core::spectrum::SpectrumParams;
use projzeta_core::{DomainError, Error, Int, Rational};

fn r(num: i64, den: i64) -> Rational {
    Rational::new(Int::from(num), Int::from(den))
}

fn params(n: u32, q: u32) -> SpectrumParams {
    SpectrumParams::new(n, q).unwrap()
}

#[test]
fn ladder_zeta_at_negative_integers() {
    // n = 1 collapses to ordinary Hurwitz values.
    assert_eq!(multi_hurwitz_neg(1, 0, &r(1, 1)), r(-1, 2));
    assert_eq!(multi_hurwitz_neg(1, 1, &r(2, 1)), r(-13, 12));
    // Shift identity survives the binomial reduction: the n = 2 ladder at
    // alpha and depth zero.
    assert_eq!(multi_hurwitz_neg(2, 0, &r(1, 1)), r(-1, 24));
    // Affine in alpha at weight one, depth zero.
    for num in [-3i64, 1, 2, 7] {
        let alpha = r(num, 2);
        assert_eq!(multi_hurwitz_neg(1, 0, &alpha), r(1, 2) - &alpha);
    }
}

#[test]
fn ladder_zeta_residues() {
    // Simple poles at s = 1..2n-1 only.
    assert_eq!(multi_hurwitz_residue(1, 1, &r(5, 3)), r(1, 1));
    assert_eq!(multi_hurwitz_residue(2, 3, &r(17, 4)), r(1, 2));
    assert_eq!(multi_hurwitz_residue(2, 1, &r(3, 1)), r(1, 1));
    for num in [-1i64, 2, 5] {
        let alpha = r(num, 1);
        assert_eq!(
            multi_hurwitz_residue(2, 2, &alpha),
            r(3, 2) - &alpha,
            "alpha={num}"
        );
    }
    assert_eq!(multi_hurwitz_residue(2, 0, &r(3, 1)), r(0, 1));
    assert_eq!(multi_hurwitz_residue(2, 4, &r(3, 1)), r(0, 1));

    // Read verbatim, the residue display multiplies each term by i+1.
    assert_eq!(multi_hurwitz_residue_printed(2, 1, &r(3, 1)), r(11, 2));
}

#[test]
fn beta_coefficients_pinned() {
    let p = params(1, 1);
    assert_eq!(beta_coeff(&p, 0, 0, 0).unwrap(), r(1, 1));
    assert_eq!(beta_coeff(&p, 1, 0, 0).unwrap(), r(1, 6));
    match beta_coeff(&p, 0, 1, 2) {
        Err(Error::Domain(DomainError::InnerIndexTooLarge { inner: 2, outer: 1 })) => {}
        other => panic!("expected index error, got {other:?}"),
    }
}

#[test]
fn xi_residues_pinned() {
    assert_eq!(gamma_residue(&params(1, 1), 1).unwrap(), r(1, 1));
    assert_eq!(gamma_residue(&params(2, 1), 3).unwrap(), r(1, 8));
    assert_eq!(gamma_residue(&params(2, 1), 2).unwrap(), r(-1, 4));
    // Zero outside the pole strip.
    assert_eq!(gamma_residue(&params(2, 1), 0).unwrap(), r(0, 1));
    assert_eq!(gamma_residue(&params(2, 1), 4).unwrap(), r(0, 1));
    assert_eq!(gamma_residue(&params(3, 2), -1).unwrap(), r(0, 1));
}

#[test]
fn xi_eta_value_tables() {
    // n = 1: xi_1(s) = zeta(s, 2), eta_1(s) = zeta(s).
    let p = params(1, 1);
    let xi_expect = [
        r(-3, 2),
        r(-13, 12),
        r(-1, 1),
        r(-119, 120),
        r(-1, 1),
        r(-253, 252),
    ];
    for (l, want) in xi_expect.iter().enumerate() {
        assert_eq!(&xi_value_neg(&p, l as u32).unwrap(), want, "l={l}");
    }
    assert_eq!(eta_value_neg(&p, 0).unwrap(), r(-1, 2));
    assert_eq!(eta_value_neg(&p, 1).unwrap(), r(-1, 12));
}

#[test]
fn xi_dual_route_agreement() {
    // xi_value_neg asserts its two rearrangements agree; exercise a battery.
    for n in 1..=3u32 {
        for q in 1..=n {
            let p = params(n, q);
            for l in 0..=8u32 {
                xi_value_neg(&p, l).unwrap();
            }
        }
    }
}

#[test]
fn ladder_values_at_negative_integers() {
    let p = params(1, 1);
    let c = FormulaVariant::Corrected;
    assert_eq!(zetabar_neg(&p, 0, c).unwrap(), r(-2, 3));
    assert_eq!(zetabar_neg(&p, 1, c).unwrap(), r(-1, 15));
    assert_eq!(zetabar_neg(&p, 2, c).unwrap(), r(8, 315));
}

#[test]
fn printed_value_formula_divergence() {
    let p = params(1, 1);
    let printed = zetabar_neg(&p, 1, FormulaVariant::Printed).unwrap();
    assert_eq!(printed, r(3, 40));
    let corrected = zetabar_neg(&p, 1, FormulaVariant::Corrected).unwrap();
    assert_eq!(printed - corrected, r(17, 120));

    match zetabar_neg(&p, 0, FormulaVariant::Printed) {
        Err(Error::Domain(DomainError::PrintedFormUndefined { .. })) => {}
        other => panic!("expected undefined printed form at m = 0, got {other:?}"),
    }
}

#[test]
fn full_zeta_sums_its_components() {
    for n in 1..=3u32 {
        for q in 1..=n {
            for m in 0..=2u32 {
                let whole = zeta_q_neg(n, q, m, FormulaVariant::Corrected).unwrap();
                let mut parts = zetabar_neg(&params(n, q), m, FormulaVariant::Corrected).unwrap();
                if q < n {
                    parts += zetabar_neg(&params(n, q + 1), m, FormulaVariant::Corrected).unwrap();
                }
                assert_eq!(whole, parts, "n={n} q={q} m={m}");
            }
        }
    }
}

#[test]
fn alternating_weighted_sum_telescopes() {
    // sum_q (-1)^{q+1} q zeta_q(-m) == sum_q (-1)^{q+1} zbar_q(-m).
    for n in 2..=3u32 {
        for m in 0..=2u32 {
            let mut lhs = Rational::zero();
            let mut rhs = Rational::zero();
            for q in 1..=n {
                let sign = if q % 2 == 1 { 1 } else { -1 };
                let w = Rational::from_int(sign * q as i64);
                lhs += w * zeta_q_neg(n, q, m, FormulaVariant::Corrected).unwrap();
                rhs += Rational::from_int(sign)
                    * zetabar_neg(&params(n, q), m, FormulaVariant::Corrected).unwrap();
            }
            assert_eq!(lhs, rhs, "n={n} m={m}");
        }
    }
}

#[test]
fn closed_form_matches_ladder_for_projective_line() {
    assert_eq!(p1_zeta_neg(0), r(-2, 3));
    assert_eq!(p1_zeta_neg(1), r(-1, 15));
    let p = params(1, 1);
    for m in 0..=20u32 {
        assert_eq!(
            p1_zeta_neg(m),
            zetabar_neg(&p, m, FormulaVariant::Corrected).unwrap(),
            "m={m}"
        );
    }
}

use projzeta_core::genfun::{
    kappa, ode_residual, r_polynomial, s_series, t_closed_form_printed, t_numerator, t_series,
};
use projzeta_core::polynomial::QPolynomial;
use projzeta_core::series::QPowerSeries;
use projzeta_core::spectrum::{alpha, SpectrumParams, StartIndex};
use projzeta_core::{Int, Rational};

fn r(num: i64, den: i64) -> Rational {
    Rational::new(Int::from(num), Int::from(den))
}

fn params(n: u32, q: u32) -> SpectrumParams {
    SpectrumParams::new(n, q).unwrap()
}

#[test]
fn kappa_pinned() {
    assert_eq!(kappa(&params(1, 1)), r(1, 2));
    assert_eq!(kappa(&params(2, 1)), r(1, 3));
    assert_eq!(kappa(&params(2, 2)), r(1, 2));
    assert_eq!(kappa(&params(3, 1)), r(1, 4));
    assert_eq!(kappa(&params(3, 2)), r(1, 2));
    assert_eq!(kappa(&params(3, 3)), r(5, 6));
}

#[test]
fn weight_numerator_pinned() {
    // R = (1-z)^{2n-1} (S + kappa z^q), exact coefficient lists.
    let r11 = r_polynomial(&params(1, 1)).unwrap();
    assert_eq!(r11.poly.coeffs(), &[r(0, 1), r(3, 2), r(-1, 2)]);
    assert_eq!(r11.support(), vec![1, 2]);

    let r21 = r_polynomial(&params(2, 1)).unwrap();
    assert_eq!(
        r21.poly.coeffs(),
        &[r(0, 1), r(5, 6), r(-11, 8), r(9, 8), r(-1, 3)]
    );
    assert_eq!(r21.support(), vec![1, 2, 3, 4]);

    let r22 = r_polynomial(&params(2, 2)).unwrap();
    assert_eq!(
        r22.poly.coeffs(),
        &[r(0, 1), r(0, 1), r(1, 1), r(-7, 4), r(3, 2), r(-1, 2)]
    );
    assert_eq!(r22.support(), vec![2, 3, 4, 5]);
}

#[test]
fn weight_numerator_sum_rules() {
    // Value and slope of R at z = 1 for (2,1): 1/4 and 1/8.
    let r21 = r_polynomial(&params(2, 1)).unwrap();
    let one = Rational::one();
    assert_eq!(r21.poly.eval(&one), r(1, 4));
    assert_eq!(r21.poly.derivative().eval(&one), r(1, 8));
}

#[test]
fn weight_numerator_support_bounds() {
    for n in 1..=4u32 {
        for q in 1..=n {
            let p = params(n, q);
            let data = r_polynomial(&p).unwrap();
            let support = data.support();
            assert!(!support.is_empty());
            assert_eq!(*support.first().unwrap(), q as usize);
            assert!(*support.last().unwrap() <= (2 * n - 1 + q) as usize);
        }
    }
}

#[test]
fn weight_series_reconstructs_from_numerator() {
    // S == R/(1-z)^{2n-1} - kappa z^q through a generous order.
    for n in 1..=3u32 {
        for q in 1..=n {
            let p = params(n, q);
            let order = 24usize;
            let data = r_polynomial(&p).unwrap();
            let recon = QPowerSeries::inv_one_minus_z_pow(2 * n - 1, order)
                .mul_poly(&data.poly)
                - QPowerSeries::from_polynomial(
                    &QPolynomial::monomial(data.kappa.clone(), q as usize),
                    order,
                );
            let diff = recon - s_series(&p, order);
            assert!(diff.is_zero_to_order(), "n={n} q={q}");
        }
    }
}

#[test]
fn degree_numerator_pinned() {
    // N = (1-z)^{2n+1} T with endpoint values binom(q+n,q) and binom(2n,n).
    let n11 = t_numerator(&params(1, 1)).unwrap();
    assert_eq!(n11.coeffs(), &[r(2, 1)]);

    let n21 = t_numerator(&params(2, 1)).unwrap();
    assert_eq!(n21.coeffs(), &[r(3, 1), r(3, 1)]);

    let n22 = t_numerator(&params(2, 2)).unwrap();
    assert_eq!(n22.coeff(0), r(6, 1));
    assert_eq!(n22.eval(&Rational::one()), r(6, 1));

    for n in 1..=4u32 {
        for q in 1..=n {
            let poly = t_numerator(&params(n, q)).unwrap();
            assert!(poly.degree().unwrap_or(0) <= 2 * n as usize);
        }
    }
}

#[test]
fn degree_series_matches_dimension_ratio() {
    // T_k = binom(k+q+n, k+q) binom(k+n, k); spot values at (2,1).
    let t = t_series(&params(2, 1), 4);
    assert_eq!(t.coefficient(0), &r(3, 1));
    assert_eq!(t.coefficient(1), &r(18, 1));
    assert_eq!(t.coefficient(2), &r(60, 1));
    assert_eq!(t.coefficient(3), &r(150, 1));
}

#[test]
fn printed_degree_closed_form_mismatch() {
    // The packaged closed form disagrees with the computed numerator from
    // the constant term on: the peeled constant enters with the wrong shape.
    let form11 = t_closed_form_printed(&params(1, 1)).unwrap();
    assert_eq!(form11.first_mismatch, Some(0));
    // Reconstruct the inner polynomial before peeling: 1 + z.
    let inner = form11.printed_package.clone() + QPolynomial::one_minus_z_pow(3);
    assert_eq!(inner.coeffs(), &[r(1, 1), r(1, 1)]);
    assert_eq!(form11.computed.coeffs(), &[r(2, 1)]);

    let form21 = t_closed_form_printed(&params(2, 1)).unwrap();
    assert_eq!(form21.first_mismatch, Some(0));
    let inner21 = form21.printed_package.clone() + QPolynomial::one_minus_z_pow(5).scale(&r(1, 1));
    assert_eq!(inner21.coeffs(), &[r(1, 1), r(4, 1), r(1, 1)]);
}

#[test]
fn differential_identity_needs_prefactor() {
    // d/dz(z^{n+2-q} S') == z^n T/(n!(q-1)!(n-q)!); dropping the prefactor
    // breaks every case with n >= 2.
    for n in 1..=4u32 {
        for q in 1..=n {
            let p = params(n, q);
            let with = ode_residual(&p, 16, true);
            assert!(with.is_zero_to_order(), "n={n} q={q}");
            let bare = ode_residual(&p, 16, false);
            if n == 1 {
                assert!(bare.is_zero_to_order());
            } else {
                assert!(!bare.is_zero_to_order(), "n={n} q={q}");
            }
        }
    }
}

#[test]
fn shifted_start_drops_one_weight_term() {
    // Starting the ladder one step later removes alpha(q) z^q from S, so the
    // numerators differ by exactly alpha(q) z^q (1-z)^{2n-1}.
    for n in 1..=3u32 {
        for q in 1..=n {
            let at = SpectrumParams::new(n, q).unwrap();
            let after = SpectrumParams::with_start(n, q, StartIndex::AfterQ).unwrap();
            let r_at = r_polynomial(&at).unwrap();
            let r_after = r_polynomial(&after).unwrap();
            let edge = alpha(&at, q as i64).unwrap();
            let expect =
                QPolynomial::one_minus_z_pow(2 * n - 1) * QPolynomial::monomial(edge, q as usize);
            let diff = r_at.poly.clone() - r_after.poly.clone();
            assert_eq!(diff, expect, "n={n} q={q}");
        }
    }
}

use projzeta_core::bernoulli::hurwitz_zeta_neg_int;
use projzeta_core::numerics::{
    claim_n1_eval, continue_at, derivative_at_zero, eta_numeric, eval_expr, heat_trace,
    hurwitz_zeta, hurwitz_zeta_deriv, integer_zeta, omega_tail_direct, residue_at,
    theta_coefficient, xi_numeric, zetabar_direct, Mpf, NumValue, NumericContext, OffsetHurwitz,
};
use projzeta_core::spectrum::SpectrumParams;
use projzeta_core::torsion::{omega_value, zetabar_prime_corrected, ExtZetaExpr};
use projzeta_core::values::{eta_value_neg, gamma_residue, xi_value_neg, zetabar_neg, FormulaVariant};
use projzeta_core::{Error, Int, NumericError, Rational};

fn r(num: i64, den: i64) -> Rational {
    Rational::new(Int::from(num), Int::from(den))
}

fn params(n: u32, q: u32) -> SpectrumParams {
    SpectrumParams::new(n, q).unwrap()
}

/// |x| < 2^bound (zero always passes; mag of zero is a large negative
/// sentinel).
fn assert_mag_below(x: &Mpf, bound: i64, what: &str) {
    assert!(x.mag() < bound, "{what}: magnitude 2^{} >= 2^{bound}", x.mag());
}

fn assert_close_f64(x: &Mpf, want: f64, tol: f64, what: &str) {
    let got = x.to_f64();
    assert!(
        (got - want).abs() <= tol,
        "{what}: got {got}, want {want} +- {tol}"
    );
}

#[test]
fn float_arithmetic_exactness() {
    let ctx = NumericContext::new(50);
    let a = ctx.from_rational(&r(1, 3));
    let b = ctx.from_rational(&r(1, 6));
    // 1/3 + 1/6 - 1/2 collapses to the rounding floor.
    let sum = ctx.add(&a, &b);
    let half = ctx.from_rational(&r(1, 2));
    assert_mag_below(&ctx.sub(&sum, &half), -ctx.bits() + 8, "1/3 + 1/6");

    let x = Mpf::from_int(3).scale2(-4);
    assert_eq!(x.to_f64(), 0.1875);
    assert_eq!(x.neg().abs().to_f64(), 0.1875);
    assert!(x.neg().is_negative());

    let p = ctx.powi(&Mpf::from_int(7), -3);
    assert_close_f64(&p, 1.0 / 343.0, 1e-18, "7^-3");
    let q = ctx.recip(&ctx.recip(&p));
    assert_mag_below(&ctx.sub(&p, &q), -ctx.bits() + 8, "double recip");

    assert_eq!(Mpf::from_int(-12).cmp_abs(&Mpf::from_int(5)), std::cmp::Ordering::Greater);
    assert!(Mpf::zero().is_zero());

    let dec = ctx.to_decimal(&ctx.from_rational(&r(1, 4)));
    assert!(dec.starts_with("0.25"), "decimal rendering: {dec}");
}

#[test]
fn float_transcendentals() {
    let ctx = NumericContext::new(60);
    // exp squares back up 2^10 after argument reduction, so round trips
    // through exp/ln legitimately lose ~13 bits; 20 bits of slack covers it.
    let tol = -ctx.bits() + 20;

    let two = Mpf::from_int(2);
    let s = ctx.sqrt(&two);
    assert_mag_below(&ctx.sub(&ctx.mul(&s, &s), &two), tol, "sqrt(2)^2");
    assert_mag_below(&ctx.sub(&s, &ctx.sqrt2()), tol, "sqrt2 cache");

    assert_mag_below(&ctx.sub(&ctx.ln2(), &ctx.ln_int(2)), tol, "ln 2 routes");
    let l6 = ctx.add(&ctx.ln_int(2), &ctx.ln_int(3));
    assert_mag_below(&ctx.sub(&ctx.ln_int(6), &l6), tol, "ln 6 = ln 2 + ln 3");

    let x = ctx.from_rational(&r(7, 5));
    assert_mag_below(&ctx.sub(&ctx.exp(&ctx.ln(&x)), &x), tol, "exp(ln x)");
    assert_mag_below(&ctx.sub(&ctx.exp(&Mpf::zero()), &Mpf::from_int(1)), tol, "exp 0");

    let half = ctx.from_rational(&r(1, 2));
    let root = ctx.pow(&Mpf::from_int(4), &half);
    assert_mag_below(&ctx.sub(&root, &two), tol, "4^(1/2)");

    assert_close_f64(&ctx.euler_gamma(), 0.5772156649015329, 1e-15, "euler gamma");

    // B_12 = -691/2730.
    let b12 = ctx.bernoulli_even(6);
    assert_mag_below(
        &ctx.sub(&b12, &ctx.from_rational(&r(-691, 2730))),
        tol,
        "B_12",
    );

    let pi = ctx.pi();
    assert!(
        ctx.to_decimal_digits(&pi, 50)
            .starts_with("3.141592653589793238462643383279502884197169399375"),
        "pi digits, got {}",
        ctx.to_decimal_digits(&pi, 50)
    );
    let wide = NumericContext::new(130);
    assert_mag_below(&ctx.sub(&pi, &wide.pi()), tol, "pi stable under widening");
}

#[test]
fn continuation_matches_bernoulli_values() {
    // Euler-Maclaurin continuation against the exact Bernoulli values on the
    // negative integers, several offsets deep.
    let ctx = NumericContext::new(60);
    for l in 0..=8u32 {
        // the cutoff sum reaches m^(l+1) before cancelling down to O(1), so
        // the attainable accuracy degrades by ~8 bits per degree (m < 2^8)
        let tol = -ctx.bits() + 16 + 8 * (l as i64 + 2);
        for alpha in 1..=4u64 {
            let got = hurwitz_zeta(&ctx, &Mpf::from_int(-(l as i64)), alpha).unwrap();
            let want = ctx.from_rational(&hurwitz_zeta_neg_int(l, &r(alpha as i64, 1)));
            assert_mag_below(&ctx.sub(&got, &want), tol, &format!("zeta(-{l}, {alpha})"));
        }
    }
}

#[test]
fn continuation_rejects_pole() {
    let ctx = NumericContext::new(40);
    match hurwitz_zeta(&ctx, &Mpf::from_int(1), 1) {
        Err(Error::Numeric(NumericError::NearPole { .. })) => {}
        other => panic!("expected pole rejection, got {other:?}"),
    }
}

#[test]
fn zeta_derivative_pins() {
    let ctx = NumericContext::new(60);
    let (v0, d0) = hurwitz_zeta_deriv(&ctx, &Mpf::zero(), 1).unwrap();
    assert_close_f64(&v0, -0.5, 1e-20, "zeta(0)");
    assert_close_f64(&d0, -0.9189385332046727, 1e-11, "zeta'(0)");

    let (_, d1) = hurwitz_zeta_deriv(&ctx, &Mpf::from_int(-1), 1).unwrap();
    assert_close_f64(&d1, -0.16542114370045092, 1e-11, "zeta'(-1)");

    let (_, d2) = hurwitz_zeta_deriv(&ctx, &Mpf::from_int(-2), 1).unwrap();
    assert_close_f64(&d2, -0.030448457058393270, 1e-11, "zeta'(-2)");

    // zeta'(0, 3) = zeta'(0) + log 2.
    let (_, d03) = hurwitz_zeta_deriv(&ctx, &Mpf::zero(), 3).unwrap();
    let want = ctx.add(&d0, &ctx.ln_int(2));
    assert_mag_below(&ctx.sub(&d03, &want), -ctx.bits() + 30, "offset derivative");
}

#[test]
fn integer_zeta_pins() {
    let ctx = NumericContext::new(60);
    assert_close_f64(&integer_zeta(&ctx, 2, 1).unwrap(), 1.6449340668482264, 1e-14, "zeta(2)");
    assert_close_f64(&integer_zeta(&ctx, 3, 1).unwrap(), 1.2020569031595943, 1e-14, "zeta(3)");
    // Offset head subtraction: zeta(2, 3) = zeta(2) - 1 - 1/4.
    assert_close_f64(
        &integer_zeta(&ctx, 2, 3).unwrap(),
        1.6449340668482264 - 1.25,
        1e-14,
        "zeta(2, 3)",
    );
    // Deep in the tail the early-out bound must still be honest:
    // zeta(50, 2) = 2^-50 + 3^-50 + ... with the next term below 6e-31.
    let want = ctx.add(
        &ctx.from_rational(&Rational::new(Int::from(1), Int::from(2i64).pow(50))),
        &ctx.from_rational(&Rational::new(Int::from(1), Int::from(3i64).pow(50))),
    );
    assert_mag_below(
        &ctx.sub(&integer_zeta(&ctx, 50, 2).unwrap(), &want),
        -98,
        "zeta(50, 2)",
    );
}

#[test]
fn shifted_table_matches_scalar_continuation() {
    let ctx = NumericContext::new(60);
    let s0 = ctx.from_rational(&r(7, 20));
    let table = OffsetHurwitz::build(&ctx, &s0, &[1, 3], -4, 3).unwrap();
    for t in -4..=3i64 {
        // deeper negative shifts cancel larger partial sums, as in the
        // Bernoulli-value test above
        let tol = -ctx.bits() + 16 + 8 * ((-t).max(0) + 2);
        for alpha in [1u64, 3] {
            let got = table.zeta(t, alpha).unwrap();
            let w = ctx.add(&s0, &Mpf::from_int(t));
            let want = hurwitz_zeta(&ctx, &w, alpha).unwrap();
            assert_mag_below(&ctx.sub(&got, &want), tol, &format!("table t={t} alpha={alpha}"));
        }
    }

    // Integer base point: the pole row is absent, everything else present.
    let table = OffsetHurwitz::build(&ctx, &Mpf::zero(), &[2], 0, 2).unwrap();
    match table.zeta(1, 2) {
        Err(Error::Numeric(NumericError::NearPole { .. })) => {}
        other => panic!("expected missing pole row, got {other:?}"),
    }
    let got = table.zeta(0, 2).unwrap();
    assert_close_f64(&got, -1.5, 1e-20, "zeta(0, 2)");
}

#[test]
fn building_blocks_match_exact_values() {
    let ctx = NumericContext::new(60);
    for (n, q) in [(1u32, 1u32), (2, 1), (2, 2)] {
        let p = params(n, q);
        for l in 0..=3u32 {
            // table shifts reach l + 2n - 2 below zero; same cancellation
            // budget as the Bernoulli-value test, plus ladder weight size
            let tol = -ctx.bits() + 32 + 8 * (l as i64 + 2 * n as i64);
            let s = Mpf::from_int(-(l as i64));
            let got = xi_numeric(&ctx, &p, &s).unwrap();
            let want = ctx.from_rational(&xi_value_neg(&p, l).unwrap());
            assert_mag_below(&ctx.sub(&got, &want), tol, &format!("xi n={n} q={q} l={l}"));

            let got = eta_numeric(&ctx, &p, &s).unwrap();
            let want = ctx.from_rational(&eta_value_neg(&p, l).unwrap());
            assert_mag_below(&ctx.sub(&got, &want), tol, &format!("eta n={n} q={q} l={l}"));
        }
    }
}

#[test]
fn ladder_sum_telescopes_exactly_on_line() {
    // At s = 2 the degree-one ladder collapses: zbar_1(2) = 1 exactly.
    let ctx = NumericContext::new(60);
    let got = zetabar_direct(&ctx, &params(1, 1), &Mpf::from_int(2)).unwrap();
    assert_mag_below(
        &ctx.sub(&got, &Mpf::from_int(1)),
        -ctx.bits() + 40,
        "zbar_1(2)",
    );
}

#[test]
fn claim_agrees_with_direct_sum_on_line() {
    let ctx = NumericContext::new(60);
    let p = params(1, 1);
    for s_r in [r(5, 2), r(17, 10), r(16, 5)] {
        let s = ctx.from_rational(&s_r);
        let direct = zetabar_direct(&ctx, &p, &s).unwrap();
        let claim = claim_n1_eval(&ctx, &p, &s).unwrap();
        assert_mag_below(&ctx.sub(&direct, &claim), -140, &format!("s={s_r}"));
    }
}

#[test]
fn claim_misses_direct_sum_by_weight_normalization() {
    // For n = 2 the rearranged series tracks the generating-function weights
    // while the direct sum carries the true multiplicities; the quotient is
    // exactly (2!)^2 = 4.
    let ctx = NumericContext::new(60);
    let p = params(2, 1);
    let s = ctx.from_rational(&r(5, 2));
    let direct = zetabar_direct(&ctx, &p, &s).unwrap();
    let claim = claim_n1_eval(&ctx, &p, &s).unwrap();
    let gap = ctx.sub(&direct, &claim);
    assert!(gap.mag() > -8, "the two routes must visibly disagree at n=2");
    let ratio = ctx.div(&direct, &claim);
    assert_mag_below(&ctx.sub(&ratio, &Mpf::from_int(4)), -140, "ratio 4");
}

#[test]
fn continuation_recovers_ladder_values() {
    let ctx = NumericContext::new(60);
    for (n, q, m, want) in [
        (1u32, 1u32, 0u32, r(-2, 3)),
        (1, 1, 1, r(-1, 15)),
        (2, 2, 0, zetabar_neg(&params(2, 2), 0, FormulaVariant::Corrected).unwrap()),
    ] {
        let p = params(n, q);
        let anchor = r(-(m as i64), 1);
        let (val, err) =
            continue_at(&ctx, &anchor, |s| claim_n1_eval(&ctx, &p, s)).unwrap();
        let diff = ctx.sub(&val, &ctx.from_rational(&want));
        assert_mag_below(&diff, -120, &format!("continuation n={n} q={q} m={m}"));
        assert_mag_below(&err, -100, "reported error bar");
    }
}

#[test]
fn residue_extraction_matches_exact() {
    let ctx = NumericContext::new(60);
    let p = params(1, 1);
    let (res, err) = residue_at(&ctx, 1, |s| xi_numeric(&ctx, &p, s)).unwrap();
    assert_mag_below(&ctx.sub(&res, &Mpf::from_int(1)), -100, "xi_1 residue at 1");
    assert_mag_below(&err, -90, "residue error bar");

    let p = params(2, 1);
    let (res, _) = residue_at(&ctx, 2, |s| xi_numeric(&ctx, &p, s)).unwrap();
    let want = ctx.from_rational(&gamma_residue(&p, 2).unwrap());
    assert_mag_below(&ctx.sub(&res, &want), -90, "xi residue n=2 at 2");
}

#[test]
fn derivative_extraction_sanity() {
    let ctx = NumericContext::new(60);
    let (d, err) = derivative_at_zero(&ctx, |s| Ok(ctx.exp(s))).unwrap();
    assert_mag_below(&ctx.sub(&d, &Mpf::from_int(1)), -120, "d/ds exp at 0");
    assert_mag_below(&err, -100, "derivative error bar");

    let (d, _) = derivative_at_zero(&ctx, |s| hurwitz_zeta(&ctx, s, 1)).unwrap();
    let (_, want) = hurwitz_zeta_deriv(&ctx, &Mpf::zero(), 1).unwrap();
    assert_mag_below(&ctx.sub(&d, &want), -110, "zeta'(0) two routes");
}

#[test]
fn heat_trace_pinned() {
    let ctx = NumericContext::new(30);
    let t = ctx.from_rational(&r(1, 100));
    let theta = heat_trace(&ctx, &params(1, 1), &t).unwrap();
    // sum_{k>=1} (2k+1) e^(-0.01 k(k+1)), cross-checked by direct summation
    assert_close_f64(&theta, 99.334001273027496, 1e-9, "Theta_1(0.01)");
}

#[test]
fn heat_expansion_coefficients_on_line() {
    // The t^m coefficients of t Theta(t) recover zbar_1(-m) on the line,
    // where the printed weight normalization happens to be exact.
    let h = theta_coefficient(&params(1, 1), 0).unwrap();
    let want = -2.0 / 3.0;
    assert_close_f64(&h.value, want, 1e-9, "theta coefficient m=0");
    assert!(h.error.mag() < -30, "error bar 2^{}", h.error.mag());

    let h = theta_coefficient(&params(1, 1), 1).unwrap();
    assert_close_f64(&h.value, -1.0 / 15.0, 1e-8, "theta coefficient m=1");
}

#[test]
fn tail_block_value_refutes_collapse() {
    // The tail's derivative contribution at 0 equals the assembled Omega
    // value (2 zeta'(0) + 2 on the line, about 0.1621), not zero.
    let ctx = NumericContext::new(60);
    let p = params(1, 1);
    let tail = omega_tail_direct(&ctx, &p).unwrap();
    let omega = eval_expr(&ctx, &omega_value(p).unwrap()).unwrap();
    assert_mag_below(&ctx.sub(&tail, &omega), -150, "tail vs assembled Omega");
    // 2 zeta'(0) + 2 = 2 - log(2 pi)
    assert_close_f64(&tail, 0.16212293359065452, 1e-12, "tail value");
    assert!(tail.to_f64() > 0.1, "visibly nonzero");
}

#[test]
fn expression_evaluation_pins() {
    let ctx = NumericContext::new(60);

    // 4 zeta'(-1) - 1/2: the derivative of the degree-one zeta at 0.
    let e = zetabar_prime_corrected(params(1, 1)).unwrap();
    let v = eval_expr(&ctx, &e).unwrap();
    assert_close_f64(&v, 4.0 * -0.16542114370045092 - 0.5, 1e-14, "4 zeta'(-1) - 1/2");

    // gamma + log 2 + zeta(3) exercises the remaining slots.
    let mut e = ExtZetaExpr::euler_gamma_term(r(1, 1));
    e.add_log(2, r(1, 1));
    let e = &e + &ExtZetaExpr::zeta_pos_term(3, r(1, 1));
    let v = eval_expr(&ctx, &e).unwrap();
    assert_close_f64(
        &v,
        0.5772156649015329 + 0.6931471805599453 + 1.2020569031595943,
        1e-14,
        "gamma + log 2 + zeta(3)",
    );

    let snap = NumValue::from_parts(&ctx, &v, &Mpf::from_int(1).scale2(-200));
    assert_eq!(snap.digits, 60);
    assert!(snap.value.starts_with("2.47241"), "snapshot {}", snap.value);
    let json = serde_json::to_string(&snap).unwrap();
    let back: NumValue = serde_json::from_str(&json).unwrap();
    assert_eq!(back, snap);
}

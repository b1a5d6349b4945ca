//! Builders for the identity-audit cells. Every tracked identity is
//! recomputed from definitions and compared against the displayed form it
//! audits. Exact comparisons report verified/refuted with rational or
//! basis-expression residuals; numeric comparisons run at the working
//! precision and again at twice it, and report instability rather than
//! silently flipping a verdict.

use crate::report::{ReportCell, Residual, Status, VerificationReport};
use projzeta_core::bernoulli::hurwitz_zeta_neg_int;
use projzeta_core::combinatorics::{binomial, factorial, partial_fraction_g};
use projzeta_core::genfun::{kappa, ode_residual, r_polynomial, t_closed_form_printed, t_numerator};
use projzeta_core::numerics::{
    claim_n1_eval, continue_at, derivative_at_zero, eta_numeric, eval_expr, hurwitz_zeta,
    hurwitz_zeta_deriv, omega_tail_direct, residue_at, theta_coefficient, xi_numeric,
    zetabar_direct, Mpf, NumericContext,
};
use projzeta_core::polynomial::QPolynomial;
use projzeta_core::rational::{Int, Rational};
use projzeta_core::spectrum::{
    alpha, alpha_poly, multiplicity, zeta_components, SpectrumParams, StartIndex,
};
use projzeta_core::torsion::{
    alternating_bold_c, bold_c, bold_c_bsum, bold_c_closed, eta_laurent,
    four_derivatives_definition, four_derivatives_printed_boldc, four_derivatives_printed_range,
    gamma_shift_block, h_at_zero, h_poly, omega_printed_conclusion, omega_value, pq_polys,
    torsion_expr, torsion_printed, w_coeff, xi_laurent, zetabar_prime_corrected,
    zetabar_prime_printed, ClosedFormVariant, ExtZetaExpr, LaurentBlock, PrintedDerivativeForm,
};
use projzeta_core::values::{
    eta_value_neg, gamma_residue, multi_hurwitz_neg, multi_hurwitz_residue,
    multi_hurwitz_residue_printed, p1_zeta_neg, xi_value_neg, zeta_q_neg, zetabar_neg,
    FormulaVariant,
};
use projzeta_core::{DomainError, Error};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Every identity id the audit can emit; the report must cover all of them
/// at any sweep size, since each identity exists already at n = 1.
pub const CELL_IDS: &[&str] = &[
    "spectrum-multiplicity-integrality",
    "spectrum-weight-identity",
    "series-decomposition",
    "values-additivity",
    "p1-closed-form",
    "spectral-zeta-series",
    "alpha-polynomiality",
    "s-generating-polynomiality",
    "r-degree-printed",
    "s-ode",
    "s-ode-printed",
    "t-closed-form-printed",
    "t-numerator",
    "partial-fraction-identity",
    "xi-reduction",
    "multi-hurwitz-values",
    "multi-hurwitz-residues",
    "beta-coefficients",
    "xi-residues",
    "xi-values",
    "start-index-printed",
    "zeta-values-printed",
    "zeta-values-corrected",
    "zeta-values-theta-crosscheck",
    "eta-reduction",
    "xi-eta-derivatives-printed",
    "derivative-assembly-printed",
    "w-coefficients",
    "tail-series-identity",
    "tail-integrand-printed",
    "omega-closed-printed",
    "omega-conclusion-printed",
    "derivative-corrected",
    "expansion-coefficients-integrality",
    "pq-vanishing",
    "pq-degree-bounds",
    "alpha-shift-coefficients",
    "xi-derivative-closed-printed",
    "derivative-closed-printed",
    "alpha-coefficients-closed-printed",
    "alpha-coefficients-closed-rescaled",
    "alpha-coefficients-vanishing",
    "derivative-aggregated-printed",
    "torsion-closed-printed",
    "torsion-corrected",
    "torsion-structure-odd-zeta",
    "hurwitz-bernoulli-anchor",
    "numerics-conservativity",
];

const LOG2_10: f64 = 3.321928094887362;

type Cells = Result<Vec<ReportCell>, Error>;
type Job = Box<dyn Fn() -> Cells + Send + Sync>;

fn pm(ps: &[(&str, i64)]) -> BTreeMap<String, i64> {
    ps.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn cell(
    id: &str,
    params: BTreeMap<String, i64>,
    variant: &str,
    status: Status,
    residual: Residual,
    precision: u32,
    detail: String,
) -> ReportCell {
    ReportCell {
        id: id.into(),
        params,
        variant: variant.into(),
        status,
        residual,
        precision,
        detail,
    }
}

/// Exact cell: verified on a zero residual, refuted otherwise.
fn exact(
    id: &str,
    params: BTreeMap<String, i64>,
    variant: &str,
    residual: Residual,
    detail: String,
) -> ReportCell {
    let zero = matches!(&residual, Residual::Zero)
        || matches!(&residual, Residual::Rational { value } if value == "0")
        || matches!(&residual, Residual::Expr { expr } if expr.is_zero());
    let status = if zero {
        Status::Verified
    } else {
        Status::Refuted
    };
    cell(id, params, variant, status, residual, 0, detail)
}

fn rat_residual(r: &Rational) -> Residual {
    if r.is_zero() {
        Residual::Zero
    } else {
        Residual::Rational {
            value: r.to_compact_string(),
        }
    }
}

fn expr_residual(e: ExtZetaExpr) -> Residual {
    if e.is_zero() {
        Residual::Zero
    } else {
        Residual::Expr { expr: e }
    }
}

/// |x| < 10^(-dec) via the binary magnitude.
fn below_dec(x: &Mpf, dec: i64) -> bool {
    x.mag() < (-(dec as f64) * LOG2_10).floor() as i64
}

/// One numeric comparison evaluated at some precision.
struct NumOutcome {
    diff: String,
    bound: String,
    within: bool,
    note: String,
}

/// Run a numeric check at the working precision and at twice it. Matching
/// verdicts keep their status; a flip is reported as numeric-disagree with
/// the instability named.
fn doubled(
    id: &str,
    params: BTreeMap<String, i64>,
    variant: &str,
    digits: u32,
    base_detail: &str,
    f: impl Fn(u32) -> Result<NumOutcome, Error>,
) -> Result<ReportCell, Error> {
    let lo = f(digits)?;
    let hi = f(digits * 2)?;
    let (status, stability) = match (lo.within, hi.within) {
        (true, true) => (Status::NumericAgree, ""),
        (false, false) => (Status::NumericDisagree, ""),
        _ => (
            Status::NumericDisagree,
            "; verdict unstable under precision doubling",
        ),
    };
    let mut detail = format!("{base_detail}{stability}");
    if !lo.note.is_empty() {
        detail = format!("{detail}; {}", lo.note);
    }
    Ok(cell(
        id,
        params,
        variant,
        status,
        Residual::Numeric {
            value: lo.diff,
            error: lo.bound,
            digits,
        },
        digits,
        detail,
    ))
}

fn pairs(n_max: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for q in 1..=n {
            out.push((n, q));
        }
    }
    out
}

fn sp(n: u32, q: u32) -> Result<SpectrumParams, Error> {
    Ok(SpectrumParams::new(n, q)?)
}

fn nf2(n: u32) -> Rational {
    Rational::from_big(factorial(n as u64) * factorial(n as u64))
}

/// Multiplicity-normalized weight claimed by the display: (2k+a) alpha(k).
fn claimed_weight(p: &SpectrumParams, k: i64) -> Result<Rational, Error> {
    Ok(Rational::from_int(2 * k + p.a()) * alpha(p, k)?)
}

// ---------------------------------------------------------------- spectrum

fn spectrum_integrality(n: u32, q: u32) -> Cells {
    let p = sp(n, q)?;
    let start = p.start_k();
    for k in start..start + 60 {
        let d = multiplicity(&p, k)?;
        if d <= Int::from(0) {
            return Ok(vec![exact(
                "spectrum-multiplicity-integrality",
                pm(&[("n", n as i64), ("q", q as i64), ("k", k)]),
                "definition",
                Residual::Rational {
                    value: Rational::from_big(d).to_compact_string(),
                },
                format!("multiplicity at k={k} is not positive"),
            )]);
        }
    }
    Ok(vec![exact(
        "spectrum-multiplicity-integrality",
        pm(&[("n", n as i64), ("q", q as i64), ("k_max", start + 59)]),
        "definition",
        Residual::Zero,
        "multiplicity is a positive integer at every sampled index".into(),
    )])
}

fn spectrum_weight(n: u32, q: u32) -> Cells {
    let p = sp(n, q)?;
    let start = p.start_k();
    let factor = nf2(n);
    let mut first_exhibit = None;
    for k in start..start + 40 {
        let d = Rational::from_big(multiplicity(&p, k)?);
        let w = claimed_weight(&p, k)?;
        let ratio = &d / &w;
        if ratio != factor {
            return Err(projzeta_core::StructuralError::RouteMismatch {
                what: format!("weight ratio at n={n} q={q} k={k}"),
                left: ratio.to_compact_string(),
                right: factor.to_compact_string(),
            }
            .into());
        }
        if first_exhibit.is_none() {
            first_exhibit = Some((k, d, w));
        }
    }
    let (k0, d0, w0) = first_exhibit.expect("nonempty window");
    let residual = &factor - Rational::one();
    let detail = if residual.is_zero() {
        "d(k) = (2k+a) alpha(k) at every sampled index".to_string()
    } else {
        format!(
            "the displayed relation d(k) = (2k+a) alpha(k) fails: d(k)/((2k+a) alpha(k)) = \
             (n!)^2 = {} at all 40 sampled indices; at k={k0}: d = {} but (2k+a) alpha = {}",
            factor.to_compact_string(),
            d0.to_compact_string(),
            w0.to_compact_string()
        )
    };
    Ok(vec![exact(
        "spectrum-weight-identity",
        pm(&[("n", n as i64), ("q", q as i64)]),
        "printed",
        rat_residual(&residual),
        detail,
    )])
}

fn decomposition(n: u32, q: u32) -> Cells {
    let comps = zeta_components(n, q)?;
    let want: Vec<u32> = if q < n { vec![q, q + 1] } else { vec![n] };
    let ok = comps == want;
    Ok(vec![exact(
        "series-decomposition",
        pm(&[("n", n as i64), ("q", q as i64)]),
        "definition",
        if ok {
            Residual::Zero
        } else {
            Residual::Rational {
                value: "1".into(),
            }
        },
        format!("graded components of the degree-q zeta: {comps:?}"),
    )])
}

fn additivity(n: u32, q: u32) -> Cells {
    for m in 0..=3u32 {
        let total = zeta_q_neg(n, q, m, FormulaVariant::Corrected)?;
        let mut parts = Rational::zero();
        for c in zeta_components(n, q)? {
            parts += zetabar_neg(&sp(n, c)?, m, FormulaVariant::Corrected)?;
        }
        if total != parts {
            return Ok(vec![exact(
                "values-additivity",
                pm(&[("n", n as i64), ("q", q as i64), ("m", m as i64)]),
                "corrected",
                rat_residual(&(&total - &parts)),
                "graded sum does not reproduce the full value".into(),
            )]);
        }
    }
    Ok(vec![exact(
        "values-additivity",
        pm(&[("n", n as i64), ("q", q as i64), ("m_max", 3)]),
        "corrected",
        Residual::Zero,
        "value of the degree-q zeta equals the sum over its graded components".into(),
    )])
}

fn p1_closed() -> Cells {
    let p = sp(1, 1)?;
    for m in 0..=20u32 {
        let a = p1_zeta_neg(m);
        let b = zetabar_neg(&p, m, FormulaVariant::Corrected)?;
        if a != b {
            return Ok(vec![exact(
                "p1-closed-form",
                pm(&[("n", 1), ("q", 1), ("m", m as i64)]),
                "corrected",
                rat_residual(&(&a - &b)),
                "line closed form disagrees with the general reduction".into(),
            )]);
        }
    }
    Ok(vec![exact(
        "p1-closed-form",
        pm(&[("n", 1), ("q", 1), ("m_max", 20)]),
        "corrected",
        Residual::Zero,
        "Bernoulli closed form for the line matches the general reduction at every m <= 20"
            .into(),
    )])
}

// ------------------------------------------------------- generating series

fn alpha_polynomiality(n: u32, q: u32) -> Cells {
    let p = sp(n, q)?;
    let poly = alpha_poly(&p);
    let want_deg = if n == 1 { 1 } else { 2 * n as usize - 1 };
    let deg_ok = poly.degree() == Some(want_deg);
    let mut ok = deg_ok;
    for k in p.start_k()..p.start_k() + 30 {
        if alpha(&p, k)? != poly.eval(&Rational::from_int(k)) {
            ok = false;
            break;
        }
    }
    Ok(vec![exact(
        "alpha-polynomiality",
        pm(&[("n", n as i64), ("q", q as i64)]),
        "definition",
        if ok {
            Residual::Zero
        } else {
            Residual::Rational { value: "1".into() }
        },
        format!(
            "weights interpolate a degree {} polynomial over the whole index range",
            poly.degree().unwrap_or(0)
        ),
    )])
}

fn s_polynomiality(n: u32, q: u32) -> Cells {
    let p = sp(n, q)?;
    let r = r_polynomial(&p)?;
    let deg = (2 * n - 1 + q) as usize;
    let support = r.support();
    let ok = support.first() == Some(&(q as usize)) && support.last() == Some(&deg);
    Ok(vec![exact(
        "s-generating-polynomiality",
        pm(&[("n", n as i64), ("q", q as i64)]),
        "corrected",
        if ok {
            Residual::Zero
        } else {
            Residual::Rational { value: "1".into() }
        },
        format!(
            "numerator polynomial exists with order {q} and degree {deg}; \
             series matched through order {}",
            6 * n + q
        ),
    )])
}

fn r_degree_printed(n: u32, q: u32) -> Cells {
    let p = sp(n, q)?;
    let r = r_polynomial(&p)?;
    let actual = *r.support().last().expect("nonempty support") as i64;
    let bound = 2 * n as i64 - 1;
    Ok(vec![exact(
        "r-degree-printed",
        pm(&[("n", n as i64), ("q", q as i64)]),
        "printed",
        rat_residual(&Rational::from_int(actual - bound)),
        format!(
            "displayed degree bound {bound} is exceeded: the numerator has degree {actual} \
             (support starts at {q})"
        ),
    )])
}

fn s_ode(n: u32, q: u32) -> Cells {
    let p = sp(n, q)?;
    let order = (4 * n + 2 * q + 8) as usize;
    let with = ode_residual(&p, order, true);
    let bare = ode_residual(&p, order, false);
    let mut cells = vec![exact(
        "s-ode",
        pm(&[("n", n as i64), ("q", q as i64)]),
        "corrected",
        if with.is_zero_to_order() {
            Residual::Zero
        } else {
            Residual::Rational {
                value: first_nonzero(&with).to_compact_string(),
            }
        },
        format!(
            "differential identity holds identically with the derived prefactor \
             1/(n!(q-1)!(n-q)!) through order {order}"
        ),
    )];
    let bare_res = if bare.is_zero_to_order() {
        Residual::Zero
    } else {
        Residual::Rational {
            value: first_nonzero(&bare).to_compact_string(),
        }
    };
    cells.push(exact(
        "s-ode-printed",
        pm(&[("n", n as i64), ("q", q as i64)]),
        "printed",
        bare_res,
        "as displayed, without the normalizing prefactor (exact only when the prefactor is 1)"
            .into(),
    ));
    Ok(cells)
}

fn first_nonzero(s: &projzeta_core::series::QPowerSeries) -> Rational {
    s.coefficients()
        .iter()
        .find(|c| !c.is_zero())
        .cloned()
        .unwrap_or_else(Rational::zero)
}

fn t_closed_printed(n: u32, q: u32) -> Cells {
    let p = sp(n, q)?;
    let t = t_closed_form_printed(&p)?;
    let residual = match t.first_mismatch {
        None => Residual::Zero,
        Some(i) => rat_residual(&(t.printed_package.coeff(i) - t.computed.coeff(i))),
    };
    let detail = match t.first_mismatch {
        None => "displayed closed form matches the computed numerator".into(),
        Some(i) => format!(
            "first coefficient mismatch at degree {i}: displayed package gives {}, \
             computed numerator has {}",
            t.printed_package.coeff(i).to_compact_string(),
            t.computed.coeff(i).to_compact_string()
        ),
    };
    Ok(vec![exact(
        "t-closed-form-printed",
        pm(&[("n", n as i64), ("q", q as i64)]),
        "printed",
        residual,
        detail,
    )])
}

fn t_numerator_cell(n: u32, q: u32) -> Cells {
    let p = sp(n, q)?;
    let t = t_numerator(&p)?;
    let deg_ok = t.degree().unwrap_or(0) <= 2 * n as usize;
    let at_one = t.eval(&Rational::one());
    let want_one = Rational::from_big(binomial(2 * n as u64, n as u64));
    let at_zero = t.coeff(0);
    let want_zero = Rational::from_big(binomial((n + q) as u64, q as u64));
    let ok = deg_ok && at_one == want_one && at_zero == want_zero;
    Ok(vec![exact(
        "t-numerator",
        pm(&[("n", n as i64), ("q", q as i64)]),
        "corrected",
        if ok {
            Residual::Zero
        } else {
            rat_residual(&(&at_one - &want_one))
        },
        format!(
            "degree {} <= 2n; value at 1 is the central binomial {}; constant term {}",
            t.degree().unwrap_or(0),
            want_one.to_compact_string(),
            want_zero.to_compact_string()
        ),
    )])
}

fn partial_fraction(n: u32) -> Cells {
    // sum_k a_k prod_{j != k} (x + j) over k = 1..n+1 must collapse to 1,
    // i.e. the principal parts recombine to 1/prod_j (x+j).
    let g = partial_fraction_g(n);
    let mut total = QPolynomial::zero();
    for (idx, gk) in g.iter().enumerate() {
        let k = idx + 1;
        let mut prod = QPolynomial::constant(gk.clone());
        for j in 1..=(n as usize + 1) {
            if j != k {
                prod = prod.mul_linear(&Rational::from_int(j as i64));
            }
        }
        total = total + prod;
    }
    let ok = total == QPolynomial::one();
    Ok(vec![exact(
        "partial-fraction-identity",
        pm(&[("n", n as i64)]),
        "definition",
        if ok {
            Residual::Zero
        } else {
            rat_residual(&(total.coeff(0) - Rational::one()))
        },
        "principal-part coefficients recombine to the stated rational function".into(),
    )])
}

// ----------------------------------------------------------------- values

fn xi_reduction(n: u32, q: u32) -> Cells {
    let p = sp(n, q)?;
    for l in 0..=(2 * n + 2) {
        xi_value_neg(&p, l)?;
    }
    Ok(vec![exact(
        "xi-reduction",
        pm(&[("n", n as i64), ("q", q as i64), ("l_max", 2 * n as i64 + 2)]),
        "definition",
        Residual::Zero,
        "direct ladder reduction and the coefficient-family rearrangement agree at every \
         sampled anchor"
            .into(),
    )])
}

fn mh_values(n: u32) -> Cells {
    // The displayed value formula is missing its overall minus: as printed
    // it returns the negative of the true value.
    let mut exhibit = None;
    'outer: for l in 0..=3u32 {
        for alpha_i in 1..=3i64 {
            let a = Rational::from_int(alpha_i);
            let corrected = multi_hurwitz_neg(n, l, &a);
            if !corrected.is_zero() {
                exhibit = Some((l, alpha_i, corrected));
                break 'outer;
            }
        }
    }
    let (l, alpha_i, corrected) = exhibit.expect("some ladder value is nonzero");
    let printed = -&corrected;
    Ok(vec![exact(
        "multi-hurwitz-values",
        pm(&[("n", n as i64), ("l", l as i64), ("alpha", alpha_i)]),
        "printed",
        rat_residual(&(&printed - &corrected)),
        format!(
            "the value display lacks its overall minus: as printed it gives {} where the \
             true value is {} (its own proof carries the sign); the same passage also labels \
             the degree 2n-2 binomial weight coefficients with degree 2n-1 on the next line",
            printed.to_compact_string(),
            corrected.to_compact_string()
        ),
    )])
}

fn mh_residues(n: u32) -> Cells {
    let mut exhibit = None;
    for l in 1..=(2 * n - 1) {
        for alpha_i in 1..=4i64 {
            let a = Rational::from_int(alpha_i);
            let corrected = multi_hurwitz_residue(n, l, &a);
            let printed = multi_hurwitz_residue_printed(n, l, &a);
            if printed != corrected && exhibit.is_none() {
                exhibit = Some((l, alpha_i, printed, corrected));
            }
        }
    }
    Ok(vec![match exhibit {
        None => exact(
            "multi-hurwitz-residues",
            pm(&[("n", n as i64)]),
            "printed",
            Residual::Zero,
            "residue display agrees with the recomputed residues (the stray inner sum \
             collapses at width 1)"
                .into(),
        ),
        Some((l, alpha_i, printed, corrected)) => exact(
            "multi-hurwitz-residues",
            pm(&[("n", n as i64), ("l", l as i64), ("alpha", alpha_i)]),
            "printed",
            rat_residual(&(&printed - &corrected)),
            format!(
                "the residue display carries a stray inner sum with no summand dependence, \
                 multiplying each term by its index count: as printed {} vs recomputed {}",
                printed.to_compact_string(),
                corrected.to_compact_string()
            ),
        ),
    }])
}

fn beta_cell(n: u32, q: u32) -> Cells {
    let p = sp(n, q)?;
    // The coefficient family is certified through the exact agreement of the
    // two xi rearrangements it feeds; recompute that agreement here.
    for l in 0..=(2 * n + 1) {
        xi_value_neg(&p, l)?;
    }
    Ok(vec![exact(
        "beta-coefficients",
        pm(&[("n", n as i64), ("q", q as i64)]),
        "definition",
        Residual::Zero,
        "coefficient family reproduces the direct ladder reduction at every sampled anchor"
            .into(),
    )])
}

fn xi_residue_cells(n: u32, q: u32, digits: u32) -> Cells {
    let p = sp(n, q)?;
    let mut cells = Vec::new();

    // Printed gamma definition inherits the stray residue sum.
    let r = r_polynomial(&p)?;
    let a = p.a();
    let mut exhibit = None;
    for l in 1..=(2 * n as i64 - 1) {
        let corrected = gamma_residue(&p, l)?;
        let mut printed = Rational::zero();
        for k in r.support() {
            printed += r.coeff(k)
                * multi_hurwitz_residue_printed(n, l as u32, &Rational::from_int(k as i64 + a));
        }
        if printed != corrected && exhibit.is_none() {
            exhibit = Some((l, printed, corrected));
        }
    }
    cells.push(match exhibit {
        None => exact(
            "xi-residues",
            pm(&[("n", n as i64), ("q", q as i64)]),
            "printed",
            Residual::Zero,
            "residue family as displayed matches the recomputation".into(),
        ),
        Some((l, printed, corrected)) => exact(
            "xi-residues",
            pm(&[("n", n as i64), ("q", q as i64), ("l", l)]),
            "printed",
            rat_residual(&(&printed - &corrected)),
            format!(
                "residue definition inherits the stray inner sum: as displayed {} vs \
                 recomputed {}",
                printed.to_compact_string(),
                corrected.to_compact_string()
            ),
        ),
    });

    // Corrected residues against the independent pole-probe oracle.
    let l0 = 1i64;
    let want = gamma_residue(&p, l0)?;
    cells.push(doubled(
        "xi-residues",
        pm(&[("n", n as i64), ("q", q as i64), ("l", l0)]),
        "corrected",
        digits,
        "exact residue against Richardson pole probing of the numeric ladder",
        |d| {
            let ctx = NumericContext::new(d);
            let (val, err) = residue_at(&ctx, l0, |s| xi_numeric(&ctx, &p, s))?;
            let diff = ctx.sub(&val, &ctx.from_rational(&want));
            Ok(NumOutcome {
                diff: ctx.to_decimal_digits(&diff, 6),
                bound: "1e-25".into(),
                within: below_dec(&diff, 25) || diff.mag() <= err.mag() + 2,
                note: String::new(),
            })
        },
    )?);
    Ok(cells)
}

fn xi_value_cells(n: u32, q: u32, digits: u32) -> Cells {
    let p = sp(n, q)?;
    let mut cells = Vec::new();

    // Printed form: the coefficient-family sum enters without its minus;
    // equivalently printed = -true - 2 kappa (n+1)^l.
    let l = 0u32;
    let truth = xi_value_neg(&p, l)?;
    let kterm = kappa(&p) * Rational::from_int(n as i64 + 1).powi(l as i32);
    let printed = -&truth - Rational::from_int(2) * &kterm;
    cells.push(exact(
        "xi-values",
        pm(&[("n", n as i64), ("q", q as i64), ("l", l as i64)]),
        "printed",
        rat_residual(&(&printed - &truth)),
        format!(
            "the anchor-value display is missing the minus on its coefficient sum \
             (the constant term keeps its sign): as printed {} vs true {}",
            printed.to_compact_string(),
            truth.to_compact_string()
        ),
    ));

    // Corrected values against continuation of the numeric ladder.
    for l in 0..=2u32 {
        let want = xi_value_neg(&p, l)?;
        cells.push(doubled(
            "xi-values",
            pm(&[("n", n as i64), ("q", q as i64), ("l", l as i64)]),
            "corrected",
            digits,
            "exact anchor value against symmetric-offset continuation of the numeric ladder",
            |d| {
                let ctx = NumericContext::new(d);
                let anchor = Rational::from_int(-(l as i64));
                let (val, _err) = continue_at(&ctx, &anchor, |s| xi_numeric(&ctx, &p, s))?;
                let diff = ctx.sub(&val, &ctx.from_rational(&want));
                Ok(NumOutcome {
                    diff: ctx.to_decimal_digits(&diff, 6),
                    bound: "1e-15".into(),
                    within: below_dec(&diff, 15),
                    note: String::new(),
                })
            },
        )?);
    }
    Ok(cells)
}

fn start_index_cell(n: u32, q: u32) -> Cells {
    let at_q = SpectrumParams::new(n, q)?;
    let after = SpectrumParams::with_start(n, q, StartIndex::AfterQ)?;
    let v_at = zetabar_neg(&at_q, 0, FormulaVariant::Corrected)?;
    let v_after = zetabar_neg(&after, 0, FormulaVariant::Corrected)?;
    let dropped = claimed_weight(&at_q, q as i64)?;
    Ok(vec![exact(
        "start-index-printed",
        pm(&[("n", n as i64), ("q", q as i64), ("m", 0)]),
        "printed",
        rat_residual(&(&v_after - &v_at)),
        format!(
            "the displayed summation start k >= q+1 drops the nonzero k = q term of weight \
             (2q+a) alpha(q) = {}",
            dropped.to_compact_string()
        ),
    )])
}

fn zeta_values_printed(n: u32, q: u32) -> Cells {
    let p = sp(n, q)?;
    let mut cells = Vec::new();
    match zetabar_neg(&p, 0, FormulaVariant::Printed) {
        Err(Error::Domain(DomainError::PrintedFormUndefined { .. })) => {
            cells.push(cell(
                "zeta-values-printed",
                pm(&[("n", n as i64), ("q", q as i64), ("m", 0)]),
                "printed",
                Status::Refuted,
                Residual::Undefined,
                0,
                "undefined at m = 0: the displayed first-sum coefficient divides by m".into(),
            ));
        }
        Err(e) => return Err(e),
        Ok(v) => {
            let want = zetabar_neg(&p, 0, FormulaVariant::Corrected)?;
            cells.push(exact(
                "zeta-values-printed",
                pm(&[("n", n as i64), ("q", q as i64), ("m", 0)]),
                "printed",
                rat_residual(&(&v - &want)),
                "printed value at m = 0".into(),
            ));
        }
    }
    for m in 1..=3u32 {
        let printed = zetabar_neg(&p, m, FormulaVariant::Printed)?;
        let corrected = zetabar_neg(&p, m, FormulaVariant::Corrected)?;
        let residual = &printed - &corrected;
        cells.push(exact(
            "zeta-values-printed",
            pm(&[("n", n as i64), ("q", q as i64), ("m", m as i64)]),
            "printed",
            rat_residual(&residual),
            format!(
                "displayed value {} vs corrected {} (the displayed residue sum is missing \
                 a factor 1/2 and its first-sum coefficient misreads the pole argument)",
                printed.to_compact_string(),
                corrected.to_compact_string()
            ),
        ));
    }
    Ok(cells)
}

fn zeta_values_corrected(n: u32, q: u32, digits: u32) -> Cells {
    let p = sp(n, q)?;
    let mut cells = Vec::new();
    for m in 0..=3u32 {
        let want = zetabar_neg(&p, m, FormulaVariant::Corrected)?;
        cells.push(doubled(
            "zeta-values-corrected",
            pm(&[("n", n as i64), ("q", q as i64), ("m", m as i64)]),
            "corrected",
            digits,
            "exact rational value against symmetric-offset continuation of the \
             rearranged series",
            |d| {
                let ctx = NumericContext::new(d);
                let anchor = Rational::from_int(-(m as i64));
                let (val, _err) = continue_at(&ctx, &anchor, |s| claim_n1_eval(&ctx, &p, s))?;
                let diff = ctx.sub(&val, &ctx.from_rational(&want));
                Ok(NumOutcome {
                    diff: ctx.to_decimal_digits(&diff, 6),
                    bound: "1e-15".into(),
                    within: below_dec(&diff, 15),
                    note: String::new(),
                })
            },
        )?);
    }
    Ok(cells)
}

fn zeta_values_theta(n: u32, q: u32) -> Cells {
    let p = sp(n, q)?;
    let factor = nf2(n);
    let mut cells = Vec::new();
    for m in 0..=3u32 {
        let want = zetabar_neg(&p, m, FormulaVariant::Corrected)?;
        let hv = theta_coefficient(&p, m)?;
        let ctx = NumericContext::new(hv.digits);
        let diff = ctx.sub(&hv.value, &ctx.from_rational(&want));
        let tol_ok = below_dec(&diff, 8);
        let (status, detail) = if factor.is_one() {
            (
                if tol_ok {
                    Status::NumericAgree
                } else {
                    Status::NumericDisagree
                },
                "heat-trace expansion coefficient against the exact value".to_string(),
            )
        } else {
            let scaled = ctx.sub(&hv.value, &ctx.from_rational(&(&factor * &want)));
            (
                Status::NumericDisagree,
                format!(
                    "heat-trace weights are the factorial multiplicities, so the expansion \
                     coefficient is (n!)^2 = {} times the series-route value \
                     (|coefficient - (n!)^2 value| = {})",
                    factor.to_compact_string(),
                    ctx.to_decimal_digits(&scaled, 3)
                ),
            )
        };
        cells.push(cell(
            "zeta-values-theta-crosscheck",
            pm(&[("n", n as i64), ("q", q as i64), ("m", m as i64)]),
            "corrected",
            status,
            Residual::Numeric {
                value: ctx.to_decimal_digits(&diff, 6),
                error: ctx.to_decimal_digits(&hv.error, 3),
                digits: hv.digits,
            },
            hv.digits,
            detail,
        ));
    }
    Ok(cells)
}

fn eta_reduction(n: u32, q: u32, digits: u32) -> Cells {
    let p = sp(n, q)?;
    let mut cells = Vec::new();
    for l in 0..=2u32 {
        let want = eta_value_neg(&p, l)?;
        cells.push(doubled(
            "eta-reduction",
            pm(&[("n", n as i64), ("q", q as i64), ("l", l as i64)]),
            "corrected",
            digits,
            "undamped-series anchor value against continuation of its numeric ladder",
            |d| {
                let ctx = NumericContext::new(d);
                let anchor = Rational::from_int(-(l as i64));
                let (val, _err) = continue_at(&ctx, &anchor, |s| eta_numeric(&ctx, &p, s))?;
                let diff = ctx.sub(&val, &ctx.from_rational(&want));
                Ok(NumOutcome {
                    diff: ctx.to_decimal_digits(&diff, 6),
                    bound: "1e-15".into(),
                    within: below_dec(&diff, 15),
                    note: String::new(),
                })
            },
        )?);
    }
    Ok(cells)
}

fn series_claim(n: u32, q: u32, digits: u32) -> Cells {
    let p = sp(n, q)?;
    let factor = nf2(n);
    let expected_equal = factor.is_one();
    let base_detail = if expected_equal {
        "direct multiplicity-weighted sum against the rearranged series on 20 sample points"
            .to_string()
    } else {
        format!(
            "direct multiplicity-weighted sum and the rearranged series differ by the \
             exact weight factor (n!)^2 = {} at every one of 20 sample points",
            factor.to_compact_string()
        )
    };
    Ok(vec![doubled(
        "spectral-zeta-series",
        pm(&[("n", n as i64), ("q", q as i64), ("points", 20)]),
        "corrected",
        digits,
        &base_detail,
        |d| {
            let ctx = NumericContext::new(d);
            let tol = d as i64 - 15;
            let mut worst = Mpf::zero();
            let mut worst_scaled = Mpf::zero();
            let f = ctx.from_rational(&factor);
            for i in 1..=20i64 {
                let s_r = Rational::from_int(n as i64) + Rational::new(Int::from(3 * i), Int::from(20));
                let s = ctx.from_rational(&s_r);
                let direct = zetabar_direct(&ctx, &p, &s)?;
                let series = claim_n1_eval(&ctx, &p, &s)?;
                let diff = ctx.sub(&direct, &series);
                if diff.mag() > worst.mag() {
                    worst = diff;
                }
                let scaled = ctx.sub(&direct, &ctx.mul(&f, &series));
                if scaled.mag() > worst_scaled.mag() {
                    worst_scaled = scaled;
                }
            }
            let note = if expected_equal {
                String::new()
            } else {
                format!(
                    "max |direct - (n!)^2 series| = {}",
                    ctx.to_decimal_digits(&worst_scaled, 3)
                )
            };
            Ok(NumOutcome {
                diff: ctx.to_decimal_digits(&worst, 6),
                bound: format!("1e-{tol}"),
                within: below_dec(&worst, tol),
                note,
            })
        },
    )?])
}

// ------------------------------------------------------------- derivatives

fn xi_eta_derivatives_printed(n: u32, q: u32) -> Cells {
    let p = sp(n, q)?;
    let printed = four_derivatives_printed_range(p)?;
    let def = four_derivatives_definition(p)?;
    let mut differing = Vec::new();
    if printed.xi_prime_m1 != def.xi_prime_m1 {
        differing.push("xi'(-1)");
    }
    if printed.xi_prime_0 != def.xi_prime_0 {
        differing.push("xi'(0)");
    }
    if printed.eta_prime_m1 != def.eta_prime_m1 {
        differing.push("eta'(-1)");
    }
    if printed.eta_prime_0 != def.eta_prime_0 {
        differing.push("eta'(0)");
    }
    let residual = expr_residual(&printed.xi_prime_0 - &def.xi_prime_0);
    let detail = if differing.is_empty() {
        "the four displayed derivative values match the definition-first computation".into()
    } else {
        format!(
            "the displayed summation range stops at k = 2n-1 while the numerator support \
             runs to 2n-1+q; differing displays: {} (residual shown for xi'(0))",
            differing.join(", ")
        )
    };
    Ok(vec![exact(
        "xi-eta-derivatives-printed",
        pm(&[("n", n as i64), ("q", q as i64)]),
        "printed",
        residual,
        detail,
    )])
}

fn derivative_assembly_printed(n: u32, q: u32) -> Cells {
    let p = sp(n, q)?;
    let printed = zetabar_prime_printed(p, PrintedDerivativeForm::Assembly)?;
    let corrected = zetabar_prime_corrected(p)?;
    Ok(vec![exact(
        "derivative-assembly-printed",
        pm(&[("n", n as i64), ("q", q as i64)]),
        "printed",
        expr_residual(&printed - &corrected),
        "displayed derivative assembly with definition-first ingredient values, against \
         the corrected assembly (whose regularized tail keeps its finite part)"
            .into(),
    )])
}

fn w_coefficients(n_max: u32) -> Cells {
    let jmax = (2 * n_max).max(4);
    let pins = [
        (2u32, Rational::one()),
        (3, Rational::new(Int::from(1), Int::from(2))),
        (4, Rational::new(Int::from(5), Int::from(12))),
    ];
    for (j, want) in &pins {
        if *j <= jmax && w_coeff(*j) != *want {
            return Ok(vec![exact(
                "w-coefficients",
                pm(&[("j", *j as i64)]),
                "definition",
                rat_residual(&(w_coeff(*j) - want)),
                "pinned linearization weight mismatch".into(),
            )]);
        }
    }
    for j in 2..=jmax {
        let h = h_poly(j);
        let num = Rational::from_int(j as i64 - 2);
        let den = Rational::from_int((j * (j - 1)) as i64);
        let ok = h.degree() == Some(j as usize - 1)
            && h_at_zero(j) == &num / &den
            && w_coeff(j) == h.coeff(1);
        if !ok {
            return Ok(vec![exact(
                "w-coefficients",
                pm(&[("j", j as i64)]),
                "definition",
                Residual::Rational { value: "1".into() },
                "structural relation h_j(0) = (j-2)/(j(j-1)) or w_j = h_j'(0) failed".into(),
            )]);
        }
    }
    Ok(vec![exact(
        "w-coefficients",
        pm(&[("j_max", jmax as i64)]),
        "definition",
        Residual::Zero,
        "Gamma-ratio linearization weights match their polynomial forms and pinned values"
            .into(),
    )])
}

fn tail_series_identity(n: u32, q: u32, digits: u32) -> Cells {
    let p = sp(n, q)?;
    let omega = omega_value(p)?;
    Ok(vec![doubled(
        "tail-series-identity",
        pm(&[("n", n as i64), ("q", q as i64)]),
        "corrected",
        digits,
        "resummed regularized tail against direct summation of its defining series",
        |d| {
            let ctx = NumericContext::new(d);
            let assembled = eval_expr(&ctx, &omega)?;
            let direct = omega_tail_direct(&ctx, &p)?;
            let diff = ctx.sub(&assembled, &direct);
            let tol = d as i64 - 30;
            Ok(NumOutcome {
                diff: ctx.to_decimal_digits(&diff, 6),
                bound: format!("1e-{tol}"),
                within: below_dec(&diff, tol),
                note: String::new(),
            })
        },
    )?])
}

fn at_zero(mut b: LaurentBlock) -> LaurentBlock {
    b.anchor = 0;
    b
}

/// Shared head of the regularized-tail resummation: the eta terms and the
/// finite xi ladder, without the final top-degree term.
fn omega_head(p: SpectrumParams) -> Result<LaurentBlock, Error> {
    let n = p.n();
    let a = Rational::from_int(p.a());
    let two = Rational::from_int(2);
    let mut acc = gamma_shift_block(0)
        .mul(&at_zero(eta_laurent(p, 0)?))?
        .scale(&a);
    acc = acc.add(
        &gamma_shift_block(-1)
            .mul(&at_zero(eta_laurent(p, -1)?))?
            .scale(&-&two),
    );
    for i in 0..=(2 * n as i64 - 1) {
        let weight = a.powi(i as i32) / Rational::from_big(factorial(i as u64));
        let head = gamma_shift_block(i)
            .mul(&at_zero(xi_laurent(p, i)?))?
            .scale(&a);
        let tail = gamma_shift_block(i - 1)
            .mul(&at_zero(xi_laurent(p, i - 1)?))?
            .scale(&two);
        acc = acc.add(&head.add(&tail.scale(&Rational::from_int(-1))).scale(&-weight));
    }
    Ok(acc)
}

fn printed_block_cell(id: &str, n: u32, q: u32, block: LaurentBlock, defect: &str) -> Cells {
    let p = sp(n, q)?;
    let params = pm(&[("n", n as i64), ("q", q as i64)]);
    if !block.c_m1.is_zero() {
        return Ok(vec![exact(
            id,
            params,
            "printed",
            expr_residual(block.c_m1.clone()),
            format!("{defect}; the displayed form is not regular at 0: residue of its 1/s pole shown"),
        )]);
    }
    let corrected = omega_value(p)?;
    Ok(vec![exact(
        id,
        params,
        "printed",
        expr_residual(&block.c_0 - &corrected),
        format!("{defect}; difference of finite values at 0 shown"),
    )])
}

fn tail_integrand_printed(n: u32, q: u32) -> Cells {
    let p = sp(n, q)?;
    let a = Rational::from_int(p.a());
    let two = Rational::from_int(2);
    let top = 2 * n as i64 - 1;
    // As displayed, the final term's 1/(2n)! is dropped.
    let w_top = &two * a.powi(2 * n as i32);
    let block = omega_head(p)?.add(
        &gamma_shift_block(top)
            .mul(&at_zero(xi_laurent(p, top)?))?
            .scale(&w_top),
    );
    printed_block_cell(
        "tail-integrand-printed",
        n,
        q,
        block,
        "the substituted tail display drops the 1/(2n)! on its final term",
    )
}

fn omega_closed_printed(n: u32, q: u32) -> Cells {
    let p = sp(n, q)?;
    let a = Rational::from_int(p.a());
    // As displayed, the final two terms drift in both degree and weight:
    // +2 a^(2n+1) G(s+2n-2) xi(s+2n-2) - 4 a^(2n) G(s+2n-3) xi(s+2n-3).
    let s1 = 2 * n as i64 - 2;
    let s2 = 2 * n as i64 - 3;
    let t1 = gamma_shift_block(s1)
        .mul(&at_zero(xi_laurent(p, s1)?))?
        .scale(&(Rational::from_int(2) * a.powi(2 * n as i32 + 1)));
    let t2 = gamma_shift_block(s2)
        .mul(&at_zero(xi_laurent(p, s2)?))?
        .scale(&(Rational::from_int(-4) * a.powi(2 * n as i32)));
    let block = omega_head(p)?.add(&t1).add(&t2);
    printed_block_cell(
        "omega-closed-printed",
        n,
        q,
        block,
        "the closed tail display's final terms are mangled (degree and weight drift)",
    )
}

fn omega_conclusion(n: u32, q: u32) -> Cells {
    let p = sp(n, q)?;
    let printed = omega_printed_conclusion(p)?;
    let truth = omega_value(p)?;
    Ok(vec![exact(
        "omega-conclusion-printed",
        pm(&[("n", n as i64), ("q", q as i64)]),
        "printed",
        expr_residual(&printed - &truth),
        "the proof's concluding tail value lumps the finite parts of the Gamma products \
         into a vanishing factor"
            .into(),
    )])
}

fn derivative_corrected(n: u32, q: u32, digits: u32) -> Cells {
    let p = sp(n, q)?;
    let expr = zetabar_prime_corrected(p)?;
    let mut note = String::from(
        "pole cancellation and basis purity hold by construction (no gamma or zeta(m) terms)",
    );
    if n == 1 && q == 1 {
        let mut want = ExtZetaExpr::from_rational(Rational::new(Int::from(-1), Int::from(2)));
        want.add_zeta_prime(1, Rational::from_int(4));
        if expr == want {
            note.push_str("; exact anchor 4 zeta'(-1) - 1/2 confirmed");
        } else {
            note.push_str("; EXACT ANCHOR MISMATCH");
        }
    }
    Ok(vec![doubled(
        "derivative-corrected",
        pm(&[("n", n as i64), ("q", q as i64)]),
        "corrected",
        digits,
        &format!("exact derivative at 0 against the central-difference oracle; {note}"),
        |d| {
            let ctx = NumericContext::new(d);
            let exact_val = eval_expr(&ctx, &expr)?;
            let (oracle, _err) = derivative_at_zero(&ctx, |s| claim_n1_eval(&ctx, &p, s))?;
            let diff = ctx.sub(&exact_val, &oracle);
            let tol = (d as i64) / 4 - 5;
            Ok(NumOutcome {
                diff: ctx.to_decimal_digits(&diff, 6),
                bound: format!("1e-{tol}"),
                within: below_dec(&diff, tol),
                note: String::new(),
            })
        },
    )?])
}

// -------------------------------------------------- coefficient identities

fn expansion_integrality(n: u32) -> Cells {
    let mut exhibit = None;
    'outer: for q in 1..=n {
        let pq = pq_polys(n, &Rational::from_int(q as i64));
        for (name, poly) in [("P", &pq.p), ("Q", &pq.q)] {
            for i in 0..=poly.degree().unwrap_or(0) {
                let c = poly.coeff(i);
                if !c.is_integer() {
                    exhibit = Some((q, name, i, c));
                    break 'outer;
                }
            }
        }
    }
    Ok(vec![match exhibit {
        None => exact(
            "expansion-coefficients-integrality",
            pm(&[("n", n as i64)]),
            "printed",
            Residual::Zero,
            "the displayed integrality of the expansion coefficients holds here".into(),
        ),
        Some((q, name, i, c)) => exact(
            "expansion-coefficients-integrality",
            pm(&[("n", n as i64), ("q", q as i64), ("i", i as i64)]),
            "printed",
            Residual::Rational {
                value: c.to_compact_string(),
            },
            format!(
                "the display asserts integer coefficients, but {name} at q={q} has \
                 coefficient {} of degree {i}",
                c.to_compact_string()
            ),
        ),
    }])
}

fn pq_vanishing(n: u32) -> Cells {
    for q in 1..=n {
        let a = Rational::from_int((n + 1 - q) as i64);
        let pq = pq_polys(n, &Rational::from_int(q as i64));
        let top = Rational::one() / nf2(n);
        let ok = pq.p.eval(&a).is_zero()
            && pq.q.eval(&-&a).is_zero()
            && pq.p.leading_coeff() == top
            && pq.q.leading_coeff() == top
            && (0..=pq.p.degree().unwrap_or(0)).all(|i| {
                let sign = if i % 2 == 0 {
                    Rational::one()
                } else {
                    Rational::from_int(-1)
                };
                pq.p.coeff(i) == &sign * pq.q.coeff(i)
            });
        if !ok {
            return Ok(vec![exact(
                "pq-vanishing",
                pm(&[("n", n as i64), ("q", q as i64)]),
                "definition",
                Residual::Rational { value: "1".into() },
                "root/reflection/leading-coefficient structure failed".into(),
            )]);
        }
    }
    Ok(vec![exact(
        "pq-vanishing",
        pm(&[("n", n as i64)]),
        "definition",
        Residual::Zero,
        "interpolation polynomials vanish at the stated roots, reflect into each other \
         with alternating signs, and share leading coefficient 1/(n!)^2"
            .into(),
    )])
}

fn pq_degree_bounds(n: u32) -> Cells {
    for i in 1..=(2 * n as usize) {
        let bound = 2 * n as usize - i;
        let nodes: Vec<(Rational, Rational)> = (0..(bound + 2))
            .map(|t| {
                let q = Rational::new(Int::from(t as i64), Int::from(2))
                    + Rational::new(Int::from(1), Int::from(3));
                let val = pq_polys(n, &q).p.coeff(i);
                (q, val)
            })
            .collect();
        let fit = QPolynomial::interpolate(&nodes)?;
        if fit.degree().unwrap_or(0) > bound {
            return Ok(vec![exact(
                "pq-degree-bounds",
                pm(&[("n", n as i64), ("i", i as i64)]),
                "definition",
                Residual::Rational {
                    value: fit.leading_coeff().to_compact_string(),
                },
                format!(
                    "coefficient {i} has degree {} in the form parameter, above the bound {bound}",
                    fit.degree().unwrap_or(0)
                ),
            )]);
        }
    }
    Ok(vec![exact(
        "pq-degree-bounds",
        pm(&[("n", n as i64)]),
        "definition",
        Residual::Zero,
        "coefficient i is a polynomial of degree at most 2n - i in the form parameter".into(),
    )])
}

fn alpha_shift(n: u32, q: u32) -> Cells {
    let p = sp(n, q)?;
    let direct = bold_c(p);
    let via_b = bold_c_bsum(p)?;
    let ok = direct.c == via_b.c && direct.c_tilde == via_b.c_tilde;
    Ok(vec![exact(
        "alpha-shift-coefficients",
        pm(&[("n", n as i64), ("q", q as i64)]),
        "definition",
        if ok {
            Residual::Zero
        } else {
            Residual::Rational { value: "1".into() }
        },
        "weight-polynomial shift coefficients agree along their two expansions".into(),
    )])
}

fn xi_derivative_closed(n: u32, q: u32) -> Cells {
    let p = sp(n, q)?;
    let printed = four_derivatives_printed_boldc(p);
    let def = four_derivatives_definition(p)?;
    let residual = expr_residual(&printed.xi_prime_0 - &def.xi_prime_0);
    let mut differing = Vec::new();
    if printed.xi_prime_m1 != def.xi_prime_m1 {
        differing.push("xi'(-1)");
    }
    if printed.xi_prime_0 != def.xi_prime_0 {
        differing.push("xi'(0)");
    }
    if printed.eta_prime_m1 != def.eta_prime_m1 {
        differing.push("eta'(-1)");
    }
    if printed.eta_prime_0 != def.eta_prime_0 {
        differing.push("eta'(0)");
    }
    let detail = if differing.is_empty() {
        "the four closed derivative displays match the definition-first values".into()
    } else {
        format!(
            "the closed derivative displays drop the offset log corrections on the \
             derivative ladder (their constant-term logs are correct); differing displays: \
             {} (residual shown for xi'(0))",
            differing.join(", ")
        )
    };
    Ok(vec![exact(
        "xi-derivative-closed-printed",
        pm(&[("n", n as i64), ("q", q as i64)]),
        "printed",
        residual,
        detail,
    )])
}

fn derivative_closed(n: u32, q: u32) -> Cells {
    let p = sp(n, q)?;
    let printed = zetabar_prime_printed(p, PrintedDerivativeForm::XiClosed)?;
    let corrected = zetabar_prime_corrected(p)?;
    Ok(vec![exact(
        "derivative-closed-printed",
        pm(&[("n", n as i64), ("q", q as i64)]),
        "printed",
        expr_residual(&printed - &corrected),
        "closed single-sum derivative display against the corrected assembly".into(),
    )])
}

fn alpha_closed_printed(n: u32, q: u32) -> Cells {
    let p = sp(n, q)?;
    let truth = bold_c(p);
    let printed = bold_c_closed(p, ClosedFormVariant::Printed);
    let mut exhibit = None;
    for (i, (pc, tc)) in printed.c.iter().zip(truth.c.iter()).enumerate() {
        if pc != tc {
            exhibit = Some(("c", i, pc.clone(), tc.clone()));
            break;
        }
    }
    if exhibit.is_none() {
        for (i, (pc, tc)) in printed.c_tilde.iter().zip(truth.c_tilde.iter()).enumerate() {
            if pc != tc {
                exhibit = Some(("c~", i, pc.clone(), tc.clone()));
                break;
            }
        }
    }
    Ok(vec![match exhibit {
        None => exact(
            "alpha-coefficients-closed-printed",
            pm(&[("n", n as i64), ("q", q as i64)]),
            "printed",
            Residual::Zero,
            "closed-form shift coefficients match the definition-first weights here".into(),
        ),
        Some((side, i, pc, tc)) => exact(
            "alpha-coefficients-closed-printed",
            pm(&[("n", n as i64), ("q", q as i64), ("i", i as i64)]),
            "printed",
            rat_residual(&(&pc - &tc)),
            format!(
                "closed form is off by the factor (n+1-q) and carries the wrong sign \
                 pattern on one side: {side}[{i}] displayed {} vs definition-first {}",
                pc.to_compact_string(),
                tc.to_compact_string()
            ),
        ),
    }])
}

fn alpha_closed_rescaled(n: u32, q: u32) -> Cells {
    let p = sp(n, q)?;
    let truth = bold_c(p);
    let rescaled = bold_c_closed(p, ClosedFormVariant::Rescaled);
    let ok = rescaled.c == truth.c && rescaled.c_tilde == truth.c_tilde;
    Ok(vec![exact(
        "alpha-coefficients-closed-rescaled",
        pm(&[("n", n as i64), ("q", q as i64)]),
        "corrected",
        if ok {
            Residual::Zero
        } else {
            Residual::Rational { value: "1".into() }
        },
        "with the (n+1-q) rescale and the sign pattern read as (-1)^(i-p), the closed \
         form reproduces the definition-first weights exactly"
            .into(),
    )])
}

fn alpha_vanishing(n: u32) -> Cells {
    let agg = alternating_bold_c(n)?;
    for j in (n as usize)..agg.c.len() {
        if !agg.c[j].is_zero() || !agg.c_tilde[j].is_zero() {
            return Ok(vec![exact(
                "alpha-coefficients-vanishing",
                pm(&[("n", n as i64), ("j", j as i64)]),
                "definition",
                rat_residual(&agg.c[j]),
                "alternating aggregate fails to vanish at a high index".into(),
            )]);
        }
    }
    Ok(vec![exact(
        "alpha-coefficients-vanishing",
        pm(&[("n", n as i64)]),
        "definition",
        Residual::Zero,
        "alternating aggregates of the shift coefficients vanish from index n on".into(),
    )])
}

fn derivative_aggregated(n: u32, q: u32) -> Cells {
    let p = sp(n, q)?;
    let printed = zetabar_prime_printed(p, PrintedDerivativeForm::Aggregated)?;
    let corrected = zetabar_prime_corrected(p)?;
    Ok(vec![exact(
        "derivative-aggregated-printed",
        pm(&[("n", n as i64), ("q", q as i64)]),
        "printed",
        expr_residual(&printed - &corrected),
        "fully aggregated derivative display against the corrected assembly; its \
         zeta'(0) coefficient also contradicts the display it is derived from \
         (extra 1/a and opposite sign)"
            .into(),
    )])
}

// ----------------------------------------------------------------- torsion

fn torsion_cells(n: u32, digits: u32) -> Cells {
    let mut cells = Vec::new();
    let corrected = torsion_expr(n)?;
    let printed = torsion_printed(n)?;
    cells.push(exact(
        "torsion-closed-printed",
        pm(&[("n", n as i64)]),
        "printed",
        expr_residual(&printed - &corrected),
        "displayed torsion closed form against the corrected alternating combination".into(),
    ));

    let mut note =
        String::from("alternating combination assembled along two routes that must agree");
    if n == 1 {
        let mut want = ExtZetaExpr::from_rational(Rational::new(Int::from(-1), Int::from(2)));
        want.add_zeta_prime(1, Rational::from_int(4));
        note.push_str(if corrected == want {
            "; exact anchor 4 zeta'(-1) - 1/2 confirmed"
        } else {
            "; EXACT ANCHOR MISMATCH"
        });
    }
    if n <= 3 {
        let expr = corrected.clone();
        cells.push(doubled(
            "torsion-corrected",
            pm(&[("n", n as i64)]),
            "corrected",
            digits,
            &format!("{note}; numeric check against the alternating central-difference oracle"),
            |d| {
                let ctx = NumericContext::new(d);
                let exact_val = eval_expr(&ctx, &expr)?;
                let mut oracle = Mpf::zero();
                for q in 1..=n {
                    let pq = sp(n, q)?;
                    let (dv, _e) = derivative_at_zero(&ctx, |s| claim_n1_eval(&ctx, &pq, s))?;
                    oracle = if q % 2 == 1 {
                        ctx.add(&oracle, &dv)
                    } else {
                        ctx.sub(&oracle, &dv)
                    };
                }
                let diff = ctx.sub(&exact_val, &oracle);
                Ok(NumOutcome {
                    diff: ctx.to_decimal_digits(&diff, 6),
                    bound: "1e-8".into(),
                    within: below_dec(&diff, 8),
                    note: String::new(),
                })
            },
        )?);
    } else {
        cells.push(exact(
            "torsion-corrected",
            pm(&[("n", n as i64)]),
            "corrected",
            Residual::Zero,
            format!("{note}; numeric oracle run for n <= 3 only"),
        ));
    }

    // Structural claim: only zeta'(-p) for odd p with 1 <= p <= n, plus a
    // rational and logs of positive integers. Recorded, never fatal.
    let mut bad: Option<(u32, Rational)> = None;
    for (p, c) in &corrected.zeta_prime {
        if (*p % 2 == 0 || *p > n) && !c.is_zero() {
            bad = Some((*p, c.clone()));
            break;
        }
    }
    cells.push(match bad {
        None => exact(
            "torsion-structure-odd-zeta",
            pm(&[("n", n as i64)]),
            "corrected",
            Residual::Zero,
            "only odd-order derivative terms with order at most n appear, alongside a \
             rational and integer logs"
                .into(),
        ),
        Some((p, c)) => exact(
            "torsion-structure-odd-zeta",
            pm(&[("n", n as i64), ("p", p as i64)]),
            "corrected",
            rat_residual(&c),
            format!(
                "structural claim fails: zeta'(-{p}) appears with coefficient {}",
                c.to_compact_string()
            ),
        ),
    });
    Ok(cells)
}

// ---------------------------------------------------------------- numerics

fn hurwitz_anchor(digits: u32) -> Cells {
    let mut cells = Vec::new();
    cells.push(doubled(
        "hurwitz-bernoulli-anchor",
        pm(&[("l_max", 10), ("a_max", 10)]),
        "corrected",
        digits,
        "continuation at the nonpositive integers against the Bernoulli closed form",
        |d| {
            let ctx = NumericContext::new(d);
            let mut worst = Mpf::zero();
            for l in 0..=10u32 {
                for a in 1..=10u64 {
                    let got = hurwitz_zeta(&ctx, &Mpf::from_int(-(l as i64)), a)?;
                    let want = ctx.from_rational(&hurwitz_zeta_neg_int(
                        l,
                        &Rational::from_int(a as i64),
                    ));
                    let diff = ctx.sub(&got, &want);
                    if diff.mag() > worst.mag() {
                        worst = diff;
                    }
                }
            }
            let tol = d as i64 - 10;
            Ok(NumOutcome {
                diff: ctx.to_decimal_digits(&worst, 6),
                bound: format!("1e-{tol}"),
                within: below_dec(&worst, tol),
                note: String::new(),
            })
        },
    )?);
    cells.push(doubled(
        "hurwitz-bernoulli-anchor",
        pm(&[("anchor", 0)]),
        "corrected",
        digits,
        "derivative at 0 against -log(2 pi)/2",
        |d| {
            let ctx = NumericContext::new(d);
            let (_v, dv) = hurwitz_zeta_deriv(&ctx, &Mpf::zero(), 1)?;
            let two_pi = ctx.mul(&ctx.pi(), &Mpf::from_int(2));
            let want = ctx.ln(&two_pi).scale2(-1).neg();
            let diff = ctx.sub(&dv, &want);
            let tol = d as i64 - 5;
            Ok(NumOutcome {
                diff: ctx.to_decimal_digits(&diff, 6),
                bound: format!("1e-{tol}"),
                within: below_dec(&diff, tol),
                note: String::new(),
            })
        },
    )?);
    Ok(cells)
}

fn conservativity(digits: u32) -> Cells {
    let p = sp(1, 1)?;
    let mut cells = Vec::new();
    let ops: Vec<(
        &str,
        Box<dyn Fn(&NumericContext) -> Result<(Mpf, Mpf), Error> + Send + Sync>,
    )> = vec![
        (
            "continuation",
            Box::new(move |ctx| {
                continue_at(ctx, &Rational::from_int(-1), |s| claim_n1_eval(ctx, &p, s))
            }),
        ),
        (
            "derivative",
            Box::new(move |ctx| derivative_at_zero(ctx, |s| claim_n1_eval(ctx, &p, s))),
        ),
        (
            "residue",
            Box::new(move |ctx| residue_at(ctx, 1, |s| xi_numeric(ctx, &p, s))),
        ),
    ];
    for (name, f) in ops {
        let lo_ctx = NumericContext::new(digits);
        let (v1, e1) = f(&lo_ctx)?;
        let hi_ctx = NumericContext::new(digits * 2);
        let (v2, _e2) = f(&hi_ctx)?;
        let moved = hi_ctx.sub(&v2, &v1).abs();
        let within = hi_ctx.sub(&e1, &moved).is_negative() == false;
        cells.push(cell(
            "numerics-conservativity",
            pm(&[("n", 1), ("q", 1)]),
            name,
            if within {
                Status::NumericAgree
            } else {
                Status::NumericDisagree
            },
            Residual::Numeric {
                value: hi_ctx.to_decimal_digits(&moved, 6),
                error: lo_ctx.to_decimal_digits(&e1, 3),
                digits,
            },
            digits,
            "doubling the precision moves the value by no more than the reported bound"
                .into(),
        ));
    }
    Ok(cells)
}

// ----------------------------------------------------------------- driver

pub fn run_verify(n_max: u32, digits: u32) -> Result<VerificationReport, Error> {
    assert!(n_max >= 1, "sweep needs n >= 1");
    let mut jobs: Vec<Job> = Vec::new();

    for (n, q) in pairs(n_max) {
        jobs.push(Box::new(move || spectrum_integrality(n, q)));
        jobs.push(Box::new(move || spectrum_weight(n, q)));
        jobs.push(Box::new(move || decomposition(n, q)));
        jobs.push(Box::new(move || additivity(n, q)));
        jobs.push(Box::new(move || alpha_polynomiality(n, q)));
        jobs.push(Box::new(move || s_polynomiality(n, q)));
        jobs.push(Box::new(move || r_degree_printed(n, q)));
        jobs.push(Box::new(move || s_ode(n, q)));
        jobs.push(Box::new(move || t_closed_printed(n, q)));
        jobs.push(Box::new(move || t_numerator_cell(n, q)));
        jobs.push(Box::new(move || xi_reduction(n, q)));
        jobs.push(Box::new(move || beta_cell(n, q)));
        jobs.push(Box::new(move || xi_residue_cells(n, q, digits)));
        jobs.push(Box::new(move || xi_value_cells(n, q, digits)));
        jobs.push(Box::new(move || start_index_cell(n, q)));
        jobs.push(Box::new(move || zeta_values_printed(n, q)));
        jobs.push(Box::new(move || zeta_values_corrected(n, q, digits)));
        jobs.push(Box::new(move || zeta_values_theta(n, q)));
        jobs.push(Box::new(move || eta_reduction(n, q, digits)));
        jobs.push(Box::new(move || series_claim(n, q, digits)));
        jobs.push(Box::new(move || xi_eta_derivatives_printed(n, q)));
        jobs.push(Box::new(move || derivative_assembly_printed(n, q)));
        jobs.push(Box::new(move || tail_series_identity(n, q, digits)));
        jobs.push(Box::new(move || tail_integrand_printed(n, q)));
        jobs.push(Box::new(move || omega_closed_printed(n, q)));
        jobs.push(Box::new(move || omega_conclusion(n, q)));
        jobs.push(Box::new(move || derivative_corrected(n, q, digits)));
        jobs.push(Box::new(move || alpha_shift(n, q)));
        jobs.push(Box::new(move || xi_derivative_closed(n, q)));
        jobs.push(Box::new(move || derivative_closed(n, q)));
        jobs.push(Box::new(move || alpha_closed_printed(n, q)));
        jobs.push(Box::new(move || alpha_closed_rescaled(n, q)));
        jobs.push(Box::new(move || derivative_aggregated(n, q)));
    }
    for n in 1..=n_max {
        jobs.push(Box::new(move || partial_fraction(n)));
        jobs.push(Box::new(move || mh_values(n)));
        jobs.push(Box::new(move || mh_residues(n)));
        jobs.push(Box::new(move || expansion_integrality(n)));
        jobs.push(Box::new(move || pq_vanishing(n)));
        jobs.push(Box::new(move || pq_degree_bounds(n)));
        jobs.push(Box::new(move || alpha_vanishing(n)));
        jobs.push(Box::new(move || torsion_cells(n, digits)));
    }
    jobs.push(Box::new(move || p1_closed()));
    jobs.push(Box::new(move || w_coefficients(n_max)));
    jobs.push(Box::new(move || hurwitz_anchor(digits)));
    jobs.push(Box::new(move || conservativity(digits)));

    let results: Result<Vec<Vec<ReportCell>>, Error> =
        jobs.par_iter().map(|job| job()).collect();
    let cells: Vec<ReportCell> = results?.into_iter().flatten().collect();
    Ok(VerificationReport::assemble(n_max, digits, cells))
}

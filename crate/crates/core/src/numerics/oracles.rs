//! Independent numerical continuations of the exact pipeline: raw spectral
//! sums, binomially resummed Dirichlet tails, ladder combinations through
//! shared Hurwitz tables, heat-trace extraction of special values, and
//! difference-quotient extrapolation toward anchor points.

use super::em::{integer_zeta, OffsetHurwitz};
use super::mpf::{Mpf, NumericContext};
use crate::combinatorics::{binomial, factorial, rising_binomial_coeffs};
use crate::error::{Error, NumericError};
use crate::genfun::{kappa, r_polynomial};
use crate::rational::{Int, Rational};
use crate::spectrum::{alpha_poly, eigenvalue, multiplicity, SpectrumParams};
use std::collections::HashMap;

const LN10: f64 = std::f64::consts::LN_10;

/// Terms needed for a geometric tail losing ln_rate nats per term to sink
/// below the early-exit threshold, which sits ctx.bits() + 10 bits under
/// the running scale.
fn decay_budget(ctx: &NumericContext, ln_rate: f64) -> i64 {
    assert!(ln_rate > 0.0, "tail must contract");
    ((ctx.bits() + 32) as f64 * std::f64::consts::LN_2 / ln_rate).ceil() as i64 + 8
}

/// Collapsed ladder data for one of the auxiliary Dirichlet combinations:
/// per support point its offset, its series coefficient, and weights with
/// sum_p w(alpha, p) zeta(s - p, alpha) equal to the inner double sum.
pub(crate) struct LadderTable {
    rows: Vec<(u64, Mpf, Vec<Mpf>)>,
    kappa_val: Mpf,
    kbase: u64,
}

pub(crate) fn ladder_table(
    ctx: &NumericContext,
    p: &SpectrumParams,
    eta: bool,
) -> Result<LadderTable, Error> {
    let n = p.n();
    let a = p.a();
    let data = r_polynomial(p)?;
    let b = rising_binomial_coeffs(2 * n - 2);
    let deg = (2 * n - 2) as usize;
    let mut rows = Vec::new();
    for k in data.support() {
        let alpha_i = if eta { k as i64 } else { k as i64 + a };
        assert!(alpha_i >= 1);
        let c = ctx.from_rational(&data.coeff(k));
        let neg_alpha = Rational::from_int(-alpha_i);
        let mut w = Vec::with_capacity(deg + 1);
        for pp in 0..=deg {
            let mut acc = Rational::zero();
            let mut pow = Rational::one();
            for (i, bi) in b.iter().enumerate().skip(pp) {
                let choose = Rational::from_big(binomial(i as u64, pp as u64));
                acc = &acc + &(&(bi * &choose) * &pow);
                pow = &pow * &neg_alpha;
            }
            w.push(ctx.from_rational(&acc));
        }
        rows.push((alpha_i as u64, c, w));
    }
    let kbase = if eta { p.q() as u64 } else { (n + 1) as u64 };
    Ok(LadderTable {
        rows,
        kappa_val: ctx.from_rational(&kappa(p)),
        kbase,
    })
}

impl LadderTable {
    fn alphas(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.0).collect()
    }

    fn window(&self) -> i64 {
        self.rows[0].2.len() as i64 - 1
    }

    /// Value at base shift t0; kpow must equal kappa * kbase^(-(s0+t0)).
    fn value_at(
        &self,
        ctx: &NumericContext,
        oh: &OffsetHurwitz,
        t0: i64,
        kpow: &Mpf,
    ) -> Result<Mpf, Error> {
        let mut acc = kpow.neg();
        for (alpha, c, w) in &self.rows {
            let mut inner = Mpf::zero();
            for (pp, wm) in w.iter().enumerate() {
                inner = ctx.add(&inner, &ctx.mul(wm, &oh.zeta(t0 - pp as i64, *alpha)?));
            }
            acc = ctx.add(&acc, &ctx.mul(c, &inner));
        }
        Ok(acc)
    }
}

fn ladder_numeric(
    ctx: &NumericContext,
    p: &SpectrumParams,
    s: &Mpf,
    eta: bool,
) -> Result<Mpf, Error> {
    let table = ladder_table(ctx, p, eta)?;
    let oh = OffsetHurwitz::build(ctx, s, &table.alphas(), -table.window(), 0)?;
    let kpow = ctx.mul(&table.kappa_val, &ctx.int_pow_neg(table.kbase, s));
    table.value_at(ctx, &oh, 0, &kpow)
}

/// xi_q(s) by definition: the weighted ladder of Hurwitz values at offsets
/// k + a minus the kappa term at base n + 1.
pub fn xi_numeric(ctx: &NumericContext, p: &SpectrumParams, s: &Mpf) -> Result<Mpf, Error> {
    ladder_numeric(ctx, p, s, false)
}

/// eta_q(s) by definition: offsets k, kappa term at base q.
pub fn eta_numeric(ctx: &NumericContext, p: &SpectrumParams, s: &Mpf) -> Result<Mpf, Error> {
    ladder_numeric(ctx, p, s, true)
}

/// Right-hand side of the splice identity: the infinite j-sum of gamma
/// ratio weights against xi(2s + j - 1). Terms decay like (a/(n+1))^j;
/// all inner Hurwitz values come from one shared table at base 2s.
pub fn claim_n1_eval(ctx: &NumericContext, p: &SpectrumParams, s: &Mpf) -> Result<Mpf, Error> {
    let a = p.a();
    let rho = a as f64 / (p.n() + 1) as f64;
    let jmax = decay_budget(ctx, -rho.ln());
    let two_s = s.scale2(1);
    let table = ladder_table(ctx, p, false)?;
    let oh = OffsetHurwitz::build(ctx, &two_s, &table.alphas(), -1 - table.window(), jmax - 1)?;
    let kb = Mpf::from_int(table.kbase as i64);
    let k_recip = ctx.recip(&kb);
    // kappa * kbase^(-(2s + j - 1)) starting at j = 0
    let mut kpow = ctx.mul(
        &ctx.mul(&table.kappa_val, &ctx.int_pow_neg(table.kbase, &two_s)),
        &kb,
    );
    let a_mpf = Mpf::from_int(a);
    let mut apow = Mpf::from_int(1);
    let one = Mpf::from_int(1);
    // Gamma(s + j - 1)/(Gamma(s) j!) at j = 0
    let mut g = ctx.recip(&s.sub(&one));
    let mut acc = Mpf::zero();
    let mut scale_mag = i64::MIN / 2;
    for j in 0..=jmax {
        if j > 0 {
            let num = ctx.add(s, &Mpf::from_int(j - 2));
            g = ctx.div(&ctx.mul(&g, &num), &Mpf::from_int(j));
        }
        let xi = table.value_at(ctx, &oh, j - 1, &kpow)?;
        let fac = ctx.add(&two_s, &Mpf::from_int(j - 2));
        let term = ctx.mul(&ctx.mul(&apow, &g), &ctx.mul(&fac, &xi));
        acc = ctx.add(&acc, &term);
        scale_mag = scale_mag.max(term.mag());
        if j >= 4 && term.mag() < scale_mag - ctx.bits() - 10 {
            return Ok(acc);
        }
        apow = ctx.mul(&apow, &a_mpf);
        kpow = ctx.mul(&kpow, &k_recip);
    }
    Err(NumericError::NoConvergence {
        what: "ratio-weighted ladder sum".into(),
        limit: jmax as usize,
    }
    .into())
}

/// Definition-first continuation of the spectral sum: the first terms kept
/// verbatim with factorial multiplicities, the remainder resummed through
/// binomial expansion of (1 + a/k)^(-s) into shifted zeta values at a
/// single integer offset.
pub fn zetabar_direct(ctx: &NumericContext, p: &SpectrumParams, s: &Mpf) -> Result<Mpf, Error> {
    let n = p.n() as i64;
    let a = p.a();
    let start = p.start_k();
    let kcut = (4 * a).max(8).max(start + 2);
    let mut acc = Mpf::zero();
    for k in start..kcut {
        let d = multiplicity(p, k)?;
        let lam = eigenvalue(p, k)?;
        let pw = ctx.int_pow_neg(lam as u64, s);
        acc = ctx.add(&acc, &ctx.mul(&Mpf::from_bigint(d), &pw));
    }
    let ratio = kcut as f64 / a as f64;
    let rmax = decay_budget(ctx, ratio.ln());
    let two_s = s.scale2(1);
    // (2x + a)(n!)^2 alpha(x) takes the multiplicity values at integers
    let dcoeffs: Vec<Mpf> = {
        let nf = factorial(p.n() as u64);
        let half_a = Rational::new(Int::from(a), Int::from(2));
        let lead = Rational::from_big(&nf * &nf) * Rational::from_int(2);
        alpha_poly(p)
            .mul_linear(&half_a)
            .scale(&lead)
            .coeffs()
            .iter()
            .map(|c| ctx.from_rational(c))
            .collect()
    };
    let oh = OffsetHurwitz::build(ctx, &two_s, &[kcut as u64], -(2 * n - 1), rmax)?;
    let mut binc = Mpf::from_int(1); // binom(-s, r)
    let a_mpf = Mpf::from_int(a);
    let mut apow = Mpf::from_int(1);
    let mut scale_mag = acc.mag();
    for r in 0..=rmax {
        let mut inner = Mpf::zero();
        for (u, du) in dcoeffs.iter().enumerate() {
            inner = ctx.add(&inner, &ctx.mul(du, &oh.zeta(r - u as i64, kcut as u64)?));
        }
        let term = ctx.mul(&ctx.mul(&binc, &apow), &inner);
        acc = ctx.add(&acc, &term);
        scale_mag = scale_mag.max(term.mag());
        if r >= 4 && term.mag() < scale_mag - ctx.bits() - 10 {
            return Ok(acc);
        }
        let num = ctx.sub(&s.neg(), &Mpf::from_int(r));
        binc = ctx.div(&ctx.mul(&binc, &num), &Mpf::from_int(r + 1));
        apow = ctx.mul(&apow, &a_mpf);
    }
    Err(NumericError::NoConvergence {
        what: "binomial spectral resummation".into(),
        limit: rmax as usize,
    }
    .into())
}

/// Extrapolate f toward the anchor from symmetric offsets 1e-8 * 2^(-t):
/// averaging kills the odd terms, then Neville in delta^2 with ratio 4.
/// Returns (value, error estimate).
pub fn continue_at<F>(
    ctx: &NumericContext,
    anchor: &Rational,
    mut f: F,
) -> Result<(Mpf, Mpf), Error>
where
    F: FnMut(&Mpf) -> Result<Mpf, Error>,
{
    let s0 = ctx.from_rational(anchor);
    let base = ctx.from_rational(&Rational::new(Int::from(1), Int::from(100_000_000)));
    let levels = 4usize;
    let mut row: Vec<Mpf> = Vec::with_capacity(levels);
    let mut diag: Vec<Mpf> = Vec::with_capacity(levels);
    for t in 0..levels {
        let d = base.scale2(-(t as i64));
        let fp = f(&ctx.add(&s0, &d))?;
        let fm = f(&ctx.sub(&s0, &d))?;
        let mut cur = ctx.add(&fp, &fm).scale2(-1);
        let mut nrow = Vec::with_capacity(t + 1);
        let mut weight = 1i64;
        for prev in row.iter().take(t) {
            weight *= 4;
            nrow.push(cur.clone());
            let scaled = ctx.mul_i64(&cur, weight);
            cur = ctx.div(
                &ctx.sub(&scaled, prev),
                &Mpf::from_int(weight - 1),
            );
        }
        nrow.push(cur.clone());
        row = nrow;
        diag.push(cur);
    }
    let err = ctx.sub(&diag[levels - 1], &diag[levels - 2]).abs().scale2(2);
    Ok((diag[levels - 1].clone(), err))
}

/// Central difference at 0 with one Richardson step; h = 10^(-digits/3)
/// balances truncation against the precision of f. Returns (value, error).
pub fn derivative_at_zero<F>(ctx: &NumericContext, mut f: F) -> Result<(Mpf, Mpf), Error>
where
    F: FnMut(&Mpf) -> Result<Mpf, Error>,
{
    let e = ((ctx.digits() + 2) / 3).max(8) as i64;
    let h = ctx.powi(&Mpf::from_int(10), -e);
    let h2 = h.scale2(-1);
    let d1 = ctx.div(&ctx.sub(&f(&h)?, &f(&h.neg())?), &h.scale2(1));
    let d2 = ctx.div(&ctx.sub(&f(&h2)?, &f(&h2.neg())?), &h);
    let diff = ctx.sub(&d2, &d1);
    let val = ctx.add(&d2, &ctx.div(&diff, &Mpf::from_int(3)));
    Ok((val, diff.abs()))
}

/// Residue of f at an integer anchor from delta * f(anchor + delta),
/// Richardson with ratio 2 over shrinking delta. Returns (value, error).
pub fn residue_at<F>(ctx: &NumericContext, anchor: i64, mut f: F) -> Result<(Mpf, Mpf), Error>
where
    F: FnMut(&Mpf) -> Result<Mpf, Error>,
{
    let s0 = Mpf::from_int(anchor);
    let base = ctx.from_rational(&Rational::new(Int::from(1), Int::from(1_000_000)));
    let levels = 6usize;
    let mut row: Vec<Mpf> = Vec::with_capacity(levels);
    let mut diag: Vec<Mpf> = Vec::with_capacity(levels);
    for t in 0..levels {
        let d = base.scale2(-(t as i64));
        let val = ctx.mul(&d, &f(&ctx.add(&s0, &d))?);
        let mut cur = val;
        let mut nrow = Vec::with_capacity(t + 1);
        let mut weight = 1i64;
        for prev in row.iter().take(t) {
            weight *= 2;
            nrow.push(cur.clone());
            let scaled = ctx.mul_i64(&cur, weight);
            cur = ctx.div(
                &ctx.sub(&scaled, prev),
                &Mpf::from_int(weight - 1),
            );
        }
        nrow.push(cur.clone());
        row = nrow;
        diag.push(cur);
    }
    let err = ctx.sub(&diag[levels - 1], &diag[levels - 2]).abs().scale2(2);
    Ok((diag[levels - 1].clone(), err))
}

/// Heat trace Theta(t) = sum_k d(k) exp(-k(k+a) t) with exact factorial
/// multiplicities and incremental exponentials.
pub fn heat_trace(ctx: &NumericContext, p: &SpectrumParams, t: &Mpf) -> Result<Mpf, Error> {
    let a = p.a();
    let start = p.start_k();
    let tf = t.to_f64();
    assert!(tf > 0.0, "heat trace needs positive time");
    let cut = (ctx.digits() + 40) as f64 * LN10 / tf;
    let e_t = ctx.exp(&t.neg());
    let u = ctx.mul(&e_t, &e_t);
    let lam0 = eigenvalue(p, start)?;
    let mut ek = ctx.powi(&e_t, lam0);
    let mut rk = ctx.powi(&e_t, 2 * start + 1 + a);
    let mut acc = Mpf::zero();
    let mut k = start;
    loop {
        let d = multiplicity(p, k)?;
        acc = ctx.add(&acc, &ctx.mul(&Mpf::from_bigint(d), &ek));
        let lam = (k as f64) * ((k + a) as f64);
        if lam > cut {
            return Ok(acc);
        }
        ek = ctx.mul(&ek, &rk);
        rk = ctx.mul(&rk, &u);
        k += 1;
        if k > 50_000_000 {
            return Err(NumericError::NoConvergence {
                what: "heat trace cutoff".into(),
                limit: k as usize,
            }
            .into());
        }
    }
}

/// High-precision value with a two-window error estimate.
pub struct HeatValue {
    pub value: Mpf,
    pub error: Mpf,
    pub digits: u32,
}

/// Extract zetabar(-m) from the small-time expansion of the heat trace:
/// fit the half-integer exponent ladder t^(j/2 - n) at dyadic times by
/// solving Vandermonde systems in x = sqrt(t), read the t^m coefficient of
/// t^n Theta(t), and estimate the error from two overlapping point windows.
/// The time scale deepens a few times if the estimate is too coarse.
pub fn theta_coefficient(p: &SpectrumParams, m: u32) -> Result<HeatValue, Error> {
    let n = p.n() as i64;
    let e_max = n + m as i64 + 4;
    let l = (2 * e_max + 1) as usize;
    let wd = 40u32.max(30 + 3 * l as u32);
    let ctx = NumericContext::new(wd);
    let col = 2 * (n + m as i64) as usize;
    let scale = {
        let f = ctx.from_rational(&Rational::from_big(factorial(m as u64)));
        if m % 2 == 0 {
            f
        } else {
            f.neg()
        }
    };
    let mut best: Option<(Mpf, Mpf)> = None;
    let mut top_exp = -6i64;
    for _depth in 0..4 {
        let mut xs = Vec::with_capacity(l + 1);
        let mut ys = Vec::with_capacity(l + 1);
        for i in 0..=l {
            let t = Mpf::from_int(1).scale2(top_exp - i as i64);
            let theta = heat_trace(&ctx, p, &t)?;
            xs.push(ctx.sqrt(&t));
            ys.push(ctx.mul(&ctx.powi(&t, n), &theta));
        }
        let a0 = vandermonde_coeff(&ctx, &xs[..l], &ys[..l], col)?;
        let a1 = vandermonde_coeff(&ctx, &xs[1..], &ys[1..], col)?;
        let val = ctx.mul(&scale, &a1);
        let err = ctx.mul(&scale.abs(), &ctx.sub(&a0, &a1).abs()).scale2(1);
        let better = match &best {
            None => true,
            Some((_, e)) => err.cmp_abs(e) == std::cmp::Ordering::Less,
        };
        if better {
            best = Some((val, err.clone()));
        }
        if err.mag() < -40 {
            break;
        }
        top_exp -= 2;
    }
    let (value, error) = best.expect("at least one window evaluated");
    Ok(HeatValue {
        value,
        error,
        digits: wd,
    })
}

/// Solve the Vandermonde system sum_j A_j x_i^j = y_i and return A_col.
fn vandermonde_coeff(
    ctx: &NumericContext,
    xs: &[Mpf],
    ys: &[Mpf],
    col: usize,
) -> Result<Mpf, Error> {
    let l = xs.len();
    assert!(ys.len() == l && col < l);
    let mut m: Vec<Vec<Mpf>> = Vec::with_capacity(l);
    for i in 0..l {
        let mut row = Vec::with_capacity(l + 1);
        let mut pow = Mpf::from_int(1);
        for _ in 0..l {
            row.push(pow.clone());
            pow = ctx.mul(&pow, &xs[i]);
        }
        row.push(ys[i].clone());
        m.push(row);
    }
    for c in 0..l {
        let mut piv = c;
        for r in c + 1..l {
            if m[r][c].cmp_abs(&m[piv][c]) == std::cmp::Ordering::Greater {
                piv = r;
            }
        }
        if m[piv][c].is_zero() {
            return Err(NumericError::Precision {
                what: "singular interpolation matrix".into(),
            }
            .into());
        }
        m.swap(c, piv);
        for r in c + 1..l {
            if m[r][c].is_zero() {
                continue;
            }
            let f = ctx.div(&m[r][c], &m[c][c]);
            for j in c..=l {
                let adj = ctx.mul(&f, &m[c][j]);
                m[r][j] = ctx.sub(&m[r][j], &adj);
            }
        }
    }
    let mut sol = vec![Mpf::zero(); l];
    for c in (0..l).rev() {
        let mut acc = m[c][l].clone();
        for j in c + 1..l {
            acc = ctx.sub(&acc, &ctx.mul(&m[c][j], &sol[j]));
        }
        sol[c] = ctx.div(&acc, &m[c][c]);
    }
    Ok(sol[col].clone())
}

/// The tail contribution to the derivative at zero: sum over j > 2n of
/// a^j (j-2)/(j(j-1)) xi(j-1). Every inner exponent sits right of the
/// pole, so plain integer-exponent zeta values suffice.
pub fn omega_tail_direct(ctx: &NumericContext, p: &SpectrumParams) -> Result<Mpf, Error> {
    let n = p.n() as i64;
    let a = p.a();
    let rho = a as f64 / (p.n() + 1) as f64;
    let jmax = decay_budget(ctx, -rho.ln());
    let table = ladder_table(ctx, p, false)?;
    let mut cache: HashMap<(i64, u64), Mpf> = HashMap::new();
    let kb = Mpf::from_int(table.kbase as i64);
    let k_recip = ctx.recip(&kb);
    // kappa * kbase^(-(j-1)) starting at j = 2n + 1
    let mut kpow = ctx.mul(&table.kappa_val, &ctx.powi(&kb, -2 * n));
    let a_mpf = Mpf::from_int(a);
    let mut apow = ctx.powi(&a_mpf, 2 * n + 1);
    let mut acc = Mpf::zero();
    let mut scale_mag = i64::MIN / 2;
    for j in 2 * n + 1..=2 * n + 1 + jmax {
        let mut xi = kpow.neg();
        for (alpha, c, w) in &table.rows {
            let mut inner = Mpf::zero();
            for (pp, wm) in w.iter().enumerate() {
                let t = j - 1 - pp as i64;
                let z = match cache.get(&(t, *alpha)) {
                    Some(z) => z.clone(),
                    None => {
                        let z = integer_zeta(ctx, t, *alpha)?;
                        cache.insert((t, *alpha), z.clone());
                        z
                    }
                };
                inner = ctx.add(&inner, &ctx.mul(wm, &z));
            }
            xi = ctx.add(&xi, &ctx.mul(c, &inner));
        }
        let wcoef = ctx.from_rational(&Rational::new(
            Int::from(j - 2),
            Int::from(j * (j - 1)),
        ));
        let term = ctx.mul(&ctx.mul(&apow, &wcoef), &xi);
        acc = ctx.add(&acc, &term);
        scale_mag = scale_mag.max(term.mag());
        if j >= 2 * n + 5 && term.mag() < scale_mag - ctx.bits() - 10 {
            return Ok(acc);
        }
        apow = ctx.mul(&apow, &a_mpf);
        kpow = ctx.mul(&kpow, &k_recip);
    }
    Err(NumericError::NoConvergence {
        what: "derivative tail sum".into(),
        limit: jmax as usize,
    }
    .into())
}

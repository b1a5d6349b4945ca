//! Euler-Maclaurin evaluation of the Hurwitz zeta function in its first
//! argument, for integer offsets alpha >= 1: a scalar routine (with optional
//! s-derivative), an integer-exponent fast path, and a table builder for
//! whole families zeta(s0 + t, alpha) over integer shifts t sharing one set
//! of transcendental powers j^(-s0).

use super::mpf::{Mpf, NumericContext};
use crate::error::{Error, NumericError};
use std::collections::HashMap;

fn truncation_index(ctx: &NumericContext, max_alpha: u64, w_scale: f64) -> u64 {
    let bits = ctx.bits() as f64;
    max_alpha + (0.35 * bits).ceil() as u64 + (0.5 * w_scale.abs()).ceil() as u64 + 16
}

/// Correction terms at the truncation index m for exponent w:
///   m^(1-w)/(w-1) + m^(-w)/2 + sum_v B_{2v}/(2v)! (w)_{2v-1} m^(-w-2v+1),
/// given m^(-w). Returns the optional d/dw alongside. Terms are added until
/// they drop below floor_mag; growth before that is a convergence failure.
fn em_tail(
    ctx: &NumericContext,
    w: &Mpf,
    m: u64,
    m_pow_neg_w: &Mpf,
    deriv: bool,
    floor_mag: i64,
) -> Result<(Mpf, Option<Mpf>), Error> {
    let one = Mpf::from_int(1);
    let m_f = Mpf::from_int(m as i64);
    let w_m1 = w.sub(&one);
    if w_m1.mag() < -(ctx.bits() / 2) {
        return Err(NumericError::NearPole {
            detail: "exponent within guard distance of 1".into(),
        }
        .into());
    }
    if m_pow_neg_w.is_zero() {
        // the whole correction sits below the precision window
        let d = if deriv { Some(Mpf::zero()) } else { None };
        return Ok((Mpf::zero(), d));
    }
    let ln_m = if deriv { Some(ctx.ln_int(m)) } else { None };
    let t1 = ctx.div(&ctx.mul(m_pow_neg_w, &m_f), &w_m1);
    let t2 = m_pow_neg_w.scale2(-1);
    let mut acc = ctx.add(&t1, &t2);
    let mut dacc = ln_m.as_ref().map(|lm| {
        let dt1 = ctx.sub(&ctx.mul(&t1, lm).neg(), &ctx.div(&t1, &w_m1));
        ctx.sub(&dt1, &ctx.mul(&t2, lm))
    });

    // The Pochhammer (w)_{2v-1} and its w-derivative advance by the product
    // rule so that nonpositive integer w (zero factors) stays exact.
    let mut poch = w.clone(); // (w)_1
    let mut dpoch = if deriv { Some(Mpf::from_int(1)) } else { None };
    let mut mpow = ctx.div(m_pow_neg_w, &m_f); // m^(-w-1)
    let inv_m2 = ctx.recip(&ctx.mul(&m_f, &m_f));
    let mut fact = Mpf::from_int(2); // (2v)! at v = 1
    let mut prev_mag = i64::MAX;
    for v in 1..2048usize {
        let coef = ctx.div(&ctx.bernoulli_even(v), &fact);
        let term = ctx.mul(&ctx.mul(&coef, &poch), &mpow);
        acc = ctx.add(&acc, &term);
        // stopping looks at value and derivative terms jointly: at integer
        // anchors the value terms die while derivative terms persist
        let mut tm = term.mag();
        if let (Some(d), Some(dp), Some(lm)) = (dacc.as_mut(), dpoch.as_ref(), ln_m.as_ref()) {
            let dterm = ctx.mul(&ctx.mul(&coef, &mpow), &ctx.sub(dp, &ctx.mul(&poch, lm)));
            tm = tm.max(dterm.mag());
            *d = ctx.add(d, &dterm);
        }
        if tm < floor_mag {
            return Ok((acc, dacc));
        }
        if tm > prev_mag {
            return Err(NumericError::NoConvergence {
                what: "euler-maclaurin correction".into(),
                limit: v,
            }
            .into());
        }
        prev_mag = tm;
        let w1 = ctx.add(w, &Mpf::from_int(2 * v as i64 - 1));
        let w2 = ctx.add(w, &Mpf::from_int(2 * v as i64));
        let w12 = ctx.mul(&w1, &w2);
        if let Some(dp) = dpoch.as_mut() {
            let spread = ctx.mul(&poch, &ctx.add(&w1, &w2));
            *dp = ctx.add(&ctx.mul(dp, &w12), &spread);
        }
        poch = ctx.mul(&poch, &w12);
        fact = ctx.mul_i64(&fact, (2 * v as i64 + 1) * (2 * v as i64 + 2));
        mpow = ctx.mul(&mpow, &inv_m2);
    }
    Err(NumericError::NoConvergence {
        what: "euler-maclaurin correction".into(),
        limit: 2048,
    }
    .into())
}

fn hurwitz_core(
    ctx: &NumericContext,
    s: &Mpf,
    alpha: u64,
    deriv: bool,
) -> Result<(Mpf, Option<Mpf>), Error> {
    assert!(alpha >= 1, "offset must be a positive integer");
    let scale = s.to_f64();
    let mut last_err = None;
    for attempt in 0..3u32 {
        let m = truncation_index(ctx, alpha, scale) << attempt;
        let first = ctx.int_pow_neg(alpha, s);
        let floor_mag = first.mag() - ctx.bits() - 12;
        let mut acc = Mpf::zero();
        let mut dacc = Mpf::zero();
        for j in alpha..m {
            let p = ctx.int_pow_neg(j, s);
            acc = ctx.add(&acc, &p);
            if deriv {
                dacc = ctx.sub(&dacc, &ctx.mul(&ctx.ln_int(j), &p));
            }
        }
        let m_pow = ctx.int_pow_neg(m, s);
        match em_tail(ctx, s, m, &m_pow, deriv, floor_mag) {
            Ok((tail, dtail)) => {
                let value = ctx.add(&acc, &tail);
                let d = dtail.map(|dt| ctx.add(&dacc, &dt));
                return Ok((value, d));
            }
            Err(Error::Numeric(NumericError::NoConvergence { .. })) if attempt < 2 => {
                last_err = Some(NumericError::NoConvergence {
                    what: "hurwitz euler-maclaurin".into(),
                    limit: m as usize,
                });
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err
        .unwrap_or(NumericError::NoConvergence {
            what: "hurwitz euler-maclaurin".into(),
            limit: 0,
        })
        .into())
}

/// zeta(s, alpha) for real s away from 1 and integer alpha >= 1.
pub fn hurwitz_zeta(ctx: &NumericContext, s: &Mpf, alpha: u64) -> Result<Mpf, Error> {
    Ok(hurwitz_core(ctx, s, alpha, false)?.0)
}

/// (zeta(s, alpha), d/ds zeta(s, alpha)).
pub fn hurwitz_zeta_deriv(ctx: &NumericContext, s: &Mpf, alpha: u64) -> Result<(Mpf, Mpf), Error> {
    let (v, d) = hurwitz_core(ctx, s, alpha, true)?;
    Ok((v, d.expect("derivative requested")))
}

/// zeta(t, alpha) for integer t >= 2: pure powi arithmetic, with an early
/// exit once the integral remainder bound drops below the target.
pub fn integer_zeta(ctx: &NumericContext, t: i64, alpha: u64) -> Result<Mpf, Error> {
    assert!(t >= 2, "integer exponent must sit right of the pole");
    assert!(alpha >= 1);
    let first = ctx.powi(&Mpf::from_int(alpha as i64), -t);
    let floor_mag = first.mag() - ctx.bits() - 12;
    let m = alpha + (0.35 * ctx.bits() as f64).ceil() as u64 + 72;
    let mut acc = Mpf::zero();
    for j in alpha..m {
        let p = ctx.powi(&Mpf::from_int(j as i64), -t);
        acc = ctx.add(&acc, &p);
        // remainder past j is below p * j/(t-1)
        let bound = ctx.div(&ctx.mul_i64(&p, j as i64), &Mpf::from_int(t - 1));
        if bound.mag() < floor_mag {
            return Ok(acc);
        }
    }
    let m_pow = ctx.powi(&Mpf::from_int(m as i64), -t);
    let (tail, _) = em_tail(ctx, &Mpf::from_int(t), m, &m_pow, false, floor_mag)?;
    Ok(ctx.add(&acc, &tail))
}

/// Precomputed family zeta(s0 + t, alpha) for integer shifts t in a window
/// and a fixed set of offsets. One set of powers j^(-s0) is shared; shifts
/// advance by exact divisions. Entries near the pole s0 + t = 1 are left
/// out and surface as NearPole on lookup.
pub struct OffsetHurwitz {
    entries: HashMap<(i64, u64), Mpf>,
}

impl OffsetHurwitz {
    pub fn build(
        ctx: &NumericContext,
        s0: &Mpf,
        alphas: &[u64],
        t_lo: i64,
        t_hi: i64,
    ) -> Result<Self, Error> {
        assert!(!alphas.is_empty() && t_lo <= t_hi);
        let mut want: Vec<u64> = alphas.to_vec();
        want.sort_unstable();
        want.dedup();
        let min_alpha = want[0];
        let max_alpha = *want.last().unwrap();
        assert!(min_alpha >= 1);

        let w_scale = s0.to_f64().abs() + t_lo.unsigned_abs().max(t_hi.unsigned_abs()) as f64;
        let m = truncation_index(ctx, max_alpha, w_scale);

        // j^(-s0) for j = 1..=m, multiplicatively from primes
        let mut spf = vec![0u64; m as usize + 1];
        for j in 2..=m as usize {
            if spf[j] == 0 {
                let mut k = j;
                while k <= m as usize {
                    if spf[k] == 0 {
                        spf[k] = j as u64;
                    }
                    k += j;
                }
            }
        }
        let mut pows = vec![Mpf::from_int(1); m as usize + 1];
        for j in 2..=m as usize {
            pows[j] = if spf[j] == j as u64 {
                ctx.int_pow_neg(j as u64, s0)
            } else {
                let f = spf[j] as usize;
                ctx.mul(&pows[f], &pows[j / f])
            };
        }

        // cur[j-1] = j^(-s0-t) starting at t = t_lo; advance divides by j
        // (as a reciprocal product). Entries are kept at full relative
        // precision however small: consumers rescale deep shifts back up.
        let recips: Vec<Mpf> = (1..=m)
            .map(|j| ctx.recip(&Mpf::from_int(j as i64)))
            .collect();
        let mut cur: Vec<Mpf> = (1..=m as usize)
            .map(|j| ctx.mul(&pows[j], &ctx.powi(&Mpf::from_int(j as i64), -t_lo)))
            .collect();
        let mut entries = HashMap::new();
        for t in t_lo..=t_hi {
            let w = ctx.add(s0, &Mpf::from_int(t));
            let floor_mag = cur[min_alpha as usize - 1].mag() - ctx.bits() - 12;
            let tail = match em_tail(ctx, &w, m, &cur[m as usize - 1], false, floor_mag) {
                Ok((tail, _)) => Some(tail),
                Err(Error::Numeric(NumericError::NearPole { .. })) => None,
                Err(e) => return Err(e),
            };
            if let Some(tail) = tail {
                let mut run = tail;
                let mut next_alpha = want.len();
                for j in (min_alpha..=m - 1).rev() {
                    if next_alpha > 0 && want[next_alpha - 1] == j + 1 {
                        // head covers alpha..=m-1; record before absorbing j
                        entries.insert((t, j + 1), run.clone());
                        next_alpha -= 1;
                    }
                    run = ctx.add(&run, &cur[j as usize - 1]);
                }
                entries.insert((t, min_alpha), run);
            }
            if t < t_hi {
                for j in 0..m as usize {
                    cur[j] = ctx.mul(&cur[j], &recips[j]);
                }
            }
        }
        Ok(OffsetHurwitz { entries })
    }

    pub fn zeta(&self, t: i64, alpha: u64) -> Result<Mpf, Error> {
        self.entries.get(&(t, alpha)).cloned().ok_or_else(|| {
            NumericError::NearPole {
                detail: format!("no table entry at shift {t} offset {alpha}"),
            }
            .into()
        })
    }
}

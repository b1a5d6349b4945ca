//! Coefficient families attached to the weight polynomial: the ladder
//! re-expansion weights (bold c and its shifted companion), their closed
//! forms through the P/Q polynomial pair, and the alternating aggregates
//! used by the torsion assembly.

use crate::combinatorics::{binomial, factorial, rising_binomial_coeffs};
use crate::error::Error;
use crate::genfun::r_polynomial;
use crate::polynomial::QPolynomial;
use crate::rational::Rational;
use crate::spectrum::{alpha_poly, SpectrumParams};
use serde::{Deserialize, Serialize};

/// The degree-2n polynomial pair evaluated as polynomials in l for a given
/// form parameter. The parameter is accepted as a rational so the degree of
/// each coefficient in it can be probed by interpolation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PqPolys {
    pub p: QPolynomial,
    pub q: QPolynomial,
}

/// P(l) = C(l+q-1, n) C(l-1, n), Q(l) = C(l+n, n) C(l-q+n, n), expanded as
/// products of linear factors over (n!)^2; both have degree 2n in l.
pub fn pq_polys(n: u32, q: &Rational) -> PqPolys {
    let scale = Rational::from_big(factorial(n as u64) * factorial(n as u64)).recip();
    let mut p = QPolynomial::one();
    for j in 0..n as i64 {
        p = p.mul_linear(&(q - Rational::from_int(1 + j)));
    }
    for j in 1..=n as i64 {
        p = p.mul_linear(&Rational::from_int(-j));
    }
    let mut qq = QPolynomial::one();
    for j in 1..=n as i64 {
        qq = qq.mul_linear(&Rational::from_int(j));
    }
    for j in 1..=n as i64 {
        qq = qq.mul_linear(&(Rational::from_int(j) - q));
    }
    PqPolys {
        p: p.scale(&scale),
        q: qq.scale(&scale),
    }
}

/// Ladder weights: `c` drives the eta expansion (Hurwitz offsets k), while
/// `c_tilde` drives the xi expansion (offsets k + a). Both have length 2n-1,
/// indexed by the power shift p = 0..2n-2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoldC {
    pub c: Vec<Rational>,
    pub c_tilde: Vec<Rational>,
}

/// Definition-first weights: coefficients of the weight polynomial itself
/// and of its shift by -a. The shift coincides with coefficient reflection
/// because the weight polynomial is symmetric under x -> -x - a.
pub fn bold_c(p: SpectrumParams) -> BoldC {
    let n = p.n();
    let len = (2 * n - 1) as usize;
    let alpha = alpha_poly(&p);
    let shifted = alpha.shift(&Rational::from_int(-(p.a() as i64)));
    let pad = |poly: &QPolynomial| -> Vec<Rational> {
        (0..len).map(|i| poly.coeff(i)).collect()
    };
    BoldC {
        c: pad(&alpha),
        c_tilde: pad(&shifted),
    }
}

/// Independent route to the same weights through the binomial re-expansion
/// of the Hurwitz ladder:
///   c~_p = sum_k c_k sum_{i>=p} b_i C(i,p) (-(k+a))^{i-p},
///   c_p  = sum_k c_k sum_{i>=p} b_i C(i,p) (-k)^{i-p}.
pub fn bold_c_bsum(p: SpectrumParams) -> Result<BoldC, Error> {
    let n = p.n();
    let len = (2 * n - 1) as usize;
    let data = r_polynomial(&p)?;
    let b = rising_binomial_coeffs(2 * n - 2);
    let a = p.a() as i64;
    let mut c = vec![Rational::zero(); len];
    let mut c_tilde = vec![Rational::zero(); len];
    for k in data.support() {
        let ck = data.coeff(k);
        if ck.is_zero() {
            continue;
        }
        for (i, bi) in b.iter().enumerate() {
            for pp in 0..=i {
                let binom = Rational::from_big(binomial(i as u64, pp as u64));
                let t_eta = Rational::from_int(-(k as i64)).powi((i - pp) as i32);
                let t_xi = Rational::from_int(-(k as i64 + a)).powi((i - pp) as i32);
                c[pp] += &ck * bi * &binom * t_eta;
                c_tilde[pp] += &ck * bi * &binom * t_xi;
            }
        }
    }
    Ok(BoldC { c, c_tilde })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClosedFormVariant {
    /// The closed form exactly as displayed: prefactor C(n,q-1)/(n!)^2,
    /// alternating sign (-1)^i on the Q side.
    Printed,
    /// Same sums rescaled by (n+1-q) with the Q-side sign read as
    /// (-1)^(i-j); this variant reproduces the definition-first weights.
    Rescaled,
}

/// Closed-form candidates for the ladder weights built from the P/Q pair:
///   c_j  ~ pref * sum_{i=j+2}^{2n} (sign) Q_i(q) a^(i-2-j),
///   c~_j ~ pref * sum_{i=j+2}^{2n} P_i(q) a^(i-2-j).
pub fn bold_c_closed(p: SpectrumParams, variant: ClosedFormVariant) -> BoldC {
    let n = p.n();
    let q = p.q();
    let a = Rational::from_int(p.a() as i64);
    let len = (2 * n - 1) as usize;
    let pq = pq_polys(n, &Rational::from_int(q as i64));
    let pref = Rational::from_big(binomial(n as u64, q as u64 - 1))
        / Rational::from_big(factorial(n as u64) * factorial(n as u64));
    let mut c = vec![Rational::zero(); len];
    let mut c_tilde = vec![Rational::zero(); len];
    for (j, slot) in c_tilde.iter_mut().enumerate() {
        let mut acc = Rational::zero();
        for i in (j + 2)..=(2 * n as usize) {
            acc += pq.p.coeff(i) * a.powi((i - 2 - j) as i32);
        }
        *slot = &pref * acc;
    }
    for (j, slot) in c.iter_mut().enumerate() {
        let mut acc = Rational::zero();
        for i in (j + 2)..=(2 * n as usize) {
            let sign = match variant {
                ClosedFormVariant::Printed => {
                    if i % 2 == 0 {
                        Rational::one()
                    } else {
                        Rational::from_int(-1)
                    }
                }
                ClosedFormVariant::Rescaled => {
                    if (i - j) % 2 == 0 {
                        Rational::one()
                    } else {
                        Rational::from_int(-1)
                    }
                }
            };
            acc += sign * pq.q.coeff(i) * a.powi((i - 2 - j) as i32);
        }
        *slot = &pref * acc;
    }
    match variant {
        ClosedFormVariant::Printed => BoldC { c, c_tilde },
        ClosedFormVariant::Rescaled => BoldC {
            c: c.iter().map(|v| v * &a).collect(),
            c_tilde: c_tilde.iter().map(|v| v * &a).collect(),
        },
    }
}

/// Alternating aggregates over the forms q = 1..n at fixed n, with the
/// (-1)^(q+1) convention: row j of the result sums (-1)^(q+1) c_{q,j}.
pub fn alternating_bold_c(n: u32) -> Result<BoldC, Error> {
    let len = (2 * n - 1) as usize;
    let mut c = vec![Rational::zero(); len];
    let mut c_tilde = vec![Rational::zero(); len];
    for q in 1..=n {
        let sign = if q % 2 == 1 {
            Rational::one()
        } else {
            Rational::from_int(-1)
        };
        let bc = bold_c(SpectrumParams::new(n, q)?);
        for j in 0..len {
            c[j] += &sign * &bc.c[j];
            c_tilde[j] += &sign * &bc.c_tilde[j];
        }
    }
    Ok(BoldC { c, c_tilde })
}

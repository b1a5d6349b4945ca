use crate::bernoulli::{bernoulli_number, bernoulli_polynomial, hurwitz_zeta_neg_int};
use crate::combinatorics::{binomial, factorial, rising_binomial_coeffs};
use crate::error::{DomainError, Error, StructuralError};
use crate::genfun::{kappa, r_polynomial};
use crate::rational::Rational;
use crate::spectrum::{zeta_components, SpectrumParams};
use serde::{Deserialize, Serialize};

/// Which shape of a formula to evaluate: the corrected form this crate derives
/// and certifies, or the form exactly as printed in the audited source.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormulaVariant {
    #[default]
    Corrected,
    Printed,
}

/// Value of the weight-(2n-1) ladder zeta
///   zeta_{2n-1}(s, alpha) = sum_{j >= 0} binom(j + 2n - 2, 2n - 2) (j + alpha)^{-s}
/// at s = -l, by binomial reduction to ordinary Hurwitz values:
///   sum_i b_i sum_p binom(i, p) (-alpha)^{i-p} zeta(-l - p, alpha),
/// b the coefficients of binom(z + 2n - 2, 2n - 2).
pub fn multi_hurwitz_neg(n: u32, l: u32, alpha: &Rational) -> Rational {
    let d = 2 * n - 2;
    let b = rising_binomial_coeffs(d);
    let neg_alpha = -alpha;
    let mut acc = Rational::zero();
    for (i, bi) in b.iter().enumerate() {
        let mut inner = Rational::zero();
        for p in 0..=i {
            inner += Rational::from_big(binomial(i as u64, p as u64))
                * neg_alpha.powi((i - p) as i32)
                * hurwitz_zeta_neg_int(l + p as u32, alpha);
        }
        acc += bi * inner;
    }
    acc
}

/// Residue of zeta_{2n-1}(s, alpha) at s = l (poles sit at l = 1..2n-1; zero
/// elsewhere): sum_{i >= l-1} b_i (-alpha)^{i-l+1} binom(i, l-1).
pub fn multi_hurwitz_residue(n: u32, l: u32, alpha: &Rational) -> Rational {
    if l == 0 || l > 2 * n - 1 {
        return Rational::zero();
    }
    let d = (2 * n - 2) as usize;
    let b = rising_binomial_coeffs(2 * n - 2);
    let neg_alpha = -alpha;
    let mut acc = Rational::zero();
    for i in (l as usize - 1)..=d {
        acc += &b[i]
            * neg_alpha.powi((i + 1 - l as usize) as i32)
            * Rational::from_big(binomial(i as u64, l as u64 - 1));
    }
    acc
}

/// The residue display as printed carries an extra sum over an index that the
/// summand does not mention; read verbatim it multiplies each i-term by i+1.
/// Kept for the audit report.
pub fn multi_hurwitz_residue_printed(n: u32, l: u32, alpha: &Rational) -> Rational {
    if l == 0 || l > 2 * n - 1 {
        return Rational::zero();
    }
    let d = (2 * n - 2) as usize;
    let b = rising_binomial_coeffs(2 * n - 2);
    let neg_alpha = -alpha;
    let mut acc = Rational::zero();
    for i in (l as usize - 1)..=d {
        acc += &b[i]
            * Rational::from_int(i as i64 + 1)
            * neg_alpha.powi((i + 1 - l as usize) as i32)
            * Rational::from_big(binomial(i as u64, l as u64 - 1));
    }
    acc
}

/// beta(l, i, p) = sum_k c_k (q - n - 1 - k)^{i-p} B_{l+p+1}(k + n + 1 - q),
/// c the numerator coefficients of the weight generating function.
pub fn beta_coeff(p: &SpectrumParams, l: u32, i: u32, pp: u32) -> Result<Rational, Error> {
    if pp > i {
        return Err(DomainError::InnerIndexTooLarge { inner: pp, outer: i }.into());
    }
    let r = r_polynomial(p)?;
    let a = p.a();
    let bpoly = bernoulli_polynomial(l + pp + 1);
    let mut acc = Rational::zero();
    for k in r.support() {
        let base = Rational::from_int(-(k as i64) - a);
        acc += r.coeff(k) * base.powi((i - pp) as i32)
            * bpoly.eval(&Rational::from_int(k as i64 + a));
    }
    Ok(acc)
}

/// Residue of the reduced spectral building block xi_q at s = l: zero outside
/// 1..2n-1, otherwise sum_k c_k Res_{s=l} zeta_{2n-1}(s, k+a).
pub fn gamma_residue(p: &SpectrumParams, l: i64) -> Result<Rational, Error> {
    let n = p.n();
    if l < 1 || l > 2 * n as i64 - 1 {
        return Ok(Rational::zero());
    }
    let r = r_polynomial(p)?;
    let a = p.a();
    let mut acc = Rational::zero();
    for k in r.support() {
        acc += r.coeff(k)
            * multi_hurwitz_residue(n, l as u32, &Rational::from_int(k as i64 + a));
    }
    Ok(acc)
}

/// xi_q(-l), computed along two independent rearrangements and asserted equal:
/// directly through ladder zeta values, and through the beta coefficients.
pub fn xi_value_neg(p: &SpectrumParams, l: u32) -> Result<Rational, Error> {
    let r = r_polynomial(p)?;
    let a = p.a();
    let n = p.n();
    let kterm = kappa(p) * Rational::from_int(n as i64 + 1).powi(l as i32);
    let mut direct = Rational::zero();
    for k in r.support() {
        direct += r.coeff(k) * multi_hurwitz_neg(n, l, &Rational::from_int(k as i64 + a));
    }
    let direct = direct - &kterm;

    let b = rising_binomial_coeffs(2 * n - 2);
    let mut via_beta = Rational::zero();
    for (i, bi) in b.iter().enumerate() {
        for pp in 0..=i {
            via_beta += bi
                * Rational::from_big(binomial(i as u64, pp as u64))
                * beta_coeff(p, l, i as u32, pp as u32)?
                / Rational::from_int(pp as i64 + l as i64 + 1);
        }
    }
    let via_beta = -via_beta - &kterm;

    if direct != via_beta {
        return Err(StructuralError::RouteMismatch {
            what: format!("xi(-{l}) at n={}, q={}", p.n(), p.q()),
            left: direct.to_string(),
            right: via_beta.to_string(),
        }
        .into());
    }
    Ok(direct)
}

/// eta_q(-l) = sum_k c_k zeta_{2n-1}(-l, k) - kappa q^l.
pub fn eta_value_neg(p: &SpectrumParams, l: u32) -> Result<Rational, Error> {
    let r = r_polynomial(p)?;
    let n = p.n();
    let kterm = kappa(p) * Rational::from_int(p.q() as i64).powi(l as i32);
    let mut acc = Rational::zero();
    for k in r.support() {
        acc += r.coeff(k) * multi_hurwitz_neg(n, l, &Rational::from_int(k as i64));
    }
    Ok(acc - kterm)
}

/// zbar_q(-m) for m >= 0.
///
/// Corrected form (certified against independent continuation and heat-trace
/// oracles):
///   sum_{j=0}^{m+1} (-1)^{j+1} binom(m+1, j) ((j - 2m - 2)/(m + 1)) a^j xi(-(2m+1-j))
///   + (-1)^m m! sum_{j=2m+2}^{2n+2m} a^j (j-m-2)! (j-2m-2) / (2 j!) gamma(j-1-2m).
///
/// Printed form: coefficient (-1)^{j+1} (a^j/m) binom(m+1, j) on the first sum
/// (undefined at m = 0) and no 1/2 on the residue sum.
pub fn zetabar_neg(p: &SpectrumParams, m: u32, variant: FormulaVariant) -> Result<Rational, Error> {
    let a = Rational::from_int(p.a());
    let n = p.n() as i64;
    let m_i = m as i64;
    match variant {
        FormulaVariant::Corrected => {
            let mut first = Rational::zero();
            for j in 0..=(m_i + 1) {
                let sign = if (j + 1) % 2 == 0 { 1 } else { -1 };
                let coef = Rational::from_int(sign)
                    * Rational::from_big(binomial(m as u64 + 1, j as u64))
                    * Rational::from((j - 2 * m_i - 2, m_i + 1))
                    * a.powi(j as i32);
                first += coef * xi_value_neg(p, (2 * m_i + 1 - j) as u32)?;
            }
            let mut second = Rational::zero();
            for j in (2 * m_i + 2)..=(2 * n + 2 * m_i) {
                if j == 2 * m_i + 2 {
                    continue; // the (j - 2m - 2) factor kills this term
                }
                let coef = a.powi(j as i32)
                    * Rational::from_big(factorial((j - m_i - 2) as u64))
                    * Rational::from_int(j - 2 * m_i - 2)
                    / (Rational::from_int(2) * Rational::from_big(factorial(j as u64)));
                second += coef * gamma_residue(p, j - 1 - 2 * m_i)?;
            }
            let msign = if m % 2 == 0 { 1 } else { -1 };
            let second =
                Rational::from_int(msign) * Rational::from_big(factorial(m as u64)) * second;
            Ok(first + second)
        }
        FormulaVariant::Printed => {
            if m == 0 {
                return Err(DomainError::PrintedFormUndefined {
                    reason: "the printed value formula divides by m".into(),
                }
                .into());
            }
            let mut first = Rational::zero();
            for j in 0..=(2 * m_i + 1) {
                let sign = if (j + 1) % 2 == 0 { 1 } else { -1 };
                let b = binomial(m as u64 + 1, j as u64);
                if num_traits::Zero::is_zero(&b) {
                    continue;
                }
                let coef = Rational::from_int(sign) * a.powi(j as i32)
                    / Rational::from_int(m_i)
                    * Rational::from_big(b);
                first += coef * xi_value_neg(p, (2 * m_i + 1 - j) as u32)?;
            }
            let mut second = Rational::zero();
            for j in (2 * m_i + 2)..=(2 * n + 2 * m_i) {
                if j == 2 * m_i + 2 {
                    continue;
                }
                let coef = a.powi(j as i32)
                    * Rational::from_big(factorial((j - m_i - 2) as u64))
                    * Rational::from_int(j - 2 * m_i - 2)
                    / Rational::from_big(factorial(j as u64));
                second += coef * gamma_residue(p, j - 1 - 2 * m_i)?;
            }
            let msign = if m % 2 == 0 { 1 } else { -1 };
            let second =
                Rational::from_int(msign) * Rational::from_big(factorial(m as u64)) * second;
            Ok(first + second)
        }
    }
}

/// zeta_q(-m): sum of the ladder pieces selected by zeta_components.
pub fn zeta_q_neg(n: u32, q: u32, m: u32, variant: FormulaVariant) -> Result<Rational, Error> {
    let mut acc = Rational::zero();
    for r in zeta_components(n, q)? {
        let p = SpectrumParams::new(n, r)?;
        acc += zetabar_neg(&p, m, variant)?;
    }
    Ok(acc)
}

/// Closed form for the n = 1 ladder:
///   zbar_1(-m) = -(1/(m+1)) sum_{k=m+1}^{2m+2} (-1)^k binom(m+1, 2m+2-k) B_k.
pub fn p1_zeta_neg(m: u32) -> Rational {
    let m_i = m as i64;
    let mut acc = Rational::zero();
    for k in (m_i + 1)..=(2 * m_i + 2) {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        acc += Rational::from_int(sign)
            * Rational::from_big(binomial(m as u64 + 1, (2 * m_i + 2 - k) as u64))
            * bernoulli_number(k as u32);
    }
    -acc / Rational::from_int(m_i + 1)
}

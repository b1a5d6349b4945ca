use crate::combinatorics::{binomial, factorial, partial_fraction_g};
use crate::error::StructuralError;
use crate::polynomial::QPolynomial;
use crate::rational::Rational;
use crate::series::QPowerSeries;
use crate::spectrum::{alpha_poly, SpectrumParams, StartIndex};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// kappa_{n,q} = binom(n+q-1, n) / (q(n+1)): the constant peeled off the
/// weight generating function as -kappa z^q.
pub fn kappa(p: &SpectrumParams) -> Rational {
    Rational::from_big(binomial((p.n() + p.q() - 1) as u64, p.n() as u64))
        / Rational::from_int(p.q() as i64 * (p.n() as i64 + 1))
}

/// S_{n,q}(z) = sum_{k >= start} alpha_{n,q}(k) z^k, truncated.
pub fn s_series(p: &SpectrumParams, order: usize) -> QPowerSeries {
    let apoly = alpha_poly(p);
    let start = p.start_k();
    QPowerSeries::from_fn(order, |k| {
        if (k as i64) < start {
            Rational::zero()
        } else {
            apoly.eval_int(k as i64)
        }
    })
}

/// The numerator polynomial R with S = R/(1-z)^{2n-1} - kappa z^q, together
/// with its support. Support sits inside [q, 2n-1+q]; with the geometric start
/// index the lower edge is attained exactly.
#[derive(Clone, Debug)]
pub struct RPolyData {
    pub params: SpectrumParams,
    pub poly: QPolynomial,
    pub kappa: Rational,
    pub support_min: usize,
    pub support_max: usize,
}

impl RPolyData {
    pub fn coeff(&self, k: usize) -> Rational {
        self.poly.coeff(k)
    }

    /// Indices with nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<usize> {
        (self.support_min..=self.support_max)
            .filter(|&k| !self.poly.coeff(k).is_zero())
            .collect()
    }
}

type RKey = (u32, u32, StartIndex);
static R_CACHE: Lazy<Mutex<HashMap<RKey, Arc<RPolyData>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Computes R = (1-z)^{2n-1} (S + kappa z^q) and certifies it is a polynomial
/// supported in [q, 2n-1+q] by checking a long run of vanishing coefficients.
pub fn r_polynomial(p: &SpectrumParams) -> Result<Arc<RPolyData>, StructuralError> {
    let key = (p.n(), p.q(), p.start());
    if let Some(hit) = R_CACHE.lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let n = p.n() as usize;
    let q = p.q() as usize;
    let order = 6 * n + q;
    let kap = kappa(p);
    let s_plus = s_series(p, order) + QPowerSeries::from_polynomial(
        &QPolynomial::monomial(kap.clone(), q),
        order,
    );
    let r_ser = s_plus.mul_poly(&QPolynomial::one_minus_z_pow(2 * n as u32 - 1));
    let hi = 2 * n - 1 + q;
    for k in 0..q.min(r_ser.order() + 1) {
        if !r_ser.coefficient(k).is_zero() {
            return Err(StructuralError::Support {
                what: format!("weight numerator R(n={}, q={})", p.n(), p.q()),
                detail: format!("nonzero coefficient {} below z^{q}", r_ser.coefficient(k)),
            });
        }
    }
    for k in (hi + 1)..=r_ser.order() {
        if !r_ser.coefficient(k).is_zero() {
            return Err(StructuralError::Support {
                what: format!("weight numerator R(n={}, q={})", p.n(), p.q()),
                detail: format!(
                    "nonzero coefficient {} at z^{k}, above z^{hi}",
                    r_ser.coefficient(k)
                ),
            });
        }
    }
    if p.start() == StartIndex::AtQ && r_ser.coefficient(q).is_zero() {
        return Err(StructuralError::Support {
            what: format!("weight numerator R(n={}, q={})", p.n(), p.q()),
            detail: format!("coefficient at the lower support edge z^{q} vanishes"),
        });
    }
    let poly = QPolynomial::new(r_ser.coefficients()[..=hi].to_vec());
    let data = Arc::new(RPolyData {
        params: *p,
        poly,
        kappa: kap,
        support_min: q,
        support_max: hi,
    });
    R_CACHE.lock().unwrap().insert(key, data.clone());
    Ok(data)
}

/// T_{n,q}(z) = sum_{k >= 0} binom(k+q+n, k+q) binom(k+n, k) z^k, truncated.
pub fn t_series(p: &SpectrumParams, order: usize) -> QPowerSeries {
    let n = p.n() as u64;
    let q = p.q() as u64;
    QPowerSeries::from_fn(order, |k| {
        let k = k as u64;
        Rational::from_big(binomial(k + q + n, k + q) * binomial(k + n, k))
    })
}

/// Numerator N = (1-z)^{2n+1} T: a polynomial of degree at most 2n with
/// N(0) = binom(q+n, q) and N(1) = binom(2n, n) (both asserted).
pub fn t_numerator(p: &SpectrumParams) -> Result<QPolynomial, StructuralError> {
    let n = p.n() as usize;
    let order = 4 * n + 4;
    let prod = t_series(p, order).mul_poly(&QPolynomial::one_minus_z_pow(2 * n as u32 + 1));
    for k in (2 * n + 1)..=prod.order() {
        if !prod.coefficient(k).is_zero() {
            return Err(StructuralError::Support {
                what: format!("degree numerator N(n={}, q={})", p.n(), p.q()),
                detail: format!("nonzero coefficient at z^{k}, above z^{}", 2 * n),
            });
        }
    }
    let poly = QPolynomial::new(prod.coefficients()[..=2 * n].to_vec());
    let n0 = Rational::from_big(binomial((p.q() + p.n()) as u64, p.q() as u64));
    let n1 = Rational::from_big(binomial(2 * p.n() as u64, p.n() as u64));
    if poly.coeff(0) != n0 {
        return Err(StructuralError::Support {
            what: "degree numerator N".into(),
            detail: format!("N(0) = {} but expected {}", poly.coeff(0), n0),
        });
    }
    if poly.eval(&Rational::one()) != n1 {
        return Err(StructuralError::Support {
            what: "degree numerator N".into(),
            detail: format!("N(1) = {} but expected {}", poly.eval(&Rational::one()), n1),
        });
    }
    Ok(poly)
}

/// Diagnostic for the printed closed form of T: it packages T as
/// P/(1-z)^{2n+1} - binom(n+q-1, n) with
/// P = sum_{k=0}^{n+1-q} g_{k+1} binom(n+1-q, k) (1-z)^k z^{n+1-q-k},
/// g the partial fraction coefficients of 1/(x(1-x))^{n+1}. Equivalent to
/// claiming (1-z)^{2n+1} T = P - binom(n+q-1, n)(1-z)^{2n+1}; we compare that
/// package against the computed numerator N.
#[derive(Clone, Debug)]
pub struct PrintedTClosedForm {
    pub printed_package: QPolynomial,
    pub computed: QPolynomial,
    pub first_mismatch: Option<usize>,
}

pub fn t_closed_form_printed(p: &SpectrumParams) -> Result<PrintedTClosedForm, StructuralError> {
    let n = p.n();
    let q = p.q();
    let g = partial_fraction_g(n);
    let m = (n + 1 - q) as usize;
    let mut printed = QPolynomial::zero();
    for k in 0..=m {
        // g[k] holds the (k+1)-st partial fraction coefficient
        let w = &g[k] * Rational::from_big(binomial(m as u64, k as u64));
        let term = QPolynomial::one_minus_z_pow(k as u32)
            * QPolynomial::monomial(Rational::one(), m - k);
        printed = printed + term.scale(&w);
    }
    let b = Rational::from_big(binomial((n + q - 1) as u64, n as u64));
    let package = printed - QPolynomial::one_minus_z_pow(2 * n + 1).scale(&b);
    let computed = t_numerator(p)?;
    let deg = package
        .degree()
        .unwrap_or(0)
        .max(computed.degree().unwrap_or(0));
    let first_mismatch = (0..=deg).find(|&i| package.coeff(i) != computed.coeff(i));
    Ok(PrintedTClosedForm {
        printed_package: package,
        computed,
        first_mismatch,
    })
}

/// Residual of the differential identity
///   d/dz ( z^{n+2-q} S'(z) ) - C z^n T(z),
/// with the derived prefactor C = 1/(n!(q-1)!(n-q)!) when with_prefactor is
/// true, and the bare C = 1 variant otherwise. Valid through `order`.
pub fn ode_residual(p: &SpectrumParams, order: usize, with_prefactor: bool) -> QPowerSeries {
    let n = p.n() as usize;
    let q = p.q() as usize;
    let inner_order = order + 2;
    let s = s_series(p, inner_order);
    let lhs = s
        .derivative()
        .shift_up(n + 2 - q)
        .derivative()
        .truncate(order);
    let c = if with_prefactor {
        (Rational::from_big(factorial(p.n() as u64))
            * Rational::from_big(factorial(p.q() as u64 - 1))
            * Rational::from_big(factorial((p.n() - p.q()) as u64)))
        .recip()
    } else {
        Rational::one()
    };
    let rhs = t_series(p, order)
        .shift_up(n)
        .truncate(order)
        .mul_poly(&QPolynomial::constant(c));
    lhs - rhs
}

use crate::combinatorics::factorial;
use crate::error::{DomainError, StructuralError};
use crate::polynomial::QPolynomial;
use crate::rational::{Int, Rational};
use serde::{Deserialize, Serialize};

/// Where the eigenvalue ladder starts. The geometry fixes k = q; the shifted
/// variant exists purely as a sensitivity probe for downstream formulas.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub enum StartIndex {
    #[default]
    AtQ,
    AfterQ,
}

/// Parameters (n, q) of the (0,q)-form Laplacian on P^n, 1 <= q <= n.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SpectrumParams {
    n: u32,
    q: u32,
    #[serde(default)]
    start: StartIndex,
}

impl SpectrumParams {
    pub fn new(n: u32, q: u32) -> Result<Self, DomainError> {
        if n == 0 || q == 0 || q > n {
            return Err(DomainError::InvalidForm { n, q });
        }
        Ok(SpectrumParams {
            n,
            q,
            start: StartIndex::AtQ,
        })
    }

    pub fn with_start(n: u32, q: u32, start: StartIndex) -> Result<Self, DomainError> {
        let mut p = SpectrumParams::new(n, q)?;
        p.start = start;
        Ok(p)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// The shift a = n + 1 - q appearing throughout: eigenvalues are k(k+a).
    pub fn a(&self) -> i64 {
        self.n as i64 + 1 - self.q as i64
    }

    pub fn start(&self) -> StartIndex {
        self.start
    }

    /// First k in the ladder.
    pub fn start_k(&self) -> i64 {
        match self.start {
            StartIndex::AtQ => self.q as i64,
            StartIndex::AfterQ => self.q as i64 + 1,
        }
    }
}

/// Eigenvalue k(k + n + 1 - q), overflow-checked.
pub fn eigenvalue(p: &SpectrumParams, k: i64) -> Result<i64, DomainError> {
    if k < p.start_k() {
        return Err(DomainError::IndexBelowStart {
            k,
            start: p.start_k(),
        });
    }
    k.checked_add(p.a())
        .and_then(|s| k.checked_mul(s))
        .ok_or(DomainError::EigenvalueOverflow { k })
}

/// Normalized weight alpha_{n,q}(k)
///   = binom(k+n, k) binom(k-q+n, k-q) / (n! (q-1)! (n-q)! k (k+n+1-q)).
pub fn alpha(p: &SpectrumParams, k: i64) -> Result<Rational, DomainError> {
    if k < p.q as i64 {
        return Err(DomainError::IndexBelowStart {
            k,
            start: p.q as i64,
        });
    }
    Ok(alpha_poly(p).eval_int(k))
}

/// alpha_{n,q} as an exact polynomial in k of degree 2n - 2: the eigenvalue
/// k(k+a) divides the binomial product, leaving
///   prod_{j=1..n, j != a} (k+j) * prod_{j=1-q..n-q, j != 0} (k+j)
///   / (n!^3 (q-1)! (n-q)!),
/// each binomial contributing one n! on top of the explicit one.
pub fn alpha_poly(p: &SpectrumParams) -> QPolynomial {
    let n = p.n as i64;
    let q = p.q as i64;
    let a = p.a();
    let mut poly = QPolynomial::one();
    for j in 1..=n {
        if j != a {
            poly = poly.mul_linear(&Rational::from_int(j));
        }
    }
    for j in (1 - q)..=(n - q) {
        if j != 0 {
            poly = poly.mul_linear(&Rational::from_int(j));
        }
    }
    let den = factorial(p.n as u64)
        * factorial(p.n as u64)
        * factorial(p.n as u64)
        * factorial(p.q as u64 - 1)
        * factorial((p.n - p.q) as u64);
    poly.scale(&Rational::from_big(den).recip())
}

/// Multiplicity d_{n,q}(k)
///   = (1/k + 1/(k+n+1-q)) (k+n)! (k+n-q)! / (k! (k-q)! n! (n-q)! (q-1)!),
/// always a positive integer (asserted).
pub fn multiplicity(p: &SpectrumParams, k: i64) -> Result<Int, crate::error::Error> {
    if k < p.q as i64 {
        return Err(DomainError::IndexBelowStart {
            k,
            start: p.q as i64,
        }
        .into());
    }
    let n = p.n as i64;
    let q = p.q as i64;
    let a = p.a();
    // (k+n)!/k! and (k+n-q)!/(k-q)! as explicit products
    let mut num = Int::from(1);
    for j in 1..=n {
        num *= Int::from(k + j);
    }
    for j in 1..=n {
        num *= Int::from(k - q + j);
    }
    let den = factorial(p.n as u64) * factorial((p.n - p.q) as u64) * factorial(p.q as u64 - 1);
    let sum_part = Rational::from((1, k)) + Rational::from_int(k + a).recip();
    let d = sum_part * Rational::from_big(num) / Rational::from_big(den);
    match d.to_int() {
        Some(v) => Ok(v),
        None => Err(StructuralError::Integrality {
            what: format!("multiplicity(n={}, q={}, k={k})", p.n, p.q),
            value: d.to_string(),
        }
        .into()),
    }
}

/// Degrees r with zeta_q = sum of the r-ladders: [q, q+1] for q < n, [n] at q = n.
pub fn zeta_components(n: u32, q: u32) -> Result<Vec<u32>, DomainError> {
    if n == 0 || q == 0 || q > n {
        return Err(DomainError::InvalidForm { n, q });
    }
    Ok(if q < n { vec![q, q + 1] } else { vec![n] })
}

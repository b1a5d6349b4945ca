use crate::rational::{Int, Rational};
use num_traits::{One, Zero};

pub fn factorial(k: u64) -> Int {
    let mut acc = Int::one();
    for j in 2..=k {
        acc *= Int::from(j);
    }
    acc
}

/// binom(n, k) for nonnegative arguments; zero when k > n.
pub fn binomial(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut num = Int::one();
    let mut den = Int::one();
    for j in 0..k {
        num *= Int::from(n - j);
        den *= Int::from(j + 1);
    }
    num / den
}

/// binom(top, k) with arbitrary rational top: prod_{j=0}^{k-1} (top - j) / k!.
pub fn rational_binomial(top: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for j in 0..k {
        acc = acc * (top - Rational::from_int(j as i64));
    }
    acc / Rational::from_big(factorial(k as u64))
}

/// H_k = sum_{j=1}^{k} 1/j.
pub fn harmonic(k: u32) -> Rational {
    let mut acc = Rational::zero();
    for j in 1..=k {
        acc += Rational::from((1, j as i64));
    }
    acc
}

/// Coefficients of binom(z + d, d) = prod_{j=1}^{d} (z + j) / d!, ascending.
/// Always b_0 = 1 and b_d = 1/d!, all entries positive.
pub fn rising_binomial_coeffs(d: u32) -> Vec<Rational> {
    let mut p = crate::polynomial::QPolynomial::one();
    for j in 1..=d {
        p = p.mul_linear(&Rational::from_int(j as i64));
    }
    let inv = Rational::from_big(factorial(d as u64)).recip();
    (0..=d as usize).map(|i| p.coeff(i) * &inv).collect()
}

/// Coefficients a_k (k = 1..=n+1, returned at index k-1) of the partial
/// fraction split 1/(x(1-x))^{n+1} = G(1/x) + G(1/(1-x)) with
/// G(z) = sum_k a_k z^k. Since G(1/(1-x)) is regular at x = 0, the a_k are
/// read off the principal part of the left side at x = 0, where
/// (1-x)^{-(n+1)} = sum_j binom(n+j, n) x^j.
pub fn partial_fraction_g(n: u32) -> Vec<Rational> {
    let n64 = n as u64;
    (1..=n + 1)
        .map(|k| {
            // coefficient of x^{-k}: binom(n + (n+1-k), n)
            Rational::from_big(binomial(2 * n64 + 1 - k as u64, n64))
        })
        .collect()
}

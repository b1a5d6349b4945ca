use crate::combinatorics::binomial;
use crate::polynomial::QPolynomial;
use crate::rational::Rational;
use once_cell::sync::Lazy;
use std::sync::Mutex;

// Convention: B_1 = -1/2, fixed by B_l(x+1) - B_l(x) = l x^{l-1} together with
// B_l(0) = B_l. Under it, zeta(-l, a) = -B_{l+1}(a)/(l+1) for integer l >= 0.
static BERNOULLI: Lazy<Mutex<Vec<Rational>>> =
    Lazy::new(|| Mutex::new(vec![Rational::one(), Rational::from((-1, 2))]));

/// B_k, memoized via the defining recurrence
/// sum_{j=0}^{m} binom(m+1, j) B_j = 0 for m >= 1.
pub fn bernoulli_number(k: u32) -> Rational {
    let mut cache = BERNOULLI.lock().unwrap();
    while cache.len() <= k as usize {
        let m = cache.len(); // computing B_m
        let mut acc = Rational::zero();
        for (j, bj) in cache.iter().enumerate() {
            acc += Rational::from_big(binomial((m + 1) as u64, j as u64)) * bj;
        }
        let bm = -acc / Rational::from_int(m as i64 + 1);
        cache.push(bm);
    }
    cache[k as usize].clone()
}

/// B_l(x) = sum_j binom(l, j) B_j x^{l-j}, monic of degree l.
pub fn bernoulli_polynomial(l: u32) -> QPolynomial {
    let mut coeffs = vec![Rational::zero(); l as usize + 1];
    for j in 0..=l {
        let c = Rational::from_big(binomial(l as u64, j as u64)) * bernoulli_number(j);
        coeffs[(l - j) as usize] = c;
    }
    QPolynomial::new(coeffs)
}

/// zeta(-l, alpha) = -B_{l+1}(alpha)/(l+1) for integer l >= 0, alpha > 0.
pub fn hurwitz_zeta_neg_int(l: u32, alpha: &Rational) -> Rational {
    let b = bernoulli_polynomial(l + 1).eval(alpha);
    -b / Rational::from_int(l as i64 + 1)
}

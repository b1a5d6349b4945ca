use crate::error::DomainError;
use crate::rational::Rational;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense univariate polynomial over the rationals, ascending coefficients,
/// no trailing zeros. The zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QPolynomial {
    coeffs: Vec<Rational>,
}

impl QPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        QPolynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        QPolynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        QPolynomial::new(vec![c])
    }

    pub fn x() -> Self {
        QPolynomial::new(vec![Rational::zero(), Rational::one()])
    }

    /// Monomial c * x^k.
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return QPolynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        QPolynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, x: i64) -> Rational {
        self.eval(&Rational::from_int(x))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return QPolynomial::zero();
        }
        QPolynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by the linear factor (x + c).
    pub fn mul_linear(&self, c: &Rational) -> Self {
        if self.is_zero() {
            return QPolynomial::zero();
        }
        let n = self.coeffs.len();
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[i + 1] += a;
            out[i] += a * c;
        }
        QPolynomial::new(out)
    }

    /// Compose with x -> x + c.
    pub fn shift(&self, c: &Rational) -> Self {
        let mut res = QPolynomial::zero();
        for a in self.coeffs.iter().rev() {
            res = res.mul_linear(c) + QPolynomial::constant(a.clone());
        }
        res
    }

    /// Compose with x -> -x.
    pub fn reflect(&self) -> Self {
        QPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, a)| if i % 2 == 1 { -a } else { a.clone() })
                .collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return QPolynomial::zero();
        }
        QPolynomial::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, a)| a * Rational::from_int(i as i64 + 1))
                .collect(),
        )
    }

    pub fn from_roots(roots: &[Rational], leading: Rational) -> Self {
        let mut p = QPolynomial::constant(leading);
        for r in roots {
            p = p.mul_linear(&-r);
        }
        p
    }

    /// Exact interpolation through the given points (Newton divided differences).
    pub fn interpolate(points: &[(Rational, Rational)]) -> Result<Self, DomainError> {
        for (i, (xi, _)) in points.iter().enumerate() {
            for (xj, _) in &points[..i] {
                if xi == xj {
                    return Err(DomainError::DuplicateAbscissa { x: xi.to_string() });
                }
            }
        }
        if points.is_empty() {
            return Ok(QPolynomial::zero());
        }
        let n = points.len();
        let mut coef: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let dx = &points[i].0 - &points[i - level].0;
                coef[i] = (&coef[i] - &coef[i - 1]) / dx;
            }
        }
        let mut p = QPolynomial::zero();
        for i in (0..n).rev() {
            p = p.mul_linear(&-&points[i].0) + QPolynomial::constant(coef[i].clone());
        }
        Ok(p)
    }

    /// (1 - z)^e as a polynomial.
    pub fn one_minus_z_pow(e: u32) -> Self {
        let mut p = QPolynomial::one();
        let factor = QPolynomial::new(vec![Rational::one(), Rational::from_int(-1)]);
        for _ in 0..e {
            p = &p * &factor;
        }
        p
    }
}

impl<'a, 'b> Add<&'b QPolynomial> for &'a QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &'b QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        QPolynomial::new(out)
    }
}
impl Add for QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: QPolynomial) -> QPolynomial {
        &self + &rhs
    }
}

impl<'a, 'b> Sub<&'b QPolynomial> for &'a QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: &'b QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        QPolynomial::new(out)
    }
}
impl Sub for QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: QPolynomial) -> QPolynomial {
        &self - &rhs
    }
}

impl<'a, 'b> Mul<&'b QPolynomial> for &'a QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &'b QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPolynomial::new(out)
    }
}
impl Mul for QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: QPolynomial) -> QPolynomial {
        &self * &rhs
    }
}

impl Neg for QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        QPolynomial {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}
impl<'a> Neg for &'a QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        QPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

use crate::polynomial::QPolynomial;
use crate::rational::Rational;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Truncated power series over the rationals: coefficients 0..=order are
/// meaningful, everything above is unknown (not zero). Arithmetic tracks the
/// largest order that stays valid, improving it by known valuations where
/// multiplication permits.
#[derive(Clone, PartialEq, Eq)]
pub struct QPowerSeries {
    coeffs: Vec<Rational>,
    order: usize,
}

impl QPowerSeries {
    /// Coefficients beyond the given order are discarded; missing ones are zero.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.truncate(order + 1);
        coeffs.resize(order + 1, Rational::zero());
        QPowerSeries { coeffs, order }
    }

    pub fn zero(order: usize) -> Self {
        QPowerSeries::new(vec![], order)
    }

    pub fn one(order: usize) -> Self {
        QPowerSeries::new(vec![Rational::one()], order)
    }

    pub fn from_polynomial(p: &QPolynomial, order: usize) -> Self {
        QPowerSeries::new(p.coeffs().to_vec(), order)
    }

    /// Builds from a coefficient function.
    pub fn from_fn(order: usize, f: impl Fn(usize) -> Rational) -> Self {
        QPowerSeries::new((0..=order).map(f).collect(), order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of z^k. Panics past the valid order: coefficients there are
    /// unknown, and silently returning zero would corrupt downstream algebra.
    pub fn coefficient(&self, k: usize) -> &Rational {
        self.try_coefficient(k).unwrap_or_else(|| {
            panic!(
                "series coefficient {k} requested but only orders 0..={} are valid",
                self.order
            )
        })
    }

    pub fn try_coefficient(&self, k: usize) -> Option<&Rational> {
        if k <= self.order {
            Some(&self.coeffs[k])
        } else {
            None
        }
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Index of the first nonzero known coefficient, capped at order + 1 when
    /// every known coefficient vanishes. Used to sharpen product orders.
    fn valuation_bound(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.order + 1)
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order, "cannot extend a series by truncation");
        QPowerSeries::new(self.coeffs[..=order].to_vec(), order)
    }

    pub fn is_zero_to_order(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Multiply by z^k.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        QPowerSeries::new(coeffs, self.order + k)
    }

    /// Divide by z^k; the low coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        assert!(k <= self.order, "shift_down past series order");
        for i in 0..k {
            assert!(
                self.coeffs[i].is_zero(),
                "shift_down would drop a nonzero coefficient at z^{i}"
            );
        }
        QPowerSeries::new(self.coeffs[k..].to_vec(), self.order - k)
    }

    pub fn derivative(&self) -> Self {
        assert!(self.order >= 1, "derivative of an order-0 series");
        QPowerSeries::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, a)| a * Rational::from_int(i as i64 + 1))
                .collect(),
            self.order - 1,
        )
    }

    /// Exact polynomial multiplication; the product's valid order grows by the
    /// polynomial's valuation.
    pub fn mul_poly(&self, p: &QPolynomial) -> Self {
        if p.is_zero() {
            // An exactly zero factor yields an exactly zero series; keep order.
            return QPowerSeries::zero(self.order);
        }
        let val = p.coeffs().iter().position(|c| !c.is_zero()).unwrap();
        let order = self.order + val;
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in p.coeffs().iter().enumerate() {
                if i + j > order {
                    break;
                }
                out[i + j] += a * b;
            }
        }
        QPowerSeries::new(out, order)
    }

    /// 1/(1 - z)^d to the given order.
    pub fn inv_one_minus_z_pow(d: u32, order: usize) -> Self {
        // coefficient of z^k is binom(k + d - 1, d - 1)
        let mut c = Rational::one();
        let mut coeffs = Vec::with_capacity(order + 1);
        for k in 0..=order {
            if d == 0 {
                coeffs.push(if k == 0 { Rational::one() } else { Rational::zero() });
                continue;
            }
            if k > 0 {
                c = c * Rational::from_int(k as i64 + d as i64 - 1) / Rational::from_int(k as i64);
            }
            coeffs.push(c.clone());
        }
        QPowerSeries::new(coeffs, order)
    }
}

impl<'a, 'b> Add<&'b QPowerSeries> for &'a QPowerSeries {
    type Output = QPowerSeries;
    fn add(self, rhs: &'b QPowerSeries) -> QPowerSeries {
        let order = self.order.min(rhs.order);
        QPowerSeries::new(
            (0..=order)
                .map(|i| &self.coeffs[i] + &rhs.coeffs[i])
                .collect(),
            order,
        )
    }
}
impl Add for QPowerSeries {
    type Output = QPowerSeries;
    fn add(self, rhs: QPowerSeries) -> QPowerSeries {
        &self + &rhs
    }
}

impl<'a, 'b> Sub<&'b QPowerSeries> for &'a QPowerSeries {
    type Output = QPowerSeries;
    fn sub(self, rhs: &'b QPowerSeries) -> QPowerSeries {
        let order = self.order.min(rhs.order);
        QPowerSeries::new(
            (0..=order)
                .map(|i| &self.coeffs[i] - &rhs.coeffs[i])
                .collect(),
            order,
        )
    }
}
impl Sub for QPowerSeries {
    type Output = QPowerSeries;
    fn sub(self, rhs: QPowerSeries) -> QPowerSeries {
        &self - &rhs
    }
}

impl<'a, 'b> Mul<&'b QPowerSeries> for &'a QPowerSeries {
    type Output = QPowerSeries;
    fn mul(self, rhs: &'b QPowerSeries) -> QPowerSeries {
        // Unknown tails enter at self.order + 1 + val(rhs) and symmetrically.
        let order = (self.order + rhs.valuation_bound()).min(rhs.order + self.valuation_bound());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i > order {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j > order {
                    break;
                }
                out[i + j] += a * b;
            }
        }
        QPowerSeries::new(out, order)
    }
}
impl Mul for QPowerSeries {
    type Output = QPowerSeries;
    fn mul(self, rhs: QPowerSeries) -> QPowerSeries {
        &self * &rhs
    }
}

impl Neg for QPowerSeries {
    type Output = QPowerSeries;
    fn neg(self) -> QPowerSeries {
        let order = self.order;
        QPowerSeries::new(self.coeffs.into_iter().map(|c| -c).collect(), order)
    }
}

impl fmt::Display for QPowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if any {
                write!(f, " + ")?;
            }
            any = true;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{i}")?,
            }
        }
        if !any {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.order + 1)
    }
}

impl fmt::Debug for QPowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

pub type Int = BigInt;

/// Arbitrary-precision rational, always stored reduced.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: Int, den: Int) -> Self {
        assert!(!den.is_zero(), "rational with zero denominator");
        Rational(BigRational::new(num, den))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(Int::from(n)))
    }

    pub fn from_big(n: Int) -> Self {
        Rational(BigRational::from_integer(n))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &Int {
        self.0.numer()
    }

    pub fn denom(&self) -> &Int {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational(self.0.recip())
    }

    /// Integer power, negative exponents allowed for nonzero values.
    pub fn powi(&self, e: i32) -> Self {
        if e == 0 {
            return Rational::one();
        }
        if e < 0 {
            return self.recip().powi(-e);
        }
        Rational(self.0.pow(e))
    }

    /// Exact integer value, if the denominator is one.
    pub fn to_int(&self) -> Option<Int> {
        if self.is_integer() {
            Some(self.0.to_integer())
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Compact "p/q" form, "p" when integral. Used in expression JSON and CSV.
    pub fn to_compact_string(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_compact_string())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_compact_string())
    }
}

impl FromStr for Rational {
    type Err = String;

    /// Parses "p" or "p/q" with optional sign.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (num_s, den_s) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let num = Int::from_str(num_s).map_err(|e| format!("bad numerator {num_s:?}: {e}"))?;
        let den = Int::from_str(den_s).map_err(|e| format!("bad denominator {den_s:?}: {e}"))?;
        if den.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(Rational::new(num, den))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_int(n as i64)
    }
}

impl From<u32> for Rational {
    fn from(n: u32) -> Self {
        Rational::from_int(n as i64)
    }
}

impl From<Int> for Rational {
    fn from(n: Int) -> Self {
        Rational::from_big(n)
    }
}

impl From<(i64, i64)> for Rational {
    fn from((n, d): (i64, i64)) -> Self {
        Rational::new(Int::from(n), Int::from(d))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl<'a, 'b> $trait<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl<'a, 'b> Div<&'b Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &'b Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rational(&self.0 / &rhs.0)
    }
}
impl Div<Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        &self / &rhs
    }
}
impl<'a> Div<&'a Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        &self / rhs
    }
}
impl<'a> Div<Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        self / &rhs
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}
impl<'a> Neg for &'a Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-(&self.0))
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}
impl AddAssign<Rational> for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}
impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}
impl SubAssign<Rational> for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        self.0 -= rhs.0;
    }
}
impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Rational", 2)?;
        st.serialize_field("num", &self.numer().to_string())?;
        st.serialize_field("den", &self.denom().to_string())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct RatVisitor;
        impl<'de> Visitor<'de> for RatVisitor {
            type Value = Rational;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational as {\"num\": str, \"den\": str} or \"p/q\"")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
                Rational::from_str(v).map_err(de::Error::custom)
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Rational, A::Error> {
                let mut num: Option<String> = None;
                let mut den: Option<String> = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "num" => num = Some(map.next_value()?),
                        "den" => den = Some(map.next_value()?),
                        other => return Err(de::Error::unknown_field(other, &["num", "den"])),
                    }
                }
                let num = num.ok_or_else(|| de::Error::missing_field("num"))?;
                let den = den.ok_or_else(|| de::Error::missing_field("den"))?;
                let n = Int::from_str(&num).map_err(de::Error::custom)?;
                let d = Int::from_str(&den).map_err(de::Error::custom)?;
                if d.is_zero() {
                    return Err(de::Error::custom("zero denominator"));
                }
                Ok(Rational::new(n, d))
            }
        }
        d.deserialize_any(RatVisitor)
    }
}

/// Sum of an iterator of rationals.
pub fn rational_sum<I: IntoIterator<Item = Rational>>(it: I) -> Rational {
    let mut acc = Rational::zero();
    for x in it {
        acc += x;
    }
    acc
}

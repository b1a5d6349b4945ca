use crate::rational::Rational;
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

/// Exact element of the Q-vector space spanned by
///   1, euler_gamma, zeta'(-p) for p >= 0, zeta(m) for m >= 2, log p for p prime.
/// Log keys are reduced to primes on entry (log 12 enters as 2 log 2 + log 3),
/// which makes equality and zero-testing plain coefficient comparison.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ExtZetaExpr {
    pub constant: Rational,
    pub euler_gamma: Rational,
    pub zeta_prime: BTreeMap<u32, Rational>,
    pub zeta_pos: BTreeMap<u32, Rational>,
    pub logs: BTreeMap<u64, Rational>,
}

fn prime_factors(mut m: u64) -> Vec<(u64, u32)> {
    assert!(m >= 1, "log of a nonpositive integer");
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            let mut e = 0;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

impl ExtZetaExpr {
    pub fn zero() -> Self {
        ExtZetaExpr::default()
    }

    pub fn from_rational(c: Rational) -> Self {
        ExtZetaExpr {
            constant: c,
            ..Default::default()
        }
    }

    pub fn euler_gamma_term(c: Rational) -> Self {
        ExtZetaExpr {
            euler_gamma: c,
            ..Default::default()
        }
    }

    /// c * zeta'(-p).
    pub fn zeta_prime_term(p: u32, c: Rational) -> Self {
        let mut e = ExtZetaExpr::zero();
        e.add_zeta_prime(p, c);
        e
    }

    /// c * zeta(m), m >= 2.
    pub fn zeta_pos_term(m: u32, c: Rational) -> Self {
        assert!(m >= 2, "zeta_pos index must be >= 2");
        let mut e = ExtZetaExpr::zero();
        e.add_zeta_pos(m, c);
        e
    }

    /// c * log j for a positive integer j, reduced to prime keys.
    pub fn log_term(j: u64, c: Rational) -> Self {
        let mut e = ExtZetaExpr::zero();
        e.add_log(j, c);
        e
    }

    pub fn add_zeta_prime(&mut self, p: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.zeta_prime.entry(p).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.zeta_prime.remove(&p);
        }
    }

    pub fn add_zeta_pos(&mut self, m: u32, c: Rational) {
        assert!(m >= 2, "zeta_pos index must be >= 2");
        if c.is_zero() {
            return;
        }
        let slot = self.zeta_pos.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.zeta_pos.remove(&m);
        }
    }

    pub fn add_log(&mut self, j: u64, c: Rational) {
        if c.is_zero() || j == 1 {
            return;
        }
        for (prime, e) in prime_factors(j) {
            let coeff = &c * Rational::from_int(e as i64);
            let slot = self.logs.entry(prime).or_insert_with(Rational::zero);
            *slot += coeff;
            if slot.is_zero() {
                self.logs.remove(&prime);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero()
            && self.euler_gamma.is_zero()
            && self.zeta_prime.is_empty()
            && self.zeta_pos.is_empty()
            && self.logs.is_empty()
    }

    /// True when only the constant slot is populated.
    pub fn is_rational(&self) -> bool {
        self.euler_gamma.is_zero()
            && self.zeta_prime.is_empty()
            && self.zeta_pos.is_empty()
            && self.logs.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return ExtZetaExpr::zero();
        }
        ExtZetaExpr {
            constant: &self.constant * c,
            euler_gamma: &self.euler_gamma * c,
            zeta_prime: self
                .zeta_prime
                .iter()
                .map(|(k, v)| (*k, v * c))
                .collect(),
            zeta_pos: self.zeta_pos.iter().map(|(k, v)| (*k, v * c)).collect(),
            logs: self.logs.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn zeta_prime_coeff(&self, p: u32) -> Rational {
        self.zeta_prime
            .get(&p)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn log_coeff(&self, prime: u64) -> Rational {
        self.logs.get(&prime).cloned().unwrap_or_else(Rational::zero)
    }
}

impl<'a, 'b> Add<&'b ExtZetaExpr> for &'a ExtZetaExpr {
    type Output = ExtZetaExpr;
    fn add(self, rhs: &'b ExtZetaExpr) -> ExtZetaExpr {
        let mut out = self.clone();
        out.constant += &rhs.constant;
        out.euler_gamma += &rhs.euler_gamma;
        for (k, v) in &rhs.zeta_prime {
            out.add_zeta_prime(*k, v.clone());
        }
        for (k, v) in &rhs.zeta_pos {
            out.add_zeta_pos(*k, v.clone());
        }
        for (k, v) in &rhs.logs {
            // keys already prime
            let slot = out.logs.entry(*k).or_insert_with(Rational::zero);
            *slot += v;
            if slot.is_zero() {
                out.logs.remove(k);
            }
        }
        out
    }
}
impl Add for ExtZetaExpr {
    type Output = ExtZetaExpr;
    fn add(self, rhs: ExtZetaExpr) -> ExtZetaExpr {
        &self + &rhs
    }
}

impl<'a, 'b> Sub<&'b ExtZetaExpr> for &'a ExtZetaExpr {
    type Output = ExtZetaExpr;
    fn sub(self, rhs: &'b ExtZetaExpr) -> ExtZetaExpr {
        self + &(-rhs)
    }
}
impl Sub for ExtZetaExpr {
    type Output = ExtZetaExpr;
    fn sub(self, rhs: ExtZetaExpr) -> ExtZetaExpr {
        &self - &rhs
    }
}

impl Neg for ExtZetaExpr {
    type Output = ExtZetaExpr;
    fn neg(self) -> ExtZetaExpr {
        self.scale(&Rational::from_int(-1))
    }
}
impl<'a> Neg for &'a ExtZetaExpr {
    type Output = ExtZetaExpr;
    fn neg(self) -> ExtZetaExpr {
        self.scale(&Rational::from_int(-1))
    }
}

impl fmt::Display for ExtZetaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        if !self.constant.is_zero() {
            terms.push(self.constant.to_compact_string());
        }
        if !self.euler_gamma.is_zero() {
            terms.push(format!("{}*euler_gamma", self.euler_gamma.to_compact_string()));
        }
        for (p, c) in &self.zeta_prime {
            terms.push(format!("{}*zeta'(-{p})", c.to_compact_string()));
        }
        for (m, c) in &self.zeta_pos {
            terms.push(format!("{}*zeta({m})", c.to_compact_string()));
        }
        for (j, c) in &self.logs {
            terms.push(format!("{}*log {j}", c.to_compact_string()));
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl fmt::Debug for ExtZetaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn compact_map<K: Ord + ToString>(map: &BTreeMap<K, Rational>) -> BTreeMap<String, String> {
    map.iter()
        .map(|(k, v)| (k.to_string(), v.to_compact_string()))
        .collect()
}

impl Serialize for ExtZetaExpr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ExtZetaExpr", 5)?;
        st.serialize_field("constant", &self.constant.to_compact_string())?;
        st.serialize_field("gamma", &self.euler_gamma.to_compact_string())?;
        st.serialize_field("zeta_prime", &compact_map(&self.zeta_prime))?;
        st.serialize_field("zeta_pos", &compact_map(&self.zeta_pos))?;
        st.serialize_field("logs", &compact_map(&self.logs))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for ExtZetaExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct ExprVisitor;
        impl<'de> Visitor<'de> for ExprVisitor {
            type Value = ExtZetaExpr;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an expression object")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<ExtZetaExpr, A::Error> {
                let mut e = ExtZetaExpr::zero();
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "constant" => {
                            let v: String = map.next_value()?;
                            e.constant = Rational::from_str(&v).map_err(de::Error::custom)?;
                        }
                        "gamma" => {
                            let v: String = map.next_value()?;
                            e.euler_gamma = Rational::from_str(&v).map_err(de::Error::custom)?;
                        }
                        "zeta_prime" => {
                            let v: BTreeMap<String, String> = map.next_value()?;
                            for (k, c) in v {
                                let p: u32 = k.parse().map_err(de::Error::custom)?;
                                let c = Rational::from_str(&c).map_err(de::Error::custom)?;
                                e.add_zeta_prime(p, c);
                            }
                        }
                        "zeta_pos" => {
                            let v: BTreeMap<String, String> = map.next_value()?;
                            for (k, c) in v {
                                let m: u32 = k.parse().map_err(de::Error::custom)?;
                                let c = Rational::from_str(&c).map_err(de::Error::custom)?;
                                e.add_zeta_pos(m, c);
                            }
                        }
                        "logs" => {
                            let v: BTreeMap<String, String> = map.next_value()?;
                            for (k, c) in v {
                                let j: u64 = k.parse().map_err(de::Error::custom)?;
                                let c = Rational::from_str(&c).map_err(de::Error::custom)?;
                                e.add_log(j, c);
                            }
                        }
                        other => {
                            return Err(de::Error::unknown_field(
                                other,
                                &["constant", "gamma", "zeta_prime", "zeta_pos", "logs"],
                            ))
                        }
                    }
                }
                Ok(e)
            }
        }
        d.deserialize_map(ExprVisitor)
    }
}

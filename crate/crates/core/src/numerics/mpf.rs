//! Binary arbitrary-precision floats: value = mant * 2^exp with truncating
//! arithmetic at a context-fixed precision. The context also owns the
//! transcendental kernels (exp, ln, pow, sqrt) and caches for integer logs
//! and the constants ln 2 and euler_gamma. Contexts are cheap per-task
//! objects and deliberately not Sync; parallel callers build one each.

use crate::bernoulli::bernoulli_number;
use crate::rational::{Int, Rational};
use num_bigint::{BigInt, Sign};
use num_traits::{Signed, ToPrimitive, Zero};
use once_cell::unsync::OnceCell;
use std::cell::RefCell;
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct Mpf {
    mant: BigInt,
    exp: i64,
}

impl Mpf {
    pub fn zero() -> Self {
        Mpf {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn from_int(v: i64) -> Self {
        Mpf {
            mant: BigInt::from(v),
            exp: 0,
        }
    }

    pub fn from_bigint(v: Int) -> Self {
        Mpf { mant: v, exp: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.sign() == Sign::Minus
    }

    /// Upper bound on log2 |x|: position of the leading bit plus exponent.
    pub fn mag(&self) -> i64 {
        if self.is_zero() {
            i64::MIN / 2
        } else {
            self.mant.bits() as i64 + self.exp
        }
    }

    pub fn neg(&self) -> Mpf {
        Mpf {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Mpf {
        Mpf {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// Multiply by 2^k exactly.
    pub fn scale2(&self, k: i64) -> Mpf {
        if self.is_zero() {
            return Mpf::zero();
        }
        Mpf {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    fn align(&self, target_exp: i64) -> BigInt {
        debug_assert!(target_exp <= self.exp);
        &self.mant << (self.exp - target_exp) as u64
    }

    /// Exact addition; callers round via the context when mantissas grow.
    pub fn add(&self, other: &Mpf) -> Mpf {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let exp = self.exp.min(other.exp);
        Mpf {
            mant: self.align(exp) + other.align(exp),
            exp,
        }
    }

    pub fn sub(&self, other: &Mpf) -> Mpf {
        self.add(&other.neg())
    }

    pub fn cmp_abs(&self, other: &Mpf) -> std::cmp::Ordering {
        let diff = self.abs().sub(&other.abs());
        if diff.is_zero() {
            std::cmp::Ordering::Equal
        } else if diff.is_negative() {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        // Keep 63 bits so the magnitude always fits a signed i64.
        let (top, shift) = if bits > 63 {
            ((&self.mant >> (bits - 63) as u64).to_i64(), bits - 63)
        } else {
            (self.mant.to_i64(), 0)
        };
        let e = (self.exp + shift).clamp(-2200, 2200) as i32;
        match top {
            Some(t) => t as f64 * 2f64.powi(e),
            None => f64::NAN,
        }
    }
}

pub struct NumericContext {
    bits: i64,
    digits: u32,
    ln_cache: RefCell<HashMap<u64, Mpf>>,
    bern_cache: RefCell<Vec<Mpf>>,
    ln2_cell: OnceCell<Mpf>,
    gamma_cell: OnceCell<Mpf>,
    sqrt2_cell: OnceCell<Mpf>,
    pi_cell: OnceCell<Mpf>,
}

impl NumericContext {
    pub fn new(digits: u32) -> Self {
        let bits = (digits as i64 * 3322) / 1000 + 64;
        NumericContext {
            bits,
            digits,
            ln_cache: RefCell::new(HashMap::new()),
            bern_cache: RefCell::new(Vec::new()),
            ln2_cell: OnceCell::new(),
            gamma_cell: OnceCell::new(),
            sqrt2_cell: OnceCell::new(),
            pi_cell: OnceCell::new(),
        }
    }

    pub fn bits(&self) -> i64 {
        self.bits
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Truncate the mantissa to the working precision.
    pub fn round(&self, x: &Mpf) -> Mpf {
        let extra = x.mant.bits() as i64 - self.bits;
        if extra <= 0 || x.is_zero() {
            return x.clone();
        }
        Mpf {
            mant: &x.mant >> extra as u64,
            exp: x.exp + extra,
        }
    }

    pub fn add(&self, a: &Mpf, b: &Mpf) -> Mpf {
        self.round(&a.add(b))
    }

    pub fn sub(&self, a: &Mpf, b: &Mpf) -> Mpf {
        self.round(&a.sub(b))
    }

    pub fn mul(&self, a: &Mpf, b: &Mpf) -> Mpf {
        if a.is_zero() || b.is_zero() {
            return Mpf::zero();
        }
        self.round(&Mpf {
            mant: &a.mant * &b.mant,
            exp: a.exp + b.exp,
        })
    }

    pub fn mul_i64(&self, a: &Mpf, k: i64) -> Mpf {
        self.mul(a, &Mpf::from_int(k))
    }

    pub fn div(&self, a: &Mpf, b: &Mpf) -> Mpf {
        assert!(!b.is_zero(), "division by numeric zero");
        if a.is_zero() {
            return Mpf::zero();
        }
        // the shift must bridge any mantissa size gap, or a small numerator
        // against a full-precision denominator truncates the quotient
        let gap = (b.mant.bits() as i64 - a.mant.bits() as i64).max(0);
        let shift = self.bits + 32 + gap;
        let mant = (&a.mant << shift as u64) / &b.mant;
        self.round(&Mpf {
            mant,
            exp: a.exp - b.exp - shift,
        })
    }

    pub fn recip(&self, a: &Mpf) -> Mpf {
        self.div(&Mpf::from_int(1), a)
    }

    pub fn powi(&self, a: &Mpf, e: i64) -> Mpf {
        if e == 0 {
            return Mpf::from_int(1);
        }
        let mut base = if e < 0 { self.recip(a) } else { a.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Mpf::from_int(1);
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    pub fn from_rational(&self, r: &Rational) -> Mpf {
        let num = Mpf::from_bigint(r.numer().clone());
        let den = Mpf::from_bigint(r.denom().clone());
        self.div(&num, &den)
    }

    pub fn sqrt(&self, a: &Mpf) -> Mpf {
        assert!(!a.is_negative(), "sqrt of a negative value");
        if a.is_zero() {
            return Mpf::zero();
        }
        // Shift to an even exponent with ~2*bits mantissa bits, integer sqrt.
        let want = 2 * (self.bits + 16);
        let mut shift = want - a.mant.bits() as i64;
        if (a.exp - shift) % 2 != 0 {
            shift += 1;
        }
        let m = if shift >= 0 {
            &a.mant << shift as u64
        } else {
            &a.mant >> (-shift) as u64
        };
        self.round(&Mpf {
            mant: m.sqrt(),
            exp: (a.exp - shift) / 2,
        })
    }

    pub fn sqrt2(&self) -> Mpf {
        self.sqrt2_cell
            .get_or_init(|| self.sqrt(&Mpf::from_int(2)))
            .clone()
    }

    pub fn ln2(&self) -> Mpf {
        self.ln2_cell
            .get_or_init(|| {
                // ln 2 = 2 atanh(1/3)
                self.atanh_recip(3).scale2(1)
            })
            .clone()
    }

    pub fn pi(&self) -> Mpf {
        self.pi_cell
            .get_or_init(|| {
                // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
                let a = self.atan_recip(5).scale2(4);
                let b = self.atan_recip(239).scale2(2);
                self.sub(&a, &b)
            })
            .clone()
    }

    /// atan(1/k) for integer k >= 2, by the alternating odd power series.
    fn atan_recip(&self, k: i64) -> Mpf {
        let inv = self.recip(&Mpf::from_int(k));
        let inv2 = self.mul(&inv, &inv);
        let mut power = inv;
        let mut acc = Mpf::zero();
        let mut i = 0i64;
        let floor = -(self.bits + 16);
        loop {
            let term = self.div(&power, &Mpf::from_int(2 * i + 1));
            acc = if i % 2 == 0 {
                self.add(&acc, &term)
            } else {
                self.sub(&acc, &term)
            };
            if term.mag() < floor {
                return acc;
            }
            power = self.mul(&power, &inv2);
            i += 1;
        }
    }

    /// atanh(1/k) for integer k >= 2, by the odd power series.
    fn atanh_recip(&self, k: i64) -> Mpf {
        let inv = self.recip(&Mpf::from_int(k));
        let inv2 = self.mul(&inv, &inv);
        let mut power = inv;
        let mut acc = Mpf::zero();
        let mut i = 0i64;
        let floor = -(self.bits + 16);
        loop {
            let term = self.div(&power, &Mpf::from_int(2 * i + 1));
            acc = self.add(&acc, &term);
            if term.mag() < floor {
                return acc;
            }
            power = self.mul(&power, &inv2);
            i += 1;
        }
    }

    pub fn exp(&self, x: &Mpf) -> Mpf {
        if x.is_zero() {
            return Mpf::from_int(1);
        }
        let ln2 = self.ln2();
        // k = nearest integer to x / ln2
        let q = self.div(x, &ln2);
        let k = {
            // round to nearest: floor(q + 1/2); BigInt shr floors.
            let half = Mpf {
                mant: BigInt::from(1),
                exp: -1,
            };
            let shifted = q.add(&half);
            let int = if shifted.exp >= 0 {
                &shifted.mant << shifted.exp as u64
            } else {
                &shifted.mant >> (-shifted.exp) as u64
            };
            int.to_i64().expect("exp argument out of range")
        };
        let r = x.sub(&self.mul(&ln2, &Mpf::from_int(k)));
        // |r| <= ln2/2 + rounding; scale down 2^10 and square back up.
        const SQ: i64 = 10;
        let r_small = r.scale2(-SQ);
        let mut term = Mpf::from_int(1);
        let mut acc = Mpf::from_int(1);
        let mut i = 1i64;
        let floor = -(self.bits + 24);
        loop {
            term = self.div(&self.mul(&term, &r_small), &Mpf::from_int(i));
            acc = self.add(&acc, &term);
            if term.mag() < floor {
                break;
            }
            i += 1;
        }
        for _ in 0..SQ {
            acc = self.mul(&acc, &acc);
        }
        acc.scale2(k)
    }

    pub fn ln(&self, x: &Mpf) -> Mpf {
        assert!(!x.is_zero() && !x.is_negative(), "ln of a nonpositive value");
        // x = m * 2^e with m in [1, 2)
        let e = x.mag() - 1;
        let m = x.scale2(-e);
        // t = (m-1)/(m+1) in [0, 1/3); ln m = 2 atanh t
        let one = Mpf::from_int(1);
        let t = self.div(&m.sub(&one), &m.add(&one));
        let t2 = self.mul(&t, &t);
        let mut power = t;
        let mut acc = Mpf::zero();
        let mut i = 0i64;
        let floor = -(self.bits + 16);
        loop {
            let term = self.div(&power, &Mpf::from_int(2 * i + 1));
            acc = self.add(&acc, &term);
            if term.mag() < floor {
                break;
            }
            power = self.mul(&power, &t2);
            i += 1;
        }
        let ln_m = acc.scale2(1);
        self.add(&ln_m, &self.mul(&self.ln2(), &Mpf::from_int(e)))
    }

    /// ln of a positive integer, cached, built multiplicatively from primes.
    pub fn ln_int(&self, n: u64) -> Mpf {
        assert!(n >= 1);
        if n == 1 {
            return Mpf::zero();
        }
        if let Some(v) = self.ln_cache.borrow().get(&n) {
            return v.clone();
        }
        let v = if n % 2 == 0 {
            self.add(&self.ln_int(n / 2), &self.ln2())
        } else {
            let mut d = 3u64;
            let mut factored = None;
            while d * d <= n {
                if n % d == 0 {
                    factored = Some(d);
                    break;
                }
                d += 2;
            }
            match factored {
                Some(d) => self.add(&self.ln_int(d), &self.ln_int(n / d)),
                None => self.ln(&Mpf::from_int(n as i64)),
            }
        };
        self.ln_cache.borrow_mut().insert(n, v.clone());
        v
    }

    /// a^y for a > 0.
    pub fn pow(&self, a: &Mpf, y: &Mpf) -> Mpf {
        if y.is_zero() {
            return Mpf::from_int(1);
        }
        self.exp(&self.mul(&self.ln(a), y))
    }

    /// n^(-s) for integer n >= 1, sharing the integer-log cache.
    pub fn int_pow_neg(&self, n: u64, s: &Mpf) -> Mpf {
        if n == 1 {
            return Mpf::from_int(1);
        }
        self.exp(&self.mul(&self.ln_int(n), s).neg())
    }

    /// B_{2v} as a float, cached by v.
    pub fn bernoulli_even(&self, v: usize) -> Mpf {
        {
            let cache = self.bern_cache.borrow();
            if v < cache.len() {
                return cache[v].clone();
            }
        }
        let mut cache = self.bern_cache.borrow_mut();
        while cache.len() <= v {
            let k = 2 * cache.len() as u32;
            let b = bernoulli_number(k);
            cache.push(self.from_rational(&b));
        }
        cache[v].clone()
    }

    /// Euler's constant by Euler-Maclaurin on the harmonic numbers.
    pub fn euler_gamma(&self) -> Mpf {
        self.gamma_cell
            .get_or_init(|| {
                let n = (self.bits / 2 + 24) as u64;
                let mut h = Mpf::zero();
                for k in 1..=n {
                    h = self.add(&h, &self.recip(&Mpf::from_int(k as i64)));
                }
                let mut acc = self.sub(&h, &self.ln_int(n));
                let inv_n = self.recip(&Mpf::from_int(n as i64));
                acc = self.sub(&acc, &inv_n.scale2(-1));
                let inv_n2 = self.mul(&inv_n, &inv_n);
                let mut npow = inv_n2.clone();
                let floor = -(self.bits + 16);
                for v in 1..10_000usize {
                    let term = self.div(
                        &self.mul(&self.bernoulli_even(v), &npow),
                        &Mpf::from_int(2 * v as i64),
                    );
                    acc = self.add(&acc, &term);
                    if term.mag() < floor {
                        break;
                    }
                    npow = self.mul(&npow, &inv_n2);
                }
                acc
            })
            .clone()
    }

    /// Decimal string with the context's digit count, scientific notation.
    pub fn to_decimal(&self, x: &Mpf) -> String {
        self.to_decimal_digits(x, self.digits)
    }

    pub fn to_decimal_digits(&self, x: &Mpf, digits: u32) -> String {
        assert!(digits >= 1);
        if x.is_zero() {
            return "0".to_string();
        }
        let neg = x.is_negative();
        let a = x.abs();
        // decimal exponent estimate; the loop below corrects off-by-ones
        let mut d10 = (a.mag() as f64 * std::f64::consts::LOG10_2).floor() as i64;
        loop {
            // n = round(|x| * 10^(digits-1-d10)); want 10^(digits-1) <= n < 10^digits
            let k = digits as i64 - 1 - d10;
            let mut num = a.mant.clone();
            let mut den = BigInt::from(1);
            if k >= 0 {
                num *= BigInt::from(10u32).pow(k as u32);
            } else {
                den *= BigInt::from(10u32).pow((-k) as u32);
            }
            if a.exp >= 0 {
                num <<= a.exp as u64;
            } else {
                den <<= (-a.exp) as u64;
            }
            let scaled = (num * 2i32 + &den) / (den * 2i32);
            let s = scaled.to_string();
            if s.len() as u32 > digits {
                d10 += 1;
                continue;
            }
            if (s.len() as u32) < digits {
                d10 -= 1;
                continue;
            }
            let sign = if neg { "-" } else { "" };
            // plain decimal in the near-unit window, scientific otherwise
            if d10 >= 0 && d10 < digits as i64 {
                let cut = (d10 + 1) as usize;
                return if cut == s.len() {
                    format!("{sign}{s}")
                } else {
                    format!("{sign}{}.{}", &s[..cut], &s[cut..])
                };
            }
            if (-6..0).contains(&d10) {
                return format!("{sign}0.{}{}", "0".repeat((-d10 - 1) as usize), s);
            }
            let mantissa = if digits == 1 {
                s
            } else {
                format!("{}.{}", &s[..1], &s[1..])
            };
            return format!("{}{}e{}", sign, mantissa, d10);
        }
    }
}

//! Truncated Laurent data for the meromorphic building blocks near integer
//! anchors: Gamma factors, Hurwitz zeta in its first argument, pure powers,
//! and the assembled xi/eta series. A block stores the coefficients of
//! 1/u, 1, u in the local variable u = s - anchor. The linear coefficient is
//! optional: it is None whenever it would need basis elements outside the
//! tracked expression space (gamma^2, pi^2, zeta''), and products propagate
//! None conservatively instead of guessing.

use crate::bernoulli::hurwitz_zeta_neg_int;
use crate::combinatorics::{factorial, harmonic, rising_binomial_coeffs};
use crate::error::{DomainError, Error, StructuralError};
use crate::genfun::{kappa, r_polynomial};
use crate::rational::Rational;
use crate::spectrum::SpectrumParams;
use crate::torsion::expr::ExtZetaExpr;
use crate::values::gamma_residue;

#[derive(Clone, Debug)]
pub struct LaurentBlock {
    /// Expansion anchor of the outer variable; additions insist it matches.
    pub anchor: i64,
    pub c_m1: ExtZetaExpr,
    pub c_0: ExtZetaExpr,
    pub c_1: Option<ExtZetaExpr>,
}

impl LaurentBlock {
    pub fn zero(anchor: i64) -> Self {
        LaurentBlock {
            anchor,
            c_m1: ExtZetaExpr::zero(),
            c_0: ExtZetaExpr::zero(),
            c_1: Some(ExtZetaExpr::zero()),
        }
    }

    pub fn constant(anchor: i64, value: ExtZetaExpr) -> Self {
        LaurentBlock {
            anchor,
            c_m1: ExtZetaExpr::zero(),
            c_0: value,
            c_1: Some(ExtZetaExpr::zero()),
        }
    }

    pub fn is_regular(&self) -> bool {
        self.c_m1.is_zero()
    }

    /// Finite value at the anchor; errors if a pole survives.
    pub fn value(&self) -> Result<&ExtZetaExpr, StructuralError> {
        if !self.is_regular() {
            return Err(StructuralError::UncancelledPole {
                what: format!("block at anchor {}", self.anchor),
                residue: self.c_m1.to_string(),
            });
        }
        Ok(&self.c_0)
    }

    /// First derivative at the anchor; needs regularity and a tracked
    /// linear coefficient.
    pub fn derivative(&self) -> Result<ExtZetaExpr, StructuralError> {
        if !self.is_regular() {
            return Err(StructuralError::UncancelledPole {
                what: format!("block at anchor {}", self.anchor),
                residue: self.c_m1.to_string(),
            });
        }
        match &self.c_1 {
            Some(c) => Ok(c.clone()),
            None => Err(StructuralError::UndeterminedCoefficient {
                detail: format!("linear coefficient untracked at anchor {}", self.anchor),
            }),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        LaurentBlock {
            anchor: self.anchor,
            c_m1: self.c_m1.scale(r),
            c_0: self.c_0.scale(r),
            c_1: self.c_1.as_ref().map(|c| c.scale(r)),
        }
    }

    pub fn add(&self, other: &LaurentBlock) -> Self {
        assert_eq!(
            self.anchor, other.anchor,
            "blocks expanded at different anchors cannot be combined"
        );
        LaurentBlock {
            anchor: self.anchor,
            c_m1: &self.c_m1 + &other.c_m1,
            c_0: &self.c_0 + &other.c_0,
            c_1: match (&self.c_1, &other.c_1) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            },
        }
    }

    /// Re-expand f(lambda * u) in u: divides the residue by lambda and
    /// multiplies the linear part.
    pub fn scale_argument(&self, lambda: &Rational) -> Self {
        assert!(!lambda.is_zero());
        LaurentBlock {
            anchor: self.anchor,
            c_m1: self.c_m1.scale(&lambda.recip()),
            c_0: self.c_0.clone(),
            c_1: self.c_1.as_ref().map(|c| c.scale(lambda)),
        }
    }

    /// Product of two truncated Laurent expansions at the same anchor.
    ///
    /// Coefficient products are only representable when one factor is a pure
    /// rational; that always holds in the assemblies here because xi and eta
    /// have rational residues and rational finite values at their integer
    /// anchors, while the transcendental content sits in the linear terms.
    pub fn mul(&self, other: &LaurentBlock) -> Result<LaurentBlock, StructuralError> {
        assert_eq!(
            self.anchor, other.anchor,
            "blocks expanded at different anchors cannot be combined"
        );
        if !self.c_m1.is_zero() && !other.c_m1.is_zero() {
            return Err(StructuralError::PoleOrder {
                detail: format!(
                    "double pole at anchor {}: residues {} and {}",
                    self.anchor, self.c_m1, other.c_m1
                ),
            });
        }

        let prod = |x: &ExtZetaExpr, y: &ExtZetaExpr| -> Result<ExtZetaExpr, StructuralError> {
            if x.is_zero() || y.is_zero() {
                return Ok(ExtZetaExpr::zero());
            }
            if x.is_rational() {
                return Ok(y.scale(&x.constant));
            }
            if y.is_rational() {
                return Ok(x.scale(&y.constant));
            }
            Err(StructuralError::BasisPurity {
                what: "laurent product".into(),
                detail: format!("coefficient product ({}) * ({}) leaves the basis", x, y),
            })
        };
        // An untracked factor only matters when its partner is nonzero.
        let prod_opt = |x: &Option<ExtZetaExpr>,
                        y: &ExtZetaExpr,
                        role: &str|
         -> Result<ExtZetaExpr, StructuralError> {
            match x {
                Some(x) => prod(x, y),
                None if y.is_zero() => Ok(ExtZetaExpr::zero()),
                None => Err(StructuralError::UndeterminedCoefficient {
                    detail: format!("{role} needed against nonzero partner {y}"),
                }),
            }
        };

        let c_m1 = &prod(&self.c_m1, &other.c_0)? + &prod(&self.c_0, &other.c_m1)?;
        let mut c_0 = prod(&self.c_0, &other.c_0)?;
        c_0 = &c_0 + &prod_opt(&self.c_1, &other.c_m1, "linear coefficient")?;
        c_0 = &c_0 + &prod_opt(&other.c_1, &self.c_m1, "linear coefficient")?;

        // The linear coefficient of the product would consume quadratic terms
        // unless both factors are regular.
        let c_1 = if self.c_m1.is_zero() && other.c_m1.is_zero() {
            match (&self.c_1, &other.c_1) {
                (Some(a), Some(b)) => {
                    let left = prod(a, &other.c_0)?;
                    let right = prod(&self.c_0, b)?;
                    Some(&left + &right)
                }
                _ => None,
            }
        } else {
            None
        };

        Ok(LaurentBlock {
            anchor: self.anchor,
            c_m1,
            c_0,
            c_1,
        })
    }
}

/// Gamma(s + shift) expanded at s = 0.
pub fn gamma_shift_block(shift: i64) -> LaurentBlock {
    match shift {
        0 => LaurentBlock {
            anchor: 0,
            c_m1: ExtZetaExpr::from_rational(Rational::one()),
            c_0: ExtZetaExpr::euler_gamma_term(Rational::from_int(-1)),
            c_1: None,
        },
        -1 => LaurentBlock {
            anchor: 0,
            c_m1: ExtZetaExpr::from_rational(Rational::from_int(-1)),
            c_0: &ExtZetaExpr::euler_gamma_term(Rational::one())
                - &ExtZetaExpr::from_rational(Rational::one()),
            c_1: None,
        },
        i if i >= 1 => {
            let fact = Rational::from_big(factorial((i - 1) as u64));
            let mut c1 = ExtZetaExpr::from_rational(&fact * harmonic((i - 1) as u32));
            c1 = &c1 + &ExtZetaExpr::euler_gamma_term(-&fact * Rational::one());
            LaurentBlock {
                anchor: 0,
                c_m1: ExtZetaExpr::zero(),
                c_0: ExtZetaExpr::from_rational(fact),
                c_1: Some(c1),
            }
        }
        other => panic!("Gamma shift {other} not supported (shifts below -1 unused)"),
    }
}

/// base^(-w) expanded at w = w0 for an integer base >= 1.
pub fn power_block(base: u64, w0: i64) -> LaurentBlock {
    assert!(base >= 1);
    let value = Rational::from_int(base as i64).powi(-(w0 as i32));
    LaurentBlock {
        anchor: w0,
        c_m1: ExtZetaExpr::zero(),
        c_0: ExtZetaExpr::from_rational(value.clone()),
        c_1: Some(ExtZetaExpr::log_term(base, -value)),
    }
}

/// Hurwitz zeta w -> zeta(w, alpha) expanded at the integer w0, for integer
/// offset alpha >= 1. Anchors at or below zero carry the Bernoulli value and
/// a derivative built from zeta'(-p) plus the finite log correction
/// zeta'(-p, alpha) = zeta'(-p) + sum_{j<alpha} j^p log j. The anchor w0 = 1
/// is the simple pole with finite part gamma - H_{alpha-1}; anchors >= 2 take
/// zeta(w0) minus the first alpha-1 terms, with the derivative untracked.
pub fn hurwitz_block(w0: i64, alpha: u64) -> LaurentBlock {
    assert!(alpha >= 1);
    if w0 <= 0 {
        let l = (-w0) as u32;
        let value = hurwitz_zeta_neg_int(l, &Rational::from_int(alpha as i64));
        let mut deriv = ExtZetaExpr::zeta_prime_term(l, Rational::one());
        for j in 2..alpha {
            deriv.add_log(j, Rational::from_int(j as i64).powi(l as i32));
        }
        LaurentBlock {
            anchor: w0,
            c_m1: ExtZetaExpr::zero(),
            c_0: ExtZetaExpr::from_rational(value),
            c_1: Some(deriv),
        }
    } else if w0 == 1 {
        let mut c0 = ExtZetaExpr::euler_gamma_term(Rational::one());
        c0.constant = -harmonic((alpha - 1) as u32);
        LaurentBlock {
            anchor: 1,
            c_m1: ExtZetaExpr::from_rational(Rational::one()),
            c_0: c0,
            c_1: None,
        }
    } else {
        let m = w0 as u32;
        let mut c0 = ExtZetaExpr::zeta_pos_term(m, Rational::one());
        let mut tail = Rational::zero();
        for j in 1..alpha {
            tail += Rational::from_int(j as i64).powi(-(m as i32));
        }
        c0.constant = -tail;
        LaurentBlock {
            anchor: w0,
            c_m1: ExtZetaExpr::zero(),
            c_0: c0,
            c_1: None,
        }
    }
}

/// zeta_{2n-1}(w, alpha) = sum_i b_i sum_{p<=i} C(i,p) (-alpha)^{i-p} zeta(w-p, alpha)
/// expanded at w = w0.
fn ladder_block(n: u32, w0: i64, alpha: u64) -> LaurentBlock {
    let b = rising_binomial_coeffs(2 * n - 2);
    let mut acc = LaurentBlock::zero(w0);
    let neg_alpha = Rational::from_int(-(alpha as i64));
    for (i, bi) in b.iter().enumerate() {
        if bi.is_zero() {
            continue;
        }
        for p in 0..=i {
            let weight = bi
                * Rational::from_big(crate::combinatorics::binomial(i as u64, p as u64))
                * neg_alpha.powi((i - p) as i32);
            if weight.is_zero() {
                continue;
            }
            // zeta(w - p, alpha) as a function of w at anchor w0: inner anchor
            // shifts but the expansion variable is the same u.
            let mut inner = hurwitz_block(w0 - p as i64, alpha);
            inner.anchor = w0;
            acc = acc.add(&inner.scale(&weight));
        }
    }
    acc
}

const ANCHOR_LO: i64 = -3;

fn check_window(p: SpectrumParams, w0: i64) -> Result<(), Error> {
    let hi = 2 * p.n() as i64;
    if !(ANCHOR_LO..=hi).contains(&w0) {
        return Err(DomainError::AnchorOutsideWindow {
            s0: w0,
            lo: ANCHOR_LO,
            hi,
        }
        .into());
    }
    Ok(())
}

/// Laurent data of xi at an integer anchor in the window [-3, 2n].
/// The residue is cross-checked against the residue formula.
pub fn xi_laurent(p: SpectrumParams, w0: i64) -> Result<LaurentBlock, Error> {
    check_window(p, w0)?;
    let data = r_polynomial(&p)?;
    let a = p.a() as u64;
    let mut acc = LaurentBlock::zero(w0);
    for k in data.support() {
        let ck = data.coeff(k);
        if ck.is_zero() {
            continue;
        }
        acc = acc.add(&ladder_block(p.n(), w0, k as u64 + a).scale(&ck));
    }
    let kterm = power_block(p.n() as u64 + 1, w0);
    acc = acc.add(&kterm.scale(&-kappa(&p)));

    let expected = gamma_residue(&p, w0)?;
    if acc.c_m1 != ExtZetaExpr::from_rational(expected.clone()) {
        return Err(StructuralError::RouteMismatch {
            what: format!("xi residue at {w0}"),
            left: acc.c_m1.to_string(),
            right: expected.to_string(),
        }
        .into());
    }
    Ok(acc)
}

/// Laurent data of eta at an integer anchor in the window [-3, 2n].
pub fn eta_laurent(p: SpectrumParams, w0: i64) -> Result<LaurentBlock, Error> {
    check_window(p, w0)?;
    let data = r_polynomial(&p)?;
    let mut acc = LaurentBlock::zero(w0);
    for k in data.support() {
        let ck = data.coeff(k);
        if ck.is_zero() {
            continue;
        }
        acc = acc.add(&ladder_block(p.n(), w0, k as u64).scale(&ck));
    }
    let kterm = power_block(p.q() as u64, w0);
    acc = acc.add(&kterm.scale(&-kappa(&p)));
    Ok(acc)
}

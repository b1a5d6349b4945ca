//! Numerical evaluation of exact basis combinations and decimal snapshots.

use super::em::{hurwitz_zeta_deriv, integer_zeta};
use super::mpf::{Mpf, NumericContext};
use crate::error::Error;
use crate::torsion::ExtZetaExpr;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Decimal snapshot of a high-precision evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumValue {
    pub value: String,
    pub error: String,
    pub digits: u32,
}

impl NumValue {
    pub fn from_parts(ctx: &NumericContext, value: &Mpf, error: &Mpf) -> Self {
        NumValue {
            value: ctx.to_decimal(value),
            error: ctx.to_decimal_digits(error, 3),
            digits: ctx.digits(),
        }
    }
}

/// Evaluates basis combinations, caching the transcendental constants.
pub struct ExprEvaluator<'c> {
    ctx: &'c NumericContext,
    zeta_prime: HashMap<u32, Mpf>,
    zeta_pos: HashMap<u32, Mpf>,
}

impl<'c> ExprEvaluator<'c> {
    pub fn new(ctx: &'c NumericContext) -> Self {
        ExprEvaluator {
            ctx,
            zeta_prime: HashMap::new(),
            zeta_pos: HashMap::new(),
        }
    }

    pub fn ctx(&self) -> &'c NumericContext {
        self.ctx
    }

    /// zeta'(-p) on the principal branch along the real axis.
    pub fn zeta_prime_at(&mut self, p: u32) -> Result<Mpf, Error> {
        if let Some(v) = self.zeta_prime.get(&p) {
            return Ok(v.clone());
        }
        let s = Mpf::from_int(-(p as i64));
        let (_, d) = hurwitz_zeta_deriv(self.ctx, &s, 1)?;
        self.zeta_prime.insert(p, d.clone());
        Ok(d)
    }

    pub fn zeta_pos_at(&mut self, m: u32) -> Result<Mpf, Error> {
        if let Some(v) = self.zeta_pos.get(&m) {
            return Ok(v.clone());
        }
        let z = integer_zeta(self.ctx, m as i64, 1)?;
        self.zeta_pos.insert(m, z.clone());
        Ok(z)
    }

    pub fn eval(&mut self, e: &ExtZetaExpr) -> Result<Mpf, Error> {
        let ctx = self.ctx;
        let mut acc = ctx.from_rational(&e.constant);
        if !e.euler_gamma.is_zero() {
            let g = ctx.euler_gamma();
            acc = ctx.add(&acc, &ctx.mul(&ctx.from_rational(&e.euler_gamma), &g));
        }
        for (&p, c) in &e.zeta_prime {
            let z = self.zeta_prime_at(p)?;
            acc = ctx.add(&acc, &ctx.mul(&ctx.from_rational(c), &z));
        }
        for (&m, c) in &e.zeta_pos {
            let z = self.zeta_pos_at(m)?;
            acc = ctx.add(&acc, &ctx.mul(&ctx.from_rational(c), &z));
        }
        for (&j, c) in &e.logs {
            let lj = ctx.ln_int(j);
            acc = ctx.add(&acc, &ctx.mul(&ctx.from_rational(c), &lj));
        }
        Ok(acc)
    }
}

/// One-shot evaluation; use ExprEvaluator to share constants across calls.
pub fn eval_expr(ctx: &NumericContext, e: &ExtZetaExpr) -> Result<Mpf, Error> {
    ExprEvaluator::new(ctx).eval(e)
}

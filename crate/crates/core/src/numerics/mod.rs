//! Arbitrary-precision numerics: a compact binary float, Euler-Maclaurin
//! zeta evaluation, and the independent continuation oracles used to audit
//! the exact pipeline.

mod em;
mod eval;
mod mpf;
mod oracles;

pub use em::{hurwitz_zeta, hurwitz_zeta_deriv, integer_zeta, OffsetHurwitz};
pub use eval::{eval_expr, ExprEvaluator, NumValue};
pub use mpf::{Mpf, NumericContext};
pub use oracles::{
    claim_n1_eval, continue_at, derivative_at_zero, eta_numeric, heat_trace, omega_tail_direct,
    residue_at, theta_coefficient, xi_numeric, zetabar_direct, HeatValue,
};

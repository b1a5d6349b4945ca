//! Exact spectral zeta arithmetic for Dolbeault Laplacians on complex
//! projective space, with a verification harness that audits a family of
//! printed closed-form identities against definition-first recomputation and
//! independent numerical continuation.
//!
//! Layering, bottom up:
//! - `rational`, `polynomial`, `series`, `bernoulli`, `combinatorics`: exact
//!   arithmetic substrate.
//! - `spectrum`: eigenvalues k(k+n+1-q), multiplicities, normalized weights.
//! - `genfun`: weight and degree generating functions and their numerators.
//! - `values`: exact zeta values at nonpositive integers through the reduction
//!   to Hurwitz zetas, in corrected and printed variants.
//! - `torsion`: derivative values at 0 as exact linear combinations over the
//!   basis {1, euler_gamma, zeta'(-p), zeta(m >= 2), log primes}, and the
//!   alternating torsion combination.
//! - `numerics`: multiprecision oracles (direct summation, analytic
//!   continuation, heat-trace expansion) that certify the exact layer.

pub mod bernoulli;
pub mod combinatorics;
pub mod error;
pub mod genfun;
pub mod polynomial;
pub mod rational;
pub mod series;
pub mod spectrum;
pub mod torsion;
pub mod values;

pub mod numerics;

pub use error::{DomainError, Error, NumericError, StructuralError};
pub use rational::{Int, Rational};

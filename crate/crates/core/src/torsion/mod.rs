//! Exact derivative and torsion layer: expressions over the basis
//! {1, euler_gamma, zeta'(-p), zeta(m), log p}, truncated Laurent blocks for
//! the meromorphic building blocks, ladder weight coefficients, and the
//! derivative-at-zero assemblies with their printed evaluator variants.

pub mod coeffs;
pub mod derive;
pub mod expr;
pub mod laurent;

pub use coeffs::{alternating_bold_c, bold_c, bold_c_bsum, bold_c_closed, pq_polys, BoldC, ClosedFormVariant, PqPolys};
pub use derive::{
    derivative_combination, four_derivatives_definition, four_derivatives_printed_boldc,
    four_derivatives_printed_range, h_at_zero, h_poly, omega_block, omega_printed_conclusion,
    omega_value, torsion_expr, torsion_printed, w_coeff, zeta_q_prime_corrected,
    zetabar_prime_corrected, zetabar_prime_printed, PrintedDerivativeForm, XiEtaDerivatives,
};
pub use expr::ExtZetaExpr;
pub use laurent::{eta_laurent, gamma_shift_block, hurwitz_block, power_block, xi_laurent, LaurentBlock};

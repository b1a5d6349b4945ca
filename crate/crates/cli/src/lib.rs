//! Command-line front end: spectral data, generating series, exact values,
//! derivative expressions, torsion, numeric oracles, and the identity-audit
//! report.

pub mod args;
pub mod cache;
pub mod output;
pub mod report;
pub mod verify;

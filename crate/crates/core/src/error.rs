use thiserror::Error;

/// Errors for requests outside an operation's domain.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DomainError {
    #[error("form degree out of range: need 1 <= q <= n, got n={n}, q={q}")]
    InvalidForm { n: u32, q: u32 },
    #[error("index k={k} below the series start index {start}")]
    IndexBelowStart { k: i64, start: i64 },
    #[error("inner index {inner} exceeds outer index {outer}")]
    InnerIndexTooLarge { inner: u32, outer: u32 },
    #[error("duplicate abscissa {x} in interpolation data")]
    DuplicateAbscissa { x: String },
    #[error("anchor {s0} outside the supported window [{lo}, {hi}]")]
    AnchorOutsideWindow { s0: i64, lo: i64, hi: i64 },
    #[error("eigenvalue overflow at k={k}")]
    EigenvalueOverflow { k: i64 },
    #[error("printed form undefined here: {reason}")]
    PrintedFormUndefined { reason: String },
    #[error("argument outside domain: {reason}")]
    Argument { reason: String },
}

/// Errors for violated internal invariants. These indicate an inconsistency
/// in the formula pipeline itself and map to exit code 3 in the CLI.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructuralError {
    #[error("support violation in {what}: {detail}")]
    Support { what: String, detail: String },
    #[error("integrality violation: {what} = {value} is not an integer")]
    Integrality { what: String, value: String },
    #[error("dual-route disagreement in {what}: {left} vs {right}")]
    RouteMismatch {
        what: String,
        left: String,
        right: String,
    },
    #[error("pole order too high in Laurent product: {detail}")]
    PoleOrder { detail: String },
    #[error("undetermined Laurent coefficient consumed: {detail}")]
    UndeterminedCoefficient { detail: String },
    #[error("uncancelled pole in {what}: residue {residue}")]
    UncancelledPole { what: String, residue: String },
    #[error("unexpected basis element in {what}: {detail}")]
    BasisPurity { what: String, detail: String },
}

/// Errors from the multiprecision numeric layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumericError {
    #[error("evaluation too close to a pole: {detail}")]
    NearPole { detail: String },
    #[error("series failed to converge within {limit} terms: {what}")]
    NoConvergence { what: String, limit: usize },
    #[error("precision exhausted in {what}")]
    Precision { what: String },
    #[error("invalid numeric argument: {reason}")]
    Argument { reason: String },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Structural(#[from] StructuralError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

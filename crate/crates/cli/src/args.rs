use clap::{Args, Parser, Subcommand, ValueEnum};
use projzeta_core::spectrum::StartIndex;
use projzeta_core::values::FormulaVariant;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "projzeta",
    version,
    about = "Exact spectral zeta values, derivatives, and analytic torsion on complex projective space",
    disable_help_subcommand = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Eigenvalues, multiplicities, and normalized weights
    Spectrum(SpectrumArgs),
    /// Weight generating function: numerator polynomial, kappa, degree numerator
    Genfun(GenfunArgs),
    /// Exact zeta values at nonpositive integers
    Values(ValuesArgs),
    /// Derivative at 0 as an exact basis combination
    Derivatives(DerivativesArgs),
    /// Alternating torsion combination
    Torsion(TorsionArgs),
    /// Multiprecision oracles: direct evaluation, continuation, heat trace
    Oracle(OracleArgs),
    /// Audit every tracked identity and write report.json + report.md
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum StartIndexArg {
    /// Sum from k = q (the full series)
    #[value(name = "q")]
    Q,
    /// Sum from k = q+1 (drops the k = q term; kept for auditing)
    #[value(name = "q+1")]
    QPlusOne,
}

impl From<StartIndexArg> for StartIndex {
    fn from(v: StartIndexArg) -> StartIndex {
        match v {
            StartIndexArg::Q => StartIndex::AtQ,
            StartIndexArg::QPlusOne => StartIndex::AfterQ,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    /// Forms exactly as displayed in the audited source
    Printed,
    /// Re-derived forms certified by the oracles
    Corrected,
}

impl From<VariantArg> for FormulaVariant {
    fn from(v: VariantArg) -> FormulaVariant {
        match v {
            VariantArg::Printed => FormulaVariant::Printed,
            VariantArg::Corrected => FormulaVariant::Corrected,
        }
    }
}

#[derive(Args, Debug)]
pub struct CommonArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Cache directory (also via PROJZETA_CACHE); caching is off without it
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub q: u32,
    /// Largest k to list
    #[arg(long, default_value_t = 12)]
    pub k_max: i64,
    #[arg(long, value_enum, default_value_t = StartIndexArg::Q)]
    pub start_index: StartIndexArg,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct GenfunArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub q: u32,
    /// Series truncation order for the polynomiality diagnostic (default 6n+q)
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long, value_enum, default_value_t = StartIndexArg::Q)]
    pub start_index: StartIndexArg,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct ValuesArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub q: u32,
    /// Values at 0, -1, ..., -m-max
    #[arg(long, default_value_t = 3)]
    pub m_max: u32,
    #[arg(long, value_enum, default_value_t = VariantArg::Corrected)]
    pub formula_variant: VariantArg,
    #[arg(long, value_enum, default_value_t = StartIndexArg::Q)]
    pub start_index: StartIndexArg,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct DerivativesArgs {
    #[arg(long)]
    pub n: u32,
    /// Single form degree; omit to list every q from 1 to n
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long, value_enum, default_value_t = VariantArg::Corrected)]
    pub formula_variant: VariantArg,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct TorsionArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, value_enum, default_value_t = VariantArg::Corrected)]
    pub formula_variant: VariantArg,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct OracleOp {
    /// Evaluate zbar_q at a rational point, e.g. 5/2
    #[arg(long)]
    pub at: Option<String>,
    /// Derivative of zbar_q at 0 by central differences
    #[arg(long)]
    pub deriv0: bool,
    /// zbar_q(-M) from the small-time heat trace expansion
    #[arg(long)]
    pub theta: Option<u32>,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub q: u32,
    #[command(flatten)]
    pub op: OracleOp,
    #[arg(long, default_value_t = 60)]
    pub digits: u32,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Largest n the audit sweeps
    #[arg(long, default_value_t = 2)]
    pub n_max: u32,
    /// Working precision for numeric cells (each is re-run at twice this)
    #[arg(long, default_value_t = 60)]
    pub digits: u32,
    /// Directory receiving report.json and report.md
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[command(flatten)]
    pub common: CommonArgs,
}

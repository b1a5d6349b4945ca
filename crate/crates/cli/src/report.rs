use projzeta_core::torsion::ExtZetaExpr;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// One audited identity at one parameter cell. `residual` follows the
/// convention printed minus corrected wherever a printed form is involved.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportCell {
    pub id: String,
    pub params: BTreeMap<String, i64>,
    pub variant: String,
    pub status: Status,
    pub residual: Residual,
    /// Working decimal digits for numeric verdicts; 0 for exact ones.
    pub precision: u32,
    pub detail: String,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// Exact identity holds
    Verified,
    /// Exact identity fails, or a printed form is undefined
    Refuted,
    /// Numeric comparison within tolerance, stable under precision doubling
    NumericAgree,
    /// Numeric comparison out of tolerance, or verdict unstable
    NumericDisagree,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Verified => "verified",
            Status::Refuted => "refuted",
            Status::NumericAgree => "numeric-agree",
            Status::NumericDisagree => "numeric-disagree",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Residual {
    /// Identity holds exactly
    Zero,
    /// Exact rational difference
    Rational { value: String },
    /// Exact difference over the expression basis
    Expr { expr: ExtZetaExpr },
    /// Numeric difference with error bar
    Numeric {
        value: String,
        error: String,
        digits: u32,
    },
    /// The audited form has no value here (e.g. division by a zero index)
    Undefined,
}

impl Residual {
    pub fn display(&self) -> String {
        match self {
            Residual::Zero => "0".into(),
            Residual::Rational { value } => value.clone(),
            Residual::Expr { expr } => expr.to_string(),
            Residual::Numeric { value, error, .. } => format!("{value} +/- {error}"),
            Residual::Undefined => "undefined".into(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub verified: usize,
    pub refuted: usize,
    pub numeric_agree: usize,
    pub numeric_disagree: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub tool_version: String,
    pub n_max: u32,
    pub digits: u32,
    pub summary: Summary,
    pub cells: Vec<ReportCell>,
}

pub fn params_key(params: &BTreeMap<String, i64>) -> String {
    params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

impl VerificationReport {
    /// Deterministic assembly: sort by (id, params, variant), then count.
    pub fn assemble(n_max: u32, digits: u32, mut cells: Vec<ReportCell>) -> Self {
        cells.sort_by(|a, b| {
            (&a.id, params_key(&a.params), &a.variant).cmp(&(
                &b.id,
                params_key(&b.params),
                &b.variant,
            ))
        });
        let mut summary = Summary::default();
        for c in &cells {
            match c.status {
                Status::Verified => summary.verified += 1,
                Status::Refuted => summary.refuted += 1,
                Status::NumericAgree => summary.numeric_agree += 1,
                Status::NumericDisagree => summary.numeric_disagree += 1,
            }
        }
        VerificationReport {
            tool_version: crate::cache::version().into(),
            n_max,
            digits,
            summary,
            cells,
        }
    }

    pub fn to_markdown(&self) -> String {
        let mut md = String::new();
        md.push_str("# Identity audit\n\n");
        md.push_str(&format!(
            "Tool version {}, sweep n <= {}, {} working digits \
             (numeric verdicts re-checked at {}).\n\n",
            self.tool_version,
            self.n_max,
            self.digits,
            self.digits * 2
        ));
        md.push_str(&format!(
            "{} cells: {} verified, {} refuted, {} numeric-agree, {} numeric-disagree.\n\n",
            self.cells.len(),
            self.summary.verified,
            self.summary.refuted,
            self.summary.numeric_agree,
            self.summary.numeric_disagree
        ));
        md.push_str(
            "Residuals are printed minus corrected wherever a printed form is involved.\n\n",
        );
        md.push_str("| identity | params | variant | status | residual | digits |\n");
        md.push_str("|---|---|---|---|---|---|\n");
        for c in &self.cells {
            md.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} |\n",
                c.id,
                params_key(&c.params),
                c.variant,
                c.status,
                md_escape(&c.residual.display()),
                if c.precision == 0 {
                    "exact".to_string()
                } else {
                    c.precision.to_string()
                }
            ));
        }
        let flagged: Vec<&ReportCell> = self
            .cells
            .iter()
            .filter(|c| matches!(c.status, Status::Refuted | Status::NumericDisagree))
            .collect();
        if !flagged.is_empty() {
            md.push_str("\n## Flagged identities\n\n");
            for c in flagged {
                md.push_str(&format!(
                    "- **{}** ({}; {}): {} Residual: {}\n",
                    c.id,
                    params_key(&c.params),
                    c.variant,
                    c.detail,
                    md_escape(&c.residual.display())
                ));
            }
        }
        md
    }
}

fn md_escape(s: &str) -> String {
    s.replace('|', "\\|")
}

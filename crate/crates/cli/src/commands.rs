//! Subcommand implementations. Each data command builds an `Emission`
//! (canonical JSON plus a tabular view); `verify` writes the audit report.

use crate::args::*;
use crate::cache::{write_atomic, Cache};
use crate::output::{canonical_json, expr_rows, Emission};
use crate::verify::run_verify;
use projzeta_core::genfun::{kappa, ode_residual, r_polynomial, t_closed_form_printed, t_numerator};
use projzeta_core::numerics::{
    claim_n1_eval, continue_at, derivative_at_zero, eval_expr, theta_coefficient, zetabar_direct,
    Mpf, NumValue, NumericContext,
};
use projzeta_core::rational::Rational;
use projzeta_core::spectrum::{alpha, eigenvalue, multiplicity, SpectrumParams};
use projzeta_core::torsion::{
    torsion_expr, torsion_printed, zetabar_prime_corrected, zetabar_prime_printed, ExtZetaExpr,
    PrintedDerivativeForm,
};
use projzeta_core::values::{zetabar_neg, FormulaVariant};
use projzeta_core::{DomainError, Error};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::io::Write;

#[derive(Debug)]
pub enum CliError {
    /// Malformed flag values; maps to exit code 2.
    Usage(String),
    /// Errors from the exact/numeric layers; structural ones map to exit 3.
    Core(Error),
    /// Filesystem problems; exit code 1.
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}
impl From<DomainError> for CliError {
    fn from(e: DomainError) -> Self {
        CliError::Core(e.into())
    }
}
impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub fn exit_code(e: &CliError) -> i32 {
    match e {
        CliError::Usage(_) => 2,
        CliError::Core(Error::Structural(_)) => 3,
        _ => 1,
    }
}

fn start_label(s: StartIndexArg) -> &'static str {
    match s {
        StartIndexArg::Q => "q",
        StartIndexArg::QPlusOne => "q+1",
    }
}

fn variant_label(v: VariantArg) -> &'static str {
    match v {
        VariantArg::Printed => "printed",
        VariantArg::Corrected => "corrected",
    }
}

/// Render through the cache for canonical JSON, directly otherwise.
fn emit(
    cache: &Cache,
    op: &str,
    params: BTreeMap<String, String>,
    format: Format,
    build: impl FnOnce() -> Result<Emission, CliError>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let text = if format == Format::Json {
        cache.load_or_compute(op, &params, || build().map(|e| canonical_json(&e.json)))?
    } else {
        build()?.render(format)
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn numeric_field(ctx: &NumericContext, expr: &ExtZetaExpr) -> Result<Value, Error> {
    let v = eval_expr(ctx, expr)?;
    let err = Mpf::from_int(1).scale2(v.mag() - ctx.bits() + 16);
    Ok(serde_json::to_value(NumValue::from_parts(ctx, &v, &err)).expect("numvalue json"))
}

pub fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Spectrum(a) => spectrum_cmd(a, out),
        Command::Genfun(a) => genfun_cmd(a, out),
        Command::Values(a) => values_cmd(a, out),
        Command::Derivatives(a) => derivatives_cmd(a, out),
        Command::Torsion(a) => torsion_cmd(a, out),
        Command::Oracle(a) => oracle_cmd(a, out),
        Command::Verify(a) => verify_cmd(a, out),
    }
}

fn spectrum_cmd(a: SpectrumArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let cache = Cache::from_options(a.common.cache_dir.clone());
    let params: BTreeMap<String, String> = [
        ("n".to_string(), a.n.to_string()),
        ("q".to_string(), a.q.to_string()),
        ("k_max".to_string(), a.k_max.to_string()),
        ("start_index".to_string(), start_label(a.start_index).into()),
    ]
    .into();
    emit(
        &cache,
        "spectrum",
        params,
        a.common.format,
        || {
            let p = SpectrumParams::with_start(a.n, a.q, a.start_index.into())?;
            let mut rows_json = Vec::new();
            let mut rows = Vec::new();
            for k in p.start_k()..=a.k_max {
                let ev = eigenvalue(&p, k)?;
                let d = multiplicity(&p, k)?;
                let al = alpha(&p, k)?;
                rows_json.push(json!({
                    "k": k,
                    "eigenvalue": ev,
                    "multiplicity": d.to_string(),
                    "alpha": al.to_compact_string(),
                }));
                rows.push(vec![
                    k.to_string(),
                    ev.to_string(),
                    d.to_string(),
                    al.to_compact_string(),
                ]);
            }
            Ok(Emission {
                json: json!({
                    "n": a.n,
                    "q": a.q,
                    "start_index": start_label(a.start_index),
                    "rows": rows_json,
                }),
                headers: vec!["k", "eigenvalue", "multiplicity", "alpha"],
                rows,
            })
        },
        out,
    )
}

fn genfun_cmd(a: GenfunArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let cache = Cache::from_options(a.common.cache_dir.clone());
    let order = a.order.unwrap_or((6 * a.n + a.q) as usize);
    let params: BTreeMap<String, String> = [
        ("n".to_string(), a.n.to_string()),
        ("q".to_string(), a.q.to_string()),
        ("order".to_string(), order.to_string()),
        ("start_index".to_string(), start_label(a.start_index).into()),
    ]
    .into();
    emit(
        &cache,
        "genfun",
        params,
        a.common.format,
        || {
            let p = SpectrumParams::with_start(a.n, a.q, a.start_index.into())?;
            let r = r_polynomial(&p)?;
            let t = t_numerator(&p)?;
            let tform = t_closed_form_printed(&p)?;
            let ode_ok = ode_residual(&p, order, true).is_zero_to_order();
            let mut r_map = serde_json::Map::new();
            let mut rows = Vec::new();
            for k in r.support() {
                r_map.insert(
                    k.to_string(),
                    Value::String(r.coeff(k).to_compact_string()),
                );
                rows.push(vec![
                    "r".to_string(),
                    k.to_string(),
                    r.coeff(k).to_compact_string(),
                ]);
            }
            let t_coeffs: Vec<Value> = (0..=t.degree().unwrap_or(0))
                .map(|i| Value::String(t.coeff(i).to_compact_string()))
                .collect();
            for (i, c) in t_coeffs.iter().enumerate() {
                rows.push(vec![
                    "t_numerator".to_string(),
                    i.to_string(),
                    c.as_str().unwrap_or_default().to_string(),
                ]);
            }
            Ok(Emission {
                json: json!({
                    "n": a.n,
                    "q": a.q,
                    "start_index": start_label(a.start_index),
                    "order": order,
                    "kappa": kappa(&p).to_compact_string(),
                    "r_support": r.support(),
                    "r": Value::Object(r_map),
                    "t_numerator": t_coeffs,
                    "ode_identity_holds": ode_ok,
                    "t_closed_form_first_mismatch": tform.first_mismatch,
                }),
                headers: vec!["series", "index", "coefficient"],
                rows,
            })
        },
        out,
    )
}

fn values_cmd(a: ValuesArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let cache = Cache::from_options(a.common.cache_dir.clone());
    let params: BTreeMap<String, String> = [
        ("n".to_string(), a.n.to_string()),
        ("q".to_string(), a.q.to_string()),
        ("m_max".to_string(), a.m_max.to_string()),
        ("variant".to_string(), variant_label(a.formula_variant).into()),
        ("start_index".to_string(), start_label(a.start_index).into()),
    ]
    .into();
    emit(
        &cache,
        "values",
        params,
        a.common.format,
        || {
            let p = SpectrumParams::with_start(a.n, a.q, a.start_index.into())?;
            let mut rows_json = Vec::new();
            let mut rows = Vec::new();
            for m in 0..=a.m_max {
                match zetabar_neg(&p, m, a.formula_variant.into()) {
                    Ok(v) => {
                        rows_json.push(json!({"m": m, "value": v.to_compact_string()}));
                        rows.push(vec![m.to_string(), v.to_compact_string()]);
                    }
                    Err(Error::Domain(DomainError::PrintedFormUndefined { reason })) => {
                        rows_json.push(json!({"m": m, "value": null, "note": reason}));
                        rows.push(vec![m.to_string(), "undefined".to_string()]);
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            Ok(Emission {
                json: json!({
                    "n": a.n,
                    "q": a.q,
                    "variant": variant_label(a.formula_variant),
                    "start_index": start_label(a.start_index),
                    "rows": rows_json,
                }),
                headers: vec!["m", "value"],
                rows,
            })
        },
        out,
    )
}

fn derivatives_cmd(a: DerivativesArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let cache = Cache::from_options(a.common.cache_dir.clone());
    let mut params: BTreeMap<String, String> = [
        ("n".to_string(), a.n.to_string()),
        ("variant".to_string(), variant_label(a.formula_variant).into()),
    ]
    .into();
    if let Some(q) = a.q {
        params.insert("q".to_string(), q.to_string());
    }
    emit(
        &cache,
        "derivatives",
        params,
        a.common.format,
        || {
            let qs: Vec<u32> = match a.q {
                Some(q) => vec![q],
                None => (1..=a.n).collect(),
            };
            let ctx = NumericContext::new(60);
            let mut rows_json = Vec::new();
            let mut rows = Vec::new();
            for q in qs {
                let p = SpectrumParams::new(a.n, q)?;
                match a.formula_variant {
                    VariantArg::Corrected => {
                        let e = zetabar_prime_corrected(p)?;
                        rows_json.push(json!({
                            "q": q,
                            "zetabar_prime": serde_json::to_value(&e).expect("expr json"),
                            "numeric": numeric_field(&ctx, &e)?,
                        }));
                        rows.extend(expr_rows(
                            &[q.to_string(), "corrected".to_string()],
                            &e,
                        ));
                    }
                    VariantArg::Printed => {
                        let forms = [
                            ("assembly", PrintedDerivativeForm::Assembly),
                            ("xi_closed", PrintedDerivativeForm::XiClosed),
                            ("aggregated", PrintedDerivativeForm::Aggregated),
                        ];
                        let mut obj = serde_json::Map::new();
                        obj.insert("q".to_string(), json!(q));
                        for (name, form) in forms {
                            let e = zetabar_prime_printed(p, form)?;
                            obj.insert(
                                name.to_string(),
                                serde_json::to_value(&e).expect("expr json"),
                            );
                            rows.extend(expr_rows(&[q.to_string(), name.to_string()], &e));
                        }
                        rows_json.push(Value::Object(obj));
                    }
                }
            }
            Ok(Emission {
                json: json!({
                    "n": a.n,
                    "variant": variant_label(a.formula_variant),
                    "rows": rows_json,
                }),
                headers: vec!["q", "form", "term", "coefficient"],
                rows,
            })
        },
        out,
    )
}

fn torsion_cmd(a: TorsionArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let cache = Cache::from_options(a.common.cache_dir.clone());
    let params: BTreeMap<String, String> = [
        ("n".to_string(), a.n.to_string()),
        ("variant".to_string(), variant_label(a.formula_variant).into()),
    ]
    .into();
    emit(
        &cache,
        "torsion",
        params,
        a.common.format,
        || {
            let e = match a.formula_variant {
                VariantArg::Corrected => torsion_expr(a.n)?,
                VariantArg::Printed => torsion_printed(a.n)?,
            };
            let ctx = NumericContext::new(60);
            let mut v = serde_json::to_value(&e).expect("expr json");
            v.as_object_mut()
                .expect("expr object")
                .insert("numeric".to_string(), numeric_field(&ctx, &e)?);
            Ok(Emission {
                json: v,
                headers: vec!["term", "coefficient"],
                rows: expr_rows(&[], &e),
            })
        },
        out,
    )
}

fn oracle_cmd(a: OracleArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let cache = Cache::from_options(a.common.cache_dir.clone());
    let mut params: BTreeMap<String, String> = [
        ("n".to_string(), a.n.to_string()),
        ("q".to_string(), a.q.to_string()),
        ("digits".to_string(), a.digits.to_string()),
    ]
    .into();
    let op_name;
    let arg_str;
    if let Some(s) = &a.op.at {
        op_name = "at";
        arg_str = s.clone();
    } else if a.op.deriv0 {
        op_name = "deriv0";
        arg_str = "0".to_string();
    } else {
        op_name = "theta";
        arg_str = a.op.theta.expect("clap group").to_string();
    }
    params.insert("op".to_string(), op_name.to_string());
    params.insert("arg".to_string(), arg_str.clone());
    emit(
        &cache,
        "oracle",
        params,
        a.common.format,
        || {
            let p = SpectrumParams::new(a.n, a.q)?;
            let (nv, method, digits) = if let Some(s_str) = &a.op.at {
                let s_rat: Rational = s_str
                    .parse()
                    .map_err(|e| CliError::Usage(format!("--at: {e}")))?;
                let ctx = NumericContext::new(a.digits);
                if s_rat > Rational::from_int(a.n as i64) {
                    let s = ctx.from_rational(&s_rat);
                    let v = zetabar_direct(&ctx, &p, &s)?;
                    let err = Mpf::from_int(1).scale2(v.mag() - ctx.bits() + 16);
                    (
                        NumValue::from_parts(&ctx, &v, &err),
                        "direct-sum",
                        a.digits,
                    )
                } else {
                    let (v, err) = continue_at(&ctx, &s_rat, |s| claim_n1_eval(&ctx, &p, s))?;
                    (
                        NumValue::from_parts(&ctx, &v, &err),
                        "continuation",
                        a.digits,
                    )
                }
            } else if a.op.deriv0 {
                let ctx = NumericContext::new(a.digits);
                let (v, err) = derivative_at_zero(&ctx, |s| claim_n1_eval(&ctx, &p, s))?;
                (
                    NumValue::from_parts(&ctx, &v, &err),
                    "central-difference",
                    a.digits,
                )
            } else {
                let m = a.op.theta.expect("clap group");
                let hv = theta_coefficient(&p, m)?;
                let ctx = NumericContext::new(hv.digits);
                (
                    NumValue::from_parts(&ctx, &hv.value, &hv.error),
                    "heat-trace",
                    hv.digits,
                )
            };
            let row = vec![
                a.n.to_string(),
                a.q.to_string(),
                op_name.to_string(),
                arg_str.clone(),
                nv.value.clone(),
                nv.error.clone(),
                digits.to_string(),
                method.to_string(),
            ];
            Ok(Emission {
                json: json!({
                    "n": a.n,
                    "q": a.q,
                    "op": op_name,
                    "arg": arg_str,
                    "value": nv.value,
                    "error": nv.error,
                    "digits": digits,
                    "method": method,
                }),
                headers: vec![
                    "n", "q", "op", "arg", "value", "error", "digits", "method",
                ],
                rows: vec![row],
            })
        },
        out,
    )
}

fn verify_cmd(a: VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let report = run_verify(a.n_max, a.digits)?;
    let json = serde_json::to_value(&report).expect("report json");
    let json_path = a.out.join("report.json");
    let md_path = a.out.join("report.md");
    write_atomic(&json_path, canonical_json(&json).as_bytes())?;
    write_atomic(&md_path, report.to_markdown().as_bytes())?;
    writeln!(out, "cells: {}", report.cells.len())?;
    writeln!(
        out,
        "verified: {}  refuted: {}  numeric-agree: {}  numeric-disagree: {}",
        report.summary.verified,
        report.summary.refuted,
        report.summary.numeric_agree,
        report.summary.numeric_disagree
    )?;
    writeln!(out, "wrote: {}", json_path.display())?;
    writeln!(out, "wrote: {}", md_path.display())?;
    Ok(())
}

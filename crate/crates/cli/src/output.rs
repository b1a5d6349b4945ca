use crate::args::Format;
use projzeta_core::torsion::ExtZetaExpr;

/// One command result: a canonical JSON value plus a tabular view of the
/// same data for csv and text rendering. Rationals stay exact strings in
/// every format.
pub struct Emission {
    pub json: serde_json::Value,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Emission {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => canonical_json(&self.json),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.headers).expect("csv header");
                for row in &self.rows {
                    w.write_record(row).expect("csv row");
                }
                String::from_utf8(w.into_inner().expect("csv flush")).expect("csv utf8")
            }
            Format::Text => {
                let mut widths: Vec<usize> = self.headers.iter().map(|h| h.len()).collect();
                for row in &self.rows {
                    for (i, cell) in row.iter().enumerate() {
                        widths[i] = widths[i].max(cell.len());
                    }
                }
                let mut out = String::new();
                let line = |cells: Vec<String>, widths: &[usize]| {
                    let mut s = String::new();
                    for (i, c) in cells.iter().enumerate() {
                        if i > 0 {
                            s.push_str("  ");
                        }
                        s.push_str(c);
                        if i + 1 < cells.len() {
                            s.push_str(&" ".repeat(widths[i] - c.len()));
                        }
                    }
                    s.push('\n');
                    s
                };
                out.push_str(&line(
                    self.headers.iter().map(|h| h.to_string()).collect(),
                    &widths,
                ));
                for row in &self.rows {
                    out.push_str(&line(row.clone(), &widths));
                }
                out
            }
        }
    }
}

/// The canonical JSON rendering cached and compared byte-for-byte: pretty,
/// two-space indent, struct field order as declared, maps sorted (BTreeMap).
pub fn canonical_json(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json render");
    s.push('\n');
    s
}

/// Rows (term, coefficient) over the expression basis, nonzero entries only;
/// an identically zero expression emits the single row ("1", "0").
pub fn expr_rows(prefix: &[String], e: &ExtZetaExpr) -> Vec<Vec<String>> {
    let mut terms: Vec<(String, String)> = Vec::new();
    if !e.constant.is_zero() {
        terms.push(("1".into(), e.constant.to_compact_string()));
    }
    if !e.euler_gamma.is_zero() {
        terms.push(("gamma".into(), e.euler_gamma.to_compact_string()));
    }
    for (p, c) in &e.zeta_prime {
        terms.push((format!("zeta'(-{p})"), c.to_compact_string()));
    }
    for (m, c) in &e.zeta_pos {
        terms.push((format!("zeta({m})"), c.to_compact_string()));
    }
    for (j, c) in &e.logs {
        terms.push((format!("log({j})"), c.to_compact_string()));
    }
    if terms.is_empty() {
        terms.push(("1".into(), "0".into()));
    }
    terms
        .into_iter()
        .map(|(t, c)| {
            let mut row = prefix.to_vec();
            row.push(t);
            row.push(c);
            row
        })
        .collect()
}

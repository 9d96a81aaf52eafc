//! CSV and markdown projections of the JSON documents, and the Gram/Schur tables.

use crate::report::ReportDocument;
use aos_core::operator::GramMatrix;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Serialize)]
struct InequalityRow<'a> {
    case_id: &'a str,
    #[serde(rename = "N")]
    n: usize,
    name: &'a str,
    lhs: f64,
    rhs: f64,
    margin: f64,
    budget: f64,
    status: &'a str,
}

fn csv_string<T: Serialize>(rows: impl IntoIterator<Item = T>, header_if_empty: &[&str]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut any = false;
    for r in rows {
        w.serialize(r).expect("in-memory csv");
        any = true;
    }
    if !any {
        w.write_record(header_if_empty).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
}

/// One row per inequality of every document.
pub fn reports_csv(docs: &[ReportDocument]) -> String {
    let rows = docs.iter().flat_map(|d| {
        d.inequalities.iter().map(move |i| InequalityRow {
            case_id: &d.case_id,
            n: d.n,
            name: &i.name,
            lhs: i.lhs,
            rhs: i.rhs,
            margin: i.margin,
            budget: i.budget,
            status: i.status.as_str(),
        })
    });
    csv_string(rows, &["case_id", "N", "name", "lhs", "rhs", "margin", "budget", "status"])
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "—".to_string(), |v| format!("{v:.10e}"))
}

/// A markdown section for one document.
pub fn report_md(d: &ReportDocument) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "## {} (N = {}, mode {})\n", d.case_id, d.n, d.mode);
    let _ = writeln!(s, "status: **{}**\n", d.status.as_str());
    if !d.params.is_empty() {
        let ps: Vec<String> = d.params.iter().map(|(k, v)| format!("{k} = {v}")).collect();
        let _ = writeln!(s, "parameters: {}\n", ps.join(", "));
    }
    if let Some(e) = &d.error {
        let _ = writeln!(s, "error: {e}\n");
    }
    if let Some(c) = &d.schur {
        let _ = writeln!(
            s,
            "Schur constant: finite sup {:.10} + tail {:.3e} = {:.10} ({})\n",
            c.finite_sup,
            c.tail_bound,
            c.upper,
            if c.certified { "certified" } else { "uncertified" }
        );
    }
    if !d.inequalities.is_empty() {
        s.push_str("| inequality | lhs | rhs | margin | budget | status |\n|---|---|---|---|---|---|\n");
        for i in &d.inequalities {
            let _ = writeln!(
                s,
                "| {} | {:.10e} | {:.10e} | {:.3e} | {:.3e} | {} |",
                i.name,
                i.lhs,
                i.rhs,
                i.margin,
                i.budget,
                i.status.as_str()
            );
        }
        s.push('\n');
    }
    if let Some(diag) = &d.diagnostics {
        if let Some(a) = &diag.display {
            let _ = writeln!(
                s,
                "Displayed inequality: lhs {:.10e}, framework constant {:.10e} ({})\n",
                a.lhs,
                a.framework_constant,
                a.status.as_str()
            );
            s.push_str("| reading | constant | rhs | holds | ratio to framework |\n|---|---|---|---|---|\n");
            for r in &a.readings {
                let _ = writeln!(s, "| {} | {:.10e} | {:.10e} | {} | {:.6} |", r.label, r.constant, r.rhs, r.holds, r.ratio);
            }
            if !a.note.is_empty() {
                let _ = writeln!(s, "\n{}", a.note);
            }
            s.push('\n');
        }
        let c = &diag.compactness;
        s.push_str("| N | HS partial | row tail sup | col tail sup |\n|---|---|---|---|\n");
        for k in 0..c.n_list.len() {
            let _ = writeln!(
                s,
                "| {} | {:.6e} | {:.6e} | {:.6e} |",
                c.n_list[k], c.hs_partial[k], c.row_tail_sup[k], c.col_tail_sup[k]
            );
        }
        s.push('\n');
        let _ = writeln!(
            s,
            "min eigenvalue {}, Gram discrepancy {}, norm defect {}\n",
            opt(diag.min_eigenvalue),
            opt(diag.gram_discrepancy),
            opt(diag.norm_defect)
        );
    }
    for n in &d.notes {
        let _ = writeln!(s, "- {n}");
    }
    if !d.notes.is_empty() {
        s.push('\n');
    }
    s
}

pub fn reports_md(docs: &[ReportDocument]) -> String {
    docs.iter().map(report_md).collect::<Vec<_>>().join("\n")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GramRow {
    pub m: usize,
    pub n: usize,
    pub re: f64,
    pub im: f64,
    pub provenance: String,
    pub discrepancy: Option<f64>,
}

/// Gram entries in row-major order, 1-based.
pub fn gram_rows(g: &GramMatrix) -> Vec<GramRow> {
    let mut out = Vec::with_capacity(g.n * g.n);
    for m in 1..=g.n {
        for n in 1..=g.n {
            let k = (m - 1) * g.n + (n - 1);
            let v = g.entries[k];
            let p = g.provenance[k];
            // + 0.0 folds negative zero
            out.push(GramRow { m, n, re: v.re + 0.0, im: v.im + 0.0, provenance: p.as_str().to_string(), discrepancy: p.discrepancy() });
        }
    }
    out
}

pub fn gram_csv(rows: &[GramRow]) -> String {
    csv_string(rows, &["m", "n", "re", "im", "provenance", "discrepancy"])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchurRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub finite_sup: f64,
    pub tail_bound: f64,
    /// `finite_sup + tail_bound` when an analytic tail exists.
    pub certified_c: Option<f64>,
    pub achieved_at_row: usize,
}

pub fn schur_csv(rows: &[SchurRow]) -> String {
    csv_string(rows, &["N", "finite_sup", "tail_bound", "certified_c", "achieved_at_row"])
}

pub fn schur_md(case_id: &str, rows: &[SchurRow]) -> String {
    let mut s = format!("## {case_id}\n\n| N | finite_sup | tail | certified C |\n|---|---|---|---|\n");
    for r in rows {
        let _ = writeln!(s, "| {} | {:.12} | {:.6e} | {} |", r.n, r.finite_sup, r.tail_bound, r.certified_c.map_or_else(|| "—".to_string(), |c| format!("{c:.12}")));
    }
    s
}

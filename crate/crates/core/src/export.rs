//! Serialization of posets, flows, and result tables: JSON for machines,
//! DOT for Hasse-diagram rendering, CSV and aligned text for terminals.
//! Rational weights are rendered as exact strings (`"3/2"`), never floats.

use serde::Serialize;
use serde_json::{json, Value};

use crate::flows::{FlowReport, RationalFlow};
use crate::poset::GradedPoset;

/// JSON description of a poset: labels, ranks, and Hasse edges by index.
pub fn poset_json(p: &GradedPoset) -> Value {
    json!({
        "family": p.family().as_str(),
        "n": p.n(),
        "l": p.l(),
        "elements": (0..p.len()).map(|i| p.label(i)).collect::<Vec<_>>(),
        "ranks": (0..p.len()).map(|i| p.rank(i)).collect::<Vec<_>>(),
        "covers": p.edges(),
    })
}

/// DOT rendering of the Hasse diagram, one `rank=same` cluster per rank,
/// drawn bottom-up.
pub fn poset_dot(p: &GradedPoset) -> String {
    let mut out = String::from("digraph {\n");
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=plaintext];\n");
    out.push_str("  edge [dir=none];\n");
    for r in p.min_rank()..=p.max_rank() {
        let level = p.rank_elements(r);
        if level.is_empty() {
            continue;
        }
        out.push_str("  { rank=same;");
        for &i in level {
            out.push_str(&format!(" \"{}\";", p.label(i)));
        }
        out.push_str(" }\n");
    }
    for (lo, hi) in p.edges() {
        out.push_str(&format!("  \"{}\" -> \"{}\";\n", p.label(lo), p.label(hi)));
    }
    out.push_str("}\n");
    out
}

/// JSON description of a flow: one record per weighted Hasse edge, weights
/// as exact rational strings.
pub fn flow_json(flow: &RationalFlow) -> Value {
    let p = flow.poset();
    let edges: Vec<Value> = flow
        .iter()
        .map(|(&(lo, hi), w)| {
            json!({
                "from": p.label(lo),
                "to": p.label(hi),
                "weight": w.to_string(),
            })
        })
        .collect();
    json!({
        "family": p.family().as_str(),
        "n": p.n(),
        "l": p.l(),
        "edges": edges,
    })
}

/// JSON form of a flow audit, sums as exact rational strings.
pub fn flow_report_json(report: &FlowReport) -> Value {
    let sums = |v: &[(usize, num_rational::BigRational)]| -> Vec<Value> {
        v.iter()
            .map(|(r, s)| json!({"rank": r, "sum": s.to_string()}))
            .collect()
    };
    json!({
        "family": report.family.as_str(),
        "n": report.n,
        "l": report.l,
        "nonnegative": report.nonnegative,
        "nf1": report.nf1,
        "nf2": report.nf2,
        "up_sums": sums(&report.up_sums),
        "down_sums": sums(&report.down_sums),
        "matches_family_formula": report.matches_family_formula,
        "violations": report.violations,
        "passed": report.passed(),
    })
}

/// A titled table of strings, the common currency of the CLI output paths.
#[derive(Debug, Serialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, columns: &[&str]) -> Table {
        Table {
            title: title.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// CSV with RFC-style quoting: fields holding commas, quotes, or
    /// newlines are wrapped, inner quotes doubled.
    pub fn to_csv(&self) -> String {
        fn field(s: &str) -> String {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        }
        let mut out = String::new();
        let render = |cells: &[String]| {
            cells.iter().map(|c| field(c)).collect::<Vec<_>>().join(",")
        };
        out.push_str(&render(&self.columns));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&render(row));
            out.push('\n');
        }
        out
    }

    /// Aligned plain-text rendering with the title on top.
    pub fn to_text(&self) -> String {
        let mut widths: Vec<usize> = self.columns.iter().map(String::len).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let render = |cells: &[String]| -> String {
            let mut line = String::new();
            for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
                if i > 0 {
                    line.push_str("  ");
                }
                line.push_str(cell);
                if i + 1 < cells.len() {
                    for _ in cell.chars().count()..*w {
                        line.push(' ');
                    }
                }
            }
            line.push('\n');
            line
        };
        let mut out = String::new();
        if !self.title.is_empty() {
            out.push_str(&self.title);
            out.push('\n');
        }
        out.push_str(&render(&self.columns));
        for row in &self.rows {
            out.push_str(&render(row));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "title": self.title,
            "columns": self.columns,
            "rows": self.rows,
        })
    }
}

//! Serializable reports and their plain-text rendering.
//!
//! JSON is the authoritative form; the table view prints the same fields.
//! Indices for center elements and irreps are 1-based.

use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub basis: Vec<String>,
    pub semisimple: bool,
    pub determinant: String,
    pub center: Vec<usize>,
    /// Absent when the algebra is not semisimple.
    pub irreps: Option<Irreps>,
    pub characters: Vec<Vec<String>>,
    pub projectors: Vec<String>,
    pub dfs: Vec<DfsEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Irreps {
    pub count: usize,
    pub dims: Vec<usize>,
    pub ambiguous: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DfsEntry {
    pub irrep: usize,
    /// Qubit-sector form, read as right-multiplied by the idempotent.
    pub component: String,
    pub zero: bool,
    pub eigenvalue: String,
    pub oracle_residual: Option<f64>,
    /// The projected element exactly as computed in the algebra.
    pub element: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub theorem: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: String,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, value: impl ToString, pass: bool) -> Self {
        Self { name: name.into(), value: value.to_string(), pass }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Output {
    Report(Report),
    Verify(VerifyReport),
}

impl Output {
    pub fn to_json(&self) -> String {
        let mut s = match self {
            Output::Report(r) => serde_json::to_string_pretty(r),
            Output::Verify(v) => serde_json::to_string_pretty(v),
        }
        .expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        match self {
            Output::Report(r) => render_report(r),
            Output::Verify(v) => render_verify(v),
        }
    }
}

fn render_report(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "basis ({}):", r.basis.len());
    for (i, b) in r.basis.iter().enumerate() {
        let _ = writeln!(out, "  a{:<3} {b}", i + 1);
    }
    let _ = writeln!(out, "semisimple: {} (determinant {})", yes_no(r.semisimple), r.determinant);
    let center: Vec<String> = r.center.iter().map(|c| format!("a{c}")).collect();
    let _ = writeln!(out, "center ({}): {}", r.center.len(), center.join(" "));
    match &r.irreps {
        Some(i) => {
            let _ = writeln!(
                out,
                "irreps: {} with dims {:?}{}",
                i.count,
                i.dims,
                if i.ambiguous { " (ambiguous)" } else { "" }
            );
        }
        None => {
            let _ = writeln!(out, "irreps: unavailable");
        }
    }
    if !r.characters.is_empty() {
        let _ = writeln!(out, "characters:");
        let width = r.characters.iter().flatten().map(String::len).max().unwrap_or(1);
        for (j, row) in r.characters.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            let _ = writeln!(out, "  R{:<3} {}", j + 1, cells.join(" "));
        }
    }
    if !r.projectors.is_empty() {
        let _ = writeln!(out, "projectors:");
        for (j, p) in r.projectors.iter().enumerate() {
            let _ = writeln!(out, "  P{} = {p}", j + 1);
        }
    }
    if !r.dfs.is_empty() {
        let _ = writeln!(out, "components:");
        for e in &r.dfs {
            let residual = e.oracle_residual.map_or_else(|| "-".to_string(), |v| format!("{v:.3e}"));
            let _ = writeln!(
                out,
                "  psi{} = {}{}\n        eigenvalue {}  oracle residual {residual}",
                e.irrep,
                e.component,
                if e.zero { "  [zero]" } else { "" },
                e.eigenvalue
            );
        }
    }
    out
}

fn render_verify(v: &VerifyReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "theorem {}: {}", v.theorem, if v.pass { "pass" } else { "FAIL" });
    let width = v.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &v.checks {
        let _ = writeln!(out, "  [{}] {:<width$}  {}", if c.pass { "ok" } else { "!!" }, c.name, c.value);
    }
    out
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

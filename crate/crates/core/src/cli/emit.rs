use std::fmt::Write;

use crate::criteria::{Cell, EvidenceTable};
use crate::error::{Error, Result};

use super::RunReport;

/// The whole report as TOML. Floats use the shortest representation that
/// parses back to the same value.
pub fn to_kv(report: &RunReport) -> Result<String> {
    toml::to_string(report).map_err(|e| Error::InvalidParameter(format!("report serialization: {e}")))
}

pub fn from_kv(text: &str) -> Result<RunReport> {
    toml::from_str(text).map_err(|e| Error::InvalidParameter(format!("report parse: {}", e.message())))
}

fn cell(c: &Cell) -> String {
    match c {
        Cell::Int(v) => v.to_string(),
        Cell::Real(v) => format!("{v:.16e}"),
        Cell::Flag(b) => b.to_string(),
    }
}

pub fn table_csv(t: &EvidenceTable) -> String {
    let mut out = t.columns.join(",");
    out.push('\n');
    for row in &t.rows {
        let cells: Vec<String> = row.iter().map(cell).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Every evidence table as a CSV block with a header row, each preceded by
/// `# table: <name>`; verdicts come first as `# verdict:` lines.
pub fn to_csv(report: &RunReport) -> String {
    let mut out = String::new();
    for v in &report.verdicts {
        let _ = writeln!(out, "# verdict: {} = {:?}", v.criterion, v.holds);
    }
    for t in report.tables() {
        let _ = writeln!(out, "\n# table: {}", t.name);
        out.push_str(&table_csv(t));
    }
    out
}

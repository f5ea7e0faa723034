//! Checkers for the dynamical criteria, evaluated at a finite horizon.
//!
//! A `No` from a checker means the sufficient (or equivalent) condition
//! fails at the configured horizon; it is never a proof that the operator
//! lacks the property.

pub mod disjoint;
pub mod fhc;
pub mod furstenberg;
pub mod series;
pub mod transitivity;

use serde::{Deserialize, Serialize};

pub use disjoint::{check_disjoint, check_star_condition, StarReport};
pub use fhc::{check_chaos_equiv, check_fhc};
pub use furstenberg::{lower_density, FurstenbergFamily, ReturnSet};
pub use series::{SeriesReport, SeriesTolerances, SeriesVerdict};
pub use transitivity::{check_f_transitivity, check_sampled_3_9, check_uniform_f_convergence, SampleSets};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Holds {
    Yes,
    No,
    Inconclusive,
}

impl Holds {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Holds::Yes
        } else {
            Holds::No
        }
    }

    /// Yes and No disagree; Inconclusive disagrees with nothing.
    pub fn contradicts(self, other: Holds) -> bool {
        matches!((self, other), (Holds::Yes, Holds::No) | (Holds::No, Holds::Yes))
    }
}

/// One cell of an evidence table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Flag(bool),
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Flag(v)
    }
}

impl Cell {
    pub fn as_f64(&self) -> f64 {
        match *self {
            Cell::Int(v) => v as f64,
            Cell::Real(v) => v,
            Cell::Flag(b) => b as u8 as f64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvidenceTable {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl EvidenceTable {
    pub fn new(name: impl Into<String>, columns: &[&str]) -> Self {
        EvidenceTable {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let c = self.columns.iter().position(|n| n == name)?;
        Some(self.rows.iter().map(|r| r[c].as_f64()).collect())
    }
}

/// Verdict of one series, without the per-term data (which lives in tables).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesSummary {
    pub label: String,
    pub j: i64,
    pub k: usize,
    pub n_k: u64,
    pub horizon: usize,
    pub total: f64,
    pub tail_ratio: f64,
    pub decay_order: Option<f64>,
    pub verdict: SeriesVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionVerdict {
    pub criterion: String,
    pub holds: Holds,
    pub implications: Vec<String>,
    pub notes: Vec<String>,
    pub series: Vec<SeriesSummary>,
    pub tables: Vec<EvidenceTable>,
    pub return_set: Option<ReturnSet>,
}

impl CriterionVerdict {
    pub fn new(criterion: impl Into<String>, holds: Holds) -> Self {
        CriterionVerdict {
            criterion: criterion.into(),
            holds,
            implications: Vec::new(),
            notes: Vec::new(),
            series: Vec::new(),
            tables: Vec::new(),
            return_set: None,
        }
    }

    pub fn table(&self, name: &str) -> Option<&EvidenceTable> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn series_with(&self, label: &str) -> impl Iterator<Item = &SeriesSummary> {
        let label = label.to_string();
        self.series.iter().filter(move |s| s.label == label)
    }
}

/// Horizons and tolerances shared by the checkers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckOptions {
    /// Terms per series.
    pub l_max: usize,
    /// Values of `k` evaluated.
    pub k_count: usize,
    pub series: SeriesTolerances,
    /// A limit column passes when its final value is below this.
    pub limit_tol: f64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { l_max: 500, k_count: 8, series: SeriesTolerances::default(), limit_tol: 1e-6 }
    }
}

pub(crate) fn combine(verdicts: impl IntoIterator<Item = Holds>) -> Holds {
    let mut out = Holds::Yes;
    for v in verdicts {
        match v {
            Holds::No => return Holds::No,
            Holds::Inconclusive => out = Holds::Inconclusive,
            Holds::Yes => {}
        }
    }
    out
}

pub(crate) fn series_holds(v: SeriesVerdict) -> Holds {
    match v {
        SeriesVerdict::Converges => Holds::Yes,
        SeriesVerdict::Diverges => Holds::No,
        SeriesVerdict::Inconclusive => Holds::Inconclusive,
    }
}

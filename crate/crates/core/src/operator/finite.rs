use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::coeff::Support;
use super::shift::BasisShiftOp;
use super::spectral;
use crate::error::{Error, Result};

/// Finitely supported matrix over `ℤ × ℤ`: a finite-rank (hence compact)
/// operator with exact index bookkeeping and no truncation window.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FiniteOp {
    entries: BTreeMap<(i64, i64), f64>,
}

impl FiniteOp {
    pub fn zero() -> Self {
        FiniteOp::default()
    }

    /// Entries keyed by `(row, col)`; exact zeros are dropped.
    pub fn from_entries(entries: impl IntoIterator<Item = ((i64, i64), f64)>) -> Self {
        let mut op = FiniteOp::zero();
        for (k, v) in entries {
            *op.entries.entry(k).or_insert(0.0) += v;
        }
        op.entries.retain(|_, v| *v != 0.0);
        op
    }

    /// Materialise a shift with finite coefficient support.
    pub fn from_shift(op: &BasisShiftOp) -> Result<Self> {
        let s = op
            .support()
            .ok_or(Error::UnboundedSupport("coefficient support is not finite"))?;
        Ok(Self::from_entries(s.iter().map(|j| {
            let (target, c) = op.apply_basis(j);
            ((target, j), c)
        })))
    }

    pub fn projection(m: u32) -> Self {
        let m = m as i64;
        Self::from_entries((-m..=m).map(|j| ((j, j), 1.0)))
    }

    pub fn get(&self, row: i64, col: i64) -> f64 {
        self.entries.get(&(row, col)).copied().unwrap_or(0.0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (i64, i64, f64)> + '_ {
        self.entries.iter().map(|(&(r, c), &v)| (r, c, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn row_indices(&self) -> BTreeSet<i64> {
        self.entries.keys().map(|k| k.0).collect()
    }

    pub fn col_indices(&self) -> BTreeSet<i64> {
        self.entries.keys().map(|k| k.1).collect()
    }

    /// Bounding interval of the rows (the range lies in `span{e_i : i ∈ rows}`).
    pub fn row_span(&self) -> Support {
        span(self.entries.keys().map(|k| k.0))
    }

    pub fn col_span(&self) -> Support {
        span(self.entries.keys().map(|k| k.1))
    }

    pub fn transpose(&self) -> FiniteOp {
        FiniteOp {
            entries: self.entries.iter().map(|(&(r, c), &v)| ((c, r), v)).collect(),
        }
    }

    pub fn scaled(&self, factor: f64) -> FiniteOp {
        Self::from_entries(self.entries.iter().map(|(&k, &v)| (k, v * factor)))
    }

    /// `self + sign · other`.
    pub fn add_signed(&self, other: &FiniteOp, sign: f64) -> FiniteOp {
        let mut out = self.entries.clone();
        for (&k, &v) in &other.entries {
            *out.entry(k).or_insert(0.0) += sign * v;
        }
        out.retain(|_, v| *v != 0.0);
        FiniteOp { entries: out }
    }

    /// `self · rhs`.
    pub fn mul(&self, rhs: &FiniteOp) -> FiniteOp {
        let mut by_row: HashMap<i64, Vec<(i64, f64)>> = HashMap::new();
        for (&(r, c), &v) in &rhs.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out: BTreeMap<(i64, i64), f64> = BTreeMap::new();
        for (&(r, k), &a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(c, b) in row {
                    *out.entry((r, c)).or_insert(0.0) += a * b;
                }
            }
        }
        out.retain(|_, v| *v != 0.0);
        FiniteOp { entries: out }
    }

    /// `s · self`: row `r` moves to `r + d` with factor `c_s(r)`.
    pub fn left_mul_shift(&self, s: &BasisShiftOp) -> FiniteOp {
        let mut factors: HashMap<i64, f64> = HashMap::new();
        let mut out = BTreeMap::new();
        for (&(r, c), &v) in &self.entries {
            let f = *factors.entry(r).or_insert_with(|| s.coeff_at(r));
            let val = f * v;
            if val != 0.0 {
                out.insert((r + s.offset(), c), val);
            }
        }
        FiniteOp { entries: out }
    }

    /// `self · s`: since `s e_k = c_s(k) e_{k+d}`, column `c` moves to
    /// `c - d` with factor `c_s(c - d)`.
    pub fn right_mul_shift(&self, s: &BasisShiftOp) -> FiniteOp {
        let d = s.offset();
        let mut factors: HashMap<i64, f64> = HashMap::new();
        let mut out = BTreeMap::new();
        for (&(r, c), &v) in &self.entries {
            let f = *factors.entry(c).or_insert_with(|| s.coeff_at(c - d));
            let val = f * v;
            if val != 0.0 {
                out.insert((r, c - d), val);
            }
        }
        FiniteOp { entries: out }
    }

    /// Keep only the columns in `cols` (right multiplication by a coordinate projection).
    pub fn restrict_cols(&self, cols: Support) -> FiniteOp {
        FiniteOp {
            entries: self
                .entries
                .iter()
                .filter(|(k, _)| cols.contains(k.1))
                .map(|(&k, &v)| (k, v))
                .collect(),
        }
    }

    pub fn restrict_rows(&self, rows: Support) -> FiniteOp {
        FiniteOp {
            entries: self
                .entries
                .iter()
                .filter(|(k, _)| rows.contains(k.0))
                .map(|(&k, &v)| (k, v))
                .collect(),
        }
    }

    /// Compressed dense block `(row indices, col indices, row-major data)`.
    pub fn compressed(&self) -> (Vec<i64>, Vec<i64>, Vec<f64>) {
        let rows: Vec<i64> = self.row_indices().into_iter().collect();
        let cols: Vec<i64> = self.col_indices().into_iter().collect();
        let row_pos: HashMap<i64, usize> = rows.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        let col_pos: HashMap<i64, usize> = cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let mut data = vec![0.0; rows.len() * cols.len()];
        for (&(r, c), &v) in &self.entries {
            data[row_pos[&r] * cols.len() + col_pos[&c]] = v;
        }
        (rows, cols, data)
    }

    /// Operator norm: the largest singular value of the compressed block.
    pub fn norm(&self) -> Result<f64> {
        if self.entries.is_empty() {
            return Ok(0.0);
        }
        let (rows, cols, data) = self.compressed();
        spectral::largest_singular_value(rows.len(), cols.len(), &data)
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.entries.values().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

fn span(it: impl Iterator<Item = i64>) -> Support {
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for i in it {
        lo = lo.min(i);
        hi = hi.max(i);
    }
    if lo > hi {
        Support::EMPTY
    } else {
        Support::new(lo, hi)
    }
}

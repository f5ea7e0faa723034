//! Finitely supported elements of `ℓ₂(A)`, `A` the compact operators on `H`.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::operator::{FiniteOp, Projection, Support};

/// `x = (x_j)_{j∈ℤ}` with finitely many nonzero coordinates.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ModuleVector {
    coords: BTreeMap<i64, FiniteOp>,
}

impl ModuleVector {
    pub fn zero() -> Self {
        ModuleVector::default()
    }

    /// Zero coordinates are dropped.
    pub fn from_coords(coords: impl IntoIterator<Item = (i64, FiniteOp)>) -> Self {
        let mut v = ModuleVector::zero();
        for (j, x) in coords {
            v.add_at(j, &x, 1.0);
        }
        v
    }

    pub fn single(j: i64, x: FiniteOp) -> Self {
        Self::from_coords([(j, x)])
    }

    pub fn get(&self, j: i64) -> Option<&FiniteOp> {
        self.coords.get(&j)
    }

    pub fn coord(&self, j: i64) -> FiniteOp {
        self.coords.get(&j).cloned().unwrap_or_default()
    }

    pub fn coords(&self) -> impl Iterator<Item = (i64, &FiniteOp)> {
        self.coords.iter().map(|(&j, x)| (j, x))
    }

    pub fn support(&self) -> Vec<i64> {
        self.coords.keys().copied().collect()
    }

    pub fn support_span(&self) -> Support {
        match (self.coords.keys().next(), self.coords.keys().next_back()) {
            (Some(&lo), Some(&hi)) => Support::new(lo, hi),
            _ => Support::EMPTY,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// `self_j += sign · x`.
    pub fn add_at(&mut self, j: i64, x: &FiniteOp, sign: f64) {
        let next = match self.coords.get(&j) {
            Some(cur) => cur.add_signed(x, sign),
            None => x.scaled(sign),
        };
        if next.is_zero() {
            self.coords.remove(&j);
        } else {
            self.coords.insert(j, next);
        }
    }

    pub fn add_signed(&self, other: &ModuleVector, sign: f64) -> ModuleVector {
        let mut out = self.clone();
        for (j, x) in other.coords() {
            out.add_at(j, x, sign);
        }
        out
    }

    pub fn sub(&self, other: &ModuleVector) -> ModuleVector {
        self.add_signed(other, -1.0)
    }

    /// Coordinates with index in `keep`.
    pub fn restrict(&self, keep: Support) -> ModuleVector {
        ModuleVector {
            coords: self
                .coords
                .iter()
                .filter(|(j, _)| keep.contains(**j))
                .map(|(&j, x)| (j, x.clone()))
                .collect(),
        }
    }

    pub fn map_coords(&self, mut f: impl FnMut(i64, &FiniteOp) -> (i64, FiniteOp)) -> ModuleVector {
        Self::from_coords(self.coords.iter().map(|(&j, x)| f(j, x)))
    }

    /// `Σ_j ‖x_j‖`, the upper bound used throughout the witness estimates.
    pub fn coordinate_norm_sum(&self) -> Result<f64> {
        self.coords.values().map(FiniteOp::norm).sum()
    }

    pub fn max_coordinate_norm(&self) -> Result<f64> {
        self.coords.values().try_fold(0.0f64, |m, x| Ok(m.max(x.norm()?)))
    }
}

/// `⟨x, y⟩ = Σ_j x_j* y_j`.
pub fn inner_product(x: &ModuleVector, y: &ModuleVector) -> FiniteOp {
    let mut acc = FiniteOp::zero();
    for (j, xj) in x.coords() {
        if let Some(yj) = y.get(j) {
            acc = acc.add_signed(&xj.transpose().mul(yj), 1.0);
        }
    }
    acc
}

/// `‖x‖ = ‖⟨x, x⟩‖^{1/2}`.
pub fn module_norm(x: &ModuleVector) -> Result<f64> {
    Ok(inner_product(x, x).norm()?.max(0.0).sqrt())
}

/// Shape of the dense family `F_{J,m}`: coordinates on `[J] = [-J, J]`
/// with range inside `L_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FjmSpec {
    pub j: u32,
    pub m: u32,
}

impl FjmSpec {
    pub fn new(j: u32, m: u32) -> Self {
        FjmSpec { j, m }
    }

    pub fn coords(&self) -> impl Iterator<Item = i64> {
        let j = self.j as i64;
        -j..=j
    }

    pub fn projection(&self) -> Projection {
        Projection::new(self.m)
    }

    /// `x_j = P_m x_j` on `[J]` and `x_j = 0` elsewhere.
    pub fn contains(&self, x: &ModuleVector) -> bool {
        let range = self.projection().range();
        x.coords().all(|(j, xj)| {
            j.unsigned_abs() <= self.j as u64 && xj.entries().all(|(r, _, _)| range.contains(r))
        })
    }
}

/// How coordinates of an `F_{J,m}` vector are filled.
#[derive(Debug, Clone)]
pub enum Fill {
    /// `x_j = P_m`.
    Projection,
    /// `x_j = P_m A` for one operator `A`.
    Compressed(FiniteOp),
    /// `x_j = P_m A_j`; missing indices are zero.
    PerCoordinate(BTreeMap<i64, FiniteOp>),
}

pub fn make_fjm_vector(spec: FjmSpec, fill: &Fill) -> ModuleVector {
    let range = spec.projection().range();
    let pm = FiniteOp::projection(spec.m);
    ModuleVector::from_coords(spec.coords().filter_map(|j| {
        let x = match fill {
            Fill::Projection => pm.clone(),
            Fill::Compressed(a) => a.restrict_rows(range),
            Fill::PerCoordinate(table) => table.get(&j)?.restrict_rows(range),
        };
        Some((j, x))
    }))
}

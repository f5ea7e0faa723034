use super::finite::FiniteOp;
use super::shift::BasisShiftOp;
use super::spectral;
use super::window::IndexWindow;
use crate::error::{Error, Result};

/// Matrix on the window `[-M, M]`, representing `A · P_window`.
///
/// A column whose true image leaves the window is flagged as escaping
/// rather than truncated. Escaping columns propagate through products and
/// any norm, adjoint or conversion that would read one fails with
/// `WindowOverflow`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOp {
    window: IndexWindow,
    data: Vec<f64>,
    escaping: Vec<Option<i64>>,
}

impl DenseOp {
    pub fn zeros(window: IndexWindow) -> Self {
        let n = window.dim();
        DenseOp { window, data: vec![0.0; n * n], escaping: vec![None; n] }
    }

    pub fn identity(window: IndexWindow) -> Self {
        let mut d = Self::zeros(window);
        for j in window.indices() {
            d.set(j, j, 1.0);
        }
        d
    }

    pub fn from_fn(window: IndexWindow, f: impl Fn(i64, i64) -> f64) -> Self {
        let mut d = Self::zeros(window);
        for i in window.indices() {
            for j in window.indices() {
                d.set(i, j, f(i, j));
            }
        }
        d
    }

    pub fn from_shift(op: &BasisShiftOp, window: IndexWindow) -> Self {
        let mut d = Self::zeros(window);
        for j in window.indices() {
            let (target, c) = op.apply_basis(j);
            if c == 0.0 {
                continue;
            }
            if window.contains(target) {
                d.set(target, j, c);
            } else {
                let col = window.position(j);
                d.escaping[col] = Some(target);
            }
        }
        d
    }

    pub fn from_finite(op: &FiniteOp, window: IndexWindow) -> Result<Self> {
        let mut d = Self::zeros(window);
        for (r, c, v) in op.entries() {
            for idx in [r, c] {
                if !window.contains(idx) {
                    return Err(Error::WindowOverflow { index: idx, half_width: window.half_width() });
                }
            }
            d.set(r, c, v);
        }
        Ok(d)
    }

    pub fn window(&self) -> IndexWindow {
        self.window
    }

    pub fn get(&self, row: i64, col: i64) -> f64 {
        let n = self.window.dim();
        self.data[self.window.position(row) * n + self.window.position(col)]
    }

    pub fn set(&mut self, row: i64, col: i64, v: f64) {
        let n = self.window.dim();
        let (r, c) = (self.window.position(row), self.window.position(col));
        self.data[r * n + c] = v;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn has_escaping_columns(&self) -> bool {
        self.escaping.iter().any(Option::is_some)
    }

    fn check_contained(&self) -> Result<()> {
        match self.escaping.iter().flatten().next() {
            Some(&index) => Err(Error::WindowOverflow { index, half_width: self.window.half_width() }),
            None => Ok(()),
        }
    }

    /// `self · rhs` on a common window.
    pub fn mul(&self, rhs: &DenseOp) -> Result<DenseOp> {
        if self.window != rhs.window {
            return Err(Error::WindowMismatch {
                left: self.window.half_width(),
                right: rhs.window.half_width(),
            });
        }
        let n = self.window.dim();
        let mut out = DenseOp::zeros(self.window);
        out.escaping.clone_from(&rhs.escaping);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        // a column of rhs that feeds an escaping column of self escapes too
        for (k, esc) in self.escaping.iter().enumerate() {
            if let Some(target) = esc {
                for j in 0..n {
                    if rhs.data[k * n + j] != 0.0 && out.escaping[j].is_none() {
                        out.escaping[j] = Some(*target);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add_signed(&self, rhs: &DenseOp, sign: f64) -> Result<DenseOp> {
        if self.window != rhs.window {
            return Err(Error::WindowMismatch {
                left: self.window.half_width(),
                right: rhs.window.half_width(),
            });
        }
        let mut out = self.clone();
        for (o, r) in out.data.iter_mut().zip(&rhs.data) {
            *o += sign * r;
        }
        for (o, r) in out.escaping.iter_mut().zip(&rhs.escaping) {
            if o.is_none() {
                *o = *r;
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, factor: f64) -> DenseOp {
        let mut out = self.clone();
        out.data.iter_mut().for_each(|v| *v *= factor);
        out
    }

    /// Conjugate transpose (real scalars).
    pub fn adjoint(&self) -> Result<DenseOp> {
        self.check_contained()?;
        let n = self.window.dim();
        let mut out = DenseOp::zeros(self.window);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j];
            }
        }
        Ok(out)
    }

    /// Keep only the columns inside `[-m, m]` (right multiplication by `P_m`).
    pub fn restrict_cols(&self, m: u32) -> DenseOp {
        let mut out = self.clone();
        let n = self.window.dim();
        for j in self.window.indices() {
            if j.unsigned_abs() > m as u64 {
                let c = self.window.position(j);
                for i in 0..n {
                    out.data[i * n + c] = 0.0;
                }
                out.escaping[c] = None;
            }
        }
        out
    }

    /// Largest singular value via power iteration on `AᵀA`.
    pub fn norm(&self) -> Result<f64> {
        self.check_contained()?;
        let n = self.window.dim();
        spectral::largest_singular_value(n, n, &self.data)
    }

    pub fn to_finite(&self) -> Result<FiniteOp> {
        self.check_contained()?;
        let n = self.window.dim();
        let idx: Vec<i64> = self.window.indices().collect();
        Ok(FiniteOp::from_entries((0..n).flat_map(|i| {
            let idx = &idx;
            (0..n).map(move |j| ((idx[i], idx[j]), self.data[i * n + j]))
        })))
    }

    pub fn max_abs_diff(&self, other: &DenseOp) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
    }
}

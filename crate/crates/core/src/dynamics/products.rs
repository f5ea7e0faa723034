//! Weight products `W_{j+l} ⋯ W_{j+1} D` and `W_{j-l+1}^{-1} ⋯ W_j^{-1} G`.
//!
//! The exact path walks the finitely many columns of `D` through each
//! factor, one multiply per factor per tracked entry. The dense path
//! materialises every factor on a window and is only used as a cross-check.

use crate::error::Result;
use crate::operator::{DenseOp, FiniteOp, IndexWindow, Operator};

use super::weights::WeightSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Multiply by `W_{j+1}`, then `W_{j+2}`, …
    Forward,
    /// Multiply by `W_j^{-1}`, then `W_{j-1}^{-1}`, …
    Backward,
}

/// Growing product applied to a fixed compact operator, extended one factor
/// at a time so the partial products for every length come out in one pass.
#[derive(Debug, Clone)]
pub struct ProductAccumulator<'a> {
    w: &'a WeightSequence,
    direction: Direction,
    next: i64,
    len: u64,
    value: FiniteOp,
}

impl<'a> ProductAccumulator<'a> {
    pub fn new(w: &'a WeightSequence, direction: Direction, j: i64, seed: FiniteOp) -> Self {
        let next = match direction {
            Direction::Forward => j + 1,
            Direction::Backward => j,
        };
        ProductAccumulator { w, direction, next, len: 0, value: seed }
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn value(&self) -> &FiniteOp {
        &self.value
    }

    pub fn into_value(self) -> FiniteOp {
        self.value
    }

    /// Multiply in `factors` more weights.
    pub fn extend(&mut self, factors: u64) -> Result<&FiniteOp> {
        for _ in 0..factors {
            let op = match self.direction {
                Direction::Forward => self.w.weight(self.next)?,
                Direction::Backward => self.w.inverse(self.next)?,
            };
            self.value = self.value.left_mul_shift(&op);
            self.next += match self.direction {
                Direction::Forward => 1,
                Direction::Backward => -1,
            };
            self.len += 1;
        }
        Ok(&self.value)
    }

    pub fn norm(&self) -> Result<f64> {
        self.value.norm()
    }
}

/// `W_{j+l} ⋯ W_{j+1} D`.
pub fn forward_product(w: &WeightSequence, j: i64, l: u64, d: &FiniteOp) -> Result<FiniteOp> {
    let mut acc = ProductAccumulator::new(w, Direction::Forward, j, d.clone());
    acc.extend(l)?;
    Ok(acc.into_value())
}

/// `W_{j-l+1}^{-1} ⋯ W_j^{-1} G`.
pub fn backward_product(w: &WeightSequence, j: i64, l: u64, g: &FiniteOp) -> Result<FiniteOp> {
    let mut acc = ProductAccumulator::new(w, Direction::Backward, j, g.clone());
    acc.extend(l)?;
    Ok(acc.into_value())
}

/// `‖W_{j+l} ⋯ W_{j+1} D‖`.
pub fn forward_product_norm(w: &WeightSequence, j: i64, l: u64, d: &FiniteOp) -> Result<f64> {
    forward_product(w, j, l, d)?.norm()
}

/// `‖W_{j-l+1}^{-1} ⋯ W_j^{-1} G‖`.
pub fn backward_product_norm(w: &WeightSequence, j: i64, l: u64, g: &FiniteOp) -> Result<f64> {
    backward_product(w, j, l, g)?.norm()
}

/// `W^{(s)}_j ⋯ W^{(s)}_{j-n+1} · W^{(l)-1}_{j-n+1} ⋯ W^{(l)-1}_j · G`: pull
/// back along one weight sequence and push forward along another.
pub fn cross_product(ws: &WeightSequence, wl: &WeightSequence, j: i64, n: u64, g: &FiniteOp) -> Result<FiniteOp> {
    let back = backward_product(wl, j, n, g)?;
    forward_product(ws, j - n as i64, n, &back)
}

pub fn cross_product_norm(ws: &WeightSequence, wl: &WeightSequence, j: i64, n: u64, g: &FiniteOp) -> Result<f64> {
    cross_product(ws, wl, j, n, g)?.norm()
}

/// Dense route for the forward product on a window: every factor is
/// materialised and multiplied. Fails if an image leaves the window.
pub fn forward_product_norm_dense(
    w: &WeightSequence,
    j: i64,
    l: u64,
    d: &FiniteOp,
    window: IndexWindow,
) -> Result<f64> {
    dense_product(w, Direction::Forward, j, l, d, window)?.norm()
}

pub fn backward_product_norm_dense(
    w: &WeightSequence,
    j: i64,
    l: u64,
    g: &FiniteOp,
    window: IndexWindow,
) -> Result<f64> {
    dense_product(w, Direction::Backward, j, l, g, window)?.norm()
}

pub fn dense_product(
    w: &WeightSequence,
    direction: Direction,
    j: i64,
    l: u64,
    seed: &FiniteOp,
    window: IndexWindow,
) -> Result<DenseOp> {
    let mut acc = DenseOp::from_finite(seed, window)?;
    for step in 0..l as i64 {
        let op = match direction {
            Direction::Forward => w.weight(j + 1 + step)?,
            Direction::Backward => w.inverse(j - step)?,
        };
        acc = Operator::from(op).compose(&Operator::Dense(acc))?.to_dense(window)?;
    }
    Ok(acc)
}

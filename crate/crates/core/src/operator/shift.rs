use std::sync::Arc;

use super::coeff::{Coeff, Support};
use crate::error::{Error, Result};

/// Weighted shift on the basis of `H`: `e_j ↦ c(j) · e_{j+d}`.
///
/// Closed under composition, inverse and adjoint; the operator norm on any
/// set of basis indices is the largest `|c(j)|` there, because images of
/// distinct basis vectors are orthogonal.
#[derive(Debug, Clone)]
pub struct BasisShiftOp {
    offset: i64,
    coeff: Arc<Coeff>,
}

impl BasisShiftOp {
    pub fn new(offset: i64, coeff: Coeff) -> Self {
        BasisShiftOp { offset, coeff: Arc::new(coeff) }
    }

    pub fn identity() -> Self {
        Self::new(0, Coeff::Const(1.0))
    }

    pub fn scalar(c: f64) -> Self {
        Self::new(0, Coeff::Const(c))
    }

    /// Unweighted bilateral shift `e_j ↦ e_{j+k}`.
    pub fn bilateral_shift(k: i64) -> Self {
        Self::new(k, Coeff::Const(1.0))
    }

    /// Orthogonal projection onto `span{e_-m, …, e_m}`.
    pub fn projection(m: u32) -> Self {
        let m = m as i64;
        Self::new(0, Coeff::Indicator { lo: -m, hi: m, value: 1.0 })
    }

    /// Matrix unit `|e_row⟩⟨e_col|`.
    pub fn matrix_unit(row: i64, col: i64) -> Self {
        Self::new(row - col, Coeff::Indicator { lo: col, hi: col, value: 1.0 })
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn coeff(&self) -> &Coeff {
        &self.coeff
    }

    #[inline]
    pub fn coeff_at(&self, j: i64) -> f64 {
        self.coeff.eval(j)
    }

    /// Image of `e_j` as `(target index, coefficient)`.
    #[inline]
    pub fn apply_basis(&self, j: i64) -> (i64, f64) {
        (j + self.offset, self.coeff.eval(j))
    }

    pub fn support(&self) -> Option<Support> {
        self.coeff.support()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &BasisShiftOp) -> BasisShiftOp {
        BasisShiftOp::new(
            self.offset + inner.offset,
            Coeff::product(&self.coeff, inner.offset, &inner.coeff),
        )
    }

    /// Inverse: offset `-d`, coefficient `j ↦ 1 / c(j - d)`.
    pub fn inverse(&self) -> Result<BasisShiftOp> {
        if let Some(s) = self.coeff.support() {
            // finitely supported coefficients vanish somewhere
            let probe = if s.is_empty() { 0 } else { s.hi + 1 };
            return Err(Error::NotInvertible { index: probe });
        }
        if self.coeff.inf_abs() == Some(0.0) {
            return Err(Error::NotInvertible { index: 0 });
        }
        Ok(BasisShiftOp::new(
            -self.offset,
            self.coeff.shifted(self.offset).reciprocal(),
        ))
    }

    /// Adjoint: offset `-d`, coefficient `j ↦ c(j - d)` (real scalars).
    pub fn adjoint(&self) -> BasisShiftOp {
        BasisShiftOp::new(-self.offset, self.coeff.shifted(self.offset))
    }

    pub fn pow(&self, n: u64) -> BasisShiftOp {
        if let Coeff::Const(c) = self.coeff.as_ref() {
            return BasisShiftOp::new(self.offset * n as i64, Coeff::Const(c.powi(n as i32)));
        }
        let mut acc = BasisShiftOp::identity();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = base.compose(&acc);
            }
            e >>= 1;
            if e > 0 {
                base = base.compose(&base);
            }
        }
        acc
    }

    pub fn scaled(&self, factor: f64) -> BasisShiftOp {
        BasisShiftOp::new(self.offset, self.coeff.scaled(factor))
    }

    /// `self + sign · other`; both must share the offset.
    pub fn add_signed(&self, other: &BasisShiftOp, sign: f64) -> Option<BasisShiftOp> {
        (self.offset == other.offset)
            .then(|| BasisShiftOp::new(self.offset, Coeff::sum(&self.coeff, &other.coeff, sign)))
    }

    /// `max |c(j)|` over the given basis indices.
    pub fn max_abs_on(&self, indices: Support) -> f64 {
        indices.iter().fold(0.0f64, |m, j| m.max(self.coeff_at(j).abs()))
    }

    /// Exact operator norm; requires a known bound on the coefficients.
    pub fn norm(&self) -> Result<f64> {
        if let Some(s) = self.support() {
            return Ok(self.max_abs_on(s));
        }
        self.coeff
            .sup_abs()
            .ok_or(Error::UnboundedSupport("pass a projection to restrict the norm"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_shifts_compose_by_multiplying() {
        let a = BasisShiftOp::new(1, Coeff::Const(2.0));
        let b = BasisShiftOp::new(1, Coeff::Const(3.0));
        let c = a.compose(&b);
        assert_eq!(c.offset(), 2);
        for j in -5..5 {
            assert_eq!(c.coeff_at(j), 6.0);
        }
    }

    #[test]
    fn inverse_composes_to_identity() {
        let v = BasisShiftOp::new(1, Coeff::Step { split: 0, below: 2.0, above: 0.5 });
        let vi = v.inverse().unwrap();
        let id = v.compose(&vi);
        let id2 = vi.compose(&v);
        assert_eq!(id.offset(), 0);
        assert_eq!(id2.offset(), 0);
        for j in -20..=20 {
            assert!((id.coeff_at(j) - 1.0).abs() < 1e-15);
            assert!((id2.coeff_at(j) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn projection_not_invertible() {
        assert!(matches!(
            BasisShiftOp::projection(2).inverse(),
            Err(Error::NotInvertible { .. })
        ));
    }

    #[test]
    fn adjoint_of_shift_is_backward_shift() {
        let b = BasisShiftOp::bilateral_shift(1);
        let a = b.adjoint();
        assert_eq!(a.apply_basis(4), (3, 1.0));
        let w = BasisShiftOp::new(1, Coeff::Step { split: 0, below: 2.0, above: 0.5 });
        let ww = w.adjoint().adjoint();
        for j in -6..6 {
            assert_eq!(ww.apply_basis(j), w.apply_basis(j));
        }
        // ⟨W e_j, e_{j+1}⟩ = ⟨e_j, W* e_{j+1}⟩
        for j in -6..6 {
            assert_eq!(w.adjoint().apply_basis(j + 1), (j, w.coeff_at(j)));
        }
    }

    #[test]
    fn pow_matches_repeated_compose() {
        let v = BasisShiftOp::new(1, Coeff::Step { split: 0, below: 3.0, above: 1.0 / 3.0 });
        let mut rep = BasisShiftOp::identity();
        for _ in 0..7 {
            rep = v.compose(&rep);
        }
        let p = v.pow(7);
        assert_eq!(p.offset(), 7);
        for j in -10..10 {
            let (a, b) = (p.coeff_at(j), rep.coeff_at(j));
            assert!((a - b).abs() <= 1e-14 * a.abs().max(1.0));
        }
    }
}

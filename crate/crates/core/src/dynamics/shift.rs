use crate::error::{Error, Result};
use crate::module::ModuleVector;
use crate::operator::BasisShiftOp;

use super::products::{backward_product, forward_product};
use super::weights::WeightSequence;

/// Basis vectors on which unitarity of `U` is checked at construction.
pub const UNITARY_PROBE: i64 = 64;

/// The pair `(U, W)` defining `T_{U,W}` and its inverse `S_{U,W}`.
#[derive(Debug, Clone)]
pub struct GeneralizedShift {
    u: BasisShiftOp,
    u_adj: BasisShiftOp,
    w: WeightSequence,
}

impl GeneralizedShift {
    pub fn new(u: BasisShiftOp, w: WeightSequence) -> Result<Self> {
        let u_adj = u.adjoint();
        let left = u_adj.compose(&u);
        let right = u.compose(&u_adj);
        for j in -UNITARY_PROBE..=UNITARY_PROBE {
            for p in [&left, &right] {
                let (t, c) = p.apply_basis(j);
                if t != j || (c - 1.0).abs() > 1e-12 {
                    return Err(Error::InvalidParameter(format!(
                        "U is not unitary: U*U or UU* sends e_{j} to {c} e_{t}"
                    )));
                }
            }
        }
        Ok(GeneralizedShift { u, u_adj, w })
    }

    pub fn u(&self) -> &BasisShiftOp {
        &self.u
    }

    pub fn weights(&self) -> &WeightSequence {
        &self.w
    }

    pub fn with_unitary(&self, u: BasisShiftOp) -> Result<Self> {
        Self::new(u, self.w.clone())
    }

    pub fn is_identity_unitary(&self) -> bool {
        self.u.offset() == 0 && (-UNITARY_PROBE..=UNITARY_PROBE).all(|j| self.u.coeff_at(j) == 1.0)
    }

    /// `(T x)_n = W_n x_{n-1} U`.
    pub fn apply_t(&self, x: &ModuleVector) -> Result<ModuleVector> {
        let mut out = Vec::new();
        for (j, xj) in x.coords() {
            let w = self.w.weight(j + 1)?;
            out.push((j + 1, xj.left_mul_shift(&w).right_mul_shift(&self.u)));
        }
        Ok(ModuleVector::from_coords(out))
    }

    /// `(S y)_n = W_{n+1}^{-1} y_{n+1} U*`.
    pub fn apply_s(&self, y: &ModuleVector) -> Result<ModuleVector> {
        let mut out = Vec::new();
        for (j, yj) in y.coords() {
            let wi = self.w.inverse(j)?;
            out.push((j - 1, yj.left_mul_shift(&wi).right_mul_shift(&self.u_adj)));
        }
        Ok(ModuleVector::from_coords(out))
    }

    /// Closed form `(Tⁿx)_i = W_i ⋯ W_{i-n+1} x_{i-n} Uⁿ`.
    pub fn iterate_t(&self, n: u64, x: &ModuleVector) -> Result<ModuleVector> {
        let un = self.u.pow(n);
        let mut out = Vec::new();
        for (j, xj) in x.coords() {
            let c = forward_product(&self.w, j, n, xj)?;
            out.push((j + n as i64, c.right_mul_shift(&un)));
        }
        Ok(ModuleVector::from_coords(out))
    }

    /// Closed form `(Sⁿy)_i = W_{i+1}^{-1} ⋯ W_{i+n}^{-1} y_{i+n} U*ⁿ`.
    pub fn iterate_s(&self, n: u64, y: &ModuleVector) -> Result<ModuleVector> {
        let un = self.u_adj.pow(n);
        let mut out = Vec::new();
        for (j, yj) in y.coords() {
            let c = backward_product(&self.w, j, n, yj)?;
            out.push((j - n as i64, c.right_mul_shift(&un)));
        }
        Ok(ModuleVector::from_coords(out))
    }

    /// `n`-fold `apply_t`, the definitional route.
    pub fn iterate_t_stepwise(&self, n: u64, x: &ModuleVector) -> Result<ModuleVector> {
        (0..n).try_fold(x.clone(), |acc, _| self.apply_t(&acc))
    }

    pub fn iterate_s_stepwise(&self, n: u64, y: &ModuleVector) -> Result<ModuleVector> {
        (0..n).try_fold(y.clone(), |acc, _| self.apply_s(&acc))
    }

    /// `U^k` for any integer `k` (negative powers use `U*`).
    pub fn u_power(&self, k: i64) -> BasisShiftOp {
        if k >= 0 {
            self.u.pow(k as u64)
        } else {
            self.u_adj.pow(k.unsigned_abs())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{Coeff, FiniteOp};

    #[test]
    fn rejects_non_unitary() {
        let w = WeightSequence::constant("id", BasisShiftOp::identity());
        assert!(GeneralizedShift::new(BasisShiftOp::scalar(2.0), w.clone()).is_err());
        assert!(GeneralizedShift::new(BasisShiftOp::bilateral_shift(-3), w).is_ok());
    }

    #[test]
    fn doubling_weights_move_support() {
        let w = WeightSequence::constant("2", BasisShiftOp::scalar(2.0));
        let t = GeneralizedShift::new(BasisShiftOp::identity(), w).unwrap();
        let a = FiniteOp::from_entries([((0, 1), 1.5), ((-1, 0), 1.0)]);
        let x = ModuleVector::single(0, a.clone());
        let tx = t.apply_t(&x).unwrap();
        assert_eq!(tx, ModuleVector::single(1, a.scaled(2.0)));
        let y = ModuleVector::single(1, a.clone());
        assert_eq!(t.apply_s(&y).unwrap(), ModuleVector::single(0, a.scaled(0.5)));
        assert!(t.apply_t(&ModuleVector::zero()).unwrap().is_zero());
    }

    #[test]
    fn unitary_acts_on_the_right() {
        let w = WeightSequence::constant("id", BasisShiftOp::identity());
        let t = GeneralizedShift::new(BasisShiftOp::bilateral_shift(1), w).unwrap();
        let x = ModuleVector::single(0, FiniteOp::from_entries([((0, 0), 1.0)]));
        let tx = t.apply_t(&x).unwrap();
        assert_eq!(tx, ModuleVector::single(1, FiniteOp::from_entries([((0, -1), 1.0)])));
    }

    #[test]
    fn closed_form_matches_stepwise() {
        let v = BasisShiftOp::new(1, Coeff::Step { split: 0, below: 2.0, above: 0.5 });
        let t = GeneralizedShift::new(BasisShiftOp::bilateral_shift(2), WeightSequence::constant("v", v)).unwrap();
        let x = ModuleVector::from_coords([
            (-1, FiniteOp::from_entries([((1, 0), 1.0), ((-1, 2), -0.5)])),
            (1, FiniteOp::projection(1)),
        ]);
        for n in 1..8 {
            assert_eq!(t.iterate_t(n, &x).unwrap(), t.iterate_t_stepwise(n, &x).unwrap());
            assert_eq!(t.iterate_s(n, &x).unwrap(), t.iterate_s_stepwise(n, &x).unwrap());
        }
    }
}

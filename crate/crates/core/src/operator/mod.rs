//! Bounded operators on the separable Hilbert space `H` with orthonormal
//! basis `{e_i}_{i∈ℤ}`.
//!
//! Three representations share one algebra:
//! - [`BasisShiftOp`]: exact weighted shifts `e_j ↦ c(j) e_{j+d}`, which
//!   cover every weight, unitary and projection used by the dynamics layer;
//! - [`FiniteOp`]: finitely supported matrices over `ℤ × ℤ`, the exact
//!   home for compact coordinates of module vectors;
//! - [`DenseOp`]: matrices on a symmetric window, the generic fallback and
//!   the independent route used to cross-check the exact ones.

pub mod coeff;
pub mod dense;
pub mod finite;
pub mod shift;
pub mod spectral;
pub mod window;

use std::collections::BTreeMap;

pub use coeff::{Coeff, Support};
pub use dense::DenseOp;
pub use finite::FiniteOp;
pub use shift::BasisShiftOp;
pub use window::{IndexWindow, Projection};

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub enum Operator {
    Shift(BasisShiftOp),
    Finite(FiniteOp),
    Dense(DenseOp),
}

impl From<BasisShiftOp> for Operator {
    fn from(op: BasisShiftOp) -> Self {
        Operator::Shift(op)
    }
}

impl From<FiniteOp> for Operator {
    fn from(op: FiniteOp) -> Self {
        Operator::Finite(op)
    }
}

impl From<DenseOp> for Operator {
    fn from(op: DenseOp) -> Self {
        Operator::Dense(op)
    }
}

impl Operator {
    pub fn identity() -> Self {
        BasisShiftOp::identity().into()
    }

    pub fn projection(m: u32) -> Self {
        FiniteOp::projection(m).into()
    }

    pub fn zero() -> Self {
        FiniteOp::zero().into()
    }

    pub fn as_shift(&self) -> Option<&BasisShiftOp> {
        match self {
            Operator::Shift(s) => Some(s),
            _ => None,
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Operator) -> Result<Operator> {
        use Operator::*;
        Ok(match (self, inner) {
            (Shift(a), Shift(b)) => Shift(a.compose(b)),
            (Shift(a), Finite(x)) => Finite(x.left_mul_shift(a)),
            (Finite(x), Shift(b)) => Finite(x.right_mul_shift(b)),
            (Finite(x), Finite(y)) => Finite(x.mul(y)),
            (Dense(a), other) => Dense(a.mul(&other.to_dense(a.window())?)?),
            (other, Dense(b)) => Dense(other.to_dense(b.window())?.mul(b)?),
        })
    }

    pub fn adjoint(&self) -> Result<Operator> {
        Ok(match self {
            Operator::Shift(s) => Operator::Shift(s.adjoint()),
            Operator::Finite(x) => Operator::Finite(x.transpose()),
            Operator::Dense(d) => Operator::Dense(d.adjoint()?),
        })
    }

    pub fn inverse(&self) -> Result<Operator> {
        match self {
            Operator::Shift(s) => Ok(Operator::Shift(s.inverse()?)),
            Operator::Finite(_) => Err(Error::NotInvertible { index: 0 }),
            Operator::Dense(_) => Err(Error::Unsupported("inverse of a dense window operator")),
        }
    }

    pub fn pow(&self, n: u64) -> Result<Operator> {
        if let Operator::Shift(s) = self {
            return Ok(Operator::Shift(s.pow(n)));
        }
        let mut acc = Operator::identity();
        for _ in 0..n {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn scaled(&self, factor: f64) -> Operator {
        match self {
            Operator::Shift(s) => Operator::Shift(s.scaled(factor)),
            Operator::Finite(x) => Operator::Finite(x.scaled(factor)),
            Operator::Dense(d) => Operator::Dense(d.scaled(factor)),
        }
    }

    /// `self + sign · other`.
    pub fn add_signed(&self, other: &Operator, sign: f64) -> Result<Operator> {
        use Operator::*;
        match (self, other) {
            (Shift(a), Shift(b)) => {
                if let Some(s) = a.add_signed(b, sign) {
                    return Ok(Shift(s));
                }
            }
            (Dense(a), o) => return Ok(Dense(a.add_signed(&o.to_dense(a.window())?, sign)?)),
            (o, Dense(b)) => return Ok(Dense(o.to_dense(b.window())?.add_signed(b, sign)?)),
            _ => {}
        }
        Ok(Finite(self.to_finite()?.add_signed(&other.to_finite()?, sign)))
    }

    pub fn sub(&self, other: &Operator) -> Result<Operator> {
        self.add_signed(other, -1.0)
    }

    pub fn to_finite(&self) -> Result<FiniteOp> {
        match self {
            Operator::Shift(s) => FiniteOp::from_shift(s),
            Operator::Finite(x) => Ok(x.clone()),
            Operator::Dense(d) => d.to_finite(),
        }
    }

    pub fn to_dense(&self, window: IndexWindow) -> Result<DenseOp> {
        match self {
            Operator::Shift(s) => Ok(DenseOp::from_shift(s, window)),
            Operator::Finite(x) => DenseOp::from_finite(x, window),
            Operator::Dense(d) if d.window() == window => Ok(d.clone()),
            Operator::Dense(d) => Err(Error::WindowMismatch {
                left: d.window().half_width(),
                right: window.half_width(),
            }),
        }
    }

    /// `‖A‖`, or `‖A P_m‖` when a restriction is given.
    pub fn norm(&self, restriction: Option<Projection>) -> Result<f64> {
        match (self, restriction) {
            (Operator::Shift(s), Some(p)) => Ok(s.max_abs_on(p.range())),
            (Operator::Shift(s), None) => s.norm(),
            (Operator::Finite(x), Some(p)) => x.restrict_cols(p.range()).norm(),
            (Operator::Finite(x), None) => x.norm(),
            (Operator::Dense(d), Some(p)) => {
                if p.m() > d.window().half_width() {
                    return Err(Error::WindowOverflow {
                        index: p.m() as i64,
                        half_width: d.window().half_width(),
                    });
                }
                d.restrict_cols(p.m()).norm()
            }
            (Operator::Dense(d), None) => d.norm(),
        }
    }

    /// Image of a finitely supported vector.
    pub fn apply_vector(&self, v: &SparseVector) -> Result<SparseVector> {
        let mut out = BTreeMap::new();
        match self {
            Operator::Shift(s) => {
                for (&j, &x) in &v.0 {
                    let (t, c) = s.apply_basis(j);
                    let y = c * x;
                    if y != 0.0 {
                        *out.entry(t).or_insert(0.0) += y;
                    }
                }
            }
            Operator::Finite(f) => {
                for (r, c, a) in f.entries() {
                    if let Some(x) = v.0.get(&c) {
                        *out.entry(r).or_insert(0.0) += a * x;
                    }
                }
            }
            Operator::Dense(d) => {
                let w = d.window();
                for &j in v.0.keys() {
                    if !w.contains(j) {
                        return Err(Error::WindowOverflow { index: j, half_width: w.half_width() });
                    }
                }
                let restricted = d.to_finite_partial(v)?;
                return Operator::Finite(restricted).apply_vector(v);
            }
        }
        out.retain(|_, y| *y != 0.0);
        Ok(SparseVector(out))
    }
}

impl DenseOp {
    /// The columns of `self` touched by `v`, as a finite operator.
    fn to_finite_partial(&self, v: &SparseVector) -> Result<FiniteOp> {
        let w = self.window();
        let mut cols = Vec::new();
        for &j in v.0.keys() {
            cols.push(j);
        }
        let mut probe = DenseOp::zeros(w);
        for j in cols {
            probe.set(j, j, 1.0);
        }
        self.mul(&probe)?.to_finite()
    }
}

/// Finitely supported vector in `H`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SparseVector(pub BTreeMap<i64, f64>);

impl SparseVector {
    pub fn basis(j: i64) -> Self {
        SparseVector(BTreeMap::from([(j, 1.0)]))
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, f64)>) -> Self {
        let mut m = BTreeMap::new();
        for (j, x) in pairs {
            *m.entry(j).or_insert(0.0) += x;
        }
        m.retain(|_, x| *x != 0.0);
        SparseVector(m)
    }

    pub fn norm(&self) -> f64 {
        self.0.values().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// Composition `a ∘ b`.
pub fn compose(a: &Operator, b: &Operator) -> Result<Operator> {
    a.compose(b)
}

/// `‖a‖` or `‖a P_m‖`.
pub fn operator_norm(a: &Operator, restriction: Option<Projection>) -> Result<f64> {
    a.norm(restriction)
}

pub fn adjoint(a: &Operator) -> Result<Operator> {
    a.adjoint()
}

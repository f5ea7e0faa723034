use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::operator::BasisShiftOp;

type Generator = Arc<dyn Fn(i64) -> Result<BasisShiftOp> + Send + Sync>;

/// Running supremum of `‖W_j‖` and `‖W_j^{-1}‖` over the indices queried so
/// far. `None` means some queried weight had no known coefficient bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservedBounds {
    pub queried: usize,
    pub sup_norm: Option<f64>,
    pub sup_inverse_norm: Option<f64>,
}

impl Default for ObservedBounds {
    fn default() -> Self {
        ObservedBounds { queried: 0, sup_norm: Some(0.0), sup_inverse_norm: Some(0.0) }
    }
}

#[derive(Default)]
struct Memo {
    pairs: HashMap<i64, (BasisShiftOp, BasisShiftOp)>,
    bounds: ObservedBounds,
}

/// The weights `j ↦ W_j` with their inverses, memoised per index.
///
/// The memo sits behind a lock so a shared sequence can be queried from
/// several threads.
#[derive(Clone)]
pub struct WeightSequence {
    name: String,
    generator: Generator,
    memo: Arc<RwLock<Memo>>,
}

impl fmt::Debug for WeightSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightSequence")
            .field("name", &self.name)
            .field("bounds", &self.observed_bounds())
            .finish()
    }
}

fn merge(cur: Option<f64>, new: Option<f64>) -> Option<f64> {
    Some(cur?.max(new?))
}

impl WeightSequence {
    /// Weights from a generator; inverses come from the exact shift inverse.
    pub fn new(name: impl Into<String>, f: impl Fn(i64) -> Result<BasisShiftOp> + Send + Sync + 'static) -> Self {
        WeightSequence {
            name: name.into(),
            generator: Arc::new(f),
            memo: Arc::default(),
        }
    }

    /// `W_j = op` for every `j`.
    pub fn constant(name: impl Into<String>, op: BasisShiftOp) -> Self {
        Self::new(name, move |_| Ok(op.clone()))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `(W_j, W_j^{-1})`.
    pub fn pair(&self, j: i64) -> Result<(BasisShiftOp, BasisShiftOp)> {
        if let Some(p) = self.memo.read().expect("weight memo poisoned").pairs.get(&j) {
            return Ok(p.clone());
        }
        let w = (self.generator)(j)?;
        let inv = w.inverse().map_err(|_| Error::NotInvertible { index: j })?;
        let mut memo = self.memo.write().expect("weight memo poisoned");
        if !memo.pairs.contains_key(&j) {
            let b = &mut memo.bounds;
            b.queried += 1;
            b.sup_norm = merge(b.sup_norm, w.coeff().sup_abs());
            b.sup_inverse_norm = merge(b.sup_inverse_norm, inv.coeff().sup_abs());
            memo.pairs.insert(j, (w.clone(), inv.clone()));
        }
        Ok((w, inv))
    }

    pub fn weight(&self, j: i64) -> Result<BasisShiftOp> {
        Ok(self.pair(j)?.0)
    }

    pub fn inverse(&self, j: i64) -> Result<BasisShiftOp> {
        Ok(self.pair(j)?.1)
    }

    pub fn observed_bounds(&self) -> ObservedBounds {
        self.memo.read().expect("weight memo poisoned").bounds
    }
}

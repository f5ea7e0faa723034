use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::operator::FiniteOp;

/// Strictly increasing positive integers (`n_k` or `t_n`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncreasingSequence {
    terms: Vec<u64>,
}

impl IncreasingSequence {
    pub fn new(terms: Vec<u64>) -> Result<Self> {
        if terms.first() == Some(&0) {
            return Err(Error::InvalidParameter("sequence terms must be positive".into()));
        }
        if let Some(w) = terms.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(format!(
                "sequence must be strictly increasing, got {} then {}",
                w[0], w[1]
            )));
        }
        Ok(IncreasingSequence { terms })
    }

    /// `start, start + step, …` with `count` terms.
    pub fn arithmetic(start: u64, step: u64, count: usize) -> Result<Self> {
        if step == 0 && count > 1 {
            return Err(Error::InvalidParameter("arithmetic step must be positive".into()));
        }
        Self::new((0..count as u64).map(|k| start + k * step).collect())
    }

    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn first(&self) -> Option<u64> {
        self.terms.first().copied()
    }
}

type ApproxFn = Arc<dyn Fn(i64, usize, u32) -> FiniteOp + Send + Sync>;

/// One approximant sequence `(j, k) ↦ D_j^{(k)}`.
#[derive(Clone, Default)]
pub enum Approximants {
    /// `D_j^{(k)} = P_m`.
    #[default]
    Projection,
    /// Explicit entries; missing `(j, k)` fall back to `P_m`.
    Table(Arc<BTreeMap<(i64, usize), FiniteOp>>),
    Func(ApproxFn),
}

impl fmt::Debug for Approximants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Approximants::Projection => f.write_str("Projection"),
            Approximants::Table(t) => write!(f, "Table({} entries)", t.len()),
            Approximants::Func(_) => f.write_str("Func"),
        }
    }
}

impl Approximants {
    pub fn func(f: impl Fn(i64, usize, u32) -> FiniteOp + Send + Sync + 'static) -> Self {
        Approximants::Func(Arc::new(f))
    }

    pub fn get(&self, j: i64, k: usize, m: u32) -> FiniteOp {
        match self {
            Approximants::Projection => FiniteOp::projection(m),
            Approximants::Table(t) => t.get(&(j, k)).cloned().unwrap_or_else(|| FiniteOp::projection(m)),
            Approximants::Func(f) => f(j, k, m),
        }
    }
}

/// The `D` family and one `G` family per shift (a single shift uses `g[0]`).
#[derive(Debug, Clone)]
pub struct ApproximantFamily {
    pub d: Approximants,
    pub g: Vec<Approximants>,
}

impl Default for ApproximantFamily {
    fn default() -> Self {
        ApproximantFamily { d: Approximants::Projection, g: vec![Approximants::Projection] }
    }
}

impl ApproximantFamily {
    pub fn projections(shifts: usize) -> Self {
        ApproximantFamily { d: Approximants::Projection, g: vec![Approximants::Projection; shifts.max(1)] }
    }

    pub fn d(&self, j: i64, k: usize, m: u32) -> FiniteOp {
        self.d.get(j, k, m)
    }

    pub fn g(&self, l: usize, j: i64, k: usize, m: u32) -> FiniteOp {
        self.g
            .get(l)
            .or_else(|| self.g.last())
            .map_or_else(|| FiniteOp::projection(m), |g| g.get(j, k, m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_increasing() {
        assert!(IncreasingSequence::new(vec![1, 3, 3]).is_err());
        assert!(IncreasingSequence::new(vec![0, 1]).is_err());
        assert_eq!(IncreasingSequence::arithmetic(3, 2, 3).unwrap().terms(), &[3, 5, 7]);
    }

    #[test]
    fn table_falls_back_to_projection() {
        let t = Approximants::Table(Arc::new(BTreeMap::from([((0, 1), FiniteOp::zero())])));
        assert!(t.get(0, 1, 2).is_zero());
        assert_eq!(t.get(1, 1, 2), FiniteOp::projection(2));
    }
}

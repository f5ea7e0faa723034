//! Finite-horizon membership for Furstenberg families.
//!
//! The families are statements about infinite sets, so every test here is a
//! documented proxy on `[0, N]`. All variants look only at the part of the
//! set beyond the cut `c = ⌊N/4⌋`; deleting any initial segment `[0, n]`
//! with `n ≤ c` therefore never changes a verdict, and the proxies inherit
//! upward heredity and the chain `Cof ⊆ LowerDensity(δ) ⊆ Inf`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Members counted beyond the cut for `Inf` (and for `LowerDensity`).
pub const K_INF: u64 = 25;
/// Minimum tail length for `Cof`.
pub const K_TAIL: u64 = 25;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case", deny_unknown_fields)]
pub enum FurstenbergFamily {
    Inf,
    Cof,
    LowerDensity { delta: f64 },
}

impl FurstenbergFamily {
    pub fn lower_density(delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(Error::InvalidParameter(format!("density threshold must lie in (0, 1], got {delta}")));
        }
        Ok(FurstenbergFamily::LowerDensity { delta })
    }

    pub fn label(&self) -> String {
        match self {
            FurstenbergFamily::Inf => "inf".into(),
            FurstenbergFamily::Cof => "cof".into(),
            FurstenbergFamily::LowerDensity { delta } => format!("lower_density({delta})"),
        }
    }

    pub fn accepts(&self, rs: &ReturnSet) -> bool {
        let n = rs.horizon;
        let c = rs.cut();
        let tail = rs.count_in(c + 1, n);
        match *self {
            FurstenbergFamily::Inf => tail >= K_INF,
            FurstenbergFamily::Cof => n - c >= K_TAIL.max(K_INF) && tail == n - c,
            FurstenbergFamily::LowerDensity { delta } => tail >= K_INF && lower_density(rs) >= delta,
        }
    }
}

/// Observed return times `members ⊆ [0, N]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReturnSet {
    members: BTreeSet<u64>,
    horizon: u64,
}

impl ReturnSet {
    /// Members beyond the horizon are dropped.
    pub fn new(members: impl IntoIterator<Item = u64>, horizon: u64) -> Self {
        ReturnSet {
            members: members.into_iter().filter(|&n| n <= horizon).collect(),
            horizon,
        }
    }

    pub fn from_indicator(hits: &[bool]) -> Self {
        let horizon = hits.len().saturating_sub(1) as u64;
        Self::new(hits.iter().enumerate().filter(|(_, h)| **h).map(|(n, _)| n as u64), horizon)
    }

    pub fn members(&self) -> &BTreeSet<u64> {
        &self.members
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn contains(&self, n: u64) -> bool {
        self.members.contains(&n)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Start of the evaluated tail: members `≤ cut` are ignored.
    pub fn cut(&self) -> u64 {
        self.horizon / 4
    }

    pub fn count_in(&self, lo: u64, hi: u64) -> u64 {
        if lo > hi {
            return 0;
        }
        self.members.range(lo..=hi).count() as u64
    }

    pub fn union(&self, other: &ReturnSet) -> ReturnSet {
        ReturnSet::new(self.members.union(&other.members).copied(), self.horizon.max(other.horizon))
    }

    pub fn intersection(&self, other: &ReturnSet) -> ReturnSet {
        ReturnSet::new(self.members.intersection(&other.members).copied(), self.horizon.min(other.horizon))
    }

    /// `A ∖ [0, n]`.
    pub fn without_prefix(&self, n: u64) -> ReturnSet {
        ReturnSet::new(self.members.range(n + 1..).copied(), self.horizon)
    }

    /// Smallest `n₀` such that every `n` in `[n₀, N]` is a member.
    pub fn cofinite_from(&self) -> Option<u64> {
        let mut n0 = None;
        for n in (0..=self.horizon).rev() {
            if self.contains(n) {
                n0 = Some(n);
            } else {
                break;
            }
        }
        n0
    }
}

/// Finite-horizon lower density: the minimum of
/// `#(A ∩ (c, n]) / (n - c)` over `n ∈ [max(⌈N/2⌉, c+1), N]`.
pub fn lower_density(rs: &ReturnSet) -> f64 {
    let n_max = rs.horizon;
    let c = rs.cut();
    let start = n_max.div_ceil(2).max(c + 1);
    if start > n_max {
        return if rs.is_empty() { 0.0 } else { 1.0 };
    }
    let mut count = rs.count_in(c + 1, start - 1);
    let mut best = f64::INFINITY;
    for n in start..=n_max {
        if rs.contains(n) {
            count += 1;
        }
        best = best.min(count as f64 / (n - c) as f64);
    }
    best
}

//! Three-valued convergence verdicts for series observed up to a horizon.
//!
//! Besides the plain Cauchy test (small last-quarter increase and a tail
//! ratio below one) the verdict looks at how fast the partial sums settle:
//! with `δ₁ = S_L - S_{L/2}` and `δ₀ = S_{L/2} - S_{L/4}`, the decay order
//! `log₂(δ₀/δ₁)` is about `p - 1` for terms `~ l^{-p}`. Summable power laws
//! (`p ≥ 1.75` or so) and geometric tails land well above the convergence
//! threshold, harmonic-type and constant terms at or below zero.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeriesVerdict {
    Converges,
    Diverges,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesTolerances {
    /// Largest last-quarter increase accepted by the Cauchy test.
    pub cauchy: f64,
    /// Largest tail ratio accepted by the Cauchy test.
    pub ratio: f64,
    /// Partial sums above this bound are reported as diverging.
    pub divergence_bound: f64,
    /// Decay order at or above which the series converges.
    pub converge_order: f64,
    /// Decay order at or below which the series diverges.
    pub diverge_order: f64,
}

impl Default for SeriesTolerances {
    fn default() -> Self {
        SeriesTolerances {
            cauchy: 1e-8,
            ratio: 0.999,
            divergence_bound: 1e6,
            converge_order: 0.5,
            diverge_order: 0.05,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesReport {
    pub terms: Vec<f64>,
    /// `partial_sums[L-1]` is the sum of the first `L` terms (or, for an
    /// operator series, the norm of that sum).
    pub partial_sums: Vec<f64>,
    pub tail_ratio: f64,
    pub decay_order: Option<f64>,
    pub verdict: SeriesVerdict,
}

/// Increments the verdict is computed from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockIncrements {
    pub total: f64,
    pub last_quarter: f64,
    pub upper_half: f64,
    pub lower_quarter: f64,
}

impl SeriesReport {
    /// Scalar series with nonnegative terms.
    pub fn scalar(terms: Vec<f64>, tol: &SeriesTolerances) -> SeriesReport {
        let mut partial_sums = Vec::with_capacity(terms.len());
        let mut s = 0.0;
        for t in &terms {
            s += t;
            partial_sums.push(s);
        }
        let blocks = block_increments(&partial_sums, |a, b| partial_sums[b] - a.map_or(0.0, |a| partial_sums[a]));
        Self::from_parts(terms, partial_sums, blocks, tol)
    }

    /// Series whose terms are operators: `terms` holds the norms of the
    /// terms, `partial_sums` the norms of the partial sums and `blocks` the
    /// norms of the block sums.
    pub fn from_parts(
        terms: Vec<f64>,
        partial_sums: Vec<f64>,
        blocks: Option<BlockIncrements>,
        tol: &SeriesTolerances,
    ) -> SeriesReport {
        let tail_ratio = tail_ratio(&terms);
        let (verdict, decay_order) = classify(blocks, tail_ratio, tol);
        SeriesReport { terms, partial_sums, tail_ratio, decay_order, verdict }
    }

    pub fn horizon(&self) -> usize {
        self.terms.len()
    }

    pub fn total(&self) -> f64 {
        self.partial_sums.last().copied().unwrap_or(0.0)
    }
}

/// Index triple `(L/4, L/2, 3L/4)` and the increments between them, with
/// `block(a, b)` the size of the sum of terms `a+1 ..= b` (`a = None` from
/// the start).
pub fn block_increments(
    partial_sums: &[f64],
    mut block: impl FnMut(Option<usize>, usize) -> f64,
) -> Option<BlockIncrements> {
    let l = partial_sums.len();
    if l < 4 {
        return None;
    }
    let (q, h, tq) = (l / 4 - 1, l / 2 - 1, 3 * l / 4 - 1);
    Some(BlockIncrements {
        total: block(None, l - 1),
        last_quarter: block(Some(tq), l - 1),
        upper_half: block(Some(h), l - 1),
        lower_quarter: block(Some(q), h),
    })
}

/// Mean ratio of consecutive positive terms over the last quarter.
fn tail_ratio(terms: &[f64]) -> f64 {
    let start = terms.len() - terms.len() / 4;
    let mut n = 0usize;
    let mut acc = 0.0;
    for w in terms[start.saturating_sub(1)..].windows(2) {
        if w[0] > 0.0 {
            acc += w[1] / w[0];
            n += 1;
        }
    }
    if n == 0 {
        0.0
    } else {
        acc / n as f64
    }
}

fn classify(blocks: Option<BlockIncrements>, ratio: f64, tol: &SeriesTolerances) -> (SeriesVerdict, Option<f64>) {
    let Some(b) = blocks else {
        return (SeriesVerdict::Inconclusive, None);
    };
    if !b.total.is_finite() || b.total > tol.divergence_bound {
        return (SeriesVerdict::Diverges, None);
    }
    if b.upper_half == 0.0 {
        return (SeriesVerdict::Converges, None);
    }
    let order = if b.lower_quarter > 0.0 {
        Some((b.lower_quarter / b.upper_half).log2())
    } else {
        None
    };
    if b.last_quarter < tol.cauchy && ratio < tol.ratio {
        return (SeriesVerdict::Converges, order);
    }
    match order {
        Some(p) if p >= tol.converge_order => (SeriesVerdict::Converges, order),
        Some(p) if p <= tol.diverge_order => (SeriesVerdict::Diverges, order),
        // the upper half grew from a standing start
        None => (SeriesVerdict::Diverges, order),
        _ => (SeriesVerdict::Inconclusive, order),
    }
}

/// `‖·‖ → 0` check on a finite sequence: the final value is below `tol`
/// and the values do not increase over the last half.
pub fn decays_to_zero(values: &[f64], tol: f64) -> bool {
    let Some(&last) = values.last() else {
        return false;
    };
    let half = &values[values.len() / 2..];
    last < tol && half.windows(2).all(|w| w[1] <= w[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verdict(f: impl Fn(f64) -> f64, l: usize) -> SeriesVerdict {
        let terms = (1..=l).map(|i| f(i as f64)).collect();
        SeriesReport::scalar(terms, &SeriesTolerances::default()).verdict
    }

    #[test]
    fn standard_series() {
        assert_eq!(verdict(|l| 1.0 / (l * l), 500), SeriesVerdict::Converges);
        assert_eq!(verdict(|l| 1.0 / l, 500), SeriesVerdict::Diverges);
        assert_eq!(verdict(|_| 1.0, 500), SeriesVerdict::Diverges);
        assert_eq!(verdict(|l| 0.5f64.powf(l), 500), SeriesVerdict::Converges);
        assert_eq!(verdict(|_| 0.0, 500), SeriesVerdict::Converges);
        assert_eq!(verdict(|l| 1.0 / l.powf(1.75), 500), SeriesVerdict::Converges);
    }

    #[test]
    fn borderline_is_inconclusive() {
        // p = 1.25 sits between the two thresholds
        assert_eq!(verdict(|l| 1.0 / l.powf(1.25), 500), SeriesVerdict::Inconclusive);
        assert_eq!(verdict(|l| 1.0 / l, 3), SeriesVerdict::Inconclusive);
    }

    #[test]
    fn late_start_is_divergent() {
        assert_eq!(verdict(|l| if l > 300.0 { 1.0 } else { 0.0 }, 500), SeriesVerdict::Diverges);
    }

    #[test]
    fn decay_check() {
        assert!(decays_to_zero(&[1.0, 0.5, 0.1, 1e-7], 1e-6));
        assert!(!decays_to_zero(&[1.0, 1e-7, 1e-8, 1e-7], 1e-6));
        assert!(decays_to_zero(&[0.0, 0.0], 1e-6));
        assert!(!decays_to_zero(&[], 1e-6));
    }
}

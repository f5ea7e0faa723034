use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dynamics::{
    backward_product_norm, forward_product_norm, ApproximantFamily, GeneralizedShift, IncreasingSequence,
};
use crate::error::{Error, Result};
use crate::operator::{FiniteOp, Operator, SparseVector};

use super::furstenberg::{FurstenbergFamily, ReturnSet};
use super::{CriterionVerdict, EvidenceTable, Holds};

fn verdict_for(family: FurstenbergFamily, hits: ReturnSet, criterion: &str) -> CriterionVerdict {
    let accepted = family.accepts(&hits);
    let mut v = CriterionVerdict::new(criterion, Holds::from_bool(accepted));
    if accepted {
        v.implications.push(format!("{}-transitive", family.label()));
        if family == FurstenbergFamily::Cof {
            v.implications.push("topologically mixing".into());
        }
    }
    v.notes.push(format!(
        "{} of {} indices hit, family {}",
        hits.len(),
        hits.horizon(),
        family.label()
    ));
    v.return_set = Some(hits);
    v
}

fn t_at(tn: &IncreasingSequence, horizon: u64) -> Result<&[u64]> {
    if (tn.len() as u64) < horizon {
        return Err(Error::InvalidParameter(format!(
            "t_n has {} terms, horizon needs {horizon}",
            tn.len()
        )));
    }
    Ok(&tn.terms()[..horizon as usize])
}

/// For `n = 1..=N` computes, for every `j ∈ [J]`, the quadruple
/// `(‖D_j^{(n)} - P_m‖, ‖G_j^{(n)} - P_m‖, ‖W_{j+t_n} ⋯ W_{j+1} D_j^{(n)}‖,
/// ‖W_{j-t_n+1}^{-1} ⋯ W_j^{-1} G_j^{(n)}‖)`; `n` is a hit when every entry
/// is below `eps` for every `j`. The verdict is membership of the hit set.
///
/// The table lists the maximum of each entry over `j`.
#[allow(clippy::too_many_arguments)]
pub fn check_f_transitivity(
    shift: &GeneralizedShift,
    tn: &IncreasingSequence,
    j_max: u32,
    m: u32,
    family: FurstenbergFamily,
    approx: &ApproximantFamily,
    eps: f64,
    horizon: u64,
) -> Result<CriterionVerdict> {
    let ts = t_at(tn, horizon)?;
    let pm = FiniteOp::projection(m);
    let mut table = EvidenceTable::new("ftrans", &["n", "dD", "dG", "fwd", "bwd", "hit"]);
    let mut hits = Vec::new();
    for (idx, &t) in ts.iter().enumerate() {
        let n = idx as u64 + 1;
        let k = idx + 1;
        let mut q = [0.0f64; 4];
        for j in -(j_max as i64)..=j_max as i64 {
            let d = approx.d(j, k, m);
            let g = approx.g(0, j, k, m);
            let vals = [
                d.add_signed(&pm, -1.0).norm()?,
                g.add_signed(&pm, -1.0).norm()?,
                forward_product_norm(shift.weights(), j, t, &d)?,
                backward_product_norm(shift.weights(), j, t, &g)?,
            ];
            for (a, b) in q.iter_mut().zip(vals) {
                *a = a.max(b);
            }
        }
        let hit = q.iter().all(|v| *v < eps);
        if hit {
            hits.push(n);
        }
        table.push(vec![n.into(), q[0].into(), q[1].into(), q[2].into(), q[3].into(), hit.into()]);
    }
    let mut v = verdict_for(family, ReturnSet::new(hits, horizon), "ftrans");
    v.tables.push(table);
    Ok(v)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniformReport {
    pub holds: bool,
    pub hits: ReturnSet,
}

/// Uniform `F`-convergence: with `hit_i = {n : |x_n^{(i)} - x^{(i)}| < eps}`
/// (Euclidean distance), the intersection of all `hit_i` must lie in the
/// family. Index `n` runs over `0..len`, truncated to the shortest sequence.
pub fn check_uniform_f_convergence(
    sequences: &[Vec<Vec<f64>>],
    targets: &[Vec<f64>],
    family: FurstenbergFamily,
    eps: f64,
) -> Result<UniformReport> {
    if sequences.len() != targets.len() {
        return Err(Error::InvalidParameter("one target per sequence".into()));
    }
    let len = sequences.iter().map(Vec::len).min().unwrap_or(0);
    if len == 0 {
        return Err(Error::InvalidParameter("sequences must be nonempty".into()));
    }
    let hits = (0..len).filter(|&n| {
        sequences.iter().zip(targets).all(|(seq, target)| {
            let d2: f64 = seq[n].iter().zip(target).map(|(a, b)| (a - b).powi(2)).sum();
            d2.sqrt() < eps
        })
    });
    let hits = ReturnSet::new(hits.map(|n| n as u64), len as u64 - 1);
    Ok(UniformReport { holds: family.accepts(&hits), hits })
}

/// Finite samples of the unit ball, two per coordinate `j ∈ [J]`.
#[derive(Debug, Clone, Default)]
pub struct SampleSets {
    pub per_j: BTreeMap<i64, (Vec<SparseVector>, Vec<SparseVector>)>,
}

impl SampleSets {
    /// Same `H1`, `H2` on every `j ∈ [J]`.
    pub fn uniform(j_max: u32, h1: Vec<SparseVector>, h2: Vec<SparseVector>) -> Self {
        SampleSets {
            per_j: (-(j_max as i64)..=j_max as i64).map(|j| (j, (h1.clone(), h2.clone()))).collect(),
        }
    }

    pub fn basis(j_max: u32, m: u32) -> Self {
        let b: Vec<SparseVector> = (-(m as i64)..=m as i64).map(SparseVector::basis).collect();
        Self::uniform(j_max, b.clone(), b)
    }

    fn is_vacuous(&self) -> bool {
        self.per_j.values().all(|(a, b)| a.is_empty() && b.is_empty())
    }
}

fn walk_vector(shift: &GeneralizedShift, j: i64, t: u64, x: &SparseVector, forward: bool) -> Result<f64> {
    let mut v = x.clone();
    for step in 0..t as i64 {
        let op = if forward {
            shift.weights().weight(j + 1 + step)?
        } else {
            shift.weights().inverse(j - step)?
        };
        v = Operator::Shift(op).apply_vector(&v)?;
        if v.0.is_empty() {
            break;
        }
    }
    Ok(v.norm())
}

/// Sampled pointwise test: `n` is a hit when `‖W_{j+t_n} ⋯ W_{j+1} x‖ < eps`
/// for every `x ∈ H1_j` and `‖W_{j-t_n+1}^{-1} ⋯ W_j^{-1} y‖ < eps` for every
/// `y ∈ H2_j`. A finite sample cannot certify density, so this is evidence
/// only.
pub fn check_sampled_3_9(
    shift: &GeneralizedShift,
    tn: &IncreasingSequence,
    samples: &SampleSets,
    family: FurstenbergFamily,
    eps: f64,
    horizon: u64,
) -> Result<CriterionVerdict> {
    let ts = t_at(tn, horizon)?;
    for (a, b) in samples.per_j.values() {
        if a.iter().chain(b).any(|x| x.norm() > 1.0 + 1e-12) {
            return Err(Error::InvalidParameter("samples must lie in the unit ball".into()));
        }
    }
    let mut table = EvidenceTable::new("sampled", &["n", "fwd", "bwd", "hit"]);
    let mut hits = Vec::new();
    for (idx, &t) in ts.iter().enumerate() {
        let n = idx as u64 + 1;
        let (mut fwd, mut bwd) = (0.0f64, 0.0f64);
        for (&j, (h1, h2)) in &samples.per_j {
            for x in h1 {
                fwd = fwd.max(walk_vector(shift, j, t, x, true)?);
            }
            for y in h2 {
                bwd = bwd.max(walk_vector(shift, j, t, y, false)?);
            }
        }
        let hit = fwd < eps && bwd < eps;
        if hit {
            hits.push(n);
        }
        table.push(vec![n.into(), fwd.into(), bwd.into(), hit.into()]);
    }
    let mut v = verdict_for(family, ReturnSet::new(hits, horizon), "sampled");
    if samples.is_vacuous() {
        v.notes.push("warning: sample sets are empty, the test holds vacuously".into());
    }
    v.tables.push(table);
    Ok(v)
}

use crate::dynamics::{ApproximantFamily, Direction, GeneralizedShift, IncreasingSequence, ProductAccumulator};
use crate::error::{Error, Result};
use crate::operator::FiniteOp;

use super::series::{block_increments, decays_to_zero, SeriesReport};
use super::{combine, series_holds, CheckOptions, CriterionVerdict, EvidenceTable, Holds, SeriesSummary};

const SERIES_COLUMNS: [&str; 5] = ["j", "k", "l", "term", "partial_sum"];

/// Calls `visit(l, product)` with `W_{j+l·n} ⋯ W_{j+1} D` (or its backward
/// counterpart) for `l = 1..=l_max`, growing one product incrementally.
fn walk(
    shift: &GeneralizedShift,
    direction: Direction,
    j: i64,
    n: u64,
    seed: &FiniteOp,
    l_max: usize,
    mut visit: impl FnMut(usize, &FiniteOp) -> Result<()>,
) -> Result<()> {
    let mut acc = ProductAccumulator::new(shift.weights(), direction, j, seed.clone());
    for l in 1..=l_max {
        if acc.value().is_zero() {
            visit(l, acc.value())?;
            continue;
        }
        acc.extend(n)?;
        visit(l, acc.value())?;
    }
    Ok(())
}

fn record(
    table: &mut EvidenceTable,
    summaries: &mut Vec<SeriesSummary>,
    label: &str,
    j: i64,
    k: usize,
    n: u64,
    report: &SeriesReport,
) -> Holds {
    for (l, (t, s)) in report.terms.iter().zip(&report.partial_sums).enumerate() {
        table.push(vec![j.into(), k.into(), (l + 1).into(), (*t).into(), (*s).into()]);
    }
    summaries.push(SeriesSummary {
        label: label.into(),
        j,
        k,
        n_k: n,
        horizon: report.horizon(),
        total: report.total(),
        tail_ratio: report.tail_ratio,
        decay_order: report.decay_order,
        verdict: report.verdict,
    });
    series_holds(report.verdict)
}

fn approximant_limits(
    j_max: u32,
    m: u32,
    ks: usize,
    approx: &ApproximantFamily,
    opts: &CheckOptions,
    out: &mut CriterionVerdict,
) -> Result<Holds> {
    let pm = FiniteOp::projection(m);
    let mut table = EvidenceTable::new("approximants", &["j", "k", "dD"]);
    let mut ok = true;
    for j in -(j_max as i64)..=j_max as i64 {
        let mut col = Vec::with_capacity(ks);
        for k in 0..ks {
            let d = approx.d(j, k, m).add_signed(&pm, -1.0).norm()?;
            table.push(vec![j.into(), k.into(), d.into()]);
            col.push(d);
        }
        ok &= decays_to_zero(&col, opts.limit_tol);
    }
    out.tables.push(table);
    Ok(Holds::from_bool(ok))
}

fn checked_ks(nk: &IncreasingSequence, opts: &CheckOptions) -> Result<usize> {
    let ks = opts.k_count.min(nk.len());
    if ks == 0 || opts.l_max == 0 {
        return Err(Error::InvalidParameter("need at least one n_k and one series term".into()));
    }
    Ok(ks)
}

/// Scalar series test: for `j ∈ [-J, J]` and the first `k_count` values of
/// `n_k`, both `Σ_l ‖W_{j+l n_k} ⋯ W_{j+1} D_j^{(k)}‖²` and
/// `Σ_l ‖W_{j-l n_k+1}^{-1} ⋯ W_j^{-1} D_j^{(k)}‖²` must converge, and
/// `D_j^{(k)} → P_m`.
///
/// The unsquared forward series is also reported (label
/// `forward_unsquared`) as a diagnostic; it does not enter the verdict.
pub fn check_fhc(
    shift: &GeneralizedShift,
    j_max: u32,
    m: u32,
    nk: &IncreasingSequence,
    approx: &ApproximantFamily,
    opts: &CheckOptions,
) -> Result<CriterionVerdict> {
    let ks = checked_ks(nk, opts)?;
    let mut v = CriterionVerdict::new("fhc", Holds::Inconclusive);
    let mut fwd = EvidenceTable::new("forward", &SERIES_COLUMNS);
    let mut bwd = EvidenceTable::new("backward", &SERIES_COLUMNS);
    let mut plain = EvidenceTable::new("forward_unsquared", &SERIES_COLUMNS);
    let mut parts = Vec::new();
    for (k, &n) in nk.terms()[..ks].iter().enumerate() {
        for j in -(j_max as i64)..=j_max as i64 {
            let d = approx.d(j, k, m);
            for (direction, table) in [(Direction::Forward, &mut fwd), (Direction::Backward, &mut bwd)] {
                let mut sq = Vec::with_capacity(opts.l_max);
                let mut raw = Vec::with_capacity(opts.l_max);
                walk(shift, direction, j, n, &d, opts.l_max, |_, p| {
                    let t = p.norm()?;
                    sq.push(t * t);
                    raw.push(t);
                    Ok(())
                })?;
                let label = match direction {
                    Direction::Forward => "forward",
                    Direction::Backward => "backward",
                };
                let report = SeriesReport::scalar(sq, &opts.series);
                parts.push(record(table, &mut v.series, label, j, k, n, &report));
                if direction == Direction::Forward {
                    let report = SeriesReport::scalar(raw, &opts.series);
                    record(&mut plain, &mut v.series, "forward_unsquared", j, k, n, &report);
                }
            }
        }
    }
    parts.push(approximant_limits(j_max, m, ks, approx, opts, &mut v)?);
    v.tables.extend([fwd, bwd, plain]);
    v.holds = combine(parts);
    match v.holds {
        Holds::Yes => {
            v.implications = vec!["frequently hypercyclic".into(), "chaotic".into(), "mixing".into()];
        }
        Holds::No => v.notes.push(
            "the series condition fails at this horizon; this does not show the shift is not frequently hypercyclic"
                .into(),
        ),
        Holds::Inconclusive => v.notes.push("some series could not be classified at this horizon".into()),
    }
    Ok(v)
}

/// Operator-valued series test for `U = I`: the partial sums of
/// `Σ_l D* W_{j+1}* ⋯ W_{j+l n_k}* W_{j+l n_k} ⋯ W_{j+1} D` and of the
/// backward analogue are tracked in operator norm.
pub fn check_chaos_equiv(
    shift: &GeneralizedShift,
    j_max: u32,
    m: u32,
    nk: &IncreasingSequence,
    approx: &ApproximantFamily,
    opts: &CheckOptions,
) -> Result<CriterionVerdict> {
    if !shift.is_identity_unitary() {
        return Err(Error::InvalidParameter("the operator-series test needs U = I".into()));
    }
    let ks = checked_ks(nk, opts)?;
    let mut v = CriterionVerdict::new("chaos", Holds::Inconclusive);
    let mut fwd = EvidenceTable::new("forward_operator", &SERIES_COLUMNS);
    let mut bwd = EvidenceTable::new("backward_operator", &SERIES_COLUMNS);
    let mut parts = Vec::new();
    let l_max = opts.l_max;
    for (k, &n) in nk.terms()[..ks].iter().enumerate() {
        for j in -(j_max as i64)..=j_max as i64 {
            let d = approx.d(j, k, m);
            for (direction, table) in [(Direction::Forward, &mut fwd), (Direction::Backward, &mut bwd)] {
                let mut term_norms = Vec::with_capacity(l_max);
                let mut sum_norms = Vec::with_capacity(l_max);
                // partial sums kept at L/4, L/2, 3L/4 for the block increments
                let marks = [l_max / 4, l_max / 2, 3 * l_max / 4];
                let mut snapshots = [FiniteOp::zero(), FiniteOp::zero(), FiniteOp::zero()];
                let mut sum = FiniteOp::zero();
                walk(shift, direction, j, n, &d, l_max, |l, p| {
                    let term = p.transpose().mul(p);
                    term_norms.push(term.norm()?);
                    sum = sum.add_signed(&term, 1.0);
                    sum_norms.push(sum.norm()?);
                    for (mark, snap) in marks.iter().zip(snapshots.iter_mut()) {
                        if l == *mark {
                            *snap = sum.clone();
                        }
                    }
                    Ok(())
                })?;
                let diff = |a: &FiniteOp, b: &FiniteOp| a.add_signed(b, -1.0).norm();
                let blocks = if l_max >= 4 {
                    let [q, h, tq] = &snapshots;
                    Some(super::series::BlockIncrements {
                        total: sum.norm()?,
                        last_quarter: diff(&sum, tq)?,
                        upper_half: diff(&sum, h)?,
                        lower_quarter: diff(h, q)?,
                    })
                } else {
                    block_increments(&sum_norms, |_, _| 0.0)
                };
                let report = SeriesReport::from_parts(term_norms, sum_norms, blocks, &opts.series);
                let label = match direction {
                    Direction::Forward => "forward_operator",
                    Direction::Backward => "backward_operator",
                };
                parts.push(record(table, &mut v.series, label, j, k, n, &report));
            }
        }
    }
    parts.push(approximant_limits(j_max, m, ks, approx, opts, &mut v)?);
    v.tables.extend([fwd, bwd]);
    v.holds = combine(parts);
    match v.holds {
        Holds::Yes => {
            v.implications = vec![
                "chaotic".into(),
                "frequent hypercyclicity criterion (equivalent to chaos when U = I)".into(),
                "frequently hypercyclic".into(),
                "mixing".into(),
            ]
        }
        Holds::No => v.notes.push("an operator series fails to converge at this horizon".into()),
        Holds::Inconclusive => v.notes.push("some operator series could not be classified at this horizon".into()),
    }
    Ok(v)
}

use serde::{Deserialize, Serialize};

use crate::dynamics::{
    backward_product_norm, cross_product_norm, forward_product_norm, ApproximantFamily, GeneralizedShift,
    IncreasingSequence,
};
use crate::error::{Error, Result};
use crate::operator::{BasisShiftOp, FiniteOp, Projection};

use super::series::decays_to_zero;
use super::{Cell, CheckOptions, CriterionVerdict, EvidenceTable, Holds};

/// Norms below this count as zero in the orthogonality test.
pub const STAR_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StarReport {
    pub holds: bool,
    pub m: u32,
    pub nm_claim: u64,
    pub probe_range: u64,
    /// First failure as `(n, s, l, ‖P_m U_s^n U_l^{-n} P_m‖)`, 1-based `s, l`.
    pub violation: Option<(u64, usize, usize, f64)>,
}

/// `‖P_m U_s^n U_l^{-n} P_m‖`.
pub fn star_norm(us: &BasisShiftOp, ul: &BasisShiftOp, m: u32, n: u64) -> Result<f64> {
    let op = us.pow(n).compose(&ul.pow(n).adjoint());
    let range = Projection::new(m).range();
    FiniteOp::projection(m).left_mul_shift(&op).restrict_rows(range).norm()
}

/// Checks `P_m U^{(s)n} U^{(l)-n} P_m = 0` for all distinct `s, l` and all
/// `n ∈ [nm_claim, nm_claim + probe_range]`.
pub fn check_star_condition(unitaries: &[BasisShiftOp], m: u32, nm_claim: u64, probe_range: u64) -> Result<StarReport> {
    if unitaries.len() < 2 {
        return Err(Error::InvalidParameter("the orthogonality condition needs at least two unitaries".into()));
    }
    let mut report = StarReport { holds: true, m, nm_claim, probe_range, violation: None };
    for n in nm_claim..=nm_claim + probe_range {
        for (s, us) in unitaries.iter().enumerate() {
            for (l, ul) in unitaries.iter().enumerate() {
                if s == l {
                    continue;
                }
                let norm = star_norm(us, ul, m, n)?;
                if norm >= STAR_TOLERANCE {
                    report.holds = false;
                    report.violation = Some((n, s + 1, l + 1, norm));
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}

/// Orthogonality at each `n` actually used; the error carries the first failure.
pub(crate) fn require_star(shifts: &[GeneralizedShift], m: u32, ns: &[u64]) -> Result<()> {
    if shifts.len() < 2 {
        return Ok(());
    }
    let us: Vec<BasisShiftOp> = shifts.iter().map(|s| s.u().clone()).collect();
    for &n in ns {
        let r = check_star_condition(&us, m, n, 0)?;
        if let Some((n, s, l, norm)) = r.violation {
            return Err(Error::StarConditionUnverified { n, s, l, norm });
        }
    }
    Ok(())
}

/// Limit test for N shifts: over `k`, for every `j ∈ [J]` and shift `l`,
/// `‖D - P_m‖`, `‖G_l - P_m‖`, the forward norms with `D`, the backward
/// norms with `G_l` and the cross terms for `s ≠ l` must all decay to zero.
pub fn check_disjoint(
    shifts: &[GeneralizedShift],
    j_max: u32,
    m: u32,
    nk: &IncreasingSequence,
    approx: &ApproximantFamily,
    opts: &CheckOptions,
) -> Result<CriterionVerdict> {
    let ks = opts.k_count.max(1).min(nk.len());
    if ks == 0 {
        return Err(Error::InvalidParameter("need at least one n_k".into()));
    }
    // the last k_count terms: the limit is read off the end of the sequence
    let ns = &nk.terms()[nk.len() - ks..];
    require_star(shifts, m, ns)?;
    let k0 = nk.len() - ks;

    let count = shifts.len();
    let mut columns: Vec<String> = vec!["j".into(), "k".into(), "n_k".into(), "dD".into()];
    for l in 1..=count {
        columns.push(format!("dG_{l}"));
    }
    for l in 1..=count {
        columns.push(format!("fwd_{l}"));
    }
    for l in 1..=count {
        columns.push(format!("bwd_{l}"));
    }
    for s in 1..=count {
        for l in 1..=count {
            if s != l {
                columns.push(format!("cross_{s}_{l}"));
            }
        }
    }
    let names: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut table = EvidenceTable::new("disjoint", &names);

    let pm = FiniteOp::projection(m);
    let mut holds = Holds::Yes;
    let mut failing = Vec::new();
    for j in -(j_max as i64)..=j_max as i64 {
        let mut series: Vec<Vec<f64>> = vec![Vec::with_capacity(ks); columns.len() - 3];
        for (i, &n) in ns.iter().enumerate() {
            let k = k0 + i;
            let d = approx.d(j, k, m);
            let gs: Vec<FiniteOp> = (0..count).map(|l| approx.g(l, j, k, m)).collect();
            let mut row: Vec<f64> = vec![d.add_signed(&pm, -1.0).norm()?];
            for g in &gs {
                row.push(g.add_signed(&pm, -1.0).norm()?);
            }
            for sh in shifts {
                row.push(forward_product_norm(sh.weights(), j, n, &d)?);
            }
            for (sh, g) in shifts.iter().zip(&gs) {
                row.push(backward_product_norm(sh.weights(), j, n, g)?);
            }
            for (s, ss) in shifts.iter().enumerate() {
                for (l, sl) in shifts.iter().enumerate() {
                    if s != l {
                        row.push(cross_product_norm(ss.weights(), sl.weights(), j, n, &gs[l])?);
                    }
                }
            }
            for (col, v) in series.iter_mut().zip(&row) {
                col.push(*v);
            }
            let mut cells: Vec<Cell> = vec![j.into(), k.into(), n.into()];
            cells.extend(row.into_iter().map(Cell::from));
            table.push(cells);
        }
        for (c, values) in series.iter().enumerate() {
            if !decays_to_zero(values, opts.limit_tol) {
                let last = *values.last().unwrap_or(&f64::NAN);
                if last < opts.limit_tol {
                    if holds == Holds::Yes {
                        holds = Holds::Inconclusive;
                    }
                } else {
                    holds = Holds::No;
                }
                failing.push(format!("j = {j}: column {} ends at {last:e}", columns[c + 3]));
            }
        }
    }
    let mut v = CriterionVerdict::new("disjoint", holds);
    v.tables.push(table);
    v.notes = failing;
    if holds == Holds::Yes {
        v.implications = vec![
            "densely disjoint hypercyclic".into(),
            "disjoint topologically transitive for any unitaries".into(),
        ];
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_shift() {
        let us = [BasisShiftOp::identity(), BasisShiftOp::bilateral_shift(1)];
        assert!(check_star_condition(&us, 1, 3, 50).unwrap().holds);
        let r = check_star_condition(&us, 1, 2, 0).unwrap();
        assert!(!r.holds);
        assert_eq!(r.violation.map(|v| v.0), Some(2));
    }

    #[test]
    fn identical_unitaries_never_orthogonal() {
        let us = [BasisShiftOp::identity(), BasisShiftOp::identity()];
        for nm in [1, 10, 100] {
            assert!(!check_star_condition(&us, 2, nm, 3).unwrap().holds);
        }
    }
}

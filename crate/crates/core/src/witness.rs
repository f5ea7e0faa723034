//! Constructive witnesses: periodic points, transitivity witnesses and the
//! disjoint analogue, each with the errors actually achieved.

use crate::criteria::disjoint::require_star;
use crate::criteria::ReturnSet;
use crate::dynamics::{
    backward_product_norm, cross_product_norm, forward_product_norm, ApproximantFamily, GeneralizedShift,
};
use crate::error::{Error, Result};
use crate::module::{module_norm, FjmSpec, ModuleVector};
use crate::operator::{FiniteOp, Support};

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicExtension {
    pub vector: ModuleVector,
    /// Coordinates where `Tⁿy = y` is expected to hold exactly.
    pub interior: Support,
    /// `U ≠ I`: periodicity follows from the `Tⁿ` formula but is not part of
    /// the identity-unitary statement.
    pub beyond_identity_unitary: bool,
}

/// `y = Σ_{l=-L}^{L} T^{ln} b` with `T^{-1} = S`, i.e.
/// `y_{j+ln} = W_{j+ln} ⋯ W_{j+1} b_j U^{ln}` and
/// `y_{j-ln} = W_{j-ln+1}^{-1} ⋯ W_j^{-1} b_j U^{-ln}`.
///
/// `Tⁿy - y = T^{(L+1)n} b - S^{Ln} b`, so `y` is `n`-periodic away from the
/// two outermost copies.
pub fn periodic_extension(
    shift: &GeneralizedShift,
    block: &ModuleVector,
    n: u64,
    copies: u64,
) -> Result<PeriodicExtension> {
    if n == 0 {
        return Err(Error::InvalidParameter("period must be positive".into()));
    }
    let span = block.support_span();
    if !block.is_zero() && (span.hi - span.lo + 1) as u64 > n {
        return Err(Error::InvalidParameter(format!(
            "block spans {} coordinates, more than the period {n}",
            span.hi - span.lo + 1
        )));
    }
    let mut y = block.clone();
    for l in 1..=copies {
        y = y.add_signed(&shift.iterate_t(l * n, block)?, 1.0);
        y = y.add_signed(&shift.iterate_s(l * n, block)?, 1.0);
    }
    let interior = if block.is_zero() {
        Support::EMPTY
    } else {
        let (l, n) = (copies as i64, n as i64);
        Support::new(span.lo - (l - 1) * n, span.hi + l * n)
    };
    Ok(PeriodicExtension { vector: y, interior, beyond_identity_unitary: !shift.is_identity_unitary() })
}

/// `‖(Tⁿy - y)|_interior‖`.
pub fn periodicity_residual(shift: &GeneralizedShift, y: &ModuleVector, n: u64, interior: Support) -> Result<f64> {
    module_norm(&shift.iterate_t(n, y)?.sub(y).restrict(interior))
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessReport {
    pub witness: ModuleVector,
    pub n: u64,
    /// `‖witness - x‖`.
    pub input_error: f64,
    /// `‖T_lⁿ(witness) - y^{(l)}‖`, one per shift.
    pub output_errors: Vec<f64>,
    /// Maxima over `j` and `l` of `‖D_j - P_m‖`, `‖G_{l,j} - P_m‖`, the
    /// forward norms with `D_j` and the backward norms with `G_{l,j}`.
    pub quadruple: [f64; 4],
    /// Largest cross norm `‖T_sⁿ S_lⁿ G_{l,j}‖`, `s ≠ l`; zero for one shift.
    pub cross: f64,
    /// Triangle-inequality bound on the larger error predicted from the
    /// quadruple and cross norms.
    pub bound: f64,
    /// `max(‖x‖, ‖y^{(l)}‖, 1)`.
    pub scale: f64,
    pub j_max: u32,
}

impl WitnessReport {
    /// Per-entry budget `eps / (2(2J+1)·scale)` under which both errors
    /// are guaranteed below `eps`.
    pub fn budget(&self, eps: f64) -> f64 {
        eps / (2.0 * (2 * self.j_max + 1) as f64 * self.scale)
    }

    pub fn premise_holds(&self, eps: f64) -> bool {
        let b = self.budget(eps);
        self.quadruple.iter().chain([&self.cross]).all(|v| *v < b)
    }

    pub fn max_error(&self) -> f64 {
        self.output_errors.iter().fold(self.input_error, |a, b| a.max(*b))
    }

    pub fn within(&self, eps: f64) -> bool {
        self.max_error() < eps
    }
}

fn check_inputs(spec: FjmSpec, vectors: &[&ModuleVector], t: u64) -> Result<()> {
    if t <= 2 * spec.j as u64 {
        return Err(Error::SupportCollision { t, j: spec.j });
    }
    if vectors.iter().any(|v| !spec.contains(v)) {
        return Err(Error::InvalidParameter(format!(
            "inputs must lie in F_(J,m) with J = {}, m = {}",
            spec.j, spec.m
        )));
    }
    Ok(())
}

/// `φ = u + Σ_l S_lⁿ v_l` with `u_j = D_j x_j` and `(v_l)_j = G_{l,j} y^{(l)}_j`
/// on `[J]`; approximants are read at index `k`.
pub fn disjoint_witness(
    shifts: &[GeneralizedShift],
    spec: FjmSpec,
    x: &ModuleVector,
    ys: &[ModuleVector],
    n: u64,
    approx: &ApproximantFamily,
    k: usize,
) -> Result<WitnessReport> {
    if shifts.is_empty() || shifts.len() != ys.len() {
        return Err(Error::InvalidParameter("need one target per shift".into()));
    }
    let mut all: Vec<&ModuleVector> = vec![x];
    all.extend(ys);
    check_inputs(spec, &all, n)?;
    require_star(shifts, spec.m, &[n])?;

    let m = spec.m;
    let pm = FiniteOp::projection(m);
    let mut quadruple = [0.0f64; 4];
    let mut cross = 0.0f64;
    let (mut bound_in, mut bound_out) = (0.0, vec![0.0; shifts.len()]);
    let mut u = ModuleVector::zero();
    let mut vs = vec![ModuleVector::zero(); shifts.len()];
    for j in spec.coords() {
        let d = approx.d(j, k, m);
        let gs: Vec<FiniteOp> = (0..shifts.len()).map(|l| approx.g(l, j, k, m)).collect();
        let xn = x.coord(j).norm()?;
        let yn: Vec<f64> = ys.iter().map(|y| y.coord(j).norm()).collect::<Result<_>>()?;

        let dd = d.add_signed(&pm, -1.0).norm()?;
        quadruple[0] = quadruple[0].max(dd);
        bound_in += dd * xn;
        for (l, sh) in shifts.iter().enumerate() {
            let dg = gs[l].add_signed(&pm, -1.0).norm()?;
            let fwd = forward_product_norm(sh.weights(), j, n, &d)?;
            let bwd = backward_product_norm(sh.weights(), j, n, &gs[l])?;
            quadruple[1] = quadruple[1].max(dg);
            quadruple[2] = quadruple[2].max(fwd);
            quadruple[3] = quadruple[3].max(bwd);
            bound_in += bwd * yn[l];
            bound_out[l] += fwd * xn + dg * yn[l];
            for (s, other) in shifts.iter().enumerate() {
                if s != l {
                    let c = cross_product_norm(sh.weights(), other.weights(), j, n, &gs[s])?;
                    cross = cross.max(c);
                    bound_out[l] += c * yn[s];
                }
            }
        }

        if let Some(xj) = x.get(j) {
            u.add_at(j, &d.mul(xj), 1.0);
        }
        for (l, y) in ys.iter().enumerate() {
            if let Some(yj) = y.get(j) {
                vs[l].add_at(j, &gs[l].mul(yj), 1.0);
            }
        }
    }

    let mut phi = u;
    for (sh, v) in shifts.iter().zip(&vs) {
        phi = phi.add_signed(&sh.iterate_s(n, v)?, 1.0);
    }
    let input_error = module_norm(&phi.sub(x))?;
    let output_errors = shifts
        .iter()
        .zip(ys)
        .map(|(sh, y)| module_norm(&sh.iterate_t(n, &phi)?.sub(y)))
        .collect::<Result<Vec<f64>>>()?;
    let mut scale = module_norm(x)?.max(1.0);
    for y in ys {
        scale = scale.max(module_norm(y)?);
    }
    Ok(WitnessReport {
        witness: phi,
        n,
        input_error,
        output_errors,
        quadruple,
        cross,
        bound: bound_out.into_iter().fold(bound_in, f64::max),
        scale,
        j_max: spec.j,
    })
}

/// `η = u + S^t v`, `u_j = D_j x_j`, `v_j = G_j y_j`: the one-shift case of
/// [`disjoint_witness`].
pub fn transitivity_witness(
    shift: &GeneralizedShift,
    spec: FjmSpec,
    x: &ModuleVector,
    y: &ModuleVector,
    t: u64,
    approx: &ApproximantFamily,
    k: usize,
) -> Result<WitnessReport> {
    disjoint_witness(std::slice::from_ref(shift), spec, x, std::slice::from_ref(y), t, approx, k)
}

/// Certified members of `N(B(x, eps), B(y, eps))` up to `horizon`: `n > 2J`
/// is included when the witness built with `t = n` (approximants at
/// `k = n`) or the zero vector lands both errors below `eps`. Failure does
/// not prove `n` is outside the return set.
pub fn return_set_scan(
    shift: &GeneralizedShift,
    spec: FjmSpec,
    x: &ModuleVector,
    y: &ModuleVector,
    eps: f64,
    horizon: u64,
    approx: &ApproximantFamily,
) -> Result<ReturnSet> {
    let zero_works = module_norm(x)? < eps && module_norm(y)? < eps;
    let mut members = Vec::new();
    for n in 2 * spec.j as u64 + 1..=horizon {
        if zero_works || transitivity_witness(shift, spec, x, y, n, approx, n as usize)?.within(eps) {
            members.push(n);
        }
    }
    Ok(ReturnSet::new(members, horizon))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{family_constant, family_example_3_11};
    use crate::module::{make_fjm_vector, Fill};
    use crate::operator::BasisShiftOp;

    #[test]
    fn identity_extension_is_periodic() {
        let id = family_constant(BasisShiftOp::identity(), BasisShiftOp::identity()).unwrap();
        let b = ModuleVector::single(0, FiniteOp::projection(1));
        let ext = periodic_extension(&id, &b, 3, 2).unwrap();
        assert_eq!(ext.vector.support(), vec![-6, -3, 0, 3, 6]);
        assert!(ext.vector.coords().all(|(_, x)| *x == FiniteOp::projection(1)));
        assert_eq!(periodicity_residual(&id, &ext.vector, 3, ext.interior).unwrap(), 0.0);
        assert!(periodic_extension(&id, &ModuleVector::from_coords([(0, FiniteOp::projection(1)), (3, FiniteOp::projection(1))]), 3, 1).is_err());
    }

    #[test]
    fn mixing_witness_small() {
        let t = family_example_3_11(2.0).unwrap();
        let spec = FjmSpec::new(1, 1);
        let x = make_fjm_vector(spec, &Fill::Projection);
        let a = ApproximantFamily::default();
        let r = transitivity_witness(&t, spec, &x, &x, 50, &a, 50).unwrap();
        assert!(r.input_error < 1e-6 && r.output_errors[0] < 1e-6);
        assert!(r.max_error() <= r.bound + 1e-12);
        assert!(matches!(
            transitivity_witness(&t, spec, &x, &x, 2, &a, 2),
            Err(Error::SupportCollision { t: 2, j: 1 })
        ));
    }

    #[test]
    fn zero_inputs() {
        let t = family_example_3_11(2.0).unwrap();
        let spec = FjmSpec::new(1, 1);
        let z = ModuleVector::zero();
        let r = transitivity_witness(&t, spec, &z, &z, 5, &ApproximantFamily::default(), 5).unwrap();
        assert!(r.witness.is_zero());
        assert_eq!((r.input_error, r.output_errors[0]), (0.0, 0.0));
    }

    #[test]
    fn identity_weights_never_return() {
        let id = family_constant(BasisShiftOp::identity(), BasisShiftOp::identity()).unwrap();
        let spec = FjmSpec::new(1, 1);
        let x = make_fjm_vector(spec, &Fill::Projection);
        let rs = return_set_scan(&id, spec, &x, &x, 0.1, 60, &ApproximantFamily::default()).unwrap();
        assert!(rs.is_empty());
    }
}

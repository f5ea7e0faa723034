#![allow(dead_code)]

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use shiftdyn::dynamics::{
    family_constant, family_custom, family_example_3_11, family_example_3_2, family_example_3_6,
    family_example_3_6_alternate, GeneralizedShift,
};
use shiftdyn::module::{FjmSpec, ModuleVector};
use shiftdyn::operator::{BasisShiftOp, Coeff, FiniteOp};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random element of `F_{J,m}`: rows in `[-m, m]`, columns in `[-m-2, m+2]`.
pub fn random_fjm(rng: &mut ChaCha8Rng, spec: FjmSpec) -> ModuleVector {
    let m = spec.m as i64;
    ModuleVector::from_coords(spec.coords().map(|j| {
        let entries: Vec<((i64, i64), f64)> = (-m..=m)
            .flat_map(|r| (-m - 2..=m + 2).map(move |c| (r, c)))
            .map(|rc| (rc, rng.random_range(-1.0..1.0)))
            .collect();
        (j, FiniteOp::from_entries(entries))
    }))
}

/// Every built-in family, with a name.
pub fn builtin_families() -> Vec<(String, GeneralizedShift)> {
    let mut out = vec![("example_3_2".to_string(), family_example_3_2())];
    for a in [2.0, 3.0] {
        out.push((format!("example_3_11({a})"), family_example_3_11(a).unwrap()));
    }
    for (k, s) in family_example_3_6().shifts.into_iter().enumerate() {
        out.push((format!("example_3_6/{}", k + 1), s));
    }
    for (k, s) in family_example_3_6_alternate().shifts.into_iter().enumerate() {
        out.push((format!("example_3_6_alternate/{}", k + 1), s));
    }
    out.push((
        "constant(identity)".into(),
        family_constant(BasisShiftOp::identity(), BasisShiftOp::identity()).unwrap(),
    ));
    out.push((
        "constant(2B, U=B)".into(),
        family_constant(BasisShiftOp::new(1, Coeff::Const(2.0)), BasisShiftOp::bilateral_shift(1)).unwrap(),
    ));
    let table = [(-1, 0.5), (0, 3.0), (2, -1.5)].into_iter().collect();
    out.push(("custom".into(), family_custom(1, table, 1.0, BasisShiftOp::bilateral_shift(-1)).unwrap()));
    out
}

/// Dense oracle for the rational weights, written straight from their
/// definition on the window `[-w, w]`.
pub fn rational_dense(i: i64, w: i64) -> DMatrix<f64> {
    let n = (2 * w + 1) as usize;
    let pos = |k: i64| (k + w) as usize;
    let mut a = DMatrix::zeros(n, n);
    let c = |i: i64, k: i64| {
        let x = i as f64;
        if k >= 0 {
            x / (x + 1.0)
        } else {
            (x + 1.0) / x
        }
    };
    for k in -w..=w {
        if i == 0 {
            a[(pos(k), pos(k))] = 1.0;
        } else if i > 0 {
            if k < w {
                a[(pos(k + 1), pos(k))] = c(i, k);
            }
        } else if k > -w {
            // inverse of e_{k-1} ↦ c e_k
            a[(pos(k - 1), pos(k))] = 1.0 / c(-i, k - 1);
        }
    }
    a
}

pub fn dense_projection(m: i64, w: i64) -> DMatrix<f64> {
    let n = (2 * w + 1) as usize;
    DMatrix::from_fn(n, n, |r, c| if r == c && (r as i64 - w).abs() <= m { 1.0 } else { 0.0 })
}

pub fn spectral_norm(a: &DMatrix<f64>) -> f64 {
    a.clone().svd(false, false).singular_values.max()
}

/// `‖W_{i+l} ⋯ W_{i+1} P_m‖` through dense matrices and an SVD.
pub fn rational_product_norm_oracle(i: i64, m: i64, l: i64) -> f64 {
    let w = m + l + 2;
    let mut acc = dense_projection(m, w);
    for s in 1..=l {
        acc = rational_dense(i + s, w) * acc;
    }
    spectral_norm(&acc)
}

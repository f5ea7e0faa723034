//! Browser bindings: three small computations the demo page plots.

use wasm_bindgen::prelude::*;

use shiftdyn::dynamics::products::{backward_product_norm, cross_product_norm, forward_product_norm};
use shiftdyn::dynamics::{family_example_3_11, family_example_3_2, family_example_3_6, rational_closed_form, ApproximantFamily};
use shiftdyn::module::{make_fjm_vector, Fill, FjmSpec};
use shiftdyn::operator::FiniteOp;
use shiftdyn::witness::return_set_scan;

fn js(e: shiftdyn::Error) -> JsValue {
    JsValue::from_str(&e.to_string())
}

/// `‖W_{i+l} ⋯ W_{i+1} P_m‖` for `l = 1..=l_max` with the rational weights.
#[wasm_bindgen]
pub fn rational_norms(i: i32, m: u32, l_max: u32) -> Result<Vec<f64>, JsValue> {
    let shift = family_example_3_2();
    let pm = FiniteOp::projection(m);
    (1..=l_max as u64).map(|l| forward_product_norm(shift.weights(), i as i64, l, &pm).map_err(js)).collect()
}

/// Closed form for the same products; `NaN` where it does not apply.
#[wasm_bindgen]
pub fn rational_closed_forms(i: i32, m: u32, l_max: u32) -> Vec<f64> {
    (1..=l_max as u64).map(|l| rational_closed_form(i as i64, m, l).unwrap_or(f64::NAN)).collect()
}

/// Certified return times `n ∈ [0, horizon]` (1 = member) for the split
/// weights with ratio `alpha`, from `x = y` with `x_j = scale · P_1` on `[-1, 1]`.
#[wasm_bindgen]
pub fn mixing_scan(alpha: f64, eps: f64, scale: f64, horizon: u32) -> Result<Vec<u8>, JsValue> {
    let shift = family_example_3_11(alpha).map_err(js)?;
    let spec = FjmSpec::new(1, 1);
    let x = make_fjm_vector(spec, &Fill::Compressed(FiniteOp::projection(1).scaled(scale)));
    let rs = return_set_scan(&shift, spec, &x, &x, eps, horizon as u64, &ApproximantFamily::default()).map_err(js)?;
    Ok((0..=horizon as u64).map(|n| rs.contains(n) as u8).collect())
}

/// Rows `[fwd_1, fwd_2, bwd_1, bwd_2, cross_1_2, cross_2_1]` at `j = 0`
/// for `n = 1..=n_max`, flattened; approximants are `P_m`.
#[wasm_bindgen]
pub fn disjoint_decay(m: u32, n_max: u32) -> Result<Vec<f64>, JsValue> {
    let pair = family_example_3_6();
    let (w1, w2) = (pair.shifts[0].weights(), pair.shifts[1].weights());
    let pm = FiniteOp::projection(m);
    let mut out = Vec::with_capacity(6 * n_max as usize);
    for n in 1..=n_max as u64 {
        out.extend([
            forward_product_norm(w1, 0, n, &pm).map_err(js)?,
            forward_product_norm(w2, 0, n, &pm).map_err(js)?,
            backward_product_norm(w1, 0, n, &pm).map_err(js)?,
            backward_product_norm(w2, 0, n, &pm).map_err(js)?,
            cross_product_norm(w1, w2, 0, n, &pm).map_err(js)?,
            cross_product_norm(w2, w1, 0, n, &pm).map_err(js)?,
        ]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curves_have_requested_length() {
        let num = rational_norms(0, 1, 12).unwrap();
        let cf = rational_closed_forms(0, 1, 12);
        assert_eq!(num.len(), 12);
        assert!(cf[0].is_nan());
        assert!((cf[4] - 4.0 / 6.0).abs() < 1e-15);
        for (a, b) in num.iter().zip(&cf).skip(1) {
            assert!((a - b).abs() < 1e-12);
        }
        assert_eq!(disjoint_decay(1, 10).unwrap().len(), 60);
    }

    #[test]
    fn scan_marks_late_returns() {
        let hits = mixing_scan(2.0, 0.1, 1.0, 40).unwrap();
        assert_eq!(hits.len(), 41);
        assert_eq!(hits[40], 1);
        assert_eq!(hits[0], 0);
    }
}

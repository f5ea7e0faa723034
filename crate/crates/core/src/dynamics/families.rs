//! Named weight and unitary families.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::operator::{BasisShiftOp, Coeff};

use super::shift::GeneralizedShift;
use super::weights::WeightSequence;

/// `e_n ↦ a e_{n+1}` for `n < 0` and `e_n ↦ b e_{n+1}` for `n ≥ 0`.
pub fn split_shift(below: f64, above: f64) -> BasisShiftOp {
    BasisShiftOp::new(1, Coeff::Step { split: 0, below, above })
}

/// `W_i` of the rational family: for `i > 0` it sends `e_j` to
/// `i/(i+1) e_{j+1}` when `j ≥ 0` and to `(i+1)/i e_{j+1}` when `j < 0`;
/// `W_i = W_{-i}^{-1}` for `i < 0` and `W_0 = I`.
pub fn rational_weight(i: i64) -> Result<BasisShiftOp> {
    match i {
        0 => Ok(BasisShiftOp::identity()),
        i if i > 0 => {
            let x = i as f64;
            Ok(split_shift((x + 1.0) / x, x / (x + 1.0)))
        }
        i => rational_weight(-i)?.inverse(),
    }
}

/// Closed form of `‖W_{i+l} ⋯ W_{i+1} P_m‖` for the rational family, on
/// the ranges where it is exact: `l > m` for `i ≥ 0`, and `l + 2i + 1 > m`
/// for `i < 0`, where the factors `W_{i+1} ⋯ W_{-i-1}` cancel and leave a
/// forward product of `l + 2i + 1` factors starting at `W_{-i}`.
pub fn rational_closed_form(i: i64, m: u32, l: u64) -> Option<f64> {
    let (i_f, m_f, l_f) = (i as f64, m as f64, l as f64);
    if i >= 0 && l > m as u64 {
        Some((i_f + m_f + 1.0).powi(2) / ((i_f + 1.0) * (i_f + l_f + 1.0)))
    } else if i < 0 && l as i64 + 2 * i + 1 > m as i64 {
        Some((m_f - i_f).powi(2) / ((-i_f) * (i_f + l_f + 1.0)))
    } else {
        None
    }
}

pub fn family_example_3_2() -> GeneralizedShift {
    GeneralizedShift::new(BasisShiftOp::identity(), WeightSequence::new("example_3_2", rational_weight))
        .expect("identity is unitary")
}

/// `W_j = V` with `V e_n = α e_{n+1}` (`n < 0`), `α^{-1} e_{n+1}` (`n ≥ 0`).
pub fn family_example_3_11(alpha: f64) -> Result<GeneralizedShift> {
    if !(alpha > 1.0 && alpha.is_finite()) {
        return Err(Error::InvalidParameter(format!("alpha must be a finite number > 1, got {alpha}")));
    }
    let v = split_shift(alpha, 1.0 / alpha);
    GeneralizedShift::new(BasisShiftOp::identity(), WeightSequence::constant("example_3_11", v))
}

/// `W_j = op` for every `j`.
pub fn family_constant(op: BasisShiftOp, u: BasisShiftOp) -> Result<GeneralizedShift> {
    GeneralizedShift::new(u, WeightSequence::constant("constant", op))
}

/// `W_j = e_k ↦ c(k) e_{k+offset}` for every `j`, `c` given by a table.
pub fn family_custom(offset: i64, table: BTreeMap<i64, f64>, default: f64, u: BasisShiftOp) -> Result<GeneralizedShift> {
    let op = BasisShiftOp::new(offset, Coeff::table(table, default));
    if op.inverse().is_err() {
        return Err(Error::InvalidParameter("custom weight has a zero coefficient".into()));
    }
    GeneralizedShift::new(u, WeightSequence::constant("custom", op))
}

/// N shifts together with the unitary threshold `N_m` for the orthogonality
/// condition.
#[derive(Debug, Clone)]
pub struct DisjointFamily {
    pub shifts: Vec<GeneralizedShift>,
    pub threshold: fn(u32) -> u64,
    pub unitary_label: &'static str,
}

impl DisjointFamily {
    pub fn nm(&self, m: u32) -> u64 {
        (self.threshold)(m)
    }

    pub fn unitaries(&self) -> Vec<BasisShiftOp> {
        self.shifts.iter().map(|s| s.u().clone()).collect()
    }
}

/// The weights of the disjoint pair: `W^{(1)}_j = W_1 = split(2, 1/2)` and
/// `W^{(2)}_j = W_2² = split(3, 1/3)²`.
pub fn disjoint_pair_weights() -> (WeightSequence, WeightSequence) {
    let w1 = split_shift(2.0, 0.5);
    let w2 = split_shift(3.0, 1.0 / 3.0);
    (
        WeightSequence::constant("example_3_6/1", w1),
        WeightSequence::constant("example_3_6/2", w2.compose(&w2)),
    )
}

/// Unitaries `U^{(1)} = I`, `U^{(2)} = B` (`B e_j = e_{j+1}`): `B^{∓n} L_m`
/// is orthogonal to `L_m` once `n > 2m`, so `N_m = 2m + 1`.
pub fn family_example_3_6() -> DisjointFamily {
    let (w1, w2) = disjoint_pair_weights();
    DisjointFamily {
        shifts: vec![
            GeneralizedShift::new(BasisShiftOp::identity(), w1).expect("unitary"),
            GeneralizedShift::new(BasisShiftOp::bilateral_shift(1), w2).expect("unitary"),
        ],
        threshold: |m| 2 * m as u64 + 1,
        unitary_label: "identity, shift",
    }
}

/// Same weights with `U^{(1)} = B^{-1}`, `U^{(2)} = B`: here
/// `U^{(1)n} U^{(2)-n} = B^{-2n}`, so `N_m = m + 1`.
pub fn family_example_3_6_alternate() -> DisjointFamily {
    let (w1, w2) = disjoint_pair_weights();
    DisjointFamily {
        shifts: vec![
            GeneralizedShift::new(BasisShiftOp::bilateral_shift(-1), w1).expect("unitary"),
            GeneralizedShift::new(BasisShiftOp::bilateral_shift(1), w2).expect("unitary"),
        ],
        threshold: |m| m as u64 + 1,
        unitary_label: "inverse shift, shift",
    }
}

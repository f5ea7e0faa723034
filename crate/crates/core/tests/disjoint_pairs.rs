use shiftdyn::criteria::{check_disjoint, CheckOptions, Holds};
use shiftdyn::dynamics::families::split_shift;
use shiftdyn::dynamics::{family_example_3_6, ApproximantFamily, GeneralizedShift, IncreasingSequence, WeightSequence};
use shiftdyn::operator::BasisShiftOp;
use shiftdyn::Error;

fn pair(w1: BasisShiftOp, w2: BasisShiftOp) -> Vec<GeneralizedShift> {
    vec![
        GeneralizedShift::new(BasisShiftOp::identity(), WeightSequence::constant("a", w1)).unwrap(),
        GeneralizedShift::new(BasisShiftOp::bilateral_shift(1), WeightSequence::constant("b", w2)).unwrap(),
    ]
}

fn verdict(shifts: &[GeneralizedShift]) -> Holds {
    let nk = IncreasingSequence::new(vec![20, 40, 60]).unwrap();
    let opts = CheckOptions { k_count: 3, ..CheckOptions::default() };
    check_disjoint(shifts, 1, 1, &nk, &ApproximantFamily::projections(2), &opts).unwrap().holds
}

#[test]
fn reference_pair_is_disjoint() {
    assert_eq!(verdict(&family_example_3_6().shifts), Holds::Yes);
}

#[test]
fn identical_weights_are_not() {
    let w = split_shift(2.0, 0.5);
    assert_eq!(verdict(&pair(w.clone(), w)), Holds::No);
}

#[test]
fn unsquared_pair_is_not() {
    // ‖W_2ⁿ W_1^{-n} P_m‖ grows like (3/2)ⁿ
    assert_eq!(verdict(&pair(split_shift(2.0, 0.5), split_shift(3.0, 1.0 / 3.0))), Holds::No);
}

#[test]
fn squared_first_weight_pair() {
    let w1 = split_shift(2.0, 0.5);
    let sq = w1.compose(&w1);
    // the cross terms still decay like 2^{-n}, in either order
    assert_eq!(verdict(&pair(w1.clone(), sq.clone())), Holds::Yes);
    assert_eq!(verdict(&pair(sq, w1)), Holds::Yes);
}

#[test]
fn star_failure_is_an_error() {
    let w = WeightSequence::constant("a", split_shift(2.0, 0.5));
    let s = GeneralizedShift::new(BasisShiftOp::identity(), w).unwrap();
    let nk = IncreasingSequence::new(vec![20, 40]).unwrap();
    let r = check_disjoint(&[s.clone(), s], 1, 1, &nk, &ApproximantFamily::projections(2), &CheckOptions::default());
    assert!(matches!(r, Err(Error::StarConditionUnverified { .. })));
}

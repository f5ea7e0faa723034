//! The shifts `T_{U,W}`, `S_{U,W}`, their iterates and weight products.

pub mod families;
pub mod products;
pub mod sequence;
pub mod shift;
pub mod weights;

pub use families::{
    family_constant, family_custom, family_example_3_11, family_example_3_2, family_example_3_6,
    family_example_3_6_alternate, rational_closed_form, DisjointFamily,
};
pub use products::{
    backward_product, backward_product_norm, cross_product_norm, forward_product, forward_product_norm,
    Direction, ProductAccumulator,
};
pub use sequence::{ApproximantFamily, Approximants, IncreasingSequence};
pub use shift::GeneralizedShift;
pub use weights::{ObservedBounds, WeightSequence};

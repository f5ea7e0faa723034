//! Generalized bilateral weighted shifts `T_{U,W}` on truncations of the
//! standard Hilbert module over the compact operators, with numerical
//! checkers for their dynamics.

#[cfg(feature = "cli")]
pub mod cli;
pub mod criteria;
pub mod dynamics;
pub mod error;
pub mod module;
pub mod operator;
pub mod witness;

pub use error::{Error, Result};

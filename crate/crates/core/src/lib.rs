//! Operator transforms built on the canonical polar decomposition
//! (Duggal, Aluthge, mean, λ-mean, generalized mean), certified
//! numerical-radius gauges, operator-class predicates and a weighted-shift
//! laboratory, for dense complex matrices.

// NaN must fail the guards, so `!(x > 0.0)` is deliberate.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod linalg;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, C64};
pub mod classify;
pub mod gauges;
pub mod shifts;
pub mod transforms;

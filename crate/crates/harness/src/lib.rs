//! Operator generators, the verification suite, worked examples and report
//! types behind the `lmean` command-line tool.

// NaN must fail the guards, so `!(x > 0.0)` is deliberate.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod examples;
pub mod generate;
pub mod report;
pub mod suite;

//! Certified gauges: numerical radius, numerical-range geometry, the
//! λ-mean radius integral and the cross-term supremum.

mod cross;
mod interval;
mod quadrature;
mod radius;
mod witness;

use serde::{Deserialize, Serialize};

pub use cross::{cross_term_sup, cross_term_sup_pair, CROSS_BUDGET};
pub use interval::Interval;
pub use quadrature::{convex_integral, lambda_radius_integral, radius_integral, radius_integral_with};
pub use radius::{
    numerical_radius, numerical_radius_with_budget, range_boundary, range_inclusion,
    range_inclusion_margin, rank_one_radius, support_function, RangePoint, DEFAULT_BUDGET,
};
pub use witness::{equality_witness, EqualityWitness, EQ_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GaugeMethod {
    GridRefine,
    Quadrature,
    ClosedForm,
}

/// Interval `[lo, hi]` certified to contain the gauge value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaugeBracket {
    pub lo: f64,
    pub hi: f64,
    pub evaluations: usize,
    pub method: GaugeMethod,
}

impl GaugeBracket {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn interval(&self) -> Interval {
        Interval::new(self.lo, self.hi)
    }
}

impl From<GaugeBracket> for Interval {
    fn from(b: GaugeBracket) -> Self {
        b.interval()
    }
}

/// Bound on the rounding error of one support-function evaluation.
pub(crate) fn rounding_slack(t: &crate::ComplexMatrix) -> f64 {
    8.0 * t.dim() as f64 * f64::EPSILON * t.frobenius_norm()
}

pub(crate) fn check_tol(tol: f64) -> crate::Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(crate::Error::InvalidParameter {
            name: "tol",
            value: tol,
            range: "(0, inf)",
        })
    }
}

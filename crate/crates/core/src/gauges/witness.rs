use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_max_eigenvalue, operator_norm, ComplexMatrix};
use crate::transforms::Transformed;

/// Shared relative tolerance for the norm-equality predicates: two squared
/// norms count as equal when they differ by at most `EQ_TOL·‖T‖²`.
pub const EQ_TOL: f64 = 1e-7;

/// Finite-dimensional form of the norm-attainment criterion for
/// `‖M_λ(T)‖ = ‖T‖`: the supremum of `Re⟨Tx, T^D x⟩` over unit vectors is
/// attained, at a top eigenvector of `Re((T^D)* T)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EqualityWitness {
    /// `max_{‖x‖=1} Re⟨Tx, T^D x⟩`.
    pub value: f64,
    /// `value` equals `‖T‖²` within `EQ_TOL·‖T‖²`.
    pub attained: bool,
    pub norm_sq: f64,
    pub lambda_mean_norm: f64,
    /// `‖M_λ(T)‖² = ‖T‖²` within the same tolerance.
    pub norm_equal: bool,
}

impl EqualityWitness {
    pub fn agrees(&self) -> bool {
        self.attained == self.norm_equal
    }
}

pub fn equality_witness(t: &ComplexMatrix, lambda: f64) -> Result<EqualityWitness> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::InvalidParameter {
            name: "lambda",
            value: lambda,
            range: "(0, 1)",
        });
    }
    let tr = Transformed::new(t)?;
    let cross = &tr.duggal().adjoint() * t;
    let value = hermitian_max_eigenvalue(&cross);
    let norm = operator_norm(t);
    let norm_sq = norm * norm;
    let m = operator_norm(&tr.lambda_mean(lambda)?);
    let eps = EQ_TOL * norm_sq.max(crate::linalg::polar::ABS_FLOOR);
    Ok(EqualityWitness {
        value,
        attained: norm_sq - value <= eps,
        norm_sq,
        lambda_mean_norm: m,
        norm_equal: norm_sq - m * m <= eps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_operator_attains() {
        let d = ComplexMatrix::from_real_diag(&[2.0, -1.0, 0.5]);
        let w = equality_witness(&d, 0.3).unwrap();
        assert!((w.value - 4.0).abs() < 1e-13);
        assert!(w.attained && w.norm_equal);
    }

    #[test]
    fn jordan_block_does_not() {
        let j = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]);
        let w = equality_witness(&j, 0.5).unwrap();
        assert_eq!(w.value, 0.0);
        assert!((w.lambda_mean_norm - 0.5).abs() < 1e-15);
        assert!(!w.attained && !w.norm_equal && w.agrees());
    }

    #[test]
    fn endpoints_rejected() {
        let j = ComplexMatrix::identity(2);
        assert!(equality_witness(&j, 0.0).is_err());
        assert!(equality_witness(&j, 1.0).is_err());
    }
}

use thiserror::Error;

/// Errors produced by the linear-algebra kernel, the transforms and the gauges.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: ||A - A*|| = {asymmetry:.3e} exceeds {bound:.3e}")]
    NotHermitian { asymmetry: f64, bound: f64 },

    #[error("matrix is not positive semidefinite: minimum eigenvalue {min_eigenvalue:.3e}")]
    NotPsd { min_eigenvalue: f64 },

    #[error("{routine} did not converge after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence {
        routine: &'static str,
        iterations: usize,
        residual: f64,
    },

    /// General eigenvalue iteration stalled; the spectral radius is still
    /// enclosed by trace and Gelfand bounds.
    #[error("QR iteration did not converge; spectral radius lies in [{lo:.6e}, {hi:.6e}]")]
    SpectrumNoConvergence { lo: f64, hi: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("parameter {name} = {value} outside {range}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    /// The bracket `[lo, hi]` reached so far is still certified, only wider
    /// than requested.
    #[error("evaluation budget of {budget} exhausted with bracket [{lo:.9e}, {hi:.9e}]")]
    BudgetExceeded { budget: usize, lo: f64, hi: f64 },

    #[error("weight index {index} outside the available window of length {len}")]
    IndexOutOfWindow { index: usize, len: usize },

    #[error("invalid weight sequence: {0}")]
    InvalidWeights(String),

    #[error("malformed matrix data: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_unit_interval(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            range: "[0, 1]",
        })
    }
}

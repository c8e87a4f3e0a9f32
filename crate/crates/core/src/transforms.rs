//! Transforms built from the canonical polar decomposition `T = U|T|`:
//! Duggal `|T|U`, Aluthge `|T|^{1/2} U |T|^{1/2}`, the λ-mean
//! `λT + (1−λ)T^D` and the generalized mean.

use serde::{Deserialize, Serialize};

use crate::error::{check_unit_interval, Error, Result};
use crate::linalg::{polar_decompose, ComplexMatrix, PolarParts};

/// Parameters shared by the transform entry points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransformParams {
    pub lambda: f64,
    /// Generalized-mean exponent in `[0, 1/2]`.
    pub t: f64,
    pub iterations: usize,
}

impl Default for TransformParams {
    fn default() -> Self {
        Self {
            lambda: 0.5,
            t: 0.5,
            iterations: 1,
        }
    }
}

impl TransformParams {
    pub fn new(lambda: f64, t: f64, iterations: usize) -> Result<Self> {
        let p = Self {
            lambda,
            t,
            iterations,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        check_unit_interval("lambda", self.lambda)?;
        check_generalized_exponent(self.t)
    }
}

fn check_generalized_exponent(t: f64) -> Result<()> {
    if (0.0..=0.5).contains(&t) {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "t",
            value: t,
            range: "[0, 1/2]",
        })
    }
}

/// An operator together with its polar parts and Duggal transform, so that
/// several transforms of the same operator share one decomposition.
#[derive(Debug, Clone)]
pub struct Transformed {
    t: ComplexMatrix,
    polar: PolarParts,
    duggal: ComplexMatrix,
}

impl Transformed {
    pub fn new(t: &ComplexMatrix) -> Result<Self> {
        Self::with_rank_tol(t, 0.0)
    }

    /// Singular values at or below `rank_tol` count as zero (0 selects the
    /// default threshold).
    pub fn with_rank_tol(t: &ComplexMatrix, rank_tol: f64) -> Result<Self> {
        let polar = polar_decompose(t, rank_tol)?;
        let duggal = &polar.p * &polar.u;
        Ok(Self {
            t: t.clone(),
            polar,
            duggal,
        })
    }

    pub fn operator(&self) -> &ComplexMatrix {
        &self.t
    }

    pub fn polar(&self) -> &PolarParts {
        &self.polar
    }

    /// True when `|T|` has a nontrivial kernel, i.e. `|T|^0` is a proper
    /// projection rather than the identity.
    pub fn is_singular(&self) -> bool {
        self.polar.rank() < self.t.dim()
    }

    pub fn duggal(&self) -> &ComplexMatrix {
        &self.duggal
    }

    pub fn aluthge(&self) -> ComplexMatrix {
        let half = self.polar.abs_power(0.5);
        &(&half * &self.polar.u) * &half
    }

    /// `λT + (1−λ)T^D`; the endpoints return `T` and `T^D` unchanged.
    pub fn lambda_mean(&self, lambda: f64) -> Result<ComplexMatrix> {
        check_unit_interval("lambda", lambda)?;
        Ok(if lambda == 1.0 {
            self.t.clone()
        } else if lambda == 0.0 {
            self.duggal.clone()
        } else {
            ComplexMatrix::lin_comb(lambda, &self.t, 1.0 - lambda, &self.duggal)
        })
    }

    pub fn mean(&self) -> ComplexMatrix {
        ComplexMatrix::lin_comb(0.5, &self.t, 0.5, &self.duggal)
    }

    /// `½(|T|^s U |T|^{1−s} + |T|^{1−s} U |T|^s)` for `s ∈ [0, 1/2]`, with
    /// `|T|^0` the range projection of `|T|`.
    pub fn generalized_mean(&self, s: f64) -> Result<ComplexMatrix> {
        check_generalized_exponent(s)?;
        let u = &self.polar.u;
        let a = self.polar.abs_power(s);
        let b = self.polar.abs_power(1.0 - s);
        let left = &(&a * u) * &b;
        let right = &(&b * u) * &a;
        Ok(ComplexMatrix::lin_comb(0.5, &left, 0.5, &right))
    }

    /// `λ²|T|² + (1−λ)²|T^D|²`.
    pub fn q_lambda(&self, lambda: f64) -> Result<ComplexMatrix> {
        check_unit_interval("lambda", lambda)?;
        let abs_sq = &self.polar.p * &self.polar.p;
        let duggal_sq = &self.duggal.adjoint() * &self.duggal;
        let q = ComplexMatrix::lin_comb(
            lambda * lambda,
            &abs_sq,
            (1.0 - lambda) * (1.0 - lambda),
            &duggal_sq,
        );
        // Symmetrise away rounding so downstream Hermitian solvers accept it.
        Ok(q.real_part())
    }
}

pub fn duggal(t: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(Transformed::new(t)?.duggal)
}

pub fn aluthge(t: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(Transformed::new(t)?.aluthge())
}

pub fn mean(t: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(Transformed::new(t)?.mean())
}

pub fn lambda_mean(t: &ComplexMatrix, lambda: f64) -> Result<ComplexMatrix> {
    check_unit_interval("lambda", lambda)?;
    Transformed::new(t)?.lambda_mean(lambda)
}

pub fn generalized_mean(t: &ComplexMatrix, s: f64) -> Result<ComplexMatrix> {
    check_generalized_exponent(s)?;
    Transformed::new(t)?.generalized_mean(s)
}

pub fn q_lambda(t: &ComplexMatrix, lambda: f64) -> Result<ComplexMatrix> {
    check_unit_interval("lambda", lambda)?;
    Transformed::new(t)?.q_lambda(lambda)
}

/// `M_λ^{(n)}(T)`: `n` successive λ-mean transforms, each with a fresh polar
/// decomposition of the previous output.
pub fn iterate_lambda_mean(t: &ComplexMatrix, lambda: f64, n: usize) -> Result<ComplexMatrix> {
    iterate_lambda_mean_with_rank_tol(t, lambda, n, 0.0)
}

/// As [`iterate_lambda_mean`] with a fixed rank threshold at every step.
/// Where the rank drops the transform is discontinuous, so rounding noise
/// just above the default threshold can change the result; a threshold
/// above the noise floor makes iterates of nearby inputs comparable.
pub fn iterate_lambda_mean_with_rank_tol(
    t: &ComplexMatrix,
    lambda: f64,
    n: usize,
    rank_tol: f64,
) -> Result<ComplexMatrix> {
    check_unit_interval("lambda", lambda)?;
    let mut cur = t.clone();
    for _ in 0..n {
        cur = Transformed::with_rank_tol(&cur, rank_tol)?.lambda_mean(lambda)?;
    }
    Ok(cur)
}

/// Applies the transform selected by name; used by the command-line front end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransformKind {
    Duggal,
    Aluthge,
    Mean,
    LambdaMean,
    Generalized,
}

pub fn apply(t: &ComplexMatrix, kind: TransformKind, params: &TransformParams) -> Result<ComplexMatrix> {
    params.validate()?;
    match kind {
        TransformKind::LambdaMean => iterate_lambda_mean(t, params.lambda, params.iterations),
        _ => {
            let mut cur = t.clone();
            for _ in 0..params.iterations {
                let tr = Transformed::new(&cur)?;
                cur = match kind {
                    TransformKind::Duggal => tr.duggal,
                    TransformKind::Aluthge => tr.aluthge(),
                    TransformKind::Mean => tr.mean(),
                    TransformKind::Generalized => tr.generalized_mean(params.t)?,
                    TransformKind::LambdaMean => unreachable!(),
                };
            }
            Ok(cur)
        }
    }
}

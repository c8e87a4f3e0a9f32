//! Canonical polar decomposition `T = U|T|` with `N(U) = N(T)`, and
//! fractional powers of positive semidefinite matrices.

use super::jacobi::hermitian_eig;
use super::matrix::ComplexMatrix;
use super::svd::{svd, Svd};
use crate::error::{check_unit_interval, Error, Result};

/// Relative tolerance for the Hermitian / PSD preconditions of
/// [`fractional_power`].
pub const PSD_TOL: f64 = 1e-10;

/// Absolute floor used wherever a tolerance is relative to a zero norm.
pub const ABS_FLOOR: f64 = 1e-14;

/// Default numerical-rank threshold `n·ε·σ_max`.
pub fn default_rank_tol(n: usize, sigma_max: f64) -> f64 {
    n as f64 * f64::EPSILON * sigma_max
}

#[derive(Debug, Clone)]
pub struct PolarParts {
    /// Partial isometry with the same kernel as `T`.
    pub u: ComplexMatrix,
    /// `|T| = (T*T)^{1/2}`.
    pub p: ComplexMatrix,
    /// Singular values at or below this were treated as zero.
    pub rank_tol: f64,
    svd: Svd,
}

impl PolarParts {
    /// Numerical rank: singular values above `rank_tol`.
    pub fn rank(&self) -> usize {
        self.svd.rank(self.rank_tol)
    }

    pub fn singulars(&self) -> &[f64] {
        &self.svd.singulars
    }

    pub fn svd(&self) -> &Svd {
        &self.svd
    }

    fn kept(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        let tol = self.rank_tol;
        self.svd
            .singulars
            .iter()
            .copied()
            .enumerate()
            .filter(move |&(_, s)| s > tol)
    }

    /// `|T|^s` built from the right singular vectors. `s = 0` gives the
    /// orthogonal projection onto the range of `|T|` (not the identity).
    pub fn abs_power(&self, s: f64) -> ComplexMatrix {
        let v = &self.svd.right;
        let n = v.dim();
        let kept: Vec<(usize, f64)> = self
            .kept()
            .map(|(k, sigma)| (k, if s == 0.0 { 1.0 } else { sigma.powf(s) }))
            .collect();
        ComplexMatrix::from_fn(n, |i, j| {
            kept.iter()
                .map(|&(k, f)| v[(i, k)] * v[(j, k)].conj() * f)
                .sum()
        })
    }

    /// `|T*| = U|T|U*`, from the left singular vectors.
    pub fn abs_adjoint(&self) -> ComplexMatrix {
        let w = &self.svd.left;
        let n = w.dim();
        let kept: Vec<(usize, f64)> = self.kept().collect();
        ComplexMatrix::from_fn(n, |i, j| {
            kept.iter()
                .map(|&(k, sigma)| w[(i, k)] * w[(j, k)].conj() * sigma)
                .sum()
        })
    }

    /// `U|T|`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        &self.u * &self.p
    }
}

/// Canonical polar decomposition. `rank_tol = 0` selects
/// [`default_rank_tol`].
pub fn polar_decompose(t: &ComplexMatrix, rank_tol: f64) -> Result<PolarParts> {
    if !(rank_tol >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "rank_tol",
            value: rank_tol,
            range: "[0, inf)",
        });
    }
    let n = t.dim();
    let s = svd(t)?;
    let tol = if rank_tol == 0.0 {
        default_rank_tol(n, s.max_singular())
    } else {
        rank_tol
    };
    let kept: Vec<(usize, f64)> = s
        .singulars
        .iter()
        .copied()
        .enumerate()
        .filter(|&(_, sigma)| sigma > tol)
        .collect();
    let (l, r) = (&s.left, &s.right);
    let u = ComplexMatrix::from_fn(n, |i, j| {
        kept.iter().map(|&(k, _)| l[(i, k)] * r[(j, k)].conj()).sum()
    });
    let p = ComplexMatrix::from_fn(n, |i, j| {
        kept.iter()
            .map(|&(k, sigma)| r[(i, k)] * r[(j, k)].conj() * sigma)
            .sum()
    });
    Ok(PolarParts {
        u,
        p,
        rank_tol: tol,
        svd: s,
    })
}

/// `p^t` for positive semidefinite `p` and `t ∈ [0, 1]`.
///
/// Eigenvalues at or below `n·ε·‖p‖` are treated as zero for every `t`, so
/// `t = 0` yields the range projection.
pub fn fractional_power(p: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    check_unit_interval("t", t)?;
    let eig = hermitian_eig(p, PSD_TOL)?;
    let scale = eig.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if eig.min() < -PSD_TOL * scale.max(ABS_FLOOR) {
        return Err(Error::NotPsd {
            min_eigenvalue: eig.min(),
        });
    }
    let zero = default_rank_tol(p.dim(), scale);
    Ok(eig.map_values(|x| {
        if x <= zero {
            0.0
        } else if t == 0.0 {
            1.0
        } else {
            x.powf(t)
        }
    }))
}

/// Operator (spectral) norm `σ_max`.
pub fn operator_norm(t: &ComplexMatrix) -> f64 {
    let gram = &t.adjoint() * t;
    super::tridiag::hermitian_max_eigenvalue(&gram).max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::C64;

    fn t36() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 1.0]])
    }

    #[test]
    fn column_pattern_polar_parts() {
        let pp = polar_decompose(&t36(), 0.0).unwrap();
        let h = 0.5f64.sqrt();
        assert!(pp.u.approx_eq(&ComplexMatrix::from_real_rows(&[[0.0, h], [0.0, h]]), 1e-15));
        let sq = 2f64.sqrt();
        assert!(pp.p.approx_eq(&ComplexMatrix::from_real_diag(&[0.0, sq]), 1e-15));
        assert_eq!(pp.rank(), 1);
    }

    #[test]
    fn jordan_block_polar_parts() {
        let j = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]);
        let pp = polar_decompose(&j, 0.0).unwrap();
        assert!(pp.p.approx_eq(&ComplexMatrix::from_real_diag(&[0.0, 1.0]), 1e-15));
        assert!(pp.u.approx_eq(&j, 1e-15));
        assert!(pp.reconstruct().approx_eq(&j, 1e-15));
        // Kernel of U is the kernel of T: e_0.
        let ue0 = pp.u.apply(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        assert!(ue0.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn identity_polar() {
        let pp = polar_decompose(&ComplexMatrix::identity(3), 0.0).unwrap();
        assert!(pp.u.approx_eq(&ComplexMatrix::identity(3), 1e-15));
        assert!(pp.p.approx_eq(&ComplexMatrix::identity(3), 1e-15));
    }

    #[test]
    fn abs_adjoint_matches_conjugation() {
        let pp = polar_decompose(&t36(), 0.0).unwrap();
        let via_u = &(&pp.u * &pp.p) * &pp.u.adjoint();
        assert!(pp.abs_adjoint().approx_eq(&via_u, 1e-15));
        let h = 0.5f64.sqrt();
        assert!(pp
            .abs_adjoint()
            .approx_eq(&ComplexMatrix::from_real_rows(&[[h, h], [h, h]]), 1e-15));
    }

    #[test]
    fn fractional_power_endpoints() {
        let d = ComplexMatrix::from_real_diag(&[4.0, 9.0]);
        let half = fractional_power(&d, 0.5).unwrap();
        assert!(half.approx_eq(&ComplexMatrix::from_real_diag(&[2.0, 3.0]), 1e-14));
        assert!(fractional_power(&d, 1.0).unwrap().approx_eq(&d, 1e-14));
        let sing = ComplexMatrix::from_real_diag(&[0.0, 5.0]);
        let proj = fractional_power(&sing, 0.0).unwrap();
        assert!(proj.approx_eq(&ComplexMatrix::from_real_diag(&[0.0, 1.0]), 1e-15));
    }

    #[test]
    fn fractional_power_rejects_indefinite() {
        let d = ComplexMatrix::from_real_diag(&[1.0, -1.0]);
        assert!(matches!(fractional_power(&d, 0.5), Err(Error::NotPsd { .. })));
        assert!(matches!(
            fractional_power(&d, 1.5),
            Err(Error::InvalidParameter { .. })
        ));
    }

    #[test]
    fn norm_of_column_pattern() {
        assert!((operator_norm(&t36()) - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(operator_norm(&ComplexMatrix::zeros(2)), 0.0);
    }
}

//! One-sided (Hestenes) Jacobi SVD.
//!
//! Columns of a working copy are rotated pairwise until mutually orthogonal;
//! their norms are the singular values. Exactly zero columns stay exactly
//! zero, so structurally rank-deficient inputs get exact zero singular values.

use super::jacobi::PlaneRotation;
use super::matrix::{inner, vec_norm, ComplexMatrix, C64};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 80;

/// `t = left · diag(singulars) · right*` with singulars descending.
#[derive(Debug, Clone)]
pub struct Svd {
    pub left: ComplexMatrix,
    pub singulars: Vec<f64>,
    pub right: ComplexMatrix,
}

impl Svd {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.singulars.len();
        ComplexMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| self.left[(i, k)] * self.right[(j, k)].conj() * self.singulars[k])
                .sum()
        })
    }

    pub fn max_singular(&self) -> f64 {
        self.singulars[0]
    }

    /// Number of singular values strictly above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        self.singulars.iter().filter(|&&s| s > tol).count()
    }
}

pub fn svd(t: &ComplexMatrix) -> Result<Svd> {
    let n = t.dim();
    let mut w = t.clone();
    let mut v = ComplexMatrix::identity(n);

    let mut converged = n <= 1;
    let mut worst = 0.0;
    // Columns below this norm are null to working precision; rotating them
    // against each other only chases underflow.
    let negligible = f64::EPSILON * f64::EPSILON * t.frobenius_norm();
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        worst = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, C64::new(0.0, 0.0));
                for i in 0..n {
                    let (a, b) = (w[(i, p)], w[(i, q)]);
                    alpha += a.norm_sqr();
                    beta += b.norm_sqr();
                    gamma += a.conj() * b;
                }
                let g = gamma.norm();
                let (sa, sb) = (alpha.sqrt(), beta.sqrt());
                if g == 0.0 || sa.min(sb) <= negligible {
                    continue;
                }
                let rel = g / sa / sb;
                worst = worst.max(rel);
                if rel <= 4.0 * f64::EPSILON {
                    continue;
                }
                if let Some(rot) = PlaneRotation::for_block(alpha, beta, gamma) {
                    rot.apply_columns(&mut w, p, q);
                    rot.apply_columns(&mut v, p, q);
                    rotated = true;
                }
            }
        }
        if !rotated {
            converged = true;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            routine: "svd",
            iterations: MAX_SWEEPS,
            residual: worst,
        });
    }

    let norms: Vec<f64> = (0..n).map(|j| vec_norm(&w.column(j))).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| norms[b].total_cmp(&norms[a]));
    let singulars: Vec<f64> = order.iter().map(|&k| norms[k]).collect();
    let right = ComplexMatrix::from_fn(n, |i, j| v[(i, order[j])]);

    // Left vectors: normalised columns where the column carries signal, then
    // an orthonormal completion for the (numerically) null part.
    let smax = singulars.first().copied().unwrap_or(0.0);
    let floor = n as f64 * f64::EPSILON * smax;
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    for (j, &k) in order.iter().enumerate() {
        if singulars[j] > floor && singulars[j] > 0.0 {
            let s = singulars[j];
            cols.push(w.column(k).iter().map(|z| z / s).collect());
        }
    }
    complete_basis(&mut cols, n);
    let mut left = ComplexMatrix::zeros(n);
    for (j, c) in cols.iter().enumerate() {
        left.set_column(j, c);
    }
    Ok(Svd {
        left,
        singulars,
        right,
    })
}

/// Extends orthonormal `cols` to a basis of C^n by Gram-Schmidt on the
/// standard basis vectors, choosing the best-conditioned candidate each time.
pub(crate) fn complete_basis(cols: &mut Vec<Vec<C64>>, n: usize) {
    while cols.len() < n {
        let mut best: Option<(f64, Vec<C64>)> = None;
        for k in 0..n {
            let mut x = vec![C64::new(0.0, 0.0); n];
            x[k] = C64::new(1.0, 0.0);
            for _ in 0..2 {
                for c in cols.iter() {
                    let proj = inner(&x, c);
                    for (xi, ci) in x.iter_mut().zip(c) {
                        *xi -= ci * proj;
                    }
                }
            }
            let nx = vec_norm(&x);
            if best.as_ref().is_none_or(|(b, _)| nx > *b) {
                best = Some((nx, x));
            }
        }
        let (nx, x) = best.expect("n > 0");
        cols.push(x.into_iter().map(|z| z / nx).collect());
    }
}

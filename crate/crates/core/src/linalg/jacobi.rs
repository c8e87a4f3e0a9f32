//! Cyclic complex Jacobi eigensolver for Hermitian matrices.
//!
//! The same plane rotation drives the one-sided Jacobi SVD in `svd.rs`, which
//! applies it to column Gram blocks instead of matrix entries.

use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 60;

/// Off-diagonal entries below `SKIP_RATIO * ||A||_F` are treated as converged.
const SKIP_RATIO: f64 = 1e-3 * f64::EPSILON;

/// Eigendecomposition `A = V diag(values) V*` of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub vectors: ComplexMatrix,
}

impl HermitianEig {
    /// `V f(Λ) V*` for a real function applied to the eigenvalues.
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let fv: Vec<f64> = self.values.iter().map(|&x| f(x)).collect();
        let v = &self.vectors;
        ComplexMatrix::from_fn(n, |i, j| {
            (0..n)
                .filter(|&k| fv[k] != 0.0)
                .map(|k| v[(i, k)] * v[(j, k)].conj() * fv[k])
                .sum()
        })
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_values(|x| x)
    }

    /// `||A V - V Λ||_F`.
    pub fn residual(&self, a: &ComplexMatrix) -> f64 {
        let av = a * &self.vectors;
        let n = self.values.len();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (av[(i, j)] - self.vectors[(i, j)] * self.values[j]).norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn max(&self) -> f64 {
        *self.values.last().expect("empty eigendecomposition")
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }
}

/// Plane rotation `G = [[c, s], [-s·phase, c·phase]]` that diagonalises the
/// Hermitian 2x2 block `[[a, b], [conj(b), d]]` via `G* B G`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PlaneRotation {
    pub c: f64,
    pub s: f64,
    /// `e^{-i arg b}`.
    pub phase: C64,
    pub t: f64,
}

impl PlaneRotation {
    pub fn for_block(a: f64, d: f64, b: C64) -> Option<Self> {
        let mag = b.norm();
        if mag == 0.0 {
            return None;
        }
        let phase = (b / mag).conj();
        let zeta = (d - a) / (2.0 * mag);
        let t = if zeta >= 0.0 {
            1.0 / (zeta + zeta.hypot(1.0))
        } else {
            -1.0 / (-zeta + zeta.hypot(1.0))
        };
        let c = 1.0 / t.hypot(1.0);
        Some(Self {
            c,
            s: t * c,
            phase,
            t,
        })
    }

    /// `[x_p, x_q] <- [x_p, x_q] G` on two columns of `m`.
    pub fn apply_columns(&self, m: &mut ComplexMatrix, p: usize, q: usize) {
        let (c, s, ph) = (self.c, self.s, self.phase);
        for i in 0..m.dim() {
            let xp = m[(i, p)];
            let xq = m[(i, q)];
            m[(i, p)] = xp * c - xq * (ph * s);
            m[(i, q)] = xp * s + xq * (ph * c);
        }
    }

    /// `rows p, q <- G* [row_p; row_q]`.
    fn apply_rows(&self, m: &mut ComplexMatrix, p: usize, q: usize) {
        let (c, s, phc) = (self.c, self.s, self.phase.conj());
        for j in 0..m.dim() {
            let rp = m[(p, j)];
            let rq = m[(q, j)];
            m[(p, j)] = rp * c - rq * (phc * s);
            m[(q, j)] = rp * s + rq * (phc * c);
        }
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// The input must satisfy `||A - A*||_F <= tol·||A||_F`; its Hermitian part is
/// what gets diagonalised. Eigenvalues come back ascending and the residual
/// `||AV - VΛ||_F` stays within a small multiple of `n·ε·||A||_F`.
pub fn hermitian_eig(a: &ComplexMatrix, tol: f64) -> Result<HermitianEig> {
    let n = a.dim();
    let scale = a.frobenius_norm();
    let asymmetry = (a - &a.adjoint()).frobenius_norm();
    let bound = tol * scale;
    if asymmetry > bound {
        return Err(Error::NotHermitian { asymmetry, bound });
    }
    let mut work = a.real_part();
    let mut vectors = ComplexMatrix::identity(n);
    let skip = SKIP_RATIO * scale;

    let mut converged = n <= 1;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let b = work[(p, q)];
                if b.norm() <= skip {
                    continue;
                }
                let (ap, aq) = (work[(p, p)].re, work[(q, q)].re);
                let Some(rot) = PlaneRotation::for_block(ap, aq, b) else {
                    continue;
                };
                rot.apply_columns(&mut work, p, q);
                rot.apply_rows(&mut work, p, q);
                let mag = b.norm();
                work[(p, p)] = C64::new(ap - rot.t * mag, 0.0);
                work[(q, q)] = C64::new(aq + rot.t * mag, 0.0);
                work[(p, q)] = C64::new(0.0, 0.0);
                work[(q, p)] = C64::new(0.0, 0.0);
                rot.apply_columns(&mut vectors, p, q);
                rotated = true;
            }
        }
        if !rotated {
            converged = true;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            routine: "hermitian_eig",
            iterations: MAX_SWEEPS,
            residual: off_diagonal_norm(&work),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| work[(i, i)].re.total_cmp(&work[(j, j)].re));
    let values = order.iter().map(|&k| work[(k, k)].re).collect();
    let sorted = ComplexMatrix::from_fn(n, |i, j| vectors[(i, order[j])]);
    Ok(HermitianEig {
        values,
        vectors: sorted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_input_sorts_and_permutes() {
        let a = ComplexMatrix::from_real_diag(&[3.0, 1.0, 2.0]);
        let eig = hermitian_eig(&a, 1e-12).unwrap();
        assert_eq!(eig.values, vec![1.0, 2.0, 3.0]);
        // Columns are the identity columns e1, e2, e0.
        assert_eq!(eig.vectors[(1, 0)].re, 1.0);
        assert_eq!(eig.vectors[(2, 1)].re, 1.0);
        assert_eq!(eig.vectors[(0, 2)].re, 1.0);
    }

    #[test]
    fn pauli_x() {
        let a = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]);
        let eig = hermitian_eig(&a, 1e-12).unwrap();
        assert!((eig.values[0] + 1.0).abs() < 1e-15);
        assert!((eig.values[1] - 1.0).abs() < 1e-15);
        assert!(eig.residual(&a) < 1e-15);
    }

    #[test]
    fn complex_hermitian_2x2() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let a = ComplexMatrix::from_rows(&[
            vec![C64::new(2.0, 0.0), C64::new(0.0, 1.0)],
            vec![C64::new(0.0, -1.0), C64::new(2.0, 0.0)],
        ])
        .unwrap();
        let eig = hermitian_eig(&a, 1e-12).unwrap();
        assert!((eig.values[0] - 1.0).abs() < 1e-14);
        assert!((eig.values[1] - 3.0).abs() < 1e-14);
        assert!(eig.reconstruct().approx_eq(&a, 1e-14));
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]);
        assert!(matches!(hermitian_eig(&a, 1e-12), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn zero_and_scalar_matrices() {
        let z = hermitian_eig(&ComplexMatrix::zeros(3), 1e-12).unwrap();
        assert_eq!(z.values, vec![0.0; 3]);
        let one = hermitian_eig(&ComplexMatrix::from_real_diag(&[-4.0]), 1e-12).unwrap();
        assert_eq!(one.values, vec![-4.0]);
    }
}

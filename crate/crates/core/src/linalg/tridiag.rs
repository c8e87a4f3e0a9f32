//! Eigenvalues of Hermitian matrices via Householder tridiagonalisation and
//! Sturm-sequence bisection. No eigenvectors; this is the fast path behind
//! support functions and operator norms.

use super::matrix::{ComplexMatrix, C64};

/// Real symmetric tridiagonal matrix with diagonal `d` and off-diagonal `e`.
#[derive(Debug, Clone)]
pub struct Tridiagonal {
    pub d: Vec<f64>,
    pub e: Vec<f64>,
}

impl Tridiagonal {
    /// Reduces the Hermitian part of `a` to a unitarily similar tridiagonal form.
    ///
    /// Complex off-diagonal entries are replaced by their moduli, which is a
    /// diagonal unitary similarity and leaves the spectrum unchanged.
    pub fn from_hermitian(a: &ComplexMatrix) -> Self {
        let n = a.dim();
        let mut w = a.real_part();
        let mut v = vec![C64::new(0.0, 0.0); n];
        let mut p = vec![C64::new(0.0, 0.0); n];
        for k in 0..n.saturating_sub(2) {
            let norm_x = (k + 1..n).map(|i| w[(i, k)].norm_sqr()).sum::<f64>().sqrt();
            if norm_x == 0.0 {
                continue;
            }
            let x0 = w[(k + 1, k)];
            let alpha = if x0.norm() == 0.0 {
                C64::new(-norm_x, 0.0)
            } else {
                -(x0 / x0.norm()) * norm_x
            };
            for i in 0..n {
                v[i] = if i <= k { C64::new(0.0, 0.0) } else { w[(i, k)] };
            }
            v[k + 1] -= alpha;
            let vv: f64 = v[k + 1..].iter().map(|z| z.norm_sqr()).sum();
            if vv == 0.0 {
                continue;
            }
            let tau = 2.0 / vv;
            // p = tau A v restricted to the trailing block.
            for i in k..n {
                let mut acc = C64::new(0.0, 0.0);
                for j in k + 1..n {
                    acc += w[(i, j)] * v[j];
                }
                p[i] = acc * tau;
            }
            let vp: C64 = (k + 1..n).map(|i| v[i].conj() * p[i]).sum();
            let half = vp * (0.5 * tau);
            // q = p - (tau/2)(v*p) v;  A <- A - v q* - q v*.
            for i in k..n {
                p[i] -= v[i] * half;
            }
            for i in k..n {
                for j in k..n {
                    let upd = v[i] * p[j].conj() + p[i] * v[j].conj();
                    w[(i, j)] -= upd;
                }
            }
        }
        let d = (0..n).map(|i| w[(i, i)].re).collect();
        let e = (0..n.saturating_sub(1)).map(|i| w[(i + 1, i)].norm()).collect();
        Self { d, e }
    }

    pub fn dim(&self) -> usize {
        self.d.len()
    }

    /// Gershgorin interval containing every eigenvalue.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.e[i - 1] } else { 0.0 } + if i + 1 < n { self.e[i] } else { 0.0 };
            lo = lo.min(self.d[i] - r);
            hi = hi.max(self.d[i] + r);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        let n = self.dim();
        let pivmin = f64::MIN_POSITIVE.max(
            f64::EPSILON * self.e.iter().fold(0.0f64, |m, &v| m.max(v * v)),
        );
        let mut count = 0;
        let mut q = self.d[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..n {
            if q.abs() < pivmin {
                q = -pivmin;
            }
            q = self.d[i] - x - self.e[i - 1] * self.e[i - 1] / q;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `k`-th smallest eigenvalue (0-based) by bisection.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        let (mut lo, mut hi) = self.gershgorin();
        let scale = lo.abs().max(hi.abs());
        if scale == 0.0 {
            return 0.0;
        }
        // Widen slightly so the bracket is strict.
        lo -= 2.0 * f64::EPSILON * scale + f64::MIN_POSITIVE;
        hi += 2.0 * f64::EPSILON * scale + f64::MIN_POSITIVE;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi || hi - lo <= 2.0 * f64::EPSILON * scale {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        (0..self.dim()).map(|k| self.eigenvalue(k)).collect()
    }
}

/// Largest eigenvalue of the Hermitian part of `a`.
pub fn hermitian_max_eigenvalue(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    if n == 1 {
        return a[(0, 0)].re;
    }
    let t = Tridiagonal::from_hermitian(a);
    t.eigenvalue(n - 1)
}

/// Ascending eigenvalues of the Hermitian part of `a`.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Vec<f64> {
    Tridiagonal::from_hermitian(a).eigenvalues()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::jacobi::hermitian_eig;

    fn sample(n: usize, seed: u64) -> ComplexMatrix {
        // Small deterministic LCG so these unit tests stay dependency-free.
        let mut s = seed;
        let mut next = move || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let g = ComplexMatrix::from_fn(n, |_, _| C64::new(next(), next()));
        g.real_part()
    }

    #[test]
    fn matches_jacobi() {
        for (n, seed) in [(1, 1), (2, 2), (3, 3), (5, 4), (8, 5), (13, 6)] {
            let a = sample(n, seed);
            let fast = hermitian_eigenvalues(&a);
            let slow = hermitian_eig(&a, 1e-12).unwrap().values;
            for (x, y) in fast.iter().zip(&slow) {
                assert!((x - y).abs() < 1e-13, "n={n}: {x} vs {y}");
            }
            assert!((hermitian_max_eigenvalue(&a) - slow[n - 1]).abs() < 1e-13);
        }
    }

    #[test]
    fn repeated_eigenvalues() {
        let a = ComplexMatrix::from_real_diag(&[2.0, 2.0, -1.0, 2.0]);
        let ev = hermitian_eigenvalues(&a);
        assert!((ev[0] + 1.0).abs() < 1e-15);
        for x in &ev[1..] {
            assert!((x - 2.0).abs() < 1e-15);
        }
        assert_eq!(hermitian_max_eigenvalue(&ComplexMatrix::zeros(3)), 0.0);
    }
}

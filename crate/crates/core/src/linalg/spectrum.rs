//! Eigenvalues of general complex matrices: Householder reduction to upper
//! Hessenberg form followed by single-shift QR with Wilkinson shifts.

use super::matrix::{ComplexMatrix, C64};
use super::polar::operator_norm;
use super::svd::svd;
use crate::error::{Error, Result};

const ITERATIONS_PER_EIGENVALUE: usize = 60;

#[derive(Debug, Clone)]
pub struct SpectrumResult {
    pub eigenvalues: Vec<C64>,
    /// `max_k σ_min(T − μ_k I) / ‖T‖`: zero for exact eigenvalues.
    pub residual: f64,
}

impl SpectrumResult {
    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |m, z| m.max(z.norm()))
    }
}

/// Upper Hessenberg form `Q* A Q` (eigenvalues only, `Q` is discarded).
pub fn hessenberg(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.dim();
    let mut h = a.clone();
    let mut v = vec![C64::new(0.0, 0.0); n];
    for k in 0..n.saturating_sub(2) {
        let norm_x = (k + 1..n).map(|i| h[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        let tail = (k + 2..n).map(|i| h[(i, k)].norm_sqr()).sum::<f64>();
        if norm_x == 0.0 || tail == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let alpha = if x0.norm() == 0.0 {
            C64::new(-norm_x, 0.0)
        } else {
            -(x0 / x0.norm()) * norm_x
        };
        for i in 0..n {
            v[i] = if i <= k { C64::new(0.0, 0.0) } else { h[(i, k)] };
        }
        v[k + 1] -= alpha;
        let vv: f64 = v[k + 1..].iter().map(|z| z.norm_sqr()).sum();
        let tau = 2.0 / vv;
        for j in 0..n {
            let s: C64 = (k + 1..n).map(|i| v[i].conj() * h[(i, j)]).sum();
            let s = s * tau;
            for i in k + 1..n {
                let d = v[i] * s;
                h[(i, j)] -= d;
            }
        }
        for i in 0..n {
            let s: C64 = (k + 1..n).map(|j| h[(i, j)] * v[j]).sum();
            let s = s * tau;
            for j in k + 1..n {
                let d = s * v[j].conj();
                h[(i, j)] -= d;
            }
        }
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = C64::new(0.0, 0.0);
        }
    }
    h
}

fn is_triangular(a: &ComplexMatrix) -> bool {
    let n = a.dim();
    let zero = |i: usize, j: usize| a[(i, j)] == C64::new(0.0, 0.0);
    let upper = (0..n).all(|i| (0..i).all(|j| zero(i, j)));
    let lower = (0..n).all(|i| (i + 1..n).all(|j| zero(i, j)));
    upper || lower
}

/// Eigenvalue closest to `d` of `[[a, b], [c, d]]`.
fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mid = (a + d) * 0.5;
    let (m1, m2) = (mid + disc, mid - disc);
    if (m1 - d).norm() <= (m2 - d).norm() {
        m1
    } else {
        m2
    }
}

/// Givens pair `(c, s)` with `[[c, s], [-conj(s), c]] · [a; b] = [r; 0]`.
fn givens(a: C64, b: C64) -> (f64, C64) {
    let (na, nb) = (a.norm(), b.norm());
    if nb == 0.0 {
        return (1.0, C64::new(0.0, 0.0));
    }
    if na == 0.0 {
        return (0.0, b.conj() / nb);
    }
    let r = na.hypot(nb);
    (na / r, (a / na) * b.conj() / r)
}

/// Shifted QR on the Hessenberg matrix `h`. Returns `None` on stagnation.
fn hessenberg_qr(mut h: ComplexMatrix) -> Option<Vec<C64>> {
    let n = h.dim();
    let mut eig = vec![C64::new(0.0, 0.0); n];
    let mut hi = n as isize - 1;
    let mut iter = 0usize;
    let budget = ITERATIONS_PER_EIGENVALUE * n.max(1);
    let mut since_deflation = 0usize;
    while hi >= 0 {
        let hiu = hi as usize;
        // Locate the start of the active unreduced block.
        let mut lo = hiu;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let diag = h[(lo, lo)].norm() + h[(lo - 1, lo - 1)].norm();
            let scale = if diag == 0.0 { h.max_abs() } else { diag };
            if sub <= f64::EPSILON * scale {
                h[(lo, lo - 1)] = C64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hiu {
            eig[hiu] = h[(hiu, hiu)];
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        iter += 1;
        since_deflation += 1;
        if iter > budget {
            return None;
        }
        let mu = if since_deflation.is_multiple_of(11) {
            // Exceptional shift to break cycles.
            h[(hiu, hiu)] + C64::new(0.75, 0.4) * h[(hiu, hiu - 1)].norm()
        } else {
            wilkinson_shift(
                h[(hiu - 1, hiu - 1)],
                h[(hiu - 1, hiu)],
                h[(hiu, hiu - 1)],
                h[(hiu, hiu)],
            )
        };
        for k in lo..=hiu {
            h[(k, k)] -= mu;
        }
        let mut rots = Vec::with_capacity(hiu - lo);
        for k in lo..hiu {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for j in k..=hiu {
                let (x, y) = (h[(k, j)], h[(k + 1, j)]);
                h[(k, j)] = x * c + s * y;
                h[(k + 1, j)] = -s.conj() * x + y * c;
            }
            rots.push((c, s));
        }
        for (off, &(c, s)) in rots.iter().enumerate() {
            let k = lo + off;
            for i in lo..=(k + 1).min(hiu) {
                let (x, y) = (h[(i, k)], h[(i, k + 1)]);
                h[(i, k)] = x * c + s.conj() * y;
                h[(i, k + 1)] = -s * x + y * c;
            }
        }
        for k in lo..=hiu {
            h[(k, k)] += mu;
        }
    }
    Some(eig)
}

/// Bracket `[lo, hi]` for the spectral radius from traces of powers and the
/// Gelfand sequence `‖T^k‖^{1/k}`.
pub fn spectral_radius_bracket(t: &ComplexMatrix, max_power: u32) -> (f64, f64) {
    let n = t.dim() as f64;
    let mut lo: f64 = 0.0;
    let mut hi = f64::INFINITY;
    let mut pk = ComplexMatrix::identity(t.dim());
    for k in 1..=max_power {
        pk = &pk * t;
        let kf = k as f64;
        lo = lo.max((pk.trace().norm() / n).powf(1.0 / kf));
        hi = hi.min(operator_norm(&pk).powf(1.0 / kf));
    }
    (lo, hi)
}

/// All eigenvalues of `t`, with a backward-error style residual.
pub fn eigenvalues(t: &ComplexMatrix) -> Result<SpectrumResult> {
    let n = t.dim();
    if is_triangular(t) {
        return Ok(SpectrumResult {
            eigenvalues: t.diagonal(),
            residual: 0.0,
        });
    }
    let Some(eig) = hessenberg_qr(hessenberg(t)) else {
        let (lo, hi) = spectral_radius_bracket(t, 4 * n as u32);
        return Err(Error::SpectrumNoConvergence { lo, hi });
    };
    let norm = operator_norm(t);
    let mut residual: f64 = 0.0;
    if norm > 0.0 {
        for &mu in &eig {
            let s = svd(&t.shift_diagonal(mu))?;
            residual = residual.max(s.singulars[n - 1] / norm);
        }
    }
    Ok(SpectrumResult {
        eigenvalues: eig,
        residual,
    })
}

pub fn spectral_radius(t: &ComplexMatrix) -> Result<f64> {
    eigenvalues(t).map(|s| s.spectral_radius())
}

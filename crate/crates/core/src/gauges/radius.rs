use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{check_tol, rounding_slack, GaugeBracket, GaugeMethod};
use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eig, hermitian_max_eigenvalue, inner, operator_norm, svd, vec_norm, ComplexMatrix,
    C64,
};

/// Default cap on support-function evaluations per gauge.
pub const DEFAULT_BUDGET: usize = 4096;

const INITIAL_CELLS: usize = 32;

/// `λ_max(Re(e^{iθ} T))`, the support function of the numerical range.
pub fn support_function(t: &ComplexMatrix, theta: f64) -> f64 {
    hermitian_max_eigenvalue(&t.rotated_real_part(theta))
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    a: f64,
    b: f64,
    ha: f64,
    hb: f64,
    bound: f64,
}

impl PartialEq for Cell {
    fn eq(&self, o: &Self) -> bool {
        self.bound == o.bound
    }
}
impl Eq for Cell {}
impl PartialOrd for Cell {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Cell {
    fn cmp(&self, o: &Self) -> Ordering {
        self.bound.total_cmp(&o.bound)
    }
}

/// Upper bound for `max h` on `[a, b]` given `h(a) <= ha`, `h(b) <= hb`.
///
/// The numerical range lies in the wedge cut out by the two support lines,
/// so its support on the cell is at most that of the wedge vertex. The
/// Lipschitz bound `‖T‖` on `h'` gives a second, coarser estimate.
fn cell_bound(a: f64, b: f64, ha: f64, hb: f64, lip: f64) -> f64 {
    let half = 0.5 * (b - a);
    let lipschitz = 0.5 * (ha + hb) + lip * half;
    // Vertex in coordinates rotated by the cell midpoint.
    let x = 0.5 * (ha + hb) / half.cos();
    let y = 0.5 * (ha - hb) / half.sin();
    let phi = (-y).atan2(x);
    let polygon = if phi.abs() <= half {
        x.hypot(y)
    } else {
        ha.max(hb)
    };
    polygon.min(lipschitz)
}

/// Certified bracket for `ω(T) = sup_θ λ_max(Re(e^{iθ}T))`.
pub fn numerical_radius(t: &ComplexMatrix, tol: f64) -> Result<GaugeBracket> {
    numerical_radius_with_budget(t, tol, DEFAULT_BUDGET)
}

pub fn numerical_radius_with_budget(
    t: &ComplexMatrix,
    tol: f64,
    budget: usize,
) -> Result<GaugeBracket> {
    check_tol(tol)?;
    let slack = rounding_slack(t);
    if t.max_abs() == 0.0 {
        return Ok(closed(0.0, 0.0, 0));
    }
    // A matrix supported on one off-diagonal is unitarily similar to every
    // rotation e^{iφ}T, so its numerical range is a disk about 0.
    if matches!(t.single_band_offset(), Some(k) if k != 0) {
        let h = support_function(t, 0.0);
        return Ok(closed(h - slack, h + slack, 1));
    }
    // Near rank one: ω is a norm dominated by ‖·‖, so it moves by at most σ₂
    // when T is replaced by its leading rank-one part.
    let dec = svd(t)?;
    let s2 = dec.singulars.get(1).copied().unwrap_or(0.0);
    if s2 + 2.0 * slack <= 0.25 * tol {
        let s1 = dec.singulars[0];
        let x: Vec<C64> = dec.left.column(0).iter().map(|z| z * s1).collect();
        let w = rank_one_radius(&x, &dec.right.column(0))?;
        let err = s2 + 2.0 * slack;
        return Ok(closed(w - err, w + err, 0));
    }

    let lip = operator_norm(t) * (1.0 + 1e-12);
    let step = 2.0 * PI / INITIAL_CELLS as f64;
    let nodes: Vec<f64> = (0..=INITIAL_CELLS).map(|k| k as f64 * step).collect();
    let mut h: Vec<f64> = nodes[..INITIAL_CELLS]
        .iter()
        .map(|&th| support_function(t, th))
        .collect();
    h.push(h[0]);
    let mut evaluations = INITIAL_CELLS;
    // Sampled values may overshoot by rounding; `lo` stays certified.
    let mut lo = h.iter().copied().fold(f64::NEG_INFINITY, f64::max) - slack;

    let mut heap = BinaryHeap::with_capacity(2 * INITIAL_CELLS);
    for k in 0..INITIAL_CELLS {
        let (a, b) = (nodes[k], nodes[k + 1]);
        let (ha, hb) = (h[k] + slack, h[k + 1] + slack);
        heap.push(Cell {
            a,
            b,
            ha,
            hb,
            bound: cell_bound(a, b, ha, hb, lip),
        });
    }

    loop {
        let top = *heap.peek().expect("cells never run out");
        let hi = top.bound.max(lo);
        if hi - lo <= tol {
            return Ok(GaugeBracket {
                lo,
                hi,
                evaluations,
                method: GaugeMethod::GridRefine,
            });
        }
        if evaluations >= budget {
            return Err(Error::BudgetExceeded {
                budget,
                lo,
                hi,
            });
        }
        heap.pop();
        let m = 0.5 * (top.a + top.b);
        let hm = support_function(t, m);
        evaluations += 1;
        lo = lo.max(hm - slack);
        let hm = hm + slack;
        for (a, b, ha, hb) in [(top.a, m, top.ha, hm), (m, top.b, hm, top.hb)] {
            heap.push(Cell {
                a,
                b,
                ha,
                hb,
                bound: cell_bound(a, b, ha, hb, lip),
            });
        }
    }
}

fn closed(lo: f64, hi: f64, evaluations: usize) -> GaugeBracket {
    GaugeBracket {
        lo,
        hi,
        evaluations,
        method: GaugeMethod::ClosedForm,
    }
}

/// A boundary point of the numerical range in direction `theta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RangePoint {
    pub theta: f64,
    /// `⟨Tx, x⟩` for a unit top eigenvector `x` of `Re(e^{iθ}T)`.
    pub value: C64,
    /// `λ_max(Re(e^{iθ}T))`; equals `Re(e^{iθ}·value)`.
    pub support: f64,
}

/// `m` boundary points of `W(T)` on an equispaced θ-grid over `[0, 2π)`.
pub fn range_boundary(t: &ComplexMatrix, m: usize) -> Result<Vec<RangePoint>> {
    if m < 3 {
        return Err(Error::InvalidParameter {
            name: "m",
            value: m as f64,
            range: "[3, inf)",
        });
    }
    (0..m)
        .map(|k| {
            let theta = 2.0 * PI * k as f64 / m as f64;
            let eig = hermitian_eig(&t.rotated_real_part(theta), 1e-12)?;
            let x = eig.vectors.column(t.dim() - 1);
            let value = inner(&t.apply(&x), &x);
            Ok(RangePoint {
                theta,
                value,
                support: eig.max(),
            })
        })
        .collect()
}

/// `min_θ (h_b(θ) − h_a(θ))` over `grid` equispaced directions; nonnegative
/// (up to rounding) exactly when `W(a) ⊆ W(b)` as seen on the grid.
pub fn range_inclusion_margin(a: &ComplexMatrix, b: &ComplexMatrix, grid: usize) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: b.dim(),
            found: a.dim(),
        });
    }
    let grid = grid.max(1);
    Ok((0..grid)
        .map(|k| {
            let th = 2.0 * PI * k as f64 / grid as f64;
            support_function(b, th) - support_function(a, th)
        })
        .fold(f64::INFINITY, f64::min))
}

/// Closed-convex-set inclusion `W(a) ⊆ W(b)` tested through support
/// functions on `grid` directions, with tolerance `1e-10·max(‖a‖, ‖b‖)`.
pub fn range_inclusion(a: &ComplexMatrix, b: &ComplexMatrix, grid: usize) -> Result<bool> {
    let scale = operator_norm(a).max(operator_norm(b)).max(crate::linalg::polar::ABS_FLOOR);
    Ok(range_inclusion_margin(a, b, grid)? >= -1e-10 * scale)
}

/// `ω(x ⊗ y) = (|⟨x, y⟩| + ‖x‖‖y‖) / 2`.
pub fn rank_one_radius(x: &[C64], y: &[C64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    Ok(0.5 * (inner(x, y).norm() + vec_norm(x) * vec_norm(y)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn column_pattern() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 1.0]])
    }

    #[test]
    fn support_of_simple_matrices() {
        let d = ComplexMatrix::from_real_diag(&[1.0, -1.0]);
        assert!((support_function(&d, 0.0) - 1.0).abs() < 1e-15);
        let i = ComplexMatrix::identity(3);
        for th in [0.0, 0.7, 2.0] {
            assert!((support_function(&i, th) - f64::cos(th)).abs() < 1e-15);
        }
    }

    #[test]
    fn radius_of_column_pattern() {
        let b = numerical_radius(&column_pattern(), 1e-10).unwrap();
        let exact = (1.0 + 2f64.sqrt()) / 2.0;
        assert!(b.lo <= exact + 1e-15 && exact <= b.hi, "{b:?}");
        assert!(b.width() <= 1e-10);
        assert_eq!(b.method, GaugeMethod::ClosedForm);
    }

    #[test]
    fn radius_of_centred_ellipse() {
        // Foci ±1, minor semi-axis 1/2, so ω is the major semi-axis √5/2.
        let t = ComplexMatrix::from_real_rows(&[[1.0, 1.0], [0.0, -1.0]]);
        let b = numerical_radius(&t, 1e-10).unwrap();
        let exact = 5f64.sqrt() / 2.0;
        assert!(b.lo <= exact + 1e-15 && exact <= b.hi, "{b:?}");
        assert!(b.width() <= 1e-10);
        assert_eq!(b.method, GaugeMethod::GridRefine);
    }

    #[test]
    fn jordan_block_is_a_disk() {
        let j = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]);
        let b = numerical_radius(&j, 1e-12).unwrap();
        assert!(b.contains_value(0.5));
        assert_eq!(b.method, GaugeMethod::ClosedForm);
    }

    #[test]
    fn budget_is_enforced() {
        let t = ComplexMatrix::from_real_rows(&[[1.0, 1.0], [0.0, -1.0]]);
        let r = numerical_radius_with_budget(&t, 1e-14, 40);
        assert!(matches!(r, Err(Error::BudgetExceeded { budget: 40, .. })));
    }

    #[test]
    fn boundary_points_satisfy_support_identity() {
        let t = ComplexMatrix::from_fn(3, |i, j| C64::new((i + 2 * j) as f64 - 2.0, (i * j) as f64 * 0.3));
        for p in range_boundary(&t, 16).unwrap() {
            let rot = (C64::from_polar(1.0, p.theta) * p.value).re;
            assert!((rot - p.support).abs() < 1e-12);
        }
        let z = ComplexMatrix::identity(2).scale(C64::new(0.3, -0.2));
        for p in range_boundary(&z, 5).unwrap() {
            assert!((p.value - C64::new(0.3, -0.2)).norm() < 1e-15);
        }
    }

    #[test]
    fn inclusion_examples() {
        let i = ComplexMatrix::identity(2);
        assert!(!range_inclusion(&i.scale_real(2.0), &i, 64).unwrap());
        let inner = ComplexMatrix::from_real_diag(&[0.2, 0.8]);
        let outer = ComplexMatrix::from_real_diag(&[0.0, 1.0]);
        assert!(range_inclusion(&inner, &outer, 64).unwrap());
        assert!(!range_inclusion(&outer, &inner, 64).unwrap());
    }

    #[test]
    fn rank_one_closed_form() {
        let e1 = [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
        let e2 = [C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
        assert_eq!(rank_one_radius(&e1, &e1).unwrap(), 1.0);
        assert_eq!(rank_one_radius(&e1, &e2).unwrap(), 0.5);
        assert!(rank_one_radius(&e1, &e2[..1]).is_err());
    }

    impl GaugeBracket {
        fn contains_value(&self, x: f64) -> bool {
            self.lo <= x && x <= self.hi
        }
    }
}

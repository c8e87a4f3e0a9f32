use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use super::{check_tol, GaugeBracket, GaugeMethod};
use crate::error::{Error, Result};
use crate::linalg::{operator_norm, ComplexMatrix};
use crate::transforms::Transformed;

/// Cap on refined cells (three norm evaluations each).
pub const CROSS_BUDGET: usize = 20_000;

const INITIAL_CELLS: usize = 32;

#[derive(Debug, Clone, Copy)]
struct Cell {
    mid: f64,
    half: f64,
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

struct Pair<'a> {
    a: &'a ComplexMatrix,
    b: &'a ComplexMatrix,
    /// `‖ab‖ + ‖a*b*‖`, which bounds `‖P''‖` and twice `‖P'‖`.
    osc: f64,
    slack: f64,
}

impl Pair<'_> {
    fn product(&self, theta: f64) -> ComplexMatrix {
        &self.a.rotated_real_part(theta) * &self.b.rotated_real_part(theta)
    }

    /// `(value at mid, upper bound over [mid − half, mid + half])`.
    ///
    /// `P(θ) = Re(e^{iθ}a) Re(e^{iθ}b) = ¼(e^{2iθ}ab + ab* + a*b + e^{-2iθ}a*b*)`,
    /// so `‖P''‖ <= osc` and `‖P(m+φ)‖ <= ‖P(m) + φP'(m)‖ + osc·φ²/2`. The
    /// first term is convex in φ, hence maximal at an endpoint.
    fn cell(&self, mid: f64, half: f64) -> (f64, f64) {
        let p = self.product(mid);
        let ra = self.a.rotated_real_part(mid);
        let rb = self.b.rotated_real_part(mid);
        let da = self.a.rotated_real_part(mid + 0.5 * PI);
        let db = self.b.rotated_real_part(mid + 0.5 * PI);
        let dp = &(&da * &rb) + &(&ra * &db);
        let value = operator_norm(&p);
        let plus = operator_norm(&ComplexMatrix::lin_comb(1.0, &p, half, &dp));
        let minus = operator_norm(&ComplexMatrix::lin_comb(1.0, &p, -half, &dp));
        let second = plus.max(minus) + 0.5 * self.osc * half * half;
        let lipschitz = value + 0.5 * self.osc * half;
        (value, second.min(lipschitz) + self.slack)
    }
}

/// `sup_θ ‖Re(e^{iθ}a) Re(e^{iθ}b)‖` (period π) with a certified bracket.
pub fn cross_term_sup_pair(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    tol: f64,
    budget: usize,
) -> Result<GaugeBracket> {
    check_tol(tol)?;
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let (na, nb) = (operator_norm(a), operator_norm(b));
    let n = a.dim() as f64;
    let osc = operator_norm(&(a * b)) + operator_norm(&(&a.adjoint() * &b.adjoint()));
    let pair = Pair {
        a,
        b,
        osc,
        slack: 16.0 * n * f64::EPSILON * a.frobenius_norm() * b.frobenius_norm(),
    };
    if na * nb == 0.0 {
        return Ok(GaugeBracket {
            lo: 0.0,
            hi: 0.0,
            evaluations: 0,
            method: GaugeMethod::ClosedForm,
        });
    }
    // Both factors on the same single off-diagonal: a diagonal unitary turns
    // every rotation into θ = 0, so the product norm is constant.
    if let (Some(ka), Some(kb)) = (a.single_band_offset(), b.single_band_offset()) {
        if ka == kb && ka != 0 {
            let v = operator_norm(&pair.product(0.0));
            return Ok(GaugeBracket {
                lo: v - pair.slack,
                hi: v + pair.slack,
                evaluations: 1,
                method: GaugeMethod::ClosedForm,
            });
        }
    }

    let half0 = 0.5 * PI / INITIAL_CELLS as f64;
    let mut heap = BinaryHeap::new();
    let mut lo = 0.0f64;
    for k in 0..INITIAL_CELLS {
        let mid = (2 * k + 1) as f64 * half0;
        let (v, bound) = pair.cell(mid, half0);
        lo = lo.max(v - pair.slack);
        heap.push(Cell {
            mid,
            half: half0,
            bound,
        });
    }
    let mut cells = INITIAL_CELLS;
    loop {
        let top = *heap.peek().expect("cells never run out");
        let hi = top.bound.max(lo);
        if hi - lo <= tol {
            return Ok(GaugeBracket {
                lo,
                hi,
                evaluations: 3 * cells,
                method: GaugeMethod::GridRefine,
            });
        }
        if cells >= budget {
            return Err(Error::BudgetExceeded {
                budget,
                lo,
                hi,
            });
        }
        heap.pop();
        let half = 0.5 * top.half;
        for mid in [top.mid - half, top.mid + half] {
            let (v, bound) = pair.cell(mid, half);
            lo = lo.max(v - pair.slack);
            heap.push(Cell { mid, half, bound });
        }
        cells += 2;
    }
}

/// `sup_θ ‖Re(e^{iθ}T) Re(e^{iθ}T^D)‖` at tolerance `1e-9·‖T‖²`.
pub fn cross_term_sup(t: &ComplexMatrix) -> Result<GaugeBracket> {
    let tr = Transformed::new(t)?;
    let scale = operator_norm(t).powi(2).max(crate::linalg::polar::ABS_FLOOR);
    cross_term_sup_pair(t, tr.duggal(), 1e-9 * scale, CROSS_BUDGET)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn column_pattern_value() {
        let t = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 1.0]]);
        let b = cross_term_sup(&t).unwrap();
        let exact = 5f64.sqrt() / 2.0;
        assert!(b.lo <= exact + 1e-14 && exact <= b.hi, "{b:?}");
    }

    #[test]
    fn normal_diagonal_reaches_one() {
        let d = ComplexMatrix::from_real_diag(&[1.0, -1.0]);
        let b = cross_term_sup(&d).unwrap();
        assert!((b.mid() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn zero_operator() {
        let b = cross_term_sup(&ComplexMatrix::zeros(3)).unwrap();
        assert_eq!((b.lo, b.hi), (0.0, 0.0));
    }
}

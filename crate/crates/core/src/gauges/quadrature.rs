use std::cmp::Ordering;

use super::{check_tol, numerical_radius_with_budget, GaugeBracket, GaugeMethod, Interval};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::transforms::Transformed;

#[derive(Debug, Clone, Copy)]
struct Cell {
    a: f64,
    b: f64,
    fa: Interval,
    fm: Interval,
    fb: Interval,
}

impl Cell {
    /// Midpoint rule with the lower values: below the integral of a convex
    /// function.
    fn lower(&self) -> f64 {
        (self.b - self.a) * self.fm.lo
    }

    /// Trapezoid rule with the upper values: above the integral.
    fn upper(&self) -> f64 {
        0.5 * (self.b - self.a) * (self.fa.hi + self.fb.hi)
    }
}

/// Certified bracket for `∫_0^1 f` when `f` is convex and each call returns
/// an interval containing `f(s)`.
///
/// The starting partition is `{0, 1/2, 1}`, so the upper bound never exceeds
/// `(f(0) + f(1))/4 + f(1/2)/2` and the lower bound never falls below
/// `f(1/2)`. `max_cells` caps refinement.
pub fn convex_integral(
    mut f: impl FnMut(f64) -> Result<Interval>,
    tol: f64,
    max_cells: usize,
) -> Result<(Interval, usize)> {
    check_tol(tol)?;
    let f0 = f(0.0)?;
    let fq = f(0.25)?;
    let fh = f(0.5)?;
    let f3 = f(0.75)?;
    let f1 = f(1.0)?;
    let mut calls = 5;
    let mut cells = vec![
        Cell {
            a: 0.0,
            b: 0.5,
            fa: f0,
            fm: fq,
            fb: fh,
        },
        Cell {
            a: 0.5,
            b: 1.0,
            fa: fh,
            fm: f3,
            fb: f1,
        },
    ];
    loop {
        let lo: f64 = cells.iter().map(Cell::lower).sum();
        let hi: f64 = cells.iter().map(Cell::upper).sum();
        if hi - lo <= tol {
            return Ok((Interval::new(lo, hi.max(lo)), calls));
        }
        if cells.len() >= max_cells {
            return Err(Error::BudgetExceeded {
                budget: max_cells,
                lo,
                hi,
            });
        }
        let (worst, _) = cells
            .iter()
            .enumerate()
            .max_by(|x, y| {
                (x.1.upper() - x.1.lower())
                    .partial_cmp(&(y.1.upper() - y.1.lower()))
                    .unwrap_or(Ordering::Equal)
            })
            .expect("nonempty");
        let c = cells.swap_remove(worst);
        let m = 0.5 * (c.a + c.b);
        let left = f(0.5 * (c.a + m))?;
        let right = f(0.5 * (m + c.b))?;
        calls += 2;
        cells.push(Cell {
            a: c.a,
            b: m,
            fa: c.fa,
            fm: left,
            fb: c.fm,
        });
        cells.push(Cell {
            a: m,
            b: c.b,
            fa: c.fm,
            fm: right,
            fb: c.fb,
        });
    }
}

fn radius_interval(m: &ComplexMatrix, gauge_tol: f64, evals: &mut usize) -> Result<Interval> {
    let b = numerical_radius_with_budget(m, gauge_tol, 64 * super::DEFAULT_BUDGET)?;
    *evals += b.evaluations;
    Ok(b.interval())
}

/// `∫_0^1 ω(M_s(T)) ds`, bracket width at most `tol`.
pub fn radius_integral(t: &ComplexMatrix, tol: f64) -> Result<GaugeBracket> {
    check_tol(tol)?;
    radius_integral_with(&Transformed::new(t)?, tol, 0.1 * tol)
}

/// [`radius_integral`] with the tolerance of each inner radius evaluation
/// set separately, so a coarse quadrature can still use tight node values.
pub fn radius_integral_with(tr: &Transformed, tol: f64, gauge_tol: f64) -> Result<GaugeBracket> {
    check_tol(tol)?;
    check_tol(gauge_tol)?;
    let mut evals = 0;
    let (iv, _) = convex_integral(
        |s| radius_interval(&tr.lambda_mean(s)?, gauge_tol, &mut evals),
        tol,
        4096,
    )?;
    Ok(GaugeBracket {
        lo: iv.lo,
        hi: iv.hi,
        evaluations: evals,
        method: GaugeMethod::Quadrature,
    })
}

/// `2∫_0^1 ω(λsT + (1−λ)(1−s)T^D) ds`, the middle term of the λ-weighted
/// Hermite–Hadamard / Hammer–Bullen sandwich.
pub fn lambda_radius_integral(
    tr: &Transformed,
    lambda: f64,
    tol: f64,
    gauge_tol: f64,
) -> Result<GaugeBracket> {
    crate::error::check_unit_interval("lambda", lambda)?;
    let (t, d) = (tr.operator(), tr.duggal());
    let mut evals = 0;
    let (iv, _) = convex_integral(
        |s| {
            let m = ComplexMatrix::lin_comb(lambda * s, t, (1.0 - lambda) * (1.0 - s), d);
            radius_interval(&m, gauge_tol, &mut evals)
        },
        0.5 * tol,
        4096,
    )?;
    Ok(GaugeBracket {
        lo: 2.0 * iv.lo,
        hi: 2.0 * iv.hi,
        evaluations: evals,
        method: GaugeMethod::Quadrature,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convex_polynomial() {
        let (iv, _) = convex_integral(|s| Ok(Interval::point(s * s)), 1e-6, 10_000).unwrap();
        assert!(iv.contains(1.0 / 3.0));
        assert!(iv.width() <= 1e-6);
    }

    #[test]
    fn linear_integrand_is_exact() {
        let (iv, calls) = convex_integral(|s| Ok(Interval::point(2.0 + s)), 1e-12, 10).unwrap();
        assert_eq!(calls, 5);
        assert!((iv.mid() - 2.5).abs() < 1e-15);
    }

    #[test]
    fn column_pattern_integral() {
        let t = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 1.0]]);
        let b = radius_integral(&t, 1e-6).unwrap();
        // ½ + ¼(√2 + asinh 1)
        let exact = 0.5 + 0.25 * (2f64.sqrt() + 1f64.asinh());
        assert!(b.lo <= exact && exact <= b.hi, "{b:?}");
    }

    #[test]
    fn quasinormal_integrand_is_constant() {
        let d = ComplexMatrix::from_real_diag(&[1.0, 3.0]);
        let b = radius_integral(&d, 1e-8).unwrap();
        assert!((b.mid() - 3.0).abs() < 1e-8);
    }
}

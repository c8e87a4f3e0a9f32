//! Reproductions of the worked numerical examples for the λ-mean transform.

use mean_transform::classify::{
    lambda_mean_cs_criterion, lambda_mean_shift_hyponormal, shift_cs_criterion,
    shift_is_hyponormal,
};
use mean_transform::gauges::{
    cross_term_sup, numerical_radius, radius_integral_with, Interval,
};
use mean_transform::linalg::{eigenvalues, operator_norm, polar_decompose};
use mean_transform::shifts::{build_shift, lambda_mean_weights, WeightSequence};
use mean_transform::transforms::{lambda_mean, Transformed};
use mean_transform::{ComplexMatrix, Result, C64};
use serde::{Deserialize, Serialize};

/// Tolerances for the four-decimal values quoted with each example.
pub const NORM_TOL: f64 = 5e-4;
pub const RADIUS_TOL: f64 = 1e-3;
pub const CROSS_TOL: f64 = 1e-4;
pub const SPECTRUM_TOL: f64 = 1e-8;
/// Gauge tolerance used for the radius chain.
pub const EXAMPLE_GAUGE_TOL: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExampleEntry {
    pub group: String,
    pub name: String,
    pub anchor: String,
    pub computed: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExamplesReport {
    pub entries: Vec<ExampleEntry>,
    pub failures: usize,
    pub pass: bool,
}

impl ExamplesReport {
    pub fn group(&self, group: &str) -> impl Iterator<Item = &ExampleEntry> {
        let group = group.to_string();
        self.entries.iter().filter(move |e| e.group == group)
    }

    pub fn group_passes(&self, group: &str) -> bool {
        let mut any = false;
        for e in self.group(group) {
            any = true;
            if !e.pass {
                return false;
            }
        }
        any
    }

    pub fn get(&self, name: &str) -> Option<&ExampleEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

struct Builder {
    group: &'static str,
    entries: Vec<ExampleEntry>,
}

impl Builder {
    fn value(&mut self, name: &str, anchor: &str, computed: f64, expected: f64, tol: f64) {
        self.entries.push(ExampleEntry {
            group: self.group.into(),
            name: name.into(),
            anchor: anchor.into(),
            computed,
            expected,
            tolerance: tol,
            pass: (computed - expected).abs() <= tol,
        });
    }

    fn flag(&mut self, name: &str, anchor: &str, computed: bool, expected: bool) {
        self.entries.push(ExampleEntry {
            group: self.group.into(),
            name: name.into(),
            anchor: anchor.into(),
            computed: computed as u8 as f64,
            expected: expected as u8 as f64,
            tolerance: 0.0,
            pass: computed == expected,
        });
    }

    /// Strictly increasing chain; `computed` is the smallest consecutive gap.
    fn increasing(&mut self, name: &str, anchor: &str, chain: &[f64]) {
        let gap = chain
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min);
        self.entries.push(ExampleEntry {
            group: self.group.into(),
            name: name.into(),
            anchor: anchor.into(),
            computed: gap,
            expected: 0.0,
            tolerance: 0.0,
            pass: gap > 0.0,
        });
    }
}

/// `[[0, 1], [0, 1]]`, the running two-by-two example.
pub fn column_pattern() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 1.0]])
}

/// The four-by-four square-zero operator with weights 1 and 2.
pub fn square_zero_example() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 2.0],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
    ])
}

/// `{±√(λ−λ²), ±2√(λ−λ²)}`.
pub fn quoted_spectrum(lambda: f64) -> Vec<C64> {
    let r = (lambda - lambda * lambda).sqrt();
    [-2.0 * r, -r, r, 2.0 * r]
        .iter()
        .map(|&x| C64::new(x, 0.0))
        .collect()
}

/// Optimal matching distance between two small multisets (all permutations).
pub fn multiset_distance(a: &[C64], b: &[C64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    fn go(a: &[C64], b: &mut Vec<C64>, best: &mut f64, cur: f64) {
        if cur >= *best {
            return;
        }
        let Some((x, rest)) = a.split_first() else {
            *best = cur;
            return;
        };
        for k in 0..b.len() {
            let y = b.swap_remove(k);
            go(rest, b, best, cur.max((x - y).norm()));
            b.push(y);
            let last = b.len() - 1;
            b.swap(k, last);
        }
    }
    let mut best = f64::INFINITY;
    go(a, &mut b.to_vec(), &mut best, 0.0);
    best
}

#[allow(clippy::approx_constant)]
fn norm_chain(b: &mut Builder) -> Result<()> {
    let t = column_pattern();
    let tr = Transformed::new(&t)?;
    let d = tr.duggal();
    let abs_t = tr.polar().p.clone();
    let abs_t_adj = tr.polar().abs_adjoint();
    let pd = polar_decompose(d, 0.0)?;
    let mixed = 0.25
        * (operator_norm(&(&abs_t + &pd.p)) + operator_norm(&(&abs_t_adj + &pd.abs_adjoint())));
    let mean = operator_norm(&tr.mean());
    let half = 0.5 * (operator_norm(&t) + operator_norm(d));
    let norm = operator_norm(&t);
    b.value("mean-norm", "‖T̂‖", mean, 1.1180, NORM_TOL);
    b.value("mixed-schwarz-bound", "¼(‖|T|+|T^D|‖ + ‖|T*|+|(T^D)*|‖)", mixed, 1.1218, NORM_TOL);
    b.value("triangle-bound", "½(‖T‖+‖T^D‖)", half, 1.2071, NORM_TOL);
    b.value("norm", "‖T‖", norm, 1.4142, NORM_TOL);
    b.increasing("norm-chain-order", "strict ordering of the norm chain", &[mean, mixed, half, norm]);
    Ok(())
}

struct RadiusChain {
    mean: Interval,
    integral: Interval,
    bullen: Interval,
    half: Interval,
    omega: Interval,
    omega_d: Interval,
}

fn radius_chain() -> Result<RadiusChain> {
    let t = column_pattern();
    let tr = Transformed::new(&t)?;
    let g = EXAMPLE_GAUGE_TOL;
    // Inner radii stay tight so the quadrature brackets are not blurred.
    let inner = 1e-10;
    let omega = numerical_radius(&t, inner)?.interval();
    let omega_d = numerical_radius(tr.duggal(), inner)?.interval();
    let mean = numerical_radius(&tr.mean(), inner)?.interval();
    let integral = radius_integral_with(&tr, g, inner)?.interval();
    Ok(RadiusChain {
        mean,
        integral,
        bullen: (omega + omega_d + mean.scale(2.0)).scale(0.25),
        half: (omega + omega_d).scale(0.5),
        omega,
        omega_d,
    })
}

fn radius_examples(b: &mut Builder, c: &RadiusChain) {
    b.value("mean-radius", "ω(T̂)", c.mean.mid(), 1.0590, RADIUS_TOL);
    b.value("radius-integral", "∫₀¹ ω(M_t(T)) dt", c.integral.mid(), 1.0739, RADIUS_TOL);
    b.value("bullen-bound", "¼(ω(T)+ω(T^D)+2ω(T̂))", c.bullen.mid(), 1.0812, RADIUS_TOL);
    b.value("radius-half-sum", "½(ω(T)+ω(T^D))", c.half.mid(), 1.1035, RADIUS_TOL);
    b.value("radius", "ω(T)", c.omega.mid(), 1.2071, RADIUS_TOL);
    let chain = [c.mean.mid(), c.integral.mid(), c.bullen.mid(), c.half.mid(), c.omega.mid()];
    b.increasing("radius-chain-order", "strict ordering of the radius chain", &chain);
}

fn cross_examples(b: &mut Builder, c: &RadiusChain) -> Result<()> {
    let t = column_pattern();
    let sup = cross_term_sup(&t)?.interval();
    b.value("cross-term-sup", "sup_θ ‖Re(e^{iθ}T) Re(e^{iθ}T^D)‖", sup.mid(), 5f64.sqrt() / 2.0, CROSS_TOL);
    let disc = ((c.omega - c.omega_d).abs().square_nonneg() + sup.scale(4.0)).sqrt();
    let middle = (c.omega + c.omega_d + disc).scale(0.25);
    b.value("cross-term-bound", "¼(ω(T)+ω(T^D)+√((ω(T)−ω(T^D))² + 4 sup))", middle.mid(), 1.0829, RADIUS_TOL);
    b.increasing(
        "cross-term-bound-placement",
        "ω(T̂) < cross-term bound < ½(ω(T)+ω(T^D))",
        &[c.mean.mid(), middle.mid(), c.half.mid()],
    );
    Ok(())
}

fn spectrum_examples(b: &mut Builder) -> Result<()> {
    let t = square_zero_example();
    for lam in [0.1, 0.25, 0.5, 0.9] {
        let m = lambda_mean(&t, lam)?;
        let ev = eigenvalues(&m)?.eigenvalues;
        let dist = multiset_distance(&ev, &quoted_spectrum(lam));
        b.value(
            &format!("lambda-mean-spectrum@{lam}"),
            "σ(M_λ(T)) = {±√(λ−λ²), ±2√(λ−λ²)}",
            dist,
            0.0,
            SPECTRUM_TOL,
        );
    }
    Ok(())
}

/// The quoted spectrum belongs to `λT + (1−λ)T*`; recorded separately so the
/// eigen-solver is seen to reproduce it.
fn adjoint_mix_examples(b: &mut Builder) -> Result<()> {
    let t = square_zero_example();
    for lam in [0.1, 0.25, 0.5, 0.9] {
        let m = ComplexMatrix::lin_comb(lam, &t, 1.0 - lam, &t.adjoint());
        let ev = eigenvalues(&m)?.eigenvalues;
        let dist = multiset_distance(&ev, &quoted_spectrum(lam));
        b.value(
            &format!("adjoint-mix-spectrum@{lam}"),
            "σ(λT + (1−λ)T*) = {±√(λ−λ²), ±2√(λ−λ²)}",
            dist,
            0.0,
            SPECTRUM_TOL,
        );
    }
    Ok(())
}

fn hyponormal_examples(b: &mut Builder) -> Result<()> {
    let beta = [1.0, 0.5, 1.0, 1.0, 1.0, 1.0];
    let lam = 1.0 / 3.0;
    b.flag("beta-shift-hyponormal", "W_β hyponormal", shift_is_hyponormal(&beta)?, false);
    b.flag(
        "beta-lambda-mean-hyponormal",
        "M_λ(W_β) hyponormal at λ = 1/3",
        lambda_mean_shift_hyponormal(&beta, lam)?,
        true,
    );
    let w = lambda_mean_weights(&WeightSequence::lower(beta.to_vec())?, lam, beta.len() - 1, false)?
        .window(beta.len() - 1)?;
    b.flag(
        "beta-lambda-mean-weights-hyponormal",
        "λ-mean weights (2/3, 5/6, 1, …) nondecreasing",
        shift_is_hyponormal(&w)?,
        true,
    );
    Ok(())
}

/// Upper-convention λ-mean weights read off the transformed matrix.
fn transformed_upper_weights(alpha: &[f64], lam: f64) -> Result<Vec<f64>> {
    let s = build_shift(&WeightSequence::upper(alpha.to_vec())?, alpha.len() + 1)?;
    let m = lambda_mean(&s, lam)?;
    Ok((0..alpha.len()).map(|k| m[(k, k + 1)].norm()).collect())
}

fn symmetry_examples(b: &mut Builder) -> Result<()> {
    for lam in [0.2, 0.5, 0.8] {
        let a = [1.0, 2.0, 2.0, 1.0];
        let s = [1.0 / lam, 1.0, 1.0];
        b.flag(&format!("palindrome-shift@{lam}"), "(1,2,2,1) complex symmetric", shift_cs_criterion(&a)?, true);
        b.flag(
            &format!("palindrome-lambda-mean@{lam}"),
            "M_λ of the (1,2,2,1) shift complex symmetric",
            lambda_mean_cs_criterion(&a, lam)?,
            false,
        );
        b.flag(
            &format!("palindrome-lambda-mean-weights@{lam}"),
            "transformed weights (λ, λ+1, 2, 2−λ) palindromic",
            shift_cs_criterion(&transformed_upper_weights(&a, lam)?)?,
            false,
        );
        b.flag(&format!("scaled-shift@{lam}"), "(1/λ,1,1) complex symmetric", shift_cs_criterion(&s)?, false);
        b.flag(
            &format!("scaled-lambda-mean@{lam}"),
            "M_λ of the (1/λ,1,1) shift complex symmetric",
            lambda_mean_cs_criterion(&s, lam)?,
            true,
        );
        b.flag(
            &format!("scaled-lambda-mean-weights@{lam}"),
            "transformed weights (1, λ+1/λ−1, 1) palindromic",
            shift_cs_criterion(&transformed_upper_weights(&s, lam)?)?,
            true,
        );
    }
    Ok(())
}

fn jordan_examples(b: &mut Builder) -> Result<()> {
    let j = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]);
    b.value("jordan-duggal-norm", "‖M_0(T)‖ = 0 for the Jordan block", operator_norm(&lambda_mean(&j, 0.0)?), 0.0, 1e-15);
    b.value("jordan-norm", "‖T‖ = 1 for the Jordan block", operator_norm(&j), 1.0, 1e-15);
    Ok(())
}

/// Every worked example, grouped as `norms`, `radii`, `cross-term`,
/// `spectrum`, `adjoint-mix`, `hyponormal`, `complex-symmetry`, `jordan`.
pub fn worked_examples() -> Result<ExamplesReport> {
    let mut entries = Vec::new();
    let mut b = Builder { group: "norms", entries: Vec::new() };
    norm_chain(&mut b)?;
    entries.append(&mut b.entries);

    let chain = radius_chain()?;
    b.group = "radii";
    radius_examples(&mut b, &chain);
    entries.append(&mut b.entries);

    b.group = "cross-term";
    cross_examples(&mut b, &chain)?;
    entries.append(&mut b.entries);

    b.group = "spectrum";
    spectrum_examples(&mut b)?;
    entries.append(&mut b.entries);

    b.group = "adjoint-mix";
    adjoint_mix_examples(&mut b)?;
    entries.append(&mut b.entries);

    b.group = "hyponormal";
    hyponormal_examples(&mut b)?;
    entries.append(&mut b.entries);

    b.group = "complex-symmetry";
    symmetry_examples(&mut b)?;
    entries.append(&mut b.entries);

    b.group = "jordan";
    jordan_examples(&mut b)?;
    entries.append(&mut b.entries);

    let failures = entries.iter().filter(|e| !e.pass).count();
    Ok(ExamplesReport {
        entries,
        failures,
        pass: failures == 0,
    })
}

//! The inequality / equivalence verification suite over a random corpus.

use std::time::Instant;

use mean_transform::classify::{
    classify, lambda_mean_cs_criterion, lambda_mean_shift_hyponormal, shift_cs_criterion,
    shift_is_hyponormal, CLASS_TOL,
};
use mean_transform::gauges::{
    cross_term_sup_pair, equality_witness, lambda_radius_integral, numerical_radius_with_budget,
    radius_integral_with, range_inclusion_margin, GaugeBracket, Interval, CROSS_BUDGET, DEFAULT_BUDGET, EQ_TOL,
};
use mean_transform::linalg::{eigenvalues, operator_norm, polar_decompose, spectral_radius};
use mean_transform::shifts::{
    lambda_mean_weights, rank_one_iterate, Convention, RankOnePair, WeightRule, WeightSequence,
};
use mean_transform::transforms::{
    iterate_lambda_mean, iterate_lambda_mean_with_rank_tol, Transformed,
};
use mean_transform::{ComplexMatrix, Error, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::generate::{generate, random_unitary, OperatorKind, OperatorSpec};
use crate::report::{Aggregator, Check, Sample, Timing, Tolerances, VerifyReport};

/// Singular values below this fraction of `‖T‖` are candidates for the rank
/// cut of the covariance iterates.
const RANK_CUT_CEILING: f64 = 1e-6;

/// Smallest singular value of `x` above `cut` (infinite when none is).
fn smallest_retained(x: &ComplexMatrix, cut: f64) -> Result<f64, Error> {
    let p = polar_decompose(x, cut)?;
    Ok(p.singulars()[..p.rank()].last().copied().unwrap_or(f64::INFINITY))
}

/// Rank threshold for one covariance step, placed in the widest relative gap
/// among the small singular values of `x`. Conjugation by `V` perturbs
/// singular values by about `1e-15·‖T‖`, so a cut inside a wide gap gives
/// both paths the same rank where a fixed threshold could split them.
fn rank_cut(x: &ComplexMatrix, scale: f64) -> Result<f64, Error> {
    let p = polar_decompose(x, 0.0)?;
    let sv = p.singulars();
    let floor = 1e-18 * scale;
    let mut best: Option<(f64, f64)> = None;
    for j in 0..sv.len() {
        if sv[j] > RANK_CUT_CEILING * scale {
            continue;
        }
        let above = if j == 0 { scale } else { sv[j - 1] };
        let below = sv[j].max(floor);
        let ratio = above / below;
        if best.is_none_or(|(r, _)| ratio > r) {
            best = Some((ratio, (above * below).sqrt()));
        }
    }
    Ok(best.map_or(0.0, |(_, cut)| cut))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteConfig {
    pub seed: u64,
    pub lambda_grid: Vec<f64>,
    /// Extra λ values drawn uniformly from `[0, 1)` per operator.
    pub random_lambdas: usize,
    pub margin_tol: f64,
    pub gauge_tol: f64,
    pub quadrature_tol: f64,
    /// Number of random γ for the translate contraction.
    pub gammas: usize,
    pub range_grid: usize,
    pub record_timing: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            lambda_grid: vec![0.0, 0.25, 0.5, 0.75, 1.0],
            random_lambdas: 0,
            margin_tol: 1e-8,
            gauge_tol: 1e-10,
            quadrature_tol: 1e-3,
            gammas: 16,
            range_grid: 64,
            record_timing: false,
        }
    }
}

/// Samples from one corpus item, in evaluation order.
struct ItemResult {
    kind: OperatorKind,
    seed: u64,
    samples: Vec<Sample>,
}

fn ineq(check: Check, lhs: Interval, rhs: Interval, scale: f64, lambda: Option<f64>) -> Sample {
    Sample {
        check,
        lhs: lhs.mid(),
        rhs: rhs.mid(),
        margin: (rhs.lo - lhs.hi) / scale,
        lambda,
    }
}

fn identity(check: Check, discrepancy: f64, scale: f64, lambda: Option<f64>) -> Sample {
    Sample {
        check,
        lhs: discrepancy,
        rhs: 0.0,
        margin: -discrepancy / scale,
        lambda,
    }
}

fn agree(check: Check, a: bool, b: bool, lambda: Option<f64>) -> Sample {
    Sample {
        check,
        lhs: a as u8 as f64,
        rhs: b as u8 as f64,
        margin: if a == b { 0.0 } else { -1.0 },
        lambda,
    }
}

fn pt(x: f64) -> Interval {
    Interval::point(x)
}

/// A budget overrun still leaves a certified, merely wider, bracket.
fn widened(r: Result<GaugeBracket, Error>) -> Result<Interval, Error> {
    match r {
        Err(Error::BudgetExceeded { lo, hi, .. }) => Ok(Interval::new(lo, hi)),
        other => other.map(|b| b.interval()),
    }
}

/// Certified `ω`, retrying once with a larger budget.
fn radius(m: &ComplexMatrix, tol: f64) -> Result<Interval, Error> {
    match numerical_radius_with_budget(m, tol, DEFAULT_BUDGET) {
        Err(Error::BudgetExceeded { .. }) => {
            widened(numerical_radius_with_budget(m, tol, 16 * DEFAULT_BUDGET))
        }
        other => other.map(|b| b.interval()),
    }
}

/// A lower bound for the spectral radius even when QR stalls.
fn spectral_radius_lower(t: &ComplexMatrix) -> Result<f64, Error> {
    match spectral_radius(t) {
        Err(Error::SpectrumNoConvergence { lo, .. }) => Ok(lo),
        other => other,
    }
}


/// Quantities that do not depend on λ.
struct Base {
    t: ComplexMatrix,
    tr: Transformed,
    norm: f64,
    norm_d: f64,
    r: f64,
    omega: Interval,
    omega_d: Interval,
    omega_al: Interval,
    aluthge_norm: f64,
    abs_t: ComplexMatrix,
    abs_t_adj: ComplexMatrix,
    abs_d: ComplexMatrix,
    abs_d_adj: ComplexMatrix,
    cross: Interval,
    /// `T*T^D`
    tsd: ComplexMatrix,
    omega_tsd: Interval,
    quasinormal: bool,
    mean_norm: f64,
}

struct Evaluator<'a> {
    cfg: &'a SuiteConfig,
    samples: Vec<Sample>,
}

impl Evaluator<'_> {
    fn push(&mut self, s: Sample) {
        self.samples.push(s);
    }

    fn base(&mut self, t: &ComplexMatrix, rng: &mut ChaCha8Rng) -> Result<Base, Error> {
        let cfg = self.cfg;
        let tr = Transformed::new(t)?;
        let d = tr.duggal().clone();
        let norm = operator_norm(t);
        let norm_d = operator_norm(&d);
        let g = cfg.gauge_tol * norm;
        let omega = radius(t, g)?;
        let omega_d = radius(&d, g)?;
        let aluthge = tr.aluthge();
        let omega_al = radius(&aluthge, g)?;
        let r = spectral_radius_lower(t)?;
        let abs_d_parts = polar_decompose(&d, 0.0)?;
        let tsd = &t.adjoint() * &d;
        let n2 = norm * norm;
        let cross = widened(cross_term_sup_pair(t, &d, 0.1 * cfg.margin_tol * n2, CROSS_BUDGET))?;
        let class = classify(t, CLASS_TOL)?;
        let base = Base {
            t: t.clone(),
            norm,
            norm_d,
            r,
            omega,
            omega_d,
            omega_al,
            aluthge_norm: operator_norm(&aluthge),
            abs_t: tr.polar().p.clone(),
            abs_t_adj: tr.polar().abs_adjoint(),
            abs_d: abs_d_parts.p.clone(),
            abs_d_adj: abs_d_parts.abs_adjoint(),
            cross,
            omega_tsd: radius(&tsd, cfg.gauge_tol * n2)?,
            tsd,
            quasinormal: class.flags.quasinormal,
            mean_norm: operator_norm(&tr.mean()),
            tr,
        };

        // Radius bounds.
        let s = norm;
        self.push(ineq(Check::RadiusLower, pt(r.max(0.5 * norm)), omega, s, None));
        self.push(ineq(Check::RadiusUpper, omega, pt(norm), s, None));

        // Translates.
        let mut worst: Option<Sample> = None;
        for _ in 0..cfg.gammas {
            let rad = 2.0 * norm * rng.random::<f64>().sqrt();
            let gamma = C64::from_polar(rad, rng.random_range(0.0..std::f64::consts::TAU));
            let lhs = operator_norm(&d.shift_diagonal(gamma));
            let rhs = operator_norm(&t.shift_diagonal(gamma));
            let smp = ineq(Check::DuggalTranslate, pt(lhs), pt(rhs), norm + gamma.norm(), None);
            if worst.is_none_or(|w| smp.margin < w.margin) {
                worst = Some(smp);
            }
        }
        if let Some(w) = worst {
            self.push(w);
        }
        self.push(ineq(Check::DuggalNorm, pt(norm_d), pt(norm), s, None));
        let incl = range_inclusion_margin(&d, t, cfg.range_grid)?;
        self.push(Sample {
            check: Check::DuggalRange,
            lhs: 0.0,
            rhs: incl,
            margin: incl / s,
            lambda: None,
        });

        // Mean-transform integral chain.
        let mean = base.tr.mean();
        let omega_mean = radius(&mean, g)?;
        let integral = widened(radius_integral_with(&base.tr, cfg.quadrature_tol * s, g))?;
        let bullen = (omega + omega_d + omega_mean.scale(2.0)).scale(0.25);
        self.push(ineq(Check::MeanIntegralLower, omega_mean, integral, s, None));
        self.push(ineq(Check::MeanIntegralUpper, integral, bullen, s, None));
        self.push(ineq(Check::MeanIntegralRadius, bullen, omega, s, None));

        let eps = EQ_TOL * n2;
        let mean_attained = n2 - base.mean_norm * base.mean_norm <= eps;
        let tsd_attained = n2 - base.omega_tsd.hi <= eps;
        self.push(agree(Check::MeanAttainment, mean_attained, tsd_attained, None));

        let f = class.flags;
        let chain = (!f.normal || f.quasinormal) && (!f.quasinormal || f.hyponormal);
        self.push(agree(Check::FlagChain, chain, true, None));
        Ok(base)
    }

    fn at_lambda(&mut self, b: &Base, lam: f64, v: &ComplexMatrix, kind: OperatorKind) -> Result<(), Error> {
        let cfg = self.cfg;
        let l = Some(lam);
        let t = &b.t;
        let d = b.tr.duggal();
        let s = b.norm;
        let n2 = s * s;
        let g = cfg.gauge_tol * s;
        let mu = 1.0 - lam;
        let k = 2.0 * (lam - lam * lam).max(0.0).sqrt();
        let m = b.tr.lambda_mean(lam)?;
        let m_norm = operator_norm(&m);

        let affine = ComplexMatrix::lin_comb(lam, &b.tr.lambda_mean(1.0)?, mu, &b.tr.lambda_mean(0.0)?);
        let endpoints = b.tr.lambda_mean(1.0)?.max_abs_diff(t) + b.tr.lambda_mean(0.0)?.max_abs_diff(d);
        self.push(identity(Check::LambdaAffine, m.max_abs_diff(&affine) + endpoints, s, l));

        // Fixed points and the zero equivalence share the classification tolerance.
        if lam < 1.0 {
            let fixed = operator_norm(&(&m - t)) <= CLASS_TOL * s;
            self.push(agree(Check::FixedPoint, b.quasinormal, fixed, l));
        }
        if lam > 0.0 {
            let fixed = operator_norm(&(&m - d)) <= CLASS_TOL * s;
            self.push(agree(Check::DualFixedPoint, b.quasinormal, fixed, l));
            let floor = mean_transform::linalg::polar::ABS_FLOOR;
            self.push(agree(Check::ZeroEquivalence, m_norm <= floor, s <= floor, l));
        }

        // Norm bounds.
        let tri = lam * s + mu * b.norm_d;
        self.push(ineq(Check::NormHeinz, pt(k * b.aluthge_norm), pt(m_norm), s, l));
        self.push(ineq(Check::NormTriangle, pt(m_norm), pt(tri), s, l));
        self.push(ineq(Check::NormSpectral, pt(k * b.r), pt(m_norm), s, l));
        self.push(ineq(Check::NormContraction, pt(m_norm), pt(s), s, l));
        let left = operator_norm(&ComplexMatrix::lin_comb(lam, &b.abs_t, mu, &b.abs_d));
        let right = operator_norm(&ComplexMatrix::lin_comb(lam, &b.abs_t_adj, mu, &b.abs_d_adj));
        let schwarz = 0.5 * (left + right);
        self.push(ineq(Check::NormMixedSchwarz, pt(m_norm), pt(schwarz), s, l));
        self.push(ineq(Check::NormMixedSchwarzTriangle, pt(schwarz), pt(tri), s, l));

        let q = b.tr.q_lambda(lam)?;
        let q_norm = operator_norm(&q);
        let sym = &(&q * &b.tsd) + &(&b.tsd * &q);
        let omega_sym = radius(&sym, cfg.gauge_tol * n2 * n2)?;
        let c = lam - lam * lam;
        let q_bound = pt(q_norm * q_norm)
            + b.omega_tsd.square_nonneg().scale(4.0 * c * c)
            + omega_sym.scale(2.0 * c);
        let s4 = n2 * n2;
        self.push(ineq(Check::NormQLambda, pt(m_norm.powi(4)), q_bound, s4, l));
        self.push(ineq(Check::NormQLambdaTriangle, q_bound, pt(tri.powi(4)), s4, l));

        // Radius bounds.
        let om = radius(&m, g)?;
        let convex = b.omega.scale(lam) + b.omega_d.scale(mu);
        self.push(ineq(Check::RadiusAluthge, b.omega_al.scale(k), om, s, l));
        self.push(ineq(Check::RadiusConvex, om, convex, s, l));
        self.push(ineq(Check::RadiusSpectral, pt(k * b.r), om, s, l));
        self.push(ineq(Check::RadiusContraction, om, b.omega, s, l));
        let incl = range_inclusion_margin(&m, t, cfg.range_grid)?;
        self.push(Sample {
            check: Check::RangeInclusion,
            lhs: 0.0,
            rhs: incl,
            margin: incl / s,
            lambda: l,
        });

        let integral = widened(lambda_radius_integral(&b.tr, lam, cfg.quadrature_tol * s, g))?;
        let bullen = (convex + om).scale(0.5);
        self.push(ineq(Check::BullenLower, om, integral, s, l));
        self.push(ineq(Check::BullenUpper, integral, bullen, s, l));

        let a = b.omega.scale(lam);
        let bb = b.omega_d.scale(mu);
        let disc = ((a - bb).abs().square_nonneg() + b.cross.scale(4.0 * c)).sqrt();
        let cross_bound = (a + bb + disc).scale(0.5);
        self.push(ineq(Check::CrossTermUpper, om, cross_bound, s, l));
        self.push(ineq(Check::CrossTermConvex, cross_bound, convex, s, l));

        // Unitary covariance of the iterates, against the propagated
        // rounding bound: a polar step amplifies input error by about
        // ‖T‖/σ_r, where σ_r is the smallest retained singular value.
        let vt = &(v * t) * &v.adjoint();
        let (mut x, mut y) = (t.clone(), vt);
        let rho = 16.0 * t.dim() as f64 * f64::EPSILON * s;
        let mut bound = rho;
        let mut worst = (f64::INFINITY, 0.0, 0.0);
        for _ in 0..4 {
            let cut = rank_cut(&x, s)?;
            let sigma = smallest_retained(&x, cut)?.min(smallest_retained(&y, cut)?);
            bound = (bound + rho) * (1.0 + 2.0 * s / sigma);
            x = iterate_lambda_mean_with_rank_tol(&x, lam, 1, cut)?;
            y = iterate_lambda_mean_with_rank_tol(&y, lam, 1, cut)?;
            let back = &(v * &x) * &v.adjoint();
            let diff = operator_norm(&(&back - &y));
            if bound - diff < worst.0 {
                worst = (bound - diff, diff, bound);
            }
            if bound > s {
                break;
            }
        }
        self.push(Sample {
            check: Check::UnitaryCovariance,
            lhs: worst.1,
            rhs: worst.2,
            margin: worst.0 / s,
            lambda: l,
        });

        if lam > 0.0 && lam < 1.0 {
            let eps = EQ_TOL * n2;
            let witness = equality_witness(t, lam)?;
            self.push(agree(Check::NormAttainment, witness.attained, witness.norm_equal, l));

            let half = 0.5 * (s + b.norm_d);
            let mean_eq = half * half - b.mean_norm * b.mean_norm <= eps;
            let lam_eq = tri * tri - m_norm * m_norm <= eps;
            self.push(agree(Check::TriangleScaling, mean_eq, lam_eq, l));

            let top = (lam * s).max(mu * b.norm_d);
            let two_max = (4.0 * top * top - m_norm * m_norm).abs() <= eps;
            let radius_eq = (top * top - c * b.omega_tsd.mid()).abs() <= eps;
            self.push(agree(Check::TwoMaxEquality, two_max, radius_eq, l));

            let structured = matches!(
                kind,
                OperatorKind::TruncatedShift
                    | OperatorKind::Nilpotent
                    | OperatorKind::Normal
                    | OperatorKind::Quasinormal
                    | OperatorKind::Positive
            );
            if structured {
                let rm = match eigenvalues(&m) {
                    Ok(r) => r.spectral_radius(),
                    Err(Error::SpectrumNoConvergence { hi, .. }) => hi,
                    Err(e) => return Err(e),
                };
                self.push(ineq(Check::ScaledSpectrum, pt(k * b.r), pt(rm), s, l));
            }
        }
        Ok(())
    }

    fn shift_checks(&mut self, weights: &[f64], lam: f64) -> Result<(), Error> {
        let l = Some(lam);
        let m = weights.len() + 1;
        let alpha = WeightSequence::lower(weights.to_vec())?;
        let t = mean_transform::shifts::build_shift(&alpha, m)?;
        let got = mean_transform::transforms::lambda_mean(&t, lam)?;
        let w = lambda_mean_weights(&alpha, lam, m - 1, true)?;
        let want = mean_transform::shifts::build_shift(&w, m)?;
        let scale = weights.iter().fold(0.0f64, |a, b| a.max(*b));
        self.push(identity(Check::ShiftWeights, got.max_abs_diff(&want), scale, l));

        if weights.len() >= 3 {
            let beta = lambda_mean_weights(&alpha, lam, weights.len() - 1, false)?;
            let beta = beta.window(weights.len() - 1)?;
            if beta.iter().all(|x| *x > 0.0) {
                let by_weights = shift_is_hyponormal(&beta)?;
                let by_rule = lambda_mean_shift_hyponormal(weights, lam)?;
                self.push(agree(Check::ShiftHyponormal, by_weights, by_rule, l));
            }
        }
        if lam > 0.0 && lam < 1.0 && weights.len() >= 2 {
            let up = WeightSequence::new(
                WeightRule::Custom {
                    weights: weights.to_vec(),
                },
                Convention::Upper,
            )?;
            let w = lambda_mean_weights(&up, lam, weights.len(), true)?.window(weights.len())?;
            let by_rule = lambda_mean_cs_criterion(weights, lam)?;
            self.push(agree(Check::ShiftComplexSymmetry, by_rule, shift_cs_criterion(&w)?, l));
        }
        Ok(())
    }

    fn rank_one_checks(&mut self, pair: &RankOnePair, lam: f64) -> Result<(), Error> {
        if !(lam > 0.0 && lam < 1.0) {
            return Ok(());
        }
        let l = Some(lam);
        let t = pair.matrix();
        let s = operator_norm(&t);
        let mut worst_matrix: f64 = 0.0;
        let mut worst_radius: Option<Sample> = None;
        let mut cur = t.clone();
        for n in 1..=10 {
            cur = iterate_lambda_mean(&cur, lam, 1)?;
            let closed = rank_one_iterate(pair, lam, n)?.matrix();
            worst_matrix = worst_matrix.max(operator_norm(&(&cur - &closed)));
            let gauge = radius(&closed, self.cfg.gauge_tol * s)?;
            let formula = pair.iterate_radius(lam, n);
            let miss = (gauge.lo - formula).max(formula - gauge.hi).max(0.0);
            let smp = Sample {
                check: Check::RankOneRadius,
                lhs: gauge.mid(),
                rhs: formula,
                margin: -miss / s,
                lambda: l,
            };
            if worst_radius.is_none_or(|w| smp.margin < w.margin) {
                worst_radius = Some(smp);
            }
        }
        self.push(identity(Check::RankOneMatrix, worst_matrix, s, l));
        if let Some(w) = worst_radius {
            self.push(w);
        }
        Ok(())
    }
}

/// Recovers `(x, y)` with `T = x ⊗ y` from a rank-one matrix.
fn rank_one_factors(t: &ComplexMatrix) -> Result<RankOnePair, Error> {
    let p = polar_decompose(t, 0.0)?;
    let svd = p.svd();
    let s0 = svd.singulars[0];
    let x: Vec<C64> = svd.left.column(0).iter().map(|z| z * s0).collect();
    RankOnePair::new(x, svd.right.column(0))
}

fn evaluate_item(
    cfg: &SuiteConfig,
    spec: &OperatorSpec,
    lambdas: &[f64],
) -> Result<Vec<Sample>, Error> {
    let t = generate(spec).map_err(|e| match e {
        crate::generate::GenerateError::Core(e) => e,
        other => Error::InvalidWeights(other.to_string()),
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed ^ 0x5eed);
    let mut ev = Evaluator {
        cfg,
        samples: Vec::new(),
    };
    let base = ev.base(&t, &mut rng)?;
    let v = random_unitary(&mut rng, t.dim());
    let shift_weights: Option<Vec<f64>> = (spec.kind == OperatorKind::TruncatedShift)
        .then(|| (0..t.dim() - 1).map(|k| t[(k + 1, k)].re).collect());
    let pair = if spec.kind == OperatorKind::RankOne {
        Some(rank_one_factors(&t)?)
    } else {
        None
    };
    for &lam in lambdas {
        ev.at_lambda(&base, lam, &v, spec.kind)?;
        if let Some(w) = &shift_weights {
            ev.shift_checks(w, lam)?;
        }
        if let Some(p) = &pair {
            ev.rank_one_checks(p, lam)?;
        }
    }
    Ok(ev.samples)
}

fn lambdas_for(cfg: &SuiteConfig, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x001a_3bda);
    let mut v = cfg.lambda_grid.clone();
    v.extend((0..cfg.random_lambdas).map(|_| rng.random_range(0.0..1.0)));
    v
}

fn special_cases(agg: &mut Aggregator) {
    let jordan = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]);
    let (m0, norm) = match Transformed::new(&jordan).and_then(|tr| tr.lambda_mean(0.0)) {
        Ok(m0) => (operator_norm(&m0), operator_norm(&jordan)),
        Err(_) => (f64::NAN, f64::NAN),
    };
    let s = Sample {
        check: Check::JordanEndpoint,
        lhs: m0,
        rhs: norm,
        margin: -(m0 + (norm - 1.0).abs()),
        lambda: Some(0.0),
    };
    agg.add(usize::MAX, OperatorKind::Nilpotent, 0, &s);

    let zero = ComplexMatrix::zeros(2);
    for lam in [0.25, 1.0] {
        let m = Transformed::new(&zero)
            .and_then(|tr| tr.lambda_mean(lam))
            .map_or(f64::NAN, |m| operator_norm(&m));
        let s = agree(Check::ZeroEquivalence, m == 0.0, true, Some(lam));
        agg.add(usize::MAX, OperatorKind::Normal, 0, &s);
    }
}

/// Runs every check on every (operator, λ) pair. Items are evaluated in
/// parallel and merged in corpus order, so the report depends only on the
/// corpus and the configuration.
pub fn verify_suite(corpus: &[OperatorSpec], cfg: &SuiteConfig) -> VerifyReport {
    let start = Instant::now();
    let results: Vec<ItemResult> = corpus
        .par_iter()
        .map(|spec| {
            let lambdas = lambdas_for(cfg, spec.seed);
            let samples = evaluate_item(cfg, spec, &lambdas).unwrap_or_else(|e| {
                eprintln!("evaluation failed for {spec:?}: {e}");
                vec![Sample {
                    check: Check::EvaluationError,
                    lhs: 0.0,
                    rhs: 0.0,
                    margin: -1.0,
                    lambda: None,
                }]
            });
            ItemResult {
                kind: spec.kind,
                seed: spec.seed,
                samples,
            }
        })
        .collect();

    let mut agg = Aggregator::new(cfg.margin_tol);
    let mut pairs = 0;
    for (i, r) in results.iter().enumerate() {
        pairs += lambdas_for(cfg, r.seed).len();
        for s in &r.samples {
            agg.add(i, r.kind, r.seed, s);
        }
    }
    special_cases(&mut agg);
    let checks = agg.finish();
    let failures = checks.iter().map(|c| c.failures).sum();
    VerifyReport {
        corpus_size: corpus.len(),
        pairs,
        seed: cfg.seed,
        lambda_grid: cfg.lambda_grid.clone(),
        random_lambdas: cfg.random_lambdas,
        tolerances: Tolerances {
            margin: cfg.margin_tol,
            gauge: cfg.gauge_tol,
            quadrature: cfg.quadrature_tol,
            class: CLASS_TOL,
            equality: EQ_TOL,
        },
        failures,
        pass: failures == 0,
        checks,
        timing: cfg.record_timing.then(|| Timing {
            seconds: start.elapsed().as_secs_f64(),
        }),
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::mixed_corpus;

    #[test]
    fn small_corpus_passes() {
        let corpus = mixed_corpus(16, 3, 5);
        let report = verify_suite(&corpus, &SuiteConfig::default());
        for c in report.checks.iter().filter(|c| !c.pass) {
            eprintln!("{c:?}");
        }
        assert!(report.pass);
    }
}

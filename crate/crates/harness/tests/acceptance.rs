//! Acceptance criteria, one line each. Runs as a plain binary so the lines
//! always reach the test log.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use mean_transform::linalg::operator_norm;
use mean_transform::gauges::numerical_radius;
use mean_transform::shifts::{
    build_shift, convergence_experiment, iterated_weights, rank_one_iterate, RankOnePair,
    WeightRule, WeightSequence,
};
use mean_transform::transforms::iterate_lambda_mean;
use mean_transform::C64;
use mean_transform_harness::examples::{worked_examples, ExamplesReport};
use mean_transform_harness::generate::{mixed_corpus, OperatorKind};
use mean_transform_harness::report::VerifyReport;
use mean_transform_harness::suite::{verify_suite, SuiteConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Outcome of one criterion. `known` marks a criterion whose target is not
/// attainable by a faithful computation; it prints FAIL without failing the
/// run, provided the faithful values themselves check out.
struct Line {
    id: &'static str,
    pass: bool,
    known: bool,
    detail: String,
}

fn line(id: &'static str, pass: bool, detail: String) -> Line {
    Line { id, pass, known: false, detail }
}

fn group_detail(r: &ExamplesReport, group: &str) -> String {
    r.group(group)
        .map(|e| format!("{}={:.6}", e.name, e.computed))
        .collect::<Vec<_>>()
        .join(" ")
}

fn criterion_1() -> Line {
    let start = Instant::now();
    let r = worked_examples().expect("examples evaluate");
    let elapsed = start.elapsed();
    let ok = r.group_passes("norms") && elapsed < Duration::from_secs(1);
    line("1", ok, format!("{} ({elapsed:.2?}, tol 5e-4)", group_detail(&r, "norms")))
}

fn criterion_2() -> Line {
    let start = Instant::now();
    let r = worked_examples().expect("examples evaluate");
    let elapsed = start.elapsed();
    let ok = r.group_passes("radii") && elapsed < Duration::from_secs(10);
    line("2", ok, format!("{} ({elapsed:.2?}, tol 1e-3)", group_detail(&r, "radii")))
}

fn criterion_3() -> Line {
    let r = worked_examples().expect("examples evaluate");
    line("3", r.group_passes("cross-term"), group_detail(&r, "cross-term"))
}

/// The quoted spectrum is that of `λT + (1−λ)T*`; the faithful `M_λ(T) = λT`
/// is nilpotent. The line reports FAIL; the run fails only if the faithful
/// distances are not `√(λ−λ²)·2` (zero spectrum against the quoted one) or
/// the adjoint mixture does not reproduce the quoted values.
fn criterion_4() -> Line {
    let r = worked_examples().expect("examples evaluate");
    let pass = r.group_passes("spectrum");
    let faithful = r.group("spectrum").all(|e| {
        let lam: f64 = e.name.rsplit('@').next().unwrap().parse().unwrap();
        (e.computed - 2.0 * (lam - lam * lam).sqrt()).abs() < 1e-6
    });
    let mix = r.group_passes("adjoint-mix");
    Line {
        id: "4",
        pass,
        known: !pass && faithful && mix,
        detail: format!(
            "matching distance to quoted spectrum: {}; λT+(1−λ)T* reproduces it: {mix}",
            group_detail(&r, "spectrum")
        ),
    }
}

fn criterion_5() -> Line {
    let r = worked_examples().expect("examples evaluate");
    line("5", r.group_passes("hyponormal"), group_detail(&r, "hyponormal"))
}

fn criterion_6() -> Line {
    let r = worked_examples().expect("examples evaluate");
    let n = r.group("complex-symmetry").count();
    line("6", r.group_passes("complex-symmetry"), format!("{n} flags at λ ∈ {{0.2, 0.5, 0.8}}"))
}

const INEQUALITY_CHECKS: &[&str] = &[
    "radius-lower-bound",
    "radius-upper-bound",
    "duggal-translate-contraction",
    "duggal-norm-contraction",
    "duggal-range-inclusion",
    "norm-heinz-lower",
    "norm-triangle-upper",
    "norm-spectral-lower",
    "norm-mixed-schwarz",
    "norm-mixed-schwarz-vs-triangle",
    "norm-q-lambda",
    "norm-q-lambda-vs-triangle",
    "radius-aluthge-lower",
    "radius-convex-upper",
    "radius-spectral-lower",
    "radius-contraction",
    "mean-integral-lower",
    "mean-integral-upper",
    "mean-integral-vs-radius",
    "bullen-lower",
    "bullen-upper",
    "cross-term-upper",
    "cross-term-vs-convex",
    "range-inclusion",
    "unitary-covariance",
];

const EQUIVALENCE_CHECKS: &[&str] = &[
    "quasinormal-fixed-point",
    "quasinormal-duggal-fixed-point",
    "zero-equivalence",
    "norm-attainment",
    "mean-norm-attainment",
];

fn summarize(report: &VerifyReport, names: &[&str]) -> (bool, usize, usize, String) {
    let mut ok = true;
    let (mut evals, mut fails) = (0, 0);
    let mut missing = Vec::new();
    for name in names {
        match report.check(name) {
            Some(c) if c.evaluations > 0 => {
                evals += c.evaluations;
                fails += c.failures;
                ok &= c.pass;
            }
            _ => {
                ok = false;
                missing.push(*name);
            }
        }
    }
    let worst = names
        .iter()
        .filter_map(|n| report.check(n))
        .filter_map(|c| c.worst.as_ref().map(|w| (c.name.clone(), w.margin)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(n, m)| format!("worst margin {m:.2e} ({n})"))
        .unwrap_or_default();
    let detail = if missing.is_empty() {
        worst
    } else {
        format!("{worst}; never evaluated: {missing:?}")
    };
    (ok, evals, fails, detail)
}

fn criterion_7() -> Line {
    let corpus = mixed_corpus(2000, 7, 8);
    let cfg = SuiteConfig {
        seed: 7,
        lambda_grid: vec![0.0, 0.5, 1.0],
        random_lambdas: 2,
        ..SuiteConfig::default()
    };
    let start = Instant::now();
    let report = verify_suite(&corpus, &cfg);
    let elapsed = start.elapsed();
    let (ok, evals, fails, detail) = summarize(&report, INEQUALITY_CHECKS);
    let errors = report.check("evaluation-error").map_or(1, |c| c.failures);
    line(
        "7",
        ok && errors == 0 && report.pairs >= 10_000 && elapsed < Duration::from_secs(600),
        format!(
            "{} pairs, {evals} inequality evaluations, {fails} violations, {errors} evaluation errors, {detail}, {elapsed:.1?}",
            report.pairs
        ),
    )
}

fn criterion_8() -> Line {
    let corpus = mixed_corpus(1000, 8, 8);
    let constructed = corpus
        .iter()
        .filter(|s| matches!(s.kind, OperatorKind::Quasinormal | OperatorKind::Positive | OperatorKind::Normal))
        .count();
    let report = verify_suite(&corpus, &SuiteConfig { seed: 8, ..SuiteConfig::default() });
    let (ok, evals, fails, _) = summarize(&report, EQUIVALENCE_CHECKS);
    let special = report.check("jordan-duggal-endpoint").is_some_and(|c| c.pass);
    line(
        "8",
        ok && special && constructed >= 200,
        format!("{evals} boolean agreements, {fails} disagreements, {constructed} constructed quasinormal/positive operators, Jordan endpoint {special}"),
    )
}

fn binomial_agreement() -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst: f64 = 0.0;
    for _ in 0..40 {
        let m = 16;
        let weights: Vec<f64> = (0..m - 1).map(|_| rng.random_range(0.2..2.0)).collect();
        let alpha = WeightSequence::lower(weights).unwrap();
        let lam = rng.random_range(0.05..0.95);
        let shift = build_shift(&alpha, m).unwrap();
        for k in 1..=6 {
            let it = iterate_lambda_mean(&shift, lam, k).unwrap();
            for n in 0..m - 1 - k {
                let formula = iterated_weights(&alpha, lam, k, n).unwrap();
                worst = worst.max((it[(n + 1, n)].norm() - formula).abs());
            }
        }
    }
    worst
}

fn rank_one_agreement() -> (f64, bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst_excess: f64 = 0.0;
    let mut inside = true;
    for _ in 0..40 {
        let dim = rng.random_range(2..=6);
        let v = |rng: &mut ChaCha8Rng| -> Vec<C64> {
            (0..dim).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect()
        };
        let pair = RankOnePair::new(v(&mut rng), v(&mut rng)).unwrap();
        let lam = rng.random_range(0.05..0.95);
        let scale = operator_norm(&pair.matrix());
        for n in 0..=10 {
            let it = rank_one_iterate(&pair, lam, n).unwrap().matrix();
            let b = numerical_radius(&it, 1e-10 * scale).unwrap();
            let formula = pair.iterate_radius(lam, n);
            inside &= b.lo <= formula && formula <= b.hi;
            worst_excess = worst_excess.max((b.lo - formula).max(formula - b.hi));
        }
    }
    (worst_excess, inside)
}

fn criterion_9() -> Vec<Line> {
    let binomial = binomial_agreement();
    let (excess, inside) = rank_one_agreement();
    let harmonic = WeightSequence::rule(WeightRule::Harmonic).unwrap();
    let conv = convergence_experiment(&harmonic, 0.5, 60, 16).unwrap();
    let final_error = conv.final_error();
    // E[1/(X+1)] for X ~ Bin(60, 1/2).
    let exact = (2.0 - 0.5f64.powi(60)) / 61.0;
    let conv_pass = final_error < 1e-6;
    vec![
        line("9a", binomial <= 1e-10, format!("binomial vs matrix iterates, max deviation {binomial:.2e} (tol 1e-10)")),
        line("9b", inside, format!("rank-one radius formula inside gauge brackets for n ≤ 10, max excess {excess:.2e}")),
        Line {
            id: "9c",
            pass: conv_pass,
            known: !conv_pass && (final_error - exact).abs() < 1e-12 && conv.nonincreasing,
            detail: format!(
                "harmonic weights, λ = 1/2: window error {final_error:.6e} at 60 iterations (target 1e-6; exact (2−2^-60)/61 = {exact:.6e}; nonincreasing {})",
                conv.nonincreasing
            ),
        },
    ]
}

fn criterion_10() -> Line {
    let corpus = mixed_corpus(200, 42, 8);
    let cfg = SuiteConfig { seed: 42, ..SuiteConfig::default() };
    let a = verify_suite(&corpus, &cfg).to_json();
    let b = verify_suite(&mixed_corpus(200, 42, 8), &cfg).to_json();
    line("10", a == b, format!("two seed-42 reports, {} bytes, identical {}", a.len(), a == b))
}

fn main() -> ExitCode {
    let mut lines = vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
    ];
    lines.extend(criterion_9());
    lines.push(criterion_10());

    let mut unexpected = 0;
    for l in &lines {
        let tag = if l.pass { "PASS" } else { "FAIL" };
        let note = if l.known { " [unattainable, see notes]" } else { "" };
        println!("criterion {:>3} {tag}{note}: {}", l.id, l.detail);
        if !l.pass && !l.known {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria failed unexpectedly");
        ExitCode::FAILURE
    }
}

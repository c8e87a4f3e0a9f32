use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use mean_transform::classify::{classify, CLASS_TOL};
use mean_transform::gauges::{
    cross_term_sup, numerical_radius, radius_integral, range_boundary, GaugeBracket,
};
use mean_transform::linalg::{operator_norm, spectral_radius_bracket};
use mean_transform::shifts::{convergence_experiment, WeightRule, WeightSequence};
use mean_transform::transforms::{apply, duggal, TransformKind, TransformParams, Transformed};
use mean_transform::ComplexMatrix;
use mean_transform_harness::examples::worked_examples;
use mean_transform_harness::generate::mixed_corpus;
use mean_transform_harness::suite::{verify_suite, SuiteConfig};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "lmean", version, about = "λ-mean transform toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Duggal,
    Aluthge,
    Mean,
    LambdaMean,
    Generalized,
}

impl From<Kind> for TransformKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Duggal => TransformKind::Duggal,
            Kind::Aluthge => TransformKind::Aluthge,
            Kind::Mean => TransformKind::Mean,
            Kind::LambdaMean => TransformKind::LambdaMean,
            Kind::Generalized => TransformKind::Generalized,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    Harmonic,
    Geometric,
    Constant,
    Saturating,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a transform to a matrix file and print the result as JSON.
    Transform {
        matrix: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        lambda: f64,
        #[arg(long, default_value_t = 1)]
        iterations: usize,
        #[arg(long, value_enum, default_value = "lambda-mean")]
        kind: Kind,
        /// Exponent of the generalized mean, in [0, 1/2].
        #[arg(long, default_value_t = 0.5)]
        t: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Norms, radii and classification of a matrix file.
    Gauges {
        matrix: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Run the inequality and equivalence suite on a random corpus.
    Verify {
        #[arg(long, default_value_t = 200)]
        corpus: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_value = "0,0.25,0.5,0.75,1")]
        lambda_grid: Vec<f64>,
        /// Extra uniformly drawn λ per operator.
        #[arg(long, default_value_t = 0)]
        random_lambdas: usize,
        #[arg(long, default_value_t = 8)]
        max_dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include wall-clock time in the report (makes it non-reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Reproduce the worked numerical examples.
    Examples {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump numerical-range boundary points as CSV.
    Range {
        matrix: PathBuf,
        #[arg(long, default_value_t = 256)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convergence of iterated λ-mean weights for a weight rule, as CSV.
    ShiftLab {
        #[arg(long, value_enum)]
        rule: Rule,
        #[arg(long, default_value_t = 0.5)]
        ratio: f64,
        #[arg(long, default_value_t = 1.0)]
        value: f64,
        #[arg(long, default_value_t = 0.5)]
        lambda: f64,
        #[arg(long, default_value_t = 60)]
        max_iter: usize,
        #[arg(long, default_value_t = 16)]
        window: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_matrix(path: &Path) -> Result<ComplexMatrix> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(ComplexMatrix::from_json(&text)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct GaugeSummary {
    norm: f64,
    duggal_norm: f64,
    spectral_radius: (f64, f64),
    numerical_radius: GaugeBracket,
    duggal_numerical_radius: GaugeBracket,
    cross_term_sup: GaugeBracket,
    radius_integral: GaugeBracket,
    class: mean_transform::classify::ClassReport,
}

fn gauges(t: &ComplexMatrix, tol: f64) -> Result<GaugeSummary> {
    let d = duggal(t)?;
    Ok(GaugeSummary {
        norm: operator_norm(t),
        duggal_norm: operator_norm(&d),
        spectral_radius: spectral_radius_bracket(t, 64),
        numerical_radius: numerical_radius(t, tol)?,
        duggal_numerical_radius: numerical_radius(&d, tol)?,
        cross_term_sup: cross_term_sup(t)?,
        radius_integral: radius_integral(t, tol.max(1e-6))?,
        class: classify(t, CLASS_TOL)?,
    })
}

fn rule(r: Rule, ratio: f64, value: f64) -> WeightRule {
    match r {
        Rule::Harmonic => WeightRule::Harmonic,
        Rule::Geometric => WeightRule::Geometric { ratio },
        Rule::Constant => WeightRule::Constant { value },
        Rule::Saturating => WeightRule::Saturating { ratio },
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Transform {
            matrix,
            lambda,
            iterations,
            kind,
            t,
            out,
        } => {
            let m = read_matrix(&matrix)?;
            let params = TransformParams::new(lambda, t, iterations)?;
            let r = apply(&m, kind.into(), &params)?;
            if matches!(kind, Kind::Generalized) && t == 0.0 && Transformed::new(&m)?.is_singular() {
                eprintln!("note: singular input, |T|^0 taken as the range projection of |T|");
            }
            emit(out.as_deref(), &r.to_json())?;
            Ok(true)
        }
        Command::Gauges { matrix, tol } => {
            let m = read_matrix(&matrix)?;
            let g = gauges(&m, tol)?;
            emit(None, &serde_json::to_string_pretty(&g)?)?;
            Ok(true)
        }
        Command::Verify {
            corpus: count,
            seed,
            lambda_grid,
            random_lambdas,
            max_dim,
            out,
            timing,
        } => {
            if count == 0 {
                bail!("corpus must be nonempty");
            }
            if max_dim < 2 {
                bail!("max-dim must be at least 2");
            }
            if let Some(l) = lambda_grid.iter().find(|l| !(0.0..=1.0).contains(*l)) {
                bail!("lambda {l} outside [0, 1]");
            }
            let cfg = SuiteConfig {
                seed,
                lambda_grid,
                random_lambdas,
                record_timing: timing,
                ..SuiteConfig::default()
            };
            let report = verify_suite(&mixed_corpus(count, seed, max_dim), &cfg);
            for c in report.checks.iter().filter(|c| !c.pass) {
                eprintln!("FAIL {} ({} of {})", c.name, c.failures, c.evaluations);
            }
            eprintln!(
                "{} operators, {} pairs, {} failures",
                report.corpus_size, report.pairs, report.failures
            );
            emit(out.as_deref(), &report.to_json())?;
            Ok(report.pass)
        }
        Command::Examples { out } => {
            let report = worked_examples()?;
            for e in report.entries.iter().filter(|e| !e.pass) {
                eprintln!("FAIL {}: computed {} expected {}", e.name, e.computed, e.expected);
            }
            emit(out.as_deref(), &report.to_json())?;
            Ok(report.pass)
        }
        Command::Range { matrix, points, out } => {
            let m = read_matrix(&matrix)?;
            let mut csv = String::from("theta,re,im,support\n");
            for p in range_boundary(&m, points)? {
                csv += &format!("{},{},{},{}\n", p.theta, p.value.re, p.value.im, p.support);
            }
            emit(out.as_deref(), &csv)?;
            Ok(true)
        }
        Command::ShiftLab {
            rule: r,
            ratio,
            value,
            lambda,
            max_iter,
            window,
            out,
        } => {
            let alpha = WeightSequence::rule(rule(r, ratio, value))?;
            let report = convergence_experiment(&alpha, lambda, max_iter, window)?;
            let mut csv = String::from("mIter,windowError\n");
            for (m, e) in &report.errors {
                csv += &format!("{m},{e}\n");
            }
            emit(out.as_deref(), &csv)?;
            Ok(report.nonincreasing)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

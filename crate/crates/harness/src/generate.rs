//! Seeded random operators of prescribed kinds.

use mean_transform::classify::classify;
use mean_transform::linalg::{hermitian_eigenvalues, inner, polar_decompose, vec_norm};
use mean_transform::{ComplexMatrix, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

/// Tolerance used to certify that a generated matrix has its kind.
pub const CERTIFY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum OperatorKind {
    Ginibre,
    Normal,
    Quasinormal,
    PartialIsometry,
    RankOne,
    TruncatedShift,
    Nilpotent,
    Positive,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 8] = [
        OperatorKind::Ginibre,
        OperatorKind::Normal,
        OperatorKind::Quasinormal,
        OperatorKind::PartialIsometry,
        OperatorKind::RankOne,
        OperatorKind::TruncatedShift,
        OperatorKind::Nilpotent,
        OperatorKind::Positive,
    ];
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OperatorSpec {
    pub kind: OperatorKind,
    pub dim: usize,
    pub seed: u64,
    /// Shift weights for `truncatedShift`; drawn from the seed when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
}

impl OperatorSpec {
    pub fn new(kind: OperatorKind, dim: usize, seed: u64) -> Self {
        Self {
            kind,
            dim,
            seed,
            weights: None,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum GenerateError {
    #[error("dimension {0} outside 2..=32")]
    BadDimension(usize),
    #[error("generated {kind:?} matrix failed certification: {detail}")]
    KindUnsatisfied { kind: OperatorKind, detail: String },
    #[error(transparent)]
    Core(#[from] mean_transform::Error),
}

fn gaussian(rng: &mut ChaCha8Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn ginibre(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let s = 1.0 / (n as f64).sqrt();
    ComplexMatrix::from_fn(n, |_, _| gaussian(rng) * s)
}

pub fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<C64> {
    (0..n).map(|_| gaussian(rng)).collect()
}

/// Haar-distributed unitary: Gram-Schmidt on a Ginibre matrix with the
/// phases of the triangular factor divided out.
pub fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let g = ginibre(rng, n);
    let mut q = ComplexMatrix::zeros(n);
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = g.column(j);
        for _ in 0..2 {
            for c in &cols {
                let p = inner(&v, c);
                for (vi, ci) in v.iter_mut().zip(c) {
                    *vi -= ci * p;
                }
            }
        }
        let r = vec_norm(&v);
        let phase = {
            let d = inner(&g.column(j), &v);
            if d.norm() > 0.0 {
                d / d.norm()
            } else {
                C64::new(1.0, 0.0)
            }
        };
        let v: Vec<C64> = v.iter().map(|z| z / r * phase.conj()).collect();
        q.set_column(j, &v);
        cols.push(v);
    }
    q
}

fn conjugate(q: &ComplexMatrix, d: &ComplexMatrix) -> ComplexMatrix {
    &(q * d) * &q.adjoint()
}

fn positive_diagonal(rng: &mut ChaCha8Rng, n: usize, allow_zero: bool) -> Vec<f64> {
    // A few repeated levels, and optionally a kernel, so the quasinormal
    // construction has nontrivial eigenspaces to act on.
    let levels = 1 + rng.random_range(0..n.min(3));
    let values: Vec<f64> = (0..levels).map(|_| rng.random_range(0.2..2.0)).collect();
    let mut d: Vec<f64> = (0..n)
        .map(|_| {
            if allow_zero && rng.random_bool(0.2) {
                0.0
            } else {
                values[rng.random_range(0..levels)]
            }
        })
        .collect();
    if d.iter().all(|v| *v == 0.0) {
        d[0] = values[0];
    }
    d
}

fn quasinormal(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let p = positive_diagonal(rng, n, true);
    // U is a unitary on each positive eigenspace of P and zero on its kernel,
    // so UP = PU and U is a partial isometry with N(U) = N(P).
    let mut u = ComplexMatrix::zeros(n);
    let mut levels: Vec<f64> = p.iter().copied().filter(|v| *v > 0.0).collect();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    for level in levels {
        let idx: Vec<usize> = (0..n).filter(|&i| p[i] == level).collect();
        let block = random_unitary(rng, idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                u[(i, j)] = block[(a, b)];
            }
        }
    }
    let q = random_unitary(rng, n);
    conjugate(&q, &(&u * &ComplexMatrix::from_real_diag(&p)))
}

/// Random positive weights in `[0.2, 2]`.
pub fn random_weights(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.random_range(0.2..2.0)).collect()
}

fn lower_shift(weights: &[f64]) -> ComplexMatrix {
    let n = weights.len() + 1;
    let mut s = ComplexMatrix::zeros(n);
    for (k, w) in weights.iter().enumerate() {
        s[(k + 1, k)] = C64::new(*w, 0.0);
    }
    s
}

fn build(spec: &OperatorSpec, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let n = spec.dim;
    match spec.kind {
        OperatorKind::Ginibre => ginibre(rng, n),
        OperatorKind::Normal => {
            let q = random_unitary(rng, n);
            let d: Vec<C64> = (0..n).map(|_| gaussian(rng)).collect();
            conjugate(&q, &ComplexMatrix::from_diag(&d))
        }
        OperatorKind::Quasinormal => quasinormal(rng, n),
        OperatorKind::PartialIsometry => {
            let r = rng.random_range(1..n);
            let d: Vec<f64> = (0..n).map(|i| if i < r { 1.0 } else { 0.0 }).collect();
            let (a, b) = (random_unitary(rng, n), random_unitary(rng, n));
            &(&a * &ComplexMatrix::from_real_diag(&d)) * &b.adjoint()
        }
        OperatorKind::RankOne => {
            let (x, y) = (random_vector(rng, n), random_vector(rng, n));
            ComplexMatrix::outer(&x, &y).expect("equal lengths")
        }
        OperatorKind::TruncatedShift => {
            let w = spec.weights.clone().unwrap_or_else(|| random_weights(rng, n - 1));
            lower_shift(&w)
        }
        OperatorKind::Nilpotent => {
            let g = ginibre(rng, n);
            ComplexMatrix::from_fn(n, |i, j| if j > i { g[(i, j)] } else { C64::new(0.0, 0.0) })
        }
        OperatorKind::Positive => {
            let q = random_unitary(rng, n);
            let p = conjugate(&q, &ComplexMatrix::from_real_diag(&positive_diagonal(rng, n, true)));
            // Exact Hermitian symmetry.
            p.real_part()
        }
    }
}

fn certify(spec: &OperatorSpec, t: &ComplexMatrix) -> Result<(), GenerateError> {
    let fail = |detail: String| {
        Err(GenerateError::KindUnsatisfied {
            kind: spec.kind,
            detail,
        })
    };
    let report = classify(t, CERTIFY_TOL)?;
    match spec.kind {
        OperatorKind::Ginibre => {}
        OperatorKind::Normal if !report.flags.normal => {
            return fail(format!("normal residual {:e}", report.residuals.normal))
        }
        OperatorKind::Quasinormal if !report.flags.quasinormal => {
            return fail(format!("quasinormal residual {:e}", report.residuals.quasinormal))
        }
        OperatorKind::PartialIsometry if !report.flags.partial_isometry => {
            return fail(format!(
                "partial isometry residual {:e}",
                report.residuals.partial_isometry
            ))
        }
        OperatorKind::RankOne => {
            let rank = polar_decompose(t, 0.0)?.rank();
            if rank != 1 {
                return fail(format!("rank {rank}"));
            }
        }
        OperatorKind::TruncatedShift | OperatorKind::Nilpotent => {
            let n = t.dim();
            let strict_lower = (0..n).all(|i| (i..n).all(|j| t[(i, j)].norm() == 0.0));
            let strict_upper = (0..n).all(|i| (0..=i).all(|j| t[(i, j)].norm() == 0.0));
            if !(strict_lower || strict_upper) {
                return fail("not strictly triangular".into());
            }
        }
        OperatorKind::Positive => {
            let min = hermitian_eigenvalues(t)[0];
            let scale = t.max_abs().max(1.0);
            if !t.is_hermitian(0.0) || min < -CERTIFY_TOL * scale {
                return fail(format!("minimum eigenvalue {min:e}"));
            }
        }
        _ => {}
    }
    Ok(())
}

/// The matrix described by `spec`, certified to belong to its kind.
pub fn generate(spec: &OperatorSpec) -> Result<ComplexMatrix, GenerateError> {
    if !(2..=32).contains(&spec.dim) {
        return Err(GenerateError::BadDimension(spec.dim));
    }
    if let Some(w) = &spec.weights {
        if w.len() + 1 != spec.dim || w.iter().any(|x| !(*x > 0.0)) {
            return Err(GenerateError::Core(mean_transform::Error::InvalidWeights(
                "need dim - 1 positive weights".into(),
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let t = build(spec, &mut rng);
    certify(spec, &t)?;
    Ok(t)
}

/// Per-item seed derived from a corpus seed (SplitMix64 finaliser).
pub fn item_seed(corpus_seed: u64, index: u64) -> u64 {
    let mut z = corpus_seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `count` specs cycling through every kind, dimensions in `2..=max_dim`.
pub fn mixed_corpus(count: usize, seed: u64, max_dim: usize) -> Vec<OperatorSpec> {
    let max_dim = max_dim.clamp(2, 32);
    (0..count)
        .map(|i| {
            let s = item_seed(seed, i as u64);
            let kind = OperatorKind::ALL[i % OperatorKind::ALL.len()];
            let dim = 2 + (s % (max_dim as u64 - 1)) as usize;
            OperatorSpec::new(kind, dim, s)
        })
        .collect()
}

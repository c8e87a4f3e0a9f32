//! Weighted-shift laboratory: truncated shift matrices, λ-mean weights, the
//! binomial formula for iterated weights, limit experiments, rank-one
//! iterates and the scaled spectral-radius check.
//!
//! Internally shifts use the lower convention `W e_n = α_n e_{n+1}` (entry
//! `(n+1, n)`). The upper convention `T = Σ α_n e_n ⊗ e_{n+1}` (entry
//! `(n, n+1)`) is the conjugate of a lower shift by the reversal permutation
//! `J`, with the weight list reversed; see [`flip`].

use serde::{Deserialize, Serialize};

use crate::error::{check_unit_interval, Error, Result};
use crate::linalg::{inner, spectral_radius, vec_norm, ComplexMatrix, C64};
use crate::transforms::lambda_mean;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `W e_n = α_n e_{n+1}`.
    #[default]
    Lower,
    /// `T e_{n+1} = α_n e_n`, the display used for complex symmetry.
    Upper,
}

/// How the weight at index `k` (0-based) is produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "lowercase")]
pub enum WeightRule {
    /// `1/(k+1)`, decreasing to 0.
    Harmonic,
    /// `ratio^k` with `ratio ∈ (0, 1]`.
    Geometric { ratio: f64 },
    Constant { value: f64 },
    /// `1 − ratio^{k+1}` with `ratio ∈ (0, 1)`, increasing to 1.
    Saturating { ratio: f64 },
    /// A finite list.
    Custom { weights: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightSequence {
    pub rule: WeightRule,
    #[serde(default)]
    pub convention: Convention,
}

/// Direction of a monotone weight sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Monotonicity {
    Constant,
    Increasing,
    Decreasing,
}

impl WeightSequence {
    pub fn new(rule: WeightRule, convention: Convention) -> Result<Self> {
        let ok = match &rule {
            WeightRule::Harmonic => true,
            WeightRule::Geometric { ratio } => *ratio > 0.0 && *ratio <= 1.0,
            WeightRule::Constant { value } => *value > 0.0 && value.is_finite(),
            WeightRule::Saturating { ratio } => *ratio > 0.0 && *ratio < 1.0,
            WeightRule::Custom { weights } => {
                !weights.is_empty() && weights.iter().all(|w| *w > 0.0 && w.is_finite())
            }
        };
        if !ok {
            return Err(Error::InvalidWeights(format!("{rule:?}")));
        }
        Ok(Self { rule, convention })
    }

    pub fn lower(weights: Vec<f64>) -> Result<Self> {
        Self::new(WeightRule::Custom { weights }, Convention::Lower)
    }

    pub fn upper(weights: Vec<f64>) -> Result<Self> {
        Self::new(WeightRule::Custom { weights }, Convention::Upper)
    }

    pub fn rule(rule: WeightRule) -> Result<Self> {
        Self::new(rule, Convention::Lower)
    }

    /// Number of available weights; `None` for unbounded rules.
    pub fn len(&self) -> Option<usize> {
        match &self.rule {
            WeightRule::Custom { weights } => Some(weights.len()),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    pub fn get(&self, k: usize) -> Result<f64> {
        Ok(match &self.rule {
            WeightRule::Harmonic => 1.0 / (k as f64 + 1.0),
            WeightRule::Geometric { ratio } => ratio.powi(k as i32),
            WeightRule::Constant { value } => *value,
            WeightRule::Saturating { ratio } => 1.0 - ratio.powi(k as i32 + 1),
            WeightRule::Custom { weights } => *weights.get(k).ok_or(Error::IndexOutOfWindow {
                index: k,
                len: weights.len(),
            })?,
        })
    }

    /// The first `len` weights.
    pub fn window(&self, len: usize) -> Result<Vec<f64>> {
        (0..len).map(|k| self.get(k)).collect()
    }

    /// Monotone direction over the first `len` weights, if any.
    pub fn monotonicity(&self, len: usize) -> Result<Option<Monotonicity>> {
        match &self.rule {
            WeightRule::Harmonic => return Ok(Some(Monotonicity::Decreasing)),
            WeightRule::Geometric { ratio } if *ratio < 1.0 => {
                return Ok(Some(Monotonicity::Decreasing))
            }
            WeightRule::Geometric { .. } | WeightRule::Constant { .. } => {
                return Ok(Some(Monotonicity::Constant))
            }
            WeightRule::Saturating { .. } => return Ok(Some(Monotonicity::Increasing)),
            WeightRule::Custom { .. } => {}
        }
        let w = self.window(len)?;
        let up = w.windows(2).all(|p| p[1] >= p[0]);
        let down = w.windows(2).all(|p| p[1] <= p[0]);
        Ok(match (up, down) {
            (true, true) => Some(Monotonicity::Constant),
            (true, false) => Some(Monotonicity::Increasing),
            (false, true) => Some(Monotonicity::Decreasing),
            (false, false) => None,
        })
    }
}

/// The `m × m` truncated shift with the first `m − 1` weights, in the
/// sequence's convention.
pub fn build_shift(alpha: &WeightSequence, m: usize) -> Result<ComplexMatrix> {
    if m == 0 {
        return Err(Error::InvalidParameter {
            name: "m",
            value: 0.0,
            range: "[1, inf)",
        });
    }
    let w = alpha.window(m - 1)?;
    let mut s = ComplexMatrix::zeros(m);
    for (k, a) in w.into_iter().enumerate() {
        let (i, j) = match alpha.convention {
            Convention::Lower => (k + 1, k),
            Convention::Upper => (k, k + 1),
        };
        s[(i, j)] = C64::new(a, 0.0);
    }
    Ok(s)
}

/// `J A J` with `J` the reversal permutation. It is a unitary similarity,
/// maps a lower shift with weights `(α_0, …, α_{m−2})` to the upper shift
/// with the reversed list, and commutes with every λ-mean transform.
pub fn flip(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.dim();
    ComplexMatrix::from_fn(n, |i, j| a[(n - 1 - i, n - 1 - j)])
}

/// The same operator in the other convention (weights reversed).
pub fn flip_weights(alpha: &WeightSequence) -> Result<WeightSequence> {
    let Some(len) = alpha.len() else {
        return Err(Error::InvalidWeights("only finite lists can be flipped".into()));
    };
    let mut w = alpha.window(len)?;
    w.reverse();
    let convention = match alpha.convention {
        Convention::Lower => Convention::Upper,
        Convention::Upper => Convention::Lower,
    };
    WeightSequence::new(WeightRule::Custom { weights: w }, convention)
}

/// First `len` weights of the λ-mean of the shift.
///
/// Lower convention: `λα_n + (1−λ)α_{n+1}`. With `truncated` the weight
/// `α_len` is taken as 0, which is what the canonical polar decomposition of
/// the `(len+1) × (len+1)` truncation produces; otherwise it is read from the
/// rule. Upper convention: `λα_n + (1−λ)α_{n−1}` with `α_{−1} = 0` in either
/// mode.
pub fn lambda_mean_weights(
    alpha: &WeightSequence,
    lambda: f64,
    len: usize,
    truncated: bool,
) -> Result<WeightSequence> {
    check_unit_interval("lambda", lambda)?;
    let mu = 1.0 - lambda;
    let w = alpha.window(len)?;
    let out: Vec<f64> = match alpha.convention {
        Convention::Lower => {
            let tail = if truncated { 0.0 } else { alpha.get(len)? };
            (0..len)
                .map(|k| lambda * w[k] + mu * w.get(k + 1).copied().unwrap_or(tail))
                .collect()
        }
        Convention::Upper => (0..len)
            .map(|k| lambda * w[k] + if k == 0 { 0.0 } else { mu * w[k - 1] })
            .collect(),
    };
    // Endpoint λ values can produce zero weights; keep them as plain data.
    Ok(WeightSequence {
        rule: WeightRule::Custom { weights: out },
        convention: alpha.convention,
    })
}

/// Weight at index `n` after `iterations` λ-mean steps on the (infinite)
/// lower shift: `Σ_i C(N, i) λ^{N−i} (1−λ)^i α_{n+i}`.
///
/// Binomial weights are formed in log space so large `N` does not overflow.
pub fn iterated_weights(
    alpha: &WeightSequence,
    lambda: f64,
    iterations: usize,
    n: usize,
) -> Result<f64> {
    check_unit_interval("lambda", lambda)?;
    if let Some(len) = alpha.len() {
        if n + iterations >= len {
            return Err(Error::IndexOutOfWindow {
                index: n + iterations,
                len,
            });
        }
    }
    if lambda == 1.0 {
        return alpha.get(n);
    }
    if lambda == 0.0 {
        return alpha.get(n + iterations);
    }
    let (ll, lm) = (lambda.ln(), (1.0 - lambda).ln());
    let big_n = iterations as f64;
    let mut log_binom = 0.0;
    let mut sum = 0.0;
    for i in 0..=iterations {
        if i > 0 {
            log_binom += ((iterations - i + 1) as f64).ln() - (i as f64).ln();
        }
        let fi = i as f64;
        let coeff = (log_binom + (big_n - fi) * ll + fi * lm).exp();
        sum += coeff * alpha.get(n + i)?;
    }
    Ok(sum)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConvergenceReport {
    pub lambda: f64,
    pub window: usize,
    pub direction: Monotonicity,
    /// `inf α` for decreasing weights, `sup α` for increasing ones.
    pub limit: f64,
    /// `(iterations, max_{n < window} |α^{(iterations)}_n − limit|)`.
    pub errors: Vec<(usize, f64)>,
    /// The error column never increases by more than `1e-12`.
    pub nonincreasing: bool,
}

impl ConvergenceReport {
    pub fn final_error(&self) -> f64 {
        self.errors.last().map_or(0.0, |e| e.1)
    }
}

/// Tracks how the iterated weights approach `inf α` (decreasing weights) or
/// `sup α` (increasing weights) for `iterations = 0..=max_iterations`.
pub fn convergence_experiment(
    alpha: &WeightSequence,
    lambda: f64,
    max_iterations: usize,
    window: usize,
) -> Result<ConvergenceReport> {
    check_unit_interval("lambda", lambda)?;
    if lambda == 1.0 {
        return Err(Error::InvalidParameter {
            name: "lambda",
            value: lambda,
            range: "[0, 1)",
        });
    }
    if window == 0 {
        return Err(Error::InvalidParameter {
            name: "window",
            value: 0.0,
            range: "[1, inf)",
        });
    }
    let span = window + max_iterations;
    let direction = alpha
        .monotonicity(span)?
        .ok_or_else(|| Error::InvalidWeights("weights are not monotone".into()))?;
    let limit = match (&alpha.rule, direction) {
        (WeightRule::Harmonic, _) => 0.0,
        (WeightRule::Geometric { ratio }, _) if *ratio < 1.0 => 0.0,
        (WeightRule::Saturating { .. }, _) => 1.0,
        (WeightRule::Custom { weights }, Monotonicity::Decreasing) => {
            weights.iter().copied().fold(f64::INFINITY, f64::min)
        }
        (WeightRule::Custom { weights }, Monotonicity::Increasing) => {
            weights.iter().copied().fold(0.0, f64::max)
        }
        _ => alpha.get(0)?,
    };
    let mut errors = Vec::with_capacity(max_iterations + 1);
    for it in 0..=max_iterations {
        let mut worst: f64 = 0.0;
        for n in 0..window {
            worst = worst.max((iterated_weights(alpha, lambda, it, n)? - limit).abs());
        }
        errors.push((it, worst));
    }
    let nonincreasing = errors.windows(2).all(|p| p[1].1 <= p[0].1 + 1e-12);
    Ok(ConvergenceReport {
        lambda,
        window,
        direction,
        limit,
        errors,
        nonincreasing,
    })
}

/// The rank-one operator `x ⊗ y : z ↦ ⟨z, y⟩x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankOnePair {
    pub x: Vec<C64>,
    pub y: Vec<C64>,
}

impl RankOnePair {
    pub fn new(x: Vec<C64>, y: Vec<C64>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                found: y.len(),
            });
        }
        Ok(Self { x, y })
    }

    pub fn matrix(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.x, &self.y).expect("lengths checked")
    }

    /// `ω(M_λ^{(n)}(x ⊗ y))`:
    /// `(|⟨x,y⟩| + sqrt(λ^{2n}‖x‖²‖y‖² + (1−λ^{2n})|⟨x,y⟩|²)) / 2`.
    pub fn iterate_radius(&self, lambda: f64, n: usize) -> f64 {
        let c = inner(&self.x, &self.y).norm();
        let (nx, ny) = (vec_norm(&self.x), vec_norm(&self.y));
        let l2n = lambda.powi(2 * n as i32);
        0.5 * (c + (l2n * nx * nx * ny * ny + (1.0 - l2n) * c * c).sqrt())
    }
}

/// `M_λ^{(n)}(x ⊗ y) = (λⁿx + (1−λⁿ)⟨x,y⟩/‖y‖² · y) ⊗ y`, returned as the new
/// pair.
pub fn rank_one_iterate(p: &RankOnePair, lambda: f64, n: usize) -> Result<RankOnePair> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::InvalidParameter {
            name: "lambda",
            value: lambda,
            range: "(0, 1)",
        });
    }
    let ny2 = vec_norm(&p.y).powi(2);
    if ny2 == 0.0 {
        return Err(Error::InvalidWeights("y must be nonzero".into()));
    }
    let ln = lambda.powi(n as i32);
    let c = inner(&p.x, &p.y) * ((1.0 - ln) / ny2);
    let x = p.x.iter().zip(&p.y).map(|(xi, yi)| xi * ln + yi * c).collect();
    RankOnePair::new(x, p.y.clone())
}

/// `2√(λ−λ²)·r(T) ≤ r(M_λ(T)) + tol`.
pub fn scaled_spectrum_check(t: &ComplexMatrix, lambda: f64, tol: f64) -> Result<bool> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::InvalidParameter {
            name: "lambda",
            value: lambda,
            range: "(0, 1)",
        });
    }
    let factor = 2.0 * (lambda - lambda * lambda).sqrt();
    let lhs = factor * spectral_radius(t)?;
    let rhs = spectral_radius(&lambda_mean(t, lambda)?)?;
    Ok(lhs <= rhs + tol)
}

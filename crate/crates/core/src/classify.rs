//! Operator-class predicates with one relative tolerance, plus the weight
//! criteria for truncated weighted shifts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, operator_norm, ComplexMatrix};

/// Default relative tolerance for [`classify`].
pub const CLASS_TOL: f64 = 1e-8;

/// Relative slack for comparisons between shift weights.
const WEIGHT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassFlags {
    pub normal: bool,
    pub quasinormal: bool,
    pub hyponormal: bool,
    pub partial_isometry: bool,
    pub isometry: bool,
    pub unitary: bool,
}

/// Residuals behind each flag, each divided by the power of `‖T‖` that makes
/// it scale invariant (the isometry residuals are absolute).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassResiduals {
    /// `‖TT* − T*T‖ / ‖T‖²`
    pub normal: f64,
    /// `‖T(T*T) − (T*T)T‖ / ‖T‖³`
    pub quasinormal: f64,
    /// `max(0, −λ_min(T*T − TT*)) / ‖T‖²`
    pub hyponormal: f64,
    /// `‖TT*T − T‖ / max(‖T‖, ‖T‖³)`
    pub partial_isometry: f64,
    /// `‖T*T − I‖`
    pub isometry: f64,
    /// `max(‖T*T − I‖, ‖TT* − I‖)`
    pub unitary: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub flags: ClassFlags,
    pub residuals: ClassResiduals,
    pub tol: f64,
}

/// Classifies `t`. Each flag is `residual ≤ tol`, then the chain
/// normal ⇒ quasinormal ⇒ hyponormal and unitary ⇒ isometry ⇒ partial
/// isometry is closed upward, so a flag can be set by a stronger one even
/// when its own residual sits just above `tol`.
pub fn classify(t: &ComplexMatrix, tol: f64) -> Result<ClassReport> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "tol",
            value: tol,
            range: "(0, inf)",
        });
    }
    let n = t.dim();
    let id = ComplexMatrix::identity(n);
    let ts = t.adjoint();
    let gram = &ts * t;
    let co_gram = t * &ts;
    let norm = operator_norm(t);
    let isometry = operator_norm(&(&gram - &id));
    let co_isometry = operator_norm(&(&co_gram - &id));

    let residuals = if norm == 0.0 {
        ClassResiduals {
            normal: 0.0,
            quasinormal: 0.0,
            hyponormal: 0.0,
            partial_isometry: 0.0,
            isometry,
            unitary: isometry.max(co_isometry),
        }
    } else {
        let n2 = norm * norm;
        let self_comm = &gram - &co_gram;
        let quasi = &(t * &gram) - &(&gram * t);
        let min_eig = hermitian_eigenvalues(&self_comm)[0];
        let partial = &(&co_gram * t) - t;
        ClassResiduals {
            normal: operator_norm(&self_comm) / n2,
            quasinormal: operator_norm(&quasi) / (n2 * norm),
            hyponormal: (-min_eig).max(0.0) / n2,
            partial_isometry: operator_norm(&partial) / norm.max(n2 * norm),
            isometry,
            unitary: isometry.max(co_isometry),
        }
    };

    let normal = residuals.normal <= tol;
    let quasinormal = normal || residuals.quasinormal <= tol;
    let hyponormal = quasinormal || residuals.hyponormal <= tol;
    let unitary = residuals.unitary <= tol;
    let isometry = unitary || residuals.isometry <= tol;
    let partial_isometry = isometry || residuals.partial_isometry <= tol;
    Ok(ClassReport {
        flags: ClassFlags {
            normal,
            quasinormal,
            hyponormal,
            partial_isometry,
            isometry,
            unitary,
        },
        residuals,
        tol,
    })
}

pub fn is_quasinormal(t: &ComplexMatrix) -> Result<bool> {
    Ok(classify(t, CLASS_TOL)?.flags.quasinormal)
}

fn weight_scale(alpha: &[f64]) -> f64 {
    alpha.iter().fold(0.0f64, |m, a| m.max(a.abs()))
}

fn check_positive(alpha: &[f64]) -> Result<()> {
    if alpha.iter().all(|a| a.is_finite() && *a > 0.0) {
        Ok(())
    } else {
        Err(Error::InvalidWeights("weights must be finite and positive".into()))
    }
}

/// A unilateral weighted shift is hyponormal iff its weights are
/// nondecreasing; decided here over the supplied window.
pub fn shift_is_hyponormal(alpha: &[f64]) -> Result<bool> {
    check_positive(alpha)?;
    let slack = WEIGHT_TOL * weight_scale(alpha);
    Ok(alpha.windows(2).all(|w| w[1] >= w[0] - slack))
}

/// Weight-level criterion for hyponormality of `M_λ(W_α)`:
/// `λ(α_n − α_{n+1}) ≤ (1−λ)(α_{n+2} − α_{n+1})` for every `n` with
/// `n + 2` inside the window.
pub fn lambda_mean_shift_hyponormal(alpha: &[f64], lambda: f64) -> Result<bool> {
    check_positive(alpha)?;
    crate::error::check_unit_interval("lambda", lambda)?;
    let slack = WEIGHT_TOL * weight_scale(alpha);
    Ok(alpha
        .windows(3)
        .all(|w| lambda * (w[0] - w[1]) - (1.0 - lambda) * (w[2] - w[1]) <= slack))
}

/// Complex symmetry of the truncated shift with weights `α_1..α_{m−1}`:
/// the moduli read the same in both directions.
pub fn shift_cs_criterion(alpha: &[f64]) -> Result<bool> {
    if alpha.is_empty() || alpha.iter().any(|a| *a == 0.0 || !a.is_finite()) {
        return Err(Error::InvalidWeights("weights must be finite and nonzero".into()));
    }
    let slack = WEIGHT_TOL * weight_scale(alpha);
    let l = alpha.len();
    Ok((0..l / 2).all(|i| (alpha[i].abs() - alpha[l - 1 - i].abs()).abs() <= slack))
}

/// Condition for `M_λ(T)` to be complex symmetric, where `T` is the upper
/// truncated shift `Σ α_n e_n ⊗ e_{n+1}` on `C^m` and `alpha` holds
/// `α_1..α_{m−1}`:
///
/// `λ(|α_1| − |α_{m−1}|) = (1−λ)|α_{m−2}|` and
/// `λ(|α_n| − |α_{m−n}|) = (1−λ)(|α_{m−n−1}| − |α_{n−1}|)` for `2 ≤ n ≤ m−2`.
pub fn lambda_mean_cs_criterion(alpha: &[f64], lambda: f64) -> Result<bool> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::InvalidParameter {
            name: "lambda",
            value: lambda,
            range: "(0, 1)",
        });
    }
    let m = alpha.len() + 1;
    if m < 3 {
        return Err(Error::InvalidWeights("need at least two weights".into()));
    }
    // 1-based moduli with |α_0| = 0.
    let a = |k: usize| if k == 0 { 0.0 } else { alpha[k - 1].abs() };
    if a(1) == 0.0 || (1..=m - 2).any(|n| lambda * a(n + 1) + (1.0 - lambda) * a(n) == 0.0) {
        return Err(Error::InvalidWeights(
            "first weight and every transformed weight must be nonzero".into(),
        ));
    }
    let slack = WEIGHT_TOL * weight_scale(alpha);
    let mu = 1.0 - lambda;
    let first = (lambda * (a(1) - a(m - 1)) - mu * a(m - 2)).abs() <= slack;
    let rest = (2..=m - 2)
        .all(|n| (lambda * (a(n) - a(m - n)) - mu * (a(m - n - 1) - a(n - 1))).abs() <= slack);
    Ok(first && rest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::C64;

    #[test]
    fn unitary_sets_every_flag() {
        let (c, s) = (0.6, 0.8);
        let u = ComplexMatrix::from_rows(&[
            vec![C64::new(c, 0.0), C64::new(0.0, -s)],
            vec![C64::new(0.0, -s), C64::new(c, 0.0)],
        ])
        .unwrap();
        let r = classify(&u, CLASS_TOL).unwrap();
        let f = r.flags;
        assert!(f.normal && f.quasinormal && f.hyponormal);
        assert!(f.partial_isometry && f.isometry && f.unitary);
    }

    #[test]
    fn column_pattern_is_not_quasinormal() {
        let t = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 1.0]]);
        let r = classify(&t, CLASS_TOL).unwrap();
        assert!(!r.flags.quasinormal && !r.flags.normal);
        // T*T = [[0,0],[0,2]], so T(T*T) − (T*T)T = [[0,2],[0,0]] with norm 2.
        let want = 2.0 / 2f64.sqrt().powi(3);
        assert!((r.residuals.quasinormal - want).abs() < 1e-14);
    }

    #[test]
    fn zero_matrix_is_normal() {
        let r = classify(&ComplexMatrix::zeros(3), CLASS_TOL).unwrap();
        assert!(r.flags.normal && r.flags.partial_isometry && !r.flags.isometry);
    }

    #[test]
    fn truncated_constant_shift() {
        let s = ComplexMatrix::from_real_rows(&[[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]);
        let r = classify(&s, CLASS_TOL).unwrap();
        assert!(!r.flags.quasinormal && !r.flags.hyponormal);
        assert!(r.flags.partial_isometry && !r.flags.isometry);
    }

    #[test]
    fn shift_hyponormality() {
        assert!(shift_is_hyponormal(&[1.0, 2.0, 3.0]).unwrap());
        assert!(!shift_is_hyponormal(&[1.0, 0.5, 1.0, 1.0]).unwrap());
        assert!(shift_is_hyponormal(&[0.0, 1.0]).is_err());
        assert!(lambda_mean_shift_hyponormal(&[1.0, 0.5, 1.0, 1.0, 1.0], 1.0 / 3.0).unwrap());
    }

    #[test]
    fn palindromes() {
        assert!(shift_cs_criterion(&[1.0, 2.0, 2.0, 1.0]).unwrap());
        assert!(shift_cs_criterion(&[3.0]).unwrap());
        assert!(!shift_cs_criterion(&[0.5, 1.5, 2.0, 1.5]).unwrap());
    }

    #[test]
    fn lambda_mean_complex_symmetry() {
        for lam in [0.2, 0.5, 0.8] {
            assert!(!lambda_mean_cs_criterion(&[1.0, 2.0, 2.0, 1.0], lam).unwrap());
            assert!(lambda_mean_cs_criterion(&[1.0 / lam, 1.0, 1.0], lam).unwrap());
        }
        assert!(lambda_mean_cs_criterion(&[1.0], 0.5).is_err());
        assert!(lambda_mean_cs_criterion(&[1.0, 1.0], 0.0).is_err());
    }
}

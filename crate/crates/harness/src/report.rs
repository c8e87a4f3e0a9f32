//! Check registry and the aggregated verification report.

use serde::{Deserialize, Serialize};

use crate::generate::OperatorKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum CheckKind {
    /// `lhs ≤ rhs`; margin is `(rhs − lhs) / scale` from certified brackets.
    Inequality,
    /// Two sides should coincide; margin is minus the scaled discrepancy.
    Identity,
    /// Two predicates of an "iff" agree; margin is 0 or −1.
    Agreement,
}

/// A named check and the result it exercises, stated by content.
#[derive(Debug, Clone, Copy)]
pub struct CheckDef {
    pub name: &'static str,
    pub anchor: &'static str,
    pub kind: CheckKind,
}

macro_rules! checks {
    ($($id:ident = $name:literal, $kind:ident, $anchor:literal;)*) => {
        /// Indices into [`REGISTRY`].
        #[allow(non_camel_case_types, clippy::upper_case_acronyms)]
        #[derive(Debug, Clone, Copy, PartialEq, Eq)]
        #[repr(usize)]
        pub enum Check { $($id,)* }

        pub const REGISTRY: &[CheckDef] = &[
            $(CheckDef { name: $name, anchor: $anchor, kind: CheckKind::$kind },)*
        ];
    };
}

checks! {
    RadiusLower = "radius-lower-bound", Inequality,
        "max{r(T), ‖T‖/2} ≤ ω(T)";
    RadiusUpper = "radius-upper-bound", Inequality,
        "ω(T) ≤ ‖T‖";
    DuggalTranslate = "duggal-translate-contraction", Inequality,
        "‖T^D − γI‖ ≤ ‖T − γI‖ for sampled γ with |γ| ≤ 2‖T‖";
    DuggalNorm = "duggal-norm-contraction", Inequality,
        "‖T^D‖ ≤ ‖T‖";
    DuggalRange = "duggal-range-inclusion", Inequality,
        "closure W(T^D) ⊆ closure W(T), support functions on a θ grid";
    MeanIntegralLower = "mean-integral-lower", Inequality,
        "ω(T̂) ≤ ∫₀¹ ω(M_t(T)) dt";
    MeanIntegralUpper = "mean-integral-upper", Inequality,
        "∫₀¹ ω(M_t(T)) dt ≤ ¼(ω(T) + ω(T^D) + 2ω(T̂))";
    MeanIntegralRadius = "mean-integral-vs-radius", Inequality,
        "¼(ω(T) + ω(T^D) + 2ω(T̂)) ≤ ω(T)";
    MeanAttainment = "mean-norm-attainment", Agreement,
        "‖T̂‖ = ‖T‖ iff ω(T*T^D) = ‖T‖²";
    FlagChain = "class-flag-chain", Agreement,
        "normal ⇒ quasinormal ⇒ hyponormal on the computed flags";
    LambdaAffine = "lambda-affine", Identity,
        "M_λ(T) = λM_1(T) + (1−λ)M_0(T), with M_1 = T and M_0 = T^D exactly";
    FixedPoint = "quasinormal-fixed-point", Agreement,
        "T quasinormal iff M_λ(T) = T, λ ∈ [0, 1)";
    DualFixedPoint = "quasinormal-duggal-fixed-point", Agreement,
        "T quasinormal iff M_λ(T) = T^D, λ ∈ (0, 1]";
    ZeroEquivalence = "zero-equivalence", Agreement,
        "‖M_λ(T)‖ = 0 iff ‖T‖ = 0, λ ∈ (0, 1]";
    NormHeinz = "norm-heinz-lower", Inequality,
        "2√(λ−λ²)‖T̃‖ ≤ ‖M_λ(T)‖";
    NormTriangle = "norm-triangle-upper", Inequality,
        "‖M_λ(T)‖ ≤ λ‖T‖ + (1−λ)‖T^D‖";
    NormSpectral = "norm-spectral-lower", Inequality,
        "2√(λ−λ²) r(T) ≤ ‖M_λ(T)‖";
    NormContraction = "norm-contraction", Inequality,
        "‖M_λ(T)‖ ≤ ‖T‖";
    NormMixedSchwarz = "norm-mixed-schwarz", Inequality,
        "‖M_λ(T)‖ ≤ ½(‖λ|T| + (1−λ)|T^D|‖ + ‖λ|T*| + (1−λ)|(T^D)*|‖)";
    NormMixedSchwarzTriangle = "norm-mixed-schwarz-vs-triangle", Inequality,
        "½(‖λ|T| + (1−λ)|T^D|‖ + ‖λ|T*| + (1−λ)|(T^D)*|‖) ≤ λ‖T‖ + (1−λ)‖T^D‖";
    NormQLambda = "norm-q-lambda", Inequality,
        "‖M_λ‖⁴ ≤ ‖Q_λ‖² + 4(λ−λ²)²ω²(T*T^D) + 2(λ−λ²)ω(Q_λT*T^D + T*T^DQ_λ)";
    NormQLambdaTriangle = "norm-q-lambda-vs-triangle", Inequality,
        "the Q_λ bound is at most (λ‖T‖ + (1−λ)‖T^D‖)⁴";
    RadiusAluthge = "radius-aluthge-lower", Inequality,
        "2√(λ−λ²) ω(T̃) ≤ ω(M_λ(T))";
    RadiusConvex = "radius-convex-upper", Inequality,
        "ω(M_λ(T)) ≤ λω(T) + (1−λ)ω(T^D)";
    RadiusSpectral = "radius-spectral-lower", Inequality,
        "2√(λ−λ²) r(T) ≤ ω(M_λ(T))";
    RadiusContraction = "radius-contraction", Inequality,
        "ω(M_λ(T)) ≤ ω(T)";
    RangeInclusion = "range-inclusion", Inequality,
        "closure W(M_λ(T)) ⊆ closure W(T), support functions on a θ grid";
    BullenLower = "bullen-lower", Inequality,
        "ω(M_λ(T)) ≤ 2∫₀¹ ω(λsT + (1−λ)(1−s)T^D) ds";
    BullenUpper = "bullen-upper", Inequality,
        "2∫₀¹ ω(λsT + (1−λ)(1−s)T^D) ds ≤ ½(λω(T) + (1−λ)ω(T^D) + ω(M_λ(T)))";
    CrossTermUpper = "cross-term-upper", Inequality,
        "ω(M_λ) ≤ ½(a + b) + ½√((a − b)² + 4(λ−λ²) sup_θ‖Re(e^{iθ}T)Re(e^{iθ}T^D)‖), a = λω(T), b = (1−λ)ω(T^D)";
    CrossTermConvex = "cross-term-vs-convex", Inequality,
        "the cross-term bound is at most λω(T) + (1−λ)ω(T^D)";
    UnitaryCovariance = "unitary-covariance", Identity,
        "M_λ^{(k)}(VTV*) = V M_λ^{(k)}(T) V* for unitary V, k = 1..4";
    NormAttainment = "norm-attainment", Agreement,
        "‖M_λ(T)‖ = ‖T‖ iff max over unit x of Re⟨Tx, T^D x⟩ equals ‖T‖²";
    TriangleScaling = "triangle-equality-scaling", Agreement,
        "‖T̂‖ = ½(‖T‖ + ‖T^D‖) iff ‖M_λ(T)‖ = λ‖T‖ + (1−λ)‖T^D‖";
    TwoMaxEquality = "two-max-equality", Agreement,
        "‖M_λ(T)‖ = 2max{λ‖T‖, (1−λ)‖T^D‖} iff ω(T*T^D) = max{λ²‖T‖², (1−λ)²‖T^D‖²}/(λ−λ²)";
    ScaledSpectrum = "scaled-spectral-radius", Inequality,
        "2√(λ−λ²) r(T) ≤ r(M_λ(T)) for shifts, nilpotent and quasinormal operators";
    ShiftWeights = "shift-weight-closed-form", Identity,
        "M_λ of a truncated shift is the shift with weights λα_n + (1−λ)α_{n+1}, α_{m−1} = 0";
    ShiftHyponormal = "shift-hyponormal-criterion", Agreement,
        "M_λ(W_α) hyponormal iff λ(α_n − α_{n+1}) ≤ (1−λ)(α_{n+2} − α_{n+1}) for all n";
    ShiftComplexSymmetry = "shift-complex-symmetry-criterion", Agreement,
        "weight condition for complex symmetry of M_λ(T) iff the λ-mean weights are palindromic";
    RankOneMatrix = "rank-one-iterate-closed-form", Identity,
        "M_λ^{(n)}(x⊗y) = (λⁿx + (1−λⁿ)⟨x,y⟩/‖y‖² y) ⊗ y";
    RankOneRadius = "rank-one-iterate-radius", Identity,
        "ω(M_λ^{(n)}(x⊗y)) = (|⟨x,y⟩| + √(λ^{2n}‖x‖²‖y‖² + (1−λ^{2n})|⟨x,y⟩|²))/2";
    JordanEndpoint = "jordan-duggal-endpoint", Identity,
        "for the 2×2 Jordan block, ‖M_0(T)‖ = 0 while ‖T‖ = 1";
    EvaluationError = "evaluation-error", Agreement,
        "every quantity could be evaluated";
}

impl Check {
    pub fn def(self) -> &'static CheckDef {
        &REGISTRY[self as usize]
    }
}

/// One evaluation of a check on one (operator, λ) pair.
#[derive(Debug, Clone, Copy)]
pub struct Sample {
    pub check: Check,
    pub lhs: f64,
    pub rhs: f64,
    /// Signed, scaled margin; the check passes when `margin ≥ −tol`.
    pub margin: f64,
    pub lambda: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct WorstCase {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub item: usize,
    pub kind: OperatorKind,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckSummary {
    pub name: String,
    pub theorem_anchor: String,
    pub kind: CheckKind,
    pub evaluations: usize,
    pub failures: usize,
    /// Smallest margin seen, with the instance that produced it.
    pub worst: Option<WorstCase>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Tolerances {
    /// Checks pass when `margin ≥ −margin`.
    pub margin: f64,
    /// Relative bracket width requested from each radius gauge.
    pub gauge: f64,
    /// Relative bracket width of the radius integrals.
    pub quadrature: f64,
    pub class: f64,
    pub equality: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Timing {
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyReport {
    pub corpus_size: usize,
    pub pairs: usize,
    pub seed: u64,
    pub lambda_grid: Vec<f64>,
    pub random_lambdas: usize,
    pub tolerances: Tolerances,
    pub checks: Vec<CheckSummary>,
    pub failures: usize,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl VerifyReport {
    pub fn check(&self, name: &str) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Folds samples into per-check summaries in registry order.
#[derive(Debug, Clone)]
pub struct Aggregator {
    tol: f64,
    summaries: Vec<CheckSummary>,
}

impl Aggregator {
    pub fn new(tol: f64) -> Self {
        let summaries = REGISTRY
            .iter()
            .map(|d| CheckSummary {
                name: d.name.to_string(),
                theorem_anchor: d.anchor.to_string(),
                kind: d.kind,
                evaluations: 0,
                failures: 0,
                worst: None,
                pass: true,
            })
            .collect();
        Self { tol, summaries }
    }

    pub fn add(&mut self, item: usize, kind: OperatorKind, seed: u64, s: &Sample) {
        let sum = &mut self.summaries[s.check as usize];
        sum.evaluations += 1;
        // NaN margins count as failures.
        let ok = s.margin >= -self.tol;
        if !ok {
            sum.failures += 1;
            sum.pass = false;
        }
        let worse = match &sum.worst {
            None => true,
            Some(w) => !(s.margin >= w.margin),
        };
        if worse {
            sum.worst = Some(WorstCase {
                lhs: s.lhs,
                rhs: s.rhs,
                margin: s.margin,
                item,
                kind,
                seed,
                lambda: s.lambda,
            });
        }
    }

    pub fn finish(self) -> Vec<CheckSummary> {
        self.summaries
    }
}

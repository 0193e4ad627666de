//! Hardness-of-approximation bounds and their Monte Carlo verification.
//!
//! The closed forms quantify how small a fraction of diagonal unitaries
//! (resp. maximally coherent states) admits sub-exponential-size ε-circuits:
//! counting reachable ε-balls against the Haar measure of the diagonal group
//! gives `(arcsin(ε/2))^{d^n}`-type bounds, and Hoeffding inequalities for
//! Steinhaus/Rademacher sums give the `exp(−d^n/16)`-type bounds for coherent
//! states.
//!
//! Quantities of the form x^{d^n} underflow f64 almost immediately, so every
//! result carries a log₁₀ companion computed in log space.
//!
//! The Monte Carlo side ([`mc_ball_measure`], [`mc_overlap_tail`]) verifies
//! the per-ball ingredients at small dimension, where the events have
//! observable probability. Bounds are provable, so a violation beyond five
//! standard errors signals an implementation bug, not bad luck.

mod mc;

pub use mc::{
    ball_bound, ball_hits, ball_report_from_hits, check_ball_run, check_overlap_run,
    exhaustive_rademacher_hits, mc_ball_measure, mc_overlap_tail, overlap_bound, overlap_hits,
    overlap_report_from_hits, McReport, OverlapVariant, SampleMode, Verdict, BALL_STREAM,
    OVERLAP_STREAM,
};

use alloc::string::String;
use core::f64::consts::{E, PI};
use core::fmt;
#[cfg(not(feature = "std"))]
use num_traits::Float;

/// Errors from bound evaluation and Monte Carlo preconditions.
#[derive(Debug, Clone, PartialEq)]
pub enum HardnessError {
    InvalidQuery(String),
    /// ε outside the admissible range of the requested bound.
    EpsilonOutOfRange { epsilon: f64, allowed: &'static str },
    /// Monte Carlo dimension outside the feasible window.
    DimensionOutOfRange { dim: usize, min: usize, max: usize },
    TooFewSamples { samples: u64, min: u64 },
    /// Exhaustive enumeration is only available for Rademacher signs at
    /// manageable dimension.
    ExhaustiveUnavailable(String),
}

impl fmt::Display for HardnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HardnessError::InvalidQuery(msg) => write!(f, "{msg}"),
            HardnessError::EpsilonOutOfRange { epsilon, allowed } => {
                write!(f, "ε = {epsilon} outside admissible range {allowed}")
            }
            HardnessError::DimensionOutOfRange { dim, min, max } => {
                write!(f, "dimension {dim} outside [{min}, {max}]")
            }
            HardnessError::TooFewSamples { samples, min } => {
                write!(f, "{samples} samples below the minimum {min}")
            }
            HardnessError::ExhaustiveUnavailable(msg) => write!(f, "{msg}"),
        }
    }
}

impl core::error::Error for HardnessError {}

/// Parameters of a hardness question: local dimension d, sites n, gate-set
/// cardinality k, approximation quality ε.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HardnessQuery {
    pub d: u32,
    pub n: u32,
    pub k: u32,
    pub epsilon: f64,
}

impl HardnessQuery {
    pub fn new(d: u32, n: u32, k: u32, epsilon: f64) -> Result<Self, HardnessError> {
        if d < 2 || n < 2 || k < 1 {
            return Err(HardnessError::InvalidQuery(alloc::format!(
                "need d ≥ 2, n ≥ 2, k ≥ 1; got d={d}, n={n}, k={k}"
            )));
        }
        if !epsilon.is_finite() || epsilon < 0.0 {
            return Err(HardnessError::InvalidQuery(alloc::format!(
                "ε must be finite and ≥ 0, got {epsilon}"
            )));
        }
        Ok(HardnessQuery { d, n, k, epsilon })
    }

    /// d^n as a float (exact for the sizes where it matters).
    pub fn dim_f64(&self) -> f64 {
        (self.d as f64).powi(self.n as i32)
    }
}

/// Result of [`diagonal_bound`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagonalBound {
    /// The sub-exponential circuit-size threshold
    /// g = (ln(π/2)/(2k)) · d^n / ln n.
    pub g: f64,
    /// Haar measure of ε-approximable diagonal unitaries: (arcsin(ε/2))^{d^n}.
    pub measure_bound: f64,
    pub log10_measure_bound: f64,
}

/// Measure of diagonal unitaries approximable by circuits of size ≤ g.
pub fn diagonal_bound(q: &HardnessQuery) -> Result<DiagonalBound, HardnessError> {
    if !(0.0..1.0).contains(&q.epsilon) {
        return Err(HardnessError::EpsilonOutOfRange {
            epsilon: q.epsilon,
            allowed: "[0, 1)",
        });
    }
    let dim = q.dim_f64();
    let g = ((PI / 2.0).ln() / (2.0 * q.k as f64)) * dim / (q.n as f64).ln();
    let base = (q.epsilon / 2.0).asin();
    let (measure_bound, log10_measure_bound) = power_with_log10(base, dim);
    Ok(DiagonalBound {
        g,
        measure_bound,
        log10_measure_bound,
    })
}

/// Result of [`sign_diagonal_bound`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignDiagonalBound {
    /// Fraction of ±1 diagonal unitaries approximable at size ≤ g: (π/4)^{d^n}.
    pub bound: f64,
    pub log10_bound: f64,
}

/// Fraction of sign-diagonal unitaries within reach of size-g circuits.
///
/// Valid for ball radius ε < 1, where distinct sign-diagonals (operator
/// distance 2) cannot share a ball.
pub fn sign_diagonal_bound(q: &HardnessQuery) -> Result<SignDiagonalBound, HardnessError> {
    if q.epsilon >= 1.0 {
        return Err(HardnessError::EpsilonOutOfRange {
            epsilon: q.epsilon,
            allowed: "[0, 1)",
        });
    }
    let (bound, log10_bound) = power_with_log10(PI / 4.0, q.dim_f64());
    Ok(SignDiagonalBound { bound, log10_bound })
}

/// Result of [`coherent_bound`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentBound {
    /// Largest circuit size the bound covers: d^n / (16·k·ln n).
    pub g_cap: f64,
    /// Measure of ε-approximable maximally coherent states: 4e·exp(−d^n/16).
    pub bound: f64,
    pub log10_bound: f64,
    /// Fraction of ±-amplitude coherent states: 2·exp(−d^n/8); only valid for
    /// ε ≤ 3/4.
    pub sign_bound: Option<f64>,
    pub log10_sign_bound: Option<f64>,
}

/// Sign-coherent-state bound 2·exp(−d^n/8); errors when ε leaves [0, 3/4].
pub fn coherent_sign_bound(q: &HardnessQuery) -> Result<f64, HardnessError> {
    if !(0.0..=0.75).contains(&q.epsilon) {
        return Err(HardnessError::EpsilonOutOfRange {
            epsilon: q.epsilon,
            allowed: "[0, 3/4]",
        });
    }
    Ok(2.0 * (-q.dim_f64() / 8.0).exp())
}

/// Measure bounds for approximable maximally coherent states.
pub fn coherent_bound(q: &HardnessQuery) -> Result<CoherentBound, HardnessError> {
    if !(0.0..=1.0).contains(&q.epsilon) {
        return Err(HardnessError::EpsilonOutOfRange {
            epsilon: q.epsilon,
            allowed: "[0, 1]",
        });
    }
    let dim = q.dim_f64();
    let g_cap = dim / (16.0 * q.k as f64 * (q.n as f64).ln());
    let log10_bound = (4.0 * E).log10() + (-dim / 16.0) * core::f64::consts::LOG10_E;
    let bound = 4.0 * E * (-dim / 16.0).exp();
    let sign_bound = coherent_sign_bound(q).ok();
    let log10_sign_bound = sign_bound
        .map(|_| 2.0f64.log10() + (-dim / 8.0) * core::f64::consts::LOG10_E);
    Ok(CoherentBound {
        g_cap,
        bound,
        log10_bound,
        sign_bound,
        log10_sign_bound,
    })
}

/// Result of [`steinhaus_tail`]: the Hoeffding chain for Steinhaus sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteinhausTail {
    /// Overlap threshold τ = 1 − ε²/2.
    pub tau: f64,
    /// D·τ² · exp(1 − D·τ²) — the sharp form.
    pub bound: f64,
    pub log10_bound: f64,
    /// (D/4)·e^{1−D/4} — weakened by τ ≥ 1/2.
    pub weakened_quarter: f64,
    pub log10_weakened_quarter: f64,
    /// 4·exp(1 − 3D/16) — weakened once more.
    pub weakened_constant: f64,
    pub log10_weakened_constant: f64,
}

/// Tail bound ℙ[|Σₖ e^{iθₖ}/D| ≥ 1 − ε²/2] for i.i.d. uniform phases.
pub fn steinhaus_tail(dim: u64, epsilon: f64) -> Result<SteinhausTail, HardnessError> {
    if dim < 1 {
        return Err(HardnessError::DimensionOutOfRange {
            dim: 0,
            min: 1,
            max: usize::MAX,
        });
    }
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(HardnessError::EpsilonOutOfRange {
            epsilon,
            allowed: "[0, 1]",
        });
    }
    let d = dim as f64;
    let tau = 1.0 - epsilon * epsilon / 2.0;
    let u2 = d * tau * tau;
    let log10_e = core::f64::consts::LOG10_E;
    let bound = u2 * (1.0 - u2).exp();
    let log10_bound = u2.log10() + (1.0 - u2) * log10_e;
    let weakened_quarter = (d / 4.0) * (1.0 - d / 4.0).exp();
    let log10_weakened_quarter = (d / 4.0).log10() + (1.0 - d / 4.0) * log10_e;
    let weakened_constant = 4.0 * (1.0 - 3.0 * d / 16.0).exp();
    let log10_weakened_constant = 4.0f64.log10() + (1.0 - 3.0 * d / 16.0) * log10_e;
    Ok(SteinhausTail {
        tau,
        bound,
        log10_bound,
        weakened_quarter,
        log10_weakened_quarter,
        weakened_constant,
        log10_weakened_constant,
    })
}

/// Hoeffding tail for Rademacher sums: ℙ[|Σₖ sₖ/D| ≥ τ] ≤ 2·exp(−D·τ²/2).
pub fn rademacher_tail_bound(dim: u64, epsilon: f64) -> Result<f64, HardnessError> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(HardnessError::EpsilonOutOfRange {
            epsilon,
            allowed: "[0, 1]",
        });
    }
    let tau = 1.0 - epsilon * epsilon / 2.0;
    Ok(2.0 * (-(dim as f64) * tau * tau / 2.0).exp())
}

/// x^e together with log₁₀(x^e), safe against underflow.
fn power_with_log10(x: f64, e: f64) -> (f64, f64) {
    if x <= 0.0 {
        return (0.0, f64::NEG_INFINITY);
    }
    let log10 = e * x.log10();
    ((log10 * core::f64::consts::LN_10).exp(), log10)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_PI_6;

    fn q(d: u32, n: u32, k: u32, eps: f64) -> HardnessQuery {
        HardnessQuery::new(d, n, k, eps).unwrap()
    }

    #[test]
    fn diagonal_bound_at_eps_zero() {
        let b = diagonal_bound(&q(2, 4, 2, 0.0)).unwrap();
        assert_eq!(b.measure_bound, 0.0);
        assert_eq!(b.log10_measure_bound, f64::NEG_INFINITY);
    }

    #[test]
    fn diagonal_bound_near_eps_one() {
        // ε → 1⁻: (arcsin(½))^16 = (π/6)^16
        let b = diagonal_bound(&q(2, 4, 2, 1.0 - 1e-12)).unwrap();
        let expected = FRAC_PI_6.powi(16);
        assert!(
            ((b.measure_bound - expected) / expected).abs() < 1e-9,
            "{} vs {}",
            b.measure_bound,
            expected
        );
        // g = (ln(π/2)/4)·16/ln 4 ≈ 1.30
        let g_expected = ((PI / 2.0).ln() / 4.0) * 16.0 / 4.0f64.ln();
        assert!((b.g - g_expected).abs() < 1e-12);
        assert!((b.g - 1.30).abs() < 0.01);
        // ε = 1 itself leaves the admissible range
        assert!(diagonal_bound(&q(2, 4, 2, 1.0)).is_err());
    }

    #[test]
    fn sign_diagonal_values() {
        let b = sign_diagonal_bound(&q(2, 2, 1, 0.5)).unwrap();
        let expected = (PI / 4.0).powi(4);
        assert!(((b.bound - expected) / expected).abs() < 1e-12);
        assert!((b.bound - 0.3805).abs() < 5e-4);

        let b16 = sign_diagonal_bound(&q(2, 4, 1, 0.5)).unwrap();
        let expected16 = (PI / 4.0).powi(16);
        assert!(((b16.bound - expected16) / expected16).abs() < 1e-12);
        assert!((b16.bound - 0.0209).abs() < 5e-4);
        // monotone decreasing in d^n
        assert!(b16.bound < b.bound);
        assert!(sign_diagonal_bound(&q(2, 2, 1, 1.0)).is_err());
    }

    #[test]
    fn coherent_bound_values() {
        // d=2, n=4: 4e·exp(−1) = 4 exactly (vacuous at this scale)
        let b = coherent_bound(&q(2, 4, 2, 0.5)).unwrap();
        assert!(((b.bound - 4.0) / 4.0).abs() < 1e-14);

        // d=2, n=8: 4e·exp(−16) = 4·exp(−15)
        let b = coherent_bound(&q(2, 8, 2, 0.5)).unwrap();
        let expected = 4.0 * (-15.0f64).exp();
        assert!(((b.bound - expected) / expected).abs() < 1e-12);
        assert!((b.bound - 1.2e-6).abs() < 1e-7);
        assert!((10.0f64.powf(b.log10_bound) - expected).abs() / expected < 1e-10);

        // sign bound available at ε ≤ 3/4
        assert!(b.sign_bound.is_some());
        let sb = coherent_sign_bound(&q(2, 8, 2, 0.75)).unwrap();
        assert!(((sb - 2.0 * (-32.0f64).exp()) / sb).abs() < 1e-12);

        // ε = 0.8 requested for the sign bound: error
        assert!(matches!(
            coherent_sign_bound(&q(2, 4, 2, 0.8)),
            Err(HardnessError::EpsilonOutOfRange { .. })
        ));
        let b = coherent_bound(&q(2, 4, 2, 0.8)).unwrap();
        assert!(b.sign_bound.is_none());
    }

    #[test]
    fn steinhaus_tail_values() {
        // (D=16, ε=1): τ = ½, 16·¼·e^{1−4} = 4e⁻³
        let t = steinhaus_tail(16, 1.0).unwrap();
        let expected = 4.0 * (-3.0f64).exp();
        assert!(((t.bound - expected) / expected).abs() < 1e-12);
        assert!((t.bound - 0.199).abs() < 1e-3);

        // (D=4, ε=0): τ = 1, 4·e^{1−4} = 4e⁻³
        let t = steinhaus_tail(4, 0.0).unwrap();
        assert!(((t.bound - expected) / expected).abs() < 1e-12);
    }

    #[test]
    fn steinhaus_chain_ordering() {
        // bound ≤ weakened_quarter ≤ weakened_constant for D ≥ 4, ε ∈ [0,1]
        for dim in [4u64, 8, 16, 32, 64, 128] {
            for i in 0..=10 {
                let eps = i as f64 / 10.0;
                let t = steinhaus_tail(dim, eps).unwrap();
                assert!(
                    t.bound <= t.weakened_quarter * (1.0 + 1e-12),
                    "D={dim} ε={eps}"
                );
                assert!(
                    t.weakened_quarter <= t.weakened_constant * (1.0 + 1e-12),
                    "D={dim} ε={eps}"
                );
            }
        }
        // the chain stays ordered in log space long after f64 underflow
        let t = steinhaus_tail(1 << 20, 0.5).unwrap();
        assert_eq!(t.bound, 0.0);
        assert!(t.log10_bound < t.log10_weakened_quarter);
        assert!(t.log10_weakened_quarter < t.log10_weakened_constant);
        assert!(t.log10_bound.is_finite());
    }

    #[test]
    fn monotonicity_of_closed_forms() {
        // measure_bound non-decreasing in ε
        let mut prev = -1.0;
        for i in 0..10 {
            let eps = i as f64 / 10.0;
            let b = diagonal_bound(&q(2, 4, 2, eps)).unwrap();
            assert!(b.measure_bound >= prev);
            prev = b.measure_bound;
        }
        // non-increasing in d^n (log-space comparison survives underflow)
        let b4 = diagonal_bound(&q(2, 4, 2, 0.9)).unwrap();
        let b6 = diagonal_bound(&q(2, 6, 2, 0.9)).unwrap();
        assert!(b6.log10_measure_bound < b4.log10_measure_bound);
        // coherent bound non-increasing in d^n
        let c4 = coherent_bound(&q(2, 4, 2, 0.5)).unwrap();
        let c6 = coherent_bound(&q(2, 6, 2, 0.5)).unwrap();
        assert!(c6.log10_bound < c4.log10_bound);
    }

    #[test]
    fn query_validation() {
        assert!(HardnessQuery::new(1, 4, 2, 0.5).is_err());
        assert!(HardnessQuery::new(2, 1, 2, 0.5).is_err());
        assert!(HardnessQuery::new(2, 4, 0, 0.5).is_err());
        assert!(HardnessQuery::new(2, 4, 2, f64::NAN).is_err());
        assert!(HardnessQuery::new(2, 4, 2, -0.1).is_err());
    }
}

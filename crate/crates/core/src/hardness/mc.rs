//! Monte Carlo kernels for the measure and tail bounds.
//!
//! Kernels count hits over explicit sample-index ranges; a sample's outcome
//! is a pure function of (seed, sample index), so callers may split ranges
//! across workers arbitrarily and sum the counts — the total is identical for
//! every split.

use core::ops::Range;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use super::{rademacher_tail_bound, steinhaus_tail, HardnessError};
use crate::rng::CounterRng;

/// Stream id for ball-measure sampling.
pub const BALL_STREAM: u64 = 0x42414c4c;
/// Stream id for overlap-tail sampling.
pub const OVERLAP_STREAM: u64 = 0x4f564c50;

const MIN_SAMPLES: u64 = 10_000;
const MAX_BALL_DIM: usize = 32;
const MAX_EXHAUSTIVE_DIM: usize = 24;

/// Entry distribution for overlap sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OverlapVariant {
    /// i.i.d. uniform unit-modulus complex entries.
    Steinhaus,
    /// i.i.d. ±1 real entries.
    Rademacher,
}

/// Sampling mode: pseudorandom draws or exhaustive enumeration
/// (Rademacher only).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleMode {
    Monte { samples: u64, seed: u64 },
    Exhaustive,
}

/// Verdict of an empirical check against a provable bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    Violation,
}

/// Outcome of a Monte Carlo verification run.
#[derive(Debug, Clone, PartialEq)]
pub struct McReport {
    pub samples: u64,
    pub seed: u64,
    pub hits: u64,
    /// hits / samples (the exact rational is the pair above).
    pub empirical: f64,
    pub bound: f64,
    pub log10_bound: f64,
    pub standard_error: f64,
    pub verdict: Verdict,
}

fn assess(hits: u64, samples: u64, seed: u64, bound: f64, log10_bound: f64) -> McReport {
    let empirical = hits as f64 / samples as f64;
    let standard_error = (empirical * (1.0 - empirical) / samples as f64).sqrt();
    // Resolution floor keeps a single stray hit from flagging a violation.
    let effective = standard_error.max(1.0 / samples as f64);
    let verdict = if empirical > bound + 5.0 * effective {
        Verdict::Violation
    } else {
        Verdict::Consistent
    };
    McReport {
        samples,
        seed,
        hits,
        empirical,
        bound,
        log10_bound,
        standard_error,
        verdict,
    }
}

/// Counts samples α ∈ [0,2π)^dim with max_j |e^{iα_j} − 1| ≤ ε over the given
/// sample-index range.
pub fn ball_hits(dim: usize, epsilon: f64, seed: u64, range: Range<u64>) -> u64 {
    let rng = CounterRng::new(seed, BALL_STREAM);
    let mut hits = 0u64;
    for s in range {
        let base = s * dim as u64;
        let mut inside = true;
        for j in 0..dim as u64 {
            let alpha = rng.angle(base + j);
            // |e^{iα} − 1| = 2·sin(α/2), nonnegative on [0, 2π)
            if 2.0 * (alpha / 2.0).sin() > epsilon {
                inside = false;
                break;
            }
        }
        if inside {
            hits += 1;
        }
    }
    hits
}

/// Monte Carlo estimate of the diagonal-group measure of an ε-ball around the
/// identity, checked against the exact per-coordinate bound (2·arcsin(ε/2)/π)^dim.
///
/// The per-coordinate arc-length argument is tight, so the empirical fraction
/// converges to the bound itself rather than just staying below it.
pub fn mc_ball_measure(
    dim: usize,
    epsilon: f64,
    samples: u64,
    seed: u64,
) -> Result<McReport, HardnessError> {
    let hits = ball_hits(dim, epsilon, seed, check_ball_run(dim, epsilon, samples)?);
    Ok(ball_report_from_hits(dim, epsilon, samples, seed, hits))
}

/// Validates a ball-measure run and returns its full sample range. Callers
/// that parallelize split this range, sum the per-chunk [`ball_hits`], and
/// assemble through [`ball_report_from_hits`].
pub fn check_ball_run(
    dim: usize,
    epsilon: f64,
    samples: u64,
) -> Result<Range<u64>, HardnessError> {
    check_ball_args(dim, epsilon)?;
    if samples < MIN_SAMPLES {
        return Err(HardnessError::TooFewSamples {
            samples,
            min: MIN_SAMPLES,
        });
    }
    Ok(0..samples)
}

/// Assembles the report from a (possibly merged) hit count.
pub fn ball_report_from_hits(
    dim: usize,
    epsilon: f64,
    samples: u64,
    seed: u64,
    hits: u64,
) -> McReport {
    let (bound, log10_bound) = ball_bound(dim, epsilon);
    assess(hits, samples, seed, bound, log10_bound)
}

/// The exact per-coordinate ball bound (ε̃/π)^dim with ε̃ = 2·arcsin(ε/2).
pub fn ball_bound(dim: usize, epsilon: f64) -> (f64, f64) {
    let per_coord = 2.0 * (epsilon / 2.0).asin() / core::f64::consts::PI;
    if per_coord <= 0.0 {
        return (0.0, f64::NEG_INFINITY);
    }
    let log10 = dim as f64 * per_coord.log10();
    (per_coord.powi(dim as i32), log10)
}

pub(crate) fn check_ball_args(dim: usize, epsilon: f64) -> Result<(), HardnessError> {
    if !(1..=MAX_BALL_DIM).contains(&dim) {
        return Err(HardnessError::DimensionOutOfRange {
            dim,
            min: 1,
            max: MAX_BALL_DIM,
        });
    }
    if !(epsilon > 0.0 && epsilon <= 2.0) {
        return Err(HardnessError::EpsilonOutOfRange {
            epsilon,
            allowed: "(0, 2]",
        });
    }
    Ok(())
}

/// Counts samples ψ with |⟨φ, ψ⟩| ≥ 1 − ε²/2 against the uniform coherent
/// reference φ, over the given sample-index range.
pub fn overlap_hits(
    dim: usize,
    epsilon: f64,
    variant: OverlapVariant,
    seed: u64,
    range: Range<u64>,
) -> u64 {
    let rng = CounterRng::new(seed, OVERLAP_STREAM);
    let tau = 1.0 - epsilon * epsilon / 2.0;
    let threshold = tau * dim as f64;
    let mut hits = 0u64;
    match variant {
        OverlapVariant::Steinhaus => {
            let threshold_sq = threshold * threshold;
            for s in range {
                let base = s * dim as u64;
                let mut re = 0.0f64;
                let mut im = 0.0f64;
                for j in 0..dim as u64 {
                    let theta = rng.angle(base + j);
                    re += theta.cos();
                    im += theta.sin();
                }
                if re * re + im * im >= threshold_sq {
                    hits += 1;
                }
            }
        }
        OverlapVariant::Rademacher => {
            for s in range {
                let base = s * dim as u64;
                let mut sum = 0.0f64;
                for j in 0..dim as u64 {
                    sum += rng.sign(base + j);
                }
                if sum.abs() >= threshold {
                    hits += 1;
                }
            }
        }
    }
    hits
}

/// Exact hit count over all 2^dim Rademacher sign vectors.
pub fn exhaustive_rademacher_hits(dim: usize, epsilon: f64) -> u64 {
    let tau = 1.0 - epsilon * epsilon / 2.0;
    let threshold = tau * dim as f64;
    let mut hits = 0u64;
    for mask in 0u64..(1u64 << dim) {
        let minus = mask.count_ones() as i64;
        let sum = dim as i64 - 2 * minus;
        if (sum as f64).abs() >= threshold {
            hits += 1;
        }
    }
    hits
}

/// The Hoeffding bound an overlap run is checked against: the sharp Steinhaus
/// chain form, or 2·exp(−Dτ²/2) for Rademacher signs.
pub fn overlap_bound(
    dim: usize,
    epsilon: f64,
    variant: OverlapVariant,
) -> Result<(f64, f64), HardnessError> {
    match variant {
        OverlapVariant::Steinhaus => {
            let t = steinhaus_tail(dim as u64, epsilon)?;
            Ok((t.bound, t.log10_bound))
        }
        OverlapVariant::Rademacher => {
            let b = rademacher_tail_bound(dim as u64, epsilon)?;
            Ok((b, b.log10()))
        }
    }
}

/// Validates a sampled overlap run and returns its full sample range, for
/// callers that split the work and merge counts.
pub fn check_overlap_run(
    dim: usize,
    epsilon: f64,
    variant: OverlapVariant,
    samples: u64,
) -> Result<Range<u64>, HardnessError> {
    if dim < 4 {
        return Err(HardnessError::DimensionOutOfRange {
            dim,
            min: 4,
            max: usize::MAX,
        });
    }
    overlap_bound(dim, epsilon, variant)?;
    if samples < MIN_SAMPLES {
        return Err(HardnessError::TooFewSamples {
            samples,
            min: MIN_SAMPLES,
        });
    }
    Ok(0..samples)
}

/// Assembles the report from a (possibly merged) hit count.
pub fn overlap_report_from_hits(
    dim: usize,
    epsilon: f64,
    variant: OverlapVariant,
    samples: u64,
    seed: u64,
    hits: u64,
) -> Result<McReport, HardnessError> {
    let (bound, log10_bound) = overlap_bound(dim, epsilon, variant)?;
    Ok(assess(hits, samples, seed, bound, log10_bound))
}

/// Empirical overlap tail ℙ[|⟨φ,ψ⟩| ≥ 1 − ε²/2] against the matching
/// Hoeffding bound (Steinhaus chain or the Rademacher 2·exp(−Dτ²/2) form).
///
/// `SampleMode::Exhaustive` enumerates all 2^dim sign vectors exactly and is
/// available only for the Rademacher variant with dim ≤ 24.
pub fn mc_overlap_tail(
    dim: usize,
    epsilon: f64,
    variant: OverlapVariant,
    mode: SampleMode,
) -> Result<McReport, HardnessError> {
    match mode {
        SampleMode::Monte { samples, seed } => {
            let range = check_overlap_run(dim, epsilon, variant, samples)?;
            let hits = overlap_hits(dim, epsilon, variant, seed, range);
            overlap_report_from_hits(dim, epsilon, variant, samples, seed, hits)
        }
        SampleMode::Exhaustive => {
            if dim < 4 {
                return Err(HardnessError::DimensionOutOfRange {
                    dim,
                    min: 4,
                    max: usize::MAX,
                });
            }
            let (bound, log10_bound) = overlap_bound(dim, epsilon, variant)?;
            if variant != OverlapVariant::Rademacher {
                return Err(HardnessError::ExhaustiveUnavailable(
                    alloc::string::String::from("exhaustive mode requires the Rademacher variant"),
                ));
            }
            if dim > MAX_EXHAUSTIVE_DIM {
                return Err(HardnessError::ExhaustiveUnavailable(alloc::format!(
                    "exhaustive mode capped at dimension {MAX_EXHAUSTIVE_DIM}, got {dim}"
                )));
            }
            let samples = 1u64 << dim;
            let hits = exhaustive_rademacher_hits(dim, epsilon);
            let empirical = hits as f64 / samples as f64;
            let verdict = if empirical > bound {
                Verdict::Violation
            } else {
                Verdict::Consistent
            };
            Ok(McReport {
                samples,
                seed: 0,
                hits,
                empirical,
                bound,
                log10_bound,
                standard_error: 0.0,
                verdict,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_whole_circle_at_eps_two() {
        let r = mc_ball_measure(1, 2.0, 10_000, 7).unwrap();
        assert_eq!(r.hits, r.samples);
        assert!((r.bound - 1.0).abs() < 1e-12);
        assert_eq!(r.verdict, Verdict::Consistent);
    }

    #[test]
    fn ball_matches_exact_probability_d2() {
        // (2·arcsin(½)/π)² = 1/9
        let r = mc_ball_measure(2, 1.0, 100_000, 42).unwrap();
        assert!((r.bound - 1.0 / 9.0).abs() < 1e-12);
        let se = (r.bound * (1.0 - r.bound) / r.samples as f64).sqrt();
        assert!(
            (r.empirical - r.bound).abs() <= 3.0 * se,
            "empirical {} vs bound {}",
            r.empirical,
            r.bound
        );
        assert_eq!(r.verdict, Verdict::Consistent);
    }

    #[test]
    fn ball_matches_exact_probability_d4() {
        let r = mc_ball_measure(4, 1.0, 200_000, 11).unwrap();
        assert!((r.bound - (1.0f64 / 81.0)).abs() < 1e-12);
        let se = (r.bound * (1.0 - r.bound) / r.samples as f64).sqrt();
        assert!((r.empirical - r.bound).abs() <= 3.0 * se);
    }

    #[test]
    fn ball_preconditions() {
        assert!(mc_ball_measure(0, 1.0, 10_000, 0).is_err());
        assert!(mc_ball_measure(33, 1.0, 10_000, 0).is_err());
        assert!(mc_ball_measure(2, 0.0, 10_000, 0).is_err());
        assert!(mc_ball_measure(2, 1.0, 9_999, 0).is_err());
    }

    #[test]
    fn hits_split_invariance() {
        // splitting the range must reproduce the single-range count exactly
        let total = ball_hits(3, 1.2, 99, 0..50_000);
        let a = ball_hits(3, 1.2, 99, 0..13_000);
        let b = ball_hits(3, 1.2, 99, 13_000..37_500);
        let c = ball_hits(3, 1.2, 99, 37_500..50_000);
        assert_eq!(total, a + b + c);

        let total = overlap_hits(8, 1.0, OverlapVariant::Steinhaus, 5, 0..30_000);
        let a = overlap_hits(8, 1.0, OverlapVariant::Steinhaus, 5, 0..7_919);
        let b = overlap_hits(8, 1.0, OverlapVariant::Steinhaus, 5, 7_919..30_000);
        assert_eq!(total, a + b);
    }

    #[test]
    fn exhaustive_rademacher_extremes() {
        // ε = 0: only the all-plus and all-minus vectors reach |sum| = D
        let hits = exhaustive_rademacher_hits(16, 0.0);
        assert_eq!(hits, 2);
        let r = mc_overlap_tail(16, 0.0, OverlapVariant::Rademacher, SampleMode::Exhaustive)
            .unwrap();
        assert_eq!(r.hits, 2);
        assert_eq!(r.samples, 1 << 16);
        assert_eq!(r.verdict, Verdict::Consistent);
    }

    #[test]
    fn exhaustive_rademacher_d4() {
        // D=4, ε=1: τ = ½, threshold 2: |4 − 2m| ≥ 2 ⇔ m ∈ {0,1,3,4}:
        // 1 + 4 + 4 + 1 = 10 of 16
        let hits = exhaustive_rademacher_hits(4, 1.0);
        assert_eq!(hits, 10);
    }

    #[test]
    fn steinhaus_respects_bound_at_d16() {
        let r = mc_overlap_tail(
            16,
            1.0,
            OverlapVariant::Steinhaus,
            SampleMode::Monte {
                samples: 50_000,
                seed: 3,
            },
        )
        .unwrap();
        assert!((r.bound - 4.0 * (-3.0f64).exp()).abs() < 1e-12);
        assert_eq!(r.verdict, Verdict::Consistent);
        assert!(r.empirical <= r.bound + 5.0 * r.standard_error.max(1.0 / r.samples as f64));
    }

    #[test]
    fn steinhaus_eps_zero_has_no_hits() {
        let r = mc_overlap_tail(
            16,
            0.0,
            OverlapVariant::Steinhaus,
            SampleMode::Monte {
                samples: 20_000,
                seed: 9,
            },
        )
        .unwrap();
        assert_eq!(r.hits, 0);
    }

    #[test]
    fn exhaustive_mode_guards() {
        assert!(mc_overlap_tail(16, 0.5, OverlapVariant::Steinhaus, SampleMode::Exhaustive)
            .is_err());
        assert!(mc_overlap_tail(
            25,
            0.5,
            OverlapVariant::Rademacher,
            SampleMode::Exhaustive
        )
        .is_err());
        assert!(mc_overlap_tail(
            3,
            0.5,
            OverlapVariant::Rademacher,
            SampleMode::Exhaustive
        )
        .is_err());
    }

    #[test]
    fn rademacher_mc_agrees_with_exact() {
        let exact = exhaustive_rademacher_hits(8, 1.0) as f64 / 256.0;
        let r = mc_overlap_tail(
            8,
            1.0,
            OverlapVariant::Rademacher,
            SampleMode::Monte {
                samples: 100_000,
                seed: 17,
            },
        )
        .unwrap();
        let se = (exact * (1.0 - exact) / r.samples as f64).sqrt();
        assert!(
            (r.empirical - exact).abs() <= 5.0 * se,
            "{} vs exact {exact}",
            r.empirical
        );
    }
}

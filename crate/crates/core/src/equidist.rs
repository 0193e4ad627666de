//! Weyl phase sequences and uniform-distribution diagnostics.
//!
//! The sequence under study is (t·θ mod 1)_{t=1..N} in [0,1)^D with
//! θ_j = φ(j)/(2π) over the D = d^n monomials of a family context. Each θ_j
//! is transcendental (an algebraic number divided by 2π), and the φ(j) are
//! ℚ-linearly independent, so {1, θ₁, θ₂, …} is ℚ-linearly independent and
//! the sequence equidistributes; these diagnostics measure how fast. The
//! exactly testable half of that claim — full rank of the φ(j) — lives in
//! the algebra tests; π never enters exact arithmetic here.
//!
//! θ is computed once as a rational enclosure and frozen into 96 fractional
//! bits; t·θ mod 1 is then an exact u128 multiply-and-mask per point, which
//! keeps the error growth linear in t and fully accounted for.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;
use num_bigint::BigInt;
use num_rational::BigRational;
#[cfg(not(feature = "std"))]
use num_traits::Float;
use num_traits::{One, ToPrimitive};

use crate::algebra::{pi_bounds, rational_to_f64, AlgebraError};
use crate::families::{build_phase_table, FamiliesError, FamilySpec};

/// Fractional bits of the frozen θ representation.
const FRAC_BITS: u32 = 96;
const FRAC_MASK: u128 = (1u128 << FRAC_BITS) - 1;

/// Default cap on N·D for the materialized point matrix.
pub const DEFAULT_POINT_CAP: usize = 1 << 25;
/// Cap on the number of cells in discrepancy grids.
pub const GRID_CELL_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub enum EquidistError {
    Algebra(AlgebraError),
    Families(FamiliesError),
    /// N must be ≥ 1.
    EmptySequence,
    /// Requested precision cannot keep ≥ 10 correct fractional digits at N.
    PrecisionShortfall { requested: u32, needed: u32 },
    /// N·D exceeds the point-matrix cap.
    PointCapExceeded { rows: usize, dim: usize, cap: usize },
    /// Box dimension does not match the sequence dimension.
    DimensionMismatch { expected: usize, got: usize },
    /// A box coordinate interval is empty or out of range.
    DegenerateBox(String),
    /// grid^D exceeds the cell cap (or grid < 2).
    GridUnusable(String),
}

impl fmt::Display for EquidistError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquidistError::Algebra(e) => write!(f, "{e}"),
            EquidistError::Families(e) => write!(f, "{e}"),
            EquidistError::EmptySequence => write!(f, "need at least one point"),
            EquidistError::PrecisionShortfall { requested, needed } => write!(
                f,
                "precision {requested} too low: need ≥ {needed} digits for this N"
            ),
            EquidistError::PointCapExceeded { rows, dim, cap } => {
                write!(f, "{rows}×{dim} points exceed the cap {cap}")
            }
            EquidistError::DimensionMismatch { expected, got } => {
                write!(f, "box has {got} coordinates, sequence has {expected}")
            }
            EquidistError::DegenerateBox(msg) => write!(f, "degenerate box: {msg}"),
            EquidistError::GridUnusable(msg) => write!(f, "{msg}"),
        }
    }
}

impl core::error::Error for EquidistError {}

impl From<AlgebraError> for EquidistError {
    fn from(e: AlgebraError) -> Self {
        EquidistError::Algebra(e)
    }
}

impl From<FamiliesError> for EquidistError {
    fn from(e: FamiliesError) -> Self {
        EquidistError::Families(e)
    }
}

/// One θ coordinate: float value, frozen fixed-point fraction, and the error
/// of that freeze (per unit t).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaCoord {
    /// θ mod 1 as f64 (diagnostic; points are generated from `fixed`).
    pub value: f64,
    /// floor((θ mod 1)·2^96).
    pub fixed: u128,
    /// |fixed/2^96 − (θ mod 1)| ≤ unit_error.
    pub unit_error: f64,
}

/// The generated sequence with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylSequence {
    spec: FamilySpec,
    theta: Vec<ThetaCoord>,
    /// Row-major N × D matrix of (t·θ mod 1), t = 1..=N.
    points: Vec<f64>,
    n_points: usize,
    /// Worst-case absolute error of any stored point component.
    point_error: f64,
    precision: u32,
}

impl WeylSequence {
    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.theta.len()
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        self.n_points == 0
    }

    pub fn theta(&self) -> &[ThetaCoord] {
        &self.theta
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// The point for t = row + 1.
    pub fn row(&self, row: usize) -> &[f64] {
        let d = self.dim();
        &self.points[row * d..(row + 1) * d]
    }

    pub fn point_error(&self) -> f64 {
        self.point_error
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }
}

fn digits10(n: u64) -> u32 {
    let mut digits = 1;
    let mut v = n;
    while v >= 10 {
        v /= 10;
        digits += 1;
    }
    digits
}

/// Default working precision for a sequence of length N: digits(N) + 12.
pub fn default_precision(n_points: u64) -> u32 {
    digits10(n_points) + 12
}

/// Freezes θ_j = φ(j)/(2π) mod 1 into fixed point for every monomial.
fn freeze_theta(spec: &FamilySpec, digits: u32) -> Result<Vec<ThetaCoord>, EquidistError> {
    let table = build_phase_table(spec, crate::families::DEFAULT_TABLE_CAP)?;
    let mut out = Vec::with_capacity(table.entries().len());
    let mut work_digits = digits + 4;
    // θ is irrational, so an enclosure straddling an integer always resolves
    // under refinement; the retry cap only guards against a defect elsewhere.
    let mut retries = 0;
    'outer: loop {
        retries += 1;
        if retries > 64 {
            return Err(EquidistError::PrecisionShortfall {
                requested: digits,
                needed: work_digits,
            });
        }
        out.clear();
        let bits = (work_digits as f64 * core::f64::consts::LOG2_10) as u64 + 16;
        let (pi_lo, pi_hi) = pi_bounds(bits);
        let two = BigRational::from_integer(BigInt::from(2));
        let two_pi_lo = &two * &pi_lo;
        let two_pi_hi = &two * &pi_hi;
        for e in table.entries() {
            let eval = e.evaluate(work_digits)?;
            let (phi_lo, phi_hi) = (eval.lower(), eval.upper());
            // φ > 0 throughout, so the quotient bounds are monotone.
            let theta_lo = &phi_lo / &two_pi_hi;
            let theta_hi = &phi_hi / &two_pi_lo;
            let floor_lo = theta_lo.floor();
            let floor_hi = theta_hi.floor();
            if floor_lo != floor_hi {
                // enclosure straddles an integer; tighten and restart
                work_digits += 8;
                continue 'outer;
            }
            let frac_lo = &theta_lo - &floor_lo;
            let frac_hi = &theta_hi - &floor_lo;
            let width = &frac_hi - &frac_lo;
            let scaled = (frac_lo.numer() << FRAC_BITS) / frac_lo.denom();
            let fixed = scaled.to_u128().unwrap_or(FRAC_MASK) & FRAC_MASK;
            let ulp = BigRational::new(BigInt::one(), BigInt::one() << FRAC_BITS);
            let unit_error = rational_to_f64(&(&width + &ulp)) * (1.0 + 1e-9) + f64::MIN_POSITIVE;
            out.push(ThetaCoord {
                value: (fixed >> (FRAC_BITS - 53)) as f64 * (1.0 / 9007199254740992.0),
                fixed,
                unit_error,
            });
        }
        // distinct monomials have distinct θ; a collision at 96 fractional
        // bits would need |θ_i − θ_j| < 2⁻⁹⁶ and marks the request as
        // numerically unusable rather than silently degenerate
        let mut seen = alloc::collections::BTreeSet::new();
        if !out.iter().all(|t| seen.insert(t.fixed)) {
            return Err(EquidistError::PrecisionShortfall {
                requested: digits,
                needed: work_digits + 16,
            });
        }
        return Ok(out);
    }
}

/// Fills `out` with rows (t·θ mod 1) for t in `t_range` (row-major).
///
/// Pure in (θ, t), so disjoint ranges can be filled by different workers and
/// concatenated; the result never depends on the split.
pub fn fill_points(theta: &[ThetaCoord], t_range: Range<u64>, out: &mut [f64]) {
    let d = theta.len();
    debug_assert_eq!(out.len(), (t_range.end - t_range.start) as usize * d);
    let inv = 1.0 / 9007199254740992.0; // 2^-53
    for (row, t) in t_range.enumerate() {
        let base = row * d;
        for (k, th) in theta.iter().enumerate() {
            let prod = th.fixed.wrapping_mul(t as u128) & FRAC_MASK;
            out[base + k] = (prod >> (FRAC_BITS - 53)) as f64 * inv;
        }
    }
}

/// Validates a sequence request and freezes θ; the second phase is filling
/// rows with [`fill_points`] (splittable across workers) and assembling with
/// [`assemble_sequence`].
pub fn weyl_theta(
    spec: &FamilySpec,
    n_points: u64,
    precision: Option<u32>,
    point_cap: usize,
) -> Result<(Vec<ThetaCoord>, u32), EquidistError> {
    if n_points == 0 {
        return Err(EquidistError::EmptySequence);
    }
    let needed = digits10(n_points) + 10;
    let digits = precision.unwrap_or_else(|| default_precision(n_points));
    if digits < needed {
        return Err(EquidistError::PrecisionShortfall {
            requested: digits,
            needed,
        });
    }
    let theta = freeze_theta(spec, digits)?;
    let rows = n_points as usize;
    if rows
        .checked_mul(theta.len())
        .is_none_or(|total| total > point_cap)
    {
        return Err(EquidistError::PointCapExceeded {
            rows,
            dim: theta.len(),
            cap: point_cap,
        });
    }
    Ok((theta, digits))
}

/// Wraps filled rows into a [`WeylSequence`]; `points` must hold the rows
/// t = 1..=N produced by [`fill_points`] for this θ.
pub fn assemble_sequence(
    spec: &FamilySpec,
    theta: Vec<ThetaCoord>,
    points: Vec<f64>,
    precision: u32,
) -> Result<WeylSequence, EquidistError> {
    let dim = theta.len();
    if dim == 0 || !points.len().is_multiple_of(dim) || points.is_empty() {
        return Err(EquidistError::EmptySequence);
    }
    let rows = points.len() / dim;
    let max_unit = theta
        .iter()
        .map(|t| t.unit_error)
        .fold(0.0f64, f64::max);
    let point_error = rows as f64 * max_unit + 2.0f64.powi(-53);
    Ok(WeylSequence {
        spec: spec.clone(),
        theta,
        points,
        n_points: rows,
        point_error,
        precision,
    })
}

/// Generates the first `n_points` Weyl points for the family context.
///
/// `precision` defaults to digits₁₀(N) + 12 and must keep at least ten
/// correct fractional digits after multiplication by N.
pub fn weyl_points(
    spec: &FamilySpec,
    n_points: u64,
    precision: Option<u32>,
    point_cap: usize,
) -> Result<WeylSequence, EquidistError> {
    let (theta, digits) = weyl_theta(spec, n_points, precision, point_cap)?;
    let mut points = alloc::vec![0.0f64; n_points as usize * theta.len()];
    fill_points(&theta, 1..n_points + 1, &mut points);
    assemble_sequence(spec, theta, points, digits)
}

/// A per-coordinate circular interval on [0,1); `lo > hi` wraps around 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleInterval {
    pub lo: f64,
    pub hi: f64,
}

impl CircleInterval {
    pub fn width(&self) -> f64 {
        if self.lo < self.hi {
            self.hi - self.lo
        } else {
            1.0 - self.lo + self.hi
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        if self.lo < self.hi {
            self.lo <= x && x < self.hi
        } else {
            x >= self.lo || x < self.hi
        }
    }
}

/// An axis-aligned (circularly wrapped) box in [0,1)^D.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxSpec {
    intervals: Vec<CircleInterval>,
}

impl BoxSpec {
    pub fn new(intervals: Vec<CircleInterval>) -> Result<Self, EquidistError> {
        for (k, iv) in intervals.iter().enumerate() {
            let ok = (0.0..=1.0).contains(&iv.lo) && (0.0..=1.0).contains(&iv.hi);
            if !ok || iv.lo == iv.hi || !iv.lo.is_finite() || !iv.hi.is_finite() {
                return Err(EquidistError::DegenerateBox(alloc::format!(
                    "coordinate {k}: [{}, {})",
                    iv.lo,
                    iv.hi
                )));
            }
        }
        Ok(BoxSpec { intervals })
    }

    /// The cube [0, side)^dim.
    pub fn anchored_cube(dim: usize, side: f64) -> Result<Self, EquidistError> {
        Self::new(alloc::vec![CircleInterval { lo: 0.0, hi: side }; dim])
    }

    /// The identity neighborhood {θ : |e^{2πiθ} − 1| ≤ ε} per coordinate — a
    /// wrapped interval of width ε̃/π with ε̃ = 2·arcsin(ε/2).
    pub fn identity_neighborhood(dim: usize, epsilon: f64) -> Result<Self, EquidistError> {
        if !(epsilon > 0.0 && epsilon < 2.0) {
            return Err(EquidistError::DegenerateBox(alloc::format!(
                "identity neighborhood needs ε ∈ (0, 2), got {epsilon}"
            )));
        }
        let a = (epsilon / 2.0).asin() / core::f64::consts::PI; // ε̃/(2π)
        Self::new(alloc::vec![
            CircleInterval {
                lo: 1.0 - a,
                hi: a
            };
            dim
        ])
    }

    pub fn intervals(&self) -> &[CircleInterval] {
        &self.intervals
    }

    pub fn volume(&self) -> f64 {
        self.intervals.iter().map(CircleInterval::width).product()
    }
}

/// Result of counting sequence points inside a box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxMeasure {
    pub points_in: u64,
    pub fraction: f64,
    pub volume: f64,
    pub deviation: f64,
}

/// Fraction of the sequence inside the box versus its volume.
pub fn box_measure(seq: &WeylSequence, spec: &BoxSpec) -> Result<BoxMeasure, EquidistError> {
    if spec.intervals.len() != seq.dim() {
        return Err(EquidistError::DimensionMismatch {
            expected: seq.dim(),
            got: spec.intervals.len(),
        });
    }
    let d = seq.dim();
    let mut points_in = 0u64;
    'rows: for row in 0..seq.len() {
        let p = &seq.points[row * d..(row + 1) * d];
        for (x, iv) in p.iter().zip(&spec.intervals) {
            if !iv.contains(*x) {
                continue 'rows;
            }
        }
        points_in += 1;
    }
    let fraction = points_in as f64 / seq.len() as f64;
    let volume = spec.volume();
    Ok(BoxMeasure {
        points_in,
        fraction,
        volume,
        deviation: (fraction - volume).abs(),
    })
}

/// Star-discrepancy-style diagnostic over the anchored dyadic grid, plus
/// per-coordinate Kolmogorov–Smirnov statistics against the uniform law.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscrepancyStats {
    pub grid: u32,
    pub max_box_deviation: f64,
    pub per_coordinate_ks: Vec<f64>,
}

pub fn discrepancy_stats(
    seq: &WeylSequence,
    grid: u32,
) -> Result<DiscrepancyStats, EquidistError> {
    if grid < 2 {
        return Err(EquidistError::GridUnusable(alloc::format!(
            "grid {grid} must be ≥ 2"
        )));
    }
    let d = seq.dim();
    let mut cells: u64 = 1;
    for _ in 0..d {
        cells = cells.saturating_mul(grid as u64);
        if cells > GRID_CELL_CAP {
            return Err(EquidistError::GridUnusable(alloc::format!(
                "grid^dim = {grid}^{d} exceeds the cell cap {GRID_CELL_CAP}"
            )));
        }
    }
    // Bin points.
    let mut counts = alloc::vec![0u64; cells as usize];
    let g = grid as usize;
    for row in 0..seq.len() {
        let p = &seq.points[row * d..(row + 1) * d];
        let mut idx = 0usize;
        for &x in p {
            let cell = ((x * grid as f64) as usize).min(g - 1);
            idx = idx * g + cell;
        }
        counts[idx] += 1;
    }
    // Inclusive prefix sums along each dimension turn cell counts into
    // anchored-box counts.
    let mut stride = 1usize;
    for _dim in 0..d {
        // dimension with this stride is the last index composed above
        let block = stride * g;
        for start in (0..cells as usize).step_by(block) {
            for i in 1..g {
                for off in 0..stride {
                    let idx = start + i * stride + off;
                    counts[idx] += counts[idx - stride];
                }
            }
        }
        stride = block;
    }
    let n = seq.len() as f64;
    let mut max_box_deviation = 0.0f64;
    for (idx, &count) in counts.iter().enumerate() {
        // recover per-dimension digits of idx (last dimension has stride 1)
        let mut rem = idx;
        let mut volume = 1.0f64;
        for _ in 0..d {
            let digit = rem % g;
            rem /= g;
            volume *= (digit + 1) as f64 / g as f64;
        }
        let deviation = (count as f64 / n - volume).abs();
        max_box_deviation = max_box_deviation.max(deviation);
    }
    // Per-coordinate KS statistic.
    let mut per_coordinate_ks = Vec::with_capacity(d);
    let mut column = alloc::vec![0.0f64; seq.len()];
    for k in 0..d {
        for (row, slot) in column.iter_mut().enumerate() {
            *slot = seq.points[row * d + k];
        }
        column.sort_unstable_by(f64::total_cmp);
        let mut ks = 0.0f64;
        for (i, &x) in column.iter().enumerate() {
            let upper = (i + 1) as f64 / n - x;
            let lower = x - i as f64 / n;
            ks = ks.max(upper).max(lower);
        }
        per_coordinate_ks.push(ks);
    }
    Ok(DiscrepancyStats {
        grid,
        max_box_deviation,
        per_coordinate_ks,
    })
}

/// One row of a hard-fraction table: a box standing in for an approximable
/// set, with the observed membership fraction.
#[derive(Debug, Clone, PartialEq)]
pub struct HardFractionRow {
    pub label: String,
    pub measure: BoxMeasure,
}

/// Evaluates membership fractions for a family of boxes (proxies for the
/// uncomputable approximable sets) and reports convergence to their volumes.
pub fn hard_fraction_demo(
    seq: &WeylSequence,
    boxes: &[(String, BoxSpec)],
) -> Result<Vec<HardFractionRow>, EquidistError> {
    let mut rows = Vec::with_capacity(boxes.len());
    for (label, spec) in boxes {
        rows.push(HardFractionRow {
            label: label.clone(),
            measure: box_measure(seq, spec)?,
        });
    }
    Ok(rows)
}

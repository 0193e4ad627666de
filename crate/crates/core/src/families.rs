//! The explicit hard families: phase tables, diagonal unitaries U_t,
//! maximally coherent states ψ_t, diagonal Hamiltonians, and their
//! complexity certificates.
//!
//! For a context (p₁, …, p_n; d) and parameter t, the family members carry
//! phases t·φ(j) over all d^n monomials φ(j). Numeric objects (unitaries,
//! states) are built with phases reduced mod 2π in high-precision interval
//! arithmetic before any rounding to f64 — for large t the reduction loses
//! digits proportional to log₁₀ t, and the working precision is raised to
//! compensate. Certificates never materialize d^n-sized vectors.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use num_complex::Complex64;
use num_rational::BigRational;
#[cfg(not(feature = "std"))]
use num_traits::Float;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::algebra::{AlgebraError, Evaluation, FieldContext, RadicalElement};
use crate::gamma::{
    gamma_exponential_set, ComplexityCertificate, DerivationRule, FamilyInfo, GammaError,
    GammaValue, SpectrumSet,
};

/// Default cap on d^n for materialized tables and vectors.
pub const DEFAULT_TABLE_CAP: usize = 1 << 24;
/// Above this basis size, `certify` switches from the elimination oracle to
/// the structural monomial count (still exact, O(1) memory).
pub const DEFAULT_CERTIFY_RANK_CAP: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq)]
pub enum FamiliesError {
    Algebra(AlgebraError),
    Gamma(GammaError),
    /// The family parameter t must be ≥ 0.
    NegativeParameter,
    /// Certificates require t ≠ 0 (all phases collapse at t = 0).
    ZeroParameter,
    /// Certificates require local dimension ≥ 2.
    SmallDimension(u32),
    /// d^n exceeds the configured materialization cap.
    TableCapExceeded { size: String, cap: usize },
    /// State normalization failed its construction check.
    NormalizationFailed { norm: f64 },
}

impl fmt::Display for FamiliesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamiliesError::Algebra(e) => write!(f, "{e}"),
            FamiliesError::Gamma(e) => write!(f, "{e}"),
            FamiliesError::NegativeParameter => write!(f, "family parameter t must be ≥ 0"),
            FamiliesError::ZeroParameter => write!(f, "certificates require t ≠ 0"),
            FamiliesError::SmallDimension(d) => {
                write!(f, "certificates require local dimension ≥ 2, got {d}")
            }
            FamiliesError::TableCapExceeded { size, cap } => {
                write!(f, "basis size {size} exceeds the table cap {cap}")
            }
            FamiliesError::NormalizationFailed { norm } => {
                write!(f, "constructed state has norm {norm}, expected 1")
            }
        }
    }
}

impl core::error::Error for FamiliesError {}

impl From<AlgebraError> for FamiliesError {
    fn from(e: AlgebraError) -> Self {
        FamiliesError::Algebra(e)
    }
}

impl From<GammaError> for FamiliesError {
    fn from(e: GammaError) -> Self {
        FamiliesError::Gamma(e)
    }
}

/// A family member selector: the field context plus the parameter t ≥ 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    context: Arc<FieldContext>,
    t: BigRational,
}

impl FamilySpec {
    pub fn new(context: Arc<FieldContext>, t: BigRational) -> Result<Self, FamiliesError> {
        if t.is_negative() {
            return Err(FamiliesError::NegativeParameter);
        }
        Ok(FamilySpec { context, t })
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.context
    }

    pub fn t(&self) -> &BigRational {
        &self.t
    }

    pub fn family_info(&self) -> FamilyInfo {
        FamilyInfo {
            primes: self.context.primes().to_vec(),
            d: self.context.d(),
            n: self.context.n(),
            t: self.t.clone(),
        }
    }

    fn checked_dim(&self, cap: usize) -> Result<usize, FamiliesError> {
        match self.context.basis_size_usize() {
            Some(size) if size <= cap => Ok(size),
            _ => Err(FamiliesError::TableCapExceeded {
                size: alloc::format!("{}", self.context.basis_size()),
                cap,
            }),
        }
    }
}

/// All d^n exact monomials φ(j), in index order (j₁ most significant).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseTable {
    spec: FamilySpec,
    entries: Vec<RadicalElement>,
}

impl PhaseTable {
    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    pub fn entries(&self) -> &[RadicalElement] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<RadicalElement> {
        self.entries
    }
}

/// U = Σ_j |j⟩⟨j| e^{iα_j} with α_j = t·φ(j) mod 2π.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalUnitary {
    spec: FamilySpec,
    phases: Vec<f64>,
    /// Valid for every phase entry (circle metric).
    error_bound: f64,
    precision: u32,
}

impl DiagonalUnitary {
    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.phases.len()
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn error_bound(&self) -> f64 {
        self.error_bound
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Diagonal entries e^{iα_j}.
    pub fn entries(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.phases.iter().map(|&a| Complex64::new(a.cos(), a.sin()))
    }
}

/// ψ = d^{−n/2} Σ_j e^{iα_j} |j⟩.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    spec: FamilySpec,
    amplitudes: Vec<Complex64>,
    /// Per-amplitude absolute error bound.
    error_bound: f64,
    precision: u32,
}

impl StateVector {
    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn error_bound(&self) -> f64 {
        self.error_bound
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Euclidean norm, accumulated with compensated summation.
    pub fn norm(&self) -> f64 {
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for a in &self.amplitudes {
            let term = a.re * a.re + a.im * a.im;
            let y = term - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        sum.sqrt()
    }
}

/// Builds the exact phase table; every entry is a single monomial with
/// coefficient 1 and φ(0,…,0) = 1.
pub fn build_phase_table(spec: &FamilySpec, cap: usize) -> Result<PhaseTable, FamiliesError> {
    let dim = spec.checked_dim(cap)?;
    let ctx = spec.context();
    let mut entries = Vec::with_capacity(dim);
    for j in ctx.exponent_tuples() {
        entries.push(RadicalElement::monomial(ctx.clone(), &j)?);
    }
    Ok(PhaseTable {
        spec: spec.clone(),
        entries,
    })
}

fn decimal_digits_of_magnitude(t: &BigRational) -> u32 {
    let int = t.to_integer();
    let mag = int.magnitude();
    if mag.is_zero() {
        1
    } else {
        mag.to_str_radix(10).len() as u32
    }
}

fn decimal_digits_of_radicand(element: &RadicalElement) -> u32 {
    element
        .coords()
        .keys()
        .map(|j| {
            let m = element.context().monomial_radicand(j);
            m.to_str_radix(10).len() as u32
        })
        .max()
        .unwrap_or(1)
}

/// Phase t·φ(j) reduced mod 2π, with circle-metric error ≤ 10^−precision.
fn reduced_phase(
    element: &RadicalElement,
    t: &BigRational,
    precision: u32,
) -> Result<(f64, f64), FamiliesError> {
    if t.is_zero() {
        return Ok((0.0, 0.0));
    }
    // Guard digits absorb the magnitude of t (the mod-2π map amplifies
    // absolute evaluation error by t) plus the radicand magnitude.
    let eval: Evaluation = element.evaluate(
        precision + decimal_digits_of_magnitude(t) + decimal_digits_of_radicand(element) + 2,
    )?;
    let (lo, hi) = (eval.lower(), eval.upper());
    let (xlo, xhi) = if t.is_negative() {
        (t * &hi, t * &lo)
    } else {
        (t * &lo, t * &hi)
    };
    Ok(crate::algebra::reduce_phase(&xlo, &xhi, precision)?)
}

/// Builds U_t with per-entry phase error ≤ 10^−precision.
pub fn build_diagonal_unitary(
    spec: &FamilySpec,
    precision: u32,
    cap: usize,
) -> Result<DiagonalUnitary, FamiliesError> {
    let table = build_phase_table(spec, cap)?;
    let mut phases = Vec::with_capacity(table.entries.len());
    let mut error_bound = 0.0f64;
    for e in &table.entries {
        let (phase, err) = reduced_phase(e, spec.t(), precision)?;
        phases.push(phase);
        error_bound = error_bound.max(err);
    }
    Ok(DiagonalUnitary {
        spec: spec.clone(),
        phases,
        error_bound,
        precision,
    })
}

/// Builds ψ_t = d^{−n/2} Σ_j e^{iα_j} |j⟩.
pub fn build_coherent_state(
    spec: &FamilySpec,
    precision: u32,
    cap: usize,
) -> Result<StateVector, FamiliesError> {
    let unitary = build_diagonal_unitary(spec, precision, cap)?;
    let dim = unitary.dim();
    let scale = 1.0 / (dim as f64).sqrt();
    let amplitudes: Vec<Complex64> = unitary.entries().map(|z| z * scale).collect();
    // a phase error rotates the amplitude by at most err radians
    let error_bound = scale * (unitary.error_bound() + 4.0 * f64::EPSILON);
    let state = StateVector {
        spec: spec.clone(),
        amplitudes,
        error_bound,
        precision,
    };
    let norm = state.norm();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(FamiliesError::NormalizationFailed { norm });
    }
    Ok(state)
}

/// The d^n exact eigenvalues of H = Σ_j φ(j)|j⟩⟨j|.
pub fn build_hamiltonian_spectrum(
    spec: &FamilySpec,
    cap: usize,
) -> Result<SpectrumSet, FamiliesError> {
    let table = build_phase_table(spec, cap)?;
    Ok(SpectrumSet::new(table.entries)?)
}

/// Certifies γ = d^n (exact) for the family and derives the circuit and
/// tensor-network lower bounds.
///
/// Up to `rank_cap` basis monomials the γ value runs through the elimination
/// oracle; beyond that the distinct-monomial count is used directly (the
/// coordinate vectors are distinct standard basis vectors, so both routes are
/// the same exact computation). No d^n-sized numeric vector is ever built.
pub fn certify(
    spec: &FamilySpec,
    rank_cap: usize,
) -> Result<ComplexityCertificate, FamiliesError> {
    if spec.t().is_zero() {
        return Err(FamiliesError::ZeroParameter);
    }
    let d = spec.context().d();
    if d < 2 {
        return Err(FamiliesError::SmallDimension(d));
    }
    let n = spec.context().n();
    let basis_size = spec.context().basis_size();
    let gamma: GammaValue = match spec.context().basis_size_usize() {
        Some(size) if size <= rank_cap => {
            let table = build_phase_table(spec, rank_cap)?;
            gamma_exponential_set(&table.entries, spec.t())?
        }
        _ => GammaValue::exact(
            basis_size.clone(),
            alloc::vec![
                DerivationRule::BesicovitchBasis,
                DerivationRule::MonomialCount {
                    count: basis_size.clone(),
                },
                DerivationRule::LindemannWeierstrass,
            ],
        ),
    };
    debug_assert_eq!(gamma.value, basis_size);
    Ok(ComplexityCertificate::from_gamma(
        gamma,
        d,
        n,
        Some(spec.family_info()),
    )?)
}

/// c0_lower as u64 for small certificates (testing convenience).
pub fn c0_lower_u64(cert: &ComplexityCertificate) -> Option<u64> {
    cert.c0_lower.to_u64()
}

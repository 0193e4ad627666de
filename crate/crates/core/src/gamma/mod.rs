//! Transcendence-degree values and the lower-bound calculus built on them.
//!
//! A [`GammaValue`] is a certified count of algebraically independent
//! elements: exact, a lower bound, or an upper bound. Every non-trivial value
//! carries a provenance chain naming the rules that produced it, so
//! certificates are auditable end to end.
//!
//! The two workhorse rules:
//!
//! * exponentials of ℚ-linearly independent algebraic numbers are
//!   algebraically independent (Lindemann–Weierstrass), which turns the exact
//!   rank oracle of [`crate::algebra`] into exact γ values for exponential
//!   sets;
//! * every two-qudit gate contributes at most d⁴ free parameters (all but
//!   a Haar-null set of gates saturate the cap, but only the cap itself
//!   enters the calculus), so γ(U) ≤ d⁴·C₀(U) inverts to the circuit lower
//!   bound C₀ ≥ ⌈γ/d⁴⌉, and a tensor network with N internal vertices of
//!   degree ≤ δ and bond dimension ≤ D can only represent tensors with
//!   γ ≤ N·D^δ.

mod graph;

pub use graph::{TensorNetworkGraph, TnParameterCount, TnVerdict};

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::{rank_over_q, root_degree, AlgebraError, RadicalElement};

/// Errors from the bound calculus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GammaError {
    Algebra(AlgebraError),
    /// t = 0 collapses every exponential to 1.
    ZeroScale,
    /// α must avoid 0 and 1 for power-tower bounds.
    AlphaExcluded,
    /// A lower bound cannot participate in a subadditive (upper-bound) sum.
    MixedBoundKinds,
    /// An upper bound on γ certifies nothing about circuit size.
    UnusableBound,
    /// Local dimension must be ≥ 2.
    SmallDimension(u32),
    /// Tensor-network graph failed validation.
    MalformedGraph(String),
}

impl fmt::Display for GammaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaError::Algebra(e) => write!(f, "{e}"),
            GammaError::ZeroScale => write!(f, "scale t must be nonzero"),
            GammaError::AlphaExcluded => write!(f, "base α must differ from 0 and 1"),
            GammaError::MixedBoundKinds => {
                write!(f, "cannot sum a pure lower bound into an upper bound")
            }
            GammaError::UnusableBound => {
                write!(f, "need an exact value or lower bound, got an upper bound")
            }
            GammaError::SmallDimension(d) => write!(f, "local dimension {d} must be ≥ 2"),
            GammaError::MalformedGraph(msg) => write!(f, "malformed tensor network: {msg}"),
        }
    }
}

impl core::error::Error for GammaError {}

impl From<AlgebraError> for GammaError {
    fn from(e: AlgebraError) -> Self {
        GammaError::Algebra(e)
    }
}

/// How a γ value is to be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaKind {
    Exact,
    LowerBound,
    UpperBound,
}

/// One step in a derivation chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DerivationRule {
    /// The d^n monomials φ(j) are linearly independent over ℚ (Besicovitch),
    /// so coordinates are faithful.
    BesicovitchBasis,
    /// Exact Gaussian elimination found this ℚ-rank.
    RankOracle { rank: usize },
    /// Exponent tuples are distinct basis monomials; their count is their rank.
    MonomialCount { count: BigUint },
    /// e^(·) lifts ℚ-linear independence to algebraic independence
    /// (Lindemann–Weierstrass).
    LindemannWeierstrass,
    /// m^{1/d} has degree d over ℚ (Eisenstein at a prime divisor of m).
    RootDegree { m: BigUint, degree: u32 },
    /// γ({α^β, …, α^{β^{d−1}}}) ≥ d/2 for algebraic α ∉ {0,1}, deg β = d
    /// (Diaz, Philippon).
    DiazPhilippon { degree: u32 },
    /// γ(AB) ≤ γ(A) + γ(B): upper bounds add.
    Subadditivity { parts: usize },
    /// A two-qudit gate carries at most d⁴ independent entries.
    TwoQuditGateCap { d: u32 },
    /// γ(U) ≤ d⁴·C₀(U) inverted: C₀ ≥ ⌈γ/d⁴⌉.
    GateCountFloor { d: u32 },
    /// A tensor network needs at least γ specifying parameters.
    TensorNetworkCap,
    /// γ(spec) ≤ γ(U): the bound transfers to every unitary with the same
    /// spectrum, so it is stable under eigenbasis perturbations.
    SpectralTransfer,
    /// Gibbs state: dim_ℚ(spec H) − 1 ≤ γ(ρ) ≤ dim_ℚ(spec H).
    GibbsSpectrum { dim: usize },
}

impl fmt::Display for DerivationRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivationRule::BesicovitchBasis => write!(f, "besicovitch-basis"),
            DerivationRule::RankOracle { rank } => write!(f, "rank-oracle({rank})"),
            DerivationRule::MonomialCount { count } => write!(f, "monomial-count({count})"),
            DerivationRule::LindemannWeierstrass => write!(f, "lindemann-weierstrass"),
            DerivationRule::RootDegree { m, degree } => write!(f, "root-degree({m},{degree})"),
            DerivationRule::DiazPhilippon { degree } => write!(f, "diaz-philippon({degree})"),
            DerivationRule::Subadditivity { parts } => write!(f, "subadditivity({parts})"),
            DerivationRule::TwoQuditGateCap { d } => write!(f, "two-qudit-gate-cap(d={d})"),
            DerivationRule::GateCountFloor { d } => write!(f, "gate-count-floor(d={d})"),
            DerivationRule::TensorNetworkCap => write!(f, "tensor-network-cap"),
            DerivationRule::SpectralTransfer => write!(f, "spectral-transfer"),
            DerivationRule::GibbsSpectrum { dim } => write!(f, "gibbs-spectrum(dim={dim})"),
        }
    }
}

/// A certified transcendence-degree value with its derivation chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaValue {
    pub kind: GammaKind,
    pub value: BigUint,
    pub provenance: Vec<DerivationRule>,
}

impl GammaValue {
    pub fn exact(value: BigUint, provenance: Vec<DerivationRule>) -> Self {
        GammaValue {
            kind: GammaKind::Exact,
            value,
            provenance,
        }
    }

    pub fn lower_bound(value: BigUint, provenance: Vec<DerivationRule>) -> Self {
        GammaValue {
            kind: GammaKind::LowerBound,
            value,
            provenance,
        }
    }

    pub fn upper_bound(value: BigUint, provenance: Vec<DerivationRule>) -> Self {
        GammaValue {
            kind: GammaKind::UpperBound,
            value,
            provenance,
        }
    }

    /// True if the value can be used to certify lower bounds downstream.
    pub fn certifies_from_below(&self) -> bool {
        matches!(self.kind, GammaKind::Exact | GammaKind::LowerBound)
    }
}

/// A number that can play the role of α in power-tower bounds.
#[derive(Debug, Clone, PartialEq)]
pub enum AlgebraicNumber {
    Rational(BigRational),
    Radical(RadicalElement),
}

impl AlgebraicNumber {
    fn is_zero_or_one(&self) -> bool {
        match self {
            AlgebraicNumber::Rational(q) => q.is_zero() || q.is_one(),
            AlgebraicNumber::Radical(e) => match e.as_rational() {
                Some(q) => q.is_zero() || q.is_one(),
                None => false,
            },
        }
    }
}

/// Exact γ of {e^{t·α} : α ∈ exponents} for algebraic exponents and t ≠ 0.
///
/// The value is the ℚ-rank of the exponents: Lindemann–Weierstrass lifts a
/// maximal ℚ-independent subset to an algebraically independent set of
/// exponentials, and any ℚ-relation among exponents forces a multiplicative
/// relation among the exponentials.
pub fn gamma_exponential_set(
    exponents: &[RadicalElement],
    t: &BigRational,
) -> Result<GammaValue, GammaError> {
    if t.is_zero() {
        return Err(GammaError::ZeroScale);
    }
    let rank = rank_over_q(exponents)?;
    Ok(GammaValue::exact(
        BigUint::from(rank),
        alloc::vec![
            DerivationRule::BesicovitchBasis,
            DerivationRule::RankOracle { rank },
            DerivationRule::LindemannWeierstrass,
        ],
    ))
}

/// Lower bound ⌈d/2⌉ on γ({α^{m^{k/d}}}, k = 1…d−1) for algebraic α ∉ {0,1}
/// and square-free m > 1.
pub fn gamma_power_tower(
    alpha: &AlgebraicNumber,
    m: &BigUint,
    d: u32,
    trial_bound: u64,
) -> Result<GammaValue, GammaError> {
    if alpha.is_zero_or_one() {
        return Err(GammaError::AlphaExcluded);
    }
    let degree = root_degree(m, d, trial_bound)?;
    let value = BigUint::from(d.div_ceil(2));
    Ok(GammaValue::lower_bound(
        value,
        alloc::vec![
            DerivationRule::RootDegree {
                m: m.clone(),
                degree,
            },
            DerivationRule::DiazPhilippon { degree },
        ],
    ))
}

/// Subadditive combination: the sum of exact values and upper bounds is an
/// upper bound for the product/union. Pure lower bounds are rejected.
pub fn gamma_combine(parts: &[GammaValue]) -> Result<GammaValue, GammaError> {
    if parts.iter().any(|p| p.kind == GammaKind::LowerBound) {
        return Err(GammaError::MixedBoundKinds);
    }
    let mut value = BigUint::zero();
    let mut provenance = Vec::new();
    for p in parts {
        value += &p.value;
        provenance.extend(p.provenance.iter().cloned());
    }
    provenance.push(DerivationRule::Subadditivity { parts: parts.len() });
    Ok(GammaValue::upper_bound(value, provenance))
}

/// Certified lower bound ⌈γ/d⁴⌉ on the exact circuit complexity C₀.
pub fn circuit_lower_bound(gamma: &GammaValue, d: u32) -> Result<BigUint, GammaError> {
    if d < 2 {
        return Err(GammaError::SmallDimension(d));
    }
    if !gamma.certifies_from_below() {
        return Err(GammaError::UnusableBound);
    }
    let d4 = BigUint::from(d).pow(4);
    Ok(gamma.value.div_ceil(&d4))
}

/// The nonempty spectrum of an algebraic Hermitian operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumSet {
    values: Vec<RadicalElement>,
}

impl SpectrumSet {
    pub fn new(values: Vec<RadicalElement>) -> Result<Self, GammaError> {
        let first = values.first().ok_or(AlgebraError::EmptyInput)?;
        if values.iter().any(|v| v.context() != first.context()) {
            return Err(AlgebraError::ContextMismatch.into());
        }
        Ok(SpectrumSet { values })
    }

    pub fn values(&self) -> &[RadicalElement] {
        &self.values
    }
}

/// Gibbs-state bounds derived from a Hamiltonian spectrum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GibbsBounds {
    /// ℚ-span dimension of the listed eigenvalues (zeros contribute nothing).
    pub dim: usize,
    /// γ(e^H / tr e^H) ∈ [gamma_lower, gamma_upper].
    pub gamma_lower: usize,
    pub gamma_upper: usize,
    pub provenance: Vec<DerivationRule>,
}

/// Pins γ of the Gibbs state ρ = e^H / tr e^H within one of
/// dim_ℚ(span spec H).
pub fn gibbs_bounds(spectrum: &SpectrumSet) -> Result<GibbsBounds, GammaError> {
    let dim = rank_over_q(spectrum.values())?;
    Ok(GibbsBounds {
        dim,
        gamma_lower: dim.saturating_sub(1),
        gamma_upper: dim,
        provenance: alloc::vec![
            DerivationRule::BesicovitchBasis,
            DerivationRule::RankOracle { rank: dim },
            DerivationRule::GibbsSpectrum { dim },
        ],
    })
}

/// Identifying data of a constructed family, stored inside certificates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInfo {
    pub primes: Vec<BigUint>,
    pub d: u32,
    pub n: usize,
    pub t: BigRational,
}

/// A complexity lower-bound record: γ plus the circuit and tensor-network
/// bounds it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexityCertificate {
    pub gamma: GammaValue,
    pub d: u32,
    pub n: usize,
    /// C₀ ≥ c0_lower for the certified object and anything with its spectrum.
    pub c0_lower: BigUint,
    /// Any tensor network representing the object has ≥ tn_param_lower
    /// parameters.
    pub tn_param_lower: BigUint,
    pub family: Option<FamilyInfo>,
    pub derivation: Vec<DerivationRule>,
}

impl ComplexityCertificate {
    /// Derives both bounds from a γ value that certifies from below.
    pub fn from_gamma(
        gamma: GammaValue,
        d: u32,
        n: usize,
        family: Option<FamilyInfo>,
    ) -> Result<Self, GammaError> {
        let c0_lower = circuit_lower_bound(&gamma, d)?;
        let tn_param_lower = gamma.value.clone();
        let mut derivation = gamma.provenance.clone();
        derivation.push(DerivationRule::GateCountFloor { d });
        derivation.push(DerivationRule::TensorNetworkCap);
        derivation.push(DerivationRule::SpectralTransfer);
        Ok(ComplexityCertificate {
            gamma,
            d,
            n,
            c0_lower,
            tn_param_lower,
            family,
            derivation,
        })
    }
}

/// Feasibility check of a tensor-network ansatz against a certified γ.
///
/// The parameter-count bound is one-directional, so the only decisive verdict
/// is infeasibility.
pub fn tn_feasibility(
    gamma: &GammaValue,
    graph: &TensorNetworkGraph,
) -> Result<TnVerdict, GammaError> {
    if !gamma.certifies_from_below() {
        return Err(GammaError::UnusableBound);
    }
    let counts = graph.parameter_count();
    if counts.coarse < gamma.value {
        Ok(TnVerdict::Infeasible)
    } else {
        Ok(TnVerdict::Undecided)
    }
}

/// Convenience: γ as usize when it fits.
pub fn gamma_to_usize(g: &GammaValue) -> Option<usize> {
    g.value.to_usize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldContext, DEFAULT_TRIAL_BOUND};
    use num_bigint::BigInt;
    use alloc::sync::Arc;

    fn ctx(primes: &[u32], d: u32) -> Arc<FieldContext> {
        Arc::new(
            FieldContext::new(primes.iter().map(|&p| BigUint::from(p)).collect(), d).unwrap(),
        )
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn exponential_set_full_basis() {
        let c = ctx(&[2, 3], 2);
        let monomials: Vec<RadicalElement> = c
            .exponent_tuples()
            .map(|j| RadicalElement::monomial(c.clone(), &j).unwrap())
            .collect();
        let g = gamma_exponential_set(&monomials, &rat(1)).unwrap();
        assert_eq!(g.kind, GammaKind::Exact);
        assert_eq!(g.value, BigUint::from(4u32));
        assert!(g
            .provenance
            .iter()
            .any(|r| matches!(r, DerivationRule::LindemannWeierstrass)));
    }

    #[test]
    fn exponential_set_dependent_inputs() {
        let c = ctx(&[2], 2);
        let sqrt2 = RadicalElement::monomial(c.clone(), &[1]).unwrap();
        let doubled = sqrt2.scale(&rat(2));
        let g = gamma_exponential_set(&[sqrt2.clone(), doubled], &rat(1)).unwrap();
        assert_eq!(g.value, BigUint::one());

        let one = RadicalElement::one(c.clone());
        let mix = one.try_add(&sqrt2).unwrap();
        let g = gamma_exponential_set(&[one, sqrt2, mix], &rat(3)).unwrap();
        assert_eq!(g.value, BigUint::from(2u32));
    }

    #[test]
    fn exponential_set_rejects_zero_scale() {
        let c = ctx(&[2], 2);
        let e = RadicalElement::one(c);
        assert_eq!(
            gamma_exponential_set(&[e], &rat(0)),
            Err(GammaError::ZeroScale)
        );
    }

    #[test]
    fn power_tower_bounds() {
        let two = AlgebraicNumber::Rational(rat(2));
        let g = gamma_power_tower(&two, &BigUint::from(2u32), 4, DEFAULT_TRIAL_BOUND).unwrap();
        assert_eq!(g.kind, GammaKind::LowerBound);
        assert_eq!(g.value, BigUint::from(2u32));

        let g = gamma_power_tower(&two, &BigUint::from(2u32), 2, DEFAULT_TRIAL_BOUND).unwrap();
        assert_eq!(g.value, BigUint::one());

        let one = AlgebraicNumber::Rational(rat(1));
        assert_eq!(
            gamma_power_tower(&one, &BigUint::from(2u32), 4, DEFAULT_TRIAL_BOUND),
            Err(GammaError::AlphaExcluded)
        );
    }

    #[test]
    fn power_tower_odd_degree_rounds_up() {
        let alpha = AlgebraicNumber::Rational(rat(3));
        let g = gamma_power_tower(&alpha, &BigUint::from(2u32), 5, DEFAULT_TRIAL_BOUND).unwrap();
        assert_eq!(g.value, BigUint::from(3u32));
    }

    #[test]
    fn combine_sums_and_rejects_lower_bounds() {
        let e4 = GammaValue::exact(BigUint::from(4u32), alloc::vec![]);
        let e3 = GammaValue::exact(BigUint::from(3u32), alloc::vec![]);
        let g = gamma_combine(&[e4.clone(), e3]).unwrap();
        assert_eq!(g.kind, GammaKind::UpperBound);
        assert_eq!(g.value, BigUint::from(7u32));

        let zero = GammaValue::exact(BigUint::zero(), alloc::vec![]);
        assert_eq!(gamma_combine(&[zero]).unwrap().value, BigUint::zero());

        // circuit of 3 two-qubit gates at d = 2: three per-gate caps of 16
        let cap = GammaValue::upper_bound(
            BigUint::from(16u32),
            alloc::vec![DerivationRule::TwoQuditGateCap { d: 2 }],
        );
        let g = gamma_combine(&[cap.clone(), cap.clone(), cap]).unwrap();
        assert_eq!(g.value, BigUint::from(48u32));

        let lb = GammaValue::lower_bound(BigUint::one(), alloc::vec![]);
        assert_eq!(gamma_combine(&[e4, lb]), Err(GammaError::MixedBoundKinds));
    }

    #[test]
    fn circuit_bound_examples() {
        let g = GammaValue::exact(BigUint::from(1024u32), alloc::vec![]);
        assert_eq!(circuit_lower_bound(&g, 2).unwrap(), BigUint::from(64u32));

        let zero = GammaValue::exact(BigUint::zero(), alloc::vec![]);
        assert_eq!(circuit_lower_bound(&zero, 2).unwrap(), BigUint::zero());

        let g17 = GammaValue::exact(BigUint::from(17u32), alloc::vec![]);
        assert_eq!(circuit_lower_bound(&g17, 2).unwrap(), BigUint::from(2u32));

        assert_eq!(circuit_lower_bound(&g17, 1), Err(GammaError::SmallDimension(1)));
        let ub = GammaValue::upper_bound(BigUint::from(5u32), alloc::vec![]);
        assert_eq!(circuit_lower_bound(&ub, 2), Err(GammaError::UnusableBound));
    }

    #[test]
    fn gibbs_examples() {
        // {1, 2, 3}: rational spectrum spans one dimension.
        let c = ctx(&[2], 2);
        let spec = SpectrumSet::new(alloc::vec![
            RadicalElement::from_rational(c.clone(), rat(1)),
            RadicalElement::from_rational(c.clone(), rat(2)),
            RadicalElement::from_rational(c.clone(), rat(3)),
        ])
        .unwrap();
        let b = gibbs_bounds(&spec).unwrap();
        assert_eq!((b.dim, b.gamma_lower, b.gamma_upper), (1, 0, 1));

        // {1, √2}
        let spec = SpectrumSet::new(alloc::vec![
            RadicalElement::one(c.clone()),
            RadicalElement::monomial(c.clone(), &[1]).unwrap(),
        ])
        .unwrap();
        let b = gibbs_bounds(&spec).unwrap();
        assert_eq!((b.dim, b.gamma_lower, b.gamma_upper), (2, 1, 2));

        // {0}: the zero spectrum spans nothing.
        let spec = SpectrumSet::new(alloc::vec![RadicalElement::zero(c.clone())]).unwrap();
        let b = gibbs_bounds(&spec).unwrap();
        assert_eq!((b.dim, b.gamma_lower, b.gamma_upper), (0, 0, 0));

        assert!(SpectrumSet::new(alloc::vec![]).is_err());
    }

    #[test]
    fn certificate_invariant() {
        let g = GammaValue::exact(BigUint::from(1024u32), alloc::vec![]);
        let cert = ComplexityCertificate::from_gamma(g, 2, 10, None).unwrap();
        assert_eq!(cert.c0_lower, BigUint::from(64u32));
        assert_eq!(cert.tn_param_lower, BigUint::from(1024u32));
        assert!(cert
            .derivation
            .iter()
            .any(|r| matches!(r, DerivationRule::SpectralTransfer)));
    }
}

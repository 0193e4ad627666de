//! Exact arithmetic in the radical extension ℚ(p₁^{1/d}, …, p_n^{1/d}).
//!
//! Elements are stored as sparse rational coordinate vectors over the
//! monomial basis φ(j) = (∏ₖ pₖ^{jₖ})^{1/d}, j ∈ ℤ_d^n. The d^n monomials are
//! linearly independent over ℚ (Besicovitch's theorem on roots of distinct
//! primes), so coordinates determine the represented complex number uniquely
//! and equality, rank and span dimension reduce to exact linear algebra on
//! coordinates. That independence is the one analytic fact this module takes
//! as an axiom; everything built on top of it is plain exact computation.
//!
//! No rounding happens anywhere in this module except in [`RadicalElement::evaluate`],
//! which returns a value together with a rigorous error radius.
//!
//! The ring operations stop at addition and multiplication: no consumer of
//! the field needs multiplicative inverses, so division is deliberately
//! absent.

mod context;
mod element;
mod eval;
mod matrix;
mod primes;

pub use context::FieldContext;
pub use element::RadicalElement;
pub use eval::{pi_bounds, rational_to_f64, reduce_phase, Evaluation};
pub use matrix::{rank_over_q, RationalMatrix};
pub use primes::{is_prime, root_degree, square_freeness, SquareFreeness, DEFAULT_TRIAL_BOUND};


use alloc::string::String;
use core::fmt;

/// Errors from exact-field operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    /// Operands belong to different field contexts.
    ContextMismatch,
    /// A claimed prime failed the primality check.
    NotPrime(String),
    /// The same prime was listed twice.
    DuplicatePrime(String),
    /// Root order d must be ≥ 1 (≥ 2 where a proper root is required).
    InvalidRootOrder(u32),
    /// An exponent tuple has the wrong length or a component ≥ d.
    InvalidExponent,
    /// Input integer out of the admissible range (e.g. m ≤ 1).
    OutOfRange(String),
    /// The integer has a known square factor, so square-freeness fails.
    NotSquareFree { value: String, square_divisor: String },
    /// Trial factorization ran out of budget before deciding square-freeness.
    FactorizationIndeterminate { residual: String },
    /// An operation that requires at least one element got none.
    EmptyInput,
    /// Requested precision is outside the supported range.
    PrecisionOutOfRange(u32),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::ContextMismatch => write!(f, "field contexts do not match"),
            AlgebraError::NotPrime(p) => write!(f, "{p} is not prime"),
            AlgebraError::DuplicatePrime(p) => write!(f, "prime {p} listed more than once"),
            AlgebraError::InvalidRootOrder(d) => write!(f, "invalid root order d = {d}"),
            AlgebraError::InvalidExponent => write!(f, "exponent tuple invalid for this context"),
            AlgebraError::OutOfRange(msg) => write!(f, "{msg}"),
            AlgebraError::NotSquareFree {
                value,
                square_divisor,
            } => write!(f, "{value} is not square-free ({square_divisor}^2 divides it)"),
            AlgebraError::FactorizationIndeterminate { residual } => write!(
                f,
                "square-freeness undecided: unfactored residual {residual} exceeds the trial bound"
            ),
            AlgebraError::EmptyInput => write!(f, "expected at least one element"),
            AlgebraError::PrecisionOutOfRange(p) => {
                write!(f, "precision {p} outside supported range 1..=100000")
            }
        }
    }
}

impl core::error::Error for AlgebraError {}

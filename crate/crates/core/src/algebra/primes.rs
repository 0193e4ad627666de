//! Primality and square-freeness checks for the small, human-chosen integers
//! that parametrize the field contexts.

use alloc::string::ToString;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::AlgebraError;

/// Default trial-division bound for square-freeness checks.
pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

/// Miller–Rabin witnesses that make the test deterministic below 3.3 · 10²⁴.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Outcome of a bounded square-freeness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SquareFreeness {
    SquareFree,
    HasSquareFactor(BigUint),
    /// Trial division left a composite residual with no factor below the
    /// bound; square-freeness cannot be decided at this budget.
    Indeterminate { residual: BigUint },
}

/// Primality check: deterministic Miller–Rabin for inputs below 3.3 · 10²⁴,
/// a strong probable-prime test with the same witness set above.
pub fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    if let Some(small) = n.to_u64() {
        if small == 2 || small == 3 {
            return true;
        }
    }
    if n.is_even() {
        return false;
    }
    // n - 1 = 2^s * d with d odd
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;

    'witness: for &a in &MR_WITNESSES {
        let a = BigUint::from(a);
        if &a % n == BigUint::zero() {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Bounded square-freeness check by trial division.
///
/// Every prime up to `trial_bound` is divided out with its multiplicity; a
/// multiplicity ≥ 2 settles the question negatively. A residual that is 1,
/// provably prime, or smaller than `trial_bound`² is settled positively; a
/// perfect-power residual negatively; anything else is reported
/// indeterminate.
pub fn square_freeness(m: &BigUint, trial_bound: u64) -> SquareFreeness {
    debug_assert!(*m > BigUint::one());
    let mut residual = m.clone();
    let mut p = 2u64;
    while p <= trial_bound {
        let pb = BigUint::from(p);
        if &pb * &pb > residual {
            break;
        }
        if (&residual % &pb).is_zero() {
            residual /= &pb;
            if (&residual % &pb).is_zero() {
                return SquareFreeness::HasSquareFactor(pb);
            }
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    if residual.is_one() {
        return SquareFreeness::SquareFree;
    }
    // Residual has no prime factor ≤ min(trial_bound, √residual).
    if residual < BigUint::from(trial_bound) * BigUint::from(trial_bound) {
        return SquareFreeness::SquareFree; // residual is prime
    }
    // Perfect powers can still be recognized exactly.
    let bits = residual.bits();
    for e in 2..=bits.max(2) as u32 {
        let root = residual.nth_root(e);
        if root.pow(e) == residual {
            return SquareFreeness::HasSquareFactor(root);
        }
        if root <= BigUint::one() {
            break;
        }
    }
    if is_prime(&residual) {
        return SquareFreeness::SquareFree;
    }
    SquareFreeness::Indeterminate { residual }
}

/// Degree of m^{1/d} over ℚ for square-free m > 1 and d ≥ 2.
///
/// Verification: trial factorization up to `trial_bound` confirms
/// square-freeness and produces a prime divisor p of m; x^d − m is then
/// irreducible by Eisenstein's criterion at p (p ∤ 1, p | m, p² ∤ m), so the
/// degree is exactly d.
pub fn root_degree(m: &BigUint, d: u32, trial_bound: u64) -> Result<u32, AlgebraError> {
    if d < 2 {
        return Err(AlgebraError::InvalidRootOrder(d));
    }
    if *m <= BigUint::one() {
        return Err(AlgebraError::OutOfRange(alloc::format!(
            "m = {m} must exceed 1"
        )));
    }
    match square_freeness(m, trial_bound) {
        SquareFreeness::SquareFree => Ok(d),
        SquareFreeness::HasSquareFactor(p) => Err(AlgebraError::NotSquareFree {
            value: m.to_string(),
            square_divisor: p.to_string(),
        }),
        SquareFreeness::Indeterminate { residual } => {
            Err(AlgebraError::FactorizationIndeterminate {
                residual: residual.to_string(),
            })
        }
    }
}

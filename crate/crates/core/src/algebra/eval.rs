//! Rigorously bounded real evaluation of field elements.
//!
//! Monomials are evaluated by integer d-th roots at a binary fixed point, so
//! every intermediate quantity is an exact rational enclosure; the returned
//! radius is a proven absolute error bound, not an estimate.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{AlgebraError, RadicalElement};

const LOG2_10: f64 = core::f64::consts::LOG2_10;

/// A real value with a rigorous absolute error radius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    /// Midpoint of the enclosure.
    pub value: BigRational,
    /// Half-width of the enclosure: |true − value| ≤ radius.
    pub radius: BigRational,
}

impl Evaluation {
    pub fn exact(value: BigRational) -> Self {
        Evaluation {
            value,
            radius: BigRational::zero(),
        }
    }

    pub fn value_f64(&self) -> f64 {
        rational_to_f64(&self.value)
    }

    /// Error bound valid for `value_f64`, including the rounding incurred by
    /// the rational-to-float conversion.
    pub fn error_f64(&self) -> f64 {
        let radius = rational_to_f64(&self.radius) * (1.0 + 1e-12);
        radius + self.value_f64().abs() * 2e-16 + f64::MIN_POSITIVE
    }

    pub fn lower(&self) -> BigRational {
        &self.value - &self.radius
    }

    pub fn upper(&self) -> BigRational {
        &self.value + &self.radius
    }
}

/// Converts an exact rational to the nearest-ish f64 (error ≤ ~2 ulp),
/// correctly handling numerators and denominators far outside f64 range.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let negative = x.is_negative();
    let a = x.numer().abs().to_biguint().unwrap();
    let b = x.denom().abs().to_biguint().unwrap();
    let shift = 55i64 - (a.bits() as i64 - b.bits() as i64);
    let q = if shift >= 0 {
        (a << shift as u64) / b
    } else {
        a / (b << (-shift) as u64)
    };
    let qf = q.to_f64().unwrap_or(f64::MAX);
    let scaled = if shift.unsigned_abs() > i32::MAX as u64 {
        if shift > 0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        libm::ldexp(qf, -shift as i32)
    };
    if negative {
        -scaled
    } else {
        scaled
    }
}

/// arctan(1/x) scaled by 2^bits, with a rigorous ulp slack.
fn atan_recip_fixed(x: u64, bits: u64) -> (BigInt, BigInt) {
    let one = BigInt::one() << bits;
    let xb = BigInt::from(x);
    let x2 = &xb * &xb;
    let mut power = &one / &xb;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    // Each floored power drifts by ≤ k ulps, each term adds ≤ 1 ulp, and the
    // truncated tail is below 1 ulp: (k+1)² ulps is a generous cover.
    let slack = BigInt::from((k + 1) * (k + 1));
    (&sum - &slack, sum + slack)
}

/// Rational enclosure of π with width below 2^−bits (Machin's formula).
pub fn pi_bounds(bits: u64) -> (BigRational, BigRational) {
    let wb = bits + 32;
    let scale = BigInt::one() << wb;
    let (a_lo, a_hi) = atan_recip_fixed(5, wb);
    let (b_lo, b_hi) = atan_recip_fixed(239, wb);
    let lo = BigInt::from(16) * a_lo - BigInt::from(4) * b_hi;
    let hi = BigInt::from(16) * a_hi - BigInt::from(4) * b_lo;
    (
        BigRational::new(lo, scale.clone()),
        BigRational::new(hi, scale),
    )
}

/// Floor of an exponent-shifted d-th root: returns r with
/// r/2^bits ≤ m^{1/d} < (r+1)/2^bits.
fn nth_root_fixed(m: &BigUint, d: u32, bits: u64) -> BigUint {
    (m << (d as u64 * bits)).nth_root(d)
}

impl RadicalElement {
    /// Evaluates the element to at least `digits` correct decimal digits.
    ///
    /// The returned radius is guaranteed ≤ 10^−digits.
    pub fn evaluate(&self, digits: u32) -> Result<Evaluation, AlgebraError> {
        if digits == 0 || digits > 100_000 {
            return Err(AlgebraError::PrecisionOutOfRange(digits));
        }
        let target = BigRational::new(
            BigInt::one(),
            BigInt::from(10u32).pow(digits),
        );
        let d = self.context().d();
        let mut bits = (digits as f64 * LOG2_10) as u64 + 16;
        loop {
            let scale = BigRational::new(BigInt::one(), BigInt::one() << bits);
            let mut lo = BigRational::zero();
            let mut hi = BigRational::zero();
            for (j, c) in self.coords() {
                if j.iter().all(|&jk| jk == 0) {
                    lo += c;
                    hi += c;
                    continue;
                }
                let m = self.context().monomial_radicand(j);
                let r = nth_root_fixed(&m, d, bits);
                let f_lo = BigRational::from_integer(BigInt::from(r.clone())) * &scale;
                let f_hi = BigRational::from_integer(BigInt::from(r + BigUint::one())) * &scale;
                if c.is_positive() {
                    lo += c * &f_lo;
                    hi += c * &f_hi;
                } else {
                    lo += c * &f_hi;
                    hi += c * &f_lo;
                }
            }
            let two = BigRational::from_integer(BigInt::from(2));
            let radius = (&hi - &lo) / &two;
            if radius <= target {
                return Ok(Evaluation {
                    value: (&hi + &lo) / &two,
                    radius,
                });
            }
            bits += 32;
        }
    }
}

/// Reduces a nonnegative enclosure [x_lo, x_hi] modulo 2π, returning a phase
/// in [0, 2π) and a circle-metric error bound ≤ 10^−digits.
pub fn reduce_phase(
    x_lo: &BigRational,
    x_hi: &BigRational,
    digits: u32,
) -> Result<(f64, f64), AlgebraError> {
    if digits == 0 || digits > 100_000 {
        return Err(AlgebraError::PrecisionOutOfRange(digits));
    }
    debug_assert!(!x_lo.is_negative() && x_hi >= x_lo);
    let target = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(digits));
    let magnitude_bits = x_hi.to_integer().bits();
    let mut bits = magnitude_bits + (digits as f64 * LOG2_10) as u64 + 48;
    loop {
        let (pi_lo, pi_hi) = pi_bounds(bits);
        let two = BigRational::from_integer(BigInt::from(2));
        let two_pi_lo = &two * &pi_lo;
        let two_pi_hi = &two * &pi_hi;
        let q = (x_lo / &two_pi_hi).floor();
        let r_lo = x_lo - &q * &two_pi_hi;
        let r_hi = x_hi - &q * &two_pi_lo;
        let width = &r_hi - &r_lo;
        if width <= target {
            let mid = (&r_lo + &r_hi) / &two;
            let mut phase = rational_to_f64(&mid);
            let tau = core::f64::consts::TAU;
            while phase >= tau {
                phase -= tau;
            }
            if phase < 0.0 {
                phase = 0.0;
            }
            let err = rational_to_f64(&width) * 0.5 * (1.0 + 1e-12)
                + phase.abs() * 2e-16
                + f64::MIN_POSITIVE;
            return Ok((phase, err));
        }
        bits += 64;
    }
}

/// Enclosure of t·value(element) as exact rationals (test helper).
#[cfg(test)]
fn scaled_bounds(
    element: &RadicalElement,
    t: &BigRational,
    digits: u32,
) -> Result<(BigRational, BigRational), AlgebraError> {
    let eval = element.evaluate(digits)?;
    let (a, b) = (eval.lower(), eval.upper());
    Ok(if t.is_negative() {
        (t * &b, t * &a)
    } else {
        (t * &a, t * &b)
    })
}

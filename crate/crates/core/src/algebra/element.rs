//! Sparse elements of the radical extension, in canonical coordinate form.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{AlgebraError, FieldContext};

/// An element Σ_j c_j φ(j) of ℚ(p₁^{1/d}, …, p_n^{1/d}).
///
/// Coordinates are kept canonical: zero coefficients are never stored, so
/// structural equality coincides with equality of the represented numbers
/// (the basis monomials are ℚ-linearly independent).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalElement {
    context: Arc<FieldContext>,
    coords: BTreeMap<Vec<u32>, BigRational>,
}

impl RadicalElement {
    pub fn zero(context: Arc<FieldContext>) -> Self {
        RadicalElement {
            context,
            coords: BTreeMap::new(),
        }
    }

    pub fn one(context: Arc<FieldContext>) -> Self {
        Self::from_rational(context, BigRational::one())
    }

    /// The rational number `q`, i.e. q · φ(0, …, 0).
    pub fn from_rational(context: Arc<FieldContext>, q: BigRational) -> Self {
        let mut coords = BTreeMap::new();
        if !q.is_zero() {
            coords.insert(alloc::vec![0u32; context.n()], q);
        }
        RadicalElement { context, coords }
    }

    /// The basis monomial φ(j).
    pub fn monomial(context: Arc<FieldContext>, j: &[u32]) -> Result<Self, AlgebraError> {
        Self::monomial_scaled(context, j, BigRational::one())
    }

    /// c · φ(j).
    pub fn monomial_scaled(
        context: Arc<FieldContext>,
        j: &[u32],
        c: BigRational,
    ) -> Result<Self, AlgebraError> {
        context.check_exponents(j)?;
        let mut coords = BTreeMap::new();
        if !c.is_zero() {
            coords.insert(j.to_vec(), c);
        }
        Ok(RadicalElement { context, coords })
    }

    /// Builds an element from (exponent tuple, coefficient) terms, summing
    /// repeats and dropping zeros.
    pub fn from_terms<I>(context: Arc<FieldContext>, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        let mut coords: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for (j, c) in terms {
            context.check_exponents(&j)?;
            let entry = coords.entry(j).or_insert_with(BigRational::zero);
            *entry += c;
        }
        coords.retain(|_, c| !c.is_zero());
        Ok(RadicalElement { context, coords })
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.context
    }

    /// Canonical sparse coordinates, in index order.
    pub fn coords(&self) -> &BTreeMap<Vec<u32>, BigRational> {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// The rational value of the element, if it lies in ℚ.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coords.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (j, c) = self.coords.iter().next().unwrap();
                if j.iter().all(|&jk| jk == 0) {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    fn check_same_context(&self, other: &Self) -> Result<(), AlgebraError> {
        if Arc::ptr_eq(&self.context, &other.context) || self.context == other.context {
            Ok(())
        } else {
            Err(AlgebraError::ContextMismatch)
        }
    }

    /// Coordinate-wise sum. Fails on context mismatch.
    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same_context(other)?;
        let mut coords = self.coords.clone();
        for (j, c) in &other.coords {
            let entry = coords.entry(j.clone()).or_insert_with(BigRational::zero);
            *entry += c;
        }
        coords.retain(|_, c| !c.is_zero());
        Ok(RadicalElement {
            context: self.context.clone(),
            coords,
        })
    }

    pub fn neg(&self) -> Self {
        RadicalElement {
            context: self.context.clone(),
            coords: self.coords.iter().map(|(j, c)| (j.clone(), -c)).collect(),
        }
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_add(&other.neg())
    }

    /// Scales by a rational.
    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero(self.context.clone());
        }
        RadicalElement {
            context: self.context.clone(),
            coords: self.coords.iter().map(|(j, c)| (j.clone(), c * q)).collect(),
        }
    }

    /// Product, reducing exponents modulo d.
    ///
    /// When jₖ + j'ₖ = d·q + r the carried factor pₖ^q moves into the
    /// coefficient and the exponent component becomes r, which is exactly the
    /// relation φ(j)·φ(j') = (∏ₖ pₖ^{qₖ}) · φ(r).
    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same_context(other)?;
        let d = self.context.d();
        let mut coords: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for (ja, ca) in &self.coords {
            for (jb, cb) in &other.coords {
                let mut carry = BigUint::one();
                let mut j = Vec::with_capacity(ja.len());
                for (k, (&a, &b)) in ja.iter().zip(jb.iter()).enumerate() {
                    let sum = a + b;
                    j.push(sum % d);
                    if sum >= d {
                        carry *= &self.context.primes()[k]; // q is 0 or 1 here
                    }
                }
                let mut c = ca * cb;
                if !carry.is_one() {
                    c *= BigRational::from_integer(BigInt::from(carry));
                }
                let entry = coords.entry(j).or_insert_with(BigRational::zero);
                *entry += c;
            }
        }
        coords.retain(|_, c| !c.is_zero());
        Ok(RadicalElement {
            context: self.context.clone(),
            coords,
        })
    }
}

impl fmt::Display for RadicalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in &self.coords {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let all_zero = j.iter().all(|&jk| jk == 0);
            if !mag.is_one() || all_zero {
                write!(f, "{mag}")?;
            }
            if !all_zero {
                if !mag.is_one() {
                    write!(f, "*")?;
                }
                // φ(j) printed as radicand^(1/d); the radicand ∏ pₖ^{jₖ}
                // already absorbs the exponent tuple.
                let radicand = self.context.monomial_radicand(j);
                write!(f, "{radicand}^(1/{})", self.context.d())?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(primes: &[u32], d: u32) -> Arc<FieldContext> {
        Arc::new(
            FieldContext::new(primes.iter().map(|&p| BigUint::from(p)).collect(), d).unwrap(),
        )
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn add_identity_and_inverse() {
        let c = ctx(&[2], 2);
        let sqrt2 = RadicalElement::monomial(c.clone(), &[1]).unwrap();
        let zero = RadicalElement::zero(c.clone());
        assert_eq!(sqrt2.try_add(&zero).unwrap(), sqrt2);
        assert!(sqrt2.try_add(&sqrt2.neg()).unwrap().is_zero());
    }

    #[test]
    fn add_coordinatewise() {
        // (1 + √2) + (2 − 3√2) = 3 − 2√2
        let c = ctx(&[2], 2);
        let a = RadicalElement::from_terms(
            c.clone(),
            [(alloc::vec![0], rat(1, 1)), (alloc::vec![1], rat(1, 1))],
        )
        .unwrap();
        let b = RadicalElement::from_terms(
            c.clone(),
            [(alloc::vec![0], rat(2, 1)), (alloc::vec![1], rat(-3, 1))],
        )
        .unwrap();
        let expected = RadicalElement::from_terms(
            c.clone(),
            [(alloc::vec![0], rat(3, 1)), (alloc::vec![1], rat(-2, 1))],
        )
        .unwrap();
        assert_eq!(a.try_add(&b).unwrap(), expected);
    }

    #[test]
    fn mul_reduces_exponents() {
        // √2 · √2 = 2
        let c = ctx(&[2], 2);
        let sqrt2 = RadicalElement::monomial(c.clone(), &[1]).unwrap();
        let two = RadicalElement::from_rational(c.clone(), rat(2, 1));
        assert_eq!(sqrt2.try_mul(&sqrt2).unwrap(), two);

        // √2 · √3 = √6, the basis monomial j = (1, 1)
        let c23 = ctx(&[2, 3], 2);
        let sqrt2 = RadicalElement::monomial(c23.clone(), &[1, 0]).unwrap();
        let sqrt3 = RadicalElement::monomial(c23.clone(), &[0, 1]).unwrap();
        let sqrt6 = RadicalElement::monomial(c23.clone(), &[1, 1]).unwrap();
        assert_eq!(sqrt2.try_mul(&sqrt3).unwrap(), sqrt6);

        // d = 3: 2^{2/3} · 2^{2/3} = 2 · 2^{1/3}  (4 = 3·1 + 1)
        let c3 = ctx(&[2], 3);
        let x = RadicalElement::monomial(c3.clone(), &[2]).unwrap();
        let expected = RadicalElement::monomial_scaled(c3.clone(), &[1], rat(2, 1)).unwrap();
        assert_eq!(x.try_mul(&x).unwrap(), expected);
    }

    #[test]
    fn context_mismatch_rejected() {
        let a = RadicalElement::one(ctx(&[2], 2));
        let b = RadicalElement::one(ctx(&[3], 2));
        assert_eq!(a.try_add(&b), Err(AlgebraError::ContextMismatch));
        assert_eq!(a.try_mul(&b), Err(AlgebraError::ContextMismatch));
    }

    #[test]
    fn canonical_zero_stripping() {
        let c = ctx(&[2], 2);
        let e = RadicalElement::from_terms(
            c.clone(),
            [(alloc::vec![1], rat(1, 2)), (alloc::vec![1], rat(-1, 2))],
        )
        .unwrap();
        assert!(e.is_zero());
        assert_eq!(e.coords().len(), 0);
    }

    #[test]
    fn display_reads_naturally() {
        let c = ctx(&[2, 3], 2);
        let e = RadicalElement::from_terms(
            c.clone(),
            [
                (alloc::vec![0, 0], rat(3, 1)),
                (alloc::vec![1, 1], rat(-1, 2)),
            ],
        )
        .unwrap();
        assert_eq!(alloc::format!("{e}"), "3 - 1/2*6^(1/2)");
    }
}

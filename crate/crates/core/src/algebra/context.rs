//! Field contexts: the data (p₁, …, p_n; d) defining ℚ(p₁^{1/d}, …, p_n^{1/d}).

use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec::Vec;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::primes::is_prime;
use super::AlgebraError;

/// The radical extension ℚ(p₁^{1/d}, …, p_n^{1/d}) of the rationals.
///
/// The basis monomials are φ(j) = (∏ₖ pₖ^{jₖ})^{1/d} for j ∈ ℤ_d^n, indexed
/// row-major with j₁ most significant (the last component varies fastest).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldContext {
    primes: Vec<BigUint>,
    d: u32,
}

impl FieldContext {
    /// Validates that the pₖ are distinct primes and d ≥ 1.
    pub fn new(primes: Vec<BigUint>, d: u32) -> Result<Self, AlgebraError> {
        if d < 1 {
            return Err(AlgebraError::InvalidRootOrder(d));
        }
        let mut seen = BTreeSet::new();
        for p in &primes {
            if !is_prime(p) {
                return Err(AlgebraError::NotPrime(p.to_string()));
            }
            if !seen.insert(p.clone()) {
                return Err(AlgebraError::DuplicatePrime(p.to_string()));
            }
        }
        Ok(FieldContext { primes, d })
    }

    /// Context over the first `n` primes.
    pub fn with_first_primes(n: usize, d: u32) -> Result<Self, AlgebraError> {
        let mut primes = Vec::with_capacity(n);
        let mut candidate = 2u64;
        while primes.len() < n {
            if is_prime(&BigUint::from(candidate)) {
                primes.push(BigUint::from(candidate));
            }
            candidate += 1;
        }
        FieldContext::new(primes, d)
    }

    pub fn primes(&self) -> &[BigUint] {
        &self.primes
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.primes.len()
    }

    /// Basis size d^n.
    pub fn basis_size(&self) -> BigUint {
        BigUint::from(self.d).pow(self.n() as u32)
    }

    /// Basis size as usize, if it is small enough to index tables with.
    pub fn basis_size_usize(&self) -> Option<usize> {
        self.basis_size().to_usize()
    }

    /// Checks that `j` is a valid exponent tuple: length n, components < d.
    pub fn check_exponents(&self, j: &[u32]) -> Result<(), AlgebraError> {
        if j.len() != self.n() || j.iter().any(|&jk| jk >= self.d) {
            return Err(AlgebraError::InvalidExponent);
        }
        Ok(())
    }

    /// The radicand ∏ₖ pₖ^{jₖ} of the monomial φ(j).
    pub fn monomial_radicand(&self, j: &[u32]) -> BigUint {
        let mut m = BigUint::one();
        for (p, &e) in self.primes.iter().zip(j) {
            if e > 0 {
                m *= p.pow(e);
            }
        }
        m
    }

    /// Row-major position of the exponent tuple `j` (j₁ most significant).
    pub fn exponents_to_index(&self, j: &[u32]) -> usize {
        let mut idx = 0usize;
        for &jk in j {
            idx = idx * self.d as usize + jk as usize;
        }
        idx
    }

    /// Inverse of [`Self::exponents_to_index`].
    pub fn index_to_exponents(&self, mut idx: usize) -> Vec<u32> {
        let n = self.n();
        let d = self.d as usize;
        let mut j = alloc::vec![0u32; n];
        for k in (0..n).rev() {
            j[k] = (idx % d) as u32;
            idx /= d;
        }
        j
    }

    /// Iterates over all d^n exponent tuples in index order.
    ///
    /// Requires the basis size to fit in a usize.
    pub fn exponent_tuples(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        let size = self.basis_size_usize().expect("basis size exceeds usize");
        (0..size).map(move |i| self.index_to_exponents(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_validates() {
        assert!(FieldContext::new(alloc::vec![BigUint::from(2u32)], 2).is_ok());
        assert!(matches!(
            FieldContext::new(alloc::vec![BigUint::from(4u32)], 2),
            Err(AlgebraError::NotPrime(_))
        ));
        assert!(matches!(
            FieldContext::new(alloc::vec![BigUint::from(3u32), BigUint::from(3u32)], 2),
            Err(AlgebraError::DuplicatePrime(_))
        ));
        assert!(matches!(
            FieldContext::new(alloc::vec![], 0),
            Err(AlgebraError::InvalidRootOrder(0))
        ));
    }

    #[test]
    fn first_primes() {
        let ctx = FieldContext::with_first_primes(4, 2).unwrap();
        let expected: Vec<BigUint> = [2u32, 3, 5, 7].iter().map(|&p| BigUint::from(p)).collect();
        assert_eq!(ctx.primes(), &expected[..]);
    }

    #[test]
    fn index_round_trip() {
        let ctx = FieldContext::with_first_primes(3, 3).unwrap();
        for idx in 0..27 {
            let j = ctx.index_to_exponents(idx);
            assert_eq!(ctx.exponents_to_index(&j), idx);
        }
        // j1 is most significant: index 1 has last component set.
        assert_eq!(ctx.index_to_exponents(1), alloc::vec![0, 0, 1]);
        assert_eq!(ctx.index_to_exponents(9), alloc::vec![1, 0, 0]);
    }

    #[test]
    fn radicand() {
        let ctx = FieldContext::with_first_primes(2, 2).unwrap();
        assert_eq!(ctx.monomial_radicand(&[1, 1]), BigUint::from(6u32));
        assert_eq!(ctx.monomial_radicand(&[0, 0]), BigUint::from(1u32));
    }
}

//! Exact rank computation over ℚ.
//!
//! Elimination works on sparse rows so that large, mostly-diagonal coordinate
//! matrices (the common case: monomial families) cost almost nothing. Pivots
//! are chosen by the largest absolute numerator in the pivot column, which
//! keeps intermediate coefficients from blowing up on dense inputs;
//! correctness does not depend on the heuristic.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{AlgebraError, RadicalElement};

/// Dense matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: alloc::vec![BigRational::zero(); rows * cols],
        }
    }

    /// Builds from row-major entries; `entries.len()` must equal rows·cols.
    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: Vec<BigRational>,
    ) -> Result<Self, AlgebraError> {
        if entries.len() != rows * cols {
            return Err(AlgebraError::OutOfRange(alloc::format!(
                "expected {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(RationalMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.entries[r * self.cols + c] = v;
    }

    /// Rank by exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        let sparse_rows: Vec<SparseRow> = (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .filter_map(|c| {
                        let v = self.get(r, c);
                        (!v.is_zero()).then(|| (c, v.clone()))
                    })
                    .collect()
            })
            .collect();
        rank_sparse(sparse_rows)
    }
}

type SparseRow = BTreeMap<usize, BigRational>;

/// Rank of a system of sparse rational rows, by exact elimination.
///
/// Rows are bucketed by leading column, so rows that share no support never
/// touch each other; a diagonal-patterned m×m system costs O(m log m).
pub(crate) fn rank_sparse(rows: Vec<SparseRow>) -> usize {
    let mut buckets: BTreeMap<usize, Vec<SparseRow>> = BTreeMap::new();
    for row in rows {
        if let Some(&lead) = row.keys().next() {
            buckets.entry(lead).or_default().push(row);
        }
    }
    let mut rank = 0;
    while let Some((&pivot_col, _)) = buckets.first_key_value() {
        let mut cohort = buckets.remove(&pivot_col).unwrap();
        // largest |numerator| at the pivot column
        let pivot_idx = cohort
            .iter()
            .enumerate()
            .max_by(|(_, a), (_, b)| {
                numer_magnitude(&a[&pivot_col]).cmp(&numer_magnitude(&b[&pivot_col]))
            })
            .map(|(i, _)| i)
            .unwrap();
        let pivot_row = cohort.swap_remove(pivot_idx);
        let pivot_val = pivot_row[&pivot_col].clone();
        rank += 1;
        for mut row in cohort {
            let factor = &row[&pivot_col] / &pivot_val;
            for (c, v) in &pivot_row {
                let entry = row.entry(*c).or_insert_with(BigRational::zero);
                *entry -= &factor * v;
            }
            row.retain(|_, v| !v.is_zero());
            if let Some(&lead) = row.keys().next() {
                debug_assert!(lead > pivot_col);
                buckets.entry(lead).or_default().push(row);
            }
        }
    }
    rank
}

fn numer_magnitude(q: &BigRational) -> BigInt {
    q.numer().abs()
}

/// Dimension of the ℚ-span of the given field elements.
///
/// Faithfulness of the monomial basis makes this the ℚ-dimension of the span
/// of the represented complex numbers. Fails on an empty list or mixed
/// contexts.
pub fn rank_over_q(elements: &[RadicalElement]) -> Result<usize, AlgebraError> {
    let first = elements.first().ok_or(AlgebraError::EmptyInput)?;
    let ctx = first.context();
    let mut columns: BTreeMap<&[u32], usize> = BTreeMap::new();
    for e in elements {
        if e.context() != ctx {
            return Err(AlgebraError::ContextMismatch);
        }
        for j in e.coords().keys() {
            let next = columns.len();
            columns.entry(j.as_slice()).or_insert(next);
        }
    }
    let rows: Vec<SparseRow> = elements
        .iter()
        .map(|e| {
            e.coords()
                .iter()
                .map(|(j, c)| (columns[j.as_slice()], c.clone()))
                .collect()
        })
        .collect();
    Ok(rank_sparse(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldContext;
    use alloc::sync::Arc;
    use num_bigint::BigUint;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn ctx23() -> Arc<FieldContext> {
        Arc::new(
            FieldContext::new(alloc::vec![BigUint::from(2u32), BigUint::from(3u32)], 2).unwrap(),
        )
    }

    #[test]
    fn monomials_are_independent() {
        // {1, √2, √3, √6} has rank 4.
        let c = ctx23();
        let elements: Vec<RadicalElement> = c
            .exponent_tuples()
            .map(|j| RadicalElement::monomial(c.clone(), &j).unwrap())
            .collect();
        assert_eq!(rank_over_q(&elements).unwrap(), 4);
    }

    #[test]
    fn scalar_multiples_have_rank_one() {
        let c = ctx23();
        let sqrt2 = RadicalElement::monomial(c.clone(), &[1, 0]).unwrap();
        let list = [
            sqrt2.clone(),
            sqrt2.scale(&rat(2, 1)),
            sqrt2.scale(&rat(1, 3)),
        ];
        assert_eq!(rank_over_q(&list).unwrap(), 1);
    }

    #[test]
    fn dependent_combination() {
        // {1+√2, 1−√2, √2} has rank 2.
        let c = ctx23();
        let one = RadicalElement::one(c.clone());
        let sqrt2 = RadicalElement::monomial(c.clone(), &[1, 0]).unwrap();
        let list = [
            one.try_add(&sqrt2).unwrap(),
            one.try_sub(&sqrt2).unwrap(),
            sqrt2.clone(),
        ];
        assert_eq!(rank_over_q(&list).unwrap(), 2);
    }

    #[test]
    fn empty_rejected() {
        assert_eq!(rank_over_q(&[]), Err(AlgebraError::EmptyInput));
    }

    #[test]
    fn zero_rows_do_not_count() {
        let c = ctx23();
        let list = [RadicalElement::zero(c.clone()), RadicalElement::one(c)];
        assert_eq!(rank_over_q(&list).unwrap(), 1);
    }

    #[test]
    fn dense_matrix_rank() {
        let m = RationalMatrix::from_entries(
            3,
            3,
            alloc::vec![
                rat(1, 1),
                rat(2, 1),
                rat(3, 1),
                rat(2, 1),
                rat(4, 1),
                rat(6, 1),
                rat(0, 1),
                rat(1, 1),
                rat(1, 2),
            ],
        )
        .unwrap();
        assert_eq!(m.rank(), 2);
    }
}

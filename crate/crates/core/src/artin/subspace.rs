//! Enumeration of nonzero subspaces of `k^n` as matrices in reduced row
//! echelon form, and sampled lines over function fields.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::Matrix;

/// Number of `k`-dimensional subspaces of `F_q^n`, saturating at `u128::MAX`.
pub fn gaussian_binomial(q: u64, n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= q.pow(n - i) - 1u32;
        den *= q.pow(i + 1) - 1u32;
    }
    let c = num / den;
    c.to_u128().unwrap_or(u128::MAX)
}

/// Number of nonzero subspaces of `F_q^n`.
pub fn subspace_count(q: u64, n: u32) -> u128 {
    (1..=n).fold(0u128, |acc, k| acc.saturating_add(gaussian_binomial(q, n, k)))
}

/// Lazily yields every subspace of dimension in `dims` as its RREF matrix:
/// by dimension, then pivot set in lexicographic order, then free entries
/// as an odometer over the field enumeration (last entry fastest).
#[derive(Clone, Debug)]
pub struct SubspaceIter {
    field: Field,
    q: u64,
    n: usize,
    k: usize,
    max_k: usize,
    pivots: Option<Vec<usize>>,
    free: Vec<(usize, usize)>,
    digits: Vec<u64>,
    total: u128,
}

impl SubspaceIter {
    fn new(field: &Field, n: usize, min_k: usize, max_k: usize) -> Self {
        let q = field.size().expect("finite field");
        let total = (min_k..=max_k).fold(0u128, |acc, k| acc.saturating_add(gaussian_binomial(q, n as u32, k as u32)));
        SubspaceIter {
            field: field.clone(),
            q,
            n,
            k: min_k,
            max_k,
            pivots: None,
            free: Vec::new(),
            digits: Vec::new(),
            total,
        }
    }

    /// Total number of subspaces this iterator yields.
    pub fn total(&self) -> u128 {
        self.total
    }

    fn set_pivots(&mut self, pivots: Vec<usize>) {
        self.free = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| {
                let pivots = &pivots;
                (pc + 1..self.n).filter(move |c| !pivots.contains(c)).map(move |c| (r, c))
            })
            .collect();
        self.digits = vec![0; self.free.len()];
        self.pivots = Some(pivots);
    }

    fn next_combination(&self, pivots: &[usize]) -> Option<Vec<usize>> {
        let k = pivots.len();
        let mut next = pivots.to_vec();
        for i in (0..k).rev() {
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                return Some(next);
            }
        }
        None
    }

    fn current(&self) -> Matrix {
        let pivots = self.pivots.as_ref().expect("initialised");
        let mut m = Matrix::zeros(&self.field, self.k, self.n);
        for (r, &c) in pivots.iter().enumerate() {
            m.set(r, c, self.field.one());
        }
        for (&(r, c), &d) in self.free.iter().zip(&self.digits) {
            m.set(r, c, self.field.element_at(d));
        }
        m
    }
}

impl Iterator for SubspaceIter {
    type Item = Matrix;

    fn next(&mut self) -> Option<Matrix> {
        loop {
            if self.k == 0 || self.k > self.max_k || self.k > self.n {
                return None;
            }
            match self.pivots.take() {
                None => {
                    self.set_pivots((0..self.k).collect());
                    return Some(self.current());
                }
                Some(pivots) => {
                    let mut i = self.digits.len();
                    while i > 0 {
                        i -= 1;
                        self.digits[i] += 1;
                        if self.digits[i] < self.q {
                            self.pivots = Some(pivots);
                            return Some(self.current());
                        }
                        self.digits[i] = 0;
                    }
                    match self.next_combination(&pivots) {
                        Some(next) => {
                            self.set_pivots(next);
                            return Some(self.current());
                        }
                        None => self.k += 1,
                    }
                }
            }
        }
    }
}

fn finite_or_error(field: &Field) -> Result<u64> {
    field.size().ok_or(Error::InfiniteResidueField)
}

/// Every nonzero subspace of `k^n`, failing when there are more than `budget`.
pub fn enumerate_socle_subspaces(field: &Field, n: usize, budget: u64) -> Result<SubspaceIter> {
    let q = finite_or_error(field)?;
    let count = subspace_count(q, n as u32);
    if count > budget as u128 {
        return Err(Error::TooManySubspaces { count, budget });
    }
    Ok(SubspaceIter::new(field, n, 1, n))
}

/// One normalised vector per line of `k^n`.
pub fn enumerate_projective_points(field: &Field, n: usize, budget: u64) -> Result<SubspaceIter> {
    let q = finite_or_error(field)?;
    let count = gaussian_binomial(q, n as u32, 1);
    if count > budget as u128 {
        return Err(Error::TooManySubspaces { count, budget });
    }
    Ok(SubspaceIter::new(field, n, 1, 1.min(n)))
}

/// Lines of `k^n` spanned by vectors with entries in `sample`, each scaled
/// so its first nonzero entry is 1, deduplicated in first-seen order.
pub fn sampled_lines(field: &Field, n: usize, sample: &[FieldElement], budget: u64) -> Result<Vec<Matrix>> {
    let count = (sample.len() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if count > budget as u128 {
        return Err(Error::TooManySubspaces { count, budget });
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    if n == 0 || sample.is_empty() {
        return Ok(out);
    }
    let mut digits = vec![0usize; n];
    loop {
        let v: Vec<FieldElement> = digits.iter().map(|&d| sample[d].clone()).collect();
        if let Some(lead) = v.iter().find(|c| !field.is_zero(c)) {
            let inv = field.inv(lead)?;
            let normal: Vec<FieldElement> = v.iter().map(|c| field.mul(c, &inv)).collect();
            if seen.insert(normal.clone()) {
                out.push(Matrix::from_rows(vec![normal])?);
            }
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < sample.len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// The default sample `{0, 1, t_i, t_i + 1}` for a function field.
pub fn default_sample(field: &Field) -> Vec<FieldElement> {
    let mut out = vec![field.zero(), field.one()];
    for name in field.generator_names() {
        let t = field.generator(&name).expect("named generator");
        let t1 = field.add(&t, &field.one());
        out.push(t);
        out.push(t1);
    }
    let mut seen = HashSet::new();
    out.retain(|c| seen.insert(c.clone()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    #[test]
    fn counts() {
        assert_eq!(gaussian_binomial(2, 3, 1), 7);
        assert_eq!(gaussian_binomial(2, 3, 2), 7);
        assert_eq!(subspace_count(2, 3), 15);
        assert_eq!(subspace_count(2, 4), 66);
        assert_eq!(subspace_count(3, 2), 5);
    }

    #[test]
    fn enumerates_distinct_rref_subspaces() {
        let f = Field::prime(2).unwrap();
        for n in 1..=4 {
            let all: Vec<Matrix> = enumerate_socle_subspaces(&f, n, 1_000_000).unwrap().collect();
            assert_eq!(all.len() as u128, subspace_count(2, n as u32));
            let distinct: HashSet<_> = all.iter().cloned().collect();
            assert_eq!(distinct.len(), all.len());
            for m in &all {
                assert_eq!(&m.rref(&f).0, m);
            }
        }
        let f3 = Field::prime(3).unwrap();
        assert_eq!(enumerate_socle_subspaces(&f3, 3, 1_000_000).unwrap().count(), 27);
    }

    #[test]
    fn points_and_budget() {
        let f = Field::prime(3).unwrap();
        assert_eq!(enumerate_projective_points(&f, 3, 100).unwrap().count(), 13);
        let f2 = Field::prime(2).unwrap();
        assert_eq!(
            enumerate_socle_subspaces(&f2, 4, 10).unwrap_err(),
            Error::TooManySubspaces { count: 66, budget: 10 }
        );
    }

    #[test]
    fn function_field_lines() {
        let k = Field::new(FieldSpec::function(2, &["t"])).unwrap();
        assert_eq!(enumerate_socle_subspaces(&k, 2, 10).unwrap_err(), Error::InfiniteResidueField);
        let sample = default_sample(&k);
        assert_eq!(sample.len(), 4);
        // (1, b/a) for a in {1, t, t+1}, b in the sample gives 8 slopes; plus (0, 1).
        assert_eq!(sampled_lines(&k, 2, &sample, 100).unwrap().len(), 9);
    }
}

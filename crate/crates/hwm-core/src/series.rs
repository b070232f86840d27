//! Truncated formal series and exact Laurent polynomials of weights.
//!
//! A [`FormalSeries`] is supported on `{lambda - sum m_i alpha_i : m >= 0}`
//! and keeps only offsets of height at most its cutoff. Every series built in
//! this crate has componentwise non-negative keys, so in any product the keys
//! only grow: truncating factors at the cutoff loses nothing inside the band,
//! and products of band-exact series are band-exact.
//!
//! [`LaurentPoly`] is the untruncated companion for identities over full
//! (finite) root systems, where exponents of both signs occur but everything
//! is a genuine polynomial.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rational::{height, Q};

/// Integer-coefficient series `sum_m coeff(m) e^{lambda - sum m_i alpha_i}`,
/// truncated at offset height `cutoff`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSeries {
    basepoint: Vec<Q>,
    cutoff: i64,
    coeffs: BTreeMap<Vec<i64>, i64>,
}

impl FormalSeries {
    pub fn zero(basepoint: Vec<Q>, cutoff: i64) -> Self {
        FormalSeries {
            basepoint,
            cutoff,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(basepoint: Vec<Q>, cutoff: i64) -> Self {
        let n = basepoint.len();
        let mut s = Self::zero(basepoint, cutoff);
        s.add_term(vec![0; n], 1);
        s
    }

    /// `coeff * e^{lambda - sum offset_i alpha_i}` (zero if out of band).
    pub fn monomial(basepoint: Vec<Q>, cutoff: i64, offset: Vec<i64>, coeff: i64) -> Self {
        let mut s = Self::zero(basepoint, cutoff);
        s.add_term(offset, coeff);
        s
    }

    /// The truncated geometric series `sum_{k >= 0} e^{-k step}` for a
    /// nonzero componentwise non-negative step.
    pub fn geometric(basepoint: Vec<Q>, cutoff: i64, step: &[i64]) -> Self {
        assert!(
            step.iter().all(|&x| x >= 0) && height(step) > 0,
            "step must be > 0"
        );
        let mut s = Self::zero(basepoint, cutoff);
        let mut k = vec![0i64; step.len()];
        loop {
            if height(&k) > cutoff {
                break;
            }
            s.add_term(k.clone(), 1);
            for (ki, si) in k.iter_mut().zip(step) {
                *ki += si;
            }
        }
        s
    }

    pub fn basepoint(&self) -> &[Q] {
        &self.basepoint
    }

    pub fn cutoff(&self) -> i64 {
        self.cutoff
    }

    pub fn rank(&self) -> usize {
        self.basepoint.len()
    }

    pub fn coeff(&self, offset: &[i64]) -> i64 {
        self.coeffs.get(offset).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Adds `coeff` at `offset`, dropping the term if it lands out of band
    /// or cancels to zero. Keys must be componentwise non-negative.
    pub fn add_term(&mut self, offset: Vec<i64>, coeff: i64) {
        debug_assert!(offset.iter().all(|&x| x >= 0), "negative offset coordinate");
        if coeff == 0 || height(&offset) > self.cutoff {
            return;
        }
        match self.coeffs.entry(offset) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    /// Terms sorted by (height, lexicographic offset).
    pub fn iter_sorted(&self) -> Vec<(&Vec<i64>, i64)> {
        let mut v: Vec<_> = self.coeffs.iter().map(|(k, &c)| (k, c)).collect();
        v.sort_by_key(|(k, _)| (height(k), (*k).clone()));
        v
    }

    /// Offsets with nonzero coefficient, sorted as in `iter_sorted`.
    pub fn support(&self) -> Vec<Vec<i64>> {
        self.iter_sorted()
            .into_iter()
            .map(|(k, _)| k.clone())
            .collect()
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.basepoint != other.basepoint || self.cutoff != other.cutoff {
            return Err(Error::BasepointMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (k, &c) in &other.coeffs {
            out.add_term(k.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (k, &c) in &other.coeffs {
            out.add_term(k.clone(), -c);
        }
        Ok(out)
    }

    pub fn scale(&self, factor: i64) -> Self {
        let mut out = Self::zero(self.basepoint.clone(), self.cutoff);
        for (k, &c) in &self.coeffs {
            out.add_term(k.clone(), c * factor);
        }
        out
    }

    /// Truncated product. Sound because all keys are non-negative, so terms
    /// outside either factor's band could only have produced terms outside
    /// the result's band.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = Self::zero(self.basepoint.clone(), self.cutoff);
        for (k1, &c1) in &self.coeffs {
            let h1 = height(k1);
            for (k2, &c2) in &other.coeffs {
                if h1 + height(k2) > self.cutoff {
                    continue;
                }
                let key: Vec<i64> = k1.iter().zip(k2).map(|(a, b)| a + b).collect();
                out.add_term(key, c1 * c2);
            }
        }
        Ok(out)
    }
}

/// Finite integer-coefficient Laurent polynomial in `e^{alpha_i}`, with
/// exponents of either sign and no truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    rank: usize,
    coeffs: BTreeMap<Vec<i64>, i64>,
}

impl LaurentPoly {
    pub fn zero(rank: usize) -> Self {
        LaurentPoly {
            rank,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(rank, vec![0; rank], 1)
    }

    /// `coeff * e^{sum exponent_i alpha_i}`.
    pub fn monomial(rank: usize, exponent: Vec<i64>, coeff: i64) -> Self {
        let mut p = Self::zero(rank);
        p.add_term(exponent, coeff);
        p
    }

    /// `1 - e^{sum exponent_i alpha_i}`.
    pub fn one_minus(rank: usize, exponent: Vec<i64>) -> Self {
        let mut p = Self::one(rank);
        p.add_term(exponent, -1);
        p
    }

    pub fn add_term(&mut self, exponent: Vec<i64>, coeff: i64) {
        assert_eq!(exponent.len(), self.rank);
        if coeff == 0 {
            return;
        }
        let entry = self.coeffs.entry(exponent.clone()).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.coeffs.remove(&exponent);
        }
    }

    pub fn coeff(&self, exponent: &[i64]) -> i64 {
        self.coeffs.get(exponent).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank);
        let mut out = self.clone();
        for (k, &c) in &other.coeffs {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank);
        let mut out = self.clone();
        for (k, &c) in &other.coeffs {
            out.add_term(k.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank);
        let mut out = Self::zero(self.rank);
        for (k1, &c1) in &self.coeffs {
            for (k2, &c2) in &other.coeffs {
                let key: Vec<i64> = k1.iter().zip(k2).map(|(a, b)| a + b).collect();
                out.add_term(key, c1 * c2);
            }
        }
        out
    }

    /// Terms sorted by (height, lexicographic exponent).
    pub fn iter_sorted(&self) -> Vec<(&Vec<i64>, i64)> {
        let mut v: Vec<_> = self.coeffs.iter().map(|(k, &c)| (k, c)).collect();
        v.sort_by_key(|(k, _)| (height(k), (*k).clone()));
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn bp() -> Vec<Q> {
        vec![q(1), q(1)]
    }

    #[test]
    fn geometric_inverts_one_minus() {
        // (1 - e^{-alpha_0}) * sum_k e^{-k alpha_0} = 1 within any band.
        let cutoff = 7;
        let geo = FormalSeries::geometric(bp(), cutoff, &[1, 0]);
        let mut one_minus = FormalSeries::one(bp(), cutoff);
        one_minus.add_term(vec![1, 0], -1);
        assert_eq!(
            one_minus.mul(&geo).unwrap(),
            FormalSeries::one(bp(), cutoff)
        );
    }

    #[test]
    fn products_commute_and_distribute() {
        let cutoff = 5;
        let a = FormalSeries::geometric(bp(), cutoff, &[1, 0]);
        let b = FormalSeries::geometric(bp(), cutoff, &[1, 1]);
        let c = FormalSeries::monomial(bp(), cutoff, vec![0, 1], -2);
        assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn truncation_drops_out_of_band_terms() {
        let s = FormalSeries::monomial(bp(), 3, vec![2, 2], 5);
        assert!(s.is_zero());
        let geo = FormalSeries::geometric(bp(), 4, &[1, 1]);
        assert_eq!(geo.support(), vec![vec![0, 0], vec![1, 1], vec![2, 2]]);
    }

    #[test]
    fn mismatched_basepoints_are_rejected() {
        let a = FormalSeries::one(bp(), 4);
        let b = FormalSeries::one(vec![q(0), q(0)], 4);
        assert_eq!(a.mul(&b), Err(Error::BasepointMismatch));
        let c = FormalSeries::one(bp(), 5);
        assert_eq!(a.add(&c), Err(Error::BasepointMismatch));
    }

    #[test]
    fn cancellation_removes_entries() {
        let mut s = FormalSeries::monomial(bp(), 4, vec![1, 0], 3);
        s.add_term(vec![1, 0], -3);
        assert!(s.is_zero());
        assert_eq!(s.len(), 0);
    }

    #[test]
    fn laurent_multiplication_handles_negative_exponents() {
        // (1 - e^alpha)(1 - e^{-alpha}) = 2 - e^alpha - e^{-alpha} in rank 1.
        let lhs = LaurentPoly::one_minus(1, vec![1]).mul(&LaurentPoly::one_minus(1, vec![-1]));
        let mut expected = LaurentPoly::monomial(1, vec![0], 2);
        expected.add_term(vec![1], -1);
        expected.add_term(vec![-1], -1);
        assert_eq!(lhs, expected);
    }

    #[test]
    fn sorted_iteration_is_by_height_then_lex() {
        let mut s = FormalSeries::zero(bp(), 6);
        s.add_term(vec![0, 2], 1);
        s.add_term(vec![1, 0], 1);
        s.add_term(vec![2, 0], 1);
        s.add_term(vec![0, 1], 1);
        let keys: Vec<Vec<i64>> = s.support();
        assert_eq!(keys, vec![vec![0, 1], vec![1, 0], vec![0, 2], vec![2, 0]]);
    }
}

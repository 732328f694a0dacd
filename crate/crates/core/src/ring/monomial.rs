use std::fmt;
use std::hash::{Hash, Hasher};

use smallvec::SmallVec;

/// Dense exponent vector with a cached total degree.
#[derive(Clone, Default)]
pub struct ExponentVector {
    exps: SmallVec<[u32; 8]>,
    degree: u32,
}

impl ExponentVector {
    pub fn one(nvars: usize) -> Self {
        ExponentVector { exps: SmallVec::from_elem(0, nvars), degree: 0 }
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        let degree = exps.iter().sum();
        ExponentVector { exps: SmallVec::from_slice(exps), degree }
    }

    /// The monomial `x_index` in a ring with `nvars` variables.
    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[index] = 1;
        m.degree = 1;
        m
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn get(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    #[inline]
    pub fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.len(), rhs.len());
        let exps = self.exps.iter().zip(&rhs.exps).map(|(a, b)| a + b).collect();
        ExponentVector { exps, degree: self.degree + rhs.degree }
    }

    #[inline]
    pub fn divides(&self, rhs: &Self) -> bool {
        self.degree <= rhs.degree && self.exps.iter().zip(&rhs.exps).all(|(a, b)| a <= b)
    }

    /// `rhs / self` when `self` divides `rhs`.
    pub fn quotient_of(&self, rhs: &Self) -> Option<Self> {
        if !self.divides(rhs) {
            return None;
        }
        let exps = rhs.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect();
        Some(ExponentVector { exps, degree: rhs.degree - self.degree })
    }

    pub fn lcm(&self, rhs: &Self) -> Self {
        let exps: SmallVec<[u32; 8]> = self.exps.iter().zip(&rhs.exps).map(|(a, b)| *a.max(b)).collect();
        let degree = exps.iter().sum();
        ExponentVector { exps, degree }
    }

    pub fn gcd(&self, rhs: &Self) -> Self {
        let exps: SmallVec<[u32; 8]> = self.exps.iter().zip(&rhs.exps).map(|(a, b)| *a.min(b)).collect();
        let degree = exps.iter().sum();
        ExponentVector { exps, degree }
    }

    pub fn is_coprime(&self, rhs: &Self) -> bool {
        self.exps.iter().zip(&rhs.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }

    pub fn set(&mut self, i: usize, e: u32) {
        self.degree = self.degree - self.exps[i] + e;
        self.exps[i] = e;
    }

    /// Decrement the exponent of variable `i`; panics if it is zero.
    pub fn decrement(&mut self, i: usize) {
        self.exps[i] -= 1;
        self.degree -= 1;
    }

    /// Sum of exponents over a contiguous range of variables.
    #[inline]
    pub fn partial_degree(&self, start: usize, end: usize) -> u32 {
        self.exps[start..end].iter().sum()
    }

    /// A new vector with the variables permuted: result[i] = self[perm[i]].
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let exps = perm.iter().map(|&p| self.exps[p]).collect();
        ExponentVector { exps, degree: self.degree }
    }

    /// Insert `count` zero exponents at position `at`.
    pub fn widened(&self, at: usize, count: usize) -> Self {
        let mut exps = SmallVec::with_capacity(self.len() + count);
        exps.extend_from_slice(&self.exps[..at]);
        exps.extend(std::iter::repeat(0).take(count));
        exps.extend_from_slice(&self.exps[at..]);
        ExponentVector { exps, degree: self.degree }
    }

    /// Drop the variables `at..at+count`; `None` if any of them has a positive exponent.
    pub fn narrowed(&self, at: usize, count: usize) -> Option<Self> {
        if self.exps[at..at + count].iter().any(|e| *e > 0) {
            return None;
        }
        let mut exps = SmallVec::with_capacity(self.len() - count);
        exps.extend_from_slice(&self.exps[..at]);
        exps.extend_from_slice(&self.exps[at + count..]);
        Some(ExponentVector { exps, degree: self.degree })
    }
}

impl PartialEq for ExponentVector {
    #[inline]
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.exps == other.exps
    }
}

impl Eq for ExponentVector {}

impl Hash for ExponentVector {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exps.hash(state);
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_and_lcm() {
        let a = ExponentVector::from_exponents(&[2, 0, 1]);
        let b = ExponentVector::from_exponents(&[3, 1, 1]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b).unwrap().exponents(), &[1, 1, 0]);
        assert_eq!(a.lcm(&ExponentVector::from_exponents(&[0, 2, 3])).degree(), 7);
        assert!(ExponentVector::from_exponents(&[1, 0, 0]).is_coprime(&ExponentVector::from_exponents(&[0, 4, 1])));
    }

    #[test]
    fn widen_and_narrow() {
        let a = ExponentVector::from_exponents(&[2, 1]);
        let w = a.widened(0, 1);
        assert_eq!(w.exponents(), &[0, 2, 1]);
        assert_eq!(w.narrowed(0, 1).unwrap(), a);
        assert!(ExponentVector::from_exponents(&[1, 2, 1]).narrowed(0, 1).is_none());
    }
}

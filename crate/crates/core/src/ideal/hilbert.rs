//! Combinatorics of monomial ideals: dimension, standard-monomial counts and
//! Hilbert series numerators.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::ring::ExponentVector;

/// Drop generators divisible by another generator.
pub(crate) fn minimalize(gens: &[ExponentVector]) -> Vec<ExponentVector> {
    let mut sorted: Vec<ExponentVector> = gens.to_vec();
    sorted.sort_by_key(|m| m.degree());
    let mut out: Vec<ExponentVector> = Vec::new();
    for m in sorted {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Largest size of a variable set containing no generator's support. The unit
/// ideal has dimension -1.
pub fn monomial_dim(nvars: usize, gens: &[ExponentVector]) -> i64 {
    if gens.iter().any(ExponentVector::is_one) {
        return -1;
    }
    let supports: Vec<u64> = minimalize(gens)
        .iter()
        .map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i)))
        .collect();
    let mut best = 0usize;
    fn rec(v: usize, n: usize, chosen: u64, size: usize, supports: &[u64], best: &mut usize) {
        if size + (n - v) <= *best {
            return;
        }
        if v == n {
            *best = size;
            return;
        }
        let with = chosen | (1 << v);
        if !supports.iter().any(|s| s & !with == 0) {
            rec(v + 1, n, with, size + 1, supports, best);
        }
        rec(v + 1, n, chosen, size, supports, best);
    }
    rec(0, nvars, 0, 0, &supports, &mut best);
    best as i64
}

/// Number of monomials outside the ideal, or `None` when infinite.
pub fn standard_monomial_count(nvars: usize, gens: &[ExponentVector]) -> Option<u64> {
    if gens.iter().any(ExponentVector::is_one) {
        return Some(0);
    }
    if monomial_dim(nvars, gens) > 0 {
        return None;
    }
    let exps: Vec<Vec<u32>> = minimalize(gens).iter().map(|m| m.exponents().to_vec()).collect();
    Some(count_rec(nvars, &exps))
}

fn count_rec(n: usize, gens: &[Vec<u32>]) -> u64 {
    if gens.iter().any(|g| g[..n].iter().all(|&e| e == 0)) {
        return 0;
    }
    if n == 0 {
        return 1;
    }
    let last = n - 1;
    // Zero-dimensionality guarantees a pure power of the last variable.
    let bound = gens
        .iter()
        .filter(|g| g[..last].iter().all(|&e| e == 0))
        .map(|g| g[last])
        .min()
        .expect("zero-dimensional ideal contains a pure power");
    let mut total = 0;
    for e in 0..bound {
        let slice: Vec<Vec<u32>> = gens.iter().filter(|g| g[last] <= e).cloned().collect();
        total += count_rec(last, &slice);
    }
    total
}

/// Hilbert series data of `K[x]/M` for a monomial ideal `M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    /// Numerator `N(t)` of `N(t) / (1-t)^n`, lowest degree first.
    #[serde(serialize_with = "ser_bigints")]
    pub numerator: Vec<BigInt>,
    pub dim: i64,
    #[serde(serialize_with = "ser_bigint")]
    pub degree: BigInt,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn one_minus_t_pow(d: u32) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); d as usize + 1];
    v[0] = BigInt::one();
    v[d as usize] -= BigInt::one();
    v
}

fn numerator_rec(gens: Vec<ExponentVector>) -> Vec<BigInt> {
    let gens = minimalize(&gens);
    if gens.is_empty() {
        return vec![BigInt::one()];
    }
    // Pairwise coprime generators form a regular sequence.
    let coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if coprime {
        return gens.iter().fold(vec![BigInt::one()], |acc, m| poly_mul(&acc, &one_minus_t_pow(m.degree())));
    }
    // Pivot on the variable shared by the most non-coprime generators.
    let n = gens[0].len();
    let mut counts = vec![0usize; n];
    for g in &gens {
        if g.support().count() > 1 {
            for v in g.support() {
                counts[v] += 1;
            }
        }
    }
    let v = (0..n).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).expect("nonempty");
    let pivot = ExponentVector::variable(n, v);
    // N(M) = N(M + (x)) + t * N(M : x)
    let mut plus = gens.clone();
    plus.push(pivot.clone());
    let colon: Vec<ExponentVector> = gens
        .iter()
        .map(|g| {
            let mut q = g.clone();
            if q.get(v) > 0 {
                q.decrement(v);
            }
            q
        })
        .collect();
    let a = numerator_rec(plus);
    let b = numerator_rec(colon);
    let mut out = vec![BigInt::zero(); a.len().max(b.len() + 1)];
    for (i, x) in a.into_iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.into_iter().enumerate() {
        out[i + 1] += x;
    }
    trim(out)
}

/// Hilbert series of `K[x]/M`; `None` for the unit ideal.
pub fn hilbert_series(nvars: usize, gens: &[ExponentVector]) -> Option<HilbertSeries> {
    if gens.iter().any(ExponentVector::is_one) {
        return None;
    }
    let mut num = trim(numerator_rec(gens.to_vec()));
    // Divide out (1 - t) while it is a factor.
    let mut cancelled = 0usize;
    loop {
        let at_one: BigInt = num.iter().sum();
        if !at_one.is_zero() || cancelled == nvars {
            break;
        }
        // Synthetic division by (1 - t): q_i = sum_{j<=i} n_j.
        let mut q = Vec::with_capacity(num.len() - 1);
        let mut acc = BigInt::zero();
        for c in &num[..num.len() - 1] {
            acc += c;
            q.push(acc.clone());
        }
        num = trim(q);
        cancelled += 1;
    }
    let numerator = trim(numerator_rec(gens.to_vec()));
    let degree: BigInt = num.iter().sum();
    Some(HilbertSeries { numerator, dim: (nvars - cancelled) as i64, degree })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> ExponentVector {
        ExponentVector::from_exponents(e)
    }

    #[test]
    fn dimensions() {
        assert_eq!(monomial_dim(3, &[]), 3);
        assert_eq!(monomial_dim(2, &[m(&[0, 0])]), -1);
        // (xz, xt, yz, yt): two planes
        let planes = [m(&[1, 0, 1, 0]), m(&[1, 0, 0, 1]), m(&[0, 1, 1, 0]), m(&[0, 1, 0, 1])];
        assert_eq!(monomial_dim(4, &planes), 2);
    }

    #[test]
    fn staircase_counts() {
        assert_eq!(standard_monomial_count(2, &[m(&[2, 0]), m(&[0, 3])]), Some(6));
        assert_eq!(standard_monomial_count(2, &[m(&[1, 0]), m(&[0, 1])]), Some(1));
        assert_eq!(standard_monomial_count(2, &[m(&[2, 0])]), None);
        assert_eq!(standard_monomial_count(2, &[m(&[2, 0]), m(&[1, 1]), m(&[0, 2])]), Some(3));
    }

    #[test]
    fn multiplicities() {
        let h = hilbert_series(2, &[m(&[2, 0])]).unwrap();
        assert_eq!((h.dim, h.degree.clone()), (1, BigInt::from(2)));
        let h = hilbert_series(3, &[m(&[1, 0, 0])]).unwrap();
        assert_eq!((h.dim, h.degree.clone()), (2, BigInt::from(1)));
        let h = hilbert_series(2, &[m(&[2, 0]), m(&[1, 1]), m(&[0, 2])]).unwrap();
        assert_eq!((h.dim, h.degree.clone()), (0, BigInt::from(3)));
        let planes = [m(&[1, 0, 1, 0]), m(&[1, 0, 0, 1]), m(&[0, 1, 1, 0]), m(&[0, 1, 0, 1])];
        let h = hilbert_series(4, &planes).unwrap();
        assert_eq!((h.dim, h.degree.clone()), (2, BigInt::from(2)));
        let h = hilbert_series(3, &[]).unwrap();
        assert_eq!((h.dim, h.degree), (3, BigInt::one()));
        assert!(hilbert_series(1, &[m(&[0])]).is_none());
    }
}

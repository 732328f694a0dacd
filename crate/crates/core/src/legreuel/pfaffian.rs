use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ring::{Polynomial, PolyMatrix};

fn check_skew(m: &PolyMatrix) -> Result<()> {
    if m.rows() != m.cols() {
        return Err(Error::InvalidMatrix("Pfaffians need a square matrix".into()));
    }
    let n = m.rows();
    for i in 0..n {
        if !m.get(i, i).is_zero() {
            return Err(Error::InvalidMatrix(format!("diagonal entry ({}, {}) is nonzero", i + 1, i + 1)));
        }
        for j in i + 1..n {
            if m.get(i, j) != &-m.get(j, i) {
                return Err(Error::InvalidMatrix(format!("entries ({}, {}) and ({}, {}) are not opposite", i + 1, j + 1, j + 1, i + 1)));
            }
        }
    }
    Ok(())
}

/// Pfaffian of the principal submatrix on `idx` (ascending), by expansion
/// along its first row.
fn pf(m: &PolyMatrix, idx: &[usize], memo: &mut HashMap<u64, Polynomial>) -> Polynomial {
    if idx.is_empty() {
        return Polynomial::one(m.ring());
    }
    let key = idx.iter().fold(0u64, |acc, &i| acc | (1 << i));
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let first = idx[0];
    let mut acc = Polynomial::zero(m.ring());
    for (pos, &j) in idx.iter().enumerate().skip(1) {
        let a = m.get(first, j);
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&k| k != j).collect();
        let term = a * &pf(m, &rest, memo);
        // Position 1 (the second index) carries a plus sign.
        acc = if pos % 2 == 1 { &acc + &term } else { &acc - &term };
    }
    memo.insert(key, acc.clone());
    acc
}

/// Pfaffian of an even skew-symmetric matrix.
pub fn pfaffian(m: &PolyMatrix) -> Result<Polynomial> {
    check_skew(m)?;
    if m.rows() % 2 == 1 {
        return Err(Error::InvalidMatrix("Pfaffian of an odd-sized matrix".into()));
    }
    let idx: Vec<usize> = (0..m.rows()).collect();
    Ok(pf(m, &idx, &mut HashMap::new()))
}

/// Submaximal Pfaffians `P_i` (row and column `i` deleted) of an odd
/// skew-symmetric matrix, for `i = 1..=n`.
pub fn pfaffians(m: &PolyMatrix) -> Result<Vec<Polynomial>> {
    check_skew(m)?;
    let n = m.rows();
    if n % 2 == 0 {
        return Err(Error::InvalidMatrix("submaximal Pfaffians need an odd-sized matrix".into()));
    }
    if n > 63 {
        return Err(Error::InvalidMatrix("matrix too large".into()));
    }
    let mut memo = HashMap::new();
    Ok((0..n)
        .map(|i| {
            let idx: Vec<usize> = (0..n).filter(|&k| k != i).collect();
            pf(m, &idx, &mut memo)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Ring, RingSpec};

    fn skew(r: &Ring, n: usize, upper: &[Polynomial]) -> PolyMatrix {
        let mut e = vec![Polynomial::zero(r); n * n];
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                e[i * n + j] = upper[k].clone();
                e[j * n + i] = -&upper[k];
                k += 1;
            }
        }
        PolyMatrix::new(r, n, n, e).unwrap()
    }

    #[test]
    fn three_by_three() {
        let r = RingSpec::global(["a", "b", "c"]).unwrap();
        let v: Vec<Polynomial> = (0..3).map(|i| Polynomial::var(&r, i).unwrap()).collect();
        let m = skew(&r, 3, &v);
        let p = pfaffians(&m).unwrap();
        assert_eq!(p, vec![v[2].clone(), v[1].clone(), v[0].clone()]);
    }

    #[test]
    fn one_by_one_is_one() {
        let r = RingSpec::global(["a"]).unwrap();
        let m = PolyMatrix::new(&r, 1, 1, vec![Polynomial::zero(&r)]).unwrap();
        assert_eq!(pfaffians(&m).unwrap(), vec![Polynomial::one(&r)]);
    }

    #[test]
    fn square_is_determinant() {
        let names: Vec<String> = (0..6).map(|i| format!("a{i}")).collect();
        let r = RingSpec::global(names).unwrap();
        let v: Vec<Polynomial> = (0..6).map(|i| Polynomial::var(&r, i).unwrap()).collect();
        let m = skew(&r, 4, &v);
        let p = pfaffian(&m).unwrap();
        assert_eq!(&p * &p, m.determinant().unwrap());
        // a12 a34 - a13 a24 + a14 a23
        let expected = &(&(&v[0] * &v[5]) - &(&v[1] * &v[4])) + &(&v[2] * &v[3]);
        assert_eq!(p, expected);
    }

    #[test]
    fn rejects_bad_input() {
        let r = RingSpec::global(["a"]).unwrap();
        let a = Polynomial::var(&r, 0).unwrap();
        let m = PolyMatrix::new(&r, 3, 3, vec![Polynomial::zero(&r), a.clone(), a.clone(), a.clone(), Polynomial::zero(&r), a.clone(), -&a, -&a, Polynomial::zero(&r)]).unwrap();
        assert!(pfaffians(&m).is_err());
        let even = skew(&r, 2, &[a]);
        assert!(pfaffians(&even).is_err());
    }
}

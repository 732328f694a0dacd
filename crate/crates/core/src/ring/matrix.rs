use std::collections::HashMap;
use std::fmt;

use super::coeff::Coefficient;
use super::poly::{same_ring, Polynomial, Ring};
use crate::error::{Error, Result};

/// Row-major matrix of polynomials over one ring.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(ring: &Ring, rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidMatrix("dimensions must be positive".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::InvalidMatrix(format!(
                "{} entries given for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|p| !same_ring(p.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(PolyMatrix { ring: ring.clone(), rows, cols, entries })
    }

    pub fn identity(ring: &Ring, n: usize) -> Result<Self> {
        let entries = (0..n * n)
            .map(|k| if k / n == k % n { Polynomial::one(ring) } else { Polynomial::zero(ring) })
            .collect();
        Self::new(ring, n, n, entries)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[Polynomial] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Entry-wise `self + c * other`.
    pub fn add_scaled(&self, c: &Polynomial, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::InvalidMatrix("shape mismatch".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.checked_add(&c.checked_mul(b)?))
            .collect::<Result<_>>()?;
        PolyMatrix::new(&self.ring, self.rows, self.cols, entries)
    }

    /// Apply `f` to each entry, moving the matrix into `ring`.
    pub fn map_entries(&self, ring: &Ring, f: impl Fn(&Polynomial) -> Polynomial) -> Result<PolyMatrix> {
        PolyMatrix::new(ring, self.rows, self.cols, self.entries.iter().map(f).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    /// All `k x k` minors, rows and columns ascending, listed in lexicographic
    /// `(row set, column set)` order. Zero minors and duplicates are kept.
    pub fn minors(&self, k: usize) -> Result<Vec<Polynomial>> {
        if k == 0 || k > self.rows.min(self.cols) {
            return Err(Error::MinorSize { k, rows: self.rows, cols: self.cols });
        }
        let row_sets = subsets(self.rows, k);
        let col_sets = subsets(self.cols, k);
        let mut memo = HashMap::new();
        let mut out = Vec::with_capacity(row_sets.len() * col_sets.len());
        for rs in &row_sets {
            for cs in &col_sets {
                out.push(self.det_sub(rs, mask(cs), &mut memo));
            }
        }
        Ok(out)
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(Error::InvalidMatrix("determinant of a non-square matrix".into()));
        }
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        Ok(self.det_sub(&rows, mask(&cols), &mut HashMap::new()))
    }

    /// Laplace expansion along the first listed row, memoised on (rows, columns) masks.
    fn det_sub(&self, rows: &[usize], cols: u64, memo: &mut HashMap<(u64, u64), Polynomial>) -> Polynomial {
        if rows.is_empty() {
            return Polynomial::one(&self.ring);
        }
        let key = (mask(rows), cols);
        if let Some(p) = memo.get(&key) {
            return p.clone();
        }
        let r = rows[0];
        let mut acc = Polynomial::zero(&self.ring);
        let mut sign_positive = true;
        for c in 0..self.cols {
            if cols & (1 << c) == 0 {
                continue;
            }
            let entry = self.get(r, c);
            if !entry.is_zero() {
                let sub = self.det_sub(&rows[1..], cols & !(1 << c), memo);
                if !sub.is_zero() {
                    let term = entry * &sub;
                    let b = if sign_positive { Coefficient::from_i64(-1) } else { Coefficient::one() };
                    acc = acc.combine(&Coefficient::one(), &b, None, &term);
                }
            }
            sign_positive = !sign_positive;
        }
        memo.insert(key, acc.clone());
        acc
    }
}

fn mask(idx: &[usize]) -> u64 {
    idx.iter().fold(0u64, |m, &i| m | (1 << i))
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Jacobian matrix: row `i` holds the partial derivatives of `fs[i]`.
pub fn jacobian(fs: &[Polynomial]) -> Result<PolyMatrix> {
    let first = fs.first().ok_or(Error::EmptyInput("jacobian needs at least one polynomial"))?;
    let ring = first.ring().clone();
    let n = ring.nvars();
    let mut entries = Vec::with_capacity(fs.len() * n);
    for f in fs {
        if !same_ring(f.ring(), &ring) {
            return Err(Error::RingMismatch);
        }
        for j in 0..n {
            entries.push(f.derivative(j)?);
        }
    }
    PolyMatrix::new(&ring, fs.len(), n, entries)
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|p| p.to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(4, 4).len(), 1);
    }

    #[test]
    fn identity_minor() {
        let r = RingSpec::global(["x"]).unwrap();
        let id = PolyMatrix::identity(&r, 2).unwrap();
        assert_eq!(id.minors(2).unwrap(), vec![Polynomial::one(&r)]);
        assert!(id.minors(3).is_err());
        assert!(id.minors(0).is_err());
    }

    #[test]
    fn three_by_three_determinant() {
        let r = RingSpec::global(["a"]).unwrap();
        let c = |v: i64| Polynomial::constant(&r, v.into());
        let m = PolyMatrix::new(&r, 3, 3, vec![c(2), c(0), c(1), c(1), c(3), c(2), c(1), c(1), c(1)]).unwrap();
        // 2*(3-2) - 0 + 1*(1-3) = 0
        assert!(m.determinant().unwrap().is_zero());
    }
}

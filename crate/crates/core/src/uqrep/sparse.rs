//! Row-major sparse matrices over a [`Field`].

use crate::numfield::Field;

#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix<F: Field> {
    nrows: usize,
    ncols: usize,
    /// Each row sorted by column, no stored zeros.
    rows: Vec<Vec<(usize, F)>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].push((i, F::one()));
        }
        m
    }

    pub fn from_triplets(nrows: usize, ncols: usize, entries: impl IntoIterator<Item = (usize, usize, F)>) -> Self {
        let mut m = Self::zeros(nrows, ncols);
        for (r, c, v) in entries {
            m.add_at(r, c, v);
        }
        m
    }

    pub fn from_dense(rows: &[Vec<F>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        Self::from_triplets(
            rows.len(),
            ncols,
            rows.iter()
                .enumerate()
                .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, v)| (i, j, v.clone()))),
        )
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, F)] {
        &self.rows[r]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &F)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        match self.rows[r].binary_search_by_key(&c, |(k, _)| *k) {
            Ok(pos) => self.rows[r][pos].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: F) {
        if v.is_exactly_zero() {
            return;
        }
        let row = &mut self.rows[r];
        match row.binary_search_by_key(&c, |(k, _)| *k) {
            Ok(pos) => {
                let sum = row[pos].1.clone() + v;
                if sum.is_exactly_zero() {
                    row.remove(pos);
                } else {
                    row[pos].1 = sum;
                }
            }
            Err(pos) => row.insert(pos, (c, v)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|(_, v)| v.is_zero()))
    }

    pub fn max_abs(&self) -> f64 {
        self.entries().map(|(_, _, v)| v.magnitude()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_exactly_zero() {
            return Self::zeros(self.nrows, self.ncols);
        }
        Self {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|(c, v)| (*c, v.clone() * s.clone())).collect())
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let mut out = self.clone();
        for (r, c, v) in other.entries() {
            out.add_at(r, c, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-F::one()))
    }

    /// `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows);
        let mut out = Self::zeros(self.nrows, other.ncols);
        for (r, row) in self.rows.iter().enumerate() {
            let mut acc: std::collections::BTreeMap<usize, F> = std::collections::BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &other.rows[*k] {
                    let e = acc.entry(*c).or_insert_with(F::zero);
                    *e = e.clone() + a.clone() * b.clone();
                }
            }
            out.rows[r] = acc.into_iter().filter(|(_, v)| !v.is_exactly_zero()).collect();
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(self.ncols, self.nrows, self.entries().map(|(r, c, v)| (c, r, v.clone())))
    }

    /// Kronecker product, index `(a, b) -> a * other.dim + b`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.nrows * other.nrows, self.ncols * other.ncols);
        for (r1, row1) in self.rows.iter().enumerate() {
            for r2 in 0..other.nrows {
                let row = &mut out.rows[r1 * other.nrows + r2];
                for (c1, a) in row1 {
                    for (c2, b) in &other.rows[r2] {
                        row.push((c1 * other.ncols + c2, a.clone() * b.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .fold(F::zero(), |acc, (c, a)| acc + a.clone() * v[*c].clone())
            })
            .collect()
    }

    /// `v^T self`.
    pub fn apply_left(&self, v: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.ncols];
        for (r, row) in self.rows.iter().enumerate() {
            if v[r].is_exactly_zero() {
                continue;
            }
            for (c, a) in row {
                out[*c] = out[*c].clone() + v[r].clone() * a.clone();
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        let mut d = vec![vec![F::zero(); self.ncols]; self.nrows];
        for (r, c, v) in self.entries() {
            d[r][c] = v.clone();
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{rat, Rational};

    #[test]
    fn arithmetic_matches_dense() {
        let a = SparseMatrix::from_dense(&[vec![rat(1, 1), rat(0, 1)], vec![rat(2, 3), rat(-1, 1)]]);
        let b = SparseMatrix::from_dense(&[vec![rat(0, 1), rat(5, 1)], vec![rat(1, 2), rat(0, 1)]]);
        let p = a.mul(&b);
        assert_eq!(
            p.to_dense(),
            vec![vec![rat(0, 1), rat(5, 1)], vec![rat(-1, 2), rat(10, 3)]]
        );
        assert_eq!(a.transpose().get(0, 1), rat(2, 3));
        let k = a.kron(&b);
        assert_eq!(k.nrows(), 4);
        assert_eq!(k.get(2, 1), rat(2, 3) * rat(5, 1));
        assert!(a.sub(&a).is_zero());
        let id: SparseMatrix<Rational> = SparseMatrix::identity(2);
        assert_eq!(id.mul(&a), a);
        assert_eq!(a.apply(&[rat(1, 1), rat(1, 1)]), vec![rat(1, 1), rat(-1, 3)]);
        assert_eq!(a.apply_left(&[rat(1, 1), rat(1, 1)]), vec![rat(5, 3), rat(-1, 1)]);
    }
}

//! Compressed-row symmetric matrices (both triangles stored).

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct SparseSym<T> {
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<T>,
}

impl<T: Real> SparseSym<T> {
    /// Builds from `(row, col, value)` entries; each off-diagonal pair must be
    /// given in both orders and duplicates are summed.
    pub fn from_triplets(n: usize, mut entries: Vec<(usize, usize, T)>) -> Result<Self> {
        if entries.iter().any(|&(i, j, _)| i >= n || j >= n) {
            return Err(Error::DimensionMismatch(format!("entry outside a {n}x{n} matrix")));
        }
        entries.sort_by_key(|e| (e.0, e.1));
        let mut row_ptr = vec![0usize; n + 1];
        let mut cols = Vec::with_capacity(entries.len());
        let mut vals: Vec<T> = Vec::with_capacity(entries.len());
        let mut last: Option<(usize, usize)> = None;
        for (i, j, v) in entries {
            if last == Some((i, j)) {
                *vals.last_mut().expect("previous entry") = *vals.last().expect("previous entry") + v;
                continue;
            }
            last = Some((i, j));
            row_ptr[i + 1] += 1;
            cols.push(j);
            vals.push(v);
        }
        for i in 0..n {
            row_ptr[i + 1] += row_ptr[i];
        }
        let m = SparseSym { n, row_ptr, cols, vals };
        if !m.is_symmetric() {
            return Err(Error::DimensionMismatch("matrix is not symmetric".into()));
        }
        Ok(m)
    }

    pub fn from_diagonal(d: &[T]) -> Self {
        SparseSym { n: d.len(), row_ptr: (0..=d.len()).collect(), cols: (0..d.len()).collect(), vals: d.to_vec() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, T)> + '_ {
        (self.row_ptr[i]..self.row_ptr[i + 1]).map(move |k| (self.cols[k], self.vals[k]))
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.row(i).find(|&(c, _)| c == j).map_or(T::zero(), |(_, v)| v)
    }

    fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| self.row(i).all(|(j, v)| self.get(j, i) == v))
    }

    pub fn mul_vec(&self, x: &[T], y: &mut [T]) {
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = self.row(i).fold(T::zero(), |acc, (j, v)| acc + v * x[j]);
        }
    }

    /// Gershgorin upper bound on the spectral norm: `max_i Σ_j |m_ij|`.
    pub fn norm_bound(&self) -> T {
        (0..self.n).map(|i| self.row(i).fold(T::zero(), |acc, (_, v)| acc + v.abs())).fold(T::zero(), T::max)
    }

    /// Gershgorin lower bound on the smallest eigenvalue.
    pub fn gershgorin_lower(&self) -> T {
        (0..self.n)
            .map(|i| {
                let (mut diag, mut off) = (T::zero(), T::zero());
                for (j, v) in self.row(i) {
                    if j == i {
                        diag = diag + v;
                    } else {
                        off = off + v.abs();
                    }
                }
                diag - off
            })
            .fold(T::infinity(), T::min)
    }

    /// `max |i − j|` over stored entries.
    pub fn bandwidth(&self) -> usize {
        (0..self.n).flat_map(|i| self.row(i).map(move |(j, _)| i.abs_diff(j))).max().unwrap_or(0)
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut d = vec![vec![T::zero(); self.n]; self.n];
        for (i, row) in d.iter_mut().enumerate() {
            for (j, v) in self.row(i) {
                row[j] = v;
            }
        }
        d
    }
}

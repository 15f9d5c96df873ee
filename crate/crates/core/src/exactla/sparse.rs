//! Exact row echelon reduction for sparse systems.
//!
//! Rows are kept with their leading column as pivot and all other entries
//! to the right of it, so back substitution runs over pivots in
//! descending order. Two-term difference equations stay two-term under
//! elimination, which keeps intertwiner systems with thousands of unknowns
//! cheap.

use std::collections::BTreeMap;

use crate::scalar::ExactField;

type SparseRow<T> = Vec<(usize, T)>;

#[derive(Clone, Debug)]
pub struct SparseEchelon<T> {
    cols: usize,
    pivots: BTreeMap<usize, SparseRow<T>>,
}

fn subtract_multiple<T: ExactField>(row: &SparseRow<T>, factor: &T, pivot_row: &SparseRow<T>) -> SparseRow<T> {
    let mut out = Vec::with_capacity(row.len() + pivot_row.len());
    let (mut a, mut b) = (row.iter().peekable(), pivot_row.iter().peekable());
    loop {
        match (a.peek(), b.peek()) {
            (Some((ca, va)), Some((cb, vb))) => {
                if ca < cb {
                    out.push((*ca, va.clone()));
                    a.next();
                } else if cb < ca {
                    out.push((*cb, -(factor.clone() * vb.clone())));
                    b.next();
                } else {
                    let v = va.clone() - factor.clone() * vb.clone();
                    if !v.is_zero() {
                        out.push((*ca, v));
                    }
                    a.next();
                    b.next();
                }
            }
            (Some((ca, va)), None) => {
                out.push((*ca, va.clone()));
                a.next();
            }
            (None, Some((cb, vb))) => {
                out.push((*cb, -(factor.clone() * vb.clone())));
                b.next();
            }
            (None, None) => break,
        }
    }
    out
}

impl<T: ExactField> SparseEchelon<T> {
    pub fn new(cols: usize) -> Self {
        SparseEchelon { cols, pivots: BTreeMap::new() }
    }

    /// Adds the equation `Σ coeff · x_col = 0`. Entries may be unsorted or repeated.
    pub fn push(&mut self, entries: impl IntoIterator<Item = (usize, T)>) {
        let mut acc: BTreeMap<usize, T> = BTreeMap::new();
        for (c, v) in entries {
            assert!(c < self.cols, "column {c} out of range");
            let e = acc.entry(c).or_insert_with(T::zero);
            *e = e.clone() + v;
        }
        let mut row: SparseRow<T> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        while let Some((lead, coeff)) = row.first().cloned() {
            match self.pivots.get(&lead) {
                Some(pivot_row) => row = subtract_multiple(&row, &coeff, pivot_row),
                None => {
                    let inv = T::one() / coeff;
                    let normalized = row.into_iter().map(|(c, v)| (c, v * inv.clone())).collect();
                    self.pivots.insert(lead, normalized);
                    return;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Nullspace basis, one dense vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let free: Vec<usize> = (0..self.cols).filter(|c| !self.pivots.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![T::zero(); self.cols];
                x[f] = T::one();
                for (&p, row) in self.pivots.iter().rev() {
                    let mut s = T::zero();
                    for (c, v) in &row[1..] {
                        if !x[*c].is_zero() {
                            s = s + v.clone() * x[*c].clone();
                        }
                    }
                    x[p] = -s;
                }
                x
            })
            .collect()
    }
}

use std::collections::BTreeMap;

use num_traits::Zero;

use super::scalar::{Scalar, Vector};

/// Sparse coordinate vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(index: usize) -> Self {
        Self {
            entries: vec![(index, num_traits::One::one())],
        }
    }

    pub fn from_dense(v: &[Scalar]) -> Self {
        Self {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    /// Builds from unsorted `(index, value)` pairs, summing duplicates.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut acc = Accumulator::new();
        for (i, x) in pairs {
            acc.add(i, &x);
        }
        acc.finish()
    }

    pub fn to_dense(&self, len: usize) -> Vector {
        let mut v = vec![Scalar::zero(); len];
        for (i, x) in &self.entries {
            v[*i] = x.clone();
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, index: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|pos| &self.entries[pos].1)
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, x)| (*i, x))
    }

    /// Largest stored index plus one, or 0.
    pub fn support_bound(&self) -> usize {
        self.entries.last().map_or(0, |(i, _)| i + 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.entries.iter().map(|(i, x)| (*i, x))
    }

    pub fn scale(&mut self, a: &Scalar) {
        if a.is_zero() {
            self.entries.clear();
            return;
        }
        for (_, x) in &mut self.entries {
            *x *= a;
        }
    }

    pub fn scaled(&self, a: &Scalar) -> Self {
        let mut out = self.clone();
        out.scale(a);
        out
    }

    pub fn negated(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|(i, x)| (*i, -x)).collect(),
        }
    }

    /// `self += a * other`
    pub fn axpy(&mut self, a: &Scalar, other: &SparseVec) {
        if a.is_zero() || other.is_zero() {
            return;
        }
        let mut merged = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut lhs = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut rhs = other.entries.iter().peekable();
        loop {
            match (lhs.peek(), rhs.peek()) {
                (Some((i, _)), Some((j, _))) if i < j => merged.push(lhs.next().unwrap()),
                (Some((i, _)), Some((j, _))) if i > j => {
                    let (j, y) = rhs.next().unwrap();
                    merged.push((*j, a * y));
                }
                (Some(_), Some(_)) => {
                    let (i, x) = lhs.next().unwrap();
                    let (_, y) = rhs.next().unwrap();
                    let s = x + a * y;
                    if !s.is_zero() {
                        merged.push((i, s));
                    }
                }
                (Some(_), None) => merged.push(lhs.next().unwrap()),
                (None, Some(_)) => {
                    let (j, y) = rhs.next().unwrap();
                    merged.push((*j, a * y));
                }
                (None, None) => break,
            }
        }
        self.entries = merged;
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.axpy(&num_traits::One::one(), other);
        out
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.axpy(&-Scalar::from_integer(1.into()), other);
        out
    }

    /// Maps every index through `f`, summing collisions.
    pub fn reindex(&self, mut f: impl FnMut(usize) -> usize) -> SparseVec {
        SparseVec::from_pairs(self.entries.iter().map(|(i, x)| (f(*i), x.clone())))
    }
}

/// Collects `(index, value)` contributions and produces a [`SparseVec`].
#[derive(Clone, Debug, Default)]
pub struct Accumulator {
    map: BTreeMap<usize, Scalar>,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, index: usize, value: &Scalar) {
        if value.is_zero() {
            return;
        }
        let slot = self.map.entry(index).or_insert_with(Scalar::zero);
        *slot += value;
    }

    pub fn add_scaled(&mut self, a: &Scalar, v: &SparseVec) {
        if a.is_zero() {
            return;
        }
        for (i, x) in v.iter() {
            self.add(i, &(a * x));
        }
    }

    pub fn finish(self) -> SparseVec {
        SparseVec {
            entries: self.map.into_iter().filter(|(_, x)| !x.is_zero()).collect(),
        }
    }
}

/// Column-sparse matrix; used for the large differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns.iter().all(|c| c.support_bound() <= rows));
        Self { rows, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (j, x) in v.iter() {
            acc.add_scaled(x, &self.columns[j]);
        }
        acc.finish()
    }

    /// `self ∘ other`; panics on a shape mismatch.
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), other.rows(), "shape mismatch in compose");
        SparseMatrix {
            rows: self.rows,
            columns: other.columns.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(SparseVec::is_zero)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col.iter() {
                rows[i].push((j, x.clone()));
            }
        }
        SparseMatrix {
            rows: self.columns.len(),
            columns: rows.into_iter().map(|entries| SparseVec { entries }).collect(),
        }
    }

    /// Column space, canonical form.
    pub fn image(&self) -> super::Subspace {
        let mut e = super::Echelon::new(self.rows);
        for c in &self.columns {
            if e.is_full() {
                break;
            }
            e.insert(c.clone());
        }
        e.into_subspace()
    }

    pub fn row_space(&self) -> super::Subspace {
        self.transpose().image()
    }

    pub fn kernel(&self) -> super::Subspace {
        super::kernel_of_row_space(self.row_space())
    }

    pub fn rank(&self) -> usize {
        self.row_space().dim()
    }

    pub fn to_dense(&self) -> super::Matrix {
        let mut m = super::Matrix::zeros(self.rows, self.columns.len());
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col.iter() {
                m.set(i, j, x.clone());
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::scalar::int;

    #[test]
    fn sparse_kernel_and_image_match_dense() {
        let cols = vec![
            SparseVec::from_pairs([(0, int(1)), (2, int(2))]),
            SparseVec::from_pairs([(0, int(2)), (2, int(4))]),
            SparseVec::new(),
            SparseVec::from_pairs([(1, int(-1))]),
        ];
        let m = SparseMatrix::from_columns(3, cols);
        let d = m.to_dense();
        assert_eq!(m.kernel(), d.kernel_basis());
        assert_eq!(m.image(), d.image_basis());
        assert_eq!(m.rank(), 2);
        assert_eq!(m.transpose().to_dense(), d.transpose());
    }

    #[test]
    fn axpy_cancels_and_merges() {
        let a = SparseVec::from_pairs([(0, int(1)), (3, int(2))]);
        let b = SparseVec::from_pairs([(1, int(5)), (3, int(1))]);
        let mut c = a.clone();
        c.axpy(&int(-2), &b);
        assert_eq!(c, SparseVec::from_pairs([(0, int(1)), (1, int(-10))]));
        assert_eq!(c.get(3), None);
    }

    #[test]
    fn accumulator_drops_zeros() {
        let mut acc = Accumulator::new();
        acc.add(2, &int(3));
        acc.add(2, &int(-3));
        acc.add(0, &int(1));
        assert_eq!(acc.finish(), SparseVec::unit(0));
    }
}

use num_traits::Zero;

use super::matrix::{kernel_of_row_space, Echelon, Matrix};
use super::scalar::{Scalar, Vector};
use super::sparse::SparseVec;
use crate::error::{Error, Result};

/// A subspace of `Q^ambient_dim`, stored as its canonical reduced row-echelon
/// basis. Equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub(crate) fn from_canonical(ambient_dim: usize, rows: Vec<SparseVec>, pivots: Vec<usize>) -> Self {
        debug_assert!(pivots.windows(2).all(|w| w[0] < w[1]));
        Self {
            ambient_dim,
            rows,
            pivots,
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self::from_canonical(ambient_dim, Vec::new(), Vec::new())
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::from_canonical(
            ambient_dim,
            (0..ambient_dim).map(SparseVec::unit).collect(),
            (0..ambient_dim).collect(),
        )
    }

    pub fn span_sparse(ambient_dim: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut e = Echelon::new(ambient_dim);
        for v in vectors {
            e.insert(v);
            if e.is_full() {
                break;
            }
        }
        e.into_subspace()
    }

    pub fn span(ambient_dim: usize, vectors: &[Vector]) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::mismatch("spanning vector", ambient_dim, v.len()));
            }
        }
        Ok(Self::span_sparse(
            ambient_dim,
            vectors.iter().map(|v| SparseVec::from_dense(v)),
        ))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient_dim
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Dense canonical basis vectors.
    pub fn basis(&self) -> Vec<Vector> {
        self.rows.iter().map(|r| r.to_dense(self.ambient_dim)).collect()
    }

    /// Canonical basis as the columns of an `ambient_dim × dim` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_sparse_columns(self.ambient_dim, &self.rows)
    }

    /// Remainder of `v` after clearing every pivot coordinate.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut w = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if let Some(c) = w.get(p) {
                let c = -c.clone();
                w.axpy(&c, row);
            }
        }
        w
    }

    pub fn contains_sparse(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        v.len() == self.ambient_dim && self.contains_sparse(&SparseVec::from_dense(v))
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates_sparse(&self, v: &SparseVec) -> Option<Vector> {
        let coords: Vector = self
            .pivots
            .iter()
            .map(|&p| v.get(p).cloned().unwrap_or_else(Scalar::zero))
            .collect();
        // The pivot entries determine the combination; check it reproduces v.
        let mut w = v.clone();
        for (row, c) in self.rows.iter().zip(&coords) {
            if !c.is_zero() {
                w.axpy(&-c.clone(), row);
            }
        }
        w.is_zero().then_some(coords)
    }

    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if v.len() != self.ambient_dim {
            return None;
        }
        self.coordinates_sparse(&SparseVec::from_dense(v))
    }

    pub fn is_subset_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.rows.iter().all(|r| other.contains_sparse(r))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other, "subspace sum")?;
        let mut e = Echelon::from_subspace(self);
        for r in &other.rows {
            e.insert(r.clone());
        }
        Ok(e.into_subspace())
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other, "subspace intersection")?;
        // (W1 ∩ W2)^⊥ = W1^⊥ + W2^⊥
        let perp = self.orthogonal_complement().sum(&other.orthogonal_complement())?;
        Ok(perp.orthogonal_complement())
    }

    /// Annihilator under the standard pairing.
    pub fn orthogonal_complement(&self) -> Subspace {
        kernel_of_row_space(self.clone())
    }

    /// `m(self)`; `m` must have `ambient_dim` columns.
    pub fn image_under(&self, m: &Matrix) -> Result<Subspace> {
        if m.cols() != self.ambient_dim {
            return Err(Error::mismatch("subspace image", m.cols(), self.ambient_dim));
        }
        Ok(Self::span_sparse(m.rows(), self.rows.iter().map(|r| m.mul_sparse(r))))
    }

    /// `{ v : m v ∈ target }`.
    pub fn preimage(m: &Matrix, target: &Subspace) -> Result<Subspace> {
        if m.rows() != target.ambient_dim {
            return Err(Error::mismatch("subspace preimage", target.ambient_dim, m.rows()));
        }
        // v ∈ preimage iff every annihilator row of target kills m v.
        let ann = target.orthogonal_complement();
        let mut e = Echelon::new(m.cols());
        for a in ann.rows() {
            // row a^T m
            let mut pairs = Vec::new();
            for j in 0..m.cols() {
                let mut s = Scalar::zero();
                for (i, x) in a.iter() {
                    let y = m.get(i, j);
                    if !y.is_zero() {
                        s += x * y;
                    }
                }
                if !s.is_zero() {
                    pairs.push((j, s));
                }
            }
            e.insert(SparseVec::from_pairs(pairs));
        }
        Ok(kernel_of_row_space(e.into_subspace()))
    }

    fn check_same(&self, other: &Subspace, context: &str) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::mismatch(context, self.ambient_dim, other.ambient_dim));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::scalar::int;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn span_is_canonical() {
        let a = Subspace::span(3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        let b = Subspace::span(3, &[v(&[1, 2, 1]), v(&[1, 0, -1]), v(&[2, 2, 0])]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap();
        let b = Subspace::span(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        let c = a.intersect(&b).unwrap();
        assert_eq!(c, Subspace::span(3, &[v(&[0, 5, 0])]).unwrap());
    }

    #[test]
    fn coordinates_roundtrip() {
        let a = Subspace::span(4, &[v(&[1, 2, 0, 3]), v(&[0, 1, 1, 1])]).unwrap();
        let x = v(&[2, 7, 3, 9]);
        let c = a.coordinates(&x).unwrap();
        let mut back = vec![Scalar::zero(); 4];
        for (b, ci) in a.basis().iter().zip(&c) {
            crate::exactla::scalar::axpy(&mut back, ci, b);
        }
        assert_eq!(back, x);
        assert_eq!(a.coordinates(&v(&[1, 0, 0, 0])), None);
    }

    #[test]
    fn preimage_of_zero_is_kernel() {
        let m = Matrix::from_rows(3, &[v(&[1, 1, 0]), v(&[0, 0, 0])]).unwrap();
        let k = Subspace::preimage(&m, &Subspace::zero(2)).unwrap();
        assert_eq!(k, m.kernel_basis());
    }

    fn small_vectors() -> impl Strategy<Value = Vec<Vector>> {
        prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 0..5)
            .prop_map(|vs| vs.into_iter().map(|r| v(&r)).collect())
    }

    proptest! {
        #[test]
        fn dimension_formula(a in small_vectors(), b in small_vectors()) {
            let a = Subspace::span(4, &a).unwrap();
            let b = Subspace::span(4, &b).unwrap();
            let s = a.sum(&b).unwrap();
            let i = a.intersect(&b).unwrap();
            prop_assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
            prop_assert!(i.is_subset_of(&a) && i.is_subset_of(&b));
            prop_assert!(a.is_subset_of(&s) && b.is_subset_of(&s));
        }

        #[test]
        fn span_order_independent(a in small_vectors()) {
            let mut rev = a.clone();
            rev.reverse();
            prop_assert_eq!(Subspace::span(4, &a).unwrap(), Subspace::span(4, &rev).unwrap());
        }
    }
}

use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::scalar::{Scalar, Vector};
use super::sparse::SparseVec;
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// A quotient `V / R` with `V = Q^ambient_dim`.
///
/// Representatives are the standard basis vectors at the non-pivot columns of
/// the canonical basis of `R`; they project to a basis of the quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedSpace {
    relations: Subspace,
    rep_indices: Vec<usize>,
    /// position of each ambient index among `rep_indices`
    rep_position: Vec<Option<usize>>,
}

impl PresentedSpace {
    pub fn new(relations: Subspace) -> Self {
        let n = relations.ambient_dim();
        let mut is_pivot = vec![false; n];
        for &p in relations.pivots() {
            is_pivot[p] = true;
        }
        let rep_indices: Vec<usize> = (0..n).filter(|&i| !is_pivot[i]).collect();
        let mut rep_position = vec![None; n];
        for (k, &i) in rep_indices.iter().enumerate() {
            rep_position[i] = Some(k);
        }
        Self {
            relations,
            rep_indices,
            rep_position,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.relations.ambient_dim()
    }

    pub fn dim(&self) -> usize {
        self.rep_indices.len()
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    pub fn rep_indices(&self) -> &[usize] {
        &self.rep_indices
    }

    /// Quotient coordinates of the class of `v`.
    pub fn project_sparse(&self, v: &SparseVec) -> SparseVec {
        let r = self.relations.reduce(v);
        // after reduction only non-pivot coordinates survive
        r.reindex(|i| self.rep_position[i].expect("reduced vector has pivot support"))
    }

    pub fn project(&self, v: &[Scalar]) -> Result<Vector> {
        if v.len() != self.ambient_dim() {
            return Err(Error::mismatch("quotient projection", self.ambient_dim(), v.len()));
        }
        Ok(self.project_sparse(&SparseVec::from_dense(v)).to_dense(self.dim()))
    }

    /// Canonical representative of a quotient vector.
    pub fn lift_sparse(&self, q: &SparseVec) -> SparseVec {
        q.reindex(|k| self.rep_indices[k])
    }

    pub fn lift(&self, q: &[Scalar]) -> Result<Vector> {
        if q.len() != self.dim() {
            return Err(Error::mismatch("quotient lift", self.dim(), q.len()));
        }
        Ok(self.lift_sparse(&SparseVec::from_dense(q)).to_dense(self.ambient_dim()))
    }

    /// Projection as a `dim × ambient_dim` matrix.
    pub fn projection_matrix(&self) -> Matrix {
        let cols: Vec<SparseVec> = (0..self.ambient_dim())
            .map(|i| self.project_sparse(&SparseVec::unit(i)))
            .collect();
        Matrix::from_sparse_columns(self.dim(), &cols)
    }

    /// Lift as an `ambient_dim × dim` matrix.
    pub fn lift_matrix(&self) -> Matrix {
        Matrix::from_fn(self.ambient_dim(), self.dim(), |i, k| {
            if self.rep_indices[k] == i {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
    }

    /// Image of a subspace of the ambient space in quotient coordinates.
    pub fn project_subspace(&self, s: &Subspace) -> Subspace {
        Subspace::span_sparse(self.dim(), s.rows().iter().map(|r| self.project_sparse(r)))
    }

    /// Whether `v` is zero in the quotient.
    pub fn is_zero_class(&self, v: &SparseVec) -> bool {
        self.relations.contains_sparse(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::scalar::int;

    #[test]
    fn project_then_lift_is_identity_on_quotient() {
        let r = Subspace::span(3, &[vec![int(1), int(-1), int(0)]]).unwrap();
        let q = PresentedSpace::new(r);
        assert_eq!(q.dim(), 2);
        assert_eq!(q.rep_indices(), &[1, 2]);
        let x = vec![int(2), int(3), int(4)];
        let p = q.project(&x).unwrap();
        assert_eq!(p, vec![int(5), int(4)]);
        let back = q.project(&q.lift(&p).unwrap()).unwrap();
        assert_eq!(back, p);
        let pm = q.projection_matrix();
        assert_eq!(pm.mul(&q.lift_matrix()).unwrap(), Matrix::identity(2));
    }
}

use std::collections::BTreeSet;
use std::sync::Arc;

use itertools::Itertools;

use super::{AlgebraRef, HomNAlgebra, Violation};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, SparseVec, Subspace};

/// A linear map between algebras; `matrix` is `target.dim × source.dim`.
#[derive(Clone, Debug)]
pub struct Morphism {
    source: AlgebraRef,
    target: AlgebraRef,
    matrix: Matrix,
    columns: Vec<SparseVec>,
}

impl PartialEq for Morphism {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix && *self.source == *other.source && *self.target == *other.target
    }
}

impl Eq for Morphism {}

/// Outcome of checking the two homomorphism conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismCheck {
    /// basis tuples where `f[x] ≠ [f x_1,…,f x_n]'`
    pub bracket_violations: Vec<Violation>,
    /// `f∘α = α'∘f`
    pub alpha_commutes: bool,
}

impl MorphismCheck {
    pub fn is_valid(&self) -> bool {
        self.bracket_violations.is_empty() && self.alpha_commutes
    }
}

impl Morphism {
    pub fn new(source: AlgebraRef, target: AlgebraRef, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "map {} -> {} given as {}x{} matrix",
                    source.name(),
                    target.name(),
                    matrix.rows(),
                    matrix.cols()
                ),
                expected: target.dim() * source.dim(),
                found: matrix.rows() * matrix.cols(),
            });
        }
        if source.arity() != target.arity() {
            return Err(Error::mismatch("morphism arity", source.arity(), target.arity()));
        }
        let columns = matrix.sparse_columns();
        Ok(Self {
            source,
            target,
            matrix,
            columns,
        })
    }

    pub fn identity(a: AlgebraRef) -> Self {
        let m = Matrix::identity(a.dim());
        Self::new(a.clone(), a, m).expect("identity has matching shape")
    }

    pub fn source(&self) -> &AlgebraRef {
        &self.source
    }

    pub fn target(&self) -> &AlgebraRef {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `f(e_i)`
    pub fn column(&self, i: usize) -> &SparseVec {
        &self.columns[i]
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        self.matrix.mul_sparse(v)
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn kernel(&self) -> Subspace {
        self.matrix.kernel_basis()
    }

    pub fn image(&self) -> Subspace {
        self.matrix.image_basis()
    }

    pub fn image_of(&self, s: &Subspace) -> Result<Subspace> {
        s.image_under(&self.matrix)
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &Morphism) -> Result<Morphism> {
        if *inner.target != *self.source {
            return Err(Error::Precondition(format!(
                "cannot compose: `{}` does not map into `{}`",
                inner.source.name(),
                self.source.name()
            )));
        }
        Morphism::new(inner.source.clone(), self.target.clone(), self.matrix.mul(&inner.matrix)?)
    }

    /// Checks `f[x_1,…,x_n] = [f x_1,…,f x_n]'` on basis tuples and
    /// `f∘α = α'∘f`.
    pub fn check(&self) -> Result<MorphismCheck> {
        let src = &self.source;
        let n = src.arity();
        let nz: Vec<usize> = (0..src.dim()).filter(|&i| !self.columns[i].is_zero()).collect();
        let image_tuples = (nz.len() as u128).saturating_pow(n as u32);
        src.limits().check(
            "morphism check",
            image_tuples.saturating_add(src.table().len() as u128),
        )?;
        let mut candidates: BTreeSet<Vec<usize>> = src.table().keys().cloned().collect();
        if !nz.is_empty() {
            candidates.extend(vec![nz; n].into_iter().multi_cartesian_product());
        }
        let mut bracket_violations = Vec::new();
        for t in candidates {
            let lhs = match src.bracket_basis(&t) {
                Some(v) => self.apply(v),
                None => SparseVec::new(),
            };
            let args: Vec<&SparseVec> = t.iter().map(|&i| &self.columns[i]).collect();
            let rhs = self.target.bracket_sparse(&args);
            let difference = lhs.sub(&rhs);
            if !difference.is_zero() {
                bracket_violations.push(Violation { tuple: t, difference });
            }
        }
        let alpha_commutes = self.matrix.mul(src.alpha())? == self.target.alpha().mul(&self.matrix)?;
        Ok(MorphismCheck {
            bracket_violations,
            alpha_commutes,
        })
    }

    pub fn is_valid(&self) -> Result<bool> {
        Ok(self.check()?.is_valid())
    }

    /// Errors with the first violation unless `check` passes.
    pub fn require_valid(&self) -> Result<()> {
        let c = self.check()?;
        if let Some(v) = c.bracket_violations.first() {
            return Err(Error::NotMorphism {
                reason: format!("bracket condition fails at basis tuple {:?}", v.tuple),
            });
        }
        if !c.alpha_commutes {
            return Err(Error::NotMorphism {
                reason: "map does not commute with the twists".into(),
            });
        }
        Ok(())
    }
}

impl HomNAlgebra {
    /// Wraps `self` in an `Arc` for use as a morphism endpoint.
    pub fn into_ref(self) -> AlgebraRef {
        Arc::new(self)
    }
}

use std::collections::BTreeSet;

use super::{BuildOptions, HomNAlgebra, Morphism};
use crate::error::{Error, Result};
use crate::exactla::{Accumulator, Matrix, SparseVec};
use crate::tensor_index::{decode, encode, kron_uniform, tensor_labels, tuples};

impl HomNAlgebra {
    /// `α'(e_a1 ⊗ … ⊗ e_a(n−1)) = α(e_a1) ⊗ … ⊗ α(e_a(n−1))` in `L^⊗(n−1)`.
    pub fn alpha_tensor(&self, a: &[usize]) -> SparseVec {
        let factors: Vec<&SparseVec> = a.iter().map(|&i| self.alpha_col(i)).collect();
        kron_uniform(&factors, self.dim())
    }

    /// `Σ_i α(a_1)⊗…⊗[a_i, b_1,…,b_{n−1}]⊗…⊗α(a_{n−1})` for basis tensors
    /// `a, b` of `L^⊗(n−1)`.
    pub fn derived_bracket(&self, a: &[usize], b: &[usize]) -> SparseVec {
        let d = self.dim();
        let mut acc = Accumulator::new();
        let mut key = Vec::with_capacity(self.arity);
        for i in 0..a.len() {
            key.clear();
            key.push(a[i]);
            key.extend_from_slice(b);
            let Some(inner) = self.table.get(&key) else {
                continue;
            };
            let factors: Vec<&SparseVec> = (0..a.len())
                .map(|j| if j == i { inner } else { self.alpha_col(a[j]) })
                .collect();
            acc.add_scaled(&num_traits::One::one(), &kron_uniform(&factors, d));
        }
        acc.finish()
    }

    /// `D_{n−1}(L)`: the Hom-Leibniz algebra on `L^⊗(n−1)`.
    pub fn derived_hom_leibniz(&self) -> Result<HomNAlgebra> {
        let m = self.arity - 1;
        let d = self.dim();
        let dd = self.limits.power("derived algebra dimension", d, m)?;
        self.limits.power("derived algebra bracket table", dd, 2)?;
        // Only b equal to the tail of some structure constant key can contribute.
        let tails: BTreeSet<Vec<usize>> = self.table.keys().map(|t| t[1..].to_vec()).collect();
        let mut entries = Vec::new();
        for a in tuples(d, m) {
            for b in &tails {
                let v = self.derived_bracket(&a, b);
                if !v.is_zero() {
                    entries.push((vec![encode(d, &a), encode(d, b)], v));
                }
            }
        }
        let alpha_cols: Vec<SparseVec> = (0..dd).map(|k| self.alpha_tensor(&decode(d, m, k))).collect();
        let alpha = Matrix::from_sparse_columns(dd, &alpha_cols);
        HomNAlgebra::new(
            format!("D_{}", self.name),
            2,
            tensor_labels(&self.labels, m),
            entries,
            alpha,
            self.options(),
        )
    }

    /// Yau twist of an untwisted algebra by a self-morphism `g`: bracket
    /// `g∘[−,…,−]` and twist `g`.
    pub fn yau_twist(&self, g: &Matrix, name: impl Into<String>) -> Result<HomNAlgebra> {
        if !self.alpha.is_identity() {
            return Err(Error::Precondition(format!(
                "`{}` must have identity twist to be Yau-twisted",
                self.name
            )));
        }
        self.require_valid()?;
        let me = std::sync::Arc::new(self.clone());
        let check = Morphism::new(me.clone(), me, g.clone())?.check()?;
        if !check.is_valid() {
            return Err(Error::NotMorphism {
                reason: format!(
                    "twisting map is not a self-morphism of `{}` ({} bracket violations)",
                    self.name,
                    check.bracket_violations.len()
                ),
            });
        }
        let entries = self
            .table
            .iter()
            .map(|(t, v)| (t.clone(), g.mul_sparse(v)))
            .collect();
        let twisted = HomNAlgebra::new(
            name,
            self.arity,
            self.labels.clone(),
            entries,
            g.clone(),
            BuildOptions {
                generate_skew: false,
                limits: self.limits,
            },
        )?;
        twisted.require_valid()?;
        Ok(twisted)
    }
}

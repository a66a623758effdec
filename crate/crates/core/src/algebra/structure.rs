use std::collections::BTreeMap;
use std::sync::Arc;

use itertools::Itertools;

use super::{AlgebraRef, HomNAlgebra, Morphism};
use crate::error::{Error, Result};
use crate::exactla::{Accumulator, Echelon, Matrix, PresentedSpace, SparseVec, Subspace};
use crate::tensor_index::unique_or_numbered;

impl HomNAlgebra {
    /// `Z(L)`: elements whose bracket vanishes in every slot against all
    /// basis vectors.
    pub fn center(&self) -> Subspace {
        let d = self.dim();
        // One equation per (slot, remaining tuple, output coordinate), linear in x.
        let mut rows: BTreeMap<(usize, Vec<usize>, usize), Accumulator> = BTreeMap::new();
        for (t, v) in &self.table {
            for slot in 0..self.arity {
                let mut rest = t.clone();
                let k = rest.remove(slot);
                for (c, x) in v.iter() {
                    rows.entry((slot, rest.clone(), c)).or_default().add(k, x);
                }
            }
        }
        let mut e = Echelon::new(d);
        for acc in rows.into_values() {
            e.insert(acc.finish());
            if e.is_full() {
                break;
            }
        }
        e.into_subspace().orthogonal_complement()
    }

    /// Span of `[u_1,…,u_n]` with `u_i` from a basis of `M_σ(i)`, over all
    /// `σ ∈ S_n`.
    pub fn commutator_subspace(&self, ms: &[Subspace]) -> Result<Subspace> {
        let n = self.arity;
        if ms.len() != n {
            return Err(Error::mismatch("commutator arguments", n, ms.len()));
        }
        for m in ms {
            if m.ambient_dim() != self.dim() {
                return Err(Error::mismatch("commutator subspace", self.dim(), m.ambient_dim()));
            }
        }
        if ms.iter().all(Subspace::is_full) {
            return Ok(self.derived_subspace());
        }
        if ms.iter().any(Subspace::is_zero) {
            return Ok(Subspace::zero(self.dim()));
        }
        let mut arrangements: Vec<Vec<usize>> = (0..n)
            .permutations(n)
            .map(|p| {
                // identify equal subspaces so repeated arrangements are skipped
                p.iter().map(|&k| ms.iter().position(|m| *m == ms[k]).unwrap()).collect()
            })
            .collect();
        arrangements.sort();
        arrangements.dedup();
        let needed: u128 = arrangements.len() as u128 * ms.iter().map(|m| m.dim() as u128).product::<u128>();
        self.limits.check("commutator subspace", needed)?;
        let mut e = Echelon::new(self.dim());
        'outer: for arr in arrangements {
            let bases: Vec<&[SparseVec]> = arr.iter().map(|&k| ms[k].rows()).collect();
            for combo in bases.iter().map(|b| b.iter()).multi_cartesian_product() {
                e.insert(self.bracket_sparse(&combo));
                if e.is_full() {
                    break 'outer;
                }
            }
        }
        Ok(e.into_subspace())
    }

    /// `[L,…,L]`: the span of all structure constants.
    pub fn derived_subspace(&self) -> Subspace {
        Subspace::span_sparse(self.dim(), self.table.values().cloned())
    }

    /// `[L,…,L] = L`; the zero algebra counts as perfect.
    pub fn is_perfect(&self) -> bool {
        self.derived_subspace().is_full()
    }

    /// `L^ann`: span of `B(…,a,b,…) + B(…,b,a,…)` over adjacent slot pairs
    /// and basis vectors elsewhere.
    pub fn ann_subspace(&self) -> Subspace {
        let mut gens = Vec::new();
        for (t, v) in &self.table {
            for i in 0..self.arity - 1 {
                let mut s = t.clone();
                s.swap(i, i + 1);
                let g = match self.table.get(&s) {
                    Some(w) => v.add(w),
                    None => v.clone(),
                };
                gens.push(g);
            }
        }
        Subspace::span_sparse(self.dim(), gens)
    }

    /// `L / L^ann` with the induced structure.
    pub fn lie_quotient(self: &Arc<Self>) -> Result<(AlgebraRef, Morphism)> {
        let ann = self.ann_subspace();
        self.quotient_algebra(&ann)
    }

    /// Why `m` fails to be an n-sided Hom-ideal, or `None` if it is one.
    pub fn ideal_failure(&self, m: &Subspace) -> Option<String> {
        if m.ambient_dim() != self.dim() {
            return Some(format!("ambient dimension {} differs from {}", m.ambient_dim(), self.dim()));
        }
        for (k, row) in m.rows().iter().enumerate() {
            if !m.contains_sparse(&self.alpha_apply(row)) {
                return Some(format!("not α-invariant: α of basis vector {k} leaves the subspace"));
            }
        }
        for row in m.rows() {
            for slot in 0..self.arity {
                for (rest, v) in self.slot_images(row, slot) {
                    if !m.contains_sparse(&v) {
                        return Some(format!(
                            "bracket with the subspace in slot {} and basis {:?} elsewhere leaves it",
                            slot + 1,
                            rest
                        ));
                    }
                }
            }
        }
        None
    }

    pub fn is_ideal(&self, m: &Subspace) -> bool {
        self.ideal_failure(m).is_none()
    }

    /// For fixed `x` in slot `slot`, the nonzero brackets against basis
    /// tuples in the remaining slots, keyed by those tuples.
    pub(crate) fn slot_images(&self, x: &SparseVec, slot: usize) -> BTreeMap<Vec<usize>, SparseVec> {
        let mut groups: BTreeMap<Vec<usize>, Accumulator> = BTreeMap::new();
        for (t, v) in &self.table {
            if let Some(c) = x.get(t[slot]) {
                let mut rest = t.clone();
                rest.remove(slot);
                groups.entry(rest).or_default().add_scaled(c, v);
            }
        }
        groups
            .into_iter()
            .map(|(k, a)| (k, a.finish()))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }

    /// `L / M` with induced bracket and twist, and the projection.
    pub fn quotient_algebra(self: &Arc<Self>, m: &Subspace) -> Result<(AlgebraRef, Morphism)> {
        if let Some(reason) = self.ideal_failure(m) {
            return Err(Error::NotIdeal { reason });
        }
        let p = PresentedSpace::new(m.clone());
        let reps = p.rep_indices().to_vec();
        let mut position = vec![None; self.dim()];
        for (k, &r) in reps.iter().enumerate() {
            position[r] = Some(k);
        }
        let mut entries = Vec::new();
        for (t, v) in &self.table {
            let Some(qt) = t.iter().map(|&i| position[i]).collect::<Option<Vec<usize>>>() else {
                continue;
            };
            entries.push((qt, p.project_sparse(v)));
        }
        let alpha_cols: Vec<SparseVec> = reps.iter().map(|&r| p.project_sparse(self.alpha_col(r))).collect();
        let alpha = Matrix::from_sparse_columns(reps.len(), &alpha_cols);
        let labels = reps.iter().map(|&r| self.labels[r].clone()).collect();
        let q = HomNAlgebra::new(
            format!("{}_q", self.name),
            self.arity,
            labels,
            entries,
            alpha,
            self.options(),
        )?;
        let q = Arc::new(q);
        let proj = Morphism::new(self.clone(), q.clone(), p.projection_matrix())?;
        Ok((q, proj))
    }

    /// The subalgebra on `s` in the coordinates of its canonical basis, and
    /// the inclusion matrix (`dim × dim s`). Fails unless `s` is closed under
    /// the bracket and `α`.
    pub fn subalgebra(&self, s: &Subspace, name: impl Into<String>) -> Result<(HomNAlgebra, Matrix)> {
        if s.ambient_dim() != self.dim() {
            return Err(Error::mismatch("subalgebra", self.dim(), s.ambient_dim()));
        }
        let k = s.dim();
        let coords = |v: &SparseVec, what: &str| -> Result<SparseVec> {
            s.coordinates_sparse(v)
                .map(|c| SparseVec::from_dense(&c))
                .ok_or_else(|| Error::Precondition(format!("subspace is not closed under {what}")))
        };
        let needed = crate::limits::checked_pow(k, self.arity).unwrap_or(u128::MAX);
        self.limits.check("subalgebra bracket table", needed)?;
        let rows = s.rows();
        let mut entries = Vec::new();
        for t in crate::tensor_index::tuples(k, self.arity) {
            let args: Vec<&SparseVec> = t.iter().map(|&i| &rows[i]).collect();
            let v = self.bracket_sparse(&args);
            if !v.is_zero() {
                entries.push((t, coords(&v, "the bracket")?));
            }
        }
        let mut alpha_cols = Vec::with_capacity(k);
        for r in rows {
            alpha_cols.push(coords(&self.alpha_apply(r), "the twist")?);
        }
        let alpha = Matrix::from_sparse_columns(k, &alpha_cols);
        let labels = unique_or_numbered(
            s.pivots().iter().map(|&p| self.labels[p].clone()).collect(),
            "s",
        );
        let sub = HomNAlgebra::new(name, self.arity, labels, entries, alpha, self.options())?;
        Ok((sub, s.basis_matrix()))
    }

    /// `A × B` with componentwise bracket and twist.
    pub fn direct_product(a: &HomNAlgebra, b: &HomNAlgebra, name: impl Into<String>) -> Result<HomNAlgebra> {
        if a.arity != b.arity {
            return Err(Error::mismatch("direct product arity", a.arity, b.arity));
        }
        let da = a.dim();
        let mut entries: Vec<(Vec<usize>, SparseVec)> = a.table.iter().map(|(t, v)| (t.clone(), v.clone())).collect();
        for (t, v) in &b.table {
            entries.push((t.iter().map(|i| i + da).collect(), v.reindex(|i| i + da)));
        }
        let alpha = a.alpha.direct_sum(&b.alpha);
        let mut labels: Vec<String> = a.labels.iter().chain(&b.labels).cloned().collect();
        let mut seen = std::collections::HashSet::new();
        if !labels.iter().all(|l| seen.insert(l.clone())) {
            labels = a
                .labels
                .iter()
                .map(|l| format!("{}.{l}", a.name))
                .chain(b.labels.iter().map(|l| format!("{}.{l}", b.name)))
                .collect();
            labels = unique_or_numbered(labels, "p");
        }
        HomNAlgebra::new(
            name,
            a.arity,
            labels,
            entries,
            alpha,
            super::BuildOptions {
                generate_skew: false,
                limits: a.limits,
            },
        )
    }
}

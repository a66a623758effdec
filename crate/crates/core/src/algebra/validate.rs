//! Fundamental-identity and multiplicativity validators.
//!
//! Both sides of each identity vanish unless certain structure constants
//! and twist columns are nonzero, so only the basis tuples that can carry a
//! nonzero term are enumerated. Every other tuple satisfies `0 = 0`.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::One;

use super::HomNAlgebra;
use crate::error::Result;
use crate::exactla::{Accumulator, Scalar, SparseVec};

/// A basis tuple where an identity fails, with `LHS − RHS`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub tuple: Vec<usize>,
    pub difference: SparseVec,
}

impl HomNAlgebra {
    pub(crate) fn alpha_support(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.alpha_cols[i].is_zero()).collect()
    }

    /// Tuples `(x_1,…,x_n, y_1,…,y_{n−1})` where
    /// `[[x], αy_1,…,αy_{n−1}] ≠ Σ_i [αx_1,…,[x_i, y],…,αx_n]`,
    /// in lexicographic order.
    pub fn validate_fundamental_identity(&self) -> Result<Vec<Violation>> {
        let n = self.arity;
        let nz = self.alpha_support();
        let keys = self.table.len() as u128;
        let fanout = (nz.len() as u128).saturating_pow((n - 1) as u32);
        self.limits.check(
            "fundamental identity validation",
            keys.saturating_mul(fanout).saturating_mul(n as u128 + 1),
        )?;

        let mut candidates: BTreeSet<Vec<usize>> = BTreeSet::new();
        if !nz.is_empty() {
            let tails: Vec<Vec<usize>> = vec![nz.clone(); n - 1]
                .into_iter()
                .multi_cartesian_product()
                .collect();
            for x in self.table.keys() {
                // LHS can be nonzero.
                for y in &tails {
                    let mut t = x.clone();
                    t.extend_from_slice(y);
                    candidates.insert(t);
                }
                // x = (x_i, y): RHS term i can be nonzero.
                for i in 0..n {
                    for others in &tails {
                        let mut xs = others.clone();
                        xs.insert(i, x[0]);
                        let mut t = xs;
                        t.extend_from_slice(&x[1..]);
                        candidates.insert(t);
                    }
                }
            }
        }

        let one = Scalar::one();
        let minus_one = -Scalar::one();
        let mut violations = Vec::new();
        for t in candidates {
            let (x, y) = t.split_at(n);
            let mut acc = Accumulator::new();
            if let Some(bx) = self.table.get(x) {
                let alpha_y: Vec<&SparseVec> = y.iter().map(|&j| &self.alpha_cols[j]).collect();
                let mut args = vec![bx];
                args.extend(alpha_y);
                acc.add_scaled(&one, &self.bracket_sparse(&args));
            }
            for i in 0..n {
                let mut inner_key = vec![x[i]];
                inner_key.extend_from_slice(y);
                let Some(inner) = self.table.get(&inner_key) else {
                    continue;
                };
                let args: Vec<&SparseVec> = (0..n)
                    .map(|j| if j == i { inner } else { &self.alpha_cols[x[j]] })
                    .collect();
                acc.add_scaled(&minus_one, &self.bracket_sparse(&args));
            }
            let difference = acc.finish();
            if !difference.is_zero() {
                violations.push(Violation { tuple: t, difference });
            }
        }
        Ok(violations)
    }

    /// Tuples `x` where `α[x_1,…,x_n] ≠ [αx_1,…,αx_n]`, lexicographically.
    pub fn validate_multiplicative(&self) -> Result<Vec<Violation>> {
        let n = self.arity;
        let nz = self.alpha_support();
        let all_nonzero = (nz.len() as u128).saturating_pow(n as u32);
        self.limits.check(
            "multiplicativity validation",
            all_nonzero.saturating_add(self.table.len() as u128),
        )?;
        let mut candidates: BTreeSet<Vec<usize>> = self.table.keys().cloned().collect();
        if !nz.is_empty() {
            candidates.extend(vec![nz; n].into_iter().multi_cartesian_product());
        }
        let mut violations = Vec::new();
        for t in candidates {
            let lhs = match self.table.get(&t) {
                Some(v) => self.alpha_apply(v),
                None => SparseVec::new(),
            };
            let args: Vec<&SparseVec> = t.iter().map(|&i| &self.alpha_cols[i]).collect();
            let rhs = self.bracket_sparse(&args);
            let difference = lhs.sub(&rhs);
            if !difference.is_zero() {
                violations.push(Violation { tuple: t, difference });
            }
        }
        Ok(violations)
    }
}

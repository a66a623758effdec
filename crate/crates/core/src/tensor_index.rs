//! Flattening of tensor-power bases.
//!
//! The basis of `V_1 ⊗ … ⊗ V_m` is enumerated lexicographically by index
//! tuples, first factor most significant: `(i_1, …, i_m)` has flat index
//! `Σ_k i_k · Π_{l>k} dim V_l`.

use std::collections::HashSet;

use num_traits::Zero;

use crate::exactla::{Accumulator, Scalar, SparseVec};

pub fn encode(dim: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &i| acc * dim + i)
}

pub fn decode(dim: usize, len: usize, mut index: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = index % dim;
        index /= dim;
    }
    out
}

/// Iterator over all tuples in `[0, dim)^len`, lexicographically.
pub fn tuples(dim: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = if dim == 0 && len > 0 { 0 } else { dim.pow(len as u32) };
    (0..total).map(move |i| decode(dim, len, i))
}

/// Iterator over all tuples with slot `k` drawn from `choices[k]`.
pub fn product(choices: Vec<Vec<usize>>) -> impl Iterator<Item = Vec<usize>> {
    let total: usize = choices.iter().map(Vec::len).product();
    (0..total).map(move |mut flat| {
        let mut out = vec![0; choices.len()];
        for k in (0..choices.len()).rev() {
            let c = &choices[k];
            out[k] = c[flat % c.len()];
            flat /= c.len();
        }
        out
    })
}

/// `v_1 ⊗ … ⊗ v_m` where factor `k` lives in a space of dimension `dims[k]`.
pub fn kron(factors: &[&SparseVec], dims: &[usize]) -> SparseVec {
    debug_assert_eq!(factors.len(), dims.len());
    let mut acc: Vec<(usize, Scalar)> = vec![(0, num_traits::One::one())];
    for (f, &d) in factors.iter().zip(dims) {
        if f.is_zero() {
            return SparseVec::new();
        }
        let mut next = Vec::with_capacity(acc.len() * f.nnz());
        for (i, x) in &acc {
            for (j, y) in f.iter() {
                next.push((i * d + j, x * y));
            }
        }
        acc = next;
    }
    let mut out = Accumulator::new();
    for (i, x) in acc {
        if !x.is_zero() {
            out.add(i, &x);
        }
    }
    out.finish()
}

/// `kron` with every factor in the same space of dimension `dim`.
pub fn kron_uniform(factors: &[&SparseVec], dim: usize) -> SparseVec {
    kron(factors, &vec![dim; factors.len()])
}

/// Labels for the basis of `V^⊗m`: factor labels joined by `.`, or
/// `t0, t1, …` if joining would be ambiguous.
pub fn tensor_labels(labels: &[String], m: usize) -> Vec<String> {
    let joined: Vec<String> = tuples(labels.len(), m)
        .map(|t| t.iter().map(|&i| labels[i].as_str()).collect::<Vec<_>>().join("."))
        .collect();
    unique_or_numbered(joined, "t")
}

pub(crate) fn unique_or_numbered(labels: Vec<String>, prefix: &str) -> Vec<String> {
    let mut seen = HashSet::new();
    if labels.iter().all(|l| !l.is_empty() && seen.insert(l.clone())) {
        labels
    } else {
        (0..labels.len()).map(|i| format!("{prefix}{i}")).collect()
    }
}

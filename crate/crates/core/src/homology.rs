//! The complex `CL_k = L ⊗ D^⊗k`, `D = L^⊗(n−1)`, with coefficients in the
//! symmetric co-representation of `D_{n−1}(L)` on `L`, and its homology.
//!
//! Chains are flattened with [`crate::tensor_index`]: the basis element
//! `m ⊗ x_1 ⊗ … ⊗ x_k` is the index tuple `(m, x_1…, …, x_k…)` of length
//! `k(n−1)+1` over `[0, d)`.

use std::collections::HashMap;

use num_traits::One;

use crate::algebra::{AlgebraRef, HomNAlgebra};
use crate::error::{Error, Result};
use crate::exactla::{Echelon, PresentedSpace, Scalar, SparseMatrix, SparseVec, Subspace};
use crate::limits::checked_pow;
use crate::tensor_index::{decode, encode, kron, kron_uniform, tuples};

/// Highest degree `hl_general` accepts unless told otherwise.
pub const DEFAULT_MAX_DEGREE: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `[l, l_1⊗…⊗l_{n−1}] = [l, l_1, …, l_{n−1}]`
    Left,
    /// `[l_1⊗…⊗l_{n−1}, l] = −[l, l_1, …, l_{n−1}]`
    Right,
}

/// Action of `D_{n−1}(L)` on `L`; `t` is in coordinates of `L^⊗(n−1)`.
pub fn corep_action(a: &HomNAlgebra, l: &SparseVec, t: &SparseVec, side: Side) -> SparseVec {
    let d = a.dim();
    let m = a.arity() - 1;
    let mut out = SparseVec::new();
    for (x, tx) in t.iter() {
        let mut args = vec![l.clone()];
        args.extend(decode(d, m, x).into_iter().map(SparseVec::unit));
        let refs: Vec<&SparseVec> = args.iter().collect();
        out.axpy(tx, &a.bracket_sparse(&refs));
    }
    match side {
        Side::Left => out,
        Side::Right => out.negated(),
    }
}

/// One differential of the complex with its bookkeeping.
#[derive(Clone, Debug)]
pub struct ComplexSlice {
    algebra: AlgebraRef,
    degree: usize,
    differential: SparseMatrix,
}

impl ComplexSlice {
    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `dim CL_k = d^(k(n−1)+1)`
    pub fn module_dim(&self) -> usize {
        self.differential.cols()
    }

    pub fn codomain_dim(&self) -> usize {
        self.differential.rows()
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.differential
    }

    /// Dense copy, refused above the algebra's resource cap.
    pub fn to_dense(&self) -> Result<crate::exactla::Matrix> {
        let cells = (self.module_dim() as u128) * (self.codomain_dim() as u128);
        self.algebra.limits().check("dense differential", cells)?;
        Ok(self.differential.to_dense())
    }
}

fn chain_dim(a: &HomNAlgebra, k: usize) -> Result<usize> {
    a.limits()
        .power("chain module dimension", a.dim(), k * (a.arity() - 1) + 1)
}

/// `δ_1(x_1⊗…⊗x_n) = [x_1,…,x_n]`.
pub fn delta1(a: &AlgebraRef) -> Result<ComplexSlice> {
    let d = a.dim();
    let cols = chain_dim(a, 1)?;
    let columns = (0..cols)
        .map(|c| {
            a.bracket_basis(&decode(d, a.arity(), c))
                .cloned()
                .unwrap_or_default()
        })
        .collect();
    Ok(ComplexSlice {
        algebra: a.clone(),
        degree: 1,
        differential: SparseMatrix::from_columns(d, columns),
    })
}

/// `δ_2(x⊗y) = [x]⊗αy_1⊗…⊗αy_{n−1} − Σ_i αx_1⊗…⊗[x_i, y]⊗…⊗αx_n`,
/// assembled straight from the structure constants.
pub fn delta2(a: &AlgebraRef) -> Result<ComplexSlice> {
    let d = a.dim();
    let n = a.arity();
    let rows = chain_dim(a, 1)?;
    let cols = chain_dim(a, 2)?;
    a.limits()
        .check("delta2 assembly", (cols as u128) * (n as u128 + 1))?;
    let mut columns = Vec::with_capacity(cols);
    for t in tuples(d, 2 * n - 1) {
        let (x, y) = t.split_at(n);
        let mut col = SparseVec::new();
        if let Some(b) = a.bracket_basis(x) {
            let mut factors = vec![b];
            factors.extend(y.iter().map(|&j| a.alpha_col(j)));
            col = kron_uniform(&factors, d);
        }
        let mut key = Vec::with_capacity(n);
        for i in 0..n {
            key.clear();
            key.push(x[i]);
            key.extend_from_slice(y);
            let Some(inner) = a.bracket_basis(&key) else {
                continue;
            };
            let factors: Vec<&SparseVec> = (0..n)
                .map(|j| if j == i { inner } else { a.alpha_col(x[j]) })
                .collect();
            col.axpy(&-Scalar::one(), &kron_uniform(&factors, d));
        }
        columns.push(col);
    }
    Ok(ComplexSlice {
        algebra: a.clone(),
        degree: 2,
        differential: SparseMatrix::from_columns(rows, columns),
    })
}

/// Generic `d_k : CL_k → CL_{k−1}` from the three-term formula.
pub fn differential_matrix(a: &AlgebraRef, k: usize) -> Result<ComplexSlice> {
    if k == 0 {
        return Err(Error::Precondition("differentials start at degree 1".into()));
    }
    let d = a.dim();
    let m = a.arity() - 1;
    let dd = a.limits().power("derived algebra dimension", d, m)?;
    let cols = chain_dim(a, k)?;
    let rows = chain_dim(a, k - 1)?;
    let work = checked_pow(k, 2).unwrap_or(u128::MAX).saturating_mul(cols as u128);
    a.limits().check("differential assembly", work)?;

    // [m, x] for basis m ∈ L, x ∈ D
    let left: Vec<Vec<SparseVec>> = (0..d)
        .map(|l| {
            (0..dd)
                .map(|x| {
                    let mut key = vec![l];
                    key.extend(decode(d, m, x));
                    a.bracket_basis(&key).cloned().unwrap_or_default()
                })
                .collect()
        })
        .collect();
    let alpha_d: Vec<SparseVec> = (0..dd).map(|x| a.alpha_tensor(&decode(d, m, x))).collect();
    let mut derived: HashMap<(usize, usize), SparseVec> = HashMap::new();
    let mut dims = vec![d];
    dims.extend(std::iter::repeat_n(dd, k - 1));

    let mut columns = Vec::with_capacity(cols);
    for c in 0..cols {
        let flat = decode(d, k * m + 1, c);
        let l = flat[0];
        let xs: Vec<usize> = flat[1..].chunks(m).map(|ch| encode(d, ch)).collect();
        let mut col = SparseVec::new();

        let mut factors: Vec<&SparseVec> = vec![&left[l][xs[0]]];
        factors.extend(xs[1..].iter().map(|&x| &alpha_d[x]));
        col.axpy(&Scalar::one(), &kron(&factors, &dims));

        for i in 1..k {
            // (−1)^(i+1) for zero-based i, times −1 from the right action
            let sign = if i % 2 == 1 { -Scalar::one() } else { Scalar::one() };
            let mut factors: Vec<&SparseVec> = vec![&left[l][xs[i]]];
            factors.extend((0..k).filter(|&j| j != i).map(|j| &alpha_d[xs[j]]));
            col.axpy(&sign, &kron(&factors, &dims));
        }

        for j in 1..k {
            let sign = if j % 2 == 1 { -Scalar::one() } else { Scalar::one() };
            for i in 0..j {
                let key = (xs[i], xs[j]);
                let bracket: &SparseVec = derived
                    .entry(key)
                    .or_insert_with(|| a.derived_bracket(&decode(d, m, xs[i]), &decode(d, m, xs[j])));
                let mut factors: Vec<&SparseVec> = vec![a.alpha_col(l)];
                for s in (0..k).filter(|&s| s != j) {
                    factors.push(if s == i { bracket } else { &alpha_d[xs[s]] });
                }
                col.axpy(&sign, &kron(&factors, &dims));
            }
        }
        columns.push(col);
    }
    Ok(ComplexSlice {
        algebra: a.clone(),
        degree: k,
        differential: SparseMatrix::from_columns(rows, columns),
    })
}

/// `Ker d_k / Im d_{k+1}`, presented in coordinates of the cycle basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    degree: usize,
    cycles: Subspace,
    boundaries: Subspace,
    space: PresentedSpace,
}

impl HomologyGroup {
    /// Fails when the boundaries are not cycles.
    pub fn new(degree: usize, cycles: Subspace, boundaries: Subspace) -> Result<Self> {
        if let Some(b) = boundaries.rows().iter().find(|b| !cycles.contains_sparse(b)) {
            return Err(Error::NotWellDefined {
                what: format!("homology in degree {degree}: boundary outside the cycles"),
                witness: format!("{b:?}"),
            });
        }
        let position: HashMap<usize, usize> =
            cycles.pivots().iter().enumerate().map(|(k, &p)| (p, k)).collect();
        // coordinates in an echelon basis are the entries at its pivots
        let coords = boundaries.rows().iter().map(|b| {
            SparseVec::from_pairs(
                b.iter()
                    .filter_map(|(i, x)| position.get(&i).map(|&k| (k, x.clone()))),
            )
        });
        let relations = Subspace::span_sparse(cycles.dim(), coords);
        Ok(Self {
            degree,
            cycles,
            boundaries,
            space: PresentedSpace::new(relations),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn cycles(&self) -> &Subspace {
        &self.cycles
    }

    pub fn boundaries(&self) -> &Subspace {
        &self.boundaries
    }

    pub fn space(&self) -> &PresentedSpace {
        &self.space
    }

    /// Chains whose classes form a basis of the homology.
    pub fn representatives(&self) -> Vec<SparseVec> {
        self.space
            .rep_indices()
            .iter()
            .map(|&k| self.cycles.rows()[k].clone())
            .collect()
    }

    /// Homology class of a cycle, `None` if `v` is not a cycle.
    pub fn class_of(&self, v: &SparseVec) -> Option<SparseVec> {
        let coords = self.cycles.coordinates_sparse(v)?;
        Some(self.space.project_sparse(&SparseVec::from_dense(&coords)))
    }
}

/// Column space of `m` inside `cycles`, stopping once it fills them.
fn boundaries_within(m: &SparseMatrix, cycles: &Subspace) -> Subspace {
    let mut e = Echelon::new(m.rows());
    for c in m.columns() {
        if e.rank() == cycles.dim() {
            break;
        }
        e.insert(c.clone());
    }
    e.into_subspace()
}

/// `ₙHL₀ = L / [L,…,L]`.
pub fn hl0(a: &AlgebraRef) -> Result<HomologyGroup> {
    let d1 = delta1(a)?;
    HomologyGroup::new(0, Subspace::full(a.dim()), d1.matrix().image())
}

/// `ₙHL₁ = Ker δ₁ / Im δ₂`.
pub fn hl1(a: &AlgebraRef) -> Result<HomologyGroup> {
    let cycles = delta1(a)?.matrix().kernel();
    let d2 = delta2(a)?;
    HomologyGroup::new(1, cycles.clone(), boundaries_within(d2.matrix(), &cycles))
}

/// Homology of the generic complex, `k ≤ DEFAULT_MAX_DEGREE`.
pub fn hl_general(a: &AlgebraRef, k: usize) -> Result<HomologyGroup> {
    hl_general_capped(a, k, DEFAULT_MAX_DEGREE)
}

pub fn hl_general_capped(a: &AlgebraRef, k: usize, max_degree: usize) -> Result<HomologyGroup> {
    if k > max_degree {
        return Err(Error::ResourceLimit {
            what: "homology degree".into(),
            needed: k as u128,
            cap: max_degree as u64,
        });
    }
    let cycles = if k == 0 {
        Subspace::full(a.dim())
    } else {
        differential_matrix(a, k)?.matrix().kernel()
    };
    let next = differential_matrix(a, k + 1)?;
    HomologyGroup::new(k, cycles.clone(), boundaries_within(next.matrix(), &cycles))
}

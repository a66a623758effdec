//! The non-abelian tensor product `M_1 ∗ … ∗ M_n` of Hom-ideals, the map
//! `ψ`, the comparison `φ` with the uce and the exact sequence attached to
//! an ideal of a perfect algebra.
//!
//! Symbols are modelled inside `L^⊗n`: relations (a) and (b) are exactly
//! multilinearity, so the free space `W` is the span of the pure tensors with
//! factors from the admissible ideals, and `M_1 ∗ … ∗ M_n = W / DL`.

use std::sync::Arc;

use itertools::Itertools;

use crate::algebra::{AlgebraRef, BuildOptions, HomNAlgebra, Morphism};
use crate::error::{Error, Result};
use crate::exactla::{int, Echelon, Matrix, PresentedSpace, SparseVec, Subspace};
use crate::extensions::{Extension, UceResult};
use crate::homology::{delta1, delta2, hl1};
use crate::limits::checked_pow;
use crate::tensor_index::{decode, kron_uniform, product, tensor_labels, tuples, unique_or_numbered};

/// `W / DL` for the ideal configurations `(L, …, L)` and `(L, …, M, …, L)`.
#[derive(Clone, Debug)]
pub struct TensorPresentation {
    base: AlgebraRef,
    ideals: Vec<Subspace>,
    /// the proper ideal, if any; `L` otherwise
    ideal: Subspace,
    free: Subspace,
    relations: Subspace,
    space: PresentedSpace,
    algebra: AlgebraRef,
}

impl TensorPresentation {
    pub fn base(&self) -> &AlgebraRef {
        &self.base
    }

    pub fn ideals(&self) -> &[Subspace] {
        &self.ideals
    }

    /// `⋂ M_i`
    pub fn intersection(&self) -> &Subspace {
        &self.ideal
    }

    pub fn all_full(&self) -> bool {
        self.ideal.is_full()
    }

    /// `W ⊆ L^⊗n`
    pub fn free(&self) -> &Subspace {
        &self.free
    }

    pub fn free_dim(&self) -> usize {
        self.free.dim()
    }

    /// `DL_n(M_1, …, M_n) ⊆ W`
    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    /// The quotient in coordinates of the canonical basis of `W`.
    pub fn space(&self) -> &PresentedSpace {
        &self.space
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Class of a tensor of `W`; `None` outside `W`.
    pub fn class_of(&self, tensor: &SparseVec) -> Option<SparseVec> {
        let c = self.free.coordinates_sparse(tensor)?;
        Some(self.space.project_sparse(&SparseVec::from_dense(&c)))
    }

    /// The tensor of `W` standing for basis element `j`.
    pub fn representative(&self, j: usize) -> &SparseVec {
        &self.free.rows()[self.space.rep_indices()[j]]
    }
}

fn sign(p: &[usize]) -> i64 {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Argument lists of length `len`: one factor from `special` at one of
/// `positions`, standard basis vectors elsewhere.
fn assignments<'a>(
    units: &'a [SparseVec],
    special: &'a [SparseVec],
    len: usize,
    positions: &'a [usize],
) -> impl Iterator<Item = Vec<&'a SparseVec>> + 'a {
    let d = units.len();
    positions.iter().flat_map(move |&q| {
        special.iter().flat_map(move |m| {
            tuples(d, len - 1).map(move |rest| {
                let mut args: Vec<&SparseVec> = rest.iter().map(|&i| &units[i]).collect();
                args.insert(q, m);
                args
            })
        })
    })
}

/// Builds `M_1 ∗ … ∗ M_n`. At most one `M_i` may be a proper ideal.
pub fn tensor_product(a: &AlgebraRef, ideals: &[Subspace]) -> Result<TensorPresentation> {
    a.require_valid()?;
    let n = a.arity();
    let d = a.dim();
    if ideals.len() != n {
        return Err(Error::mismatch("number of ideals", n, ideals.len()));
    }
    for m in ideals {
        if m.ambient_dim() != d {
            return Err(Error::mismatch("ideal ambient dimension", d, m.ambient_dim()));
        }
        if let Some(reason) = a.ideal_failure(m) {
            return Err(Error::NotIdeal { reason });
        }
    }
    let proper: Vec<&Subspace> = ideals.iter().filter(|m| !m.is_full()).collect();
    if proper.len() > 1 {
        return Err(Error::Unsupported(
            "tensor products with more than one proper ideal".into(),
        ));
    }
    let ideal = proper.first().map_or_else(|| Subspace::full(d), |m| (*m).clone());
    let all_full = ideal.is_full();
    let units: Vec<SparseVec> = (0..d).map(SparseVec::unit).collect();
    let special: &[SparseVec] = if all_full { &units } else { ideal.rows() };
    let positions_n: Vec<usize> = if all_full { vec![0] } else { (0..n).collect() };
    let positions_c: Vec<usize> = if all_full { vec![0] } else { (0..2 * n - 1).collect() };

    let power = |e: usize| checked_pow(d, e).unwrap_or(u128::MAX);
    let m_count = special.len() as u128;
    a.limits().check("tensor free space", power(n).saturating_mul(n as u128))?;
    a.limits().check(
        "tensor relations",
        power(2 * n - 2)
            .saturating_mul(m_count)
            .saturating_mul((2 * n - 1) as u128 + (1..=n as u128).product::<u128>() * power(n - 1)),
    )?;

    let free = if all_full {
        Subspace::full(checked_pow(d, n).unwrap_or(0) as usize)
    } else {
        let mut e = Echelon::new(d.pow(n as u32));
        for args in assignments(&units, special, n, &positions_n) {
            e.insert(kron_uniform(&args, d));
            if e.is_full() {
                break;
            }
        }
        e.into_subspace()
    };

    let dn = d.pow(n as u32);
    let mut rel = Echelon::new(dn);
    // (c): δ₂ on L ⊗ … ⊗ M ⊗ … ⊗ L ⊆ L^⊗(2n−1); any τ ∈ S_{2n−1} only moves
    // the M factor, which `positions_c` already ranges over.
    let d2 = delta2(a)?;
    if all_full {
        for c in d2.matrix().columns() {
            if !c.is_zero() {
                rel.insert(c.clone());
            }
        }
    } else {
        for args in assignments(&units, special, 2 * n - 1, &positions_c) {
            let g = d2.matrix().apply(&kron_uniform(&args, d));
            if !g.is_zero() {
                rel.insert(g);
            }
        }
    }
    // (d): [x_σ] ⊗ αy − ε(σ)[x] ⊗ αy, with the M factor in the first slot of x
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    for m in special {
        for rest in tuples(d, 2 * n - 2) {
            let (xr, y) = rest.split_at(n - 1);
            let tail: Vec<&SparseVec> = y.iter().map(|&j| a.alpha_col(j)).collect();
            if tail.iter().any(|t| t.is_zero()) {
                continue;
            }
            let mut x = vec![m];
            x.extend(xr.iter().map(|&i| &units[i]));
            let base_bracket = a.bracket_sparse(&x);
            for p in &perms {
                let permuted: Vec<&SparseVec> = p.iter().map(|&i| x[i]).collect();
                let mut first = a.bracket_sparse(&permuted);
                first.axpy(&int(-sign(p)), &base_bracket);
                if first.is_zero() {
                    continue;
                }
                let mut factors = vec![&first];
                factors.extend(tail.iter().copied());
                rel.insert(kron_uniform(&factors, d));
            }
        }
    }
    let relations = rel.into_subspace();
    if !relations.is_subset_of(&free) {
        return Err(Error::NotWellDefined {
            what: "tensor relations leave the free space".into(),
            witness: String::new(),
        });
    }
    let coords = |v: &SparseVec| SparseVec::from_dense(&free.coordinates_sparse(v).expect("inside W"));
    let space = PresentedSpace::new(Subspace::span_sparse(
        free.dim(),
        relations.rows().iter().map(coords),
    ));

    let alpha_n = |v: &SparseVec| -> SparseVec {
        let mut out = SparseVec::new();
        for (t, x) in v.iter() {
            out.axpy(x, &a.alpha_tensor(&decode(d, n, t)));
        }
        out
    };
    for g in relations.rows() {
        if !relations.contains_sparse(&alpha_n(g)) {
            return Err(Error::NotWellDefined {
                what: "the induced twist does not preserve the tensor relations".into(),
                witness: format!("{g:?}"),
            });
        }
    }

    // The bracket of symbols is `ψ(t_1) ⊗ … ⊗ ψ(t_n)`, so it only sees ψ of
    // its arguments: a relation may enter a slot if every such tensor with
    // a factor from ψ(DL) is again a relation.
    let d1 = delta1(a)?;
    let psi_rel = Subspace::span_sparse(d, relations.rows().iter().map(|g| d1.matrix().apply(g)));
    let psi_free = Subspace::span_sparse(d, free.rows().iter().map(|g| d1.matrix().apply(g)));
    for v in psi_rel.rows() {
        for slot in 0..n {
            for rest in tuples(psi_free.dim(), n - 1) {
                let mut args: Vec<&SparseVec> = rest.iter().map(|&j| &psi_free.rows()[j]).collect();
                args.insert(slot, v);
                if !relations.contains_sparse(&kron_uniform(&args, d)) {
                    return Err(Error::NotWellDefined {
                        what: "the tensor bracket does not respect the relations".into(),
                        witness: format!("{v:?} in slot {slot}"),
                    });
                }
            }
        }
    }

    let reps = space.rep_indices().to_vec();
    let rep_tensors: Vec<&SparseVec> = reps.iter().map(|&r| &free.rows()[r]).collect();
    let values: Vec<SparseVec> = rep_tensors.iter().map(|t| d1.matrix().apply(t)).collect();
    let nz: Vec<usize> = (0..reps.len()).filter(|&j| !values[j].is_zero()).collect();
    a.limits()
        .check("tensor bracket table", checked_pow(nz.len(), n).unwrap_or(u128::MAX))?;
    let project = |v: &SparseVec| space.project_sparse(&coords(v));
    let mut entries = Vec::new();
    for t in product(vec![nz.clone(); n]) {
        let factors: Vec<&SparseVec> = t.iter().map(|&j| &values[j]).collect();
        let v = project(&kron_uniform(&factors, d));
        if !v.is_zero() {
            entries.push((t, v));
        }
    }
    let alpha_cols: Vec<SparseVec> = rep_tensors.iter().map(|t| project(&alpha_n(t))).collect();
    let all_labels = tensor_labels(a.labels(), n);
    let labels = unique_or_numbered(
        rep_tensors
            .iter()
            .map(|t| all_labels[t.leading().map_or(0, |(i, _)| i)].clone())
            .collect(),
        "t",
    );
    let algebra = HomNAlgebra::new(
        format!("{}_tensor", a.name()),
        n,
        labels,
        entries,
        Matrix::from_sparse_columns(reps.len(), &alpha_cols),
        BuildOptions {
            generate_skew: false,
            limits: a.limits(),
        },
    )?;
    Ok(TensorPresentation {
        base: a.clone(),
        ideals: ideals.to_vec(),
        ideal,
        free,
        relations,
        space,
        algebra: Arc::new(algebra),
    })
}

/// `L ∗ … ∗ L`
pub fn tensor_square(a: &AlgebraRef) -> Result<TensorPresentation> {
    tensor_product(a, &vec![Subspace::full(a.dim()); a.arity()])
}

/// `L ∗ … ∗ M ∗ … ∗ L` with `M` in slot `slot`.
pub fn tensor_with_ideal(a: &AlgebraRef, m: &Subspace, slot: usize) -> Result<TensorPresentation> {
    let mut ideals = vec![Subspace::full(a.dim()); a.arity()];
    ideals[slot] = m.clone();
    tensor_product(a, &ideals)
}

/// `ψ(m_1 ∗ … ∗ m_n) = [m_1, …, m_n]` into `⋂ M_i`, which is `L` itself when
/// every ideal is `L`.
pub fn psi_map(t: &TensorPresentation) -> Result<Morphism> {
    let a = &t.base;
    let d1 = delta1(a)?;
    for g in t.relations.rows() {
        if !d1.matrix().apply(g).is_zero() {
            return Err(Error::NotWellDefined {
                what: "ψ does not vanish on the tensor relations".into(),
                witness: format!("{g:?}"),
            });
        }
    }
    let target = if t.all_full() {
        a.clone()
    } else {
        let (sub, _) = a.subalgebra(&t.ideal, format!("{}_ideal", a.name()))?;
        Arc::new(sub)
    };
    let cols: Vec<SparseVec> = (0..t.dim())
        .map(|j| {
            let v = d1.matrix().apply(t.representative(j));
            if t.all_full() {
                v
            } else {
                SparseVec::from_dense(&t.ideal.coordinates_sparse(&v).expect("ψ lands in the ideal"))
            }
        })
        .collect();
    let psi = Morphism::new(t.algebra.clone(), target.clone(), Matrix::from_sparse_columns(target.dim(), &cols))?;
    psi.require_valid()?;
    Ok(psi)
}

/// `ψ : L ∗ … ∗ L → [L, …, L]` as an extension.
pub fn psi_extension(t: &TensorPresentation) -> Result<Extension> {
    if !t.all_full() {
        return Err(Error::Precondition("ψ onto the derived algebra needs every ideal equal to L".into()));
    }
    let psi = psi_map(t)?;
    let a = &t.base;
    if a.is_perfect() {
        return Extension::new(psi);
    }
    let derived = a.derived_subspace();
    let (sub, _) = a.subalgebra(&derived, format!("{}_derived", a.name()))?;
    let sub = Arc::new(sub);
    let cols: Vec<SparseVec> = (0..psi.source().dim())
        .map(|j| SparseVec::from_dense(&derived.coordinates_sparse(psi.column(j)).expect("ψ lands in [L, …, L]")))
        .collect();
    Extension::new(Morphism::new(
        psi.source().clone(),
        sub.clone(),
        Matrix::from_sparse_columns(sub.dim(), &cols),
    )?)
}

/// `φ(l_1 ∗ … ∗ l_n) = {l_1, …, l_n}`.
#[derive(Clone, Debug)]
pub struct PhiReport {
    /// `DL ⊆ I_L`
    pub well_defined: bool,
    pub injective: bool,
    pub surjective: bool,
    pub map: Option<Morphism>,
}

pub fn phi_to_uce(t: &TensorPresentation, u: &UceResult) -> Result<PhiReport> {
    if !t.all_full() {
        return Err(Error::Precondition("φ needs every ideal equal to L".into()));
    }
    if **u.base() != *t.base {
        return Err(Error::Precondition("tensor product and uce have different bases".into()));
    }
    if !t.base.is_perfect() {
        return Err(Error::NotPerfect {
            name: t.base.name().to_string(),
        });
    }
    let well_defined = t.relations.rows().iter().all(|g| u.class_of(g).is_zero());
    if !well_defined {
        return Ok(PhiReport {
            well_defined,
            injective: false,
            surjective: false,
            map: None,
        });
    }
    let cols: Vec<SparseVec> = (0..t.dim()).map(|j| u.class_of(t.representative(j))).collect();
    let phi = Morphism::new(
        t.algebra.clone(),
        u.algebra().clone(),
        Matrix::from_sparse_columns(u.algebra().dim(), &cols),
    )?;
    phi.require_valid()?;
    Ok(PhiReport {
        well_defined,
        injective: phi.is_injective(),
        surjective: phi.is_surjective(),
        map: Some(phi),
    })
}

/// The sequence
/// `Ker(⊕_i L∗…∗M∗…∗L → M) → Ker ψ → Ker ψ̄ → M / Σ_i [L,…,M,…,L] → 0`
/// with `Ker ψ` and `Ker ψ̄` also compared against `ₙHL₁`.
#[derive(Clone, Debug)]
pub struct Prop46Report {
    /// dimensions of the four displayed spaces
    pub dims: [usize; 4],
    /// `dim ₙHL₁(L)`, `dim ₙHL₁(L/M)` from the homology complex
    pub hl1_dims: (usize, usize),
    pub exact_at_second: bool,
    pub exact_at_third: bool,
    pub onto_last: bool,
}

impl Prop46Report {
    pub fn exact(&self) -> bool {
        self.exact_at_second && self.exact_at_third && self.onto_last
    }

    pub fn kernels_match_homology(&self) -> bool {
        (self.dims[1], self.dims[2]) == self.hl1_dims
    }
}

fn subspace_of_columns(rows: usize, cols: &[SparseVec]) -> Subspace {
    Subspace::span_sparse(rows, cols.iter().cloned())
}

fn combine(columns: &[SparseVec], v: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (i, x) in v.iter() {
        out.axpy(x, &columns[i]);
    }
    out
}

pub fn prop46_sequence(a: &AlgebraRef, m: &Subspace) -> Result<Prop46Report> {
    if !a.is_perfect() {
        return Err(Error::NotPerfect {
            name: a.name().to_string(),
        });
    }
    if let Some(reason) = a.ideal_failure(m) {
        return Err(Error::NotIdeal { reason });
    }
    let n = a.arity();
    let d = a.dim();
    let d1 = delta1(a)?;

    // middle: L ∗ … ∗ L and Ker ψ
    let t = tensor_square(a)?;
    let psi = psi_map(&t)?;
    let ker_psi = psi.kernel();

    // first: ⊕_i L∗…∗M∗…∗L, its map to M and its inclusion into L∗…∗L
    let mut to_m: Vec<SparseVec> = Vec::new();
    let mut incl: Vec<SparseVec> = Vec::new();
    for slot in 0..n {
        let ti = tensor_with_ideal(a, m, slot)?;
        for j in 0..ti.dim() {
            let r = ti.representative(j);
            let v = d1.matrix().apply(r);
            to_m.push(SparseVec::from_dense(&m.coordinates_sparse(&v).expect("ψ lands in M")));
            incl.push(t.class_of(r).expect("W_M ⊆ L^⊗n"));
        }
    }
    let ker_first = Matrix::from_sparse_columns(m.dim(), &to_m).kernel_basis();
    let image_first = subspace_of_columns(t.dim(), &ker_first.rows().iter().map(|k| combine(&incl, k)).collect::<Vec<_>>());

    // third: (L/M) ∗ … ∗ (L/M) and Ker ψ̄
    let (q, p) = a.quotient_algebra(m)?;
    let tq = tensor_square(&q)?;
    let psi_q = psi_map(&tq)?;
    let ker_psi_q = psi_q.kernel();
    let p_cols: Vec<SparseVec> = (0..d).map(|i| p.column(i).clone()).collect();
    let p_tensor = |v: &SparseVec| -> SparseVec {
        let mut out = SparseVec::new();
        for (idx, x) in v.iter() {
            let f: Vec<&SparseVec> = decode(d, n, idx).into_iter().map(|i| &p_cols[i]).collect();
            out.axpy(x, &kron_uniform(&f, q.dim()));
        }
        out
    };
    for g in t.relations().rows() {
        if !tq.class_of(&p_tensor(g)).expect("full free space").is_zero() {
            return Err(Error::NotWellDefined {
                what: "π ∗ … ∗ π does not respect the tensor relations".into(),
                witness: format!("{g:?}"),
            });
        }
    }
    let f2_cols: Vec<SparseVec> = (0..t.dim())
        .map(|j| tq.class_of(&p_tensor(t.representative(j))).expect("full free space"))
        .collect();
    let f2 = Matrix::from_sparse_columns(tq.dim(), &f2_cols);

    // last: M / Σ_i [L, …, M, …, L], in coordinates of M
    let full = Subspace::full(d);
    let mut s = Subspace::zero(d);
    for slot in 0..n {
        let mut slots = vec![full.clone(); n];
        slots[slot] = m.clone();
        s = s.sum(&a.commutator_subspace(&slots)?)?;
    }
    let s_in_m = Subspace::span_sparse(
        m.dim(),
        s.rows().iter().map(|v| SparseVec::from_dense(&m.coordinates_sparse(v).expect("inside M"))),
    );
    let last = PresentedSpace::new(s_in_m);

    // connecting map: lift through π ∗ … ∗ π, apply ψ, land in M
    let lift_q = PresentedSpace::new(m.clone());
    let q_lift: Vec<SparseVec> = (0..q.dim()).map(|j| lift_q.lift_sparse(&SparseVec::unit(j))).collect();
    let connecting: Vec<SparseVec> = ker_psi_q
        .rows()
        .iter()
        .map(|k| {
            let tensor = combine(
                &(0..tq.dim()).map(|j| tq.representative(j).clone()).collect::<Vec<_>>(),
                k,
            );
            let mut lifted = SparseVec::new();
            for (idx, x) in tensor.iter() {
                let f: Vec<&SparseVec> = decode(q.dim(), n, idx)
                    .into_iter()
                    .map(|i| &q_lift[i])
                    .collect();
                lifted.axpy(x, &kron_uniform(&f, d));
            }
            let v = d1.matrix().apply(&lifted);
            let in_m = m
                .coordinates_sparse(&v)
                .map(|c| SparseVec::from_dense(&c))
                .ok_or_else(|| Error::NotWellDefined {
                    what: "connecting map leaves M".into(),
                    witness: format!("{v:?}"),
                })?;
            Ok(last.project_sparse(&in_m))
        })
        .collect::<Result<_>>()?;

    // Ker ψ → Ker ψ̄
    let image_second: Vec<SparseVec> = ker_psi.rows().iter().map(|k| f2.mul_sparse(k)).collect();
    let image_second = subspace_of_columns(tq.dim(), &image_second);
    let ker_f2_on_ker_psi = ker_psi.intersect(&f2.kernel_basis())?;

    let conn = Matrix::from_sparse_columns(last.dim(), &connecting);
    let ker_conn = conn.kernel_basis();
    let ker_conn_in_tq = subspace_of_columns(
        tq.dim(),
        &ker_conn.rows().iter().map(|c| combine(ker_psi_q.rows(), c)).collect::<Vec<_>>(),
    );

    let exact_at_second = image_first.is_subset_of(&ker_psi) && image_first == ker_f2_on_ker_psi;
    let exact_at_third = image_second.is_subset_of(&ker_psi_q) && image_second == ker_conn_in_tq;
    let onto_last = conn.rank() == last.dim();
    Ok(Prop46Report {
        dims: [ker_first.dim(), ker_psi.dim(), ker_psi_q.dim(), last.dim()],
        hl1_dims: (hl1(a)?.dim(), hl1(&q)?.dim()),
        exact_at_second,
        exact_at_third,
        onto_last,
    })
}

#[cfg(test)]
mod tests;

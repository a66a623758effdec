use std::collections::HashMap;
use std::sync::Arc;

use num_traits::One;

use super::Extension;
use crate::algebra::{AlgebraRef, BuildOptions, HomNAlgebra, Morphism};
use crate::error::{Error, Result};
use crate::exactla::{Echelon, Matrix, PresentedSpace, Scalar, SparseVec, Subspace};
use crate::homology::{delta1, delta2, hl1};
use crate::limits::checked_pow;
use crate::tensor_index::{decode, kron_uniform, product, tensor_labels, tuples};

/// `uce(L) = L^⊗n / I_L` with `I_L = Im δ₂`, and `u_L {x} = [x]`.
#[derive(Clone, Debug)]
pub struct UceResult {
    base: AlgebraRef,
    algebra: AlgebraRef,
    u_map: Morphism,
    kernel: Subspace,
    presentation: PresentedSpace,
}

impl UceResult {
    pub fn base(&self) -> &AlgebraRef {
        &self.base
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn u_map(&self) -> &Morphism {
        &self.u_map
    }

    /// `Ker u_L` in uce coordinates.
    pub fn kernel(&self) -> &Subspace {
        &self.kernel
    }

    pub fn presentation(&self) -> &PresentedSpace {
        &self.presentation
    }

    /// `I_L ⊆ L^⊗n`
    pub fn relations(&self) -> &Subspace {
        self.presentation.relations()
    }

    /// Class of a tensor of `L^⊗n` in uce coordinates.
    pub fn class_of(&self, tensor: &SparseVec) -> SparseVec {
        self.presentation.project_sparse(tensor)
    }

    /// `{e_t1, …, e_tn}`
    pub fn class_of_tuple(&self, t: &[usize]) -> SparseVec {
        self.class_of(&SparseVec::unit(crate::tensor_index::encode(self.base.dim(), t)))
    }

    /// `u_L` as an extension; fails unless `L` is perfect.
    pub fn extension(&self) -> Result<Extension> {
        Extension::new(self.u_map.clone())
    }
}

fn alpha_power(a: &HomNAlgebra, v: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (t, x) in v.iter() {
        out.axpy(x, &a.alpha_tensor(&decode(a.dim(), a.arity(), t)));
    }
    out
}

/// Builds `uce(L)`; the bracket, twist and `u_L` are checked to be well
/// defined on `L^⊗n / I_L` before anything is returned.
pub fn uce(a: &AlgebraRef) -> Result<UceResult> {
    a.require_valid()?;
    let d = a.dim();
    let n = a.arity();
    let d1 = delta1(a)?;
    let i_l = delta2(a)?.matrix().image();

    // The bracket of cosets only sees δ₁ of each argument, so δ₁(I_L) = 0
    // makes both the bracket and u_L independent of representatives.
    for g in i_l.rows() {
        if !d1.matrix().apply(g).is_zero() {
            return Err(Error::NotWellDefined {
                what: format!("uce({}): δ₁ does not vanish on I_L", a.name()),
                witness: format!("{g:?}"),
            });
        }
        if !i_l.contains_sparse(&alpha_power(a, g)) {
            return Err(Error::NotWellDefined {
                what: format!("uce({}): α^⊗n does not preserve I_L", a.name()),
                witness: format!("{g:?}"),
            });
        }
    }

    let p = PresentedSpace::new(i_l);
    let reps = p.rep_indices().to_vec();
    let values: Vec<SparseVec> = reps.iter().map(|&r| d1.matrix().column(r).clone()).collect();
    let nz: Vec<usize> = (0..reps.len()).filter(|&j| !values[j].is_zero()).collect();
    a.limits().check(
        "uce bracket table",
        checked_pow(nz.len(), n).unwrap_or(u128::MAX),
    )?;
    let mut entries = Vec::new();
    for t in product(vec![nz.clone(); n]) {
        let factors: Vec<&SparseVec> = t.iter().map(|&j| &values[j]).collect();
        let v = p.project_sparse(&kron_uniform(&factors, d));
        if !v.is_zero() {
            entries.push((t, v));
        }
    }
    let alpha_cols: Vec<SparseVec> = reps
        .iter()
        .map(|&r| p.project_sparse(&a.alpha_tensor(&decode(d, n, r))))
        .collect();
    let all_labels = tensor_labels(a.labels(), n);
    let labels = reps.iter().map(|&r| all_labels[r].clone()).collect();
    let algebra = HomNAlgebra::new(
        format!("uce_{}", a.name()),
        n,
        labels,
        entries,
        Matrix::from_sparse_columns(reps.len(), &alpha_cols),
        BuildOptions {
            generate_skew: false,
            limits: a.limits(),
        },
    )?;
    algebra.require_valid()?;
    let algebra = Arc::new(algebra);
    let u_map = Morphism::new(algebra.clone(), a.clone(), Matrix::from_sparse_columns(d, &values))?;
    u_map.require_valid()?;
    Ok(UceResult {
        base: a.clone(),
        kernel: u_map.kernel(),
        algebra,
        u_map,
        presentation: p,
    })
}

/// `{[x], αy_1, …, αy_{n−1}} = Σ_i {αx_1, …, [x_i, y], …, αx_n}` on every
/// basis tuple, each side projected on its own.
pub fn identity3_check(u: &UceResult) -> Result<bool> {
    let a = &u.base;
    let d = a.dim();
    let n = a.arity();
    let tuples_needed = checked_pow(d, 2 * n - 1).unwrap_or(u128::MAX);
    a.limits()
        .check("identity (3) check", tuples_needed.saturating_mul(n as u128 + 1))?;
    for t in tuples(d, 2 * n - 1) {
        let (x, y) = t.split_at(n);
        let lhs = match a.bracket_basis(x) {
            Some(b) => {
                let mut factors = vec![b];
                factors.extend(y.iter().map(|&j| a.alpha_col(j)));
                u.class_of(&kron_uniform(&factors, d))
            }
            None => SparseVec::new(),
        };
        let mut rhs = SparseVec::new();
        for i in 0..n {
            let mut key = vec![x[i]];
            key.extend_from_slice(y);
            if let Some(inner) = a.bracket_basis(&key) {
                let factors: Vec<&SparseVec> = (0..n)
                    .map(|j| if j == i { inner } else { a.alpha_col(x[j]) })
                    .collect();
                rhs.axpy(&Scalar::one(), &u.class_of(&kron_uniform(&factors, d)));
            }
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Linear lift `L → K` through a surjection, via fixed preimages of the
/// basis (free variables set to zero).
fn preimages(pi: &Morphism) -> Result<Vec<SparseVec>> {
    let l = pi.target().dim();
    (0..l)
        .map(|i| {
            let e = crate::exactla::unit_vector(l, i);
            match pi.matrix().solve(&e)? {
                Some(x) => Ok(SparseVec::from_dense(&x)),
                None => Err(Error::NotSurjective {
                    rank: pi.rank(),
                    target_dim: l,
                }),
            }
        })
        .collect()
}

fn lift(pre: &[SparseVec], v: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (i, x) in v.iter() {
        out.axpy(x, &pre[i]);
    }
    out
}

/// `β : uce(L) → K` with `β{x_1,…,x_n} = [k_1,…,k_n]`, `π(k_i) = x_i`.
#[derive(Clone, Debug)]
pub struct InducedBeta {
    pub beta: Morphism,
    /// `π∘β = u_L`
    pub lifts_u: bool,
    /// shifting every preimage by a kernel vector leaves β unchanged
    pub preimage_independent: bool,
    /// uce(L) is perfect and any two lifts of `u_L` agree on brackets
    pub unique: bool,
}

pub fn induced_beta(u: &UceResult, e: &Extension) -> Result<InducedBeta> {
    e.require_central()?;
    if **e.target() != *u.base {
        return Err(Error::Precondition(format!(
            "extension is onto `{}`, uce is of `{}`",
            e.target().name(),
            u.base.name()
        )));
    }
    let k = e.source();
    let d = u.base.dim();
    let n = u.base.arity();
    let reps = u.presentation.rep_indices();

    let beta_columns = |pre: &[SparseVec]| -> Vec<SparseVec> {
        reps.iter()
            .map(|&r| {
                let args: Vec<&SparseVec> = decode(d, n, r).into_iter().map(|i| &pre[i]).collect();
                k.bracket_sparse(&args)
            })
            .collect()
    };

    let pre = preimages(e.map())?;
    // B : L^⊗n → K must kill I_L for β to be defined on the quotient
    let mut cache: HashMap<usize, SparseVec> = HashMap::new();
    for g in u.relations().rows() {
        let mut total = SparseVec::new();
        for (t, x) in g.iter() {
            let b = cache.entry(t).or_insert_with(|| {
                let args: Vec<&SparseVec> = decode(d, n, t).into_iter().map(|i| &pre[i]).collect();
                k.bracket_sparse(&args)
            });
            total.axpy(x, b);
        }
        if !total.is_zero() {
            return Err(Error::NotWellDefined {
                what: "β does not vanish on I_L".into(),
                witness: format!("{g:?}"),
            });
        }
    }
    let columns = beta_columns(&pre);
    let beta = Morphism::new(
        u.algebra.clone(),
        k.clone(),
        Matrix::from_sparse_columns(k.dim(), &columns),
    )?;
    beta.require_valid()?;
    let lifts_u = e.map().matrix().mul(beta.matrix())? == *u.u_map.matrix();

    let mut preimage_independent = true;
    for m in e.kernel().rows() {
        let shifted: Vec<SparseVec> = pre.iter().map(|p| p.add(m)).collect();
        if beta_columns(&shifted) != columns {
            preimage_independent = false;
            break;
        }
    }

    // β + δ with δ into Ker π changes [β x_1, …, β x_n] only through
    // brackets with a kernel vector in some slot.
    let uce_dim = u.algebra.dim();
    let mut differences_vanish = true;
    'outer: for m in e.kernel().rows() {
        for slot in 0..n {
            for rest in tuples(uce_dim, n - 1) {
                let mut args: Vec<&SparseVec> = rest.iter().map(|&j| &columns[j]).collect();
                args.insert(slot, m);
                if !k.bracket_sparse(&args).is_zero() {
                    differences_vanish = false;
                    break 'outer;
                }
            }
        }
    }
    let unique = differences_vanish && u.algebra.is_perfect();
    Ok(InducedBeta {
        beta,
        lifts_u,
        preimage_independent,
        unique,
    })
}

/// `σ = β∘u_K⁻¹` for a central `ρ : F → K` with `K` perfect; `None` when
/// `ₙHL₁(K) ≠ 0`, where this mechanism gives no splitting.
pub fn section_via_uce(e: &Extension) -> Result<Option<Morphism>> {
    e.require_central()?;
    let k = e.target();
    if !k.is_perfect() {
        return Err(Error::NotPerfect {
            name: k.name().to_string(),
        });
    }
    if hl1(k)?.dim() != 0 {
        return Ok(None);
    }
    let u = uce(k)?;
    let Some(u_inv) = u.u_map.matrix().inverse() else {
        return Ok(None);
    };
    let b = induced_beta(&u, e)?;
    let sigma = Morphism::new(k.clone(), e.source().clone(), b.beta.matrix().mul(&u_inv)?)?;
    sigma.require_valid()?;
    if !e.map().matrix().mul(sigma.matrix())?.is_identity() {
        return Err(Error::NotWellDefined {
            what: "section does not split the extension".into(),
            witness: format!("{}", sigma.matrix()),
        });
    }
    Ok(Some(sigma))
}

/// Perfect with `ₙHL₁ = 0` and `u_L` bijective.
pub fn centrally_closed_check(a: &AlgebraRef) -> Result<bool> {
    if !a.is_perfect() {
        return Err(Error::NotPerfect {
            name: a.name().to_string(),
        });
    }
    let u = uce(a)?;
    Ok(hl1(a)?.dim() == 0 && u.u_map.is_injective() && u.u_map.is_surjective())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeMode {
    Central,
    AlphaCentral,
}

#[derive(Clone, Debug)]
pub enum ProbeOutcome {
    Skipped { reason: String },
    /// `h` with `π'∘h = π`; `unique` when `K` is perfect and the target central
    Factored { h: Morphism, unique: bool },
    Failed { witness: String },
}

#[derive(Clone, Debug)]
pub struct ProbeEntry {
    pub target: String,
    pub outcome: ProbeOutcome,
}

/// Tries to factor `candidate : K → L` through each extension in `others`.
///
/// On `[K,…,K]` any such `h` is forced: `h[k_1,…,k_n] = [k'_1,…,k'_n]`
/// with `π'(k'_i) = π(k_i)`. Off it, `h` lifts `π` through fixed preimages.
pub fn universality_probe(candidate: &Extension, others: &[Extension], mode: ProbeMode) -> Result<Vec<ProbeEntry>> {
    candidate.require_central()?;
    let k = candidate.source();
    let n = k.arity();
    let mut report = Vec::with_capacity(others.len());
    for other in others {
        let target = format!("{} -> {}", other.source().name(), other.target().name());
        let matches = match mode {
            ProbeMode::Central => other.is_central(),
            ProbeMode::AlphaCentral => other.is_alpha_central(),
        };
        let outcome = if **other.target() != **candidate.target() {
            ProbeOutcome::Skipped {
                reason: "different base algebra".into(),
            }
        } else if !matches {
            ProbeOutcome::Skipped {
                reason: format!("not {}", if mode == ProbeMode::Central { "central" } else { "alpha-central" }),
            }
        } else {
            factor_through(candidate, other, n)?
        };
        report.push(ProbeEntry { target, outcome });
    }
    Ok(report)
}

fn factor_through(candidate: &Extension, other: &Extension, n: usize) -> Result<ProbeOutcome> {
    let k = candidate.source();
    let kp = other.source();
    let pre = preimages(other.map())?;
    let forced = |t: &[usize]| -> SparseVec {
        let lifted: Vec<SparseVec> = t
            .iter()
            .map(|&i| lift(&pre, candidate.map().column(i)))
            .collect();
        kp.bracket_sparse(&lifted.iter().collect::<Vec<_>>())
    };
    // basis of K: independent brackets first, then standard vectors
    let mut e = Echelon::new(k.dim());
    let mut basis = Vec::new();
    let mut values = Vec::new();
    for (t, v) in k.table() {
        if e.insert(v.clone()) {
            basis.push(v.clone());
            values.push(forced(t));
        }
    }
    for i in 0..k.dim() {
        if e.insert(SparseVec::unit(i)) {
            basis.push(SparseVec::unit(i));
            values.push(lift(&pre, candidate.map().column(i)));
        }
    }
    debug_assert_eq!(basis.len(), k.dim());
    let p = Matrix::from_sparse_columns(k.dim(), &basis);
    let v = Matrix::from_sparse_columns(kp.dim(), &values);
    let p_inv = p.inverse().expect("basis matrix is invertible");
    let h = Morphism::new(k.clone(), kp.clone(), v.mul(&p_inv)?)?;
    if other.map().matrix().mul(h.matrix())? != *candidate.map().matrix() {
        return Ok(ProbeOutcome::Failed {
            witness: "lift does not commute with the projections".into(),
        });
    }
    let check = h.check()?;
    if let Some(v) = check.bracket_violations.first() {
        return Ok(ProbeOutcome::Failed {
            witness: format!("bracket condition fails at basis tuple {:?}", v.tuple),
        });
    }
    if !check.alpha_commutes {
        return Ok(ProbeOutcome::Failed {
            witness: "forced map does not commute with the twists".into(),
        });
    }
    let _ = n;
    Ok(ProbeOutcome::Factored {
        h,
        unique: k.is_perfect() && other.is_central(),
    })
}

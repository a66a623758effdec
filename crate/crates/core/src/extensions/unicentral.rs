use std::sync::Arc;

use super::{uce, Extension};
use crate::algebra::{AlgebraRef, HomNAlgebra, Morphism};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, PresentedSpace, SparseVec, Subspace};
use crate::limits::checked_pow;
use crate::tensor_index::tuples;

/// `[αk, αk, αk_3, …, αk_n] = 0` for all arguments, checked on basis pairs
/// through the polarization `[αa, αb, …] + [αb, αa, …] = 0`.
pub fn condition2_check(a: &HomNAlgebra) -> Result<bool> {
    let n = a.arity();
    let d = a.dim();
    let needed = checked_pow(d, n).unwrap_or(u128::MAX);
    a.limits().check("condition (2) check", needed)?;
    for t in tuples(d, n) {
        if t[0] > t[1] {
            continue;
        }
        let args: Vec<&SparseVec> = t.iter().map(|&i| a.alpha_col(i)).collect();
        let mut swapped = args.clone();
        swapped.swap(0, 1);
        if !a.bracket_sparse(&args).add(&a.bracket_sparse(&swapped)).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `α(A)` as a subalgebra, with its own center carried back to `A`.
#[derive(Clone, Debug)]
pub struct AlphaImage {
    pub algebra: AlgebraRef,
    /// `Im α ⊆ A`; the subalgebra uses its canonical basis
    pub subspace: Subspace,
    /// `dim A × dim α(A)`
    pub inclusion: Matrix,
    /// `Z(α(A))` in subalgebra coordinates
    pub center: Subspace,
    /// `Z(α(A))` as a subspace of `A`
    pub center_ambient: Subspace,
}

pub fn alpha_image(a: &HomNAlgebra) -> Result<AlphaImage> {
    let subspace = a.alpha().image_basis();
    let (sub, inclusion) = a.subalgebra(&subspace, format!("alpha_{}", a.name()))?;
    let center = sub.center();
    let center_ambient = center.image_under(&inclusion)?;
    Ok(AlphaImage {
        algebra: Arc::new(sub),
        subspace,
        inclusion,
        center,
        center_ambient,
    })
}

/// `f(Z(α_K K))` against `Z(α_L L)`. The hypotheses under which the two
/// must agree are reported, never enforced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnicentralityReport {
    pub holds: bool,
    pub lhs: Subspace,
    pub rhs: Subspace,
    pub target_perfect: bool,
    pub target_alpha_injective: bool,
    pub source_condition2: bool,
}

fn report(e: &Extension, lhs: Subspace, rhs: Subspace) -> Result<UnicentralityReport> {
    Ok(UnicentralityReport {
        holds: lhs == rhs,
        lhs,
        rhs,
        target_perfect: e.target().is_perfect(),
        target_alpha_injective: e.target().alpha_injective(),
        source_condition2: condition2_check(e.source())?,
    })
}

pub fn unicentrality_check(e: &Extension) -> Result<UnicentralityReport> {
    let lhs = e.map().image_of(&alpha_image(e.source())?.center_ambient)?;
    let rhs = alpha_image(e.target())?.center_ambient;
    report(e, lhs, rhs)
}

/// The untwisted comparison `f(Z(K))` against `Z(L)`.
pub fn unicentrality_raw(e: &Extension) -> Result<UnicentralityReport> {
    let lhs = e.map().image_of(&e.source().center())?;
    let rhs = e.target().center();
    report(e, lhs, rhs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma54Report {
    /// `K = [K, …, K] + Ker f`
    pub derived_plus_kernel: bool,
    /// `dim α⁻¹(Z(α L))`
    pub preimage_dim: usize,
    /// every `l` with `α(l) ∈ Z(α L)` puts every bracket containing it in `Ker α`
    pub brackets_in_alpha_kernel: bool,
}

pub fn lemma54_checks(e: &Extension) -> Result<Lemma54Report> {
    let k = e.source();
    let l = e.target();
    if !l.is_perfect() {
        return Err(Error::NotPerfect {
            name: l.name().to_string(),
        });
    }
    e.require_central()?;
    let derived_plus_kernel = k.derived_subspace().sum(e.kernel())?.is_full();

    let n = l.arity();
    let preimage = Subspace::preimage(l.alpha(), &alpha_image(l)?.center_ambient)?;
    let needed = checked_pow(l.dim(), n - 1).unwrap_or(u128::MAX);
    l.limits()
        .check("bracket check through the twisted preimage", needed.saturating_mul((n * preimage.dim()) as u128))?;
    let units: Vec<SparseVec> = (0..l.dim()).map(SparseVec::unit).collect();
    let mut brackets_in_alpha_kernel = true;
    'outer: for v in preimage.rows() {
        for slot in 0..n {
            for rest in tuples(l.dim(), n - 1) {
                let mut args: Vec<&SparseVec> = rest.iter().map(|&i| &units[i]).collect();
                args.insert(slot, v);
                if !l.alpha_apply(&l.bracket_sparse(&args)).is_zero() {
                    brackets_in_alpha_kernel = false;
                    break 'outer;
                }
            }
        }
    }
    Ok(Lemma54Report {
        derived_plus_kernel,
        preimage_dim: preimage.dim(),
        brackets_in_alpha_kernel,
    })
}

/// Comparison of `α_uce(uce A)/Z(α_uce(uce A))` with `α(A)/Z(α(A))`
/// through the map induced by `u_A`.
#[derive(Clone, Debug)]
pub struct Thm58Report {
    pub holds: bool,
    /// `(dim of the uce side, dim of the A side)`
    pub dims: (usize, usize),
    /// `u_A` carries `Z(α_uce(uce A))` into `Z(α(A))`
    pub well_defined: bool,
    pub bijective: bool,
    pub is_morphism: bool,
    pub induced: Option<Morphism>,
    pub perfect: bool,
    pub alpha_injective: bool,
    pub condition2: bool,
    pub condition2_uce: bool,
}

pub fn thm58_isomorphism_check(a: &AlgebraRef) -> Result<Thm58Report> {
    let u = uce(a)?;
    let side1 = alpha_image(u.algebra())?;
    let side2 = alpha_image(a)?;
    let (q1, _) = side1.algebra.quotient_algebra(&side1.center)?;
    let (q2, p2) = side2.algebra.quotient_algebra(&side2.center)?;

    // α_uce(uce A) → α(A), restricted from u_A
    let coords = |v: &SparseVec| -> Result<SparseVec> {
        side2
            .subspace
            .coordinates_sparse(v)
            .map(|c| SparseVec::from_dense(&c))
            .ok_or_else(|| Error::NotWellDefined {
                what: "u_A does not carry α_uce(uce A) into α(A)".into(),
                witness: format!("{v:?}"),
            })
    };
    let restricted: Vec<SparseVec> = (0..side1.algebra.dim())
        .map(|j| coords(&u.u_map().apply(&side1.inclusion.sparse_column(j))))
        .collect::<Result<_>>()?;
    let well_defined = side1
        .center
        .rows()
        .iter()
        .all(|z| side2.center.contains_sparse(&combine(&restricted, z)));

    let mut report = Thm58Report {
        holds: false,
        dims: (q1.dim(), q2.dim()),
        well_defined,
        bijective: false,
        is_morphism: false,
        induced: None,
        perfect: a.is_perfect(),
        alpha_injective: a.alpha_injective(),
        condition2: condition2_check(a)?,
        condition2_uce: condition2_check(u.algebra())?,
    };
    if !well_defined {
        return Ok(report);
    }
    let reps = PresentedSpace::new(side1.center.clone()).rep_indices().to_vec();
    let columns: Vec<SparseVec> = reps
        .iter()
        .map(|&r| p2.apply(&restricted[r]))
        .collect();
    let g = Morphism::new(q1.clone(), q2.clone(), Matrix::from_sparse_columns(q2.dim(), &columns))?;
    report.bijective = q1.dim() == q2.dim() && g.rank() == q2.dim();
    report.is_morphism = g.is_valid()?;
    report.holds = report.bijective && report.is_morphism;
    report.induced = Some(g);
    Ok(report)
}

fn combine(columns: &[SparseVec], v: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (i, x) in v.iter() {
        out.axpy(x, &columns[i]);
    }
    out
}

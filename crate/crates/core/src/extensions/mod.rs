//! Central and α-central extensions, the universal central extension and the
//! unicentrality checks.

mod uce;
mod unicentral;

#[cfg(test)]
mod tests;

use std::sync::Arc;

use crate::algebra::{AlgebraRef, HomNAlgebra, Morphism};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Subspace};

pub use uce::{
    centrally_closed_check, identity3_check, induced_beta, section_via_uce, uce, universality_probe,
    InducedBeta, ProbeEntry, ProbeMode, ProbeOutcome, UceResult,
};
pub use unicentral::{
    alpha_image, condition2_check, lemma54_checks, thm58_isomorphism_check, unicentrality_check,
    unicentrality_raw, AlphaImage, Lemma54Report, Thm58Report, UnicentralityReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Central,
    /// α-central but not central
    AlphaCentral,
    Neither,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Central => "central",
            Classification::AlphaCentral => "alpha-central",
            Classification::Neither => "neither",
        }
    }
}

/// A surjective morphism `π : K → L` together with `M = Ker π`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    map: Morphism,
    kernel: Subspace,
    central: bool,
    alpha_central: bool,
}

/// `[M, K, …, K] = 0` with `M` in every slot, and the same for
/// `(α(M), …, α(M), K)`.
fn classify_kernel(k: &HomNAlgebra, m: &Subspace) -> Result<(bool, bool)> {
    let n = k.arity();
    let full = Subspace::full(k.dim());
    let mut slots = vec![full.clone(); n];
    slots[0] = m.clone();
    let central = k.commutator_subspace(&slots)?.is_zero();
    if central != m.is_subset_of(&k.center()) {
        return Err(Error::NotWellDefined {
            what: "centrality by brackets disagrees with the center".into(),
            witness: format!("kernel of dimension {} in `{}`", m.dim(), k.name()),
        });
    }
    let am = m.image_under(k.alpha())?;
    let mut slots = vec![am; n];
    slots[n - 1] = full;
    let alpha_central = k.commutator_subspace(&slots)?.is_zero();
    Ok((central, alpha_central))
}

impl Extension {
    /// Requires `f` to be a valid surjective morphism.
    pub fn new(f: Morphism) -> Result<Self> {
        f.require_valid()?;
        if !f.is_surjective() {
            return Err(Error::NotSurjective {
                rank: f.rank(),
                target_dim: f.target().dim(),
            });
        }
        let kernel = f.kernel();
        let (central, alpha_central) = classify_kernel(f.source(), &kernel)?;
        Ok(Self {
            map: f,
            kernel,
            central,
            alpha_central,
        })
    }

    pub fn identity(a: AlgebraRef) -> Result<Self> {
        Self::new(Morphism::identity(a))
    }

    pub fn map(&self) -> &Morphism {
        &self.map
    }

    pub fn source(&self) -> &AlgebraRef {
        self.map.source()
    }

    pub fn target(&self) -> &AlgebraRef {
        self.map.target()
    }

    pub fn kernel(&self) -> &Subspace {
        &self.kernel
    }

    pub fn is_central(&self) -> bool {
        self.central
    }

    pub fn is_alpha_central(&self) -> bool {
        self.alpha_central
    }

    pub fn classification(&self) -> Classification {
        match (self.central, self.alpha_central) {
            (true, _) => Classification::Central,
            (false, true) => Classification::AlphaCentral,
            (false, false) => Classification::Neither,
        }
    }

    pub(crate) fn require_central(&self) -> Result<()> {
        if self.central {
            Ok(())
        } else {
            Err(Error::NotCentral)
        }
    }
}

pub fn make_extension(f: Morphism) -> Result<Extension> {
    Extension::new(f)
}

pub fn classify_extension(e: &Extension) -> Classification {
    e.classification()
}

/// `π∘ρ` for `ρ : F → K` and `π : K → L`, classified afresh.
pub fn compose_extensions(pi: &Extension, rho: &Extension) -> Result<Extension> {
    Extension::new(pi.map.compose(&rho.map)?)
}

/// `Q = A ×_L K` for `τ : A → L` and `π : K → L`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub algebra: AlgebraRef,
    /// `Q → A`
    pub to_first: Morphism,
    /// `Q → K`
    pub to_second: Morphism,
}

pub fn pullback_extension(tau: &Extension, pi: &Extension) -> Result<Pullback> {
    if **tau.target() != **pi.target() {
        return Err(Error::Precondition(format!(
            "pullback needs a common base, got `{}` and `{}`",
            tau.target().name(),
            pi.target().name()
        )));
    }
    let a = tau.source();
    let k = pi.source();
    let product = HomNAlgebra::direct_product(a, k, format!("{}x{}", a.name(), k.name()))?;
    let neg_pi = Matrix::zeros(pi.target().dim(), k.dim()).sub(pi.map.matrix())?;
    let fibre = tau.map.matrix().hstack(&neg_pi)?.kernel_basis();
    let (q, incl) = product.subalgebra(&fibre, format!("{}_{}", a.name(), k.name()))?;
    let q = Arc::new(q);
    let first = Matrix::identity(a.dim()).hstack(&Matrix::zeros(a.dim(), k.dim()))?;
    let second = Matrix::zeros(k.dim(), a.dim()).hstack(&Matrix::identity(k.dim()))?;
    Ok(Pullback {
        to_first: Morphism::new(q.clone(), a.clone(), first.mul(&incl)?)?,
        to_second: Morphism::new(q.clone(), k.clone(), second.mul(&incl)?)?,
        algebra: q,
    })
}

/// The two maps `φ(k) = (k̄, πk)` and `ψ(k) = (0, πk)` into `K_ab × L`.
#[derive(Clone, Debug)]
pub struct Lemma35Report {
    pub product: AlgebraRef,
    /// `K_ab × L → L`
    pub projection: Extension,
    pub phi: Morphism,
    pub psi: Morphism,
    /// both are morphisms lifting `π` through the projection
    pub both_lift: bool,
    pub distinct: bool,
}

pub fn lemma35_construction(e: &Extension) -> Result<Lemma35Report> {
    let k = e.source();
    let l = e.target();
    let (kab, ab) = k.quotient_algebra(&k.derived_subspace())?;
    let product = Arc::new(HomNAlgebra::direct_product(&kab, l, format!("{}_ab_x_{}", k.name(), l.name()))?);
    let pr = Matrix::zeros(l.dim(), kab.dim()).hstack(&Matrix::identity(l.dim()))?;
    let projection = Extension::new(Morphism::new(product.clone(), l.clone(), pr)?)?;
    let phi = Morphism::new(k.clone(), product.clone(), ab.matrix().vstack(e.map.matrix())?)?;
    let psi = Morphism::new(
        k.clone(),
        product.clone(),
        Matrix::zeros(kab.dim(), k.dim()).vstack(e.map.matrix())?,
    )?;
    let lifts = |f: &Morphism| -> Result<bool> {
        Ok(f.is_valid()? && projection.map.compose(f)?.matrix() == e.map.matrix())
    };
    let both_lift = lifts(&phi)? && lifts(&psi)?;
    let distinct = phi.matrix() != psi.matrix();
    Ok(Lemma35Report {
        product,
        projection,
        phi,
        psi,
        both_lift,
        distinct,
    })
}

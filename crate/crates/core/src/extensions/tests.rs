use std::sync::Arc;

use super::*;
use crate::algebra::HomNAlgebra;
use crate::catalog::{self, algebra, extension};
use crate::exactla::SparseVec;
use crate::homology::{delta2, hl1};

fn perfect_algebras() -> Vec<AlgebraRef> {
    catalog::algebra_names()
        .iter()
        .map(|n| algebra(n).unwrap())
        .filter(|a| a.is_perfect())
        .collect()
}

fn central_extensions() -> Vec<Extension> {
    catalog::map_names()
        .iter()
        .map(|n| extension(n).unwrap())
        .filter(Extension::is_central)
        .collect()
}

#[test]
fn classification_of_catalog_maps() {
    let expect = [
        ("rem32.pi", Classification::AlphaCentral),
        ("ex37.pi", Classification::Central),
        ("ex37.rho", Classification::Central),
        ("ex37.pi_rho", Classification::AlphaCentral),
        ("ex52.f", Classification::Central),
        ("sec5.f", Classification::Central),
        ("lem35.pi", Classification::Central),
    ];
    for (name, c) in expect {
        let e = extension(name).unwrap();
        assert_eq!(e.classification(), c, "{name}");
        if e.is_central() {
            assert!(e.is_alpha_central(), "{name}");
        }
    }
}

#[test]
fn composite_of_central_extensions_over_perfect_middle_is_alpha_central() {
    let pi = extension("ex37.pi").unwrap();
    let rho = extension("ex37.rho").unwrap();
    assert!(pi.source().is_perfect());
    let c = compose_extensions(&pi, &rho).unwrap();
    assert!(c.is_alpha_central());
    assert!(!c.is_central());
    assert_eq!(c.map().matrix(), catalog::morphism("ex37.pi_rho").unwrap().matrix());
}

#[test]
fn non_surjective_maps_are_not_extensions() {
    let l = algebra("ex37.L").unwrap();
    let zero = Morphism::new(l.clone(), l, Matrix::zeros(2, 2)).unwrap();
    assert!(matches!(Extension::new(zero), Err(Error::NotSurjective { .. })));
}

#[test]
fn uce_dimensions_and_kernel() {
    for a in perfect_algebras() {
        let u = uce(&a).unwrap();
        let d = a.dim().pow(a.arity() as u32);
        let rank = delta2(&a).unwrap().matrix().rank();
        assert_eq!(u.algebra().dim(), d - rank, "{}", a.name());
        assert_eq!(u.kernel().dim(), hl1(&a).unwrap().dim(), "{}", a.name());
        assert!(u.kernel().is_subset_of(&u.algebra().center()), "{}", a.name());
        assert!(u.algebra().is_perfect(), "{}", a.name());
        assert!(identity3_check(&u).unwrap(), "{}", a.name());
        let e = u.extension().unwrap();
        assert!(e.is_central(), "{}", a.name());
    }
}

#[test]
fn uce_with_zero_twist_is_the_full_tensor_power() {
    // α = 0 kills every term of δ₂
    let u = uce(&algebra("ex37.L").unwrap()).unwrap();
    assert_eq!(u.algebra().dim(), 8);
    assert_eq!(u.kernel().dim(), 6);
    assert_eq!(u.algebra().labels()[0], "b1.b1.b1");
}

#[test]
fn uce_bracket_is_bracket_of_images() {
    let a = algebra("sec5.L").unwrap();
    let u = uce(&a).unwrap();
    let ua = u.algebra();
    for t in crate::tensor_index::tuples(ua.dim(), 3) {
        let images: Vec<SparseVec> = t.iter().map(|&i| u.u_map().column(i).clone()).collect();
        let refs: Vec<&SparseVec> = images.iter().collect();
        let expected = u.class_of(&crate::tensor_index::kron_uniform(&refs, a.dim()));
        let units: Vec<SparseVec> = t.iter().map(|&i| SparseVec::unit(i)).collect();
        assert_eq!(ua.bracket_sparse(&units.iter().collect::<Vec<_>>()), expected);
    }
}

#[test]
fn induced_beta_for_every_central_extension() {
    for e in central_extensions() {
        if !e.target().is_perfect() {
            continue;
        }
        let u = uce(e.target()).unwrap();
        let b = induced_beta(&u, &e).unwrap();
        let name = e.source().name().to_string();
        assert!(b.lifts_u, "{name}");
        assert!(b.preimage_independent, "{name}");
        assert!(b.unique, "{name}");
    }
}

#[test]
fn induced_beta_rejects_non_central_and_mismatched() {
    let u = uce(&algebra("ex37.L").unwrap()).unwrap();
    let pr = extension("ex37.pi_rho").unwrap();
    assert_eq!(induced_beta(&u, &pr).unwrap_err(), Error::NotCentral);
    let other = extension("ex52.f").unwrap();
    assert!(matches!(induced_beta(&u, &other), Err(Error::Precondition(_))));
}

#[test]
fn uce_is_universal_among_catalog_central_extensions() {
    for a in perfect_algebras() {
        let u = uce(&a).unwrap();
        let candidate = u.extension().unwrap();
        let mut others: Vec<Extension> = central_extensions()
            .into_iter()
            .filter(|e| **e.target() == *a)
            .collect();
        others.push(Extension::identity(a.clone()).unwrap());
        for entry in universality_probe(&candidate, &others, ProbeMode::Central).unwrap() {
            match entry.outcome {
                ProbeOutcome::Factored { unique, h } => {
                    assert!(unique, "{}", entry.target);
                    assert!(h.is_valid().unwrap());
                }
                other => panic!("{}: {other:?}", entry.target),
            }
        }
    }
    let c = uce(&algebra("sec5.L").unwrap()).unwrap().extension().unwrap();
    assert!(universality_probe(&c, &[], ProbeMode::Central).unwrap().is_empty());
}

#[test]
fn probe_skips_mismatched_modes() {
    let l = algebra("rem32.L").unwrap();
    let candidate = uce(&l).unwrap().extension().unwrap();
    let alpha_only = extension("rem32.pi").unwrap();
    let report = universality_probe(&candidate, std::slice::from_ref(&alpha_only), ProbeMode::Central).unwrap();
    assert!(matches!(report[0].outcome, ProbeOutcome::Skipped { .. }));
    let report = universality_probe(&candidate, &[alpha_only], ProbeMode::AlphaCentral).unwrap();
    assert!(!matches!(report[0].outcome, ProbeOutcome::Skipped { .. }));
}

#[test]
fn probe_from_a_non_universal_extension() {
    // ex37.pi is central but ex37.K is not the uce of ex37.L, so it cannot
    // map onto the uce compatibly.
    let pi = extension("ex37.pi").unwrap();
    let target = uce(pi.target()).unwrap().extension().unwrap();
    let report = universality_probe(&pi, &[target], ProbeMode::Central).unwrap();
    assert!(matches!(report[0].outcome, ProbeOutcome::Failed { .. }), "{:?}", report[0].outcome);
}

#[test]
fn sections() {
    let sl2 = algebra("sl2").unwrap();
    let id = Extension::identity(sl2.clone()).unwrap();
    let s = section_via_uce(&id).unwrap().unwrap();
    assert!(s.matrix().is_identity());

    let rho = extension("ex37.rho").unwrap();
    assert_eq!(hl1(rho.target()).unwrap().dim(), 24);
    assert!(section_via_uce(&rho).unwrap().is_none());

    let lem = extension("lem35.pi").unwrap();
    assert!(section_via_uce(&lem).unwrap().is_none());

    let pr = extension("ex37.pi_rho").unwrap();
    assert_eq!(section_via_uce(&pr).unwrap_err(), Error::NotCentral);
}

#[test]
fn centrally_closed() {
    assert!(!centrally_closed_check(&algebra("ex37.K").unwrap()).unwrap());
    assert!(!centrally_closed_check(&algebra("ex52.L").unwrap()).unwrap());
    assert!(centrally_closed_check(&algebra("sl2").unwrap()).unwrap());
    let zero = Arc::new(HomNAlgebra::zero("Z", 3));
    assert!(centrally_closed_check(&zero).unwrap());
    assert!(matches!(
        centrally_closed_check(&algebra("abelian3").unwrap()),
        Err(Error::NotPerfect { .. })
    ));
}

#[test]
fn condition2_cases() {
    assert!(condition2_check(&algebra("sec5.K").unwrap()).unwrap());
    assert!(condition2_check(&algebra("ex37.K").unwrap()).unwrap());
    assert!(!condition2_check(&algebra("leib3").unwrap()).unwrap());
    assert!(condition2_check(&algebra("sl2.twisted").unwrap()).unwrap());
}

#[test]
fn alpha_images() {
    let sl2 = algebra("sl2").unwrap();
    let im = alpha_image(&sl2).unwrap();
    assert_eq!(im.algebra.dim(), 3);
    assert_eq!(im.algebra.table(), sl2.table());

    let k = algebra("ex37.K").unwrap();
    let im = alpha_image(&k).unwrap();
    assert_eq!(im.algebra.dim(), 0);
    assert!(im.center_ambient.is_zero());

    let l = algebra("sec5.L").unwrap();
    let im = alpha_image(&l).unwrap();
    assert_eq!(im.algebra.dim(), 4);
    assert!(im.center.is_zero());
}

#[test]
fn unicentrality_cases() {
    let f = extension("sec5.f").unwrap();
    let r = unicentrality_check(&f).unwrap();
    assert!(r.holds && r.lhs.is_zero() && r.rhs.is_zero());
    assert!(r.target_perfect && r.target_alpha_injective && r.source_condition2);

    let g = extension("ex52.f").unwrap();
    let raw = unicentrality_raw(&g).unwrap();
    assert!(!raw.holds);
    assert!(raw.lhs.is_zero());
    assert_eq!(raw.rhs.dim(), 1);
    assert!(raw.rhs.contains_sparse(&SparseVec::unit(2)));
    // α = 0: both twisted centers live in zero algebras
    assert!(unicentrality_check(&g).unwrap().holds);

    let id = Extension::identity(algebra("ex52.L").unwrap()).unwrap();
    assert!(unicentrality_check(&id).unwrap().holds);
}

#[test]
fn lemma54_cases() {
    for name in ["ex52.f", "sec5.f", "ex37.pi"] {
        let r = lemma54_checks(&extension(name).unwrap()).unwrap();
        assert!(r.derived_plus_kernel, "{name}");
        assert!(r.brackets_in_alpha_kernel, "{name}");
    }
    let id = Extension::identity(algebra("sl2").unwrap()).unwrap();
    assert!(lemma54_checks(&id).unwrap().derived_plus_kernel);
    assert_eq!(lemma54_checks(&extension("ex37.pi_rho").unwrap()).unwrap_err(), Error::NotCentral);
}

#[test]
fn thm58_cases() {
    let r = thm58_isomorphism_check(&algebra("sec5.L").unwrap()).unwrap();
    assert!(r.perfect && r.alpha_injective && r.condition2);
    assert!(r.holds, "{r:?}");
    let r = thm58_isomorphism_check(&algebra("sl2").unwrap()).unwrap();
    assert!(r.holds);
    assert_eq!(r.dims, (3, 3));
    let r = thm58_isomorphism_check(&algebra("ex37.K").unwrap()).unwrap();
    assert!(!r.alpha_injective);
}

#[test]
fn pullback_of_extensions() {
    let pi = extension("ex37.pi").unwrap();
    let p = pullback_extension(&pi, &pi).unwrap();
    assert_eq!(p.algebra.dim(), 4);
    assert!(p.to_first.is_valid().unwrap() && p.to_second.is_valid().unwrap());
    let left = pi.map().compose(&p.to_first).unwrap();
    let right = pi.map().compose(&p.to_second).unwrap();
    assert_eq!(left.matrix(), right.matrix());
    assert!(matches!(
        pullback_extension(&pi, &extension("ex52.f").unwrap()),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn lemma35_gives_two_lifts() {
    let e = extension("lem35.pi").unwrap();
    let r = lemma35_construction(&e).unwrap();
    assert!(r.both_lift);
    assert!(r.distinct);
    assert!(r.projection.is_central());
}

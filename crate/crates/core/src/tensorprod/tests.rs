use itertools::Itertools;
use proptest::prelude::*;

use super::*;
use crate::catalog::algebra;
use crate::extensions::uce;
use crate::exactla::Scalar;

fn span(d: usize, idx: &[usize]) -> Subspace {
    Subspace::span_sparse(d, idx.iter().map(|&i| SparseVec::unit(i)))
}

fn kron_all(f: &[SparseVec], d: usize) -> SparseVec {
    kron_uniform(&f.iter().collect::<Vec<_>>(), d)
}

/// Free space and relations enumerated straight from the definition:
/// every σ ∈ S_n, every τ ∈ S_{2n−1}, entries `m_i` drawn from `M_i` for
/// `i ≤ n` and from `L` beyond, brackets evaluated directly.
fn literal(a: &HomNAlgebra, ideals: &[Subspace]) -> (Subspace, Subspace) {
    let n = a.arity();
    let d = a.dim();
    let full = Subspace::full(d);
    let source = |i: usize| if i < n { &ideals[i] } else { &full };
    let alpha = |v: &SparseVec| a.alpha_apply(v);
    let br = |args: &[SparseVec]| a.bracket_sparse(&args.iter().collect::<Vec<_>>());

    let mut free = Vec::new();
    for m in (0..n).map(|i| source(i).rows().to_vec()).multi_cartesian_product() {
        for s in (0..n).permutations(n) {
            free.push(kron_all(&s.iter().map(|&i| m[i].clone()).collect::<Vec<_>>(), d));
        }
    }

    let mut rel = Vec::new();
    let entries: Vec<Vec<SparseVec>> = (0..2 * n - 1)
        .map(|i| source(i).rows().to_vec())
        .multi_cartesian_product()
        .collect();
    for m in &entries {
        for t in (0..2 * n - 1).permutations(2 * n - 1) {
            let e: Vec<SparseVec> = t.iter().map(|&i| m[i].clone()).collect();
            let mut first = vec![br(&e[..n])];
            first.extend(e[n..].iter().map(alpha));
            let mut g = kron_all(&first, d);
            for i in 0..n {
                let mut inner = vec![e[i].clone()];
                inner.extend(e[n..].iter().cloned());
                let f: Vec<SparseVec> = (0..n).map(|j| if j == i { br(&inner) } else { alpha(&e[j]) }).collect();
                g = g.sub(&kron_all(&f, d));
            }
            rel.push(g);
        }
        for s in (0..n).permutations(n) {
            let eps = if (0..n).tuple_combinations().filter(|&(i, j)| s[i] > s[j]).count() % 2 == 0 {
                1
            } else {
                -1
            };
            let permuted: Vec<SparseVec> = s.iter().map(|&i| m[i].clone()).collect();
            let mut lhs = vec![br(&permuted)];
            lhs.extend(m[n..].iter().map(alpha));
            let mut rhs = vec![br(&m[..n])];
            rhs.extend(m[n..].iter().map(alpha));
            let g = kron_all(&lhs, d).sub(&kron_all(&rhs, d).scaled(&crate::exactla::int(eps)));
            rel.push(g);
        }
    }
    let dn = d.pow(n as u32);
    (Subspace::span_sparse(dn, free), Subspace::span_sparse(dn, rel))
}

#[test]
fn presentation_matches_the_literal_definition() {
    let cases: Vec<(&str, Option<(Vec<usize>, usize)>)> = vec![
        ("sl2", None),
        ("sl2.twisted", None),
        ("ex37.L", None),
        ("leib3", None),
        ("abelian3", None),
        ("ex52.L", Some((vec![1, 2], 0))),
        ("ex52.L", Some((vec![1, 2], 2))),
        ("ex52.L", Some((vec![2], 1))),
    ];
    for (name, ideal) in cases {
        let a = algebra(name).unwrap();
        let n = a.arity();
        let mut ideals = vec![Subspace::full(a.dim()); n];
        if let Some((idx, slot)) = &ideal {
            ideals[*slot] = span(a.dim(), idx);
        }
        let t = tensor_product(&a, &ideals).unwrap();
        let (free, rel) = literal(&a, &ideals);
        assert_eq!(t.free(), &free, "{name} {ideal:?}");
        assert_eq!(t.relations(), &rel, "{name} {ideal:?}");
    }
}

#[test]
fn abelian_tensor_is_free() {
    let a = algebra("abelian3").unwrap();
    let t = tensor_square(&a).unwrap();
    assert_eq!(t.dim(), 8);
    assert!(t.relations().is_zero());
    assert!(psi_map(&t).unwrap().matrix().is_zero());
}

#[test]
fn zero_twist_leaves_no_relations() {
    let t = tensor_square(&algebra("ex37.L").unwrap()).unwrap();
    assert!(t.relations().is_zero());
    assert_eq!(t.dim(), 8);
}

#[test]
fn zero_ideal_gives_zero_space() {
    let a = algebra("ex52.L").unwrap();
    let t = tensor_with_ideal(&a, &Subspace::zero(3), 1).unwrap();
    assert_eq!(t.dim(), 0);
    assert_eq!(t.free_dim(), 0);
}

#[test]
fn configuration_errors() {
    let a = algebra("ex52.L").unwrap();
    let m = span(3, &[1, 2]);
    let two = vec![m.clone(), m, Subspace::full(3)];
    assert!(matches!(tensor_product(&a, &two), Err(Error::Unsupported(_))));
    assert!(matches!(
        tensor_with_ideal(&a, &span(3, &[0]), 0),
        Err(Error::NotIdeal { .. })
    ));
    assert!(tensor_product(&a, &[Subspace::full(3)]).is_err());
}

#[test]
fn regression_dimensions() {
    // dimension of L ∗ … ∗ L, of DL, and of Ker ψ
    let golden = [
        ("rem32.L", 8, 0, 6),
        ("ex37.L", 8, 0, 6),
        ("ex37.K", 27, 0, 24),
        ("ex52.L", 27, 0, 24),
        ("sec5.L", 4, 60, 0),
        ("sec5.K", 4, 60, 0),
        ("lem35.K", 21, 6, 19),
        ("leib3", 2, 6, 1),
        ("sl2", 3, 6, 0),
        ("sl2.twisted", 3, 6, 0),
    ];
    for (name, dim, rel, ker) in golden {
        let t = tensor_square(&algebra(name).unwrap()).unwrap();
        assert_eq!((t.dim(), t.relations().dim(), psi_map(&t).unwrap().kernel().dim()), (dim, rel, ker), "{name}");
    }
}

#[test]
fn twist_and_bracket_respect_relations() {
    for name in ["sec5.L", "sl2.twisted", "leib3", "lem35.K"] {
        let a = algebra(name).unwrap();
        let t = tensor_square(&a).unwrap();
        let n = a.arity();
        let d = a.dim();
        for g in t.relations().rows() {
            let mut moved = SparseVec::new();
            for (idx, x) in g.iter() {
                moved.axpy(x, &a.alpha_tensor(&decode(d, n, idx)));
            }
            assert!(t.relations().contains_sparse(&moved), "{name}");
            // a relation in the first slot of the bracket
            let d1 = delta1(&a).unwrap();
            let v = d1.matrix().apply(g);
            for rest in tuples(t.dim(), n - 1) {
                let mut f = vec![v.clone()];
                f.extend(rest.iter().map(|&j| d1.matrix().apply(t.representative(j))));
                assert!(t.relations().contains_sparse(&kron_all(&f, d)), "{name}");
            }
        }
    }
}

#[test]
fn psi_is_a_central_extension_for_perfect_algebras() {
    for name in crate::catalog::algebra_names() {
        let a = algebra(name).unwrap();
        let t = tensor_square(&a).unwrap();
        let psi = psi_map(&t).unwrap();
        assert!(psi.is_valid().unwrap(), "{name}");
        if a.is_perfect() {
            let e = psi_extension(&t).unwrap();
            assert!(e.is_central(), "{name}");
            assert!(t.algebra().is_perfect(), "{name}");
            assert!(psi.kernel().is_subset_of(&t.algebra().center()), "{name}");
        } else {
            let e = psi_extension(&t).unwrap();
            assert_eq!(e.target().dim(), a.derived_subspace().dim(), "{name}");
        }
    }
}

#[test]
fn psi_on_one_ideal_lands_in_it() {
    let a = algebra("ex52.L").unwrap();
    let m = span(3, &[1, 2]);
    for slot in 0..3 {
        let t = tensor_with_ideal(&a, &m, slot).unwrap();
        let psi = psi_map(&t).unwrap();
        assert_eq!(psi.target().dim(), 2);
        assert!(psi.is_valid().unwrap());
        assert_eq!(t.dim(), 26);
    }
}

#[test]
fn phi_verdicts() {
    // injectivity is recorded, not assumed
    for name in ["rem32.L", "ex37.L", "ex37.K", "ex52.L", "sec5.L", "sl2", "sl2.twisted"] {
        let a = algebra(name).unwrap();
        let t = tensor_square(&a).unwrap();
        let r = phi_to_uce(&t, &uce(&a).unwrap()).unwrap();
        assert!(r.well_defined && r.surjective, "{name}");
        assert!(r.injective, "{name}");
        let phi = r.map.unwrap();
        let u = uce(&a).unwrap();
        let psi = psi_map(&t).unwrap();
        assert_eq!(u.u_map().compose(&phi).unwrap().matrix(), psi.matrix());
    }
    let a = algebra("abelian3").unwrap();
    let t = tensor_square(&a).unwrap();
    assert!(matches!(phi_to_uce(&t, &uce(&a).unwrap()), Err(Error::NotPerfect { .. })));
}

#[test]
fn exact_sequence_cases() {
    let a = algebra("ex52.L").unwrap();
    let r = prop46_sequence(&a, &span(3, &[1, 2])).unwrap();
    assert!(r.exact(), "{r:?}");
    assert!(r.kernels_match_homology());
    assert_eq!(r.dims, [76, 24, 0, 0]);

    let r = prop46_sequence(&a, &Subspace::zero(3)).unwrap();
    assert!(r.exact());
    assert_eq!(r.dims, [0, 24, 24, 0]);

    let r = prop46_sequence(&a, &Subspace::full(3)).unwrap();
    assert!(r.exact());
    assert_eq!(r.dims[3], 0);
    assert_eq!(r.dims, [78, 24, 0, 0]);

    // a central ideal: the last term is M itself and the connecting map is hit
    let r = prop46_sequence(&a, &span(3, &[2])).unwrap();
    assert!(r.exact(), "{r:?}");
    assert!(r.kernels_match_homology(), "{r:?}");
    assert_eq!(r.dims[3], 1);

    let r = prop46_sequence(&algebra("sec5.L").unwrap(), &Subspace::full(4)).unwrap();
    assert!(r.exact());

    assert!(matches!(
        prop46_sequence(&algebra("abelian3").unwrap(), &Subspace::zero(2)),
        Err(Error::NotPerfect { .. })
    ));
}

fn random_perfect_free(d: usize, coeffs: Vec<i64>) -> Option<AlgebraRef> {
    // binary algebras with α = 0 satisfy the identity vacuously
    let mut entries = Vec::new();
    let mut k = 0;
    for t in tuples(d, 2) {
        let v = SparseVec::from_pairs((0..d).map(|i| (i, Scalar::from_integer(coeffs[k + i].into()))));
        k += d;
        if !v.is_zero() {
            entries.push((t, v));
        }
    }
    let a = HomNAlgebra::new("R", 2, crate::algebra::numbered_labels("r", d), entries, Matrix::zeros(d, d), BuildOptions::default()).ok()?;
    Some(Arc::new(a))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_zero_twist_sequences_are_exact(coeffs in proptest::collection::vec(-1i64..=1, 27)) {
        let a = random_perfect_free(3, coeffs).unwrap();
        prop_assume!(a.is_perfect());
        let r = prop46_sequence(&a, &Subspace::zero(3)).unwrap();
        prop_assert!(r.exact());
        prop_assert!(r.kernels_match_homology());
        let t = tensor_square(&a).unwrap();
        let rep = phi_to_uce(&t, &uce(&a).unwrap()).unwrap();
        prop_assert!(rep.well_defined && rep.surjective);
    }
}

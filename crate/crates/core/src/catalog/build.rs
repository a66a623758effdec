//! Constructors for the embedded algebras and maps.

use std::sync::Arc;

use crate::algebra::{labels_of, AlgebraRef, BuildOptions, HomNAlgebra, Morphism};
use crate::error::Result;
use crate::exactla::{int, ratio, Matrix, Scalar, SparseVec};

type Entry<'a> = (&'a [usize], &'a [(usize, i64)]);

fn sv(pairs: &[(usize, i64)]) -> SparseVec {
    SparseVec::from_pairs(pairs.iter().map(|&(i, x)| (i, int(x))))
}

fn table(
    name: &str,
    n: usize,
    labels: &[&str],
    entries: &[Entry<'_>],
    alpha: Matrix,
    generate_skew: bool,
) -> Result<HomNAlgebra> {
    let a = HomNAlgebra::new(
        name,
        n,
        labels_of(labels),
        entries.iter().map(|(t, v)| (t.to_vec(), sv(v))).collect(),
        alpha,
        BuildOptions {
            generate_skew,
            ..BuildOptions::default()
        },
    )?;
    a.require_valid()?;
    Ok(a)
}

fn diag(xs: &[Scalar]) -> Matrix {
    Matrix::diagonal(xs)
}

/// Images of the source basis as integer columns.
fn map(source: &AlgebraRef, target: &AlgebraRef, images: &[&[(usize, i64)]]) -> Result<Morphism> {
    let cols: Vec<SparseVec> = images.iter().map(|c| sv(c)).collect();
    let f = Morphism::new(
        source.clone(),
        target.clone(),
        Matrix::from_sparse_columns(target.dim(), &cols),
    )?;
    f.require_valid()?;
    Ok(f)
}

pub(super) fn rem32_l() -> Result<HomNAlgebra> {
    table("L", 3, &["a1", "a2"], &[(&[0, 0, 0], &[(0, 1)]), (&[1, 1, 1], &[(1, 1)])], Matrix::zeros(2, 2), false)
}

pub(super) fn rem32_k() -> Result<HomNAlgebra> {
    table(
        "K",
        3,
        &["b1", "b2", "b3"],
        &[(&[0, 0, 0], &[(0, 1)]), (&[1, 1, 1], &[(1, 1)]), (&[2, 2, 2], &[(2, 1)])],
        Matrix::zeros(3, 3),
        false,
    )
}

pub(super) fn rem32_pi() -> Result<Morphism> {
    map(&Arc::new(rem32_k()?), &Arc::new(rem32_l()?), &[&[], &[(0, 1)], &[(1, 1)]])
}

pub(super) fn ex37_l() -> Result<HomNAlgebra> {
    table("L", 3, &["b1", "b2"], &[(&[1, 0, 0], &[(1, 1)]), (&[1, 1, 1], &[(0, 1)])], Matrix::zeros(2, 2), false)
}

pub(super) fn ex37_k() -> Result<HomNAlgebra> {
    table(
        "K",
        3,
        &["a1", "a2", "a3"],
        &[(&[1, 1, 1], &[(0, 1)]), (&[2, 1, 1], &[(2, 1)]), (&[2, 2, 2], &[(1, 1)])],
        Matrix::zeros(3, 3),
        false,
    )
}

pub(super) fn ex37_f() -> Result<HomNAlgebra> {
    table(
        "F",
        3,
        &["e1", "e2", "e3", "e4"],
        &[
            (&[2, 1, 1], &[(0, 1)]),
            (&[2, 2, 2], &[(1, 1)]),
            (&[3, 2, 2], &[(3, 1)]),
            (&[3, 3, 3], &[(2, 1)]),
        ],
        Matrix::zeros(4, 4),
        false,
    )
}

pub(super) fn ex37_pi() -> Result<Morphism> {
    map(&Arc::new(ex37_k()?), &Arc::new(ex37_l()?), &[&[], &[(0, 1)], &[(1, 1)]])
}

pub(super) fn ex37_rho() -> Result<Morphism> {
    map(&Arc::new(ex37_f()?), &Arc::new(ex37_k()?), &[&[], &[(0, 1)], &[(1, 1)], &[(2, 1)]])
}

pub(super) fn ex37_pi_rho() -> Result<Morphism> {
    ex37_pi()?.compose(&ex37_rho()?)
}

pub(super) fn ex52_l() -> Result<HomNAlgebra> {
    table(
        "L",
        3,
        &["e1", "e2", "e3"],
        &[(&[0, 0, 0], &[(0, 1)]), (&[0, 0, 1], &[(1, 1)]), (&[0, 1, 0], &[(2, 1)])],
        Matrix::zeros(3, 3),
        false,
    )
}

pub(super) fn ex52_k() -> Result<HomNAlgebra> {
    table(
        "K",
        3,
        &["a1", "a2", "a3", "a4"],
        &[
            (&[2, 2, 2], &[(2, 1)]),
            (&[2, 2, 0], &[(0, 1)]),
            (&[2, 0, 2], &[(1, 1)]),
            (&[2, 2, 1], &[(3, 1)]),
        ],
        Matrix::zeros(4, 4),
        false,
    )
}

pub(super) fn ex52_f() -> Result<Morphism> {
    map(&Arc::new(ex52_k()?), &Arc::new(ex52_l()?), &[&[(1, 1)], &[(2, 1)], &[(0, 1)], &[]])
}

/// The simple Lie 3-algebra on four generators, α = id.
pub(super) fn lie3(name: &str, labels: &[&str]) -> Result<HomNAlgebra> {
    table(
        name,
        3,
        labels,
        &[
            (&[1, 2, 3], &[(0, 1)]),
            (&[0, 2, 3], &[(1, 1)]),
            (&[0, 1, 3], &[(2, 1)]),
            (&[0, 1, 2], &[(3, 1)]),
        ],
        Matrix::identity(4),
        true,
    )
}

pub(super) fn sec5_l() -> Result<HomNAlgebra> {
    let g = diag(&[int(1), int(-1), int(1), int(-1)]);
    lie3("L", &["e1", "e2", "e3", "e4"])?.yau_twist(&g, "L")
}

pub(super) fn sec5_k() -> Result<HomNAlgebra> {
    let g = diag(&[int(-1), int(1), int(-1), int(1)]);
    lie3("K", &["a1", "a2", "a3", "a4"])?.yau_twist(&g, "K")
}

pub(super) fn sec5_f() -> Result<Morphism> {
    map(
        &Arc::new(sec5_k()?),
        &Arc::new(sec5_l()?),
        &[&[(1, 1)], &[(0, 1)], &[(3, 1)], &[(2, -1)]],
    )
}

/// `rem32.L × ⟨c⟩` with `c` central and `α(c) = c`: a non-perfect algebra
/// over a perfect one, as in the argument that universal extensions have
/// perfect middle term.
pub(super) fn lem35_k() -> Result<HomNAlgebra> {
    let line = HomNAlgebra::abelian("C", 3, labels_of(&["c"]), Matrix::identity(1))?;
    let k = HomNAlgebra::direct_product(&rem32_l()?, &line, "K")?;
    k.require_valid()?;
    Ok(k)
}

pub(super) fn lem35_pi() -> Result<Morphism> {
    map(&Arc::new(lem35_k()?), &Arc::new(rem32_l()?), &[&[(0, 1)], &[(1, 1)], &[]])
}

/// Ternary abelian algebra of dimension 2 with α swapping the basis.
pub(super) fn abelian3() -> Result<HomNAlgebra> {
    let swap = Matrix::from_fn(2, 2, |i, j| if i != j { int(1) } else { int(0) });
    HomNAlgebra::abelian("A", 3, labels_of(&["x", "y"]), swap)
}

/// Leibniz 3-algebra `[x, y, z] = [x, [y, z]]` from the binary
/// `[a, b] = b = −[b, a]`; α = id, not skew.
pub(super) fn leib3() -> Result<HomNAlgebra> {
    table("N", 3, &["a", "b"], &[(&[0, 0, 1], &[(1, 1)]), (&[0, 1, 0], &[(1, -1)])], Matrix::identity(2), false)
}

pub(super) fn sl2() -> Result<HomNAlgebra> {
    table(
        "S",
        2,
        &["h", "e", "f"],
        &[(&[0, 1], &[(1, 2)]), (&[0, 2], &[(2, -2)]), (&[1, 2], &[(0, 1)])],
        Matrix::identity(3),
        true,
    )
}

/// `sl2` twisted by the automorphism `h ↦ h, e ↦ 2e, f ↦ f/2`.
pub(super) fn sl2_twisted() -> Result<HomNAlgebra> {
    sl2()?.yau_twist(&diag(&[int(1), int(2), ratio(1, 2)]), "S")
}

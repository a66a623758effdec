use std::fmt;

use num_traits::{One, Zero};

use super::scalar::{format_scalar, Scalar, Vector};
use super::sparse::SparseVec;
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Scalar::one() } else { Scalar::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(cols: usize, rows: &[Vector]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::mismatch("matrix row", cols, r.len()));
            }
            data.extend(r.iter().cloned());
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Self> {
        for c in columns {
            if c.len() != rows {
                return Err(Error::mismatch("matrix column", rows, c.len()));
            }
        }
        Ok(Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone()))
    }

    pub fn from_sparse_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, x) in c.iter() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { Scalar::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn sparse_column(&self, j: usize) -> SparseVec {
        SparseVec::from_pairs(
            (0..self.rows)
                .filter(|&i| !self.get(i, j).is_zero())
                .map(|i| (i, self.get(i, j).clone())),
        )
    }

    pub fn sparse_rows(&self) -> Vec<SparseVec> {
        (0..self.rows).map(|i| SparseVec::from_dense(self.row(i))).collect()
    }

    pub fn sparse_columns(&self) -> Vec<SparseVec> {
        (0..self.cols).map(|j| self.sparse_column(j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::mismatch("matrix product", self.cols, other.rows));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::mismatch("matrix-vector product", self.cols, v.len()));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut s = Scalar::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        s += a * x;
                    }
                }
                s
            })
            .collect())
    }

    /// Product with a sparse vector; indices must be below `cols`.
    pub fn mul_sparse(&self, v: &SparseVec) -> SparseVec {
        let mut acc = super::sparse::Accumulator::new();
        for (j, x) in v.iter() {
            for i in 0..self.rows {
                let a = self.get(i, j);
                if !a.is_zero() {
                    acc.add(i, &(a * x));
                }
            }
        }
        acc.finish()
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::mismatch("matrix difference", self.rows * self.cols, other.rows * other.cols));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::mismatch("hstack", self.rows, other.rows));
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    /// `[self ; other]`
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::mismatch("vstack", self.cols, other.cols));
        }
        Ok(Self::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                other.get(i - self.rows, j).clone()
            }
        }))
    }

    /// Block diagonal `diag(self, other)`.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        Self::from_fn(self.rows + other.rows, self.cols + other.cols, |i, j| {
            match (i < self.rows, j < self.cols) {
                (true, true) => self.get(i, j).clone(),
                (false, false) => other.get(i - self.rows, j - self.cols).clone(),
                _ => Scalar::zero(),
            }
        })
    }

    /// Kronecker product `self ⊗ other`, indexed lexicographically.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            let a = self.get(i / other.rows, j / other.cols);
            if a.is_zero() {
                return Scalar::zero();
            }
            a * other.get(i % other.rows, j % other.cols)
        })
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.cols);
        for r in self.sparse_rows() {
            e.insert(r);
        }
        e.rank()
    }

    pub fn kernel_basis(&self) -> Subspace {
        kernel_basis(self)
    }

    pub fn image_basis(&self) -> Subspace {
        image_basis(self)
    }

    /// Some `x` with `self · x = b`, chosen with every free variable zero;
    /// `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vector>> {
        if b.len() != self.rows {
            return Err(Error::mismatch("linear system right-hand side", self.rows, b.len()));
        }
        // Row-reduce the augmented system [A | b].
        let mut e = Echelon::new(self.cols + 1);
        for (i, bi) in b.iter().enumerate() {
            let mut row = SparseVec::from_dense(self.row(i));
            if !bi.is_zero() {
                row = row.add(&SparseVec::from_pairs([(self.cols, bi.clone())]));
            }
            e.insert(row);
        }
        let reduced = e.into_subspace();
        let mut x = vec![Scalar::zero(); self.cols];
        for (row, &p) in reduced.rows().iter().zip(reduced.pivots()) {
            if p == self.cols {
                return Ok(None);
            }
            if let Some(v) = row.get(self.cols) {
                x[p] = v.clone();
            }
        }
        Ok(Some(x))
    }
}

impl Matrix {
    /// Two-sided inverse by Gauss-Jordan on `[A | I]`; `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut e = Echelon::new(2 * n);
        for i in 0..n {
            let mut row = SparseVec::from_dense(self.row(i));
            row = row.add(&SparseVec::unit(n + i));
            e.insert(row);
        }
        let reduced = e.into_subspace();
        if reduced.pivots().iter().take(n).enumerate().any(|(k, &p)| p != k) || reduced.dim() < n {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for (k, row) in reduced.rows().iter().take(n).enumerate() {
            for (j, x) in row.iter() {
                if j >= n {
                    inv.set(k, j - n, x.clone());
                }
            }
        }
        Some(inv)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(format_scalar).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Incremental reduced-row-echelon builder over sparse rows.
///
/// Rows are kept in insertion order; each row has coefficient 1 at its pivot
/// and zeros at the pivots of all earlier rows. Reducing an incoming vector
/// against the rows in insertion order therefore clears every pivot.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
    is_pivot: Vec<bool>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            is_pivot: vec![false; dim],
        }
    }

    pub fn from_subspace(s: &Subspace) -> Self {
        let mut e = Self::new(s.ambient_dim());
        for (row, &p) in s.rows().iter().zip(s.pivots()) {
            e.rows.push(row.clone());
            e.pivots.push(p);
            e.is_pivot[p] = true;
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    pub fn reduce(&self, v: &mut SparseVec) {
        if v.is_zero() {
            return;
        }
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if let Some(c) = v.get(p) {
                let c = -c.clone();
                v.axpy(&c, row);
                if v.is_zero() {
                    return;
                }
            }
        }
    }

    /// Inserts `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, mut v: SparseVec) -> bool {
        debug_assert!(v.support_bound() <= self.dim);
        self.reduce(&mut v);
        let Some((p, lead)) = v.leading() else {
            return false;
        };
        let inv = lead.recip();
        v.scale(&inv);
        self.is_pivot[p] = true;
        self.pivots.push(p);
        self.rows.push(v);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    /// Back-substitutes and sorts by pivot, giving the canonical basis.
    pub fn into_subspace(mut self) -> Subspace {
        for t in (0..self.rows.len()).rev() {
            let p = self.pivots[t];
            let (before, rest) = self.rows.split_at_mut(t);
            let row_t = &rest[0];
            for row_s in before.iter_mut() {
                if let Some(c) = row_s.get(p) {
                    let c = -c.clone();
                    row_s.axpy(&c, row_t);
                }
            }
        }
        let mut pairs: Vec<(usize, SparseVec)> = self.pivots.into_iter().zip(self.rows).collect();
        pairs.sort_by_key(|(p, _)| *p);
        let (pivots, rows) = pairs.into_iter().unzip();
        Subspace::from_canonical(self.dim, rows, pivots)
    }
}

/// Null space of `m` in canonical form.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    let mut e = Echelon::new(m.cols());
    for r in m.sparse_rows() {
        e.insert(r);
        if e.is_full() {
            break;
        }
    }
    kernel_of_row_space(e.into_subspace())
}

/// Null space of any matrix whose row space is `rows`.
pub fn kernel_of_row_space(rows: Subspace) -> Subspace {
    let n = rows.ambient_dim();
    let mut is_pivot = vec![false; n];
    for &p in rows.pivots() {
        is_pivot[p] = true;
    }
    let mut e = Echelon::new(n);
    for f in (0..n).filter(|&f| !is_pivot[f]) {
        // x_f = 1, x_p = -R[p][f] for every pivot row.
        let mut pairs = vec![(f, Scalar::one())];
        for (row, &p) in rows.rows().iter().zip(rows.pivots()) {
            if let Some(c) = row.get(f) {
                pairs.push((p, -c.clone()));
            }
        }
        e.insert(SparseVec::from_pairs(pairs));
    }
    e.into_subspace()
}

/// Column space of `m` in canonical form.
pub fn image_basis(m: &Matrix) -> Subspace {
    let mut e = Echelon::new(m.rows());
    for c in m.sparse_columns() {
        e.insert(c);
        if e.is_full() {
            break;
        }
    }
    e.into_subspace()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::scalar::{int, ratio};

    fn m(rows: &[&[i64]]) -> Matrix {
        let cols = rows[0].len();
        let rows: Vec<Vector> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        Matrix::from_rows(cols, &rows).unwrap()
    }

    #[test]
    fn identity_has_trivial_kernel_and_full_image() {
        let id = Matrix::identity(3);
        assert_eq!(kernel_basis(&id).dim(), 0);
        assert_eq!(image_basis(&id), Subspace::full(3));
    }

    #[test]
    fn zero_map_kernel_is_everything() {
        let z = Matrix::zeros(2, 5);
        assert_eq!(kernel_basis(&z), Subspace::full(5));
        assert_eq!(image_basis(&z), Subspace::zero(2));
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, -1, 2]]);
        let k = kernel_basis(&a);
        assert_eq!(k.dim(), 2);
        for v in k.basis() {
            assert!(a.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
        }
        assert_eq!(a.rank() + k.dim(), a.cols());
    }

    #[test]
    fn inverse_round_trips() {
        let a = m(&[&[2, 1, 0], &[0, 1, 0], &[1, 0, 1]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&a).unwrap().is_identity());
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert!(m(&[&[1, 2, 3]]).inverse().is_none());
        assert_eq!(Matrix::zeros(0, 0).inverse(), Some(Matrix::zeros(0, 0)));
    }

    #[test]
    fn solve_picks_zero_free_variables() {
        let a = m(&[&[1, 1, 0], &[0, 0, 2]]);
        let x = a.solve(&[int(3), int(1)]).unwrap().unwrap();
        assert_eq!(x, vec![int(3), int(0), ratio(1, 2)]);
        let inconsistent = m(&[&[1, 1], &[1, 1]]);
        assert_eq!(inconsistent.solve(&[int(1), int(2)]).unwrap(), None);
    }

    #[test]
    fn kron_matches_index_convention() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = Matrix::identity(2);
        let k = a.kron(&b);
        assert_eq!(k.get(0, 2), &int(2));
        assert_eq!(k.get(3, 1), &int(3));
        assert_eq!(k.get(1, 0), &int(0));
    }
}

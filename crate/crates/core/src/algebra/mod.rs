//! Multiplicative Hom-Leibniz n-algebras given by structure constants.

mod derived;
mod morphism;
mod structure;
mod validate;

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactla::{Accumulator, Matrix, Scalar, SparseVec, Vector};
use crate::limits::Limits;

pub use morphism::{Morphism, MorphismCheck};
pub use validate::Violation;

/// Shared handle; morphisms and extensions refer to algebras through it.
pub type AlgebraRef = Arc<HomNAlgebra>;

/// Flags recorded by the validators at construction time.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValidationFlags {
    pub fundamental_identity: bool,
    pub multiplicative: bool,
    pub skew: bool,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct BuildOptions {
    pub generate_skew: bool,
    pub limits: Limits,
}

/// `(L, [-,…,-], α)` with an n-linear bracket stored as a sparse table of
/// structure constants and a single twist `α`.
///
/// Invariants: every key has length `arity` with entries `< dim`; stored
/// values are nonzero with support `< dim`; `alpha` is `dim × dim`.
#[derive(Clone, Debug)]
pub struct HomNAlgebra {
    name: String,
    arity: usize,
    labels: Vec<String>,
    table: BTreeMap<Vec<usize>, SparseVec>,
    alpha: Matrix,
    alpha_cols: Vec<SparseVec>,
    flags: ValidationFlags,
    limits: Limits,
}

impl PartialEq for HomNAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.arity == other.arity
            && self.labels == other.labels
            && self.table == other.table
            && self.alpha == other.alpha
    }
}

impl Eq for HomNAlgebra {}

impl HomNAlgebra {
    /// Builds the algebra, optionally completing the table by
    /// `[x_σ(1),…,x_σ(n)] = sign(σ)[x_1,…,x_n]`, then runs both validators.
    pub fn new(
        name: impl Into<String>,
        arity: usize,
        labels: Vec<String>,
        entries: Vec<(Vec<usize>, SparseVec)>,
        alpha: Matrix,
        options: BuildOptions,
    ) -> Result<Self> {
        let mut algebra = Self::assemble(name.into(), arity, labels, entries, alpha, options)?;
        algebra.flags = ValidationFlags {
            fundamental_identity: algebra.validate_fundamental_identity()?.is_empty(),
            multiplicative: algebra.validate_multiplicative()?.is_empty(),
            skew: algebra.is_hom_lie(),
        };
        Ok(algebra)
    }

    /// Same as [`HomNAlgebra::new`] but with dense bracket values.
    pub fn from_dense(
        name: impl Into<String>,
        arity: usize,
        labels: Vec<String>,
        entries: Vec<(Vec<usize>, Vector)>,
        alpha: Matrix,
        options: BuildOptions,
    ) -> Result<Self> {
        let d = labels.len();
        let mut sparse = Vec::with_capacity(entries.len());
        for (t, v) in entries {
            if v.len() != d {
                return Err(Error::mismatch("bracket value", d, v.len()));
            }
            sparse.push((t, SparseVec::from_dense(&v)));
        }
        Self::new(name, arity, labels, sparse, alpha, options)
    }

    fn assemble(
        name: String,
        arity: usize,
        labels: Vec<String>,
        entries: Vec<(Vec<usize>, SparseVec)>,
        alpha: Matrix,
        options: BuildOptions,
    ) -> Result<Self> {
        if arity < 2 {
            return Err(Error::Precondition(format!("arity must be at least 2, got {arity}")));
        }
        let d = labels.len();
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Precondition(format!("basis label `{l}` repeated")));
            }
        }
        if alpha.rows() != d || alpha.cols() != d {
            return Err(Error::mismatch("twist matrix", d, alpha.rows().max(alpha.cols())));
        }
        let mut supplied: BTreeMap<Vec<usize>, SparseVec> = BTreeMap::new();
        for (t, v) in entries {
            if t.len() != arity {
                return Err(Error::mismatch("bracket tuple length", arity, t.len()));
            }
            for &i in &t {
                if i >= d {
                    return Err(Error::IndexOutOfRange {
                        what: "basis".into(),
                        index: i,
                        bound: d,
                    });
                }
            }
            if v.support_bound() > d {
                return Err(Error::IndexOutOfRange {
                    what: "bracket value coordinate".into(),
                    index: v.support_bound() - 1,
                    bound: d,
                });
            }
            if supplied.insert(t.clone(), v).is_some() {
                return Err(Error::DuplicateTuple { tuple: t });
            }
        }
        let table = if options.generate_skew {
            skew_complete(arity, supplied, &options.limits)?
        } else {
            supplied
        };
        let table = table.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        let alpha_cols = alpha.sparse_columns();
        Ok(Self {
            name,
            arity,
            labels,
            table,
            alpha,
            alpha_cols,
            flags: ValidationFlags {
                fundamental_identity: false,
                multiplicative: false,
                skew: false,
            },
            limits: options.limits,
        })
    }

    /// The abelian algebra of the given dimension with twist `alpha`.
    pub fn abelian(name: impl Into<String>, arity: usize, labels: Vec<String>, alpha: Matrix) -> Result<Self> {
        Self::new(name, arity, labels, Vec::new(), alpha, BuildOptions::default())
    }

    /// Zero-dimensional algebra.
    pub fn zero(name: impl Into<String>, arity: usize) -> Self {
        Self::abelian(name, arity, Vec::new(), Matrix::zeros(0, 0)).expect("zero algebra is well formed")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn table(&self) -> &BTreeMap<Vec<usize>, SparseVec> {
        &self.table
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    /// `α(e_i)` as a sparse vector.
    pub fn alpha_col(&self, i: usize) -> &SparseVec {
        &self.alpha_cols[i]
    }

    pub fn alpha_apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, x) in v.iter() {
            acc.add_scaled(x, &self.alpha_cols[i]);
        }
        acc.finish()
    }

    pub fn flags(&self) -> ValidationFlags {
        self.flags
    }

    pub fn is_valid(&self) -> bool {
        self.flags.fundamental_identity && self.flags.multiplicative
    }

    /// Errors unless both validators passed.
    pub fn require_valid(&self) -> Result<()> {
        if self.is_valid() {
            return Ok(());
        }
        let reason = match (self.flags.fundamental_identity, self.flags.multiplicative) {
            (false, false) => "fundamental identity and multiplicativity fail",
            (false, true) => "fundamental identity fails",
            _ => "twist is not multiplicative",
        };
        Err(Error::InvalidAlgebra {
            name: self.name.clone(),
            reason: reason.into(),
        })
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn set_limits(&mut self, limits: Limits) {
        self.limits = limits;
    }

    pub(crate) fn options(&self) -> BuildOptions {
        BuildOptions {
            generate_skew: false,
            limits: self.limits,
        }
    }

    /// Structure constant vector `[e_t1, …, e_tn]`, or `None` when zero.
    pub fn bracket_basis(&self, tuple: &[usize]) -> Option<&SparseVec> {
        self.table.get(tuple)
    }

    /// Multilinear bracket of sparse arguments.
    pub fn bracket_sparse(&self, args: &[&SparseVec]) -> SparseVec {
        assert_eq!(args.len(), self.arity, "bracket arity");
        if args.iter().any(|a| a.is_zero()) {
            return SparseVec::new();
        }
        let combos = args
            .iter()
            .try_fold(1usize, |acc, a| acc.checked_mul(a.nnz()))
            .unwrap_or(usize::MAX);
        let mut acc = Accumulator::new();
        if combos <= self.table.len() {
            let supports: Vec<Vec<(usize, &Scalar)>> = args.iter().map(|a| a.iter().collect()).collect();
            for combo in supports.iter().map(|s| s.iter()).multi_cartesian_product() {
                let key: Vec<usize> = combo.iter().map(|(i, _)| *i).collect();
                if let Some(v) = self.table.get(&key) {
                    let mut c = Scalar::one();
                    for (_, x) in &combo {
                        c *= *x;
                    }
                    acc.add_scaled(&c, v);
                }
            }
        } else {
            'entries: for (t, v) in &self.table {
                let mut c = Scalar::one();
                for (a, &i) in args.iter().zip(t) {
                    match a.get(i) {
                        Some(x) => c *= x,
                        None => continue 'entries,
                    }
                }
                acc.add_scaled(&c, v);
            }
        }
        acc.finish()
    }

    /// Multilinear bracket of dense coordinate vectors.
    pub fn bracket_eval(&self, args: &[Vector]) -> Result<Vector> {
        if args.len() != self.arity {
            return Err(Error::mismatch("bracket arguments", self.arity, args.len()));
        }
        for a in args {
            if a.len() != self.dim() {
                return Err(Error::mismatch("bracket argument length", self.dim(), a.len()));
            }
        }
        let sparse: Vec<SparseVec> = args.iter().map(|a| SparseVec::from_dense(a)).collect();
        let refs: Vec<&SparseVec> = sparse.iter().collect();
        Ok(self.bracket_sparse(&refs).to_dense(self.dim()))
    }

    /// Matrix of `x ↦ [x, y_1, …, y_{n−1}]`.
    pub fn ad(&self, ys: &[Vector]) -> Result<Matrix> {
        if ys.len() + 1 != self.arity {
            return Err(Error::mismatch("adjoint arguments", self.arity - 1, ys.len()));
        }
        for y in ys {
            if y.len() != self.dim() {
                return Err(Error::mismatch("adjoint argument length", self.dim(), y.len()));
            }
        }
        let ys: Vec<SparseVec> = ys.iter().map(|y| SparseVec::from_dense(y)).collect();
        let cols: Vec<SparseVec> = (0..self.dim())
            .map(|k| {
                let e = SparseVec::unit(k);
                let mut args: Vec<&SparseVec> = vec![&e];
                args.extend(ys.iter());
                self.bracket_sparse(&args)
            })
            .collect();
        Ok(Matrix::from_sparse_columns(self.dim(), &cols))
    }

    /// Whether the table alternates under every permutation of the slots.
    pub fn is_hom_lie(&self) -> bool {
        // Adjacent transpositions generate S_n.
        for (t, v) in &self.table {
            for i in 0..self.arity - 1 {
                let mut s = t.clone();
                s.swap(i, i + 1);
                match self.table.get(&s) {
                    Some(w) if *w == v.negated() => {}
                    _ => return false,
                }
            }
        }
        true
    }

    pub fn is_abelian(&self) -> bool {
        self.table.is_empty()
    }

    /// Rank of `α` equals the dimension.
    pub fn alpha_injective(&self) -> bool {
        self.alpha.rank() == self.dim()
    }
}

fn skew_complete(
    arity: usize,
    supplied: BTreeMap<Vec<usize>, SparseVec>,
    limits: &Limits,
) -> Result<BTreeMap<Vec<usize>, SparseVec>> {
    let perms: Vec<(Vec<usize>, bool)> = (0..arity)
        .permutations(arity)
        .map(|p| {
            let odd = inversions(&p) % 2 == 1;
            (p, odd)
        })
        .collect();
    limits.check(
        "skew completion",
        (supplied.len() as u128) * (perms.len() as u128),
    )?;
    let mut table: BTreeMap<Vec<usize>, SparseVec> = BTreeMap::new();
    for (t, v) in &supplied {
        for (p, odd) in &perms {
            let s: Vec<usize> = p.iter().map(|&k| t[k]).collect();
            let w = if *odd { v.negated() } else { v.clone() };
            match table.get(&s) {
                Some(existing) if *existing != w => return Err(Error::SkewConflict { tuple: t.clone() }),
                Some(_) => {}
                None => {
                    table.insert(s, w);
                }
            }
        }
    }
    Ok(table)
}

pub(crate) fn inversions(p: &[usize]) -> usize {
    let mut count = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                count += 1;
            }
        }
    }
    count
}

impl fmt::Display for HomNAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (arity {}, dim {}, {} nonzero brackets)",
            self.name,
            self.arity,
            self.dim(),
            self.table.len()
        )
    }
}

/// `["p0", "p1", …]`
pub fn numbered_labels(prefix: &str, count: usize) -> Vec<String> {
    (0..count).map(|i| format!("{prefix}{i}")).collect()
}

/// Strings from literals, for fixtures and tests.
pub fn labels_of(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

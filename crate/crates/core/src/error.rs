use thiserror::Error;

/// Errors raised by library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: String,
        expected: usize,
        found: usize,
    },

    #[error("{what} index {index} out of range (bound {bound})")]
    IndexOutOfRange {
        what: String,
        index: usize,
        bound: usize,
    },

    #[error("skew completion conflict at bracket tuple {tuple:?}")]
    SkewConflict { tuple: Vec<usize> },

    #[error("bracket tuple {tuple:?} supplied twice")]
    DuplicateTuple { tuple: Vec<usize> },

    #[error("resource limit exceeded in {what}: needs about {needed} basic evaluations, cap is {cap}")]
    ResourceLimit { what: String, needed: u128, cap: u64 },

    #[error("subspace is not an n-sided Hom-ideal: {reason}")]
    NotIdeal { reason: String },

    #[error("not a homomorphism: {reason}")]
    NotMorphism { reason: String },

    #[error("map is not surjective (rank {rank}, target dimension {target_dim})")]
    NotSurjective { rank: usize, target_dim: usize },

    #[error("extension is not central")]
    NotCentral,

    #[error("algebra `{name}` is not perfect")]
    NotPerfect { name: String },

    #[error("algebra `{name}` fails validation: {reason}")]
    InvalidAlgebra { name: String, reason: String },

    #[error("well-definedness failure in {what}: {witness}")]
    NotWellDefined { what: String, witness: String },

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

impl Error {
    pub(crate) fn mismatch(context: impl Into<String>, expected: usize, found: usize) -> Self {
        Error::DimensionMismatch {
            context: context.into(),
            expected,
            found,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

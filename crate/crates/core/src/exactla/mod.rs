//! Exact linear algebra over the rationals.

mod matrix;
mod presented;
mod scalar;
mod sparse;
mod subspace;

pub use matrix::{image_basis, kernel_basis, kernel_of_row_space, Echelon, Matrix};
pub use presented::PresentedSpace;
pub use scalar::{
    add_vectors, axpy, format_scalar, int, is_zero_vector, parse_scalar, ratio, scale_vector,
    sub_vectors, unit_vector, zero_vector, Scalar, Vector,
};
pub use sparse::{Accumulator, SparseMatrix, SparseVec};
pub use subspace::Subspace;

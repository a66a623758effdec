pub mod algebra;
pub mod catalog;
pub mod error;
pub mod exactla;
pub mod extensions;
pub mod format;
pub mod homology;
pub mod limits;
pub mod tensor_index;
pub mod tensorprod;

pub use algebra::{AlgebraRef, BuildOptions, HomNAlgebra, Morphism};
pub use error::{Error, Result};
pub use extensions::Extension;
pub use limits::Limits;

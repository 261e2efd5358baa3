//! Dense and sparse linear algebra shared by the exact and floating-point paths.

mod dense;
mod scalar;
pub mod sparse;

pub use dense::Mat;
pub use scalar::Scalar;
pub use sparse::{Echelon, Rref, SparseVec};

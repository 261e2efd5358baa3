//! Invariant cohomology of compact Lie groups with left-invariant complex structures.

pub mod bicomplex;
pub mod cohomology;
pub mod error;
pub mod exactfield;
pub mod hermflow;
pub mod liealg;
pub mod linalg;

pub use error::{Error, Result};
pub use exactfield::{FieldElement, Rational};

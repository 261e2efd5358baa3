//! Bigraded exterior algebra on n complex generators with ∂ and ∂̄.

mod blocks;
mod form;
mod hodge;
mod monomial;

pub use blocks::{build_differentials, verify_bicomplex, Basis, Bicomplex, GradedBlockMap, Op, VerifyFailure, VerifyReport};
pub use form::{Form, FormTerm};
pub use hodge::{hodge_star, Hodge};
pub use monomial::{canonical_monomials, combinations, Monomial, MAX_GENERATORS};

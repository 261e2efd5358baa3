//! Exact arithmetic in ℚ(i,√3).

mod element;
mod rational;

pub use element::FieldElement;
pub use rational::Rational;

//! Left-invariant Hermitian metrics, the Bismut connection and the pluriclosed flow.

mod aeppli;
mod bismut;
mod flow;
mod manifold;
mod metric;
mod ricci;
mod torus;

pub use aeppli::AeppliExactness;
pub use bismut::{bismut_curvature, bismut_ricci_form, BismutCurvature};
pub use flow::{
    pluriclosed_directions, pluriclosed_flow, sample_perturbation, FlowOptions, FlowOutcome, FlowProblem, FlowState,
    FlowVerdict, PerturbationMode,
};
pub use metric::{coefficients_to_form, form_to_coefficients, hermitize, kahler_form, ExactMetric, FloatMetric, HermitianMetric};
pub use ricci::{
    adjoint_matrix, bismut_ricci_11, chern_ricci_form, trace_form, codifferential, codifferential_adjoints, is_pluriclosed, pluriclosed_residual, Adjoints,
    RicciOperator,
};
pub use manifold::StandardManifold;
pub use torus::TorusPairing;

#[cfg(test)]
mod tests;

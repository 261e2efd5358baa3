//! Lie algebra models, root decompositions and Samelson complex structures.

pub mod builtin;
mod equations;
mod model;
mod roots;
mod structure;

pub use builtin::{
    bi_invariant_metric, builtin_model, isotropic_parameter, standard_equations, standard_structure, structure_with_parameter, torus_vector,
    BUILTIN_MODELS,
};
pub use equations::StructureEquations;
pub use model::{BracketEntry, BracketTerm, CoframeRule, JacobiReport, LieAlgebraModel, ModelFile};
pub use roots::{root_decomposition, RootDatum};
pub use structure::{derive_structure_equations, samelson_structure, ComplexStructureChoice, StructureSign};

use crate::bicomplex::Bicomplex;
use crate::error::Result;
use crate::liealg::{bi_invariant_metric, builtin_model, derive_structure_equations, standard_structure, StructureSign};

use super::flow::FlowProblem;
use super::metric::ExactMetric;

/// A builtin compact group with one of its standard complex structures and the metric `ω_BF`.
#[derive(Clone, Debug)]
pub struct StandardManifold {
    pub model: String,
    pub sign: StructureSign,
    pub bicomplex: Bicomplex,
    pub reference: ExactMetric,
    pub torus_slot: usize,
}

impl StandardManifold {
    pub fn new(model: &str, sign: StructureSign) -> Result<Self> {
        let m = builtin_model(model)?;
        let cs = standard_structure(&m, sign)?;
        let torus_slot = cs.torus_slot();
        let bicomplex = Bicomplex::new(derive_structure_equations(&cs)?);
        let reference = ExactMetric::diagonal(&bi_invariant_metric(model)?)?;
        Ok(StandardManifold { model: model.to_string(), sign, bicomplex, reference, torus_slot })
    }

    pub fn n(&self) -> usize {
        self.bicomplex.n()
    }

    pub fn flow_problem(&self) -> Result<FlowProblem> {
        FlowProblem::new(&self.bicomplex, &self.reference, self.torus_slot)
    }
}

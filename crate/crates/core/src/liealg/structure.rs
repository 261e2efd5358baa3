use serde::Serialize;

use super::equations::StructureEquations;
use super::model::{CoframeRule, LieAlgebraModel};
use super::roots::RootDatum;
use crate::bicomplex::{Form, Monomial};
use crate::error::{Error, Result};
use crate::exactfield::FieldElement;
use crate::linalg::sparse::{Rref, SparseVec};
use crate::linalg::Mat;

/// The two isotropic structures of a builtin model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StructureSign {
    Plus,
    Minus,
}

/// A left-invariant complex structure given by a Samelson subalgebra `𝔰`.
#[derive(Clone, Debug)]
pub struct ComplexStructureChoice {
    model: LieAlgebraModel,
    positive_roots: Vec<RootDatum>,
    parameter: (FieldElement, FieldElement),
    frame: Vec<Vec<FieldElement>>,
    torus_slot: usize,
    isotropic: bool,
}

fn to_sparse(v: &[FieldElement]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// `𝔰 = (torus line) ⊕ Σ_{α ∈ R⁺} 𝔤_α`, with torus vector `(1 − a i) H₁ − b i H₂`.
pub fn samelson_structure(
    model: &LieAlgebraModel,
    positive_roots: &[RootDatum],
    parameter: (FieldElement, FieldElement),
) -> Result<ComplexStructureChoice> {
    let (a, b) = &parameter;
    if b.is_zero() {
        return Err(Error::DegenerateParameter);
    }
    let torus = super::builtin::torus_vector(model, a, b)?;
    let mut frame: Vec<Vec<FieldElement>> = positive_roots.iter().map(|r| r.eigenvector.clone()).collect();
    frame.push(torus);
    let slot = frame.len() - 1;
    ComplexStructureChoice::build(model, positive_roots.to_vec(), parameter, frame, slot)
}

impl ComplexStructureChoice {
    fn build(
        model: &LieAlgebraModel,
        positive_roots: Vec<RootDatum>,
        parameter: (FieldElement, FieldElement),
        frame: Vec<Vec<FieldElement>>,
        torus_slot: usize,
    ) -> Result<Self> {
        let dim = model.dim();
        if 2 * frame.len() != dim {
            return Err(Error::NotComplexStructure(format!(
                "{} frame vectors for a {dim}-dimensional algebra",
                frame.len()
            )));
        }
        let span = Rref::span_of(frame.iter().map(|v| to_sparse(v)));
        if span.dim() != frame.len() {
            return Err(Error::NotComplexStructure("frame vectors are dependent".into()));
        }
        for x in &frame {
            for y in &frame {
                if span.coordinates(&to_sparse(&model.bracket(x, y))).is_none() {
                    return Err(Error::NotSubalgebra("bracket leaves the span of the frame".into()));
                }
            }
        }
        let all = Rref::span_of(
            frame.iter().map(|v| to_sparse(v)).chain(frame.iter().map(|v| to_sparse(&model.conjugate_vector(v)))),
        );
        if all.dim() != dim {
            return Err(Error::NotComplexStructure("𝔰 meets its conjugate".into()));
        }
        let isotropic = frame.iter().all(|x| frame.iter().all(|y| model.pair(x, y).is_zero()));
        Ok(ComplexStructureChoice { model: model.clone(), positive_roots, parameter, frame, torus_slot, isotropic })
    }

    /// Replaces the frame by another basis of the same subalgebra.
    pub fn with_frame(self, frame: Vec<Vec<FieldElement>>) -> Result<Self> {
        let old = Rref::span_of(self.frame.iter().map(|v| to_sparse(v)));
        let new = Rref::span_of(frame.iter().map(|v| to_sparse(v)));
        if old != new || new.dim() != frame.len() {
            return Err(Error::NotComplexStructure("frame does not span the subalgebra".into()));
        }
        let torus = self.model.torus();
        let slots: Vec<usize> = frame
            .iter()
            .enumerate()
            .filter(|(_, v)| v.iter().enumerate().all(|(i, x)| x.is_zero() || torus.contains(&i)))
            .map(|(k, _)| k)
            .collect();
        let [slot] = slots[..] else {
            return Err(Error::NotComplexStructure("frame needs exactly one torus vector".into()));
        };
        Self::build(&self.model, self.positive_roots, self.parameter, frame, slot)
    }

    pub fn model(&self) -> &LieAlgebraModel {
        &self.model
    }

    /// Complex dimension.
    pub fn n(&self) -> usize {
        self.frame.len()
    }

    pub fn positive_roots(&self) -> &[RootDatum] {
        &self.positive_roots
    }

    pub fn parameter(&self) -> &(FieldElement, FieldElement) {
        &self.parameter
    }

    /// Basis `v_1 … v_n` of `𝔰` in the model frame.
    pub fn frame(&self) -> &[Vec<FieldElement>] {
        &self.frame
    }

    /// Zero-based position of the torus vector in the frame.
    pub fn torus_slot(&self) -> usize {
        self.torus_slot
    }

    pub fn is_isotropic(&self) -> bool {
        self.isotropic
    }

    /// Rows `φ^1 … φ^n, φ̄^1 … φ̄^n` as linear functionals on the model frame.
    pub fn coframe_matrix(&self) -> Result<Mat<FieldElement>> {
        let n = self.n();
        let dim = self.model.dim();
        let rows: Vec<Vec<FieldElement>> = match self.model.coframe() {
            CoframeRule::PairingDual { scale } => self
                .frame
                .iter()
                .map(|v| self.model.pairing().mul_vec(v).into_iter().map(|x| &x * scale).collect())
                .collect(),
            CoframeRule::DualBasis { scale } => {
                let cols: Vec<Vec<FieldElement>> = self
                    .frame
                    .iter()
                    .cloned()
                    .chain(self.frame.iter().map(|v| self.model.conjugate_vector(v)))
                    .map(|v| v.into_iter().map(|x| &x * scale).collect())
                    .collect();
                let v = Mat::from_fn(dim, dim, |i, j| cols[j][i].clone());
                let inv = v.inverse().map_err(|_| Error::NotComplexStructure("singular frame".into()))?;
                (0..n).map(|k| inv.row(k).to_vec()).collect()
            }
        };
        let t = self.model.conjugation();
        let mut all = rows.clone();
        for r in &rows {
            let rt = Mat::from_rows(vec![r.clone()]).mul(t);
            all.push(rt.row(0).iter().map(|x| x.conj()).collect());
        }
        Ok(Mat::from_rows(all))
    }

    /// Columns `W_1 … W_2n` dual to the coframe.
    pub fn dual_frame(&self) -> Result<Mat<FieldElement>> {
        self.coframe_matrix()?
            .inverse()
            .map_err(|_| Error::NotComplexStructure("coframe is degenerate".into()))
    }
}

/// `dφ^c(W_a, W_b) = −φ^c([W_a, W_b])`, split by bidegree.
pub fn derive_structure_equations(cs: &ComplexStructureChoice) -> Result<StructureEquations> {
    let n = cs.n();
    let m = cs.coframe_matrix()?;
    let w = cs.dual_frame()?;
    let cols: Vec<Vec<FieldElement>> = (0..2 * n).map(|a| w.column(a)).collect();
    let brackets: Vec<Vec<Vec<FieldElement>>> =
        (0..2 * n).map(|a| (0..2 * n).map(|b| cs.model().bracket(&cols[a], &cols[b])).collect()).collect();
    let slot = |a: usize| if a < n { Monomial::holo_gen(a) } else { Monomial::anti_gen(a - n) };
    let mut d = Vec::with_capacity(n);
    for c in 0..n {
        let row = m.row(c);
        let mut f = Form::zero(n);
        for a in 0..2 * n {
            for b in a + 1..2 * n {
                let v: FieldElement = row.iter().zip(&brackets[a][b]).map(|(x, y)| x * y).sum();
                if v.is_zero() {
                    continue;
                }
                let (_, mono) = slot(a).wedge(&slot(b)).expect("distinct slots");
                f.add_term(mono, -v);
            }
        }
        d.push(f);
    }
    StructureEquations::from_differentials(n, d)
}

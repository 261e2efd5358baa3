use num_complex::Complex64;
use serde::Serialize;

use crate::bicomplex::{Bicomplex, Form, Monomial, Op};
use crate::error::{Error, Result};
use crate::exactfield::FieldElement;
use crate::linalg::Mat;

/// Evaluation of (1,1)-forms on the plane of the maximal torus, normalized on `ω_BF`.
///
/// The torus is a complex curve spanned by the real and imaginary parts of the torus frame
/// vector, so only the `φ^t ∧ φ̄^t` coefficient survives restriction.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TorusPairing {
    pub n: usize,
    pub slot: usize,
    /// `φ^t ∧ φ̄^t` coefficient of the reference form.
    pub reference: FieldElement,
}

impl TorusPairing {
    pub fn new(reference: &Form, slot: usize) -> Result<Self> {
        let n = reference.n();
        if slot >= n {
            return Err(Error::Bidegree(format!("torus slot {slot} outside 0..{n}")));
        }
        let c = reference.coefficient(&Self::monomial(slot));
        if c.is_zero() {
            return Err(Error::Singular("reference form vanishes on the torus".into()));
        }
        Ok(TorusPairing { n, slot, reference: c })
    }

    fn monomial(slot: usize) -> Monomial {
        Monomial::from_indices(&[slot], &[slot]).expect("single generators")
    }

    pub fn pair(&self, x: &Form) -> Result<FieldElement> {
        if x.n() != self.n {
            return Err(Error::MismatchedN(x.n(), self.n));
        }
        if x.bidegrees().iter().any(|&b| b != (1, 1)) {
            return Err(Error::Bidegree("torus pairing takes (1,1)-forms".into()));
        }
        Ok(&x.coefficient(&Self::monomial(self.slot)) / &self.reference)
    }

    /// Pairing of `(i/2) Σ H_kl φ^k ∧ φ̄^l` when the reference is `(i/2) H_ref`.
    pub fn pair_metric(&self, h: &Mat<Complex64>) -> f64 {
        let half_i = Complex64::new(0.0, 0.5);
        (h[(self.slot, self.slot)] * half_i / self.reference.to_complex_float()).re
    }

    /// Whether the pairing vanishes on `∂` of (0,1)-forms and `∂̄` of (1,0)-forms.
    pub fn vanishes_on_exact(&self, bc: &Bicomplex) -> bool {
        let m = Self::monomial(self.slot);
        let pos = bc.basis().position(&m);
        [(Op::Del, 0, 1), (Op::Delbar, 1, 0)]
            .iter()
            .all(|&(op, p, q)| bc.block(op, p, q).columns.iter().all(|c| crate::linalg::sparse::get(c, pos).is_none()))
    }
}

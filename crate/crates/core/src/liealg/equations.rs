use crate::bicomplex::{Form, Monomial};
use crate::error::{Error, Result};
use crate::exactfield::FieldElement;

/// Values of ∂ and ∂̄ on the (1,0) generators; the (0,1) values follow by conjugation.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureEquations {
    n: usize,
    del: Vec<Form>,
    delbar: Vec<Form>,
}

impl StructureEquations {
    /// Validates that each ∂φ^k is of type (2,0) and each ∂̄φ^k of type (1,1).
    pub fn new(n: usize, del: Vec<Form>, delbar: Vec<Form>) -> Result<Self> {
        if del.len() != n || delbar.len() != n {
            return Err(Error::InvalidModel(format!("expected {n} generator differentials")));
        }
        for (k, f) in del.iter().enumerate() {
            if f.n() != n {
                return Err(Error::MismatchedN(n, f.n()));
            }
            if f.bidegrees().iter().any(|&b| b != (2, 0)) {
                return Err(Error::Bidegree(format!("∂φ^{} must have type (2,0)", k + 1)));
            }
        }
        for (k, f) in delbar.iter().enumerate() {
            if f.n() != n {
                return Err(Error::MismatchedN(n, f.n()));
            }
            if f.bidegrees().iter().any(|&b| b == (0, 2)) {
                return Err(Error::Integrability(format!("φ^{}", k + 1)));
            }
            if f.bidegrees().iter().any(|&b| b != (1, 1)) {
                return Err(Error::Bidegree(format!("∂̄φ^{} must have type (1,1)", k + 1)));
            }
        }
        Ok(StructureEquations { n, del, delbar })
    }

    /// Builds the equations from the full exterior derivatives `dφ^k`, rejecting (0,2) parts.
    pub fn from_differentials(n: usize, d: Vec<Form>) -> Result<Self> {
        let mut del = Vec::with_capacity(n);
        let mut delbar = Vec::with_capacity(n);
        for (k, f) in d.iter().enumerate() {
            if !f.component(0, 2).is_zero() {
                return Err(Error::Integrability(format!("φ^{}", k + 1)));
            }
            del.push(f.component(2, 0));
            delbar.push(f.component(1, 1));
        }
        Self::new(n, del, delbar)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// ∂φ^k (zero-based `k`).
    pub fn del(&self, k: usize) -> &Form {
        &self.del[k]
    }

    /// ∂̄φ^k (zero-based `k`).
    pub fn delbar(&self, k: usize) -> &Form {
        &self.delbar[k]
    }

    /// ∂φ̄^k = conj(∂̄φ^k).
    pub fn del_bar_generator(&self, k: usize) -> Form {
        self.delbar[k].conjugate()
    }

    /// ∂̄φ̄^k = conj(∂φ^k).
    pub fn delbar_bar_generator(&self, k: usize) -> Form {
        self.del[k].conjugate()
    }

    /// dθ for the coframe element in slot `a` (φ^a for `a < n`, φ̄^{a-n} otherwise).
    pub fn d_slot(&self, a: usize) -> Form {
        if a < self.n {
            self.del[a].add(&self.delbar[a]).expect("same n")
        } else {
            let k = a - self.n;
            self.del_bar_generator(k).add(&self.delbar_bar_generator(k)).expect("same n")
        }
    }

    /// Structure constants of the dual frame: `[W_a, W_b] = Σ_c C[c][a][b] W_c`, from `dθ^c(W_a,W_b) = −θ^c([W_a,W_b])`.
    pub fn dual_structure_constants(&self) -> Vec<Vec<Vec<FieldElement>>> {
        let m = 2 * self.n;
        let mut c = vec![vec![vec![FieldElement::zero(); m]; m]; m];
        for (cc, plane) in c.iter_mut().enumerate() {
            let d = self.d_slot(cc);
            for (mono, coef) in d.terms() {
                let slots = slot_pair(mono, self.n);
                let (a, b) = (slots[0], slots[1]);
                plane[a][b] = -coef;
                plane[b][a] = coef.clone();
            }
        }
        c
    }

    /// Replaces one coefficient; used to build deliberately corrupted tables.
    pub fn with_term(&self, generator: usize, m: Monomial, coeff: FieldElement) -> Result<Self> {
        let mut del = self.del.clone();
        let mut delbar = self.delbar.clone();
        let target = if m.bidegree() == (2, 0) { &mut del[generator] } else { &mut delbar[generator] };
        let old = target.coefficient(&m);
        target.add_term(m, &coeff - &old);
        Self::new(self.n, del, delbar)
    }
}

/// Slot indices (0..2n) of a degree-2 monomial in canonical order.
fn slot_pair(m: &Monomial, n: usize) -> [usize; 2] {
    let mut s: Vec<usize> = m.holo_indices();
    s.extend(m.anti_indices().into_iter().map(|k| k + n));
    [s[0], s[1]]
}

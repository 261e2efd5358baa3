use crate::bicomplex::{Bicomplex, Form, Hodge, Op};
use crate::error::{Error, Result};
use crate::exactfield::FieldElement;
use crate::linalg::{Mat, Scalar};

use super::metric::{coefficients_to_form, form_to_coefficients, ExactMetric, HermitianMetric};

fn gram_inverse<S: Scalar>(g: &Mat<S>) -> Result<Mat<S>> {
    if g.is_diagonal() {
        let d: Option<Vec<S>> = (0..g.rows()).map(|i| g[(i, i)].inverse()).collect();
        return d.map(|d| Mat::diagonal(&d)).ok_or_else(|| Error::Singular("Gram matrix".into()));
    }
    g.inverse().map_err(|_| Error::Singular("Gram matrix".into()))
}

/// `D* = conj(G_s⁻¹ Dᵀ G_t)`, the adjoint of `D: (p,q) → target` for `⟨x,y⟩ = xᵀ G ȳ`.
pub fn adjoint_matrix<S: Scalar>(d: &Mat<S>, gram_source: &Mat<S>, gram_target: &Mat<S>) -> Result<Mat<S>> {
    Ok(gram_inverse(gram_source)?.mul(&d.transpose()).mul(gram_target).conj())
}

/// Matrix of `∂*` or `∂̄*` from the target block of `op` on (p,q) back to (p,q).
pub fn codifferential<S: Scalar>(bc: &Bicomplex, hodge: &Hodge<S>, op: Op, p: usize, q: usize) -> Result<Mat<S>> {
    let block = bc.block(op, p, q);
    let d = block.to_dense().map(|x| S::from_field(x));
    let (tp, tq) = block.target;
    if block.rows == 0 {
        return Ok(Mat::zeros(block.cols(), 0));
    }
    adjoint_matrix(&d, &hodge.gram(bc.basis(), p, q), &hodge.gram(bc.basis(), tp, tq))
}

/// Adjoints of ∂ and ∂̄ for every source bidegree.
#[derive(Clone, Debug)]
pub struct Adjoints<S> {
    /// `(source bidegree of the operator, ∂*, ∂̄*)`.
    pub blocks: Vec<((usize, usize), Mat<S>, Mat<S>)>,
}

pub fn codifferential_adjoints<S: Scalar>(bc: &Bicomplex, metric: &HermitianMetric<S>) -> Result<Adjoints<S>> {
    let hodge = Hodge::new(metric.matrix())?;
    let n = bc.n();
    let mut blocks = Vec::with_capacity((n + 1) * (n + 1));
    for p in 0..=n {
        for q in 0..=n {
            let del = codifferential(bc, &hodge, Op::Del, p, q)?;
            let delbar = codifferential(bc, &hodge, Op::Delbar, p, q)?;
            blocks.push(((p, q), del, delbar));
        }
    }
    Ok(Adjoints { blocks })
}

/// `τ = Σ_{k,j} c_kj φ̄^j` where `c_kj` is the `φ^k ∧ φ̄^j` coefficient of `∂̄φ^k`.
pub fn trace_form(bc: &Bicomplex) -> Form {
    let n = bc.n();
    let se = bc.equations();
    let mut tau = Form::zero(n);
    for k in 0..n {
        for j in 0..n {
            let m = crate::bicomplex::Monomial::from_indices(&[k], &[j]).expect("single generators");
            tau.add_term(crate::bicomplex::Monomial::anti_gen(j), se.delbar(k).coefficient(&m));
        }
    }
    tau
}

/// The Chern–Ricci form `−i∂∂̄ log ωⁿ` of any invariant metric: `i∂τ + conj(i∂τ)`.
///
/// `ωⁿ` is measured against holomorphic coordinates; the invariant (n,0)-form is not
/// holomorphic when `τ ≠ 0`, so the term is a fixed nonzero form.
pub fn chern_ricci_form(bc: &Bicomplex) -> Form {
    let x = bc.del(&trace_form(bc)).scale(&FieldElement::i());
    x.add(&x.conjugate()).expect("same n")
}

/// Precomputed data for `Ric^{1,1} = ρ_C − (∂∂*ω + conj(∂∂*ω))` on (1,1)-forms.
#[derive(Clone, Debug)]
pub struct RicciOperator<S> {
    n: usize,
    /// ∂ from (0,1) to (1,1).
    del01: Mat<S>,
    /// ∂∂̄ from (1,1) to (2,2).
    del_delbar11: Mat<S>,
    /// `(k, l)` of each (1,1) basis monomial `φ^k ∧ φ̄^l`.
    pairs: Vec<(usize, usize)>,
    /// Generator index of each (0,1) basis monomial.
    anti01: Vec<usize>,
    /// Coefficients of the Chern–Ricci form.
    chern: Mat<S>,
}

impl<S: Scalar> RicciOperator<S> {
    pub fn new(bc: &Bicomplex) -> Self {
        let conv = |x: &FieldElement| S::from_field(x);
        let pairs = bc
            .basis()
            .monomials(1, 1)
            .iter()
            .map(|m| (m.holo_indices()[0], m.anti_indices()[0]))
            .collect();
        RicciOperator {
            n: bc.n(),
            del01: bc.block(Op::Del, 0, 1).to_dense().map(conv),
            del_delbar11: bc.del_delbar(1, 1).to_dense().map(conv),
            pairs,
            anti01: bc.basis().monomials(0, 1).iter().map(|m| m.anti_indices()[0]).collect(),
            chern: form_to_coefficients(&chern_ricci_form(bc)).map(conv),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn vectorize(&self, x: &Mat<S>) -> Vec<S> {
        self.pairs.iter().map(|&(k, l)| x[(k, l)].clone()).collect()
    }

    fn matricize(&self, v: &[S]) -> Mat<S> {
        let mut x = Mat::zeros(self.n, self.n);
        for (&(k, l), c) in self.pairs.iter().zip(v) {
            x[(k, l)] = c.clone();
        }
        x
    }

    /// Coefficients `R_kl` of `Ric^{1,1} = Σ R_kl φ^k ∧ φ̄^l` for the metric `H`.
    ///
    /// The (1,1) Gram factors as `Γ ⊗ Γ̄`, so `G₁₁ w` is `Γ W Γᴴ` and `∂*ω = conj(G₀₁⁻¹ ∂ᵀ G₁₁ ω̄)`.
    pub fn ricci(&self, h: &Mat<S>) -> Result<Mat<S>> {
        let hodge = Hodge::new(h)?;
        let gamma = hodge.coframe_gram();
        let half_i = S::from_field(&(FieldElement::ratio(1, 2) * FieldElement::i()));
        let omega_bar = h.scale(&half_i).conj();
        let weighted = self.vectorize(&gamma.mul(&omega_bar).mul(&gamma.adjoint()));
        let g01 = Mat::from_fn(self.anti01.len(), self.anti01.len(), |i, j| gamma[(self.anti01[i], self.anti01[j])].conj());
        let rhs = self.del01.transpose().mul_vec(&weighted);
        let del_star: Vec<S> = gram_inverse(&g01)?.mul_vec(&rhs).iter().map(|x| x.conj()).collect();
        let u = self.matricize(&self.del01.mul_vec(&del_star));
        // conj(Σ u_kl φ^k ∧ φ̄^l) = −Σ ū_kl φ^l ∧ φ̄^k.
        Ok(self.chern.add(&u.adjoint()).sub(&u))
    }

    /// `dH/dt` for `∂ω/∂t = −Ric^{1,1}(ω)` with `ω = (i/2) Σ H_kl φ^k ∧ φ̄^l`.
    pub fn velocity(&self, h: &Mat<S>) -> Result<Mat<S>> {
        let two_i = S::from_field(&(FieldElement::from_i64(2) * FieldElement::i()));
        Ok(self.ricci(h)?.scale(&two_i))
    }

    /// `∂∂̄ω` as a vector in the (2,2) block.
    pub fn del_delbar(&self, h: &Mat<S>) -> Vec<S> {
        let half_i = S::from_field(&(FieldElement::ratio(1, 2) * FieldElement::i()));
        self.del_delbar11.mul_vec(&self.vectorize(&h.scale(&half_i)))
    }

    /// Coefficient matrix of a (1,1) block vector.
    pub fn block_to_coefficients(&self, v: &[S]) -> Mat<S> {
        self.matricize(v)
    }

    pub fn coefficients_to_block(&self, x: &Mat<S>) -> Vec<S> {
        self.vectorize(x)
    }
}

/// Bismut Ricci (1,1)-form of an exact metric.
pub fn bismut_ricci_11(bc: &Bicomplex, m: &ExactMetric) -> Result<Form> {
    let r = RicciOperator::<FieldElement>::new(bc).ricci(m.matrix())?;
    Ok(coefficients_to_form(&r))
}

/// Whether `∂∂̄ω = 0` exactly.
pub fn is_pluriclosed(bc: &Bicomplex, m: &ExactMetric) -> bool {
    bc.del(&bc.delbar(&m.kahler_form())).is_zero()
}

/// Euclidean norm of the (2,2) coefficients of `∂∂̄ω` for a float metric.
pub fn pluriclosed_residual(op: &RicciOperator<num_complex::Complex64>, h: &Mat<num_complex::Complex64>) -> f64 {
    op.del_delbar(h).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

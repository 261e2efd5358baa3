use num_complex::Complex64;

use crate::bicomplex::{Form, Monomial};
use crate::error::{Error, Result};
use crate::exactfield::FieldElement;
use crate::linalg::{Mat, Scalar};

/// Left-invariant Hermitian metric with `ω = (i/2) Σ H_kl φ^k ∧ φ̄^l`.
///
/// The scalar type tags the arithmetic mode: [`FieldElement`] is exact, [`Complex64`] is float.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMetric<S> {
    h: Mat<S>,
}

pub type ExactMetric = HermitianMetric<FieldElement>;
pub type FloatMetric = HermitianMetric<Complex64>;

impl<S: Scalar> HermitianMetric<S> {
    /// Requires `H` Hermitian and positive definite.
    pub fn new(h: Mat<S>) -> Result<Self> {
        if !h.is_square() {
            return Err(Error::NotPositive);
        }
        let h = hermitize(&h);
        if !h.is_positive_definite() {
            return Err(Error::NotPositive);
        }
        Ok(HermitianMetric { h })
    }

    pub fn diagonal(d: &[S]) -> Result<Self> {
        Self::new(Mat::diagonal(d))
    }

    pub fn n(&self) -> usize {
        self.h.rows()
    }

    pub fn matrix(&self) -> &Mat<S> {
        &self.h
    }

    pub fn scaled(&self, c: &S) -> Result<Self> {
        Self::new(self.h.scale(c))
    }

    /// Coefficients `x_kl` of `ω = Σ x_kl φ^k ∧ φ̄^l`.
    pub fn kahler_coefficients(&self) -> Mat<S> {
        let half_i = S::from_field(&(FieldElement::ratio(1, 2) * FieldElement::i()));
        self.h.scale(&half_i)
    }

    pub fn to_float(&self) -> FloatMetric {
        HermitianMetric { h: self.h.map(|x| x.to_complex()) }
    }
}

/// `(A + Aᴴ)/2`; exact inputs that are already Hermitian are returned unchanged.
pub fn hermitize<S: Scalar>(a: &Mat<S>) -> Mat<S> {
    if a.is_hermitian() {
        return a.clone();
    }
    let half = S::from_field(&FieldElement::ratio(1, 2));
    a.add(&a.adjoint()).scale(&half)
}

impl ExactMetric {
    pub fn identity(n: usize) -> Self {
        HermitianMetric { h: Mat::identity(n) }
    }

    /// The Kähler form `ω` as an exact (1,1)-form.
    pub fn kahler_form(&self) -> Form {
        coefficients_to_form(&self.kahler_coefficients())
    }
}

/// Kähler form of an exact metric.
pub fn kahler_form(m: &ExactMetric) -> Form {
    m.kahler_form()
}

/// `Σ x_kl φ^k ∧ φ̄^l` from a coefficient matrix.
pub fn coefficients_to_form(x: &Mat<FieldElement>) -> Form {
    let n = x.rows();
    let mut f = Form::zero(n);
    for k in 0..n {
        for l in 0..n {
            f.add_term(Monomial::from_indices(&[k], &[l]).expect("single generators"), x[(k, l)].clone());
        }
    }
    f
}

/// Coefficient matrix of the (1,1)-component of a form.
pub fn form_to_coefficients(f: &Form) -> Mat<FieldElement> {
    let n = f.n();
    Mat::from_fn(n, n, |k, l| f.coefficient(&Monomial::from_indices(&[k], &[l]).expect("single generators")))
}

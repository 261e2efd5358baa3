use std::fmt::Debug;

use num_complex::Complex64;

use crate::exactfield::FieldElement;

/// Coefficient ring shared by the exact and floating-point code paths.
pub trait Scalar: Clone + Debug + PartialEq + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn inverse(&self) -> Option<Self>;
    fn conj(&self) -> Self;
    fn from_field(x: &FieldElement) -> Self;
    fn to_complex(&self) -> Complex64;
    /// Pivot preference during elimination; exact scalars only distinguish zero from nonzero.
    fn pivot_weight(&self) -> f64;
    /// Whether the value is real and strictly positive.
    fn is_positive_real(&self) -> bool;
}

impl Scalar for FieldElement {
    fn zero() -> Self {
        FieldElement::zero()
    }
    fn one() -> Self {
        FieldElement::one()
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn conj(&self) -> Self {
        FieldElement::conj(self)
    }
    fn from_field(x: &FieldElement) -> Self {
        x.clone()
    }
    fn to_complex(&self) -> Complex64 {
        self.to_complex_float()
    }
    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
    fn is_positive_real(&self) -> bool {
        self.is_real() && self.real_sign() == std::cmp::Ordering::Greater
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.inv())
        }
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn from_field(x: &FieldElement) -> Self {
        x.to_complex_float()
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn pivot_weight(&self) -> f64 {
        self.norm()
    }
    fn is_positive_real(&self) -> bool {
        self.re > 0.0 && self.im.abs() <= 1e-12 * self.re.max(1.0)
    }
}

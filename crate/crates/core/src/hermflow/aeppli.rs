use num_complex::Complex64;

use crate::bicomplex::{Bicomplex, Op};
use crate::exactfield::FieldElement;
use crate::linalg::sparse::Rref;
use crate::linalg::{Mat, Scalar};

use super::ricci::RicciOperator;

/// The subspace `im ∂ + im ∂̄` of (1,1)-forms, in exact reduced row-echelon form.
#[derive(Clone, Debug)]
pub struct AeppliExactness {
    rref: Rref,
    rows: Vec<Vec<(usize, Complex64)>>,
    pivots: Vec<usize>,
}

impl AeppliExactness {
    pub fn new(bc: &Bicomplex) -> Self {
        let rref = Rref::span_of(
            bc.block(Op::Del, 0, 1).columns.iter().chain(&bc.block(Op::Delbar, 1, 0).columns).cloned(),
        );
        let rows = rref
            .rows()
            .iter()
            .map(|r| r.iter().map(|(i, x)| (*i, Complex64::from_field(x))).collect())
            .collect();
        AeppliExactness { pivots: rref.pivot_columns(), rows, rref }
    }

    pub fn dim(&self) -> usize {
        self.rref.dim()
    }

    /// Whether the (1,1) block vector `v` is `∂α + ∂̄β`.
    pub fn contains(&self, v: &[FieldElement]) -> bool {
        let sparse = v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect();
        self.rref.reduce(sparse).is_empty()
    }

    /// `‖v − P v‖ / ‖v‖`, where `P` eliminates the pivot coordinates of the exact row basis.
    pub fn residual(&self, v: &[Complex64]) -> f64 {
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            for (i, x) in row {
                r[*i] -= c * x;
            }
        }
        r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() / norm
    }

    /// Residual of the flow velocity `−Ric^{1,1}(H)`.
    pub fn velocity_residual(&self, op: &RicciOperator<Complex64>, h: &Mat<Complex64>) -> crate::error::Result<f64> {
        Ok(self.residual(&op.coefficients_to_block(&op.velocity(h)?)))
    }
}

use std::cmp::Ordering;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::model::{unit, LieAlgebraModel};
use crate::error::{Error, Result};
use crate::exactfield::FieldElement;
use crate::linalg::sparse;

/// A root of the torus action together with a root vector.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootDatum {
    /// `α(H_j)` for each torus generator `H_j`.
    pub root: Vec<FieldElement>,
    pub eigenvector: Vec<FieldElement>,
    pub positive: bool,
}

const MAX_DENOMINATOR: i64 = 48;
const RECOGNITION_TOL: f64 = 1e-8;

/// Simultaneous eigen-decomposition of `ad` on the torus.
///
/// Eigenvalues are located numerically, recognized in ℚ(i,√3), and the root spaces are
/// computed as exact joint kernels. Positivity is lexicographic on
/// `(Im α₁, Im α₂, …, Re α₁, Re α₂, …)`.
pub fn root_decomposition(model: &LieAlgebraModel) -> Result<Vec<RootDatum>> {
    let dim = model.dim();
    let torus = model.torus();
    let ads: Vec<_> = torus.iter().map(|&t| model.ad(&unit(dim, t))).collect();
    let mut spectra = Vec::with_capacity(ads.len());
    for ad in &ads {
        let m = DMatrix::<Complex64>::from_fn(dim, dim, |i, j| ad[(i, j)].to_complex_float());
        let ev = m
            .schur()
            .eigenvalues()
            .ok_or_else(|| Error::RootsOutsideField("eigenvalue computation failed".into()))?;
        let mut values: Vec<FieldElement> = Vec::new();
        for z in ev.iter() {
            let x = FieldElement::recognize(*z, MAX_DENOMINATOR, RECOGNITION_TOL)
                .ok_or_else(|| Error::RootsOutsideField(format!("eigenvalue {z}")))?;
            if !values.contains(&x) {
                values.push(x);
            }
        }
        spectra.push(values);
    }
    let mut tuples: Vec<Vec<FieldElement>> = vec![Vec::new()];
    for values in &spectra {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                values.iter().map(move |v| {
                    let mut t = t.clone();
                    t.push(v.clone());
                    t
                })
            })
            .collect();
    }
    let mut roots = Vec::new();
    let mut total = 0;
    for alpha in tuples {
        let columns: Vec<_> = (0..dim)
            .map(|j| {
                let mut col = Vec::new();
                for (s, ad) in ads.iter().enumerate() {
                    for i in 0..dim {
                        let mut x = ad[(i, j)].clone();
                        if i == j {
                            x -= &alpha[s];
                        }
                        if !x.is_zero() {
                            col.push((s * dim + i, x));
                        }
                    }
                }
                col
            })
            .collect();
        let kernel = sparse::kernel(&columns, dim * ads.len());
        total += kernel.len();
        if alpha.iter().all(|a| a.is_zero()) {
            continue;
        }
        for v in kernel {
            let lead = v[0].1.inv()?;
            let mut e = vec![FieldElement::zero(); dim];
            for (i, x) in v {
                e[i] = &x * &lead;
            }
            let positive = is_positive(&alpha);
            roots.push(RootDatum { root: alpha.clone(), eigenvector: e, positive });
        }
    }
    if total != dim {
        return Err(Error::RootsOutsideField(format!("weight spaces span {total} of {dim} dimensions")));
    }
    roots.sort_by(|a, b| {
        b.positive.cmp(&a.positive).then_with(|| compare_roots(&a.root, &b.root))
    });
    Ok(roots)
}

fn is_positive(alpha: &[FieldElement]) -> bool {
    let signs = alpha.iter().map(|a| a.imag_sign()).chain(alpha.iter().map(|a| a.real_sign()));
    for s in signs {
        match s {
            Ordering::Greater => return true,
            Ordering::Less => return false,
            Ordering::Equal => {}
        }
    }
    false
}

fn compare_roots(a: &[FieldElement], b: &[FieldElement]) -> Ordering {
    let key = |v: &[FieldElement]| v.iter().map(|x| x.to_complex_float()).collect::<Vec<_>>();
    let (ka, kb) = (key(a), key(b));
    for (x, y) in ka.iter().zip(&kb) {
        let c = x.im.total_cmp(&y.im).then(x.re.total_cmp(&y.re));
        if c != Ordering::Equal {
            return c;
        }
    }
    Ordering::Equal
}

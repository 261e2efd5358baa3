use serde::Serialize;

use crate::bicomplex::{Form, Monomial};
use crate::error::{Error, Result};
use crate::exactfield::FieldElement;
use crate::liealg::StructureEquations;
use crate::linalg::Mat;

use super::metric::ExactMetric;

/// The Bismut connection of a left-invariant Hermitian structure in the complex frame
/// `W_1 … W_n, W̄_1 … W̄_n`.
#[derive(Clone, Debug, Serialize)]
pub struct BismutCurvature {
    /// Real dimension `2n`.
    pub dim: usize,
    /// Sign in front of `½ Jdω` that makes the connection Hermitian.
    pub torsion_sign: i8,
    pub metric_compatible: bool,
    pub complex_compatible: bool,
    /// `T(a,b,c) = g(∇_a b − ∇_b a − [a,b], c)` equals `s·Jdω(a,b,c)`.
    pub torsion_is_jdw: bool,
    /// Number of nonzero curvature components `R^e_{abc}`.
    pub nonzero_components: usize,
    /// Largest modulus among the curvature components.
    pub max_component: f64,
    #[serde(skip)]
    pub components: Vec<FieldElement>,
}

impl BismutCurvature {
    pub fn is_flat(&self) -> bool {
        self.nonzero_components == 0
    }

    /// `R^e_{abc}` with `R(W_a, W_b) W_c = Σ_e R^e_{abc} W_e`.
    pub fn component(&self, a: usize, b: usize, c: usize, e: usize) -> &FieldElement {
        let d = self.dim;
        &self.components[((a * d + b) * d + c) * d + e]
    }
}

struct Frame {
    m: usize,
    n: usize,
    /// `[W_a, W_b] = Σ_c bracket[c][a][b] W_c`.
    bracket: Vec<Vec<Vec<FieldElement>>>,
    g: Mat<FieldElement>,
    g_inv: Mat<FieldElement>,
    omega: Mat<FieldElement>,
}

impl Frame {
    fn new(se: &StructureEquations, metric: &ExactMetric) -> Result<Self> {
        let n = se.n();
        if metric.n() != n {
            return Err(Error::MismatchedN(metric.n(), n));
        }
        let m = 2 * n;
        let h = metric.matrix();
        let half = FieldElement::ratio(1, 2);
        let half_i = &half * &FieldElement::i();
        let mut g = Mat::zeros(m, m);
        let mut omega = Mat::zeros(m, m);
        for k in 0..n {
            for l in 0..n {
                let x = &h[(k, l)] * &half;
                g[(k, n + l)] = x.clone();
                g[(n + l, k)] = x;
                let w = &h[(k, l)] * &half_i;
                omega[(n + l, k)] = -&w;
                omega[(k, n + l)] = w;
            }
        }
        let g_inv = g.inverse().map_err(|_| Error::Singular("metric".into()))?;
        Ok(Frame { m, n, bracket: se.dual_structure_constants(), g, g_inv, omega })
    }

    /// `J W_a = j_a W_a`.
    fn j(&self, a: usize) -> FieldElement {
        if a < self.n {
            FieldElement::i()
        } else {
            -FieldElement::i()
        }
    }

    fn pair_bracket(&self, form: &Mat<FieldElement>, a: usize, b: usize, c: usize) -> FieldElement {
        (0..self.m)
            .filter(|&e| !self.bracket[e][a][b].is_zero())
            .map(|e| &self.bracket[e][a][b] * &form[(e, c)])
            .sum()
    }

    fn d_omega(&self, a: usize, b: usize, c: usize) -> FieldElement {
        let w = &self.omega;
        -self.pair_bracket(w, a, b, c) + self.pair_bracket(w, a, c, b) - self.pair_bracket(w, b, c, a)
    }

    fn jdw(&self, a: usize, b: usize, c: usize) -> FieldElement {
        -(&(&(&self.j(a) * &self.j(b)) * &self.j(c)) * &self.d_omega(a, b, c))
    }

    fn koszul(&self, a: usize, b: usize, c: usize) -> FieldElement {
        let g = &self.g;
        let s = self.pair_bracket(g, a, b, c) - self.pair_bracket(g, b, c, a) + self.pair_bracket(g, c, a, b);
        &s * &FieldElement::ratio(1, 2)
    }

    /// `Γ_abc = g(∇_a W_b, W_c)`.
    fn lowered(&self, sign: i64) -> Vec<FieldElement> {
        let m = self.m;
        let half = FieldElement::ratio(sign, 2);
        let mut out = Vec::with_capacity(m * m * m);
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    out.push(self.koszul(a, b, c) + &half * &self.jdw(a, b, c));
                }
            }
        }
        out
    }

    fn complex_compatible(&self, low: &[FieldElement]) -> bool {
        let m = self.m;
        let same = |b: usize, c: usize| (b < self.n) == (c < self.n);
        (0..m).all(|a| (0..m).all(|b| (0..m).all(|c| !same(b, c) || low[(a * m + b) * m + c].is_zero())))
    }
}

/// Bismut connection `g(∇_x y, z) = g(∇^{LC}_x y, z) + ½ Jdω(x,y,z)` and its curvature.
///
/// The sign in front of the torsion term is the one for which `∇J = 0`; both signs are tried.
pub fn bismut_curvature(se: &StructureEquations, metric: &ExactMetric) -> Result<BismutCurvature> {
    let f = Frame::new(se, metric)?;
    let m = f.m;
    let (sign, low) = [1i64, -1]
        .into_iter()
        .map(|s| (s, f.lowered(s)))
        .find(|(_, low)| f.complex_compatible(low))
        .ok_or_else(|| Error::Structure("no torsion sign gives a Hermitian connection".into()))?;
    let metric_compatible = (0..m).all(|a| {
        (0..m).all(|b| (0..m).all(|c| (&low[(a * m + b) * m + c] + &low[(a * m + c) * m + b]).is_zero()))
    });
    // Γ^e_ab with ∇_a W_b = Σ_e Γ^e_ab W_e.
    let mut gamma = vec![FieldElement::zero(); m * m * m];
    for a in 0..m {
        for b in 0..m {
            for e in 0..m {
                gamma[(a * m + b) * m + e] =
                    (0..m).map(|c| &low[(a * m + b) * m + c] * &f.g_inv[(c, e)]).sum();
            }
        }
    }
    let gm = |a: usize, b: usize, e: usize| &gamma[(a * m + b) * m + e];
    let s = FieldElement::from_i64(sign);
    let mut torsion_is_jdw = true;
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                let t = &low[(a * m + b) * m + c] - &low[(b * m + a) * m + c] - f.pair_bracket(&f.g, a, b, c);
                if t != &s * &f.jdw(a, b, c) {
                    torsion_is_jdw = false;
                }
            }
        }
    }
    let mut components = Vec::with_capacity(m * m * m * m);
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for e in 0..m {
                    let mut r = FieldElement::zero();
                    for d in 0..m {
                        r += &(gm(b, c, d) * gm(a, d, e));
                        r -= &(gm(a, c, d) * gm(b, d, e));
                        let cm = &f.bracket[d][a][b];
                        if !cm.is_zero() {
                            r -= &(cm * gm(d, c, e));
                        }
                    }
                    components.push(r);
                }
            }
        }
    }
    let nonzero_components = components.iter().filter(|x| !x.is_zero()).count();
    let max_component = components.iter().map(|x| x.to_complex_float().norm()).fold(0.0, f64::max);
    Ok(BismutCurvature {
        dim: m,
        torsion_sign: sign as i8,
        metric_compatible,
        complex_compatible: true,
        torsion_is_jdw,
        nonzero_components,
        max_component,
        components,
    })
}

/// Ricci form `ρ(W_a, W_b) = i Σ_k R^k_{abk}`, the curvature of the connection induced on `K⁻¹`.
pub fn bismut_ricci_form(se: &StructureEquations, metric: &ExactMetric) -> Result<Form> {
    let n = se.n();
    let r = bismut_curvature(se, metric)?;
    let mut f = Form::zero(n);
    for a in 0..2 * n {
        for b in a + 1..2 * n {
            let trace: FieldElement = (0..n).map(|k| r.component(a, b, k, k).clone()).sum();
            let (mut holo, mut anti) = (Vec::new(), Vec::new());
            for s in [a, b] {
                if s < n {
                    holo.push(s);
                } else {
                    anti.push(s - n);
                }
            }
            let m = Monomial::from_indices(&holo, &anti).expect("distinct slots");
            f.add_term(m, &trace * &FieldElement::i());
        }
    }
    Ok(f)
}

use super::{Basis, Form, Monomial};
use crate::error::{Error, Result};
use crate::exactfield::FieldElement;
use crate::hermflow::HermitianMetric;
use crate::linalg::{Mat, Scalar};

/// Inner products and the ℂ-linear Hodge star induced by a Hermitian metric.
///
/// With `ω = (i/2) Σ H_kl φ^k ∧ φ̄^l`, the coframe Gram is `⟨φ^k, φ^l⟩ = 2 (H⁻¹)_lk`,
/// extended to monomials by determinants. Products are linear in the first slot.
#[derive(Clone, Debug)]
pub struct Hodge<S> {
    n: usize,
    gamma: Mat<S>,
    gamma_conj: Mat<S>,
    diagonal: bool,
    volume: S,
}

impl<S: Scalar> Hodge<S> {
    pub fn new(h: &Mat<S>) -> Result<Self> {
        let n = h.rows();
        let inv = h.inverse().map_err(|_| Error::Singular("metric".into()))?;
        let two = S::one().plus(&S::one());
        let gamma = inv.transpose().scale(&two);
        let gamma_conj = gamma.conj();
        let half_i = S::from_field(&FieldElement::ratio(1, 2)).times(&S::from_field(&FieldElement::i()));
        let mut volume = h.det();
        for _ in 0..n {
            volume = volume.times(&half_i);
        }
        if (n * n.saturating_sub(1) / 2) % 2 == 1 {
            volume = volume.negate();
        }
        Ok(Hodge { n, diagonal: gamma.is_diagonal(), gamma, gamma_conj, volume })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Coframe Gram `Γ_kl = ⟨φ^k, φ^l⟩`.
    pub fn coframe_gram(&self) -> &Mat<S> {
        &self.gamma
    }

    /// Coefficient of `ωⁿ/n!` on the top monomial `φ^{1…n} ∧ φ̄^{1…n}`.
    pub fn volume(&self) -> &S {
        &self.volume
    }

    pub fn monomial_inner(&self, a: &Monomial, b: &Monomial) -> S {
        if a.bidegree() != b.bidegree() {
            return S::zero();
        }
        if self.diagonal {
            if a != b {
                return S::zero();
            }
            let mut acc = S::one();
            for k in a.holo_indices() {
                acc = acc.times(&self.gamma[(k, k)]);
            }
            for k in a.anti_indices() {
                acc = acc.times(&self.gamma_conj[(k, k)]);
            }
            return acc;
        }
        let h = self.gamma.submatrix(&a.holo_indices(), &b.holo_indices()).det();
        let c = self.gamma_conj.submatrix(&a.anti_indices(), &b.anti_indices()).det();
        h.times(&c)
    }

    /// Gram matrix of the (p,q) block in the order of `basis`.
    pub fn gram(&self, basis: &Basis, p: usize, q: usize) -> Mat<S> {
        let ms = basis.monomials(p, q);
        Mat::from_fn(ms.len(), ms.len(), |i, j| self.monomial_inner(&ms[i], &ms[j]))
    }
}

impl Hodge<FieldElement> {
    /// `⟨x, y⟩`, linear in `x` and conjugate-linear in `y`.
    pub fn inner(&self, x: &Form, y: &Form) -> FieldElement {
        let mut acc = FieldElement::zero();
        for (a, c) in x.terms() {
            for (b, d) in y.terms() {
                let g = self.monomial_inner(a, b);
                if !g.is_zero() {
                    acc += &(&(c * &d.conj()) * &g);
                }
            }
        }
        acc
    }

    /// The ℂ-linear star, defined by `x ∧ ∗z = ⟨x, z̄⟩ vol`; maps (p,q) to (n−q,n−p).
    pub fn star(&self, z: &Form) -> Form {
        let n = self.n;
        let zc = z.conjugate();
        let top = Monomial::top(n);
        let mut out = Form::zero(n);
        for (p, q) in z.bidegrees() {
            let part = zc.component(q, p);
            for m in super::canonical_monomials(n, q, p) {
                let ip = self.inner(&Form::monomial(n, m, FieldElement::one()), &part);
                if ip.is_zero() {
                    continue;
                }
                let u = m.complement(n);
                let (neg, t) = m.wedge(&u).expect("complementary monomials");
                debug_assert_eq!(t, top);
                let c = &ip * &self.volume;
                out.add_term(u, if neg { -c } else { c });
            }
        }
        out
    }
}

/// Hodge star of an exact metric.
pub fn hodge_star(metric: &HermitianMetric<FieldElement>, x: &Form) -> Result<Form> {
    Ok(Hodge::new(metric.matrix())?.star(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicomplex::canonical_monomials;

    fn identity(n: usize) -> Hodge<FieldElement> {
        Hodge::new(&Mat::identity(n)).unwrap()
    }

    fn omega(n: usize) -> Form {
        let mut w = Form::zero(n);
        for k in 0..n {
            w.add_term(Monomial::from_indices(&[k], &[k]).unwrap(), FieldElement::ratio(1, 2) * FieldElement::i());
        }
        w
    }

    #[test]
    fn star_of_one_is_volume() {
        let n = 4;
        let h = identity(n);
        let w = omega(n);
        let mut wn = Form::one(n);
        for _ in 0..n {
            wn = wn.wedge(&w).unwrap();
        }
        let vol = wn.scale(&FieldElement::ratio(1, 24));
        assert_eq!(h.star(&Form::one(n)), vol);
    }

    #[test]
    fn star_of_kahler_pair_is_positive() {
        let n = 4;
        let h = identity(n);
        let x = Form::monomial(n, Monomial::from_indices(&[0], &[0]).unwrap(), FieldElement::one());
        let s = h.star(&x);
        let u = Monomial::from_indices(&[1, 2, 3], &[1, 2, 3]).unwrap();
        assert_eq!(s.len(), 1);
        let c = s.coefficient(&u);
        assert!(c.is_real() && c.real_sign().is_gt(), "{c}");
    }

    #[test]
    fn star_squared_is_sign_on_all_monomials() {
        let n = 4;
        let weights = Mat::diagonal(&[1, 2, 3, 5].map(FieldElement::from_i64));
        for h in [identity(n), Hodge::new(&weights).unwrap()] {
            for p in 0..=n {
                for q in 0..=n {
                    for m in canonical_monomials(n, p, q) {
                        let x = Form::monomial(n, m, FieldElement::one());
                        let k = p + q;
                        let expected = if k % 2 == 1 { x.neg() } else { x.clone() };
                        assert_eq!(h.star(&h.star(&x)), expected, "{m}");
                    }
                }
            }
        }
    }

    #[test]
    fn defining_identity_with_offdiagonal_metric() {
        let n = 3;
        let i = FieldElement::i();
        let mut hm = Mat::identity(n);
        hm[(0, 0)] = FieldElement::from_i64(2);
        hm[(0, 1)] = i.clone();
        hm[(1, 0)] = -&i;
        let h = Hodge::new(&hm).unwrap();
        let top = Monomial::top(n);
        let vol = Form::monomial(n, top, h.volume().clone());
        let x = Form::parse(n, "[1|2] + 2[2|1] - i[3|3]").unwrap();
        let y = Form::parse(n, "i[1|1] + [2|2] + [1|3]").unwrap();
        let lhs = x.wedge(&h.star(&y.conjugate())).unwrap();
        assert_eq!(lhs, vol.scale(&h.inner(&x, &y)));
        let g = h.gram(&Basis::canonical(n), 1, 1);
        assert!(g.is_hermitian());
        assert!(g.is_positive_definite());
    }
}

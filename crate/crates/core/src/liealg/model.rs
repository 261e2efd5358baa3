use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactfield::FieldElement;
use crate::linalg::sparse::{self, SparseVec};
use crate::linalg::Mat;

/// How the (1,0) coframe is obtained from the (1,0) frame `v_1 … v_n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum CoframeRule {
    /// `φ^k = scale · ⟨v_k, ·⟩` with the model pairing.
    PairingDual { scale: FieldElement },
    /// `φ^k(scale·v_j) = δ_kj` and `φ^k(scale·v̄_j) = 0`.
    DualBasis { scale: FieldElement },
}

impl Default for CoframeRule {
    fn default() -> Self {
        CoframeRule::DualBasis { scale: FieldElement::one() }
    }
}

/// A Lie algebra in a fixed frame `e_1 … e_dim`, possibly complex.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebraModel {
    name: String,
    dim: usize,
    brackets: Vec<Vec<SparseVec>>,
    torus: Vec<usize>,
    pairing: Mat<FieldElement>,
    conjugation: Mat<FieldElement>,
    coframe: CoframeRule,
}

/// Outcome of the Jacobi scan.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JacobiReport {
    pub passed: bool,
    /// Zero-based frame triples `(i, j, k)` with a nonzero Jacobiator.
    pub violations: Vec<(usize, usize, usize)>,
}

impl LieAlgebraModel {
    /// Builds a model from `[e_i, e_j] = Σ c^k_ij e_k` given for some pairs; the rest follows by antisymmetry.
    ///
    /// The pairing defaults to `−tr(ad x ad y)` and the conjugation to the identity (a real frame).
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        brackets: &[(usize, usize, Vec<(usize, FieldElement)>)],
        torus: Vec<usize>,
    ) -> Result<Self> {
        let mut table = vec![vec![Vec::new(); dim]; dim];
        let mut set = vec![vec![false; dim]; dim];
        for (i, j, terms) in brackets {
            let (i, j) = (*i, *j);
            if i >= dim || j >= dim || terms.iter().any(|(k, _)| *k >= dim) {
                return Err(Error::InvalidModel(format!("bracket index outside 0..{dim}")));
            }
            let v = sparse::normalize(terms.clone());
            let neg: SparseVec = v.iter().map(|(k, c)| (*k, -c)).collect();
            if i == j {
                if !v.is_empty() {
                    return Err(Error::InvalidModel(format!("[e{0}, e{0}] must vanish", i + 1)));
                }
                continue;
            }
            for (a, b, w) in [(i, j, &v), (j, i, &neg)] {
                if set[a][b] && table[a][b] != *w {
                    return Err(Error::InvalidModel(format!(
                        "inconsistent brackets for e{} and e{}",
                        a + 1,
                        b + 1
                    )));
                }
                table[a][b] = w.clone();
                set[a][b] = true;
            }
        }
        if torus.iter().any(|&t| t >= dim) {
            return Err(Error::InvalidModel("torus index outside the frame".into()));
        }
        let mut m = LieAlgebraModel {
            name: name.into(),
            dim,
            brackets: table,
            torus,
            pairing: Mat::zeros(dim, dim),
            conjugation: Mat::identity(dim),
            coframe: CoframeRule::default(),
        };
        m.pairing = m.killing_pairing();
        Ok(m)
    }

    pub fn with_pairing(mut self, pairing: Mat<FieldElement>) -> Result<Self> {
        if pairing.rows() != self.dim || pairing.cols() != self.dim || pairing != pairing.transpose() {
            return Err(Error::InvalidModel("pairing must be a symmetric dim×dim matrix".into()));
        }
        self.pairing = pairing;
        Ok(self)
    }

    /// Sets the conjugation `τ(v) = T · v̄` of the real form.
    pub fn with_conjugation(mut self, t: Mat<FieldElement>) -> Result<Self> {
        if t.rows() != self.dim || t.cols() != self.dim || t.mul(&t.conj()) != Mat::identity(self.dim) {
            return Err(Error::InvalidModel("conjugation must satisfy T·T̄ = 1".into()));
        }
        self.conjugation = t;
        Ok(self)
    }

    pub fn with_coframe(mut self, rule: CoframeRule) -> Self {
        self.coframe = rule;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn torus(&self) -> &[usize] {
        &self.torus
    }

    pub fn pairing(&self) -> &Mat<FieldElement> {
        &self.pairing
    }

    pub fn conjugation(&self) -> &Mat<FieldElement> {
        &self.conjugation
    }

    pub fn coframe(&self) -> &CoframeRule {
        &self.coframe
    }

    /// Structure constant `c^k_ij`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> FieldElement {
        sparse::get(&self.brackets[i][j], k).cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.brackets[i][j]
    }

    pub fn bracket(&self, x: &[FieldElement], y: &[FieldElement]) -> Vec<FieldElement> {
        let mut out = vec![FieldElement::zero(); self.dim];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() || self.brackets[i][j].is_empty() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &self.brackets[i][j] {
                    out[*k] += &(&ab * c);
                }
            }
        }
        out
    }

    /// Matrix of `ad x` acting on column vectors.
    pub fn ad(&self, x: &[FieldElement]) -> Mat<FieldElement> {
        let mut m = Mat::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.bracket(x, &unit(self.dim, j));
            for (i, c) in col.into_iter().enumerate() {
                m[(i, j)] = c;
            }
        }
        m
    }

    /// `−tr(ad e_i ad e_j)`, positive definite on compact real forms.
    pub fn killing_pairing(&self) -> Mat<FieldElement> {
        let ads: Vec<Mat<FieldElement>> = (0..self.dim).map(|i| self.ad(&unit(self.dim, i))).collect();
        Mat::from_fn(self.dim, self.dim, |i, j| {
            let mut t = FieldElement::zero();
            for a in 0..self.dim {
                for b in 0..self.dim {
                    let x = &ads[i][(a, b)];
                    if !x.is_zero() {
                        t += &(x * &ads[j][(b, a)]);
                    }
                }
            }
            -t
        })
    }

    /// Bilinear pairing of two vectors.
    pub fn pair(&self, x: &[FieldElement], y: &[FieldElement]) -> FieldElement {
        let py = self.pairing.mul_vec(y);
        x.iter().zip(&py).map(|(a, b)| a * b).sum()
    }

    /// `τ(v) = T · v̄`.
    pub fn conjugate_vector(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        let c: Vec<FieldElement> = v.iter().map(|x| x.conj()).collect();
        self.conjugation.mul_vec(&c)
    }

    pub fn check_jacobi(&self) -> JacobiReport {
        let mut violations = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let (ei, ej, ek) = (unit(self.dim, i), unit(self.dim, j), unit(self.dim, k));
                    let a = self.bracket(&ei, &self.bracket(&ej, &ek));
                    let b = self.bracket(&ej, &self.bracket(&ek, &ei));
                    let c = self.bracket(&ek, &self.bracket(&ei, &ej));
                    if a.iter().zip(&b).zip(&c).any(|((x, y), z)| !(&(x + y) + z).is_zero()) {
                        violations.push((i, j, k));
                    }
                }
            }
        }
        JacobiReport { passed: violations.is_empty(), violations }
    }

    /// Frame triples where `⟨[x,y],z⟩ + ⟨y,[x,z]⟩ ≠ 0`.
    pub fn pairing_violations(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.dim {
            for y in 0..self.dim {
                for z in y..self.dim {
                    let (ex, ey, ez) = (unit(self.dim, x), unit(self.dim, y), unit(self.dim, z));
                    let s = &self.pair(&self.bracket(&ex, &ey), &ez) + &self.pair(&ey, &self.bracket(&ex, &ez));
                    if !s.is_zero() {
                        out.push((x, y, z));
                    }
                }
            }
        }
        out
    }

    /// Whether the conjugation is a Lie algebra automorphism.
    pub fn conjugation_is_automorphism(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let (ei, ej) = (unit(self.dim, i), unit(self.dim, j));
                self.conjugate_vector(&self.bracket(&ei, &ej))
                    == self.bracket(&self.conjugate_vector(&ei), &self.conjugate_vector(&ej))
            })
        })
    }

    /// Full consistency check: Jacobi, pairing invariance, commuting torus, conjugation.
    pub fn validate(&self) -> Result<()> {
        let j = self.check_jacobi();
        if let Some(&(a, b, c)) = j.violations.first() {
            return Err(Error::InvalidModel(format!(
                "Jacobi identity fails on (e{}, e{}, e{})",
                a + 1,
                b + 1,
                c + 1
            )));
        }
        if let Some(&(a, b, c)) = self.pairing_violations().first() {
            return Err(Error::InvalidModel(format!(
                "pairing is not ad-invariant on (e{}, e{}, e{})",
                a + 1,
                b + 1,
                c + 1
            )));
        }
        for &s in &self.torus {
            for &t in &self.torus {
                if !self.brackets[s][t].is_empty() {
                    return Err(Error::InvalidModel(format!("torus elements e{} and e{} do not commute", s + 1, t + 1)));
                }
            }
        }
        if !self.conjugation_is_automorphism() {
            return Err(Error::InvalidModel("conjugation is not an automorphism".into()));
        }
        Ok(())
    }

    pub fn to_file(&self) -> ModelFile {
        let mut brackets = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                if self.brackets[i][j].is_empty() {
                    continue;
                }
                brackets.push(BracketEntry {
                    i: i + 1,
                    j: j + 1,
                    terms: self.brackets[i][j].iter().map(|(k, c)| BracketTerm { k: k + 1, coeff: c.clone() }).collect(),
                });
            }
        }
        let rows = |m: &Mat<FieldElement>| (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
        ModelFile {
            name: self.name.clone(),
            dim: self.dim,
            torus: self.torus.iter().map(|t| t + 1).collect(),
            brackets,
            pairing: Some(rows(&self.pairing)),
            conjugation: (self.conjugation != Mat::identity(self.dim)).then(|| rows(&self.conjugation)),
            coframe: Some(self.coframe.clone()),
        }
    }

    pub fn from_file(f: &ModelFile) -> Result<Self> {
        let dim = f.dim;
        let idx = |i: usize| -> Result<usize> {
            if i == 0 || i > dim {
                Err(Error::InvalidModel(format!("index {i} outside 1..={dim}")))
            } else {
                Ok(i - 1)
            }
        };
        let mut brackets = Vec::new();
        for b in &f.brackets {
            let terms = b.terms.iter().map(|t| Ok((idx(t.k)?, t.coeff.clone()))).collect::<Result<Vec<_>>>()?;
            brackets.push((idx(b.i)?, idx(b.j)?, terms));
        }
        let torus = f.torus.iter().map(|&t| idx(t)).collect::<Result<Vec<_>>>()?;
        let mut m = Self::new(f.name.clone(), dim, &brackets, torus)?;
        let square = |rows: &Vec<Vec<FieldElement>>, what: &str| -> Result<Mat<FieldElement>> {
            if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                return Err(Error::InvalidModel(format!("{what} must be {dim}×{dim}")));
            }
            Ok(Mat::from_rows(rows.clone()))
        };
        if let Some(p) = &f.pairing {
            m = m.with_pairing(square(p, "pairing")?)?;
        }
        if let Some(t) = &f.conjugation {
            m = m.with_conjugation(square(t, "conjugation")?)?;
        }
        if let Some(c) = &f.coframe {
            m = m.with_coframe(c.clone());
        }
        Ok(m)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_file(&serde_json::from_str(s)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serializable")
    }
}

/// JSON model description; indices are 1-based.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelFile {
    pub name: String,
    pub dim: usize,
    pub torus: Vec<usize>,
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing: Option<Vec<Vec<FieldElement>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjugation: Option<Vec<Vec<FieldElement>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coframe: Option<CoframeRule>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<BracketTerm>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BracketTerm {
    pub k: usize,
    pub coeff: FieldElement,
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<FieldElement> {
    let mut v = vec![FieldElement::zero(); n];
    v[i] = FieldElement::one();
    v
}

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Monomial;
use crate::error::{Error, Result};
use crate::exactfield::FieldElement;

/// Sparse sum of monomials with exact coefficients on `n` complex generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    n: usize,
    terms: BTreeMap<Monomial, FieldElement>,
}

/// One term of the JSON encoding; generator indices are 1-based.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormTerm {
    pub holo: Vec<usize>,
    pub anti: Vec<usize>,
    pub coeff: FieldElement,
}

impl Serialize for Form {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_terms().serialize(s)
    }
}

impl Form {
    pub fn zero(n: usize) -> Self {
        Form { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, Monomial::ONE, FieldElement::one())
    }

    pub fn monomial(n: usize, m: Monomial, c: FieldElement) -> Self {
        let mut f = Self::zero(n);
        f.add_term(m, c);
        f
    }

    /// The (1,0) generator φ^k (zero-based `k`).
    pub fn phi(n: usize, k: usize) -> Self {
        Self::monomial(n, Monomial::holo_gen(k), FieldElement::one())
    }

    /// The (0,1) generator φ̄^k (zero-based `k`).
    pub fn phibar(n: usize, k: usize) -> Self {
        Self::monomial(n, Monomial::anti_gen(k), FieldElement::one())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        debug_assert!(m.holo >> self.n == 0 && m.anti >> self.n == 0, "generator out of range");
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += &c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_n(&self, o: &Form) -> Result<()> {
        if self.n != o.n {
            Err(Error::MismatchedN(self.n, o.n))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, o: &Form) -> Result<Form> {
        self.check_n(o)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Form) -> Result<Form> {
        self.add(&o.scale(&FieldElement::from_i64(-1)))
    }

    pub fn scale(&self, c: &FieldElement) -> Form {
        if c.is_zero() {
            return Form::zero(self.n);
        }
        Form { n: self.n, terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn neg(&self) -> Form {
        self.scale(&FieldElement::from_i64(-1))
    }

    pub fn wedge(&self, o: &Form) -> Result<Form> {
        self.check_n(o)?;
        let mut out = Form::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                if let Some((neg, m)) = m1.wedge(m2) {
                    let c = c1 * c2;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Complex conjugate; maps bidegree (p,q) to (q,p).
    pub fn conjugate(&self) -> Form {
        let mut out = Form::zero(self.n);
        for (m, c) in &self.terms {
            let (neg, mc) = m.conjugate();
            let c = c.conj();
            out.add_term(mc, if neg { -c } else { c });
        }
        out
    }

    pub fn component(&self, p: usize, q: usize) -> Form {
        Form {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.bidegree() == (p, q))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn bidegrees(&self) -> BTreeSet<(usize, usize)> {
        self.terms.keys().map(|m| m.bidegree()).collect()
    }

    /// Bidegree of a nonzero homogeneous form.
    pub fn homogeneous_bidegree(&self) -> Option<(usize, usize)> {
        let b = self.bidegrees();
        (b.len() == 1).then(|| *b.iter().next().unwrap())
    }

    pub fn map_coefficients(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Form {
        let mut out = Form::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    pub fn to_json_terms(&self) -> Vec<FormTerm> {
        self.terms
            .iter()
            .map(|(m, c)| FormTerm {
                holo: m.holo_indices().iter().map(|i| i + 1).collect(),
                anti: m.anti_indices().iter().map(|i| i + 1).collect(),
                coeff: c.clone(),
            })
            .collect()
    }

    pub fn from_json_terms(n: usize, terms: &[FormTerm]) -> Result<Form> {
        let mut out = Form::zero(n);
        for t in terms {
            let idx = |v: &[usize]| -> Result<Vec<usize>> {
                v.iter()
                    .map(|&i| {
                        if i == 0 || i > n {
                            Err(Error::Parse(format!("generator index {i} outside 1..={n}")))
                        } else {
                            Ok(i - 1)
                        }
                    })
                    .collect()
            };
            let h = idx(&t.holo)?;
            let a = idx(&t.anti)?;
            let m = Monomial::from_indices(&h, &a)
                .ok_or_else(|| Error::Parse("repeated generator".into()))?;
            let sign_h = permutation_sign(&h);
            let sign_a = permutation_sign(&a);
            let c = if sign_h != sign_a { -t.coeff.clone() } else { t.coeff.clone() };
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_terms()).expect("serializable")
    }

    pub fn from_json(n: usize, s: &str) -> Result<Form> {
        let terms: Vec<FormTerm> = serde_json::from_str(s)?;
        Self::from_json_terms(n, &terms)
    }

    /// Parses the compact notation `c·[holo|anti] ± …`, e.g. `2[14|1] - (1-√3i)[24|2]`.
    ///
    /// Digits inside brackets are 1-based generator indices written in canonical order;
    /// use commas to separate indices above 9. Coefficients containing `+` or `-`
    /// must be parenthesised.
    pub fn parse(n: usize, s: &str) -> Result<Form> {
        let src: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut out = Form::zero(n);
        let mut pos = 0;
        let bad = |msg: &str| Error::Parse(format!("{msg} in `{s}`"));
        while pos < src.len() {
            let mut negative = false;
            while pos < src.len() && matches!(src[pos], '+' | '-' | '−') {
                if src[pos] != '+' {
                    negative = !negative;
                }
                pos += 1;
            }
            let start = pos;
            let mut depth = 0;
            while pos < src.len() && !(depth == 0 && src[pos] == '[') {
                match src[pos] {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    _ => {}
                }
                pos += 1;
            }
            if pos == src.len() {
                return Err(bad("missing monomial"));
            }
            let coeff_src: String = src[start..pos].iter().collect();
            let coeff_src = coeff_src.trim_end_matches(['*', '·']);
            let mut c = if coeff_src.is_empty() {
                FieldElement::one()
            } else {
                coeff_src.parse::<FieldElement>()?
            };
            if negative {
                c = -c;
            }
            let close = src[pos..].iter().position(|&c| c == ']').ok_or_else(|| bad("unclosed ["))? + pos;
            let inner: String = src[pos + 1..close].iter().collect();
            pos = close + 1;
            let (h, a) = inner.split_once('|').ok_or_else(|| bad("missing |"))?;
            let parse_idx = |t: &str| -> Result<Vec<usize>> {
                let items: Vec<&str> = if t.contains(',') {
                    t.split(',').filter(|x| !x.is_empty()).collect()
                } else {
                    t.split("").filter(|x| !x.is_empty()).collect()
                };
                items
                    .iter()
                    .map(|x| match x.parse::<usize>() {
                        Ok(i) if i >= 1 && i <= n => Ok(i - 1),
                        _ => Err(bad("bad generator index")),
                    })
                    .collect()
            };
            let term = FormTerm {
                holo: parse_idx(h)?.iter().map(|i| i + 1).collect(),
                anti: parse_idx(a)?.iter().map(|i| i + 1).collect(),
                coeff: c,
            };
            out = out.add(&Form::from_json_terms(n, &[term])?)?;
        }
        Ok(out)
    }
}

/// Sign of the permutation sorting `v` (distinct entries).
fn permutation_sign(v: &[usize]) -> bool {
    let mut inv = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 1
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c}){m}")?;
            }
        }
        Ok(())
    }
}

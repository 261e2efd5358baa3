use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{canonical_monomials, Form, Monomial};
use crate::exactfield::FieldElement;
use crate::liealg::StructureEquations;
use crate::linalg::sparse::{self, SparseVec};
use crate::linalg::Mat;

/// One of the two anti-derivations of the bicomplex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Op {
    Del,
    Delbar,
}

impl Op {
    /// Bidegree shift of the operator.
    pub fn shift(self) -> (usize, usize) {
        match self {
            Op::Del => (1, 0),
            Op::Delbar => (0, 1),
        }
    }
}

/// Enumeration of the monomials of every bidegree, with position lookup.
#[derive(Clone, Debug)]
pub struct Basis {
    n: usize,
    blocks: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
    canonical: Vec<HashMap<Monomial, usize>>,
}

impl Basis {
    pub fn canonical(n: usize) -> Self {
        Self::build(n, None)
    }

    /// Same monomials, each block in a seeded random order.
    pub fn shuffled(n: usize, seed: u64) -> Self {
        Self::build(n, Some(seed))
    }

    fn build(n: usize, seed: Option<u64>) -> Self {
        let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
        let mut blocks = Vec::with_capacity((n + 1) * (n + 1));
        let mut index = Vec::with_capacity((n + 1) * (n + 1));
        let mut canonical = Vec::with_capacity((n + 1) * (n + 1));
        for p in 0..=n {
            for q in 0..=n {
                let ms = canonical_monomials(n, p, q);
                canonical.push(ms.iter().enumerate().map(|(i, m)| (*m, i)).collect());
                let mut ms = ms;
                if let Some(r) = rng.as_mut() {
                    ms.shuffle(r);
                }
                index.push(ms.iter().enumerate().map(|(i, m)| (*m, i)).collect());
                blocks.push(ms);
            }
        }
        Basis { n, blocks, index, canonical }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn slot(&self, p: usize, q: usize) -> usize {
        p * (self.n + 1) + q
    }

    pub fn contains(&self, p: usize, q: usize) -> bool {
        p <= self.n && q <= self.n
    }

    pub fn dim(&self, p: usize, q: usize) -> usize {
        if self.contains(p, q) {
            self.blocks[self.slot(p, q)].len()
        } else {
            0
        }
    }

    pub fn monomials(&self, p: usize, q: usize) -> &[Monomial] {
        &self.blocks[self.slot(p, q)]
    }

    pub fn position(&self, m: &Monomial) -> usize {
        let (p, q) = m.bidegree();
        self.index[self.slot(p, q)][m]
    }

    /// Position of `m` in the canonical enumeration of its block.
    pub fn canonical_position(&self, m: &Monomial) -> usize {
        let (p, q) = m.bidegree();
        self.canonical[self.slot(p, q)][m]
    }

    /// Coordinates of the (p,q)-component of `f` in this basis.
    pub fn vector(&self, f: &Form, p: usize, q: usize) -> SparseVec {
        sparse::normalize(
            f.terms()
                .filter(|(m, _)| m.bidegree() == (p, q))
                .map(|(m, c)| (self.position(m), c.clone()))
                .collect(),
        )
    }

    pub fn form(&self, p: usize, q: usize, v: &[(usize, FieldElement)]) -> Form {
        let ms = self.monomials(p, q);
        let mut f = Form::zero(self.n);
        for (i, c) in v {
            f.add_term(ms[*i], c.clone());
        }
        f
    }

    /// Re-expresses a block vector in canonical monomial order.
    pub fn to_canonical(&self, p: usize, q: usize, v: &[(usize, FieldElement)]) -> SparseVec {
        let ms = self.monomials(p, q);
        sparse::normalize(v.iter().map(|(i, c)| (self.canonical_position(&ms[*i]), c.clone())).collect())
    }

    pub fn from_canonical(&self, p: usize, q: usize, v: &[(usize, FieldElement)]) -> SparseVec {
        let canon = canonical_monomials(self.n, p, q);
        sparse::normalize(v.iter().map(|(i, c)| (self.position(&canon[*i]), c.clone())).collect())
    }
}

/// Matrix of a linear map between two bidegree blocks, stored by columns.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedBlockMap {
    pub source: (usize, usize),
    pub target: (usize, usize),
    pub rows: usize,
    pub columns: Vec<SparseVec>,
}

impl GradedBlockMap {
    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn apply(&self, v: &[(usize, FieldElement)]) -> SparseVec {
        let mut acc = Vec::new();
        for (j, c) in v {
            for (i, x) in &self.columns[*j] {
                acc.push((*i, c * x));
            }
        }
        sparse::normalize(acc)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &GradedBlockMap) -> GradedBlockMap {
        assert_eq!(first.target, self.source, "composition of incompatible blocks");
        GradedBlockMap {
            source: first.source,
            target: self.target,
            rows: self.rows,
            columns: first.columns.iter().map(|c| self.apply(c)).collect(),
        }
    }

    /// Rows of the matrix as sparse vectors indexed by column.
    pub fn transpose_columns(&self) -> Vec<SparseVec> {
        let mut rows: Vec<SparseVec> = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col {
                rows[*i].push((j, x.clone()));
            }
        }
        rows
    }

    pub fn to_dense(&self) -> Mat<FieldElement> {
        let mut m = Mat::zeros(self.rows, self.cols());
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col {
                m[(*i, j)] = x.clone();
            }
        }
        m
    }
}

/// Outcome of the ∂² = ∂̄² = ∂∂̄ + ∂̄∂ = 0 check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub failure: Option<VerifyFailure>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyFailure {
    pub identity: String,
    pub bidegree: (usize, usize),
    pub witness: String,
}

/// The invariant-form bicomplex: every bidegree block of ∂ and ∂̄.
#[derive(Clone, Debug)]
pub struct Bicomplex {
    n: usize,
    equations: StructureEquations,
    basis: Basis,
    generators: [Vec<Vec<(Monomial, FieldElement)>>; 2],
    del: Vec<GradedBlockMap>,
    delbar: Vec<GradedBlockMap>,
}

/// Builds the blocks of ∂ and ∂̄ in canonical monomial order.
pub fn build_differentials(se: &StructureEquations) -> Bicomplex {
    Bicomplex::new(se.clone())
}

/// Checks the bicomplex identities on every bidegree.
pub fn verify_bicomplex(bc: &Bicomplex) -> VerifyReport {
    bc.verify()
}

impl Bicomplex {
    pub fn new(se: StructureEquations) -> Self {
        let n = se.n();
        Self::with_basis(se, Basis::canonical(n))
    }

    pub fn with_basis(se: StructureEquations, basis: Basis) -> Self {
        let n = se.n();
        assert_eq!(basis.n(), n, "basis built for a different n");
        let terms = |f: &Form| f.terms().map(|(m, c)| (*m, c.clone())).collect::<Vec<_>>();
        let mut gd = vec![Vec::new(); 32];
        let mut gb = vec![Vec::new(); 32];
        for k in 0..n {
            gd[k] = terms(se.del(k));
            gb[k] = terms(se.delbar(k));
            gd[16 + k] = terms(&se.del_bar_generator(k));
            gb[16 + k] = terms(&se.delbar_bar_generator(k));
        }
        let mut bc = Bicomplex {
            n,
            equations: se,
            basis,
            generators: [gd, gb],
            del: Vec::new(),
            delbar: Vec::new(),
        };
        let bidegrees: Vec<(usize, usize)> = (0..=n).flat_map(|p| (0..=n).map(move |q| (p, q))).collect();
        let (del, delbar): (Vec<_>, Vec<_>) = bidegrees
            .par_iter()
            .map(|&(p, q)| (bc.build_block(Op::Del, p, q), bc.build_block(Op::Delbar, p, q)))
            .unzip();
        bc.del = del;
        bc.delbar = delbar;
        bc
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn equations(&self) -> &StructureEquations {
        &self.equations
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    fn build_block(&self, op: Op, p: usize, q: usize) -> GradedBlockMap {
        let (dp, dq) = op.shift();
        let target = (p + dp, q + dq);
        let rows = self.basis.dim(target.0, target.1);
        let columns = self
            .basis
            .monomials(p, q)
            .iter()
            .map(|m| {
                if rows == 0 {
                    return Vec::new();
                }
                sparse::normalize(
                    self.apply_monomial(op, m)
                        .into_iter()
                        .map(|(t, c)| (self.basis.position(&t), c))
                        .collect(),
                )
            })
            .collect();
        GradedBlockMap { source: (p, q), target, rows, columns }
    }

    /// Leibniz expansion of the operator on a single monomial.
    pub fn apply_monomial(&self, op: Op, m: &Monomial) -> Vec<(Monomial, FieldElement)> {
        let gens = &self.generators[op as usize];
        let slots = m.slots();
        let mut out = Vec::new();
        let mut prefix = 0u32;
        for (t, &s) in slots.iter().enumerate() {
            let bit = 1u32 << s;
            let suffix = Monomial::from_combined(m.combined() & !(prefix | bit));
            let pre = Monomial::from_combined(prefix);
            for (g, c) in &gens[s as usize] {
                let Some((n1, w)) = g.wedge(&suffix) else { continue };
                let Some((n2, w)) = pre.wedge(&w) else { continue };
                let neg = (t % 2 == 1) ^ n1 ^ n2;
                out.push((w, if neg { -c } else { c.clone() }));
            }
            prefix |= bit;
        }
        out
    }

    /// Applies ∂ or ∂̄ to an arbitrary form.
    pub fn apply(&self, op: Op, f: &Form) -> Form {
        let mut out = Form::zero(self.n);
        for (m, c) in f.terms() {
            for (t, x) in self.apply_monomial(op, m) {
                out.add_term(t, c * &x);
            }
        }
        out
    }

    pub fn del(&self, f: &Form) -> Form {
        self.apply(Op::Del, f)
    }

    pub fn delbar(&self, f: &Form) -> Form {
        self.apply(Op::Delbar, f)
    }

    pub fn d(&self, f: &Form) -> Form {
        self.del(f).add(&self.delbar(f)).expect("same n")
    }

    /// Block of `op` with source bidegree (p,q).
    pub fn block(&self, op: Op, p: usize, q: usize) -> &GradedBlockMap {
        let i = self.basis.slot(p, q);
        match op {
            Op::Del => &self.del[i],
            Op::Delbar => &self.delbar[i],
        }
    }

    /// ∂∂̄ with source bidegree (p,q).
    pub fn del_delbar(&self, p: usize, q: usize) -> GradedBlockMap {
        let first = self.block(Op::Delbar, p, q);
        if q == self.n {
            return GradedBlockMap {
                source: (p, q),
                target: (p + 1, q + 1),
                rows: 0,
                columns: vec![Vec::new(); first.cols()],
            };
        }
        let second = self.block(Op::Del, p, q + 1);
        second.compose(first)
    }

    pub fn verify(&self) -> VerifyReport {
        let n = self.n;
        let bidegrees: Vec<(usize, usize)> = (0..=n).flat_map(|p| (0..=n).map(move |q| (p, q))).collect();
        let failures: Vec<Option<VerifyFailure>> = bidegrees
            .par_iter()
            .map(|&(p, q)| self.verify_at(p, q))
            .collect();
        let failure = failures.into_iter().flatten().next();
        VerifyReport { passed: failure.is_none(), failure }
    }

    fn verify_at(&self, p: usize, q: usize) -> Option<VerifyFailure> {
        let n = self.n;
        let d = self.block(Op::Del, p, q);
        let db = self.block(Op::Delbar, p, q);
        let ms = self.basis.monomials(p, q);
        let fail = |identity: &str, j: usize| VerifyFailure {
            identity: identity.to_string(),
            bidegree: (p, q),
            witness: ms[j].to_string(),
        };
        for j in 0..ms.len() {
            if p < n && !self.block(Op::Del, p + 1, q).apply(&d.columns[j]).is_empty() {
                return Some(fail("∂∂ = 0", j));
            }
            if q < n && !self.block(Op::Delbar, p, q + 1).apply(&db.columns[j]).is_empty() {
                return Some(fail("∂̄∂̄ = 0", j));
            }
            if p < n && q < n {
                let a = self.block(Op::Del, p, q + 1).apply(&db.columns[j]);
                let b = self.block(Op::Delbar, p + 1, q).apply(&d.columns[j]);
                let neg: SparseVec = b.into_iter().map(|(i, x)| (i, -x)).collect();
                if a != neg {
                    return Some(fail("∂∂̄ + ∂̄∂ = 0", j));
                }
            }
        }
        None
    }
}

//! Dolbeault, Bott–Chern, Aeppli and de Rham cohomology of the invariant bicomplex.

mod diamond;
mod duality;
mod golden;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bicomplex::{canonical_monomials, Bicomplex, Form, Op};
use crate::error::{Error, Result};
use crate::exactfield::FieldElement;
use crate::linalg::sparse::{self, Echelon, Rref, SparseVec};

pub use diamond::{betti_numbers, diamond, pittie_dolbeault, Diamond};
pub use duality::{duality_check, DualityFailure, DualityReport};
pub use golden::{golden_diamond, parse_pyramid, GOLDEN_TABLES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Dolbeault,
    BottChern,
    Aeppli,
    DeRham,
}

impl Kind {
    pub const ALL: [Kind; 4] = [Kind::Dolbeault, Kind::BottChern, Kind::Aeppli, Kind::DeRham];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Dolbeault => "dolbeault",
            Kind::BottChern => "bott_chern",
            Kind::Aeppli => "aeppli",
            Kind::DeRham => "de_rham",
        }
    }

    pub fn is_bigraded(self) -> bool {
        self != Kind::DeRham
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "dolbeault" => Ok(Kind::Dolbeault),
            "bott_chern" | "bc" => Ok(Kind::BottChern),
            "aeppli" => Ok(Kind::Aeppli),
            "de_rham" | "derham" => Ok(Kind::DeRham),
            _ => Err(Error::Parse(format!("unknown cohomology kind `{s}`"))),
        }
    }
}

/// One cohomology space with a canonical basis of representatives.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CohomologyResult {
    pub kind: Kind,
    /// `(p,q)` for bigraded kinds, `None` for de Rham.
    pub bidegree: Option<(usize, usize)>,
    pub degree: usize,
    pub dimension: usize,
    pub representatives: Vec<Form>,
}

/// Outcome of [`class_of`].
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassVerdict {
    NotClosed,
    Coordinates(Vec<FieldElement>),
}

impl ClassVerdict {
    /// True for a closed form whose class vanishes.
    pub fn is_exact(&self) -> bool {
        matches!(self, ClassVerdict::Coordinates(c) if c.iter().all(|x| x.is_zero()))
    }
}

/// The linear algebra behind one cohomology space.
///
/// The source space is the concatenation of `blocks`; `closed` holds the columns of a map
/// whose kernel is the space of closed forms and `exact` spans the exact forms.
struct Problem {
    blocks: Vec<(usize, usize)>,
    closed: Vec<SparseVec>,
    closed_rows: usize,
    exact: Vec<SparseVec>,
}

fn stack(parts: &[&[SparseVec]], heights: &[usize], cols: usize) -> Vec<SparseVec> {
    (0..cols)
        .map(|j| {
            let mut out = Vec::new();
            let mut offset = 0;
            for (part, h) in parts.iter().zip(heights) {
                out.extend(part[j].iter().map(|(i, x)| (i + offset, x.clone())));
                offset += h;
            }
            out
        })
        .collect()
}

fn exact_from(bc: &Bicomplex, op: Op, p: Option<usize>, q: Option<usize>) -> Vec<SparseVec> {
    match (p, q) {
        (Some(p), Some(q)) => bc.block(op, p, q).columns.clone(),
        _ => Vec::new(),
    }
}

fn dec(x: usize) -> Option<usize> {
    x.checked_sub(1)
}

impl Problem {
    fn bigraded(bc: &Bicomplex, kind: Kind, p: usize, q: usize) -> Problem {
        let dim = bc.basis().dim(p, q);
        let (closed, closed_rows, exact) = match kind {
            Kind::Dolbeault => {
                let b = bc.block(Op::Delbar, p, q);
                (b.columns.clone(), b.rows, exact_from(bc, Op::Delbar, Some(p), dec(q)))
            }
            Kind::BottChern => {
                let d = bc.block(Op::Del, p, q);
                let db = bc.block(Op::Delbar, p, q);
                let cols = stack(&[&d.columns, &db.columns], &[d.rows, db.rows], dim);
                let exact = match (dec(p), dec(q)) {
                    (Some(a), Some(b)) => bc.del_delbar(a, b).columns,
                    _ => Vec::new(),
                };
                (cols, d.rows + db.rows, exact)
            }
            Kind::Aeppli => {
                let dd = bc.del_delbar(p, q);
                let mut exact = exact_from(bc, Op::Del, dec(p), Some(q));
                exact.extend(exact_from(bc, Op::Delbar, Some(p), dec(q)));
                (dd.columns, dd.rows, exact)
            }
            Kind::DeRham => unreachable!("de Rham is singly graded"),
        };
        Problem { blocks: vec![(p, q)], closed, closed_rows, exact }
    }

    fn total(bc: &Bicomplex, k: usize) -> Problem {
        let n = bc.n();
        let blocks_of = |k: usize| -> Vec<(usize, usize)> {
            (0..=n).filter(|&p| k >= p && k - p <= n).map(|p| (p, k - p)).collect()
        };
        let offsets = |blocks: &[(usize, usize)]| -> Vec<usize> {
            let mut acc = 0;
            blocks
                .iter()
                .map(|&(p, q)| {
                    let o = acc;
                    acc += bc.basis().dim(p, q);
                    o
                })
                .collect()
        };
        let d_columns = |k: usize| -> (Vec<SparseVec>, usize) {
            let src = blocks_of(k);
            let tgt = blocks_of(k + 1);
            let toff = offsets(&tgt);
            let rows: usize = tgt.iter().map(|&(p, q)| bc.basis().dim(p, q)).sum();
            let at = |b: (usize, usize)| tgt.iter().position(|&t| t == b).map(|i| toff[i]);
            let mut cols = Vec::new();
            for &(p, q) in &src {
                let d = bc.block(Op::Del, p, q);
                let db = bc.block(Op::Delbar, p, q);
                for j in 0..bc.basis().dim(p, q) {
                    let mut v = Vec::new();
                    if let Some(o) = at((p + 1, q)) {
                        v.extend(d.columns[j].iter().map(|(i, x)| (i + o, x.clone())));
                    }
                    if let Some(o) = at((p, q + 1)) {
                        v.extend(db.columns[j].iter().map(|(i, x)| (i + o, x.clone())));
                    }
                    cols.push(sparse::normalize(v));
                }
            }
            (cols, rows)
        };
        let (closed, closed_rows) = d_columns(k);
        let exact = if k == 0 { Vec::new() } else { d_columns(k - 1).0 };
        Problem { blocks: blocks_of(k), closed, closed_rows, exact }
    }

    fn source_dim(&self, bc: &Bicomplex) -> usize {
        self.blocks.iter().map(|&(p, q)| bc.basis().dim(p, q)).sum()
    }

    fn dimension(&self, bc: &Bicomplex) -> usize {
        let n = self.source_dim(bc);
        n - rank_of(&self.closed, self.closed_rows) - rank_of(&self.exact, n)
    }

    fn map_blocks(&self, bc: &Bicomplex, v: &[(usize, FieldElement)], canonical: bool) -> SparseVec {
        let mut out = Vec::new();
        let mut offset = 0;
        for &(p, q) in &self.blocks {
            let dim = bc.basis().dim(p, q);
            let part: SparseVec =
                v.iter().filter(|(i, _)| *i >= offset && *i < offset + dim).map(|(i, x)| (i - offset, x.clone())).collect();
            let mapped = if canonical {
                bc.basis().to_canonical(p, q, &part)
            } else {
                bc.basis().from_canonical(p, q, &part)
            };
            out.extend(mapped.into_iter().map(|(i, x)| (i + offset, x)));
            offset += dim;
        }
        sparse::normalize(out)
    }

    fn to_form(&self, bc: &Bicomplex, canonical: &[(usize, FieldElement)]) -> Form {
        let mut f = Form::zero(bc.n());
        let mut offset = 0;
        for &(p, q) in &self.blocks {
            let ms = canonical_monomials(bc.n(), p, q);
            for (i, x) in canonical.iter().filter(|(i, _)| *i >= offset && *i < offset + ms.len()) {
                f.add_term(ms[i - offset], x.clone());
            }
            offset += ms.len();
        }
        f
    }

    fn from_form(&self, bc: &Bicomplex, f: &Form) -> SparseVec {
        let mut out = Vec::new();
        let mut offset = 0;
        for &(p, q) in &self.blocks {
            out.extend(bc.basis().vector(f, p, q).into_iter().map(|(i, x)| (i + offset, x)));
            offset += bc.basis().dim(p, q);
        }
        sparse::normalize(out)
    }

    /// Exact subspace and the canonical complement spanned by reduced closed forms,
    /// both in canonical coordinates.
    fn quotient(&self, bc: &Bicomplex) -> (Rref, Rref) {
        let exact = Rref::span_of(self.exact.iter().map(|v| self.map_blocks(bc, v, true)));
        let kernel = sparse::kernel(&self.closed, self.closed_rows);
        let classes = Rref::span_of(kernel.iter().map(|v| exact.reduce(self.map_blocks(bc, v, true))));
        (exact, classes)
    }

    fn is_closed(&self, v: &[(usize, FieldElement)]) -> bool {
        let mut acc = Vec::new();
        for (j, c) in v {
            acc.extend(self.closed[*j].iter().map(|(i, x)| (*i, c * x)));
        }
        sparse::normalize(acc).is_empty()
    }
}

/// Rank of a matrix given by columns, eliminating along the shorter side.
pub(crate) fn rank_of(columns: &[SparseVec], rows: usize) -> usize {
    if columns.is_empty() || rows == 0 {
        return 0;
    }
    let mut e = Echelon::new();
    if columns.len() <= rows {
        for c in columns {
            e.insert(c.clone());
        }
    } else {
        let mut t: Vec<SparseVec> = vec![Vec::new(); rows];
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col {
                t[*i].push((j, x.clone()));
            }
        }
        for r in t {
            e.insert(r);
        }
    }
    e.rank()
}

fn check_bidegree(bc: &Bicomplex, p: usize, q: usize) -> Result<()> {
    if bc.basis().contains(p, q) {
        Ok(())
    } else {
        Err(Error::Bidegree(format!("({p},{q}) outside 0..={}", bc.n())))
    }
}

fn solve(bc: &Bicomplex, kind: Kind, problem: Problem, bidegree: Option<(usize, usize)>, degree: usize) -> CohomologyResult {
    let (_, classes) = problem.quotient(bc);
    let representatives: Vec<Form> = classes.rows().iter().map(|v| problem.to_form(bc, v)).collect();
    CohomologyResult { kind, bidegree, degree, dimension: representatives.len(), representatives }
}

fn bigraded(bc: &Bicomplex, kind: Kind, p: usize, q: usize) -> Result<CohomologyResult> {
    check_bidegree(bc, p, q)?;
    Ok(solve(bc, kind, Problem::bigraded(bc, kind, p, q), Some((p, q)), p + q))
}

/// `ker ∂̄ / im ∂̄` on (p,q).
pub fn dolbeault(bc: &Bicomplex, p: usize, q: usize) -> Result<CohomologyResult> {
    bigraded(bc, Kind::Dolbeault, p, q)
}

/// `(ker ∂ ∩ ker ∂̄) / im ∂∂̄` on (p,q).
pub fn bott_chern(bc: &Bicomplex, p: usize, q: usize) -> Result<CohomologyResult> {
    bigraded(bc, Kind::BottChern, p, q)
}

/// `ker ∂∂̄ / (im ∂ + im ∂̄)` on (p,q).
pub fn aeppli(bc: &Bicomplex, p: usize, q: usize) -> Result<CohomologyResult> {
    bigraded(bc, Kind::Aeppli, p, q)
}

/// Cohomology of the total complex `d = ∂ + ∂̄` in degree k.
pub fn de_rham(bc: &Bicomplex, k: usize) -> Result<CohomologyResult> {
    if k > 2 * bc.n() {
        return Err(Error::Bidegree(format!("degree {k} exceeds {}", 2 * bc.n())));
    }
    Ok(solve(bc, Kind::DeRham, Problem::total(bc, k), None, k))
}

/// Cohomology of the given kind; `bidegree.1` is ignored for de Rham, whose degree is `p + q`.
pub fn cohomology(bc: &Bicomplex, kind: Kind, p: usize, q: usize) -> Result<CohomologyResult> {
    match kind {
        Kind::DeRham => de_rham(bc, p + q),
        _ => bigraded(bc, kind, p, q),
    }
}

/// Dimension only, without representatives.
pub fn dimension(bc: &Bicomplex, kind: Kind, p: usize, q: usize) -> Result<usize> {
    match kind {
        Kind::DeRham => Ok(Problem::total(bc, p + q).dimension(bc)),
        _ => {
            check_bidegree(bc, p, q)?;
            Ok(Problem::bigraded(bc, kind, p, q).dimension(bc))
        }
    }
}

/// Coordinates of the class of `x` in the representative basis of [`cohomology`].
///
/// All coordinates vanish exactly when `x` is exact for the kind.
pub fn class_of(bc: &Bicomplex, x: &Form, kind: Kind) -> Result<ClassVerdict> {
    if x.n() != bc.n() {
        return Err(Error::MismatchedN(x.n(), bc.n()));
    }
    let problem = match kind {
        Kind::DeRham => {
            let degrees: std::collections::BTreeSet<usize> = x.bidegrees().iter().map(|(p, q)| p + q).collect();
            if degrees.len() > 1 {
                return Err(Error::Bidegree(format!("mixed total degrees {degrees:?}")));
            }
            Problem::total(bc, degrees.into_iter().next().unwrap_or(0))
        }
        _ => {
            let (p, q) = if x.is_zero() {
                (0, 0)
            } else {
                x.homogeneous_bidegree()
                    .ok_or_else(|| Error::Bidegree(format!("form has components {:?}", x.bidegrees())))?
            };
            Problem::bigraded(bc, kind, p, q)
        }
    };
    let v = problem.from_form(bc, x);
    if !problem.is_closed(&v) {
        return Ok(ClassVerdict::NotClosed);
    }
    let (exact, classes) = problem.quotient(bc);
    let r = exact.reduce(problem.map_blocks(bc, &v, true));
    let coords = classes.coordinates(&r).expect("reduced closed form lies in the class complement");
    Ok(ClassVerdict::Coordinates(coords))
}

/// Whether the forms are independent modulo the exact space of the kind at their common bidegree.
pub fn independent_modulo_exact(bc: &Bicomplex, forms: &[Form], kind: Kind) -> Result<bool> {
    let Some(first) = forms.first() else { return Ok(true) };
    let (p, q) = first
        .homogeneous_bidegree()
        .ok_or_else(|| Error::Bidegree("inhomogeneous form".into()))?;
    if forms.iter().any(|f| f.homogeneous_bidegree() != Some((p, q))) {
        return Err(Error::Bidegree("forms of different bidegrees".into()));
    }
    let problem = Problem::bigraded(bc, kind, p, q);
    let mut e = Echelon::new();
    for v in &problem.exact {
        e.insert(v.clone());
    }
    Ok(forms.iter().all(|f| e.insert(problem.from_form(bc, f))))
}

/// Dimensions of every bidegree of the given kind, computed in parallel.
pub(crate) fn dimension_table(bc: &Bicomplex, kind: Kind) -> Vec<Vec<usize>> {
    let n = bc.n();
    let keys: Vec<(usize, usize)> = (0..=n).flat_map(|p| (0..=n).map(move |q| (p, q))).collect();
    if kind == Kind::Dolbeault {
        let ranks: Vec<usize> = keys
            .par_iter()
            .map(|&(p, q)| {
                let b = bc.block(Op::Delbar, p, q);
                rank_of(&b.columns, b.rows)
            })
            .collect();
        let r = |p: usize, q: usize| ranks[p * (n + 1) + q];
        return (0..=n)
            .map(|p| {
                (0..=n)
                    .map(|q| bc.basis().dim(p, q) - r(p, q) - if q > 0 { r(p, q - 1) } else { 0 })
                    .collect()
            })
            .collect();
    }
    let dims: Vec<usize> = keys.par_iter().map(|&(p, q)| Problem::bigraded(bc, kind, p, q).dimension(bc)).collect();
    dims.chunks(n + 1).map(|c| c.to_vec()).collect()
}

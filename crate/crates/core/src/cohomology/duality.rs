use rayon::prelude::*;
use serde::Serialize;

use super::{dimension_table, rank_of, Kind, Problem};
use crate::bicomplex::{Bicomplex, Hodge};
use crate::error::Result;
use crate::exactfield::FieldElement;
use crate::hermflow::ExactMetric;
use crate::linalg::sparse::{self, Rref, SparseVec};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualityFailure {
    pub bidegree: (usize, usize),
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualityReport {
    pub passed: bool,
    pub bidegrees_checked: usize,
    pub star_checked: bool,
    pub failure: Option<DualityFailure>,
}

/// Checks `h_BC(p,q) = h_A(n−q,n−p)` everywhere.
///
/// With a metric, also stars the Bott–Chern harmonic representatives (closed forms orthogonal
/// to `im ∂∂̄`) and checks that they are `∂∂̄`-closed and independent modulo Aeppli-exact forms.
pub fn duality_check(bc: &Bicomplex, metric: Option<&ExactMetric>) -> Result<DualityReport> {
    let n = bc.n();
    let bott_chern = dimension_table(bc, Kind::BottChern);
    let aeppli = dimension_table(bc, Kind::Aeppli);
    let keys: Vec<(usize, usize)> = (0..=n).flat_map(|p| (0..=n).map(move |q| (p, q))).collect();
    for &(p, q) in &keys {
        if bott_chern[p][q] != aeppli[n - q][n - p] {
            return Ok(report(
                keys.len(),
                false,
                Some(DualityFailure {
                    bidegree: (p, q),
                    reason: format!("h_BC = {} but h_A({},{}) = {}", bott_chern[p][q], n - q, n - p, aeppli[n - q][n - p]),
                }),
            ));
        }
    }
    let Some(metric) = metric else { return Ok(report(keys.len(), false, None)) };
    let hodge = Hodge::new(metric.matrix())?;
    let failures: Vec<Option<DualityFailure>> =
        keys.par_iter().map(|&(p, q)| star_check(bc, &hodge, p, q, bott_chern[p][q])).collect();
    Ok(report(keys.len(), true, failures.into_iter().flatten().next()))
}

fn report(checked: usize, star: bool, failure: Option<DualityFailure>) -> DualityReport {
    DualityReport { passed: failure.is_none(), bidegrees_checked: checked, star_checked: star, failure }
}

/// Closed forms orthogonal to `im ∂∂̄` on (p,q), in block coordinates.
pub(crate) fn harmonic_bott_chern(bc: &Bicomplex, hodge: &Hodge<FieldElement>, p: usize, q: usize) -> Vec<SparseVec> {
    let problem = Problem::bigraded(bc, Kind::BottChern, p, q);
    let exact = Rref::span_of(problem.exact.iter().cloned());
    let gram = hodge.gram(bc.basis(), p, q);
    let dim = bc.basis().dim(p, q);
    let columns: Vec<SparseVec> = (0..dim)
        .map(|i| {
            let mut col = problem.closed[i].clone();
            for (j, b) in exact.rows().iter().enumerate() {
                let x: FieldElement = b.iter().map(|(k, c)| &gram[(i, *k)] * &c.conj()).sum();
                if !x.is_zero() {
                    col.push((problem.closed_rows + j, x));
                }
            }
            col
        })
        .collect();
    sparse::kernel(&columns, problem.closed_rows + exact.dim())
}

fn star_check(bc: &Bicomplex, hodge: &Hodge<FieldElement>, p: usize, q: usize, expected: usize) -> Option<DualityFailure> {
    let n = bc.n();
    let fail = |reason: String| Some(DualityFailure { bidegree: (p, q), reason });
    let harmonic = harmonic_bott_chern(bc, hodge, p, q);
    if harmonic.len() != expected {
        return fail(format!("{} harmonic forms for a {expected}-dimensional space", harmonic.len()));
    }
    let (tp, tq) = (n - q, n - p);
    let target = Problem::bigraded(bc, Kind::Aeppli, tp, tq);
    let mut stars = Vec::with_capacity(harmonic.len());
    for h in &harmonic {
        let s = hodge.star(&bc.basis().form(p, q, h));
        let v = bc.basis().vector(&s, tp, tq);
        if !target.is_closed(&v) {
            return fail("star of a harmonic form is not ∂∂̄-closed".into());
        }
        stars.push(v);
    }
    let rows = bc.basis().dim(tp, tq);
    let base = rank_of(&target.exact, rows);
    let mut all = target.exact.clone();
    all.extend(stars);
    if rank_of(&all, rows) != base + expected {
        return fail("stars are dependent modulo Aeppli-exact forms".into());
    }
    None
}

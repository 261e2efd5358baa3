use std::collections::HashMap;

use crate::exactfield::FieldElement;

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, FieldElement)>;

/// `v - c·w` for sparse vectors.
pub fn sub_scaled(v: &[(usize, FieldElement)], c: &FieldElement, w: &[(usize, FieldElement)]) -> SparseVec {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        match (v.get(i), w.get(j)) {
            (Some((a, x)), Some((b, y))) if a == b => {
                let r = x - &(c * y);
                if !r.is_zero() {
                    out.push((*a, r));
                }
                i += 1;
                j += 1;
            }
            (Some((a, x)), Some((b, _))) if a < b => {
                out.push((*a, x.clone()));
                i += 1;
            }
            (Some((a, x)), None) => {
                out.push((*a, x.clone()));
                i += 1;
            }
            (_, Some((b, y))) => {
                out.push((*b, -&(c * y)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

pub fn scale(v: &[(usize, FieldElement)], c: &FieldElement) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

/// Sorts entries by index and merges duplicates.
pub fn normalize(mut entries: Vec<(usize, FieldElement)>) -> SparseVec {
    entries.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(entries.len());
    for (i, x) in entries {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y += &x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

pub fn get(v: &[(usize, FieldElement)], idx: usize) -> Option<&FieldElement> {
    v.binary_search_by_key(&idx, |e| e.0).ok().map(|k| &v[k].1)
}

/// Row-echelon basis built incrementally; each stored row has leading coefficient 1.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivot: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Clears leading entries that sit on pivot columns until the lead is free.
    pub fn reduce_lead(&self, mut v: SparseVec) -> SparseVec {
        while let Some((c, x)) = v.first() {
            match self.pivot.get(c) {
                Some(&r) => {
                    let x = x.clone();
                    v = sub_scaled(&v, &x, &self.rows[r]);
                }
                None => break,
            }
        }
        v
    }

    /// Removes every pivot-column entry of `v`.
    pub fn reduce_full(&self, mut v: SparseVec) -> SparseVec {
        let mut k = 0;
        while k < v.len() {
            let (c, x) = &v[k];
            match self.pivot.get(c) {
                Some(&r) => {
                    let x = x.clone();
                    v = sub_scaled(&v, &x, &self.rows[r]);
                }
                None => k += 1,
            }
        }
        v
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce_lead(v).is_empty()
    }

    /// Inserts `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce_lead(v);
        self.push_reduced(v)
    }

    fn push_reduced(&mut self, v: SparseVec) -> bool {
        let Some((c, lead)) = v.first() else { return false };
        let c = *c;
        let inv = lead.inv().expect("nonzero lead");
        let v = scale(&v, &inv);
        self.pivot.insert(c, self.rows.len());
        self.rows.push(v);
        true
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.pivot.keys().copied().collect();
        p.sort_unstable();
        p
    }

    /// Reduced row-echelon form, rows sorted by pivot column. Unique for a given subspace.
    pub fn into_rref(self) -> Rref {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.rows[r].first().map(|e| e.0));
        let mut out = Echelon::new();
        for &r in order.iter().rev() {
            let v = out.reduce_full(self.rows[r].clone());
            out.push_reduced(v);
        }
        let mut rows = out.rows;
        rows.sort_by_key(|v| v[0].0);
        Rref::from_sorted(rows)
    }
}

/// A subspace in reduced row-echelon form.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Rref {
    rows: Vec<SparseVec>,
    pivot: HashMap<usize, usize>,
}

impl Rref {
    fn from_sorted(rows: Vec<SparseVec>) -> Self {
        let pivot = rows.iter().enumerate().map(|(k, v)| (v[0].0, k)).collect();
        Rref { rows, pivot }
    }

    pub fn span_of(vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut e = Echelon::new();
        for v in vectors {
            e.insert(v);
        }
        e.into_rref()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.iter().map(|v| v[0].0).collect()
    }

    /// Canonical residue of `v` modulo the subspace.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut k = 0;
        while k < v.len() {
            let (c, x) = &v[k];
            match self.pivot.get(c) {
                Some(&r) => {
                    let x = x.clone();
                    v = sub_scaled(&v, &x, &self.rows[r]);
                }
                None => k += 1,
            }
        }
        v
    }

    /// Coordinates of `v` in the row basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<FieldElement>> {
        let coords: Vec<FieldElement> = self
            .rows
            .iter()
            .map(|r| get(v, r[0].0).cloned().unwrap_or_else(FieldElement::zero))
            .collect();
        let mut rest = v.clone();
        for (c, r) in coords.iter().zip(&self.rows) {
            if !c.is_zero() {
                rest = sub_scaled(&rest, c, r);
            }
        }
        rest.is_empty().then_some(coords)
    }
}

/// Rank of the matrix whose columns are given.
pub fn rank(columns: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut e = Echelon::new();
    for c in columns {
        e.insert(c);
    }
    e.rank()
}

/// Basis of the null space of the matrix with the given columns and `nrows` rows.
///
/// Each column is augmented with a unit vector; columns whose matrix part reduces
/// to zero leave a kernel vector in the augmented part.
pub fn kernel(columns: &[SparseVec], nrows: usize) -> Vec<SparseVec> {
    let mut e = Echelon::new();
    let mut out = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        let mut v = col.clone();
        v.push((nrows + j, FieldElement::one()));
        let v = e.reduce_lead(v);
        match v.first() {
            Some((c, _)) if *c < nrows => {
                e.push_reduced(v);
            }
            Some(_) => out.push(v.into_iter().map(|(i, x)| (i - nrows, x)).collect()),
            None => unreachable!("augmented vector cannot vanish"),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_i64(n)
    }

    fn col(entries: &[(usize, i64)]) -> SparseVec {
        normalize(entries.iter().map(|&(i, x)| (i, fe(x))).collect())
    }

    fn apply(columns: &[SparseVec], x: &SparseVec) -> SparseVec {
        let mut acc = Vec::new();
        for (j, c) in x {
            acc = sub_scaled(&acc, &-c, &columns[*j]);
        }
        acc
    }

    #[test]
    fn rank_and_kernel() {
        let cols = vec![
            col(&[(0, 1), (1, 2)]),
            col(&[(0, 2), (1, 4)]),
            col(&[(1, 1), (2, 1)]),
            col(&[(0, 1), (1, 3), (2, 1)]),
        ];
        assert_eq!(rank(cols.clone()), 2);
        let k = kernel(&cols, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(apply(&cols, v).is_empty());
        }
    }

    #[test]
    fn rref_is_canonical() {
        let a = vec![col(&[(0, 1), (2, 3)]), col(&[(1, 2), (2, 1)])];
        let b = vec![col(&[(0, 1), (1, 2), (2, 4)]), col(&[(0, 2), (1, -2), (2, 5)])];
        assert_eq!(Rref::span_of(a), Rref::span_of(b));
    }

    #[test]
    fn coordinates_in_rref() {
        let s = Rref::span_of(vec![col(&[(0, 1), (2, 3)]), col(&[(1, 1), (2, 1)])]);
        let v = col(&[(0, 2), (1, -1), (2, 5)]);
        assert_eq!(s.coordinates(&v), Some(vec![fe(2), fe(-1)]));
        assert_eq!(s.coordinates(&col(&[(2, 1)])), None);
        assert_eq!(s.reduce(col(&[(0, 1), (2, 3)])), Vec::new());
    }
}

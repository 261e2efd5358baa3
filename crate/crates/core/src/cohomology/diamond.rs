use std::fmt::Write;

use serde::Serialize;

use super::{dimension_table, Kind, Problem};
use crate::bicomplex::Bicomplex;
use crate::error::{Error, Result};

/// Dimensions `table[p][q]` of a bigraded cohomology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diamond {
    pub kind: Kind,
    pub n: usize,
    pub table: Vec<Vec<usize>>,
}

impl Diamond {
    pub fn new(kind: Kind, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len().checked_sub(1).ok_or_else(|| Error::Parse("empty table".into()))?;
        if table.iter().any(|r| r.len() != n + 1) {
            return Err(Error::Parse("table is not square".into()));
        }
        Ok(Diamond { kind, n, table })
    }

    pub fn get(&self, p: usize, q: usize) -> usize {
        self.table[p][q]
    }

    /// Row `k` of the pyramid: `h^{p,k−p}` with p decreasing.
    pub fn row(&self, k: usize) -> Vec<usize> {
        let n = self.n;
        let lo = k.saturating_sub(n);
        let hi = k.min(n);
        (lo..=hi).rev().map(|p| self.table[p][k - p]).collect()
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..=2 * self.n).map(|k| self.row(k)).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        let mut chi = 0i64;
        for (p, row) in self.table.iter().enumerate() {
            for (q, &h) in row.iter().enumerate() {
                chi += if (p + q) % 2 == 0 { h as i64 } else { -(h as i64) };
            }
        }
        chi
    }

    pub fn total(&self) -> usize {
        self.table.iter().flatten().sum()
    }

    /// Whether `h(p,q) = h(q,p)` everywhere.
    pub fn is_conjugation_symmetric(&self) -> bool {
        (0..=self.n).all(|p| (0..=self.n).all(|q| self.table[p][q] == self.table[q][p]))
    }

    /// Bidegrees where the two tables disagree.
    pub fn differences(&self, other: &Diamond) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for p in 0..=self.n.max(other.n) {
            for q in 0..=self.n.max(other.n) {
                let a = self.table.get(p).and_then(|r| r.get(q));
                let b = other.table.get(p).and_then(|r| r.get(q));
                if a != b {
                    out.push((p, q));
                }
            }
        }
        out
    }

    /// Centered pyramid, row `p+q = k` on line k, p decreasing left to right.
    pub fn to_ascii(&self) -> String {
        let width = self.table.iter().flatten().map(|h| h.to_string().len()).max().unwrap_or(1).max(1) + 1;
        let mut out = String::new();
        for k in 0..=2 * self.n {
            let lo = k.saturating_sub(self.n);
            let hi = k.min(self.n);
            let mut line = String::new();
            for p in (lo..=hi).rev() {
                let q = k - p;
                let col = (self.n + q - p) * width;
                while line.chars().count() < col {
                    line.push(' ');
                }
                let _ = write!(line, "{:>w$}", self.table[p][q], w = width);
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, model: &str) -> serde_json::Value {
        serde_json::json!({ "model": model, "kind": self.kind, "n": self.n, "table": self.table })
    }
}

/// Full table of a bigraded cohomology; ranks are computed in parallel across bidegrees.
pub fn diamond(bc: &Bicomplex, kind: Kind) -> Result<Diamond> {
    if !kind.is_bigraded() {
        return Err(Error::Bidegree("de Rham cohomology is singly graded; use betti_numbers".into()));
    }
    Diamond::new(kind, dimension_table(bc, kind))
}

/// Betti numbers `b_0 … b_2n` of the total complex.
pub fn betti_numbers(bc: &Bicomplex) -> Vec<usize> {
    use rayon::prelude::*;
    (0..=2 * bc.n()).into_par_iter().map(|k| Problem::total(bc, k).dimension(bc)).collect()
}

/// Hodge numbers of `ℂ[y]/(y^{n−1}) ⊗ Λ(u, x)` with `y` of bidegree (1,1), `u` of (2,1), `x` of (0,1).
pub fn pittie_dolbeault(n: usize) -> Diamond {
    let mut table = vec![vec![0; n + 1]; n + 1];
    for j in 0..n.saturating_sub(1) {
        for (du, dx) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            let p = j + 2 * du;
            let q = j + du + dx;
            if p <= n && q <= n {
                table[p][q] += 1;
            }
        }
    }
    Diamond { kind: Kind::Dolbeault, n, table }
}

use super::{Diamond, Kind};
use crate::error::{Error, Result};

/// Printed diamonds: `(model, kind, pyramid rows)`.
pub const GOLDEN_TABLES: &[(&str, Kind, &str)] = &[
    ("su3", Kind::Dolbeault, include_str!("../../golden/su3_dolbeault.txt")),
    ("su3", Kind::BottChern, include_str!("../../golden/su3_bott_chern.txt")),
    ("spin5", Kind::Dolbeault, include_str!("../../golden/spin5_dolbeault.txt")),
    ("spin5", Kind::BottChern, include_str!("../../golden/spin5_bott_chern.txt")),
    ("g2", Kind::Dolbeault, include_str!("../../golden/g2_dolbeault.txt")),
];

/// Parses a pyramid: line k lists `h^{p,k−p}` with p decreasing. Blank lines and `#` comments are skipped.
pub fn parse_pyramid(kind: Kind, text: &str) -> Result<Diamond> {
    let rows: Vec<Vec<usize>> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad entry `{t}`"))))
                .collect()
        })
        .collect::<Result<_>>()?;
    if rows.len() % 2 == 0 {
        return Err(Error::Parse(format!("a pyramid has an odd number of rows, got {}", rows.len())));
    }
    let n = rows.len() / 2;
    let mut table = vec![vec![0; n + 1]; n + 1];
    for (k, row) in rows.iter().enumerate() {
        let lo = k.saturating_sub(n);
        let hi = k.min(n);
        if row.len() != hi - lo + 1 {
            return Err(Error::Parse(format!("row {k} has {} entries, expected {}", row.len(), hi - lo + 1)));
        }
        for (p, h) in (lo..=hi).rev().zip(row) {
            table[p][k - p] = *h;
        }
    }
    Diamond::new(kind, table)
}

/// The printed diamond for a builtin model, if there is one.
pub fn golden_diamond(model: &str, kind: Kind) -> Option<Diamond> {
    GOLDEN_TABLES
        .iter()
        .find(|(m, k, _)| *m == model && *k == kind)
        .map(|(_, k, text)| parse_pyramid(*k, text).expect("embedded table parses"))
}

use super::model::{CoframeRule, LieAlgebraModel};
use super::roots::root_decomposition;
use super::equations::StructureEquations;
use super::structure::{derive_structure_equations, samelson_structure, ComplexStructureChoice, StructureSign};
use crate::error::{Error, Result};
use crate::exactfield::FieldElement;
use crate::linalg::sparse::{Rref, SparseVec};
use crate::linalg::Mat;

/// Names accepted by [`builtin_model`].
pub const BUILTIN_MODELS: [&str; 3] = ["su3", "spin5", "g2"];

fn fe(s: &str) -> FieldElement {
    s.parse().expect("valid constant")
}

pub fn builtin_model(name: &str) -> Result<LieAlgebraModel> {
    match name {
        "su3" => Ok(su3()),
        "spin5" => Ok(spin5()),
        "g2" => Ok(g2()),
        other => Err(Error::UnknownModel(other.to_string())),
    }
}

/// Totally antisymmetric λ for su(3); the bracket is `[e_i, e_j] = 2 Σ λ_ijk e_k`.
const SU3_LAMBDA: [((usize, usize, usize), &str); 9] = [
    ((1, 2, 3), "-1"),
    ((1, 4, 7), "-1/2"),
    ((1, 5, 6), "1/2"),
    ((2, 4, 6), "-1/2"),
    ((2, 5, 7), "-1/2"),
    ((3, 4, 5), "-1/2"),
    ((3, 6, 7), "1/2"),
    ((4, 5, 8), "-√3/2"),
    ((6, 7, 8), "-√3/2"),
];

/// The λ tensor of su(3), zero-based indices.
pub fn su3_lambda() -> Vec<Vec<Vec<FieldElement>>> {
    let mut l = vec![vec![vec![FieldElement::zero(); 8]; 8]; 8];
    for ((i, j, k), v) in SU3_LAMBDA {
        let v = fe(v);
        let (i, j, k) = (i - 1, j - 1, k - 1);
        for (a, b, c, s) in [(i, j, k, 1), (j, k, i, 1), (k, i, j, 1), (j, i, k, -1), (i, k, j, -1), (k, j, i, -1)] {
            l[a][b][c] = &v * &FieldElement::from_i64(s);
        }
    }
    l
}

fn su3() -> LieAlgebraModel {
    let l = su3_lambda();
    let two = FieldElement::from_i64(2);
    let mut brackets = Vec::new();
    for i in 0..8 {
        for j in i + 1..8 {
            let terms: Vec<_> = (0..8).filter(|&k| !l[i][j][k].is_zero()).map(|k| (k, &two * &l[i][j][k])).collect();
            if !terms.is_empty() {
                brackets.push((i, j, terms));
            }
        }
    }
    LieAlgebraModel::new("su3", 8, &brackets, vec![2, 7])
        .expect("valid table")
        .with_coframe(CoframeRule::PairingDual { scale: fe("1/12") })
}

/// Index pairs (i,j), i<j, of the frame `A_12, A_13, A_23, A_14, A_24, A_34, A_15, A_25, A_35, A_45`.
pub const SPIN5_FRAME: [(usize, usize); 10] =
    [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4), (1, 5), (2, 5), (3, 5), (4, 5)];

/// `A_ij` as a signed frame element, with `A_ji = −A_ij` and `A_ii = 0`.
fn spin5_element(i: usize, j: usize) -> Option<(usize, i64)> {
    if i == j {
        return None;
    }
    let (a, b, s) = if i < j { (i, j, 1) } else { (j, i, -1) };
    SPIN5_FRAME.iter().position(|&x| x == (a, b)).map(|k| (k, s))
}

fn spin5() -> LieAlgebraModel {
    let delta = |a: usize, b: usize| i64::from(a == b);
    let mut brackets = Vec::new();
    for (x, &(i, j)) in SPIN5_FRAME.iter().enumerate() {
        for (y, &(m, n)) in SPIN5_FRAME.iter().enumerate().skip(x + 1) {
            let mut acc = [0i64; 10];
            for (c, (a, b)) in [(delta(m, j), (i, n)), (-delta(n, j), (i, m)), (-delta(m, i), (j, n)), (delta(n, i), (j, m))] {
                if c != 0 {
                    if let Some((k, s)) = spin5_element(a, b) {
                        acc[k] += c * s;
                    }
                }
            }
            let terms: Vec<_> =
                acc.iter().enumerate().filter(|(_, &v)| v != 0).map(|(k, &v)| (k, FieldElement::from_i64(v))).collect();
            if !terms.is_empty() {
                brackets.push((x, y, terms));
            }
        }
    }
    LieAlgebraModel::new("spin5", 10, &brackets, vec![0, 9])
        .expect("valid table")
        .with_coframe(CoframeRule::PairingDual { scale: fe("1/12") })
}

/// Frame positions of the complex g2 model: `h1, h2, φ1 … φ6, φ̄1 … φ̄6`.
pub mod g2_frame {
    pub const H1: usize = 0;
    pub const H2: usize = 1;
    pub const fn phi(k: usize) -> usize {
        1 + k
    }
    pub const fn phibar(k: usize) -> usize {
        7 + k
    }
}

/// Signs `ε_k` of the compact real form: `τ(φ_k) = ε_k φ̄_k`, `τ(h) = −h`.
pub const G2_CONJUGATION_SIGNS: [i64; 6] = [-1, -1, 1, -1, 1, -1];

fn g2() -> LieAlgebraModel {
    use g2_frame::{phi as p, phibar as q, H1, H2};
    let r1 = [2, -3, -1, 1, 3, 0];
    let r2 = [-1, 2, 1, 0, -1, 1];
    let mut table: Vec<(usize, usize, Vec<(usize, i64)>)> = Vec::new();
    for k in 1..=6 {
        for (h, r) in [(H1, r1[k - 1]), (H2, r2[k - 1])] {
            if r != 0 {
                table.push((h, p(k), vec![(p(k), r)]));
                table.push((h, q(k), vec![(q(k), -r)]));
            }
        }
    }
    let rows: [(usize, usize, &[(usize, i64)]); 36] = [
        (p(1), q(1), &[(H1, 1)]),
        (p(1), p(2), &[(p(3), 1)]),
        (p(1), p(3), &[(p(4), 1)]),
        (p(1), q(3), &[(q(2), 3)]),
        (p(1), p(4), &[(p(5), 1)]),
        (p(1), q(4), &[(q(3), 4)]),
        (p(1), q(5), &[(q(4), 3)]),
        (q(1), q(2), &[(q(3), 1)]),
        (q(1), p(3), &[(p(2), 3)]),
        (q(1), q(3), &[(q(4), 1)]),
        (q(1), p(4), &[(p(3), 4)]),
        (q(1), q(4), &[(q(5), 1)]),
        (q(1), p(5), &[(p(4), 3)]),
        (p(2), q(2), &[(H2, 1)]),
        (p(2), q(3), &[(q(1), -1)]),
        (p(2), p(5), &[(p(6), 1)]),
        (p(2), q(6), &[(q(5), 1)]),
        (q(2), p(3), &[(p(1), -1)]),
        (q(2), q(5), &[(q(6), 1)]),
        (q(2), p(6), &[(p(5), 1)]),
        (p(3), q(3), &[(H1, -1), (H2, -3)]),
        (p(3), p(4), &[(p(6), -1)]),
        (p(3), q(4), &[(q(1), 4)]),
        (p(3), q(6), &[(q(4), 3)]),
        (q(3), p(4), &[(p(1), 4)]),
        (q(3), q(4), &[(q(6), -1)]),
        (q(3), p(6), &[(p(4), 3)]),
        (p(4), q(4), &[(H1, 8), (H2, 12)]),
        (p(4), q(5), &[(q(1), -12)]),
        (p(4), q(6), &[(q(3), 12)]),
        (q(4), p(5), &[(p(1), -12)]),
        (q(4), p(6), &[(p(3), 12)]),
        (p(5), q(5), &[(H1, -36), (H2, -36)]),
        (p(5), q(6), &[(q(2), 36)]),
        (q(5), p(6), &[(p(2), 36)]),
        (p(6), q(6), &[(H1, 36), (H2, 72)]),
    ];
    for (a, b, t) in rows {
        table.push((a, b, t.to_vec()));
    }
    let brackets: Vec<_> = table
        .into_iter()
        .map(|(a, b, t)| (a, b, t.into_iter().map(|(k, c)| (k, FieldElement::from_i64(c))).collect()))
        .collect();
    let mut t = Mat::zeros(14, 14);
    t[(H1, H1)] = FieldElement::from_i64(-1);
    t[(H2, H2)] = FieldElement::from_i64(-1);
    for k in 1..=6 {
        let e = FieldElement::from_i64(G2_CONJUGATION_SIGNS[k - 1]);
        t[(p(k), q(k))] = e.clone();
        t[(q(k), p(k))] = e;
    }
    LieAlgebraModel::new("g2", 14, &brackets, vec![H1, H2])
        .expect("valid table")
        .with_conjugation(t)
        .expect("involution")
        .with_coframe(CoframeRule::DualBasis { scale: FieldElement::from_i64(-1) })
}

/// Torus parameter `(a, b)` of the isotropic structures of a builtin model.
pub fn isotropic_parameter(model: &str, sign: StructureSign) -> Result<(FieldElement, FieldElement)> {
    let s = match sign {
        StructureSign::Plus => 1,
        StructureSign::Minus => -1,
    };
    match (model, sign) {
        ("su3", StructureSign::Plus) => Ok((FieldElement::zero(), FieldElement::from_i64(-1))),
        ("su3", StructureSign::Minus) => Err(Error::Structure("su3 carries a single isotropic structure".into())),
        ("spin5", _) => Ok((FieldElement::zero(), FieldElement::from_i64(s))),
        ("g2", _) => {
            let r = FieldElement::sqrt3() * FieldElement::from_i64(s);
            Ok((r.clone(), r * FieldElement::from_i64(2)))
        }
        (other, _) => Err(Error::UnknownModel(other.to_string())),
    }
}

/// (1,0) frame of a builtin model with the torus slot marked by `None`.
fn standard_frame(model: &str) -> Result<Vec<Option<Vec<(usize, &'static str)>>>> {
    use g2_frame::phi;
    let e = |i: usize| i - 1;
    Ok(match model {
        "su3" => vec![
            Some(vec![(e(1), "1"), (e(2), "i")]),
            Some(vec![(e(4), "1"), (e(5), "i")]),
            Some(vec![(e(6), "1"), (e(7), "-i")]),
            None,
        ],
        "spin5" => vec![
            None,
            Some(vec![(e(2), "1"), (e(3), "i")]),
            Some(vec![(e(4), "-1"), (e(5), "-i")]),
            Some(vec![(e(7), "1"), (e(8), "i")]),
            Some(vec![(e(6), "1"), (e(9), "i")]),
        ],
        "g2" => {
            let mut v: Vec<_> = (1..=6).map(|k| Some(vec![(phi(k), "1")])).collect();
            v.push(None);
            v
        }
        other => return Err(Error::UnknownModel(other.to_string())),
    })
}

/// `(1 − a i) H₁ − b i H₂` on the first two torus generators.
pub fn torus_vector(model: &LieAlgebraModel, a: &FieldElement, b: &FieldElement) -> Result<Vec<FieldElement>> {
    let t = model.torus();
    if t.len() != 2 {
        return Err(Error::InvalidModel("the torus parameter needs a rank-2 torus".into()));
    }
    let i = FieldElement::i();
    let mut v = vec![FieldElement::zero(); model.dim()];
    v[t[0]] = FieldElement::one() - a * &i;
    v[t[1]] = -(b * &i);
    Ok(v)
}

/// The isotropic structure of a builtin model in its standard frame.
pub fn standard_structure(model: &LieAlgebraModel, sign: StructureSign) -> Result<ComplexStructureChoice> {
    let (a, b) = isotropic_parameter(model.name(), sign)?;
    structure_with_parameter(model, a, b)
}

/// Builtin frame with an arbitrary torus parameter; other models use the default positive system.
pub fn structure_with_parameter(model: &LieAlgebraModel, a: FieldElement, b: FieldElement) -> Result<ComplexStructureChoice> {
    let Ok(slots) = standard_frame(model.name()) else {
        let roots = root_decomposition(model)?;
        let positive: Vec<_> = roots.into_iter().filter(|r| r.positive).collect();
        return samelson_structure(model, &positive, (a, b));
    };
    let torus = torus_vector(model, &a, &b)?;
    let frame: Vec<Vec<FieldElement>> = slots
        .iter()
        .map(|s| match s {
            None => torus.clone(),
            Some(entries) => {
                let mut v = vec![FieldElement::zero(); model.dim()];
                for (k, c) in entries {
                    v[*k] = fe(c);
                }
                v
            }
        })
        .collect();
    let roots = root_decomposition(model)?;
    let span = Rref::span_of(frame.iter().map(|v| sparse_of(v)));
    let positive: Vec<_> = roots
        .into_iter()
        .filter(|r| span.coordinates(&sparse_of(&r.eigenvector)).is_some())
        .map(|mut r| {
            r.positive = true;
            r
        })
        .collect();
    samelson_structure(model, &positive, (a, b))?.with_frame(frame)
}

/// Structure equations of a builtin model with one of its isotropic structures.
pub fn standard_equations(name: &str, sign: StructureSign) -> Result<StructureEquations> {
    let model = builtin_model(name)?;
    derive_structure_equations(&standard_structure(&model, sign)?)
}

fn sparse_of(v: &[FieldElement]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// Diagonal of the Hermitian matrix of the bi-invariant metric `ω_BF` in the standard frame.
pub fn bi_invariant_metric(model: &str) -> Result<Vec<FieldElement>> {
    let v: Vec<i64> = match model {
        "su3" => vec![1; 4],
        "spin5" => vec![1; 5],
        "g2" => vec![6, 2, 6, 24, 72, 72, 24],
        other => return Err(Error::UnknownModel(other.to_string())),
    };
    Ok(v.into_iter().map(FieldElement::from_i64).collect())
}

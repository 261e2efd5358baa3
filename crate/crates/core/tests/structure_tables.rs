use samelson::bicomplex::{build_differentials, verify_bicomplex, Form};
use samelson::liealg::{builtin_model, derive_structure_equations, standard_structure, StructureEquations, StructureSign};
use samelson::FieldElement;

fn derived(model: &str, sign: StructureSign) -> StructureEquations {
    let m = builtin_model(model).unwrap();
    derive_structure_equations(&standard_structure(&m, sign).unwrap()).unwrap()
}

fn full_d(se: &StructureEquations, k: usize) -> Form {
    se.d_slot(k)
}

/// Multiplies each term by the product of `signs[l]` over its antiholomorphic indices.
fn rebar(f: &Form, signs: &[i64]) -> Form {
    let mut out = Form::zero(f.n());
    for (m, c) in f.terms() {
        let s: i64 = m.anti_indices().iter().map(|&l| signs[l]).product();
        out.add_term(*m, c * &FieldElement::from_i64(s));
    }
    out
}

fn su3_table() -> Vec<&'static str> {
    vec![
        "-i[14|] - i[1|4] + i[23|]",
        "i[1|3] - 1/2(√3+i)[24|] + 1/2(√3-i)[2|4]",
        "-i[1|2] + 1/2(√3-i)[34|] - 1/2(√3+i)[3|4]",
        "i[1|1] + 1/2(-√3+i)[2|2] + 1/2(√3+i)[3|3]",
    ]
}

fn spin5_table(s: i64) -> Vec<String> {
    let t = |x: &str| x.replace("S", if s > 0 { "" } else { "-" });
    vec![
        t("i[2|2] + i[3|3] + (S i)[3|4] - (S i)[4|3] + i[4|4] + (S 1)[5|5]"),
        t("i[12|] - [35|] - i[45|] - i[2|1] - [3|5] + i[4|5]"),
        t("i[13|] + (S i)[14|] + [25|] + [2|5] - i[3|1] + (S i)[4|1]"),
        t("-(S i)[13|] + i[14|] + i[25|] - i[2|5] - (S i)[3|1] - i[4|1]"),
        t("-(S 1)[15|] - [2|3] + i[2|4] + [3|2] - i[4|2] - (S 1)[5|1]"),
    ]
}

fn g2_table(s: i64) -> Vec<String> {
    let t = |x: &str| x.replace("S", if s > 0 { "" } else { "-" });
    vec![
        t("-2[17|] - [2|3] + 4[3|4] - 12[4|5] - 2[7|1]"),
        t("(S i√3 + 3)[27|] + (S i√3 - 3)[2|7] - 3[3|1] - 36[6|5]"),
        t("[12|] + (S i√3 + 1)[37|] + (S i√3 - 1)[3|7] - 4[4|1] - 12[6|4]"),
        t("[13|] + (S i√3 - 1)[47|] + (S i√3 + 1)[4|7] - 3[5|1] - 3[6|3]"),
        t("[14|] + (S i√3 - 3)[57|] + (S i√3 + 3)[5|7] - [6|2]"),
        t("[25|] - [34|] + (S 2i√3)[67|] + (S 2i√3)[6|7]"),
        t("1/2[1|1] + (S i√3/12 - 1/4)[2|2] + (S (-i√3/4) + 1/4)[3|3] + (S i√3 + 1)[4|4] + (S (-3i√3) - 9)[5|5] + (S 6i√3)[6|6]"),
    ]
}

fn mismatches(se: &StructureEquations, table: &[String], bar_signs: &[i64]) -> Vec<(usize, Form, Form)> {
    let n = se.n();
    let mut out = Vec::new();
    for (k, src) in table.iter().enumerate() {
        let paper = rebar(&Form::parse(n, src).unwrap(), bar_signs);
        let ours = full_d(se, k);
        if paper != ours {
            out.push((k, ours, paper));
        }
    }
    out
}

const G2_BAR_SIGNS: [i64; 7] = [-1, -1, 1, -1, 1, -1, 1];

#[test]
fn su3_matches_table() {
    let se = derived("su3", StructureSign::Plus);
    let t: Vec<String> = su3_table().into_iter().map(String::from).collect();
    assert!(mismatches(&se, &t, &[1; 4]).is_empty());
    assert_eq!(se.del(0), &Form::parse(4, "-i[14|] + i[23|]").unwrap());
    assert!(se.del(3).is_zero());
}

#[test]
fn spin5_matches_table_for_both_structures() {
    for (sign, s) in [(StructureSign::Plus, 1), (StructureSign::Minus, -1)] {
        let se = derived("spin5", sign);
        assert!(mismatches(&se, &spin5_table(s), &[1; 5]).is_empty());
        assert!(!mismatches(&se, &spin5_table(-s), &[1; 5]).is_empty());
    }
}

#[test]
fn g2_matches_table_except_first_delbar() {
    for (sign, s) in [(StructureSign::Plus, 1), (StructureSign::Minus, -1)] {
        let se = derived("g2", sign);
        let bad = mismatches(&se, &g2_table(s), &G2_BAR_SIGNS);
        assert_eq!(bad.len(), 1);
        let (k, ours, printed) = &bad[0];
        assert_eq!(*k, 0);
        assert_eq!(ours.component(2, 0), printed.component(2, 0));
        let expected = rebar(&Form::parse(7, "2[1|7] + [3|2] - 4[4|3] + 12[5|4]").unwrap(), &G2_BAR_SIGNS);
        assert_eq!(ours.component(1, 1), expected);
    }
    let se = derived("g2", StructureSign::Plus);
    assert_eq!(se.delbar(5), &rebar(&Form::parse(7, "2i√3[6|7]").unwrap(), &G2_BAR_SIGNS));
}

#[test]
fn printed_g2_first_delbar_breaks_d_squared() {
    let se = derived("g2", StructureSign::Plus);
    let printed = rebar(&Form::parse(7, &g2_table(1)[0]).unwrap(), &G2_BAR_SIGNS);
    let mut del = Vec::new();
    let mut delbar = Vec::new();
    for k in 0..7 {
        del.push(se.del(k).clone());
        delbar.push(if k == 0 { printed.component(1, 1) } else { se.delbar(k).clone() });
    }
    let broken = StructureEquations::new(7, del, delbar).unwrap();
    let report = verify_bicomplex(&build_differentials(&broken));
    assert!(!report.passed);
    assert!(verify_bicomplex(&build_differentials(&se)).passed);
}

#[test]
fn conjugate_generators_follow_from_coframe() {
    for (name, sign) in [("su3", StructureSign::Plus), ("spin5", StructureSign::Minus), ("g2", StructureSign::Plus)] {
        let m = builtin_model(name).unwrap();
        let cs = standard_structure(&m, sign).unwrap();
        let se = derive_structure_equations(&cs).unwrap();
        let n = se.n();
        let rows = cs.coframe_matrix().unwrap();
        let w = cs.dual_frame().unwrap();
        let slot = |a: usize| if a < n { format!("[{}|]", a + 1) } else { format!("[|{}]", a - n + 1) };
        for k in 0..n {
            let row = rows.row(n + k);
            let mut f = Form::zero(n);
            for a in 0..2 * n {
                for b in a + 1..2 * n {
                    let br = m.bracket(&w.column(a), &w.column(b));
                    let v: FieldElement = row.iter().zip(&br).map(|(x, y)| x * y).sum();
                    if !v.is_zero() {
                        let ta = Form::parse(n, &slot(a)).unwrap();
                        let tb = Form::parse(n, &slot(b)).unwrap();
                        f = f.add(&ta.wedge(&tb).unwrap().scale(&-v)).unwrap();
                    }
                }
            }
            assert_eq!(f, se.d_slot(n + k), "{name} φ̄{}", k + 1);
        }
    }
}

#[test]
fn g2_printed_bi_invariant_form_is_the_negative_of_the_positive_one() {
    let printed = Form::parse(7, "3i[1|1] + i[2|2] - 3i[3|3] + 12i[4|4] - 36i[5|5] + 36i[6|6] - 12i[7|7]").unwrap();
    let ours = samelson::hermflow::StandardManifold::new("g2", StructureSign::Plus).unwrap().reference.kahler_form();
    assert_eq!(rebar(&printed, &G2_BAR_SIGNS), ours.neg());
}

#[test]
fn su3_printed_bi_invariant_form() {
    let printed = Form::parse(4, "1/2i[1|1] + 1/2i[2|2] + 1/2i[3|3] + 1/2i[4|4]").unwrap();
    assert_eq!(samelson::hermflow::ExactMetric::identity(4).kahler_form(), printed);
}

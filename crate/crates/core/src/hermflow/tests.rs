use super::*;
use crate::bicomplex::{Bicomplex, Form, Hodge, Op};
use crate::exactfield::FieldElement;
use crate::linalg::Mat;
use crate::liealg::StructureSign;

fn fe(s: &str) -> FieldElement {
    s.parse().unwrap()
}

fn all_manifolds() -> Vec<StandardManifold> {
    [("su3", StructureSign::Plus), ("spin5", StructureSign::Plus), ("spin5", StructureSign::Minus), ("g2", StructureSign::Plus)]
        .into_iter()
        .map(|(m, s)| StandardManifold::new(m, s).unwrap())
        .collect()
}

fn su3() -> StandardManifold {
    StandardManifold::new("su3", StructureSign::Plus).unwrap()
}

fn skewed_su3_metric() -> ExactMetric {
    let rows = [["2", "i", "0", "0"], ["-i", "3", "0", "1"], ["0", "0", "1", "0"], ["0", "1", "0", "2"]];
    ExactMetric::new(Mat::from_rows(rows.iter().map(|r| r.iter().map(|x| fe(x)).collect()).collect())).unwrap()
}

fn inner(g: &Mat<FieldElement>, u: &[FieldElement], v: &[FieldElement]) -> FieldElement {
    let vb: Vec<FieldElement> = v.iter().map(|x| x.conj()).collect();
    u.iter().zip(g.mul_vec(&vb)).map(|(a, b)| a * &b).sum()
}

fn sample_vector(len: usize, seed: i64) -> Vec<FieldElement> {
    (0..len as i64)
        .map(|k| FieldElement::from_i64((k * 7 + seed) % 5 - 2) + FieldElement::i() * FieldElement::from_i64((k * 3 + seed) % 4 - 1))
        .collect()
}

#[test]
fn codifferentials_are_adjoint() {
    let m = su3();
    let bc = &m.bicomplex;
    let metric = skewed_su3_metric();
    let hodge = Hodge::new(metric.matrix()).unwrap();
    for (p, q) in [(0, 1), (1, 0), (1, 1), (2, 1)] {
        for op in [Op::Del, Op::Delbar] {
            let d = bc.block(op, p, q).to_dense();
            let (tp, tq) = bc.block(op, p, q).target;
            let star = codifferential(bc, &hodge, op, p, q).unwrap();
            let x = sample_vector(d.cols(), 1);
            let y = sample_vector(d.rows(), 2);
            let gs = hodge.gram(bc.basis(), p, q);
            let gt = hodge.gram(bc.basis(), tp, tq);
            assert_eq!(inner(&gt, &d.mul_vec(&x), &y), inner(&gs, &x, &star.mul_vec(&y)), "{op:?} ({p},{q})");
        }
    }
}

#[test]
fn ricci_vanishes_on_the_bi_invariant_ray() {
    for m in all_manifolds() {
        for c in ["1", "2", "1/2"] {
            let metric = m.reference.scaled(&fe(c)).unwrap();
            assert!(bismut_ricci_11(&m.bicomplex, &metric).unwrap().is_zero(), "{} {c}", m.model);
            assert!(is_pluriclosed(&m.bicomplex, &metric), "{}", m.model);
        }
    }
}

#[test]
fn chern_ricci_of_su3() {
    let m = su3();
    let expected = Form::parse(4, "4i[1|1] + 2i[2|2] + 2i[3|3]").unwrap();
    assert_eq!(chern_ricci_form(&m.bicomplex), expected);
}

#[test]
fn ricci_agrees_with_curvature_trace() {
    let m = su3();
    let se = m.bicomplex.equations();
    let metrics = [ExactMetric::identity(4), ExactMetric::diagonal(&[fe("2"), fe("1"), fe("1"), fe("1")]).unwrap(), skewed_su3_metric()];
    for metric in metrics {
        let trace = bismut_ricci_form(se, &metric).unwrap().component(1, 1);
        assert_eq!(trace, bismut_ricci_11(&m.bicomplex, &metric).unwrap());
    }
    for m in all_manifolds().into_iter().skip(1) {
        let mut d = bi_diagonal(&m);
        d[0] = &d[0] * &fe("3");
        let metric = ExactMetric::diagonal(&d).unwrap();
        let se = m.bicomplex.equations();
        let trace = bismut_ricci_form(se, &metric).unwrap().component(1, 1);
        assert_eq!(trace, bismut_ricci_11(&m.bicomplex, &metric).unwrap(), "{}", m.model);
    }
}

fn bi_diagonal(m: &StandardManifold) -> Vec<FieldElement> {
    (0..m.n()).map(|k| m.reference.matrix()[(k, k)].clone()).collect()
}

#[test]
fn bismut_connection_is_flat_at_bi_invariant_metric() {
    for m in all_manifolds() {
        let r = bismut_curvature(m.bicomplex.equations(), &m.reference).unwrap();
        assert!(r.metric_compatible && r.complex_compatible && r.torsion_is_jdw, "{}", m.model);
        assert!(r.is_flat(), "{}: {} nonzero", m.model, r.nonzero_components);
        assert!(bismut_ricci_form(m.bicomplex.equations(), &m.reference).unwrap().is_zero());
    }
}

#[test]
fn torus_pairing_descends_to_aeppli() {
    for m in all_manifolds() {
        let pairing = TorusPairing::new(&m.reference.kahler_form(), m.torus_slot).unwrap();
        assert!(pairing.vanishes_on_exact(&m.bicomplex), "{}", m.model);
        assert_eq!(pairing.pair(&m.reference.kahler_form()).unwrap(), FieldElement::one());
        let moved = m.reference.kahler_form().add(&m.bicomplex.del(&Form::phibar(m.n(), 0))).unwrap();
        assert_eq!(pairing.pair(&moved).unwrap(), FieldElement::one());
    }
}

#[test]
fn float_ricci_matches_exact() {
    let m = su3();
    let metric = skewed_su3_metric();
    let exact = RicciOperator::<FieldElement>::new(&m.bicomplex).ricci(metric.matrix()).unwrap();
    let float = RicciOperator::<num_complex::Complex64>::new(&m.bicomplex).ricci(metric.to_float().matrix()).unwrap();
    let diff = float.sub(&exact.map(|x| x.to_complex_float())).frobenius_norm();
    assert!(diff < 1e-12, "{diff}");
}

#[test]
fn ricci_has_zero_torus_pairing() {
    let m = su3();
    let pairing = TorusPairing::new(&m.reference.kahler_form(), m.torus_slot).unwrap();
    let ric = bismut_ricci_11(&m.bicomplex, &skewed_su3_metric()).unwrap();
    assert!(pairing.pair(&ric).unwrap().is_zero());
}

#[test]
fn flow_from_bi_invariant_metric_stops_at_once() {
    let m = su3();
    let problem = m.flow_problem().unwrap();
    let out = pluriclosed_flow(&problem, &m.reference.scaled(&fe("2")).unwrap().to_float(), &FlowOptions::default(), |_| {}).unwrap();
    assert_eq!(out.steps, 0);
    assert_eq!(out.verdict, FlowVerdict::Converged { lambda: 2.0 });
}

#[test]
fn flow_converges_from_a_small_perturbation() {
    let m = su3();
    let bc: &Bicomplex = &m.bicomplex;
    let problem = m.flow_problem().unwrap();
    let p = sample_perturbation(bc, &problem, 0.05, 7, PerturbationMode::Pluriclosed).unwrap();
    let h0 = FloatMetric::new(problem.reference.add(&p)).unwrap();
    let out = pluriclosed_flow(&problem, &h0, &FlowOptions::default(), |_| {}).unwrap();
    assert!(matches!(out.verdict, FlowVerdict::Converged { .. }), "{:?}", out.verdict);
    assert!(out.max_lambda_deviation < 1e-9);
    assert!(out.max_pluriclosed_residual < 1e-9);
}

#[test]
fn positivity_loss_keeps_last_good_state() {
    let m = su3();
    let problem = m.flow_problem().unwrap();
    let p = sample_perturbation(&m.bicomplex, &problem, 0.3, 3, PerturbationMode::Pluriclosed).unwrap();
    let h0 = FloatMetric::new(problem.reference.add(&p)).unwrap();
    let options = FlowOptions { dt: 1e9, max_steps: 10, tol: 1e-8, every: 1 };
    let out = pluriclosed_flow(&problem, &h0, &options, |_| {}).unwrap();
    assert!(matches!(out.verdict, FlowVerdict::Diverged { .. }), "{:?}", out.verdict);
    assert_eq!(out.steps, 0);
    assert!(out.final_state.h.is_positive_definite());
}

#[test]
fn codifferential_scales_inversely_with_the_metric() {
    let m = su3();
    let bc = &m.bicomplex;
    let h = skewed_su3_metric();
    let base = Hodge::new(h.matrix()).unwrap();
    let doubled = Hodge::new(h.scaled(&fe("2")).unwrap().matrix()).unwrap();
    for (p, q) in [(0, 1), (1, 1), (2, 1)] {
        let a = codifferential(bc, &base, Op::Del, p, q).unwrap();
        let b = codifferential(bc, &doubled, Op::Del, p, q).unwrap();
        assert_eq!(b, a.scale(&fe("1/2")), "({p},{q})");
    }
}

#[test]
fn codifferential_into_constants_vanishes() {
    // ∂1 = ∂̄1 = 0, so ∂* and ∂̄* vanish on (1,0)- and (0,1)-forms.
    let m = su3();
    let adj = codifferential_adjoints(&m.bicomplex, &m.reference).unwrap();
    let ((p, q), del, delbar) = &adj.blocks[0];
    assert_eq!((*p, *q), (0, 0));
    assert!(del.is_zero() && delbar.is_zero());
}

#[test]
fn non_bi_invariant_metric_is_not_flat() {
    let m = su3();
    let metric = ExactMetric::diagonal(&[fe("2"), fe("1"), fe("1"), fe("1")]).unwrap();
    let r = bismut_curvature(m.bicomplex.equations(), &metric).unwrap();
    assert!(r.metric_compatible && r.complex_compatible && r.torsion_is_jdw);
    assert!(!r.is_flat());
    assert!(r.max_component > 0.1);
}

#[test]
fn ricci_is_aeppli_trivial() {
    use crate::cohomology::{class_of, Kind};
    let m = su3();
    let ric = bismut_ricci_11(&m.bicomplex, &skewed_su3_metric()).unwrap();
    assert!(!ric.is_zero());
    assert_eq!(ric.conjugate(), ric);
    assert!(class_of(&m.bicomplex, &ric, Kind::Aeppli).unwrap().is_exact());
}

#[test]
fn torus_pairing_is_linear() {
    let m = su3();
    let pairing = TorusPairing::new(&m.reference.kahler_form(), m.torus_slot).unwrap();
    let two = m.reference.kahler_form().scale(&fe("2"));
    assert_eq!(pairing.pair(&two).unwrap(), fe("2"));
    assert!((pairing.pair_metric(&m.reference.to_float().matrix().scale(&num_complex::Complex64::new(2.0, 0.0))) - 2.0).abs() < 1e-15);
}

/// `∂∂̄(a ∧ b) = ∂∂̄a ∧ b + ∂̄a ∧ ∂b − ∂a ∧ ∂̄b + a ∧ ∂∂̄b` for 1-forms `a = φ^1`, `b = φ̄^1`.
fn del_delbar_phi11(bc: &Bicomplex) -> Form {
    let (a, b) = (Form::phi(4, 0), Form::phibar(4, 0));
    let w = |x: &Form, y: &Form| x.wedge(y).unwrap();
    let dd = |x: &Form| bc.del(&bc.delbar(x));
    w(&dd(&a), &b)
        .add(&w(&bc.delbar(&a), &bc.del(&b)))
        .unwrap()
        .sub(&w(&bc.del(&a), &bc.delbar(&b)))
        .unwrap()
        .add(&w(&a, &dd(&b)))
        .unwrap()
}

#[test]
fn diagonal_perturbation_pluriclosed_verdict() {
    let m = su3();
    let bc = &m.bicomplex;
    let expected = del_delbar_phi11(bc);
    assert_eq!(bc.del(&bc.delbar(&Form::parse(4, "[1|1]").unwrap())), expected);
    let eps = fe("1/20");
    let metric = ExactMetric::diagonal(&[fe("1") + &eps, fe("1"), fe("1"), fe("1")]).unwrap();
    assert_eq!(is_pluriclosed(bc, &metric), expected.is_zero());
    assert!(!expected.is_zero());
}

#[test]
fn aeppli_exactness_agrees_with_class_computation() {
    use crate::cohomology::{class_of, Kind};
    for m in all_manifolds() {
        let ex = AeppliExactness::new(&m.bicomplex);
        let n = m.n();
        assert_eq!(ex.dim() + 1, pluriclosed_directions(&m.bicomplex).unwrap().len());
        let block = |f: &Form| {
            let v = m.bicomplex.basis().vector(f, 1, 1);
            let mut dense = vec![FieldElement::zero(); n * n];
            for (i, x) in v {
                dense[i] = x;
            }
            dense
        };
        let omega = m.reference.kahler_form();
        assert!(!ex.contains(&block(&omega)));
        assert!(!class_of(&m.bicomplex, &omega, Kind::Aeppli).unwrap().is_exact());
        let ric = bismut_ricci_11(&m.bicomplex, &ExactMetric::diagonal(&vec![fe("1"); n]).unwrap()).unwrap();
        assert_eq!(ex.contains(&block(&ric)), class_of(&m.bicomplex, &ric, Kind::Aeppli).unwrap().is_exact());
    }
}

#[test]
fn flow_velocity_residual_is_round_off() {
    let m = su3();
    let problem = m.flow_problem().unwrap();
    let ex = AeppliExactness::new(&m.bicomplex);
    let h = skewed_su3_metric().to_float();
    let r = ex.velocity_residual(&problem.ricci, h.matrix()).unwrap();
    assert!(r < 1e-12, "{r}");
    let omega = problem.ricci.coefficients_to_block(&problem.reference);
    assert!(ex.residual(&omega) > 0.1);
}

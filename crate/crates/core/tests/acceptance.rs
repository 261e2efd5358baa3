use std::io::Write;
use std::time::{Duration, Instant};

use samelson::bicomplex::{Basis, Bicomplex, Form};
use samelson::cohomology::{
    class_of, cohomology, diamond, duality_check, golden_diamond, independent_modulo_exact, ClassVerdict, Diamond, Kind,
};
use samelson::hermflow::{
    bismut_curvature, bismut_ricci_11, pluriclosed_flow, sample_perturbation, FloatMetric, FlowOptions, FlowVerdict,
    PerturbationMode, StandardManifold,
};
use samelson::liealg::{standard_equations, StructureSign};

use StructureSign::{Minus, Plus};

const STRUCTURES: [(&str, StructureSign); 5] =
    [("su3", Plus), ("spin5", Plus), ("spin5", Minus), ("g2", Plus), ("g2", Minus)];

fn manifold(model: &str, sign: StructureSign) -> StandardManifold {
    StandardManifold::new(model, sign).unwrap()
}

fn label(model: &str, sign: StructureSign) -> String {
    format!("{model}{}", if sign == Plus { "+" } else { "-" })
}

/// Writes past the test harness capture so every verdict reaches the log.
fn report(id: usize, name: &str, elapsed: Duration, outcome: &Result<String, String>) {
    let line = match outcome {
        Ok(detail) => format!("criterion {id:>2} PASS  {name} ({:.2} s) {detail}\n", elapsed.as_secs_f64()),
        Err(why) => format!("criterion {id:>2} FAIL  {name} ({:.2} s) {why}\n", elapsed.as_secs_f64()),
    };
    let mut out = std::io::stdout().lock();
    out.write_all(line.as_bytes()).unwrap();
    out.flush().unwrap();
}

fn run(id: usize, name: &str, limit: Option<Duration>, check: impl FnOnce() -> Result<String, String>) {
    let start = Instant::now();
    let mut outcome = check();
    let elapsed = start.elapsed();
    if let (Ok(detail), Some(limit)) = (&outcome, limit) {
        if elapsed > limit {
            outcome = Err(format!("{detail}; exceeded {:.0} s", limit.as_secs_f64()));
        }
    }
    report(id, name, elapsed, &outcome);
    if let Err(why) = outcome {
        panic!("criterion {id} failed: {why}");
    }
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn golden_match(model: &str, sign: StructureSign, kind: Kind) -> Result<(), String> {
    let got = diamond(&manifold(model, sign).bicomplex, kind).map_err(|e| e.to_string())?;
    let want = golden_diamond(model, kind).ok_or_else(|| format!("no golden for {model} {kind}"))?;
    ensure(got == want, || format!("{} {kind} differs at {:?}", label(model, sign), got.differences(&want)))
}

#[test]
fn criterion_01_su3_dolbeault() {
    run(1, "su3 Dolbeault diamond equals the printed table", Some(Duration::from_secs(2)), || {
        golden_match("su3", Plus, Kind::Dolbeault)?;
        let d = diamond(&manifold("su3", Plus).bicomplex, Kind::Dolbeault).unwrap();
        let spot = [((0, 0), 1), ((0, 1), 1), ((1, 0), 0), ((1, 1), 1), ((2, 2), 2), ((4, 3), 1), ((3, 4), 0), ((4, 4), 1)];
        for ((p, q), h) in spot {
            ensure(d.get(p, q) == h, || format!("h^{{{p},{q}}} = {} expected {h}", d.get(p, q)))?;
        }
        Ok(String::new())
    });
}

#[test]
fn criterion_02_su3_bott_chern() {
    run(2, "su3 Bott-Chern diamond equals the printed table", Some(Duration::from_secs(5)), || {
        golden_match("su3", Plus, Kind::BottChern)?;
        let d = diamond(&manifold("su3", Plus).bicomplex, Kind::BottChern).unwrap();
        ensure(d.row(3) == vec![0, 1, 1, 0] && d.row(7) == vec![1, 1], || "rows 3 or 7 differ".into())?;
        Ok(format!("h11 = {}, h22 = {}", d.get(1, 1), d.get(2, 2)))
    });
}

#[test]
fn criterion_03_spin5_bott_chern() {
    run(3, "spin5 Bott-Chern diamond equals the printed table for both structures", Some(Duration::from_secs(30)), || {
        golden_match("spin5", Plus, Kind::BottChern)?;
        golden_match("spin5", Minus, Kind::BottChern)?;
        Ok("J+ and J-".into())
    });
}

#[test]
fn criterion_04_g2_dolbeault() {
    run(4, "g2 Dolbeault diamond equals the printed table", Some(Duration::from_secs(300)), || {
        golden_match("g2", Plus, Kind::Dolbeault)?;
        golden_match("g2", Minus, Kind::Dolbeault)?;
        Ok("J+ and J-".into())
    });
}

#[test]
fn criterion_05_aeppli_11_generated_by_bi_invariant_form() {
    run(5, "H^{1,1}_A is spanned by the class of the bi-invariant form", None, || {
        for (model, sign) in STRUCTURES {
            let m = manifold(model, sign);
            let r = cohomology(&m.bicomplex, Kind::Aeppli, 1, 1).map_err(|e| e.to_string())?;
            ensure(r.dimension == 1, || format!("{}: dimension {}", label(model, sign), r.dimension))?;
            let v = class_of(&m.bicomplex, &m.reference.kahler_form(), Kind::Aeppli).map_err(|e| e.to_string())?;
            ensure(matches!(&v, ClassVerdict::Coordinates(c) if !c[0].is_zero()), || {
                format!("{}: class of the bi-invariant form is {v:?}", label(model, sign))
            })?;
        }
        Ok("all five structures".into())
    });
}

#[test]
fn criterion_06_bott_chern_aeppli_duality() {
    run(6, "h_BC(p,q) = h_A(n-q,n-p) with Hodge star check", None, || {
        for (model, sign) in STRUCTURES {
            let m = manifold(model, sign);
            let r = duality_check(&m.bicomplex, Some(&m.reference)).map_err(|e| e.to_string())?;
            ensure(r.passed && r.star_checked, || format!("{}: {:?}", label(model, sign), r.failure))?;
        }
        Ok("all five structures".into())
    });
}

#[test]
fn criterion_07_conjugation_symmetry_and_euler() {
    run(7, "Bott-Chern conjugation symmetry and vanishing Dolbeault Euler characteristic", None, || {
        for (model, sign) in STRUCTURES {
            let bc = manifold(model, sign).bicomplex;
            let b: Diamond = diamond(&bc, Kind::BottChern).unwrap();
            ensure(b.is_conjugation_symmetric(), || format!("{}: BC not symmetric", label(model, sign)))?;
            let d = diamond(&bc, Kind::Dolbeault).unwrap();
            ensure(d.euler_characteristic() == 0, || format!("{}: Euler {}", label(model, sign), d.euler_characteristic()))?;
        }
        Ok("all five structures".into())
    });
}

#[test]
fn criterion_08_bismut_flatness() {
    run(8, "Bismut curvature and Ricci vanish exactly on the bi-invariant ray", None, || {
        for (model, sign) in STRUCTURES {
            let m = manifold(model, sign);
            let r = bismut_curvature(m.bicomplex.equations(), &m.reference).map_err(|e| e.to_string())?;
            ensure(r.is_flat() && r.metric_compatible && r.complex_compatible, || {
                format!("{}: {} nonzero curvature components", label(model, sign), r.nonzero_components)
            })?;
            for c in ["1", "2", "1/2"] {
                let metric = m.reference.scaled(&c.parse().unwrap()).unwrap();
                let ric = bismut_ricci_11(&m.bicomplex, &metric).map_err(|e| e.to_string())?;
                ensure(ric.is_zero(), || format!("{}: Ric({c}·ω) = {ric}", label(model, sign)))?;
            }
        }
        Ok("c in {1, 2, 1/2}".into())
    });
}

#[test]
fn criterion_09_su3_bott_chern_generators() {
    run(9, "listed su3 Bott-Chern generators are closed and independent", None, || {
        let bc = manifold("su3", Plus).bicomplex;
        let listed = [
            "[|]",
            "[1|1] + [2|2]",
            "[2|2] - [3|3]",
            "2[14|1] - 2[23|1] + (1-√3i)[24|2] + (1+√3i)[34|3]",
            "2[1|14] - 2[1|23] + (1+√3i)[2|24] + (1-√3i)[3|34]",
            "[12|12]",
            "[13|13]",
            "2[124|12] + (√3i-1)[234|23]",
            "2[12|124] - (√3i+1)[23|234]",
            "[123|123]",
            "[1234|123]",
            "[123|1234]",
            "[1234|1234]",
        ];
        let mut failed = Vec::new();
        let mut forms = Vec::new();
        for (i, s) in listed.iter().enumerate() {
            let f = Form::parse(4, s).map_err(|e| e.to_string())?;
            let closed = bc.del(&f).is_zero() && bc.delbar(&f).is_zero();
            let line = format!("  generator {:>2} {:<6} {s}\n", i + 1, if closed { "closed" } else { "OPEN" });
            std::io::stdout().lock().write_all(line.as_bytes()).unwrap();
            if !closed {
                failed.push(i + 1);
            }
            forms.push(f);
        }
        ensure(failed.is_empty(), || format!("not closed: {failed:?}"))?;
        let mut by_degree: std::collections::BTreeMap<(usize, usize), Vec<Form>> = Default::default();
        for f in forms {
            by_degree.entry(f.homogeneous_bidegree().unwrap()).or_default().push(f);
        }
        for ((p, q), fs) in &by_degree {
            let ok = independent_modulo_exact(&bc, fs, Kind::BottChern).map_err(|e| e.to_string())?;
            ensure(ok, || format!("dependent in ({p},{q})"))?;
        }
        let total: usize = diamond(&bc, Kind::BottChern).unwrap().total();
        ensure(total == listed.len(), || format!("{} generators for {total} classes", listed.len()))?;
        Ok(format!("{} generators span the {total} classes", listed.len()))
    });
}

#[test]
fn criterion_10_flow_stability() {
    run(10, "pluriclosed flow converges from random perturbations", None, || {
        let mut summary = Vec::new();
        for (model, sign, runs) in [("su3", Plus, 20u64), ("spin5", Plus, 5), ("spin5", Minus, 5), ("g2", Plus, 5), ("g2", Minus, 5)] {
            let start = Instant::now();
            let m = manifold(model, sign);
            let problem = m.flow_problem().unwrap();
            let options = FlowOptions { dt: 1e-3, max_steps: 200_000, tol: 1e-8, every: 0 };
            let (mut worst_drift, mut worst_res, mut worst_t): (f64, f64, f64) = (0.0, 0.0, 0.0);
            for seed in 0..runs {
                let p = sample_perturbation(&m.bicomplex, &problem, 0.05, seed, PerturbationMode::Pluriclosed)
                    .map_err(|e| e.to_string())?;
                let h0 = FloatMetric::new(problem.reference.add(&p)).map_err(|e| e.to_string())?;
                let out = pluriclosed_flow(&problem, &h0, &options, |_| {}).map_err(|e| e.to_string())?;
                let tag = format!("{} seed {seed}", label(model, sign));
                ensure(matches!(out.verdict, FlowVerdict::Converged { .. }), || format!("{tag}: {:?}", out.verdict))?;
                ensure(out.final_state.ricci_norm < 1e-8, || format!("{tag}: Ricci norm {}", out.final_state.ricci_norm))?;
                ensure(out.max_pluriclosed_residual < 1e-7, || format!("{tag}: residual {}", out.max_pluriclosed_residual))?;
                ensure(out.lambda_drift_rate < 1e-8, || format!("{tag}: drift {}", out.lambda_drift_rate))?;
                worst_drift = worst_drift.max(out.lambda_drift_rate);
                worst_res = worst_res.max(out.max_pluriclosed_residual);
                worst_t = worst_t.max(out.final_state.t);
            }
            let elapsed = start.elapsed();
            ensure(elapsed < Duration::from_secs(120), || format!("{}: {:.1} s", label(model, sign), elapsed.as_secs_f64()))?;
            let line = format!(
                "  {:<7} {runs:>2} runs  max T {worst_t:.2}  max drift {worst_drift:.1e}  max residual {worst_res:.1e}  {:.1} s\n",
                label(model, sign),
                elapsed.as_secs_f64()
            );
            std::io::stdout().lock().write_all(line.as_bytes()).unwrap();
            summary.push(label(model, sign));
        }
        Ok(summary.join(", "))
    });
}

#[test]
fn criterion_11_determinism_under_permuted_enumeration() {
    run(11, "permuted monomial enumeration gives identical results", None, || {
        for (model, sign) in [("su3", Plus), ("spin5", Plus)] {
            let se = standard_equations(model, sign).unwrap();
            let n = se.n();
            let a = Bicomplex::new(se.clone());
            let b = Bicomplex::with_basis(se, Basis::shuffled(n, 2024));
            for kind in [Kind::Dolbeault, Kind::BottChern, Kind::Aeppli] {
                ensure(diamond(&a, kind).unwrap() == diamond(&b, kind).unwrap(), || format!("{model} {kind} diamonds"))?;
                for (p, q) in [(1, 1), (2, 1), (1, 2)] {
                    for rep in cohomology(&a, kind, p, q).unwrap().representatives {
                        let x = class_of(&a, &rep, kind).unwrap();
                        let y = class_of(&b, &rep, kind).unwrap();
                        ensure(x == y, || format!("{model} {kind} ({p},{q}) coordinates"))?;
                    }
                }
            }
            let omega = manifold(model, sign).reference.kahler_form();
            ensure(
                class_of(&a, &omega, Kind::Aeppli).unwrap() == class_of(&b, &omega, Kind::Aeppli).unwrap(),
                || format!("{model} class of the bi-invariant form"),
            )?;
        }
        Ok("su3 and spin5".into())
    });
}

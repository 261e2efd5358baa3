use std::fmt::Write;
use std::path::PathBuf;

use rayon::prelude::*;
use samelson::bicomplex::{Bicomplex, Form, Monomial};
use samelson::cohomology::{betti_numbers, class_of, diamond, duality_check, golden_diamond, ClassVerdict, Kind};
use samelson::hermflow::{
    pluriclosed_flow, sample_perturbation, AeppliExactness, FloatMetric, FlowOptions, FlowOutcome, FlowState, PerturbationMode,
};
use samelson::liealg::{bi_invariant_metric, builtin_model, derive_structure_equations, BUILTIN_MODELS};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{ModelSpec, Setup};
use crate::report::{CliError, Report};

#[derive(Clone, Debug, Serialize)]
struct Suite {
    name: &'static str,
    status: &'static str,
    detail: String,
}

impl Suite {
    fn new(name: &'static str, ok: bool, detail: impl Into<String>) -> Self {
        Suite { name, status: if ok { "pass" } else { "fail" }, detail: detail.into() }
    }

    fn skipped(name: &'static str, why: &str) -> Self {
        Suite { name, status: "skipped", detail: why.to_string() }
    }
}

fn triple(t: (usize, usize, usize)) -> String {
    format!("(e{}, e{}, e{})", t.0 + 1, t.1 + 1, t.2 + 1)
}

/// `conj(∂x) = ∂̄(conj x)` on every monomial of degree at most 3.
fn conjugation_witness(bc: &Bicomplex) -> Option<String> {
    let n = bc.n();
    for holo in 0..1u16 << n {
        for anti in 0..1u16 << n {
            if holo.count_ones() + anti.count_ones() > 3 {
                continue;
            }
            let x = Form::monomial(n, Monomial::new(holo, anti), samelson::FieldElement::one());
            if bc.del(&x).conjugate() != bc.delbar(&x.conjugate()) {
                return Some(x.to_string());
            }
        }
    }
    None
}

pub fn verify(setup: &Setup, star: bool, inputs: Value) -> Result<Report, CliError> {
    let mut report = Report::new("verify", inputs);
    let model = &setup.model;
    let mut suites = Vec::new();
    let jacobi = model.check_jacobi();
    let witness = jacobi.violations.first().map(|&t| triple(t));
    suites.push(Suite::new("jacobi", jacobi.passed, witness.map_or("all frame triples".into(), |w| format!("fails on {w}"))));
    let pv = model.pairing_violations();
    suites.push(Suite::new(
        "pairing_invariance",
        pv.is_empty(),
        pv.first().map_or("ad-invariant".into(), |&t| format!("fails on {}", triple(t))),
    ));
    let torus = model.torus();
    let commuting = torus.iter().all(|&s| torus.iter().all(|&t| model.bracket_basis(s, t).is_empty()));
    suites.push(Suite::new("torus", commuting, format!("{} generators", torus.len())));
    suites.push(Suite::new("conjugation_automorphism", model.conjugation_is_automorphism(), ""));
    let model_ok = suites.iter().all(|s| s.status == "pass");
    let later = ["structure", "integrability", "bicomplex", "conjugation", "duality"];
    if !model_ok {
        suites.extend(later.iter().map(|name| Suite::skipped(name, "model checks failed")));
    } else if setup.structure.is_none() {
        report.warnings.push("no --structure given; structure checks skipped".into());
        suites.extend(later.iter().map(|name| Suite::skipped(name, "no structure")));
    } else {
        verify_structure(setup, star, &mut suites, &mut report.warnings);
    }
    report.passed = suites.iter().all(|s| s.status != "fail");
    let mut text = format!("verify {}\n", setup.label());
    for s in &suites {
        let _ = writeln!(text, "  {:<26} {:<8} {}", s.name, s.status, s.detail);
    }
    report.text = text;
    report.results = json!({ "model": setup.label(), "suites": suites });
    Ok(report)
}

fn verify_structure(setup: &Setup, star: bool, suites: &mut Vec<Suite>, warnings: &mut Vec<String>) {
    let cs = match setup.structure_choice() {
        Ok(cs) => cs,
        Err(e) => {
            suites.push(Suite::new("structure", false, e.to_string()));
            return;
        }
    };
    let iso = if cs.is_isotropic() { "isotropic" } else { "not isotropic" };
    suites.push(Suite::new("structure", true, format!("n = {}, {iso}", cs.n())));
    let se = match derive_structure_equations(&cs) {
        Ok(se) => se,
        Err(e) => {
            suites.push(Suite::new("integrability", false, e.to_string()));
            return;
        }
    };
    suites.push(Suite::new("integrability", true, "dΛ^{1,0} ⊆ Λ^{2,0} ⊕ Λ^{1,1}"));
    let bc = Bicomplex::new(se);
    let r = bc.verify();
    let detail = r.failure.as_ref().map_or("∂² = ∂̄² = ∂∂̄ + ∂̄∂ = 0".into(), |f| {
        format!("{} fails at ({},{}) on {}", f.identity, f.bidegree.0, f.bidegree.1, f.witness)
    });
    suites.push(Suite::new("bicomplex", r.passed, detail));
    let w = conjugation_witness(&bc);
    suites.push(Suite::new("conjugation", w.is_none(), w.map_or("conj ∂ = ∂̄ conj".into(), |w| format!("fails on {w}"))));
    let metric = if star {
        match setup.standard() {
            Ok(m) => Some(m.reference),
            Err(e) => {
                warnings.push(format!("star check skipped: {e}"));
                None
            }
        }
    } else {
        None
    };
    match duality_check(&bc, metric.as_ref()) {
        Ok(d) => {
            let what = if d.star_checked { "dimensions and Hodge star" } else { "dimensions" };
            let detail = d.failure.as_ref().map_or(format!("{what}, {} bidegrees", d.bidegrees_checked), |f| {
                format!("fails at ({},{}): {}", f.bidegree.0, f.bidegree.1, f.reason)
            });
            suites.push(Suite::new("duality", d.passed, detail));
        }
        Err(e) => suites.push(Suite::new("duality", false, e.to_string())),
    }
}

pub fn diamond_cmd(setup: &Setup, kind: Kind, expect_paper: bool, inputs: Value) -> Result<Report, CliError> {
    let mut report = Report::new("diamond", inputs);
    let bc = setup.bicomplex()?;
    if kind == Kind::DeRham {
        let b = betti_numbers(&bc);
        if expect_paper {
            report.warnings.push("no paper golden for de Rham cohomology".into());
        }
        report.text = format!("de Rham cohomology of {}\n  betti numbers: {b:?}\n", setup.label());
        report.results = json!({ "model": setup.label(), "kind": kind, "betti": b });
        return Ok(report);
    }
    let d = diamond(&bc, kind)?;
    let mut results = d.to_json(&setup.label());
    results["euler_characteristic"] = json!(d.euler_characteristic());
    results["total"] = json!(d.total());
    let mut text = format!("{kind} numbers of {}\n{}", setup.label(), d.to_ascii());
    let golden = match (&setup.spec, setup.standard()) {
        (ModelSpec::Builtin(name), Ok(_)) => golden_diamond(name, kind),
        _ => None,
    };
    match golden {
        Some(g) => {
            let diff = d.differences(&g);
            results["golden"] = json!(if diff.is_empty() { "match" } else { "mismatch" });
            if !diff.is_empty() {
                results["differences"] = json!(diff);
                let _ = writeln!(text, "differs from the printed table at {diff:?}");
                if expect_paper {
                    report.passed = false;
                }
            } else {
                let _ = writeln!(text, "matches the printed table");
            }
        }
        None => {
            results["golden"] = json!("none");
            let _ = writeln!(text, "no paper golden");
            if expect_paper {
                report.warnings.push(format!("no paper golden for {} {kind}", setup.label()));
            }
        }
    }
    report.text = text;
    report.results = results;
    Ok(report)
}

fn read_form(setup: &Setup, n: usize, source: &str) -> Result<Form, CliError> {
    if source == "omega" {
        return Ok(setup.standard()?.reference.kahler_form());
    }
    let text = match source.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))?,
        None => source.to_string(),
    };
    let trimmed = text.trim();
    if trimmed.starts_with('[') && trimmed.contains('{') {
        return Ok(Form::from_json(n, trimmed)?);
    }
    Ok(Form::parse(n, trimmed)?)
}

pub fn class_cmd(setup: &Setup, kind: Kind, source: &str, inputs: Value) -> Result<Report, CliError> {
    let mut report = Report::new("class", inputs);
    let bc = setup.bicomplex()?;
    let form = read_form(setup, bc.n(), source)?;
    let verdict = class_of(&bc, &form, kind)?;
    let bidegree = form.homogeneous_bidegree();
    let mut text = format!("{kind} class of {form} on {}\n", setup.label());
    let results = match &verdict {
        ClassVerdict::NotClosed => {
            text.push_str("  not closed\n");
            json!({ "kind": kind, "bidegree": bidegree, "form": form, "verdict": "not_closed" })
        }
        ClassVerdict::Coordinates(c) => {
            let shown: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            let label = if verdict.is_exact() { "zero class" } else { "nonzero class" };
            let _ = writeln!(text, "  {label}, coordinates ({})", shown.join(", "));
            json!({
                "kind": kind,
                "bidegree": bidegree,
                "form": form,
                "verdict": if verdict.is_exact() { "exact" } else { "nonzero" },
                "coordinates": c,
                "coordinates_text": shown,
            })
        }
    };
    report.text = text;
    report.results = results;
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct FlowArgs {
    pub eps: f64,
    pub seed: u64,
    pub runs: u64,
    pub perturbation: PerturbationMode,
    pub exact_check: bool,
    pub options: FlowOptions,
    pub trajectory: Option<PathBuf>,
}

#[derive(Serialize)]
struct FlowRun {
    seed: u64,
    #[serde(flatten)]
    outcome: FlowOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_exactness_residual: Option<f64>,
    trajectory: Vec<FlowState>,
}

pub fn flow_cmd(setup: &Setup, args: &FlowArgs, inputs: Value) -> Result<Report, CliError> {
    let mut report = Report::new("flow", inputs);
    let m = setup.standard()?;
    let problem = m.flow_problem()?;
    let exactness = args.exact_check.then(|| AeppliExactness::new(&m.bicomplex));
    let seeds: Vec<u64> = (0..args.runs.max(1)).map(|k| args.seed + k).collect();
    let runs: Vec<Result<FlowRun, CliError>> = seeds
        .par_iter()
        .map(|&seed| {
            let p = sample_perturbation(&m.bicomplex, &problem, args.eps, seed, args.perturbation)?;
            let h0 = FloatMetric::new(problem.reference.add(&p))?;
            let mut trajectory = Vec::new();
            let outcome = pluriclosed_flow(&problem, &h0, &args.options, |s| trajectory.push(s.clone()))?;
            let max_exactness_residual = match &exactness {
                Some(ex) => {
                    let mut worst: f64 = 0.0;
                    for s in &trajectory {
                        worst = worst.max(ex.velocity_residual(&problem.ricci, &s.h)?);
                    }
                    Some(worst)
                }
                None => None,
            };
            Ok(FlowRun { seed, outcome, max_exactness_residual, trajectory })
        })
        .collect();
    let runs = runs.into_iter().collect::<Result<Vec<_>, _>>()?;
    if let Some(path) = &args.trajectory {
        let mut lines = String::new();
        for r in &runs {
            for s in &r.trajectory {
                let mut v = serde_json::to_value(s).expect("serializable");
                v["seed"] = json!(r.seed);
                lines.push_str(&v.to_string());
                lines.push('\n');
            }
        }
        std::fs::write(path, lines).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    }
    let mut text = format!("pluriclosed flow on {} (ε = {}, dt = {})\n", setup.label(), args.eps, args.options.dt);
    for r in &runs {
        let o = &r.outcome;
        let verdict = serde_json::to_value(&o.verdict).expect("serializable");
        let _ = writeln!(
            text,
            "  seed {:<4} {:<22} t = {:<8.3} steps = {:<7} λ = {:.10}  |Ric| = {:.2e}  λ drift = {:.1e}/t  ∂∂̄ω ≤ {:.1e}",
            r.seed,
            verdict["verdict"].as_str().unwrap_or(""),
            o.final_state.t,
            o.steps,
            o.final_state.lambda,
            o.final_state.ricci_norm,
            o.lambda_drift_rate,
            o.max_pluriclosed_residual
        );
        if let Some(res) = r.max_exactness_residual {
            let _ = writeln!(text, "            velocity off im ∂ + im ∂̄ ≤ {res:.1e}");
            if res > 1e-8 {
                report.warnings.push(format!("seed {}: velocity not Aeppli-exact, residual {res:.2e}", r.seed));
            }
        }
        if o.lambda_drift_rate > 1e-8 {
            report.warnings.push(format!("seed {}: λ drift {:.2e} per unit time", r.seed, o.lambda_drift_rate));
        }
    }
    report.passed = runs.iter().all(|r| matches!(r.outcome.verdict, samelson::hermflow::FlowVerdict::Converged { .. }));
    report.text = text;
    report.results = json!({ "model": setup.label(), "runs": runs });
    Ok(report)
}

pub fn models_cmd(inputs: Value) -> Result<Report, CliError> {
    let mut report = Report::new("models", inputs);
    let mut rows = Vec::new();
    let mut text = String::from("builtin models\n");
    for name in BUILTIN_MODELS {
        let m = builtin_model(name)?;
        let structures: Vec<&str> = if name == "su3" { vec!["plus"] } else { vec!["plus", "minus"] };
        let goldens: Vec<String> = [Kind::Dolbeault, Kind::BottChern, Kind::Aeppli]
            .into_iter()
            .filter(|&k| golden_diamond(name, k).is_some())
            .map(|k| k.to_string())
            .collect();
        let h: Vec<String> = bi_invariant_metric(name)?.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(
            text,
            "  {name:<6} dim {:<3} n {:<2} structures {:<11} H_BF diag({})  printed tables: {}",
            m.dim(),
            m.dim() / 2,
            structures.join(","),
            h.join(","),
            goldens.join(", ")
        );
        rows.push(json!({
            "name": name,
            "dim": m.dim(),
            "n": m.dim() / 2,
            "structures": structures,
            "bi_invariant_metric": h,
            "golden_tables": goldens,
        }));
    }
    report.text = text;
    report.results = json!({ "models": rows });
    Ok(report)
}

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::bicomplex::Bicomplex;
use crate::cohomology::{cohomology, Kind};
use crate::error::{Error, Result};
use crate::linalg::{Mat, Scalar};

use super::metric::{hermitize, FloatMetric};
use super::ricci::{pluriclosed_residual, RicciOperator};
use super::torus::TorusPairing;

fn serialize_matrix<S: Serializer>(h: &Mat<Complex64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<[f64; 2]>> = (0..h.rows()).map(|i| h.row(i).iter().map(|z| [z.re, z.im]).collect()).collect();
    rows.serialize(s)
}

/// One point of a flow trajectory.
#[derive(Clone, Debug, Serialize)]
pub struct FlowState {
    pub t: f64,
    #[serde(rename = "H", serialize_with = "serialize_matrix")]
    pub h: Mat<Complex64>,
    pub ricci_norm: f64,
    pub lambda: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum FlowVerdict {
    /// `Ric ≈ 0` and `H ≈ λ H_BF`.
    Converged { lambda: f64 },
    /// Ricci vanished at a metric that is not a multiple of `H_BF`.
    StationaryElsewhere { distance: f64 },
    Diverged { reason: String },
    MaxSteps,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlowOptions {
    pub dt: f64,
    pub max_steps: usize,
    pub tol: f64,
    /// Emit every k-th state to the observer (the first and last are always emitted).
    pub every: usize,
}

impl Default for FlowOptions {
    fn default() -> Self {
        FlowOptions { dt: 1e-3, max_steps: 200_000, tol: 1e-8, every: 1000 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FlowOutcome {
    #[serde(flatten)]
    pub verdict: FlowVerdict,
    pub steps: usize,
    pub final_state: FlowState,
    pub lambda_initial: f64,
    /// `|λ(T) − λ(0)| / T`.
    pub lambda_drift_rate: f64,
    pub max_lambda_deviation: f64,
    pub max_pluriclosed_residual: f64,
    /// Largest torus pairing of the velocity seen along the trajectory.
    pub max_velocity_pairing: f64,
    pub halvings: u32,
}

/// Everything the float integrator needs about a fixed Hermitian manifold.
#[derive(Clone, Debug)]
pub struct FlowProblem {
    pub ricci: RicciOperator<Complex64>,
    pub reference: Mat<Complex64>,
    pub pairing: TorusPairing,
}

impl FlowProblem {
    pub fn new(bc: &Bicomplex, reference: &super::ExactMetric, torus_slot: usize) -> Result<Self> {
        Ok(FlowProblem {
            ricci: RicciOperator::new(bc),
            reference: reference.to_float().matrix().clone(),
            pairing: TorusPairing::new(&reference.kahler_form(), torus_slot)?,
        })
    }

    fn state(&self, t: f64, h: &Mat<Complex64>, velocity: &Mat<Complex64>) -> FlowState {
        FlowState { t, h: h.clone(), ricci_norm: velocity.frobenius_norm() / 2.0, lambda: self.pairing.pair_metric(h) }
    }

    /// Relative distance `‖H − λ H_BF‖ / ‖H_BF‖`.
    pub fn distance_to_ray(&self, h: &Mat<Complex64>, lambda: f64) -> f64 {
        h.sub(&self.reference.scale(&Complex64::new(lambda, 0.0))).frobenius_norm() / self.reference.frobenius_norm()
    }

    fn rk4(&self, h: &Mat<Complex64>, k1: &Mat<Complex64>, dt: f64) -> Result<Mat<Complex64>> {
        let c = |x: f64| Complex64::new(x, 0.0);
        let k2 = self.ricci.velocity(&h.add(&k1.scale(&c(dt / 2.0))))?;
        let k3 = self.ricci.velocity(&h.add(&k2.scale(&c(dt / 2.0))))?;
        let k4 = self.ricci.velocity(&h.add(&k3.scale(&c(dt))))?;
        let incr = k1.add(&k2.scale(&c(2.0))).add(&k3.scale(&c(2.0))).add(&k4).scale(&c(dt / 6.0));
        Ok(hermitize(&h.add(&incr)))
    }
}

/// Integrates `∂ω/∂t = −Ric^{1,1}(ω)` with classical RK4, halving `dt` when positivity is lost.
///
/// After too many halvings the verdict is `Diverged` and the final state is the last positive metric.
pub fn pluriclosed_flow(
    problem: &FlowProblem,
    m0: &FloatMetric,
    options: &FlowOptions,
    mut observer: impl FnMut(&FlowState),
) -> Result<FlowOutcome> {
    const MAX_HALVINGS: u32 = 20;
    let mut h = m0.matrix().clone();
    let mut t = 0.0;
    let mut dt = options.dt;
    let mut halvings = 0;
    let lambda0 = problem.pairing.pair_metric(&h);
    let mut max_dev: f64 = 0.0;
    let mut max_res = pluriclosed_residual(&problem.ricci, &h);
    let mut max_vp: f64 = 0.0;
    let mut v = problem.ricci.velocity(&h)?;
    let mut state = problem.state(t, &h, &v);
    observer(&state);
    let mut verdict = FlowVerdict::MaxSteps;
    let mut steps = 0;
    while steps <= options.max_steps {
        if !state.ricci_norm.is_finite() {
            verdict = FlowVerdict::Diverged { reason: format!("non-finite Ricci norm at t = {t}") };
            break;
        }
        if state.ricci_norm < options.tol {
            let distance = problem.distance_to_ray(&h, state.lambda);
            verdict = if distance < options.tol {
                FlowVerdict::Converged { lambda: state.lambda }
            } else {
                FlowVerdict::StationaryElsewhere { distance }
            };
            break;
        }
        if steps == options.max_steps {
            break;
        }
        max_vp = max_vp.max(problem.pairing.pair_metric(&v).abs());
        let next = loop {
            match problem.rk4(&h, &v, dt) {
                Ok(next) if next.is_positive_definite() => break Some(next),
                _ if halvings == MAX_HALVINGS => break None,
                _ => {
                    halvings += 1;
                    dt /= 2.0;
                }
            }
        };
        let Some(next) = next else {
            verdict = FlowVerdict::Diverged { reason: Error::PositivityLoss { t, halvings }.to_string() };
            break;
        };
        h = next;
        t += dt;
        steps += 1;
        v = problem.ricci.velocity(&h)?;
        state = problem.state(t, &h, &v);
        max_dev = max_dev.max((state.lambda - lambda0).abs());
        max_res = max_res.max(pluriclosed_residual(&problem.ricci, &h));
        if options.every > 0 && steps % options.every == 0 {
            observer(&state);
        }
    }
    if options.every == 0 || steps % options.every != 0 {
        observer(&state);
    }
    Ok(FlowOutcome {
        verdict,
        steps,
        lambda_initial: lambda0,
        lambda_drift_rate: if t > 0.0 { (state.lambda - lambda0).abs() / t } else { 0.0 },
        max_lambda_deviation: max_dev,
        max_pluriclosed_residual: max_res,
        max_velocity_pairing: max_vp,
        halvings,
        final_state: state,
    })
}

/// How the random perturbation treats the Aeppli class of `ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PerturbationMode {
    /// Any pluriclosed direction.
    Pluriclosed,
    /// Pluriclosed with zero torus pairing, so the class of `ω_BF` is kept.
    LambdaPreserving,
}

/// Basis of `ker ∂∂̄` on (1,1) as float coefficient matrices.
pub fn pluriclosed_directions(bc: &Bicomplex) -> Result<Vec<Mat<Complex64>>> {
    let n = bc.n();
    let mut out = Vec::new();
    // Aeppli representatives plus ∂ and ∂̄ of a spanning set span ker ∂∂̄.
    let reps = cohomology(bc, Kind::Aeppli, 1, 1)?.representatives;
    let mut forms = reps;
    for k in 0..n {
        forms.push(bc.del(&crate::bicomplex::Form::phibar(n, k)));
        forms.push(bc.delbar(&crate::bicomplex::Form::phi(n, k)));
    }
    for f in forms {
        let x = super::metric::form_to_coefficients(&f);
        if !x.is_zero() {
            out.push(x.map(|c| c.to_complex()));
        }
    }
    Ok(out)
}

fn project(x: &Mat<Complex64>, basis: &[Mat<Complex64>]) -> Result<Mat<Complex64>> {
    let flat = |m: &Mat<Complex64>| -> Vec<Complex64> { (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect() };
    let cols: Vec<Vec<Complex64>> = basis.iter().map(flat).collect();
    let k = cols.len();
    let dot = |a: &[Complex64], b: &[Complex64]| -> Complex64 { a.iter().zip(b).map(|(x, y)| x.conj() * y).sum() };
    // Normal equations with a tiny ridge; the spanning set may be redundant.
    let gram = Mat::from_fn(k, k, |i, j| dot(&cols[i], &cols[j]) + if i == j { Complex64::new(1e-12, 0.0) } else { Complex64::zero() });
    let xv = flat(x);
    let rhs = Mat::from_fn(k, 1, |i, _| dot(&cols[i], &xv));
    let c = gram.solve(&rhs)?;
    let n = x.rows();
    Ok(Mat::from_fn(n, n, |i, j| (0..k).map(|a| c[(a, 0)] * basis[a][(i, j)]).sum()))
}

/// Random pluriclosed perturbation `P` with `‖P‖ = ε ‖H_BF‖`; the initial metric is `H_BF + P`.
pub fn sample_perturbation(
    bc: &Bicomplex,
    problem: &FlowProblem,
    eps: f64,
    seed: u64,
    mode: PerturbationMode,
) -> Result<Mat<Complex64>> {
    let n = bc.n();
    if eps == 0.0 {
        return Ok(Mat::zeros(n, n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    }
    let p = hermitize(&a);
    let half_i = Complex64::new(0.0, 0.5);
    let x = project(&p.scale(&half_i), &pluriclosed_directions(bc)?)?;
    let mut p = hermitize(&x.scale(&Complex64::new(0.0, -2.0)));
    if mode == PerturbationMode::LambdaPreserving {
        let l = problem.pairing.pair_metric(&p);
        p = p.sub(&problem.reference.scale(&Complex64::new(l, 0.0)));
    }
    let norm = p.frobenius_norm();
    if norm == 0.0 {
        return Err(Error::Singular("projected perturbation vanishes".into()));
    }
    Ok(p.scale(&Complex64::new(eps * problem.reference.frobenius_norm() / norm, 0.0)))
}

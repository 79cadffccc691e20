//! The experiment commands. Each writes its artifacts under `out` and returns
//! the checks it evaluated; `--check` turns any failed check into exit code 4.

use std::fs;
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sparta_core::objectives::{estimate_p_dir, random_unit_vector, Objective, PlateauLandscape, QaoaObjective};
use sparta_core::optimizer::{
    ptr_explore, run_gcans_baseline, run_trial, PtrConfig, ShotLedger, SpartaConfig, TrialResult,
};
use sparta_core::quantum::{build_tfim_chain, ground_energy, PauliSum, QaoaCircuit};
use sparta_core::regime::whiten;
use sparta_core::stats::{chi2_cdf, chi2_pdf, ks_test, noncentral_chi2_cdf, noncentral_chi2_pdf, KsResult};

use crate::analysis::{analyze_dir, trial_path, write_json, write_trial, ComparisonSummary, GCANS, SPARTA};
use crate::config::{ExperimentConfig, LieConfig, TfimConfig, ValidationConfig};
use crate::HarnessError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Self { name: name.to_string(), passed, detail }
    }
}

pub fn print_checks(checks: &[Check]) {
    for c in checks {
        println!("[{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
}

fn prepare(out: &Path) -> Result<(), HarnessError> {
    fs::create_dir_all(out.join("trials"))?;
    Ok(())
}

fn tfim_objective(tfim: &TfimConfig, n: usize) -> Result<(QaoaObjective, PauliSum), HarnessError> {
    let h = match &tfim.hamiltonian {
        Some(h) if h.n_qubits() == n => h.clone(),
        _ => build_tfim_chain(n, tfim.j, tfim.h)?,
    };
    let circuit = QaoaCircuit::with_x_mixer(h.clone(), tfim.depth)?;
    Ok((QaoaObjective::new(circuit, tfim.noise)?, h))
}

/// Start point for `seed`: `(γ₀, β₀)` per layer, each perturbed uniformly by
/// `±spread`. The draw uses its own stream, disjoint from the trial's.
pub fn tfim_start(tfim: &TfimConfig, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5ab1_e5ee_d000_0000);
    let mut theta = Vec::with_capacity(2 * tfim.depth);
    for _ in 0..tfim.depth {
        for centre in [tfim.gamma0, tfim.beta0] {
            theta.push(centre + tfim.spread * rng.random_range(-1.0..=1.0));
        }
    }
    theta
}

// ---------------------------------------------------------------- validation

#[derive(Debug, Clone, Serialize)]
pub struct RegimeSample {
    pub theta: Vec<f64>,
    pub gradient: Vec<f64>,
    pub gradient_norm: f64,
    /// Central finite differences of the exact cost, for the estimator's bias.
    pub finite_difference: Vec<f64>,
    pub max_shift_bias: f64,
    pub lambda: f64,
    pub ks_statistic: f64,
    pub ks_p_value: f64,
    pub sample_mean: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub samples: usize,
    pub shots: u64,
    pub sigma: f64,
    pub plateau: RegimeSample,
    pub informative: RegimeSample,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn exact_grad(obj: &dyn Objective, theta: &[f64]) -> Result<Vec<f64>, HarnessError> {
    obj.grad_oracle(theta).ok_or_else(|| HarnessError::Analysis("objective has no gradient oracle".into()))
}

/// Drive `‖∇f‖` to zero with damped Newton steps on the stationarity condition.
/// The Hessian comes from central differences of the exact gradient.
pub fn find_plateau_point(
    obj: &dyn Objective,
    start: &[f64],
    steps: usize,
    tolerance: f64,
) -> Result<Vec<f64>, HarnessError> {
    const H: f64 = 1e-5;
    let d = start.len();
    let mut theta = start.to_vec();
    let mut g = exact_grad(obj, &theta)?;
    for _ in 0..steps {
        if norm(&g) < tolerance * 1e-2 {
            break;
        }
        let mut hess = DMatrix::zeros(d, d);
        for j in 0..d {
            let mut p = theta.clone();
            p[j] += H;
            let gp = exact_grad(obj, &p)?;
            p[j] -= 2.0 * H;
            let gm = exact_grad(obj, &p)?;
            for i in 0..d {
                hess[(i, j)] = (gp[i] - gm[i]) / (2.0 * H);
            }
        }
        let Some(step) = solve(hess, g.clone()) else { break };
        let mut t = 1.0;
        let mut improved = false;
        while t > 1e-6 {
            let cand: Vec<f64> = theta.iter().zip(&step).map(|(x, s)| x - t * s).collect();
            let gc = exact_grad(obj, &cand)?;
            if norm(&gc) < norm(&g) {
                theta = cand;
                g = gc;
                improved = true;
                break;
            }
            t *= 0.5;
        }
        if !improved {
            break;
        }
    }
    if norm(&g) >= tolerance {
        return Err(HarnessError::Analysis(format!("plateau search stalled at |grad| = {:.3e}", norm(&g))));
    }
    Ok(theta)
}

/// `a x = b`, or `None` for a singular `a`.
fn solve(a: DMatrix<f64>, b: Vec<f64>) -> Option<Vec<f64>> {
    a.lu().solve(&DVector::from_vec(b)).map(|x| x.as_slice().to_vec())
}

/// First point of a seeded random walk whose gradient norm lies in `range`.
pub fn find_informative_point(
    obj: &dyn Objective,
    start: &[f64],
    cfg: &ValidationConfig,
    seed: u64,
) -> Result<Vec<f64>, HarnessError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut theta = start.to_vec();
    for _ in 0..cfg.max_walk_steps {
        let n = norm(&exact_grad(obj, &theta)?);
        if n >= cfg.informative_range.0 && n <= cfg.informative_range.1 {
            return Ok(theta);
        }
        let v = random_unit_vector(theta.len(), &mut rng);
        for (t, vi) in theta.iter_mut().zip(&v) {
            *t += cfg.walk_step * vi;
        }
    }
    Err(HarnessError::Analysis("random walk found no informative point".into()))
}

/// `samples` whitened statistics at `theta` with a uniform allocation and the
/// nominal per-shot variance.
pub fn whitened_samples(
    obj: &QaoaObjective,
    theta: &[f64],
    samples: usize,
    shots: u64,
    seed: u64,
) -> Result<Vec<f64>, HarnessError> {
    let d = theta.len();
    let alloc = vec![shots; d];
    let sigma_sq = vec![obj.noise.sigma.powi(2); d];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let g = obj.gradient_estimate(theta, &alloc, &mut rng)?;
            Ok(whiten(&g, &sigma_sq, &alloc).map_err(sparta_core::optimizer::OptimizerError::from)?.s)
        })
        .collect()
}

fn finite_difference(obj: &dyn Objective, theta: &[f64]) -> Result<Vec<f64>, HarnessError> {
    const H: f64 = 1e-5;
    let mut p = theta.to_vec();
    (0..theta.len())
        .map(|i| {
            p[i] = theta[i] + H;
            let up = obj.eval_exact(&p)?;
            p[i] = theta[i] - H;
            let down = obj.eval_exact(&p)?;
            p[i] = theta[i];
            Ok((up - down) / (2.0 * H))
        })
        .collect()
}

fn regime_sample(
    theta: Vec<f64>,
    gradient: Vec<f64>,
    fd: Vec<f64>,
    lambda: f64,
    ks: KsResult,
    stats: &[f64],
) -> RegimeSample {
    RegimeSample {
        gradient_norm: norm(&gradient),
        max_shift_bias: gradient.iter().zip(&fd).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max),
        finite_difference: fd,
        theta,
        gradient,
        lambda,
        ks_statistic: ks.statistic,
        ks_p_value: ks.p_value,
        sample_mean: stats.iter().sum::<f64>() / stats.len() as f64,
    }
}

pub fn validate_chisq(cfg: &ExperimentConfig, out: &Path) -> Result<Vec<Check>, HarnessError> {
    prepare(out)?;
    let v = &cfg.validation;
    let (obj, _) = tfim_objective(&cfg.tfim, cfg.tfim.n)?;
    let d = obj.dimension();
    let b = v.shots as f64;
    let sigma_sq = obj.noise.sigma.powi(2);

    let start = tfim_start(&cfg.tfim, v.start_seed);
    let plateau = find_plateau_point(&obj, &start, v.plateau_steps, v.plateau_tolerance)?;
    let informative = find_informative_point(&obj, &plateau, v, v.start_seed)?;

    let mut stats = Vec::new();
    let mut densities = Vec::new();
    let mut samples = Vec::new();
    for (label, theta, seed) in [("plateau", &plateau, 1u64), ("informative", &informative, 2u64)] {
        let grad = exact_grad(&obj, theta)?;
        let lambda: f64 = grad.iter().map(|g| b / sigma_sq * g * g).sum();
        let s = whitened_samples(&obj, theta, v.samples, v.shots, v.start_seed.wrapping_add(seed))?;
        // The plateau reference is the central law, as in the hypothesis being tested.
        let ks = if label == "plateau" {
            ks_test(&s, |x| chi2_cdf(x, d as u32).unwrap_or(f64::NAN))?
        } else {
            ks_test(&s, |x| noncentral_chi2_cdf(x, d as u32, lambda).unwrap_or(f64::NAN))?
        };
        let (lo, hi) = if label == "plateau" {
            (0.0, 25.0)
        } else {
            let sd = (2.0 * (d as f64 + 2.0 * lambda)).sqrt();
            ((d as f64 + lambda - 5.0 * sd).max(0.0), d as f64 + lambda + 5.0 * sd)
        };
        for k in 0..=400 {
            let x = lo + (hi - lo) * k as f64 / 400.0;
            let pdf = if label == "plateau" {
                chi2_pdf(x, d as u32)?
            } else {
                noncentral_chi2_pdf(x, d as u32, lambda)?
            };
            densities.push((label, x, pdf));
        }
        stats.extend(s.iter().map(|&x| (label, x)));
        samples.push(regime_sample(theta.clone(), grad, finite_difference(&obj, theta)?, lambda, ks, &s));
    }

    let mut w = csv::Writer::from_path(out.join("statistics.csv"))?;
    w.write_record(["regime", "s"])?;
    for (label, s) in &stats {
        w.serialize((label, s))?;
    }
    w.flush()?;
    let mut w = csv::Writer::from_path(out.join("densities.csv"))?;
    w.write_record(["regime", "x", "pdf"])?;
    for row in &densities {
        w.serialize(row)?;
    }
    w.flush()?;

    let informative = samples.pop().expect("two regimes");
    let plateau = samples.pop().expect("two regimes");
    let report = ValidationReport { samples: v.samples, shots: v.shots, sigma: obj.noise.sigma, plateau, informative };
    write_json(&out.join("validation.json"), &report)?;

    Ok(vec![
        Check::new(
            "plateau statistics follow the central law",
            report.plateau.ks_p_value > v.p_threshold,
            format!("KS p = {:.4}, |grad| = {:.2e}", report.plateau.ks_p_value, report.plateau.gradient_norm),
        ),
        Check::new(
            "informative statistics follow the non-central law",
            report.informative.ks_p_value > v.p_threshold,
            format!(
                "KS p = {:.4}, |grad| = {:.3}, lambda = {:.1}",
                report.informative.ks_p_value, report.informative.gradient_norm, report.informative.lambda
            ),
        ),
    ])
}

// ---------------------------------------------------------------- comparisons

#[derive(Debug, Clone, Serialize)]
struct TrialMetadata {
    seed: u64,
    theta0: Vec<f64>,
    sparta_final_theta: Vec<f64>,
    gcans_final_theta: Vec<f64>,
    sparta_plateau_iterations: u64,
    sparta_exploit_iterations: u64,
    sparta_ptr_accepts: u64,
}

#[derive(Debug, Clone, Serialize)]
struct RunMetadata<'a> {
    n_qubits: usize,
    depth: usize,
    budget: u64,
    ground_energy: f64,
    trials: Vec<TrialMetadata>,
    config: &'a ExperimentConfig,
}

/// Both methods on every seed, persisted under `out/trials`.
fn run_pairs(
    obj: &dyn Objective,
    config: &SpartaConfig,
    starts: &[(u64, Vec<f64>)],
    out: &Path,
) -> Result<Vec<(TrialResult, TrialResult)>, HarnessError> {
    let pairs = starts
        .par_iter()
        .map(|(seed, theta0)| -> Result<_, HarnessError> {
            let s = run_trial(obj, config, theta0, *seed)?;
            let g = run_gcans_baseline(obj, config, theta0, *seed)?;
            write_trial(&trial_path(&out.join("trials"), SPARTA, *seed), &s.trajectory)?;
            write_trial(&trial_path(&out.join("trials"), GCANS, *seed), &g.trajectory)?;
            Ok((s, g))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(pairs)
}

/// One TFIM chain of `n` sites: trials, metadata and the recomputed summary.
pub fn run_tfim_size(cfg: &ExperimentConfig, n: usize, out: &Path) -> Result<ComparisonSummary, HarnessError> {
    prepare(out)?;
    let (obj, h) = tfim_objective(&cfg.tfim, n)?;
    let e0 = ground_energy(&h)?;
    let starts: Vec<(u64, Vec<f64>)> = cfg.seeds.iter().map(|&s| (s, tfim_start(&cfg.tfim, s))).collect();
    let pairs = run_pairs(&obj, &cfg.sparta, &starts, out)?;
    let meta = RunMetadata {
        n_qubits: n,
        depth: cfg.tfim.depth,
        budget: cfg.sparta.budget_total,
        ground_energy: e0,
        trials: starts
            .iter()
            .zip(&pairs)
            .map(|((seed, theta0), (s, g))| TrialMetadata {
                seed: *seed,
                theta0: theta0.clone(),
                sparta_final_theta: s.final_theta.clone(),
                gcans_final_theta: g.final_theta.clone(),
                sparta_plateau_iterations: s.plateau_iterations,
                sparta_exploit_iterations: s.exploit_iterations,
                sparta_ptr_accepts: s.ptr_accepts,
            })
            .collect(),
        config: cfg,
    };
    write_json(&out.join("metadata.json"), &meta)?;
    let summary = analyze_dir(out)?;
    write_json(&out.join("summary.json"), &summary)?;
    Ok(summary)
}

fn variational_check(summary: &ComparisonSummary) -> Check {
    let e0 = summary.ground_energy.unwrap_or(f64::NEG_INFINITY);
    let lowest = summary.sparta.best_final_cost.min(summary.gcans.best_final_cost);
    Check::new(
        "final costs respect the ground energy",
        lowest >= e0 - 1e-9,
        format!("lowest final {lowest:.4} vs ground {e0:.4}"),
    )
}

pub fn run_tfim(cfg: &ExperimentConfig, out: &Path) -> Result<Vec<Check>, HarnessError> {
    let s = run_tfim_size(cfg, cfg.tfim.n, out)?;
    let need = (s.seeds.len() as f64 * 0.6).ceil() as usize;
    Ok(vec![
        Check::new(
            "SPARTA mean final cost below the baseline",
            s.sparta.mean_final_cost < s.gcans.mean_final_cost,
            format!(
                "{:.4} ± {:.4} vs {:.4} ± {:.4}",
                s.sparta.mean_final_cost, s.sparta.sd_final_cost, s.gcans.mean_final_cost, s.gcans.sd_final_cost
            ),
        ),
        Check::new(
            "SPARTA win rate at least 6/10",
            s.sparta_wins >= need,
            format!("{}/{} wins, {} ties", s.sparta_wins, s.seeds.len(), s.ties),
        ),
        variational_check(&s),
    ])
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalingRow {
    pub n_qubits: usize,
    pub ground_energy: f64,
    pub sparta_mean_gap: f64,
    pub gcans_mean_gap: f64,
    pub sparta_smaller_gap: usize,
    pub seeds: usize,
}

pub fn run_scaling(cfg: &ExperimentConfig, out: &Path) -> Result<Vec<Check>, HarnessError> {
    fs::create_dir_all(out)?;
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    for &n in &cfg.scaling.sizes {
        let s = run_tfim_size(cfg, n, &out.join(format!("n{n}")))?;
        let e0 = s.ground_energy.expect("metadata carries the ground energy");
        let better = s
            .sparta_outcomes
            .iter()
            .zip(&s.gcans_outcomes)
            .filter(|(a, b)| a.final_cost <= b.final_cost)
            .count();
        checks.push(Check::new(
            &format!("n = {n}: SPARTA gap no larger in a majority of seeds"),
            2 * better > s.seeds.len(),
            format!("{better}/{} seeds", s.seeds.len()),
        ));
        checks.push(variational_check(&s));
        rows.push(ScalingRow {
            n_qubits: n,
            ground_energy: e0,
            sparta_mean_gap: s.sparta_mean_gap.unwrap_or(f64::NAN),
            gcans_mean_gap: s.gcans_mean_gap.unwrap_or(f64::NAN),
            sparta_smaller_gap: better,
            seeds: s.seeds.len(),
        });
    }
    let mut w = csv::Writer::from_path(out.join("scaling.csv"))?;
    for r in &rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(checks)
}

// ---------------------------------------------------------------- synthetic plateau

/// Trust-region calls with a single radius, counting accepted moves.
#[derive(Debug, Clone, Serialize)]
pub struct ExitReport {
    pub radius: f64,
    pub directions: usize,
    pub p_dir: f64,
    pub calls: usize,
    pub exits: usize,
    pub gorge_exits: usize,
    pub frequency: f64,
    pub standard_error: f64,
    pub beta: f64,
    pub alpha_acc: f64,
    pub m: u32,
    pub bound: f64,
    pub bound_minus_3se: f64,
    pub holds: bool,
}

/// Measure `p̂_dir` at `theta` for radius `R`, then run `calls` independent
/// single-radius explorations from `theta` and compare the exit frequency with
/// `(1 − β)[1 − (1 − p̂(1 − α_acc))^m]` less three standard errors.
pub fn geometric_exit(
    landscape: &PlateauLandscape,
    theta: &[f64],
    ptr: &PtrConfig,
    beta: f64,
    directions: usize,
    calls: usize,
    seed: u64,
) -> Result<ExitReport, HarnessError> {
    let radius = landscape.distance_to_optimum(theta);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p_dir = estimate_p_dir(landscape, theta, radius, ptr.tau, directions, &mut rng)?;
    let single = PtrConfig { r0: radius, k: 1, ..ptr.clone() };
    let (mut exits, mut gorge_exits) = (0, 0);
    for _ in 0..calls {
        let mut ledger = ShotLedger::new(u64::MAX);
        let o = ptr_explore(landscape, theta, &single, &mut rng, &mut ledger)?;
        if o.accepted {
            exits += 1;
            if landscape.gorge(&o.theta) < -0.5 * landscape.depth {
                gorge_exits += 1;
            }
        }
    }
    let frequency = exits as f64 / calls as f64;
    let bound = (1.0 - beta) * (1.0 - (1.0 - p_dir * (1.0 - ptr.alpha_acc)).powi(ptr.m as i32));
    let standard_error = (bound * (1.0 - bound) / calls as f64).sqrt();
    let bound_minus_3se = bound - 3.0 * standard_error;
    Ok(ExitReport {
        radius,
        directions,
        p_dir,
        calls,
        exits,
        gorge_exits,
        frequency,
        standard_error,
        beta,
        alpha_acc: ptr.alpha_acc,
        m: ptr.m,
        bound,
        bound_minus_3se,
        holds: frequency >= bound_minus_3se,
    })
}

#[derive(Debug, Clone, Serialize)]
struct LieTrial {
    seed: u64,
    sparta_final_cost: f64,
    gcans_final_cost: f64,
    sparta_distance: f64,
    gcans_distance: f64,
    /// Distance in the gorge metric, which ignores the free coordinates.
    sparta_gorge_distance: f64,
    gcans_gorge_distance: f64,
    sparta_plateau_iterations: u64,
    sparta_exploit_iterations: u64,
    sparta_ptr_accepts: u64,
}

#[derive(Debug, Clone, Serialize)]
struct LieReport {
    minimum_value: f64,
    start_value: f64,
    start_distance: f64,
    trials: Vec<LieTrial>,
    exit: ExitReport,
}

pub fn lie_seeds(cfg: &ExperimentConfig) -> Vec<u64> {
    cfg.seeds.iter().copied().take(cfg.lie.n_seeds).collect()
}

pub fn run_lie(cfg: &ExperimentConfig, out: &Path) -> Result<Vec<Check>, HarnessError> {
    prepare(out)?;
    let lie: &LieConfig = &cfg.lie;
    let landscape = PlateauLandscape::new(lie.landscape.clone())?;
    fs::write(out.join("landscape.json"), landscape.to_json() + "\n")?;
    let theta0 = landscape.standard_start();
    let starts: Vec<(u64, Vec<f64>)> = lie_seeds(cfg).into_iter().map(|s| (s, theta0.clone())).collect();
    let pairs = run_pairs(&landscape, &lie.sparta, &starts, out)?;

    let trials: Vec<LieTrial> = pairs
        .iter()
        .map(|(s, g)| LieTrial {
            seed: s.seed,
            sparta_final_cost: s.final_exact_cost,
            gcans_final_cost: g.final_exact_cost,
            sparta_distance: landscape.distance_to_optimum(&s.final_theta),
            gcans_distance: landscape.distance_to_optimum(&g.final_theta),
            sparta_gorge_distance: landscape.gorge_distance_sq(&s.final_theta).sqrt(),
            gcans_gorge_distance: landscape.gorge_distance_sq(&g.final_theta).sqrt(),
            sparta_plateau_iterations: s.plateau_iterations,
            sparta_exploit_iterations: s.exploit_iterations,
            sparta_ptr_accepts: s.ptr_accepts,
        })
        .collect();
    let exit = geometric_exit(
        &landscape,
        &theta0,
        &lie.sparta.ptr,
        lie.sparta.test.beta,
        lie.p_dir_directions,
        lie.exit_iterations,
        lie.landscape.seed,
    )?;
    let report = LieReport {
        minimum_value: landscape.minimum_value(),
        start_value: landscape.value(&theta0),
        start_distance: landscape.distance_to_optimum(&theta0),
        trials,
        exit,
    };
    write_json(&out.join("lie_report.json"), &report)?;
    let summary = analyze_dir(out)?;
    write_json(&out.join("summary.json"), &summary)?;

    let n = report.trials.len();
    let sparta_ok = report.trials.iter().filter(|t| t.sparta_final_cost <= lie.sparta_threshold).count();
    let gcans_ok = report.trials.iter().filter(|t| t.gcans_final_cost >= lie.gcans_threshold).count();
    Ok(vec![
        Check::new(
            "SPARTA reaches the basin in a majority of seeds",
            2 * sparta_ok > n,
            format!("{sparta_ok}/{n} at or below {}", lie.sparta_threshold),
        ),
        Check::new(
            "baseline stays trapped in a majority of seeds",
            2 * gcans_ok > n,
            format!("{gcans_ok}/{n} at or above {}", lie.gcans_threshold),
        ),
        Check::new(
            "plateau exit frequency meets the geometric bound",
            report.exit.holds,
            format!(
                "{:.4} vs {:.4} (p_dir {:.4}, {} calls)",
                report.exit.frequency, report.exit.bound_minus_3se, report.exit.p_dir, report.exit.calls
            ),
        ),
    ])
}

pub fn analyze(out: &Path) -> Result<Vec<Check>, HarnessError> {
    let s = analyze_dir(out)?;
    write_json(&out.join("summary.json"), &s)?;
    let total = s.sparta_wins + s.gcans_wins + s.ties;
    Ok(vec![Check::new(
        "win counts cover every seed",
        total == s.seeds.len(),
        format!("{} + {} + {} ties over {} seeds", s.sparta_wins, s.gcans_wins, s.ties, s.seeds.len()),
    )])
}

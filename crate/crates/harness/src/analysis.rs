//! Trial persistence and the comparison statistics recomputed from it.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sparta_core::optimizer::TrajectoryRow;
use sparta_core::stats::{cohens_d, mean, paired_t_test, sample_variance, wilcoxon_signed_rank};

use crate::HarnessError;

pub const SPARTA: &str = "sparta";
pub const GCANS: &str = "gcans";

pub fn trial_path(dir: &Path, method: &str, seed: u64) -> PathBuf {
    dir.join(format!("{method}_seed{seed}.csv"))
}

pub fn write_trial(path: &Path, rows: &[TrajectoryRow]) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_path(path)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_trial(path: &Path) -> Result<Vec<TrajectoryRow>, HarnessError> {
    let mut r = csv::Reader::from_path(path)?;
    let rows = r.deserialize().collect::<Result<Vec<TrajectoryRow>, _>>()?;
    if rows.is_empty() {
        return Err(HarnessError::Analysis(format!("{} has no rows", path.display())));
    }
    Ok(rows)
}

/// Final state of one persisted trial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub seed: u64,
    pub final_cost: f64,
    pub shots: u64,
    pub iterations: u64,
}

impl TrialOutcome {
    pub fn from_rows(seed: u64, rows: &[TrajectoryRow]) -> Self {
        let last = rows.last().expect("non-empty trajectory");
        Self { seed, final_cost: last.exact_cost, shots: last.cumulative_shots, iterations: last.iteration }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodSummary {
    pub mean_final_cost: f64,
    pub sd_final_cost: f64,
    pub best_final_cost: f64,
    pub worst_final_cost: f64,
    pub median_final_cost: f64,
    pub mean_shots: f64,
    pub mean_iterations: f64,
}

impl MethodSummary {
    fn of(outcomes: &[TrialOutcome]) -> Self {
        let costs: Vec<f64> = outcomes.iter().map(|o| o.final_cost).collect();
        let mut sorted = costs.clone();
        sorted.sort_by(f64::total_cmp);
        let n = sorted.len();
        let median = if n % 2 == 1 { sorted[n / 2] } else { 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]) };
        let sd = if n > 1 { sample_variance(&costs).sqrt() } else { 0.0 };
        Self {
            mean_final_cost: mean(&costs),
            sd_final_cost: sd,
            best_final_cost: sorted[0],
            worst_final_cost: sorted[n - 1],
            median_final_cost: median,
            mean_shots: outcomes.iter().map(|o| o.shots as f64).sum::<f64>() / n as f64,
            mean_iterations: outcomes.iter().map(|o| o.iterations as f64).sum::<f64>() / n as f64,
        }
    }
}

/// SPARTA-versus-baseline statistics over paired seeds.
///
/// A win is a strictly lower final cost on the same seed; ties go to the baseline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonSummary {
    pub seeds: Vec<u64>,
    pub sparta: MethodSummary,
    pub gcans: MethodSummary,
    pub sparta_wins: usize,
    pub gcans_wins: usize,
    pub ties: usize,
    pub win_rate: f64,
    pub paired_t_p: f64,
    pub paired_t_degenerate: bool,
    /// `None` below the six pairs the signed-rank test needs.
    pub wilcoxon_p: Option<f64>,
    pub wilcoxon_degenerate: bool,
    /// Standardized `mean(sparta) − mean(gcans)`; negative favours SPARTA.
    pub cohens_d: f64,
    pub cohens_d_degenerate: bool,
    pub ground_energy: Option<f64>,
    pub sparta_mean_gap: Option<f64>,
    pub gcans_mean_gap: Option<f64>,
    pub sparta_outcomes: Vec<TrialOutcome>,
    pub gcans_outcomes: Vec<TrialOutcome>,
}

pub fn compare(
    sparta: &[TrialOutcome],
    gcans: &[TrialOutcome],
    ground_energy: Option<f64>,
) -> Result<ComparisonSummary, HarnessError> {
    if sparta.is_empty() || sparta.len() != gcans.len() {
        return Err(HarnessError::Analysis(format!(
            "need matching non-empty trial sets, got {} and {}",
            sparta.len(),
            gcans.len()
        )));
    }
    for (a, b) in sparta.iter().zip(gcans) {
        if a.seed != b.seed {
            return Err(HarnessError::Analysis(format!("seed {} has no partner", a.seed)));
        }
    }
    let pairs: Vec<(f64, f64)> = sparta.iter().zip(gcans).map(|(a, b)| (a.final_cost, b.final_cost)).collect();
    let sparta_wins = pairs.iter().filter(|(a, b)| a < b).count();
    let ties = pairs.iter().filter(|(a, b)| a == b).count();
    let gcans_wins = pairs.len() - sparta_wins - ties;

    let (paired_t_p, paired_t_degenerate) = if pairs.len() >= 2 {
        let t = paired_t_test(&pairs)?;
        (t.p_value, t.degenerate)
    } else {
        (1.0, true)
    };
    let (wilcoxon_p, wilcoxon_degenerate) = if pairs.len() >= 6 {
        let w = wilcoxon_signed_rank(&pairs)?;
        (Some(w.p_value), w.degenerate)
    } else {
        (None, true)
    };
    let a: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let b: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let (cd, cd_degenerate) = if pairs.len() >= 2 {
        let d = cohens_d(&a, &b)?;
        (d.statistic, d.degenerate)
    } else {
        (0.0, true)
    };
    let sparta_summary = MethodSummary::of(sparta);
    let gcans_summary = MethodSummary::of(gcans);
    Ok(ComparisonSummary {
        seeds: sparta.iter().map(|o| o.seed).collect(),
        sparta_mean_gap: ground_energy.map(|e| sparta_summary.mean_final_cost - e),
        gcans_mean_gap: ground_energy.map(|e| gcans_summary.mean_final_cost - e),
        sparta: sparta_summary,
        gcans: gcans_summary,
        sparta_wins,
        gcans_wins,
        ties,
        win_rate: sparta_wins as f64 / pairs.len() as f64,
        paired_t_p,
        paired_t_degenerate,
        wilcoxon_p,
        wilcoxon_degenerate,
        cohens_d: cd,
        cohens_d_degenerate: cd_degenerate,
        ground_energy,
        sparta_outcomes: sparta.to_vec(),
        gcans_outcomes: gcans.to_vec(),
    })
}

/// Read every `<method>_seed<N>.csv` in `dir/trials`, plus `ground_energy` from
/// `dir/metadata.json` when present, and compare them.
pub fn analyze_dir(dir: &Path) -> Result<ComparisonSummary, HarnessError> {
    let trials = dir.join("trials");
    let mut by_method: BTreeMap<String, BTreeMap<u64, TrialOutcome>> = BTreeMap::new();
    let entries = fs::read_dir(&trials)
        .map_err(|e| HarnessError::Analysis(format!("{}: {e}", trials.display())))?;
    for entry in entries {
        let path = entry?.path();
        let Some(stem) = path.file_stem().and_then(|s| s.to_str()) else { continue };
        let Some((method, seed)) = stem.split_once("_seed") else { continue };
        let Ok(seed) = seed.parse::<u64>() else { continue };
        let rows = read_trial(&path)?;
        by_method.entry(method.to_string()).or_default().insert(seed, TrialOutcome::from_rows(seed, &rows));
    }
    let take = |m: &str| -> Vec<TrialOutcome> {
        by_method.get(m).map(|t| t.values().copied().collect()).unwrap_or_default()
    };
    let ground_energy = match fs::read_to_string(dir.join("metadata.json")) {
        Ok(text) => serde_json::from_str::<serde_json::Value>(&text)?
            .get("ground_energy")
            .and_then(|v| v.as_f64()),
        Err(_) => None,
    };
    compare(&take(SPARTA), &take(GCANS), ground_energy)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), HarnessError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

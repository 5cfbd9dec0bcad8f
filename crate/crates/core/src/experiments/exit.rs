use super::clt::{equilibrium_passage, left_edge};
use super::{replicate, stream, Check, ExperimentConfig, ExperimentReport};
use crate::error::{param, Result};
use crate::rng::derive_seed;
use crate::stats::median;

/// Median of `|Z(t, t)| / t` for the intensity-1 Poisson boundary, which
/// should shrink as `t` grows.
///
/// Defaults: `t ∈ {50, 100, 200}`, 200 replicates.
pub fn exit_point_diagnostic(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let seed = cfg.seed_or(51);
    let reps = cfg.reps_or(200)?;
    let ts = cfg.ts.clone().unwrap_or_else(|| vec![50.0, 100.0, 200.0]);
    if ts.is_empty() || ts.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
        return Err(param("ts must be positive"));
    }
    let scale = cfg.window_scale.unwrap_or(8.0);
    let mut report = ExperimentReport::new("exit", seed, &["t", "rep", "exit", "scaled"]);
    let mut medians = Vec::new();
    for (j, &t) in ts.iter().enumerate() {
        let base = stream(seed, j as u64);
        let left = left_edge(1.0, t, t, scale);
        let out = replicate(base, reps, |_, s| equilibrium_passage(1.0, t, t, left, s))?;
        report.replicates += reps;
        let mut scaled = Vec::new();
        for (i, bp) in out.iter().enumerate() {
            if bp.truncated {
                report.discarded += 1;
                continue;
            }
            scaled.push(bp.exit.abs() / t);
            report.push("exit", derive_seed(base, i as u64), vec![t, i as f64, bp.exit, bp.exit.abs() / t]);
        }
        if scaled.is_empty() {
            continue;
        }
        let m = median(&scaled)?;
        report.stat(format!("median_scaled_t{t}"), m);
        medians.push((t, m));
    }
    medians.sort_by(|a, b| a.0.total_cmp(&b.0));
    if medians.len() >= 2 {
        let decreasing = medians.windows(2).all(|p| p[1].1 < p[0].1);
        report.check(Check::holds("median_decreasing", decreasing));
    }
    Ok(report)
}

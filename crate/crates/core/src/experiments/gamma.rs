use serde::Serialize;

use super::{replicate, stream, tolerance as tol, Check, ExperimentConfig, ExperimentReport};
use crate::error::{param, Result};
use crate::last_passage::last_passage_time;
use crate::point_process::{sample_cloud, Point, WeightDistribution, Window};
use crate::rng::derive_seed;
use crate::stats::{fit_slope, summarize};

/// `L(0, (r, r)) / r` on a fresh cloud.
pub(crate) fn scaled_passage(dist: &WeightDistribution, r: f64, seed: u64) -> Result<f64> {
    let w = Window::new(0.0, r, 0.0, r)?;
    let cloud = sample_cloud(w, 1.0, dist, seed)?;
    Ok(last_passage_time(&cloud, Point::ORIGIN, Point::new(r, r))? / r)
}

/// Shape constant estimate.
///
/// Samples of `L(0,(r,r))/r` at each `r` in `rs` (default 75, 150, 300).
pub fn estimate_gamma(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let seed = cfg.seed_or(1);
    let reps = cfg.reps_or(50)?;
    let dist = cfg.dist_or_classical()?;
    let rs = cfg.rs.clone().unwrap_or_else(|| vec![75.0, 150.0, 300.0]);
    if rs.is_empty() || rs.iter().any(|r| !(*r > 0.0 && r.is_finite())) {
        return Err(param("rs must be a non-empty list of positive numbers"));
    }
    let mut report = ExperimentReport::new("gamma", seed, &["r", "rep", "value"]);
    let mut means = Vec::new();
    for (j, &r) in rs.iter().enumerate() {
        let base = stream(seed, j as u64);
        let vals = replicate(base, reps, |_, s| scaled_passage(&dist, r, s))?;
        for (i, v) in vals.iter().enumerate() {
            report.push("gamma", derive_seed(base, i as u64), vec![r, i as f64, *v]);
        }
        let s = summarize(&vals)?;
        report.stat(format!("mean_r{r}"), s.mean);
        report.stat(format!("var_r{r}"), s.variance);
        report.stat(format!("se_r{r}"), s.std_err);
        report.replicates += reps;
        means.push((r, s));
    }
    if dist.is_delta1() {
        if let Some((_, s)) = means.iter().find(|(r, _)| *r == 300.0) {
            let (lo, hi) = tol::GAMMA_CLASSICAL;
            report.check(Check::within("mean_r300", s.mean, lo, hi));
        }
    } else if reps >= 200 {
        let (_, s) = means.last().unwrap();
        report.check(Check::within("ci_rel_width", 2.0 * 1.96 * s.std_err / s.mean, 0.0, tol::GAMMA_CI_REL_WIDTH));
    }
    if means.len() >= 2 {
        let mut sorted = means.clone();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
        let increasing = sorted.windows(2).all(|p| p[1].1.mean > p[0].1.mean);
        report.check(Check::holds("mean_increasing_in_r", increasing));
    }
    Ok(report)
}

/// `γ̂` from a linear fit of the mean of `L/r` against `r^{-2/3}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GammaFit {
    pub gamma: f64,
    pub std_err: f64,
    /// `(r, mean, standard error)` per radius.
    pub points: Vec<(f64, f64, f64)>,
}

/// Extrapolated shape constant. Radius `r` gets `reps · rs[0] / r`
/// replicates (at least 20), which keeps the per-radius cost flat.
pub fn gamma_extrapolated(dist: &WeightDistribution, rs: &[f64], reps: usize, seed: u64) -> Result<GammaFit> {
    if rs.len() < 2 {
        return Err(param("extrapolation needs at least two radii"));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut points = Vec::new();
    for (j, &r) in rs.iter().enumerate() {
        let n = ((reps as f64 * rs[0] / r).round() as usize).max(20);
        let vals = replicate(stream(seed, j as u64), n, |_, s| scaled_passage(dist, r, s))?;
        let s = summarize(&vals)?;
        xs.push(r.powf(-2.0 / 3.0));
        ys.push(s.mean);
        points.push((r, s.mean, s.std_err));
    }
    let fit = fit_slope(&xs, &ys)?;
    Ok(GammaFit { gamma: fit.intercept, std_err: intercept_se(&xs, &points), points })
}

/// Standard error of the fitted intercept from the per-point errors.
fn intercept_se(xs: &[f64], points: &[(f64, f64, f64)]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    // intercept = Σ c_i y_i with c_i = 1/n − mx (x_i − mx) / sxx
    let var: f64 = xs
        .iter()
        .zip(points)
        .map(|(x, p)| {
            let c = 1.0 / n - mx * (x - mx) / sxx;
            c * c * p.2 * p.2
        })
        .sum();
    var.sqrt()
}

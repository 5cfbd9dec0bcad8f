use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use rand_distr::{Distribution, Poisson};

use super::{replicate, stream, tolerance as tol, Check, ExperimentConfig, ExperimentReport};
use crate::busemann::{busemann_value, Angle, RaySchedule};
use crate::error::{param, Result};
use crate::last_passage::{boundary_last_passage, BoundaryPassage};
use crate::measure::AtomicMeasure;
use crate::point_process::{sample_cloud, Point, WeightDistribution, Window};
use crate::rng::{derive_seed, rng_from_seed};
use crate::stats::{fit_slope, pairwise_sum, shape_moments, summarize};

/// How `B(β, t) = B_{5π/4}(0, t(cos β, sin β))` is sampled for `β ∈ (0, π/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CltMethod {
    /// `L_ν(x, t)` with `ν` a Poisson process of intensity 1, which has the
    /// same law.
    Boundary,
    /// Finite-window Busemann estimate through geodesic coalescence.
    Ray,
}

impl CltMethod {
    fn parse(s: Option<&str>) -> Result<Self> {
        match s.unwrap_or("boundary") {
            "boundary" => Ok(CltMethod::Boundary),
            "ray" => Ok(CltMethod::Ray),
            other => Err(param(format!("unknown CLT method {other:?}; expected boundary or ray"))),
        }
    }
}

/// Left edge for a boundary problem ending at `(x, t)` with intensity `λ`.
pub(crate) fn left_edge(lambda: f64, x: f64, t: f64, scale: f64) -> f64 {
    let s = (t / (lambda * lambda)).max(1.0);
    (x - t / (lambda * lambda)).min(0.0) - scale * s.powf(2.0 / 3.0)
}

/// `L_ν(x, t)` and its exit point for `ν` Poisson of intensity `λ` on
/// `(left, x]` and a classical cloud on `(left, x] × (0, t]`.
pub(crate) fn equilibrium_passage(lambda: f64, x: f64, t: f64, left: f64, seed: u64) -> Result<BoundaryPassage> {
    let nu = AtomicMeasure::poisson(left, x, lambda, 1.0, stream(seed, 1))?;
    let cloud = sample_cloud(Window::new(left, x, 0.0, t)?, 1.0, &WeightDistribution::Delta1, stream(seed, 2))?;
    boundary_last_passage(&cloud, &nu, x, t)
}

fn ray_sample(x: f64, t: f64, sched: Option<RaySchedule>, seed: u64) -> Result<Option<f64>> {
    let alpha = Angle::diagonal();
    let target = Point::new(x, t);
    let sched = sched.unwrap_or_else(|| RaySchedule::for_diameter(target.dist(&Point::ORIGIN)));
    let mid = Point::new(0.5 * x, 0.5 * t);
    let d = alpha.direction();
    let far = Point::new(mid.x + sched.reach() * d.x, mid.t + sched.reach() * d.t);
    let w = Window::new(far.x - 2.0, x.max(0.0) + 1.0, far.t - 2.0, t + 1.0)?;
    let cloud = sample_cloud(w, 1.0, &WeightDistribution::Delta1, seed)?;
    let est = busemann_value(&cloud, Point::ORIGIN, target, alpha, sched)?;
    Ok(est.stabilized.then_some(est.value))
}

/// One draw of `B(β, t)`; `None` marks a discarded replicate. The second
/// value is the exit point when the boundary method was used.
fn sample(beta: f64, t: f64, method: CltMethod, scale: f64, sched: Option<RaySchedule>, seed: u64) -> Result<Option<(f64, f64)>> {
    let (x, s) = (t * beta.cos(), t * beta.sin());
    if beta == 0.0 || beta >= FRAC_PI_2 {
        // Horizontal and up-left directions reduce to independent Poisson
        // counts along the axes.
        let mut rng = rng_from_seed(seed);
        let mut pois = |mean: f64| -> Result<f64> {
            if mean <= 0.0 {
                return Ok(0.0);
            }
            Ok(Poisson::new(mean).map_err(|e| param(e.to_string()))?.sample(&mut rng))
        };
        let v = if beta == 0.0 { pois(x)? } else { pois(s)? - pois(-x)? };
        return Ok(Some((v, f64::NAN)));
    }
    match method {
        CltMethod::Boundary => {
            let bp = equilibrium_passage(1.0, x, s, left_edge(1.0, x, s, scale), seed)?;
            Ok((!bp.truncated).then_some((bp.value, bp.exit)))
        }
        CltMethod::Ray => Ok(ray_sample(x, s, sched, seed)?.map(|v| (v, f64::NAN))),
    }
}

/// Fluctuations of the diagonal Busemann function along rays of angle `β`.
///
/// Defaults: `β ∈ {0, π/8, π/4}`, `t ∈ {50, 100, 200, 400}`, 500 replicates.
pub fn clt_busemann(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let seed = cfg.seed_or(6);
    let reps = cfg.reps_or(500)?;
    if let Some(d) = &cfg.dist {
        if !d.is_delta1() {
            return Err(param("the CLT experiment uses classical weights only"));
        }
    }
    let betas = cfg.betas.clone().unwrap_or_else(|| vec![0.0, PI / 8.0, FRAC_PI_4]);
    let ts = cfg.ts.clone().unwrap_or_else(|| vec![50.0, 100.0, 200.0, 400.0]);
    if betas.iter().any(|b| !(*b >= 0.0 && *b <= PI)) {
        return Err(param("angles β must lie in [0, π]"));
    }
    if ts.is_empty() || ts.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
        return Err(param("ts must be a non-empty list of positive times"));
    }
    let method = CltMethod::parse(cfg.method.as_deref())?;
    let scale = cfg.window_scale.unwrap_or(8.0);
    let sched = cfg.schedule;
    if let Some(s) = sched {
        s.validate()?;
    }
    let mut report = ExperimentReport::new("clt", seed, &["beta", "t", "rep", "value", "exit"]);
    for (bi, &beta) in betas.iter().enumerate() {
        let mut log_t = Vec::new();
        let mut log_var = Vec::new();
        for (ti, &t) in ts.iter().enumerate() {
            let base = stream(seed, (bi * 64 + ti) as u64);
            let out = replicate(base, reps, |_, s| sample(beta, t, method, scale, sched, s))?;
            let mut vals = Vec::new();
            for (i, o) in out.iter().enumerate() {
                report.replicates += 1;
                match o {
                    Some((v, z)) => {
                        vals.push(*v);
                        report.push("clt", derive_seed(base, i as u64), vec![beta, t, i as f64, *v, *z]);
                    }
                    None => report.discarded += 1,
                }
            }
            let key = format!("b{beta:.4}_t{t}");
            report.stat(format!("n_{key}"), vals.len() as f64);
            if vals.len() < 2 {
                continue;
            }
            let s = summarize(&vals)?;
            let (skew, kurt) = shape_moments(&vals)?;
            let mean_target = (beta.cos() + beta.sin()) * t;
            let var_factor = (beta.cos() - beta.sin()).abs();
            report.stat(format!("mean_{key}"), s.mean);
            report.stat(format!("mean_target_{key}"), mean_target);
            report.stat(format!("var_{key}"), s.variance);
            report.stat(format!("var_over_t_{key}"), s.variance / t);
            report.stat(format!("var_factor_{key}"), var_factor);
            report.stat(format!("skew_{key}"), skew);
            report.stat(format!("excess_kurtosis_{key}"), kurt);
            let exact = beta == 0.0 || beta >= FRAC_PI_2;
            let critical = (beta - FRAC_PI_4).abs() < 1e-9;
            if exact {
                let k = tol::CLT_POISSON_SE;
                let se_var = variance_std_err(&vals, s.mean, s.variance);
                let var_target = var_factor * t;
                report.check(Check::within(format!("mean_{key}"), s.mean, mean_target - k * s.std_err, mean_target + k * s.std_err));
                report.check(Check::within(format!("var_{key}"), s.variance, var_target - k * se_var, var_target + k * se_var));
            } else if !critical && t >= 200.0 {
                let r = tol::CLT_VARIANCE_REL;
                report.check(Check::within(
                    format!("var_over_t_{key}"),
                    s.variance / t,
                    var_factor * (1.0 - r),
                    var_factor * (1.0 + r),
                ));
            }
            if critical {
                log_t.push(t.ln());
                log_var.push(s.variance.ln());
            }
        }
        if log_t.len() >= 3 {
            let fit = fit_slope(&log_t, &log_var)?;
            report.stat("critical_slope", fit.slope);
            report.stat("critical_slope_se", fit.std_err);
            let (lo, hi) = tol::CLT_SLOPE;
            report.check(Check::within("critical_slope", fit.slope, lo, hi));
        }
    }
    Ok(report)
}

/// Standard error of the sample variance from the fourth central moment.
fn variance_std_err(vals: &[f64], mean: f64, var: f64) -> f64 {
    let n = vals.len() as f64;
    let m4 = pairwise_sum(&vals.iter().map(|v| (v - mean).powi(4)).collect::<Vec<_>>()) / n;
    ((m4 - var * var * (n - 3.0) / (n - 1.0)) / n).max(0.0).sqrt()
}

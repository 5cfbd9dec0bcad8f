use super::{replicate, stream, tolerance as tol, Check, ExperimentConfig, ExperimentReport};
use crate::error::{param, Result};
use crate::fluid::{events_from_cloud, FluidState};
use crate::measure::AtomicMeasure;
use crate::point_process::{sample_cloud, WeightDistribution, Window};
use crate::rng::derive_seed;
use crate::stats::{exp_cdf, ks_test, summarize};

/// Distance from the left window edge below which the evolved measure may
/// feel the missing mass beyond the edge.
fn margin(lambda: f64, t: f64) -> f64 {
    let s = t / (lambda * lambda);
    s + 5.0 * s.powf(2.0 / 3.0) + 5.0
}

struct Outcome {
    ks_stat: f64,
    ks_p: f64,
    intensity: f64,
    atoms: usize,
}

fn one(lambda: f64, t: f64, half: f64, seed: u64) -> Result<Outcome> {
    let w = Window::new(-half, half, 0.0, t)?;
    let nu = AtomicMeasure::poisson(-half, half, lambda, 1.0, stream(seed, 1))?;
    let cloud = sample_cloud(w, 1.0, &WeightDistribution::Delta1, stream(seed, 2))?;
    let mut state = FluidState::new(nu, w)?;
    for ev in events_from_cloud(&cloud, t) {
        state.apply(&ev)?;
    }
    let lo = -half + margin(lambda, t);
    let interior = state.measure().restrict(lo, half);
    let gaps = interior.gaps();
    let (ks_stat, ks_p) = if gaps.is_empty() {
        (f64::NAN, f64::NAN)
    } else {
        let ks = ks_test(&gaps, exp_cdf(lambda))?;
        (ks.statistic, ks.p_value)
    };
    Ok(Outcome { ks_stat, ks_p, intensity: interior.total_mass() / (half - lo), atoms: interior.len() })
}

/// Evolves Poisson initial conditions and tests the interior for Poisson
/// statistics.
///
/// Defaults: `λ ∈ {1, 2, 0.5}`, `t = 20`, window `[−200, 200]`, 100 seeds.
pub fn equilibrium_check(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let seed = cfg.seed_or(5);
    let reps = cfg.reps_or(100)?;
    let lambdas = cfg.lambdas.clone().unwrap_or_else(|| vec![1.0, 2.0, 0.5]);
    let t = cfg.t.unwrap_or(20.0);
    let half = cfg.width.unwrap_or(200.0);
    if let Some(d) = &cfg.dist {
        if !d.is_delta1() {
            return Err(param("the equilibrium experiment uses classical weights only"));
        }
    }
    if lambdas.is_empty() || lambdas.iter().any(|l| !(*l > 0.0 && l.is_finite())) {
        return Err(param("λ values must be positive"));
    }
    if !(t > 0.0 && half > 0.0) {
        return Err(param("t and width must be positive"));
    }
    let mut report = ExperimentReport::new("equilibrium", seed, &["lambda", "rep", "ks_stat", "ks_p", "intensity", "atoms"]);
    for (j, &lambda) in lambdas.iter().enumerate() {
        if margin(lambda, t) >= 2.0 * half - 10.0 {
            return Err(param(format!("window too small for λ = {lambda} at t = {t}")));
        }
        let base = stream(seed, j as u64);
        let out = replicate(base, reps, |_, s| one(lambda, t, half, s))?;
        report.replicates += reps;
        let mut passes = 0usize;
        let mut tested = 0usize;
        let mut intens = Vec::new();
        for (i, o) in out.iter().enumerate() {
            if o.ks_p.is_nan() {
                report.discarded += 1;
                continue;
            }
            tested += 1;
            if o.ks_p >= tol::KS_LEVEL {
                passes += 1;
            }
            intens.push(o.intensity);
            report.push(
                format!("lambda={lambda}"),
                derive_seed(base, i as u64),
                vec![lambda, i as f64, o.ks_stat, o.ks_p, o.intensity, o.atoms as f64],
            );
        }
        let key = format!("l{lambda}");
        let rate = if tested > 0 { passes as f64 / tested as f64 } else { 0.0 };
        report.stat(format!("interior_lo_{key}"), -half + margin(lambda, t));
        report.stat(format!("ks_pass_rate_{key}"), rate);
        report.check(Check::within(format!("ks_pass_rate_{key}"), rate, tol::KS_PASS_RATE, 1.0));
        if !intens.is_empty() {
            let s = summarize(&intens)?;
            report.stat(format!("intensity_{key}"), s.mean);
            report.stat(format!("intensity_se_{key}"), s.std_err);
            let r = tol::INTENSITY_REL;
            report.check(Check::within(format!("intensity_{key}"), s.mean, lambda * (1.0 - r), lambda * (1.0 + r)));
        }
    }
    Ok(report)
}

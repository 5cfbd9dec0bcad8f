use super::algebra::frame_window;
use super::gamma::gamma_extrapolated;
use super::{replicate, stream, tolerance as tol, Check, ExperimentConfig, ExperimentReport};
use crate::busemann::{nu_alpha, LineSegment, RaySchedule};
use crate::error::{param, Result};
use crate::point_process::{sample_cloud, Point};
use crate::rng::derive_seed;
use crate::stats::summarize;

struct Outcome {
    h_mass: f64,
    h_stable: bool,
    h_k: usize,
    v_mass: f64,
    v_stable: bool,
    v_k: usize,
}

/// Estimates `E ν_α(1)` and `E ν*_α(1)` from Busemann measures on the
/// segments `(0, ℓ] × {0}` and `{0} × (0, ℓ]`, and `γ̂` by extrapolating
/// `E L(0,(r,r))/r` in `r^{-2/3}`, then reports
/// `E ν̂ · E ν̂* / (γ̂²/4)`.
///
/// Defaults: `α = 5π/4`, classical weights, 300 replicates, `ℓ = 10`,
/// schedule `r0 = 4ℓ`, factor 2, three doublings, `γ̂` from `r ∈ {100, 200, 400}`.
pub fn product_relation_check(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let seed = cfg.seed_or(13);
    let reps = cfg.reps_or(300)?;
    let alpha = cfg.alpha_or_diagonal()?;
    let dist = cfg.dist_or_classical()?;
    let len = cfg.width.unwrap_or(10.0);
    if !(len > 0.0 && len.is_finite()) {
        return Err(param("segment length must be positive"));
    }
    let sched = match cfg.schedule_checked()? {
        Some(s) => s,
        None => RaySchedule::new(4.0 * len, 2.0, 3)?,
    };
    let rs = cfg.rs.clone().unwrap_or_else(|| vec![100.0, 200.0, 400.0]);
    let window = frame_window(alpha, &sched, Point::ORIGIN, Point::new(len, len))?;
    let base = stream(seed, 0);
    let out = replicate(base, reps, |_, s| {
        let cloud = sample_cloud(window, 1.0, &dist, s)?;
        let h = nu_alpha(&cloud, alpha, sched, LineSegment::Horizontal { t: 0.0, a: 0.0, b: len }, None)?;
        let v = nu_alpha(&cloud, alpha, sched, LineSegment::Vertical { x: 0.0, a: 0.0, b: len }, None)?;
        Ok(Outcome {
            h_mass: h.measure.total_mass(),
            h_stable: h.stabilized(),
            h_k: h.k_used,
            v_mass: v.measure.total_mass(),
            v_stable: v.stabilized(),
            v_k: v.k_used,
        })
    })?;
    let mut report = ExperimentReport::new("product", seed, &["rep", "mass", "intensity", "k_used"]);
    report.replicates = 2 * reps;
    let mut hs = Vec::new();
    let mut vs = Vec::new();
    for (i, o) in out.iter().enumerate() {
        let s = derive_seed(base, i as u64);
        for (group, mass, stable, k, dst) in [
            ("horizontal", o.h_mass, o.h_stable, o.h_k, &mut hs),
            ("vertical", o.v_mass, o.v_stable, o.v_k, &mut vs),
        ] {
            if stable {
                dst.push(mass / len);
                report.push(group, s, vec![i as f64, mass, mass / len, k as f64]);
            } else {
                report.discarded += 1;
            }
        }
    }
    if hs.len() < 2 || vs.len() < 2 {
        return Err(param("too few stabilized replicates; lengthen the schedule"));
    }
    let (h, v) = (summarize(&hs)?, summarize(&vs)?);
    let fit = gamma_extrapolated(&dist, &rs, reps, stream(seed, 1))?;
    let ratio = h.mean * v.mean / (fit.gamma * fit.gamma / 4.0);
    report.stat("nu_mean", h.mean);
    report.stat("nu_se", h.std_err);
    report.stat("nu_star_mean", v.mean);
    report.stat("nu_star_se", v.std_err);
    report.stat("gamma_hat", fit.gamma);
    report.stat("gamma_hat_se", fit.std_err);
    for (r, m, _) in &fit.points {
        report.stat(format!("gamma_mean_r{r}"), *m);
    }
    report.stat("ratio", ratio);
    if dist.is_delta1() {
        let (lo, hi) = tol::PRODUCT_CLASSICAL;
        report.check(Check::within("ratio", ratio, lo, hi));
        let r = tol::PRODUCT_INTENSITY_REL;
        let lam = alpha.lambda();
        report.check(Check::within("nu_mean", h.mean, lam * (1.0 - r), lam * (1.0 + r)));
        report.check(Check::within("nu_star_mean", v.mean, (1.0 - r) / lam, (1.0 + r) / lam));
    } else {
        let (lo, hi) = tol::PRODUCT_GENERAL;
        report.check(Check::within("ratio", ratio, lo, hi));
    }
    Ok(report)
}

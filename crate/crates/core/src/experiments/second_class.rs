use super::{replicate, stream, tolerance as tol, Check, ExperimentConfig, ExperimentReport};
use crate::error::{param, Error, Result};
use crate::fluid::second_class_position;
use crate::measure::AtomicMeasure;
use crate::point_process::{sample_cloud, WeightDistribution, Window};
use crate::rng::derive_seed;
use crate::stats::summarize;

fn half_width(density: f64, t: f64) -> f64 {
    let s = t / (density * density);
    s + 6.0 * s.max(1.0).powf(2.0 / 3.0) + 10.0
}

/// `X(t)` for unit atoms with spacing `1/density` on a centred window.
/// `None` marks a truncated or escaped particle.
fn one(density: f64, t: f64, seed: u64) -> Result<Option<f64>> {
    let half = half_width(density, t);
    let spacing = 1.0 / density;
    let k = (half / spacing).floor();
    let nu = AtomicMeasure::lattice(-k * spacing, k * spacing, spacing, 1.0)?;
    let cloud = sample_cloud(Window::new(-half, half, 0.0, t)?, 1.0, &WeightDistribution::Delta1, seed)?;
    match second_class_position(&cloud, &nu, t) {
        Ok(x) if !x.truncated => Ok(Some(x.position)),
        Ok(_) | Err(Error::Window(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn band(density: f64) -> (f64, f64) {
    if density == 1.0 {
        tol::SECOND_CLASS_UNIT
    } else if density == 2.0 {
        tol::SECOND_CLASS_DOUBLE
    } else {
        let v = 1.0 / (density * density);
        (v * (1.0 - tol::SECOND_CLASS_REL), v * (1.0 + tol::SECOND_CLASS_REL))
    }
}

/// Speed of a second-class particle started at the origin of a periodic
/// initial measure.
///
/// Defaults: densities 1 and 2, `t = 200`, 100 seeds. The speed limit for
/// density `d` is `1/d²`.
pub fn second_class_lln(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let seed = cfg.seed_or(8);
    let reps = cfg.reps_or(100)?;
    let densities = cfg.densities.clone().unwrap_or_else(|| vec![1.0, 2.0]);
    let ts = cfg.ts.clone().unwrap_or_else(|| vec![200.0]);
    if densities.is_empty() || densities.iter().any(|d| !(*d > 0.0 && d.is_finite())) {
        return Err(param("densities must be positive"));
    }
    if ts.is_empty() || ts.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
        return Err(param("ts must be positive"));
    }
    let t_max = ts.iter().copied().fold(0.0, f64::max);
    let mut report = ExperimentReport::new("second-class", seed, &["density", "t", "rep", "position", "speed"]);
    for (j, &d) in densities.iter().enumerate() {
        for (l, &t) in ts.iter().enumerate() {
            let base = stream(seed, (j * 64 + l) as u64);
            let out = replicate(base, reps, |_, s| one(d, t, s))?;
            report.replicates += reps;
            let mut speeds = Vec::new();
            for (i, o) in out.iter().enumerate() {
                match o {
                    Some(x) => {
                        speeds.push(x / t);
                        report.push(format!("density={d}"), derive_seed(base, i as u64), vec![d, t, i as f64, *x, x / t]);
                    }
                    None => report.discarded += 1,
                }
            }
            if speeds.is_empty() {
                continue;
            }
            let s = summarize(&speeds)?;
            let key = format!("d{d}_t{t}");
            report.stat(format!("speed_{key}"), s.mean);
            report.stat(format!("speed_se_{key}"), s.std_err);
            report.stat(format!("speed_limit_{key}"), 1.0 / (d * d));
            if t == t_max {
                let (lo, hi) = band(d);
                report.check(Check::within(format!("speed_{key}"), s.mean, lo, hi));
            }
        }
    }
    Ok(report)
}

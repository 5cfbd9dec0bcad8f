use super::{replicate, stream, tolerance as tol, Check, ExperimentConfig, ExperimentReport};
use crate::error::{param, Error, Result};
use crate::fluid::second_class_position;
use crate::last_passage::exit_point;
use crate::measure::AtomicMeasure;
use crate::point_process::{sample_cloud, WeightDistribution, WeightedPointCloud, Window};
use crate::rng::derive_seed;
use crate::stats::{ks_two_sample, summarize};

fn setup(half: f64, t: f64, seed: u64) -> Result<(WeightedPointCloud, AtomicMeasure)> {
    let nu = AtomicMeasure::poisson(-half, half, 1.0, 1.0, stream(seed, 1))?;
    let cloud = sample_cloud(Window::new(-half, half, 0.0, t)?, 1.0, &WeightDistribution::Delta1, stream(seed, 2))?;
    Ok((cloud, nu))
}

/// Compares the laws of `X(t) − x` and `−Z(x, t)` for a Poisson initial
/// measure of intensity 1, each from its own independent replicates.
///
/// Defaults: `t = 50`, `x = 20`, 500 replicates per sample.
pub fn distributional_identity(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let seed = cfg.seed_or(14);
    let reps = cfg.reps_or(500)?;
    let t = cfg.t.unwrap_or(50.0);
    let x = cfg.x.unwrap_or(20.0);
    if !(t > 0.0 && t.is_finite() && x.is_finite()) {
        return Err(param("need t > 0 and finite x"));
    }
    let half = t + x.abs() + 6.0 * t.powf(2.0 / 3.0) + 10.0;
    let base_x = stream(seed, 0);
    let base_z = stream(seed, 1);
    let xs = replicate(base_x, reps, |_, s| {
        let (cloud, nu) = setup(half, t, s)?;
        match second_class_position(&cloud, &nu, t) {
            Ok(p) if !p.truncated => Ok(Some(p.position - x)),
            Ok(_) | Err(Error::Window(_)) => Ok(None),
            Err(e) => Err(e),
        }
    })?;
    let zs = replicate(base_z, reps, |_, s| {
        let (cloud, nu) = setup(half, t, s)?;
        let bp = exit_point(&cloud, &nu, x, t)?;
        Ok((!bp.truncated).then_some(-bp.exit))
    })?;
    let mut report = ExperimentReport::new("identity", seed, &["rep", "value"]);
    report.replicates = 2 * reps;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (group, base, out, dst) in [("x_minus_x", base_x, &xs, &mut a), ("minus_z", base_z, &zs, &mut b)] {
        for (i, v) in out.iter().enumerate() {
            match v {
                Some(v) => {
                    dst.push(*v);
                    report.push(group, derive_seed(base, i as u64), vec![i as f64, *v]);
                }
                None => report.discarded += 1,
            }
        }
    }
    if a.len() < 2 || b.len() < 2 {
        return Err(param("too few untruncated replicates"));
    }
    let ks = ks_two_sample(&a, &b)?;
    let (sa, sb) = (summarize(&a)?, summarize(&b)?);
    report.stat("mean_x_minus_x", sa.mean);
    report.stat("mean_minus_z", sb.mean);
    report.stat("var_x_minus_x", sa.variance);
    report.stat("var_minus_z", sb.variance);
    report.stat("ks_stat", ks.statistic);
    report.stat("ks_p", ks.p_value);
    report.check(Check::within("ks_p", ks.p_value, tol::KS_LEVEL, 1.0));
    Ok(report)
}

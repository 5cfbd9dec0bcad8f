use rand::Rng;

use super::algebra::frame_window;
use super::{replicate, stream, tolerance as tol, Check, ExperimentConfig, ExperimentReport};
use crate::busemann::{markov_check, RaySchedule};
use crate::error::Result;
use crate::point_process::{sample_cloud, Point, WeightDistribution};
use crate::rng::{derive_seed, rng_from_seed};

struct Outcome {
    t: f64,
    x: f64,
    stabilized: bool,
    atom: f64,
    coarse: f64,
    dense: f64,
}

fn one(alpha: crate::busemann::Angle, sched: Option<RaySchedule>, seed: u64) -> Result<Outcome> {
    let mut rng = rng_from_seed(stream(seed, 0));
    let t = rng.random_range(2.0..6.0);
    let x = rng.random_range(0.5..6.0);
    let target = Point::new(x, t);
    let sched = sched.unwrap_or_else(|| RaySchedule::for_diameter(target.dist(&Point::ORIGIN)));
    let w = frame_window(alpha, &sched, Point::ORIGIN, target)?;
    let cloud = sample_cloud(w, 1.0, &WeightDistribution::Delta1, stream(seed, 1))?;
    let atom = markov_check(&cloud, alpha, sched, 0.0, t, x, None)?;
    let lo = w.x_min.ceil();
    let coarse: Vec<f64> = (0..).map(|i| lo + i as f64).take_while(|z| *z <= x).collect();
    let dense: Vec<f64> = (0..).map(|i| lo + i as f64 / 16.0).take_while(|z| *z <= x).collect();
    let coarse = markov_check(&cloud, alpha, sched, 0.0, t, x, Some(&coarse))?;
    let dense = markov_check(&cloud, alpha, sched, 0.0, t, x, Some(&dense))?;
    Ok(Outcome { t, x, stabilized: atom.stabilized, atom: atom.residual, coarse: coarse.residual, dense: dense.residual })
}

/// The variational identity for Busemann functions on random targets
/// `(x, t)` above the origin, with the jump positions of the horizontal
/// Busemann profile, an integer grid and a 1/16 grid as candidates.
///
/// Defaults: 100 samples, `α = 5π/4`.
pub fn markov_suite(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let seed = cfg.seed_or(11);
    let reps = cfg.reps_or(100)?;
    let alpha = cfg.alpha_or_diagonal()?;
    let sched = cfg.schedule_checked()?;
    let base = stream(seed, 0);
    let out = replicate(base, reps, |_, s| one(alpha, sched, s))?;
    let mut report = ExperimentReport::new("markov", seed, &["rep", "t", "x", "atom_residual", "coarse_residual", "dense_residual"]);
    report.replicates = reps;
    let mut worst_atom: f64 = 0.0;
    let mut min_other = f64::INFINITY;
    for (i, o) in out.iter().enumerate() {
        min_other = min_other.min(o.coarse).min(o.dense);
        if !o.stabilized {
            report.discarded += 1;
            continue;
        }
        worst_atom = worst_atom.max(o.atom.abs());
        report.push("markov", derive_seed(base, i as u64), vec![i as f64, o.t, o.x, o.atom, o.coarse, o.dense]);
    }
    report.stat("max_abs_atom_residual", worst_atom);
    report.stat("min_grid_residual", min_other);
    report.check(Check::within("max_abs_atom_residual", worst_atom, 0.0, tol::MARKOV_TOL));
    report.check(Check::within("min_grid_residual", min_other, -tol::MARKOV_TOL, f64::INFINITY));
    report.check(Check::within("stabilized", report.records.len() as f64, 1.0, f64::INFINITY));
    Ok(report)
}

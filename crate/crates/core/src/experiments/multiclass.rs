use rand::Rng;

use super::{replicate, stream, Check, ExperimentConfig, ExperimentReport};
use crate::error::Result;
use crate::fluid::{coupling_violations, events_from_cloud, multiclass_evolve, CouplingReport};
use crate::measure::{Atom, AtomicMeasure};
use crate::point_process::{sample_cloud, WeightDistribution, WeightedPoint, WeightedPointCloud, Window};
use crate::rng::{derive_seed, rng_from_seed};

const HALF: f64 = 10.0;
const T_MAX: f64 = 8.0;

/// Events with weights that are multiples of 1/8, so that every mass
/// comparison is exact.
fn dyadic_cloud(seed: u64) -> Result<WeightedPointCloud> {
    let w = Window::new(-HALF, HALF, 0.0, T_MAX)?;
    let dist = if seed % 2 == 0 { WeightDistribution::Delta1 } else { WeightDistribution::Exponential { mean: 1.0 } };
    let cloud = sample_cloud(w, 1.0, &dist, seed)?;
    let pts = cloud
        .points()
        .iter()
        .map(|p| WeightedPoint::new(p.x, p.t, ((p.w * 8.0).round() / 8.0).max(0.125)))
        .collect();
    WeightedPointCloud::new(pts, w, seed)
}

/// Three ordered measures: a thinning of a Poisson(2) sample with keep
/// probability 1/4, the sample itself, and the sample plus mass 1/4 at 0.
fn coupled_measures(seed: u64) -> Result<Vec<AtomicMeasure>> {
    let dense = AtomicMeasure::poisson(-HALF, HALF, 2.0, 1.0, seed)?;
    let mut rng = rng_from_seed(derive_seed(seed, 1));
    let sparse: Vec<Atom> = dense.atoms().iter().copied().filter(|_| rng.random::<f64>() < 0.25).collect();
    let top = dense.with_atom(0.0, 0.25)?;
    Ok(vec![AtomicMeasure::new(sparse)?, dense, top])
}

fn one(seed: u64) -> Result<CouplingReport> {
    let cloud = dyadic_cloud(stream(seed, 1))?;
    let measures = coupled_measures(stream(seed, 2))?;
    let events = events_from_cloud(&cloud, T_MAX);
    let trajs = multiclass_evolve(&measures, &events, *cloud.window())?;
    Ok(coupling_violations(&trajs))
}

/// Basic coupling of three ordered initial measures on random scenarios:
/// dominance after every event, and for the top pair, which differs only
/// at the origin, a non-increasing difference on `[0, x]`.
///
/// Default: 100 scenarios.
pub fn multiclass_check(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let seed = cfg.seed_or(9);
    let reps = cfg.reps_or(100)?;
    let base = stream(seed, 0);
    let out = replicate(base, reps, |_, s| one(s))?;
    let mut report = ExperimentReport::new("multiclass", seed, &["rep", "events", "dominance", "difference"]);
    report.replicates = reps;
    let (mut dom, mut diff, mut events) = (0, 0, 0);
    for (i, r) in out.iter().enumerate() {
        dom += r.dominance;
        diff += r.difference;
        events += r.events;
        report.push(
            "multiclass",
            derive_seed(base, i as u64),
            vec![i as f64, r.events as f64, r.dominance as f64, r.difference as f64],
        );
    }
    report.stat("pair_events", events as f64);
    report.stat("dominance_violations", dom as f64);
    report.stat("difference_violations", diff as f64);
    report.check(Check::within("dominance_violations", dom as f64, 0.0, 0.0));
    report.check(Check::within("difference_violations", diff as f64, 0.0, 0.0));
    Ok(report)
}

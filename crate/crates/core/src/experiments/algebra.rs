use rand::Rng;

use super::{replicate, stream, Check, ExperimentConfig, ExperimentReport};
use crate::busemann::{busemann_triple, busemann_value, Angle, RaySchedule};
use crate::error::Result;
use crate::point_process::{sample_cloud, Point, WeightDistribution, Window};
use crate::rng::{derive_seed, rng_from_seed};

struct Outcome {
    stabilized: bool,
    ab: f64,
    bc: f64,
    ac: f64,
    ba: f64,
    antisym_ok: bool,
}

/// Window reaching every far point of a schedule anchored inside `[lo, hi]`.
pub(crate) fn frame_window(alpha: Angle, sched: &RaySchedule, lo: Point, hi: Point) -> Result<Window> {
    let d = alpha.direction();
    let r = sched.reach();
    Window::new(lo.x + r * d.x - 2.0, hi.x + 1.0, lo.t + r * d.t - 2.0, hi.t + 1.0)
}

fn one(alpha: Angle, sched: Option<RaySchedule>, seed: u64) -> Result<Outcome> {
    let mut rng = rng_from_seed(stream(seed, 0));
    let a = Point::new(rng.random_range(0.0..3.0), rng.random_range(0.0..3.0));
    // `b` dominates `a`, so `B(a, b) >= 0`.
    let b = Point::new(a.x + rng.random_range(0.0..2.0), a.t + rng.random_range(0.0..2.0));
    let c = Point::new(rng.random_range(0.0..3.0), rng.random_range(0.0..3.0));
    let lo = a.min(&b).min(&c);
    let hi = a.max(&b).max(&c);
    let sched = sched.unwrap_or_else(|| RaySchedule::for_diameter(lo.dist(&hi)));
    let w = frame_window(alpha, &sched, lo, hi)?;
    let cloud = sample_cloud(w, 1.0, &WeightDistribution::Delta1, stream(seed, 1))?;
    let tri = busemann_triple(&cloud, a, b, c, alpha, sched)?;
    let fwd = busemann_value(&cloud, a, b, alpha, sched)?;
    let bwd = busemann_value(&cloud, b, a, alpha, sched)?;
    let antisym_ok = fwd.value == -bwd.value && fwd.stabilized == bwd.stabilized;
    Ok(Outcome { stabilized: tri.stabilized, ab: tri.ab, bc: tri.bc, ac: tri.ac, ba: bwd.value, antisym_ok })
}

/// Additivity, anti-symmetry and monotonicity of Busemann estimates on
/// random triples `a <= b`, `c` with classical weights.
///
/// Defaults: 200 triples, `α = 5π/4`, the default schedule per triple.
pub fn busemann_algebra(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let seed = cfg.seed_or(10);
    let reps = cfg.reps_or(200)?;
    let alpha = cfg.alpha_or_diagonal()?;
    let sched = cfg.schedule_checked()?;
    let base = stream(seed, 0);
    let out = replicate(base, reps, |_, s| one(alpha, sched, s))?;
    let mut report = ExperimentReport::new("algebra", seed, &["rep", "ab", "bc", "ac", "ba"]);
    report.replicates = reps;
    let (mut add_bad, mut anti_bad, mut neg) = (0, 0, 0);
    for (i, o) in out.iter().enumerate() {
        if !o.antisym_ok {
            anti_bad += 1;
        }
        if !o.stabilized {
            report.discarded += 1;
            continue;
        }
        if o.ab + o.bc != o.ac {
            add_bad += 1;
        }
        if o.ab < 0.0 {
            neg += 1;
        }
        report.push("triple", derive_seed(base, i as u64), vec![i as f64, o.ab, o.bc, o.ac, o.ba]);
    }
    report.stat("stabilized", report.records.len() as f64);
    report.stat("additivity_failures", add_bad as f64);
    report.stat("antisymmetry_failures", anti_bad as f64);
    report.stat("negative_ordered_pairs", neg as f64);
    report.check(Check::within("additivity_failures", add_bad as f64, 0.0, 0.0));
    report.check(Check::within("antisymmetry_failures", anti_bad as f64, 0.0, 0.0));
    report.check(Check::within("negative_ordered_pairs", neg as f64, 0.0, 0.0));
    report.check(Check::within("stabilized", report.records.len() as f64, 1.0, f64::INFINITY));
    Ok(report)
}

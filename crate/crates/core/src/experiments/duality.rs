use rand::Rng;

use super::{replicate, stream, tolerance as tol, Check, ExperimentConfig, ExperimentReport};
use crate::error::Result;
use crate::fluid::{measure_via_lastpassage, FluidEvent, Scenario};
use crate::measure::{Atom, AtomicMeasure};
use crate::point_process::Window;
use crate::rng::{derive_seed, rng_from_seed};

/// A random fluid scenario on `[0, 10]²` with an atom at 0, up to 20 more
/// atoms and 1 to 20 events, some of them left or right of the window. Odd seeds use integer
/// masses and weights, even seeds real ones.
pub fn random_scenario(seed: u64) -> Scenario {
    let mut rng = rng_from_seed(seed);
    let integer = seed % 2 == 1;
    let draw = |rng: &mut crate::rng::SimRng| -> f64 {
        if integer {
            rng.random_range(1..=3) as f64
        } else {
            rng.random_range(0.1..3.0)
        }
    };
    let n_atoms = rng.random_range(1..=20);
    let mut atoms = Vec::with_capacity(n_atoms + 1);
    atoms.push(Atom::new(0.0, draw(&mut rng)));
    for _ in 0..n_atoms {
        let pos = rng.random_range(0.0..10.0);
        let m = draw(&mut rng);
        atoms.push(Atom::new(pos, m));
    }
    let nu = AtomicMeasure::from_unsorted(atoms).expect("positive masses");
    let n_events = rng.random_range(1..=20);
    let mut ts: Vec<f64> = (0..n_events).map(|_| rng.random_range(0.01..10.0)).collect();
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    let events = ts
        .into_iter()
        .map(|t| {
            let x0 = rng.random_range(-2.0..11.0);
            FluidEvent::new(x0, t, draw(&mut rng))
        })
        .collect();
    Scenario { nu, events, window: Window { x_min: 0.0, x_max: 10.0, t_min: 0.0, t_max: 10.0 } }
}

struct Outcome {
    max_gap: f64,
    snapshots: usize,
    flagged: usize,
    atoms: usize,
    events: usize,
}

fn one(seed: u64) -> Result<Outcome> {
    let sc = random_scenario(seed);
    let traj = sc.evolve()?;
    let cloud = sc.to_cloud()?;
    let (lo, hi) = (sc.window.x_min, sc.window.x_max);
    let mut max_gap: f64 = 0.0;
    let mut flagged = 0;
    let mut times = vec![(0.0, &traj.initial)];
    times.extend(traj.snapshots.iter().map(|(t, m)| (*t, m)));
    for (t, m) in &times {
        let dual = measure_via_lastpassage(&cloud, &sc.nu, *t, lo, hi)?;
        if dual.truncated {
            flagged += 1;
        }
        max_gap = max_gap.max(dual.measure.sup_distance(&m.restrict(lo, hi)));
    }
    Ok(Outcome { max_gap, snapshots: times.len(), flagged, atoms: sc.nu.len(), events: sc.events.len() })
}

/// Fluid evolution against last-passage differencing on random scenarios,
/// at time 0 and after every event. Scenarios with a snapshot whose exit
/// points reach the left edge of the cloud are recorded but excluded from
/// the check; drawing continues until `reps` clean scenarios are found.
///
/// Default: 100 clean scenarios.
pub fn fluid_duality(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let seed = cfg.seed_or(3);
    let reps = cfg.reps_or(100)?;
    let base = stream(seed, 0);
    let mut report = ExperimentReport::new("duality", seed, &["rep", "atoms", "events", "snapshots", "flagged", "max_gap"]);
    let mut worst: f64 = 0.0;
    let mut worst_flagged: f64 = 0.0;
    let mut clean = 0;
    let mut drawn = 0usize;
    while clean < reps && drawn < 50 * reps {
        let batch = 2 * (reps - clean);
        let out = replicate(derive_seed(base, drawn as u64), batch, |_, s| one(s))?;
        for (j, o) in out.iter().enumerate() {
            let i = drawn + j;
            let s = derive_seed(derive_seed(base, drawn as u64), j as u64);
            report.replicates += 1;
            if o.flagged > 0 {
                worst_flagged = worst_flagged.max(o.max_gap);
                report.discarded += 1;
                report.push("flagged", s, vec![i as f64, o.atoms as f64, o.events as f64, o.snapshots as f64, o.flagged as f64, o.max_gap]);
            } else if clean < reps {
                clean += 1;
                worst = worst.max(o.max_gap);
                report.push("clean", s, vec![i as f64, o.atoms as f64, o.events as f64, o.snapshots as f64, 0.0, o.max_gap]);
            }
        }
        drawn += batch;
    }
    report.stat("max_gap", worst);
    report.stat("clean_scenarios", clean as f64);
    report.stat("max_gap_flagged", worst_flagged);
    report.check(Check::within("max_gap", worst, 0.0, tol::EXACT_TOL));
    report.check(Check::within("clean_scenarios", clean as f64, reps as f64, f64::INFINITY));
    Ok(report)
}

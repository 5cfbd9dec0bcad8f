use super::{tolerance as tol, Check, ExperimentConfig, ExperimentReport};
use crate::error::Result;
use crate::fluid::{measure_via_lastpassage, Scenario};
use crate::measure::{Atom, AtomicMeasure};

fn same_atoms(m: &AtomicMeasure, want: &[(f64, f64)]) -> bool {
    m.atoms().len() == want.len() && m.atoms().iter().zip(want).all(|(a, &(p, w))| *a == Atom::new(p, w))
}

/// Replays a scenario file (the bundled example by default), one record per
/// event, with ledger and duality checks.
pub fn fluid_replay(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let (sc, bundled) = match &cfg.scenario {
        Some(path) => (Scenario::load(path)?, false),
        None => (Scenario::example(), true),
    };
    let traj = sc.evolve()?;
    let mut report = ExperimentReport::new(
        "fluid-replay",
        cfg.seed_or(0),
        &["t", "x0", "w", "left_outflow", "right_inflow", "mass", "atoms"],
    );
    report.replicates = sc.events.len();
    let mut balance: f64 = 0.0;
    let mut prev = sc.nu.total_mass();
    for ((ev, flux), (_, m)) in sc.events.iter().zip(&traj.ledger).zip(&traj.snapshots) {
        let mass = m.total_mass();
        balance = balance.max((mass - (prev + flux.right_inflow - flux.left_outflow)).abs());
        prev = mass;
        report.push(
            "event",
            0,
            vec![ev.t, ev.x0, ev.w, flux.left_outflow, flux.right_inflow, mass, m.len() as f64],
        );
    }
    let cloud = sc.to_cloud()?;
    let (lo, hi) = (sc.window.x_min, sc.window.x_max);
    let mut dual_gap: f64 = 0.0;
    for (t, m) in &traj.snapshots {
        let dual = measure_via_lastpassage(&cloud, &sc.nu, *t, lo, hi)?;
        dual_gap = dual_gap.max(dual.measure.sup_distance(&m.restrict(lo, hi)));
    }
    let last = traj.last();
    report.stat("final_mass", last.total_mass());
    report.stat("final_atoms", last.len() as f64);
    for (i, a) in last.atoms().iter().enumerate() {
        report.stat(format!("final_atom{i}_pos"), a.pos);
        report.stat(format!("final_atom{i}_mass"), a.mass);
    }
    report.stat("total_left_outflow", traj.ledger.iter().map(|f| f.left_outflow).sum::<f64>());
    report.stat("total_right_inflow", traj.ledger.iter().map(|f| f.right_inflow).sum::<f64>());
    report.stat("ledger_imbalance", balance);
    report.stat("dual_gap", dual_gap);
    report.check(Check::within("ledger_imbalance", balance, 0.0, tol::EXACT_TOL));
    report.check(Check::within("dual_gap", dual_gap, 0.0, tol::EXACT_TOL));
    if bundled {
        report.check(Check::holds("atoms_t5", same_atoms(traj.at(5.0), &[(2.0, 1.0), (4.0, 4.0), (8.0, 6.0)])));
        report.check(Check::holds("atoms_final", same_atoms(last, &[(6.0, 7.0)])));
    }
    Ok(report)
}

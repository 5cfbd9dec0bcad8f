use std::f64::consts::{FRAC_PI_2, PI};

use super::{replicate, stream, tolerance as tol, Check, ExperimentConfig, ExperimentReport};
use crate::busemann::{Angle, RaySchedule};
use crate::error::{param, Result};
use crate::lattice::{
    lattice_boundary_evolution, lattice_busemann, lattice_last_passage, rho, rho_identity_residual, BoundaryProfile,
    LatticeField,
};
use crate::point_process::WeightDistribution;
use crate::rng::derive_seed;
use crate::stats::{exp_cdf, ks_test, summarize};

const EXP1: WeightDistribution = WeightDistribution::Exponential { mean: 1.0 };

fn shape(n: usize, seed: u64) -> Result<f64> {
    let f = LatticeField::sample(n + 1, n + 1, (0, 0), &EXP1, seed)?;
    Ok(lattice_last_passage(&f, (0, 0), (n as i64, n as i64))? / n as f64)
}

/// KS p-value of the evolved interior increments against `Exp(ρ)`, or
/// `None` when an interior exit reached the left end of the profile.
fn equilibrium(r: f64, t: usize, margin: usize, interior: usize, seed: u64) -> Result<Option<(f64, f64)>> {
    let width = margin + interior + 1;
    let field = LatticeField::sample(width, t + 1, (0, 0), &EXP1, stream(seed, 1))?;
    let profile = BoundaryProfile::exponential(0, width, r, stream(seed, 2))?;
    let out = lattice_boundary_evolution(&field, &profile, t, (margin as i64, (width - 1) as i64))?;
    if out.truncated.iter().any(|&f| f) {
        return Ok(None);
    }
    let ks = ks_test(&out.profile.increments[1..], exp_cdf(r))?;
    Ok(Some((ks.statistic, ks.p_value)))
}

fn busemann(alpha: Angle, x: i64, sched: RaySchedule, seed: u64) -> Result<Option<(f64, usize)>> {
    let d = alpha.direction();
    let r = sched.reach();
    let mid = x as f64 / 2.0;
    let x_lo = (mid + r * d.x).floor() as i64 - 2;
    let t_lo = (r * d.t).floor() as i64 - 2;
    let width = (x - x_lo + 1) as usize;
    let height = (1 - t_lo) as usize;
    let field = LatticeField::sample(width, height, (x_lo, t_lo), &EXP1, seed)?;
    let est = lattice_busemann(&field, (0, 0), (x, 0), alpha, sched)?;
    Ok(est.stabilized.then_some((est.value, est.k_used)))
}

/// Lattice model with exponential weights: diagonal shape, the `ρ`
/// identity, invariance of i.i.d. `Exp(ρ)` boundary increments, and the
/// mean horizontal Busemann increment.
///
/// Defaults: `α = 5π/4`, `n = 500` with 30 replicates for the shape, 100
/// seeds for the equilibrium test (`t = 100`, 400 interior sites) and for
/// the Busemann mean at `x = 20`. `reps` overrides all three counts.
pub fn tasep_suite(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let seed = cfg.seed_or(12);
    let alpha = cfg.alpha_or_diagonal()?;
    let n = cfg.n.unwrap_or(500);
    let t = cfg.t.unwrap_or(100.0);
    let x = cfg.x.unwrap_or(20.0);
    if n == 0 || !(t >= 1.0 && t.fract() == 0.0) || !(x >= 1.0 && x.fract() == 0.0) {
        return Err(param("n, t and x must be positive integers"));
    }
    let (shape_reps, eq_reps, b_reps) = match cfg.reps {
        Some(0) => return Err(param("replicate count must be at least 1")),
        Some(r) => (r, r, r),
        None => (30, 100, 100),
    };
    let t = t as usize;
    let x = x as i64;
    let r = rho(alpha);
    let interior = cfg.width.map(|w| w as usize).unwrap_or(400).max(2);
    let tf = t as f64;
    let slope = (r / (1.0 - r)).powi(2).max(((1.0 - r) / r).powi(2));
    let margin = (slope * tf + 6.0 * tf.powf(2.0 / 3.0) + 10.0).ceil() as usize;
    let sched = cfg.schedule_checked()?.unwrap_or_else(|| RaySchedule::for_diameter(x as f64));

    let mut report = ExperimentReport::new("tasep", seed, &["rep", "value", "aux"]);

    let grid_residual = (0..100)
        .map(|i| {
            let a = Angle::new(PI + (i as f64 + 0.5) / 100.0 * FRAC_PI_2).expect("grid inside range");
            rho_identity_residual(a).abs()
        })
        .fold(0.0, f64::max);
    report.stat("rho", r);
    report.stat("rho_diagonal", rho(Angle::diagonal()));
    report.stat("rho_identity_max_residual", grid_residual);
    report.check(Check::within("rho_diagonal", rho(Angle::diagonal()), 0.5, 0.5));
    report.check(Check::within("rho_identity_max_residual", grid_residual, 0.0, tol::RHO_RESIDUAL));

    let base = stream(seed, 0);
    let shapes = replicate(base, shape_reps, |_, s| shape(n, s))?;
    report.replicates += shape_reps;
    for (i, v) in shapes.iter().enumerate() {
        report.push("shape", derive_seed(base, i as u64), vec![i as f64, *v, n as f64]);
    }
    let s = summarize(&shapes)?;
    report.stat(format!("shape_mean_n{n}"), s.mean);
    report.stat(format!("shape_se_n{n}"), s.std_err);
    report.stat("shape_limit", (1.0 + alpha.tan().sqrt()).powi(2));
    if alpha == Angle::diagonal() && n == 500 {
        let (lo, hi) = tol::LATTICE_SHAPE;
        report.check(Check::within("shape_mean_n500", s.mean, lo, hi));
    }

    let base = stream(seed, 1);
    let eq = replicate(base, eq_reps, |_, s| equilibrium(r, t, margin, interior, s))?;
    report.replicates += eq_reps;
    let (mut pass, mut tested) = (0, 0);
    for (i, o) in eq.iter().enumerate() {
        match o {
            Some((d, p)) => {
                tested += 1;
                if *p >= tol::KS_LEVEL {
                    pass += 1;
                }
                report.push("equilibrium", derive_seed(base, i as u64), vec![i as f64, *p, *d]);
            }
            None => report.discarded += 1,
        }
    }
    let rate = if tested > 0 { pass as f64 / tested as f64 } else { 0.0 };
    report.stat("equilibrium_margin", margin as f64);
    report.stat("equilibrium_ks_pass_rate", rate);
    report.check(Check::within("equilibrium_ks_pass_rate", rate, tol::KS_PASS_RATE, 1.0));

    let base = stream(seed, 2);
    let bs = replicate(base, b_reps, |_, s| busemann(alpha, x, sched, s))?;
    report.replicates += b_reps;
    let mut vals = Vec::new();
    for (i, o) in bs.iter().enumerate() {
        match o {
            Some((v, k)) => {
                vals.push(*v);
                report.push("busemann", derive_seed(base, i as u64), vec![i as f64, *v, *k as f64]);
            }
            None => report.discarded += 1,
        }
    }
    if vals.len() >= 2 {
        let b = summarize(&vals)?;
        let target = x as f64 / r;
        report.stat("busemann_mean", b.mean);
        report.stat("busemann_se", b.std_err);
        report.stat("busemann_target", target);
        let q = tol::LATTICE_BUSEMANN_REL;
        report.check(Check::within("busemann_mean", b.mean, target * (1.0 - q), target * (1.0 + q)));
    }
    Ok(report)
}

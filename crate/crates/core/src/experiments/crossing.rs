use super::clt::{equilibrium_passage, left_edge};
use super::{replicate, stream, tolerance as tol, Check, ExperimentConfig, ExperimentReport};
use crate::error::{param, Result};
use crate::rng::derive_seed;
use crate::stats::summarize;

/// Compares `Var L_ν(x, t)` with `−λx + t/λ + 2λ E Z₊` for Poisson `ν` of
/// intensity `λ`.
///
/// Defaults: `λ = 1`, `(x, t) = (100, 120)`, 1000 replicates.
pub fn crossing_formula_check(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let seed = cfg.seed_or(7);
    let reps = cfg.reps_or(1000)?;
    let lambda = match cfg.lambdas.as_deref() {
        None => 1.0,
        Some([l]) => *l,
        Some(_) => return Err(param("the crossing experiment takes a single λ")),
    };
    let x = cfg.x.unwrap_or(100.0);
    let t = cfg.t.unwrap_or(120.0);
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(param("λ must be positive"));
    }
    if !(t > 0.0 && t.is_finite() && x.is_finite()) {
        return Err(param("the crossing formula needs t > 0"));
    }
    if reps < 2 {
        return Err(param("the crossing formula needs at least two replicates"));
    }
    let scale = cfg.window_scale.unwrap_or(8.0);
    let left = left_edge(lambda, x, t, scale);
    let base = stream(seed, 0);
    let out = replicate(base, reps, |_, s| equilibrium_passage(lambda, x, t, left, s))?;
    let mut report = ExperimentReport::new("crossing", seed, &["rep", "value", "exit", "exit_plus"]);
    report.replicates = reps;
    let mut vals = Vec::new();
    let mut zp = Vec::new();
    for (i, bp) in out.iter().enumerate() {
        if bp.truncated {
            report.discarded += 1;
            continue;
        }
        vals.push(bp.value);
        zp.push(bp.exit.max(0.0));
        report.push("crossing", derive_seed(base, i as u64), vec![i as f64, bp.value, bp.exit, bp.exit.max(0.0)]);
    }
    if vals.len() < 2 {
        return Err(param("too few untruncated replicates; enlarge window_scale"));
    }
    let lhs = summarize(&vals)?;
    let z = summarize(&zp)?;
    let rhs = -lambda * x + t / lambda + 2.0 * lambda * z.mean;
    let rel = (lhs.variance - rhs).abs() / lhs.variance;
    report.stat("left_edge", left);
    report.stat("mean", lhs.mean);
    report.stat("var_lhs", lhs.variance);
    report.stat("mean_exit_plus", z.mean);
    report.stat("rhs", rhs);
    report.stat("relative_discrepancy", rel);
    report.check(Check::within("relative_discrepancy", rel, 0.0, tol::CROSSING_REL));
    Ok(report)
}

//! Monte Carlo experiment drivers.
//!
//! Each experiment is a pure function of an [`ExperimentConfig`]: replicates
//! run in parallel on seeds derived from the base seed and are collected in
//! replicate order, so reruns produce identical reports.

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::busemann::{Angle, RaySchedule};
use crate::error::{io_err, param, Result};
use crate::point_process::WeightDistribution;
use crate::rng::derive_seed;

mod algebra;
mod clt;
mod crossing;
mod duality;
mod equilibrium;
mod exit;
mod fluid_replay;
mod gamma;
mod identity;
mod markov;
mod multiclass;
mod product;
mod second_class;
mod tasep;
pub mod tolerance;

pub use algebra::busemann_algebra;
pub use clt::{clt_busemann, CltMethod};
pub use crossing::crossing_formula_check;
pub use duality::{fluid_duality, random_scenario};
pub use equilibrium::equilibrium_check;
pub use exit::exit_point_diagnostic;
pub use fluid_replay::fluid_replay;
pub use gamma::{estimate_gamma, gamma_extrapolated, GammaFit};
pub use identity::distributional_identity;
pub use markov::markov_suite;
pub use multiclass::multiclass_check;
pub use product::product_relation_check;
pub use second_class::second_class_lln;
pub use tasep::tasep_suite;

/// Names accepted by [`run`].
pub const EXPERIMENTS: &[&str] = &[
    "gamma",
    "clt",
    "equilibrium",
    "crossing",
    "product",
    "second-class",
    "multiclass",
    "fluid-replay",
    "tasep",
    "duality",
    "algebra",
    "markov",
    "identity",
    "exit",
];

/// Experiment parameters. Every field is optional; experiments fill in
/// their own defaults.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Option<String>,
    pub seed: Option<u64>,
    pub reps: Option<usize>,
    /// Direction angle in `(π, 3π/2)`.
    pub alpha: Option<f64>,
    /// Observation angles in `[0, π]`.
    pub betas: Option<Vec<f64>>,
    pub ts: Option<Vec<f64>>,
    pub rs: Option<Vec<f64>>,
    pub lambdas: Option<Vec<f64>>,
    pub densities: Option<Vec<f64>>,
    pub x: Option<f64>,
    pub t: Option<f64>,
    pub n: Option<usize>,
    /// Half-width of a centred window, or a length scale.
    pub width: Option<f64>,
    /// Multiplier for margins left of the region of interest.
    pub window_scale: Option<f64>,
    pub schedule: Option<RaySchedule>,
    pub dist: Option<WeightDistribution>,
    /// `"boundary"` or `"ray"` for the CLT experiment.
    pub method: Option<String>,
    /// Scenario file for the fluid replay.
    pub scenario: Option<String>,
    pub output: Option<String>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
        Self::from_json(&text)
    }

    pub(crate) fn seed_or(&self, default: u64) -> u64 {
        self.seed.unwrap_or(default)
    }

    pub(crate) fn reps_or(&self, default: usize) -> Result<usize> {
        let r = self.reps.unwrap_or(default);
        if r == 0 {
            return Err(param("replicate count must be at least 1"));
        }
        Ok(r)
    }

    pub(crate) fn alpha_or_diagonal(&self) -> Result<Angle> {
        match self.alpha {
            Some(a) => Angle::new(a).map_err(|_| param(format!("α = {a} outside (π, 3π/2)"))),
            None => Ok(Angle::diagonal()),
        }
    }

    pub(crate) fn schedule_checked(&self) -> Result<Option<RaySchedule>> {
        if let Some(s) = self.schedule {
            s.validate()?;
        }
        Ok(self.schedule)
    }

    pub(crate) fn dist_or_classical(&self) -> Result<WeightDistribution> {
        let d = self.dist.clone().unwrap_or(WeightDistribution::Delta1);
        d.validate()?;
        Ok(d)
    }
}

/// An acceptance assertion `lo <= value <= hi`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub lo: f64,
    pub hi: f64,
    pub passed: bool,
}

impl Check {
    pub fn within(name: impl Into<String>, value: f64, lo: f64, hi: f64) -> Self {
        Check { name: name.into(), value, lo, hi, passed: value >= lo && value <= hi }
    }

    /// A yes/no condition, reported as value 1 or 0 against `[1, 1]`.
    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Check::within(name, if ok { 1.0 } else { 0.0 }, 1.0, 1.0)
    }
}

/// One kept replicate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub group: String,
    /// Seed of the replicate's random stream.
    pub seed: u64,
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub seed: u64,
    /// Names of the per-record values (CSV rows start with `group,seed`).
    pub columns: Vec<String>,
    pub records: Vec<Record>,
    pub summary: Vec<(String, f64)>,
    /// Replicates attempted, including discarded ones.
    pub replicates: usize,
    pub discarded: usize,
    pub checks: Vec<Check>,
}

impl ExperimentReport {
    pub(crate) fn new(experiment: &str, seed: u64, columns: &[&str]) -> Self {
        ExperimentReport {
            experiment: experiment.to_string(),
            seed,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            records: Vec::new(),
            summary: Vec::new(),
            replicates: 0,
            discarded: 0,
            checks: Vec::new(),
        }
    }

    pub(crate) fn push(&mut self, group: impl Into<String>, seed: u64, values: Vec<f64>) {
        debug_assert_eq!(values.len(), self.columns.len());
        self.records.push(Record { group: group.into(), seed, values });
    }

    pub(crate) fn stat(&mut self, key: impl Into<String>, value: f64) {
        self.summary.push((key.into(), value));
    }

    pub(crate) fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn summary_value(&self, key: &str) -> Option<f64> {
        self.summary.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
    }

    pub fn check_named(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Values of one column for the records of `group`.
    pub fn column(&self, group: &str, column: &str) -> Vec<f64> {
        let Some(j) = self.columns.iter().position(|c| c == column) else {
            return Vec::new();
        };
        self.records.iter().filter(|r| r.group == group).map(|r| r.values[j]).collect()
    }

    /// Records as CSV followed by `# key=value` summary lines.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        let mut header = vec!["group".to_string(), "seed".to_string()];
        header.extend(self.columns.iter().cloned());
        w.write_record(&header)?;
        for r in &self.records {
            let mut row = vec![r.group.clone(), r.seed.to_string()];
            row.extend(r.values.iter().map(|v| v.to_string()));
            w.write_record(&row)?;
        }
        let mut out = String::from_utf8(w.into_inner().map_err(|e| param(e.to_string()))?)
            .expect("csv output is utf-8");
        for line in self.trailer_lines() {
            let _ = writeln!(out, "# {line}");
        }
        Ok(out)
    }

    fn trailer_lines(&self) -> Vec<String> {
        let mut lines = vec![
            format!("experiment={}", self.experiment),
            format!("seed={}", self.seed),
            format!("replicates={}", self.replicates),
            format!("records={}", self.records.len()),
            format!("discarded={}", self.discarded),
        ];
        lines.extend(self.summary.iter().map(|(k, v)| format!("{k}={v}")));
        for c in &self.checks {
            lines.push(format!(
                "check.{}={} range=[{}, {}] {}",
                c.name,
                c.value,
                c.lo,
                c.hi,
                if c.passed { "pass" } else { "FAIL" }
            ));
        }
        lines
    }

    /// Human-readable summary, the trailer lines without the `#`.
    pub fn summary_text(&self) -> String {
        self.trailer_lines().join("\n")
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_csv()?).map_err(|e| io_err(path, e))
    }
}

/// Runs `f(i, seed_i)` for `i in 0..reps` in parallel, with
/// `seed_i = derive_seed(base, i)`, and returns results in index order.
pub(crate) fn replicate<T, F>(base: u64, reps: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize, u64) -> Result<T> + Sync,
{
    (0..reps).into_par_iter().map(|i| f(i, derive_seed(base, i as u64))).collect()
}

/// Seed stream for one part of an experiment.
pub(crate) fn stream(seed: u64, part: u64) -> u64 {
    derive_seed(seed, 0x5354_5245_414d_0000 | part)
}

/// Runs the named experiment.
pub fn run(name: &str, cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    match name {
        "gamma" => estimate_gamma(cfg),
        "clt" => clt_busemann(cfg),
        "equilibrium" => equilibrium_check(cfg),
        "crossing" => crossing_formula_check(cfg),
        "product" => product_relation_check(cfg),
        "second-class" => second_class_lln(cfg),
        "multiclass" => multiclass_check(cfg),
        "fluid-replay" => fluid_replay(cfg),
        "tasep" => tasep_suite(cfg),
        "duality" => fluid_duality(cfg),
        "algebra" => busemann_algebra(cfg),
        "markov" => markov_suite(cfg),
        "identity" => distributional_identity(cfg),
        "exit" => exit_point_diagnostic(cfg),
        other => Err(param(format!("unknown experiment {other:?}; expected one of {}", EXPERIMENTS.join(", ")))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut r = ExperimentReport::new("demo", 7, &["a", "b"]);
        r.push("g", 11, vec![1.0, 2.5]);
        r.replicates = 2;
        r.discarded = 1;
        r.stat("mean", 1.5);
        r.check(Check::within("mean", 1.5, 1.0, 2.0));
        let text = r.to_csv().unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "group,seed,a,b");
        assert_eq!(lines[1], "g,11,1,2.5");
        assert!(lines.contains(&"# discarded=1"));
        assert!(lines.contains(&"# mean=1.5"));
        assert!(lines.iter().any(|l| l.starts_with("# check.mean=1.5") && l.ends_with("pass")));
        assert!(r.passed());
    }

    #[test]
    fn replicate_order_is_stable() {
        let a = replicate(3, 50, |i, s| Ok((i, s))).unwrap();
        assert!(a.iter().enumerate().all(|(i, (j, s))| i == *j && *s == derive_seed(3, i as u64)));
    }

    #[test]
    fn config_rejects_unknown_fields() {
        assert!(ExperimentConfig::from_json(r#"{"reps": 3}"#).is_ok());
        assert!(ExperimentConfig::from_json(r#"{"repz": 3}"#).is_err());
        let c = ExperimentConfig::from_json(r#"{"dist": {"kind": "exponential", "mean": 1.0}}"#).unwrap();
        assert!(!c.dist.unwrap().is_delta1());
        assert!(run("nope", &ExperimentConfig::default()).is_err());
    }
}

//! The Hammersley interacting fluid and its last-passage dual.
//!
//! A weighted point `(x0, t, ω)` adds mass `ω` at `x0` and removes mass `ω`
//! from the fluid strictly to the right of `x0`, nearest mass first. On a
//! finite window, missing mass is taken to enter through the right edge.
//! Points left of the window deposit their mass outside it and pull mass
//! out through the left edge; the window state never shows that mass.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{domain, io_err, param, window, Result};
use crate::last_passage::PassageProfile;
use crate::measure::{Atom, AtomicMeasure};
use crate::point_process::{Point, WeightedPoint, WeightedPointCloud, Window};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FluidEvent {
    pub x0: f64,
    pub t: f64,
    pub w: f64,
}

impl FluidEvent {
    pub const fn new(x0: f64, t: f64, w: f64) -> Self {
        FluidEvent { x0, t, w }
    }
}

/// Mass crossing the window boundary during one event.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Flux {
    pub t: f64,
    pub left_outflow: f64,
    pub right_inflow: f64,
}

/// Fluid state on a window, advanced one event at a time.
#[derive(Clone, Debug)]
pub struct FluidState {
    measure: AtomicMeasure,
    /// Mass deposited left of the window.
    outside: Vec<Atom>,
    window: Window,
    time: f64,
}

/// Removes up to `amount` from `atoms[from..]`, leftmost first, and returns
/// what could not be removed.
fn pull(atoms: &mut Vec<Atom>, from: usize, amount: f64) -> f64 {
    let mut remaining = amount;
    let mut end = from;
    while remaining > 0.0 && end < atoms.len() {
        if atoms[end].mass > remaining {
            atoms[end].mass -= remaining;
            remaining = 0.0;
        } else {
            remaining -= atoms[end].mass;
            end += 1;
        }
    }
    atoms.drain(from..end);
    remaining
}

fn deposit(atoms: &mut Vec<Atom>, at: usize, x0: f64, w: f64) {
    if at > 0 && atoms[at - 1].pos == x0 {
        atoms[at - 1].mass += w;
    } else {
        atoms.insert(at, Atom::new(x0, w));
    }
}

impl FluidState {
    pub fn new(nu: AtomicMeasure, window: Window) -> Result<Self> {
        window.validate()?;
        Ok(FluidState { measure: nu, outside: Vec::new(), window, time: 0.0 })
    }

    pub fn measure(&self) -> &AtomicMeasure {
        &self.measure
    }

    pub fn into_measure(self) -> AtomicMeasure {
        self.measure
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    /// Applies one event. Events must come in increasing time.
    pub fn apply(&mut self, ev: &FluidEvent) -> Result<Flux> {
        if !(ev.t > self.time) {
            return Err(domain(format!("event at t={} does not follow t={}", ev.t, self.time)));
        }
        if !(ev.w > 0.0 && ev.w.is_finite() && ev.x0.is_finite()) {
            return Err(domain(format!("invalid event {ev:?}")));
        }
        self.time = ev.t;
        let mut flux = Flux { t: ev.t, ..Flux::default() };
        if ev.x0 > self.window.x_max {
            return Ok(flux);
        }
        if ev.x0 < self.window.x_min {
            let start = self.outside.partition_point(|a| a.pos <= ev.x0);
            let rest = pull(&mut self.outside, start, ev.w);
            let left = pull(self.measure.atoms_mut(), 0, rest);
            flux.left_outflow = rest - left;
            deposit(&mut self.outside, start, ev.x0, ev.w);
            return Ok(flux);
        }
        let atoms = self.measure.atoms_mut();
        let start = atoms.partition_point(|a| a.pos <= ev.x0);
        flux.right_inflow = pull(atoms, start, ev.w);
        deposit(atoms, start, ev.x0, ev.w);
        Ok(flux)
    }
}

/// Trajectory of the fluid: the initial measure, one snapshot after each
/// event, and the boundary fluxes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FluidTrajectory {
    pub initial: AtomicMeasure,
    pub snapshots: Vec<(f64, AtomicMeasure)>,
    pub ledger: Vec<Flux>,
}

impl FluidTrajectory {
    /// State at time `t` (the trajectory is constant between events).
    pub fn at(&self, t: f64) -> &AtomicMeasure {
        let k = self.snapshots.partition_point(|(s, _)| *s <= t);
        if k == 0 {
            &self.initial
        } else {
            &self.snapshots[k - 1].1
        }
    }

    pub fn last(&self) -> &AtomicMeasure {
        self.snapshots.last().map_or(&self.initial, |(_, m)| m)
    }

    /// States before and after every event.
    pub fn steps(&self) -> impl Iterator<Item = (&AtomicMeasure, &AtomicMeasure)> {
        std::iter::once(&self.initial)
            .chain(self.snapshots.iter().map(|(_, m)| m))
            .zip(self.snapshots.iter().map(|(_, m)| m))
    }
}

fn check_sorted(events: &[FluidEvent]) -> Result<()> {
    if let Some(first) = events.first() {
        if !(first.t > 0.0) {
            return Err(domain("event times must be positive"));
        }
    }
    if events.windows(2).any(|e| !(e[0].t < e[1].t)) {
        return Err(domain("events must be sorted by strictly increasing time"));
    }
    Ok(())
}

/// Runs the fluid from `nu` through `events`.
pub fn evolve(nu: &AtomicMeasure, events: &[FluidEvent], window: Window) -> Result<FluidTrajectory> {
    check_sorted(events)?;
    let mut state = FluidState::new(nu.clone(), window)?;
    let mut snapshots = Vec::with_capacity(events.len());
    let mut ledger = Vec::with_capacity(events.len());
    for ev in events {
        ledger.push(state.apply(ev)?);
        snapshots.push((ev.t, state.measure().clone()));
    }
    Ok(FluidTrajectory { initial: nu.clone(), snapshots, ledger })
}

/// Events in time order from the points of a cloud with `t ∈ (0, t_max]`.
pub fn events_from_cloud(cloud: &WeightedPointCloud, t_max: f64) -> Vec<FluidEvent> {
    let mut ev: Vec<FluidEvent> = cloud
        .points()
        .iter()
        .filter(|p| p.t > 0.0 && p.t <= t_max)
        .map(|p| FluidEvent::new(p.x, p.t, p.w))
        .collect();
    ev.sort_by(|a, b| a.t.total_cmp(&b.t));
    ev
}

/// Fluid state at time `t` from the last-passage profile: the jumps of
/// `x ↦ L_ν(x, t)` on `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualMeasure {
    pub measure: AtomicMeasure,
    /// Some exit point on `[lo, hi]` is the left window edge.
    pub truncated: bool,
}

pub fn measure_via_lastpassage(
    cloud: &WeightedPointCloud,
    nu: &AtomicMeasure,
    t: f64,
    lo: f64,
    hi: f64,
) -> Result<DualMeasure> {
    if !(lo <= hi) {
        return Err(domain(format!("interval [{lo}, {hi}] is empty")));
    }
    let profile = PassageProfile::new(cloud, nu, t, hi)?;
    Ok(DualMeasure { measure: profile.jumps(lo, hi), truncated: profile.truncated_on(lo, hi) })
}

/// Position of the second-class particle started at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SecondClass {
    pub position: f64,
    /// An exit point on `[0, position]` is the window edge.
    pub truncated: bool,
}

/// `X_ν(t) = inf { x >= 0 : Z_ν(x, t) >= 0 }`, read off the exit-point
/// profile exactly.
pub fn second_class_position(cloud: &WeightedPointCloud, nu: &AtomicMeasure, t: f64) -> Result<SecondClass> {
    let edge = cloud.window().x_min;
    if !(edge <= 0.0) {
        return Err(window("the window must contain the origin"));
    }
    let profile = PassageProfile::new(cloud, nu, t, cloud.window().x_max)?;
    let at0 = profile.at(0.0)?;
    if at0.exit >= 0.0 {
        return Ok(SecondClass { position: 0.0, truncated: at0.truncated });
    }
    let mut truncated = at0.truncated;
    for (x, _, exit) in profile.steps() {
        if x <= 0.0 {
            continue;
        }
        truncated |= exit == edge;
        if exit >= 0.0 {
            return Ok(SecondClass { position: x, truncated });
        }
    }
    Err(window(format!("no crossing of the origin by exit points up to x = {}", cloud.window().x_max)))
}

/// Runs several initial measures against the same events.
///
/// The inputs must be ordered, each dominating the previous one.
pub fn multiclass_evolve(measures: &[AtomicMeasure], events: &[FluidEvent], window: Window) -> Result<Vec<FluidTrajectory>> {
    if measures.windows(2).any(|m| !m[1].dominates(&m[0])) {
        return Err(domain("measures must be ordered: each must dominate the previous one"));
    }
    measures.iter().map(|nu| evolve(nu, events, window)).collect()
}

/// Violations found by [`coupling_violations`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct CouplingReport {
    /// Events after which a trajectory failed to dominate its predecessor.
    pub dominance: usize,
    /// Events after which `M̄([0,x]) − M([0,x])` increased at some `x >= 0`
    /// for a pair agreeing on `(−∞, 0)`.
    pub difference: usize,
    pub events: usize,
}

impl CouplingReport {
    pub fn is_clean(&self) -> bool {
        self.dominance == 0 && self.difference == 0
    }
}

/// Checks the order properties of coupled trajectories after every event.
pub fn coupling_violations(trajs: &[FluidTrajectory]) -> CouplingReport {
    let mut report = CouplingReport::default();
    for pair in trajs.windows(2) {
        let (lo, hi) = (&pair[0], &pair[1]);
        let agree_left = lo.initial.restrict_below(0.0) == hi.initial.restrict_below(0.0);
        let mut prev_lo = &lo.initial;
        let mut prev_hi = &hi.initial;
        for ((_, m_lo), (_, m_hi)) in lo.snapshots.iter().zip(&hi.snapshots) {
            report.events += 1;
            if !m_hi.dominates(m_lo) {
                report.dominance += 1;
            }
            if agree_left && difference_increased(prev_lo, prev_hi, m_lo, m_hi) {
                report.difference += 1;
            }
            prev_lo = m_lo;
            prev_hi = m_hi;
        }
    }
    report
}

fn difference_increased(lo0: &AtomicMeasure, hi0: &AtomicMeasure, lo1: &AtomicMeasure, hi1: &AtomicMeasure) -> bool {
    let mut xs: Vec<f64> = [lo0, hi0, lo1, hi1]
        .iter()
        .flat_map(|m| m.atoms().iter().map(|a| a.pos))
        .filter(|&p| p >= 0.0)
        .collect();
    xs.push(0.0);
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    xs.iter().any(|&x| {
        let before = hi0.cumulative(x) - lo0.cumulative(x);
        let after = hi1.cumulative(x) - lo1.cumulative(x);
        after > before
    })
}

/// Fluid scenario file: initial atoms, events and the window.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub nu: AtomicMeasure,
    pub events: Vec<FluidEvent>,
    pub window: Window,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        let s: Scenario = serde_json::from_str(text)?;
        s.window.validate()?;
        check_sorted(&s.events)?;
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
        Self::from_json(&text)
    }

    /// The example shipped in `scenarios/example.json`.
    pub fn example() -> Self {
        Self::from_json(include_str!("../../../scenarios/example.json")).expect("bundled scenario parses")
    }

    pub fn evolve(&self) -> Result<FluidTrajectory> {
        evolve(&self.nu, &self.events, self.window)
    }

    /// The events as a point cloud whose window extends the scenario window
    /// to cover every event, so that the dual last-passage problem sees
    /// the left-edge pulls as ordinary points.
    pub fn to_cloud(&self) -> Result<WeightedPointCloud> {
        let mut w = Window { t_min: self.window.t_min.min(0.0), ..self.window };
        for e in &self.events {
            w = w.expand_to(Point::new(e.x0, e.t));
        }
        // Keep the edge strictly left of every event and atom, so that
        // neither ties with the edge candidate.
        w.x_min -= 1.0;
        if !(w.t_max > w.t_min) {
            w.t_max = w.t_min + 1.0;
        }
        let pts = self.events.iter().map(|e| WeightedPoint::new(e.x0, e.t, e.w)).collect();
        WeightedPointCloud::new(pts, w, 0).map_err(|e| param(format!("scenario events do not form a cloud: {e}")))
    }
}

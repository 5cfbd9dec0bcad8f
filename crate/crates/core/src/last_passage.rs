//! Last-passage times over a weighted point cloud.
//!
//! `L(p, q)` is the largest total weight of a chain of cloud points that is
//! strictly increasing in both coordinates and lies in the box `p < · <= q`
//! (the start is excluded, a point sitting exactly on `q` counts). All
//! dynamic programmes here sort by `x` and keep a prefix-maximum tree over
//! `t`-ranks, which is valid because cloud coordinates are pairwise distinct.

use serde::Serialize;

use crate::error::{domain, Result};
use crate::fenwick::PrefixMax;
use crate::measure::AtomicMeasure;
use crate::point_process::{Point, WeightedPoint, WeightedPointCloud};

const NONE: u32 = u32::MAX;

/// Ordering used to pick among equally heavy chains: heavier first, then
/// the lower point (smaller `t`). The index only makes the order total.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub(crate) struct Key {
    pub value: f64,
    pub neg_t: f64,
    pub idx: u32,
}

impl Key {
    pub const BOTTOM: Key = Key { value: f64::NEG_INFINITY, neg_t: f64::NEG_INFINITY, idx: NONE };

    fn is_none(&self) -> bool {
        self.idx == NONE
    }
}

/// A maximising chain between two query points.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeodesicPath {
    pub start: Point,
    pub end: Point,
    /// Chain points, strictly increasing in both coordinates.
    pub points: Vec<WeightedPoint>,
    pub value: f64,
}

impl GeodesicPath {
    pub fn empty(start: Point, end: Point) -> Self {
        GeodesicPath { start, end, points: Vec::new(), value: 0.0 }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Sum of the weights of the points strictly after `c` on the path, in
    /// path order. `None` if `c` is not on the path.
    pub fn weight_after(&self, c: Point) -> Option<f64> {
        let i = self.points.iter().position(|p| p.x == c.x && p.t == c.t)?;
        Some(self.points[i + 1..].iter().fold(0.0, |acc, p| acc + p.w))
    }
}

/// Checks `p <= q` coordinatewise with `p != q`.
pub(crate) fn check_pair(p: Point, q: Point) -> Result<()> {
    let finite = p.x.is_finite() && p.t.is_finite() && q.x.is_finite() && q.t.is_finite();
    if !finite || !p.le_all(&q) || p == q {
        return Err(domain(format!(
            "last-passage query needs p <= q with p != q, got p=({}, {}), q=({}, {})",
            p.x, p.t, q.x, q.t
        )));
    }
    Ok(())
}

/// `t`-ranks of the points `idx` (0 = lowest).
fn t_ranks(pts: &[WeightedPoint], idx: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..idx.len()).collect();
    order.sort_unstable_by(|&a, &b| pts[idx[a]].t.total_cmp(&pts[idx[b]].t));
    let mut rank = vec![0; idx.len()];
    for (r, &k) in order.iter().enumerate() {
        rank[k] = r;
    }
    rank
}

/// Forward chain values `f(i)` = heaviest chain inside `idx` ending at `i`,
/// with the chosen predecessor (heaviest, then lowest).
fn forward_tree(pts: &[WeightedPoint], idx: &[usize]) -> (Vec<f64>, Vec<u32>) {
    let n = idx.len();
    let rank = t_ranks(pts, idx);
    let mut tree = PrefixMax::new(n, Key::BOTTOM);
    let mut value = vec![0.0; n];
    let mut pred = vec![NONE; n];
    for k in 0..n {
        let p = &pts[idx[k]];
        let best = tree.prefix_max(rank[k]);
        let base = if best.is_none() { 0.0 } else { best.value };
        pred[k] = best.idx;
        value[k] = base + p.w;
        tree.raise(rank[k], Key { value: value[k], neg_t: -p.t, idx: k as u32 });
    }
    (value, pred)
}

/// Backward chain values `g(i)` = heaviest chain inside `idx` starting at
/// `i`, with the chosen successor (heaviest, then lowest).
fn backward_tree(pts: &[WeightedPoint], idx: &[usize]) -> (Vec<f64>, Vec<u32>) {
    let n = idx.len();
    let rank = t_ranks(pts, idx);
    // Reversed ranks turn "t' > t" into a prefix query.
    let mut tree = PrefixMax::new(n, Key::BOTTOM);
    let mut value = vec![0.0; n];
    let mut next = vec![NONE; n];
    for k in (0..n).rev() {
        let p = &pts[idx[k]];
        let rr = n - 1 - rank[k];
        let best = tree.prefix_max(rr);
        let base = if best.is_none() { 0.0 } else { best.value };
        next[k] = best.idx;
        value[k] = base + p.w;
        tree.raise(rr, Key { value: value[k], neg_t: -p.t, idx: k as u32 });
    }
    (value, next)
}

/// `L(p, q)`.
///
/// ```
/// use hamlab::{last_passage_time, Point, WeightedPoint, WeightedPointCloud};
/// let cloud = WeightedPointCloud::from_points(vec![
///     WeightedPoint::new(1.0, 2.0, 2.0),
///     WeightedPoint::new(2.0, 1.0, 3.0),
///     WeightedPoint::new(3.0, 3.0, 1.5),
/// ])?;
/// assert_eq!(last_passage_time(&cloud, Point::new(0.0, 0.0), Point::new(4.0, 4.0))?, 4.5);
/// # Ok::<(), hamlab::Error>(())
/// ```
pub fn last_passage_time(cloud: &WeightedPointCloud, p: Point, q: Point) -> Result<f64> {
    check_pair(p, q)?;
    let idx = cloud.box_indices(p, q);
    let (value, _) = forward_tree(cloud.points(), &idx);
    Ok(value.into_iter().fold(0.0, f64::max))
}

/// The lowest maximising chain from `p` to `q`.
///
/// Built forward from `p`: each step takes, among successors that still
/// allow an optimal completion, the one with the smallest `t`.
pub fn geodesic(cloud: &WeightedPointCloud, p: Point, q: Point) -> Result<GeodesicPath> {
    check_pair(p, q)?;
    let pts = cloud.points();
    let idx = cloud.box_indices(p, q);
    let (value, next) = backward_tree(pts, &idx);
    let mut start = Key::BOTTOM;
    for (k, &i) in idx.iter().enumerate() {
        let key = Key { value: value[k], neg_t: -pts[i].t, idx: k as u32 };
        if start < key {
            start = key;
        }
    }
    let mut path = GeodesicPath::empty(p, q);
    let mut k = start.idx;
    while k != NONE {
        path.points.push(pts[idx[k as usize]]);
        k = next[k as usize];
    }
    path.value = path.points.iter().fold(0.0, |acc, w| acc + w.w);
    Ok(path)
}

/// All lowest geodesics from a single source to targets in `(source, upper]`.
///
/// Paths are read off a predecessor tree, so any two of them share a common
/// initial segment and then stay apart.
#[derive(Clone, Debug)]
pub struct GeodesicTree<'a> {
    cloud: &'a WeightedPointCloud,
    source: Point,
    upper: Point,
    idx: Vec<usize>,
    value: Vec<f64>,
    pred: Vec<u32>,
}

impl<'a> GeodesicTree<'a> {
    pub fn new(cloud: &'a WeightedPointCloud, source: Point, upper: Point) -> Result<Self> {
        check_pair(source, upper)?;
        let idx = cloud.box_indices(source, upper);
        let (value, pred) = forward_tree(cloud.points(), &idx);
        Ok(GeodesicTree { cloud, source, upper, idx, value, pred })
    }

    pub fn source(&self) -> Point {
        self.source
    }

    fn check_target(&self, q: Point) -> Result<()> {
        check_pair(self.source, q)?;
        if !q.le_all(&self.upper) {
            return Err(domain("target outside the geodesic tree box"));
        }
        Ok(())
    }

    /// Last point of the lowest geodesic to `q`.
    fn endpoint(&self, q: Point) -> Option<usize> {
        let pts = self.cloud.points();
        let end = self.idx.partition_point(|&i| pts[i].x <= q.x);
        let mut best = Key::BOTTOM;
        for k in 0..end {
            let p = &pts[self.idx[k]];
            if p.t <= q.t {
                let key = Key { value: self.value[k], neg_t: -p.t, idx: k as u32 };
                if best < key {
                    best = key;
                }
            }
        }
        (!best.is_none()).then_some(best.idx as usize)
    }

    /// `L(source, q)`.
    pub fn value_to(&self, q: Point) -> Result<f64> {
        self.check_target(q)?;
        Ok(self.endpoint(q).map_or(0.0, |k| self.value[k]))
    }

    pub fn path_to(&self, q: Point) -> Result<GeodesicPath> {
        self.check_target(q)?;
        let pts = self.cloud.points();
        let mut path = GeodesicPath::empty(self.source, q);
        let mut k = self.endpoint(q).map_or(NONE, |k| k as u32);
        while k != NONE {
            path.points.push(pts[self.idx[k as usize]]);
            k = self.pred[k as usize];
        }
        path.points.reverse();
        path.value = path.points.iter().fold(0.0, |acc, w| acc + w.w);
        Ok(path)
    }

    /// `w ↦ L(source, (w, s))` on `[source.x, x_hi]` as a right-continuous
    /// step function.
    pub fn horizontal_profile(&self, s: f64, x_hi: f64) -> StepFunction {
        let pts = self.cloud.points();
        let mut f = StepFunction::new(self.source.x, 0.0);
        for (k, &i) in self.idx.iter().enumerate() {
            let p = &pts[i];
            if p.x > x_hi {
                break;
            }
            if p.t <= s {
                f.raise(p.x, self.value[k]);
            }
        }
        f
    }

    /// `u ↦ L(source, (x, u))` on `[source.t, t_hi]`.
    pub fn vertical_profile(&self, x: f64, t_hi: f64) -> StepFunction {
        let pts = self.cloud.points();
        let mut sel: Vec<(f64, f64)> = self
            .idx
            .iter()
            .enumerate()
            .filter(|&(_, &i)| pts[i].x <= x && pts[i].t <= t_hi)
            .map(|(k, &i)| (pts[i].t, self.value[k]))
            .collect();
        sel.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut f = StepFunction::new(self.source.t, 0.0);
        for (t, v) in sel {
            f.raise(t, v);
        }
        f
    }
}

/// Non-decreasing right-continuous step function on `[start, ∞)`.
#[derive(Clone, Debug, PartialEq)]
pub struct StepFunction {
    xs: Vec<f64>,
    values: Vec<f64>,
}

impl StepFunction {
    fn new(start: f64, value: f64) -> Self {
        StepFunction { xs: vec![start], values: vec![value] }
    }

    /// Records `value` from `x` on if it beats the current level.
    fn raise(&mut self, x: f64, value: f64) {
        let last = *self.values.last().unwrap();
        if value > last {
            if *self.xs.last().unwrap() == x {
                *self.values.last_mut().unwrap() = value;
            } else {
                self.xs.push(x);
                self.values.push(value);
            }
        }
    }

    pub fn start(&self) -> f64 {
        self.xs[0]
    }

    pub fn eval(&self, x: f64) -> f64 {
        let k = self.xs.partition_point(|&b| b <= x);
        if k == 0 {
            self.values[0]
        } else {
            self.values[k - 1]
        }
    }

    /// Jump positions and sizes in `(lo, hi]`.
    pub fn jumps_in(&self, lo: f64, hi: f64) -> Vec<(f64, f64)> {
        (1..self.xs.len())
            .filter(|&k| self.xs[k] > lo && self.xs[k] <= hi)
            .map(|k| (self.xs[k], self.values[k] - self.values[k - 1]))
            .collect()
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.xs
    }
}

/// `z ↦ L((z, s), target)` for all `z >= z_min`.
///
/// Returned as the list of chain starts sorted by `x` with suffix maxima, so
/// that evaluation is a binary search.
#[derive(Clone, Debug)]
pub struct PassageToTarget {
    xs: Vec<f64>,
    suffix: Vec<f64>,
}

impl PassageToTarget {
    pub fn new(cloud: &WeightedPointCloud, s: f64, z_min: f64, target: Point) -> Result<Self> {
        check_pair(Point::new(z_min, s), target)?;
        let idx = cloud.box_indices(Point::new(z_min, s), target);
        let pts = cloud.points();
        let (value, _) = backward_tree(pts, &idx);
        let mut suffix = value.clone();
        for k in (0..suffix.len().saturating_sub(1)).rev() {
            suffix[k] = suffix[k].max(suffix[k + 1]);
        }
        Ok(PassageToTarget { xs: idx.iter().map(|&i| pts[i].x).collect(), suffix })
    }

    /// `L((z, s), target)`; `z` below `z_min` is treated as `z_min`.
    pub fn eval(&self, z: f64) -> f64 {
        let k = self.xs.partition_point(|&x| x <= z);
        self.suffix.get(k).copied().unwrap_or(0.0)
    }
}

/// `L_ν(x, t)` together with its exit point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundaryPassage {
    pub value: f64,
    /// Rightmost maximising boundary candidate.
    pub exit: f64,
    /// The maximum is attained at the left window edge, so the value may be
    /// affected by the finite window.
    pub truncated: bool,
}

/// `x ↦ L_ν(x, t)` and its exit point for all `x` in
/// `[window.x_min, x_hi]` at a fixed time.
///
/// Boundary candidates are the left window edge and the atoms of `ν`; a
/// chain through cloud points starts from the largest candidate strictly
/// left of its first point.
#[derive(Clone, Debug)]
pub struct PassageProfile {
    edge: f64,
    t: f64,
    xs: Vec<f64>,
    values: Vec<f64>,
    exits: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
struct ExitKey {
    value: f64,
    exit: f64,
}

impl PassageProfile {
    pub fn new(cloud: &WeightedPointCloud, nu: &AtomicMeasure, t: f64, x_hi: f64) -> Result<Self> {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(domain(format!("boundary passage needs t >= 0, got {t}")));
        }
        let edge = cloud.window().x_min;
        if !(x_hi >= edge) || !x_hi.is_finite() {
            return Err(domain(format!("query x = {x_hi} lies left of the window edge {edge}")));
        }
        let pts = cloud.points();
        let range = cloud.x_range(edge, x_hi);
        let idx: Vec<usize> = range.filter(|&i| pts[i].t > 0.0 && pts[i].t <= t).collect();
        let rank = t_ranks(pts, &idx);

        let cum = nu.cumulative_at_atoms();
        let atoms = nu.atoms();
        let mut cands: Vec<ExitKey> = vec![ExitKey { value: nu.cumulative(edge), exit: edge }];
        for (a, &c) in atoms.iter().zip(&cum) {
            if a.pos > edge && a.pos <= x_hi {
                cands.push(ExitKey { value: c, exit: a.pos });
            }
        }

        let bottom = ExitKey { value: f64::NEG_INFINITY, exit: f64::NEG_INFINITY };
        let mut tree = PrefixMax::new(idx.len(), bottom);
        let mut xs = vec![edge];
        let mut values = vec![cands[0].value];
        let mut exits = vec![edge];
        let mut running = cands[0];
        let mut record = |x: f64, key: ExitKey, running: &mut ExitKey| {
            if *running < key {
                *running = key;
                if *xs.last().unwrap() == x {
                    *values.last_mut().unwrap() = key.value;
                    *exits.last_mut().unwrap() = key.exit;
                } else {
                    xs.push(x);
                    values.push(key.value);
                    exits.push(key.exit);
                }
            }
        };

        // Candidate 0 (the edge) is already active; a candidate at the same
        // x as a point is processed after it, since the point is not
        // reachable from there.
        let mut c = 1;
        let mut last_cand = cands[0];
        for (k, &i) in idx.iter().enumerate() {
            let p = &pts[i];
            while c < cands.len() && cands[c].exit < p.x {
                last_cand = cands[c];
                record(cands[c].exit, cands[c], &mut running);
                c += 1;
            }
            let from_chain = tree.prefix_max(rank[k]);
            let base = if last_cand < from_chain { from_chain } else { last_cand };
            let key = ExitKey { value: base.value + p.w, exit: base.exit };
            tree.raise(rank[k], key);
            record(p.x, key, &mut running);
        }
        while c < cands.len() {
            record(cands[c].exit, cands[c], &mut running);
            c += 1;
        }
        Ok(PassageProfile { edge, t, xs, values, exits })
    }

    pub fn edge(&self) -> f64 {
        self.edge
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    fn slot(&self, x: f64) -> Result<usize> {
        if !(x >= self.edge) {
            return Err(domain(format!("query x = {x} lies left of the window edge {}", self.edge)));
        }
        Ok(self.xs.partition_point(|&b| b <= x) - 1)
    }

    pub fn at(&self, x: f64) -> Result<BoundaryPassage> {
        let k = self.slot(x)?;
        Ok(BoundaryPassage { value: self.values[k], exit: self.exits[k], truncated: self.exits[k] == self.edge })
    }

    /// Jumps of `x ↦ L_ν(x, t)` at positions in `[lo, hi]`, excluding the
    /// window edge itself.
    pub fn jumps(&self, lo: f64, hi: f64) -> AtomicMeasure {
        let mut atoms = Vec::new();
        for k in 1..self.xs.len() {
            let x = self.xs[k];
            if x >= lo && x <= hi && self.values[k] > self.values[k - 1] {
                atoms.push(crate::measure::Atom::new(x, self.values[k] - self.values[k - 1]));
            }
        }
        AtomicMeasure::from_sorted_unchecked(atoms)
    }

    /// Whether any exit point reported on `[lo, hi]` is the window edge.
    pub fn truncated_on(&self, lo: f64, hi: f64) -> bool {
        let Ok(a) = self.slot(lo.max(self.edge)) else { return true };
        let b = self.xs.partition_point(|&b| b <= hi);
        (a..b.max(a + 1)).any(|k| self.exits[k] == self.edge)
    }

    /// Breakpoints with `(x, value, exit)` from left to right.
    pub fn steps(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        (0..self.xs.len()).map(|k| (self.xs[k], self.values[k], self.exits[k]))
    }
}

/// `L_ν(x, t) = sup_{z <= x} { ν(z) + L((z, 0), (x, t)) }`, with `z`
/// restricted to the cloud window.
///
/// ```
/// use hamlab::{boundary_last_passage, Atom, AtomicMeasure, WeightedPoint, WeightedPointCloud, Window};
/// let cloud = WeightedPointCloud::new(
///     vec![WeightedPoint::new(1.0, 1.0, 1.0)],
///     Window::new(-1.0, 3.0, 0.0, 3.0)?,
///     0,
/// )?;
/// let nu = AtomicMeasure::new(vec![Atom::new(0.0, 2.0)])?;
/// let r = boundary_last_passage(&cloud, &nu, 2.0, 2.0)?;
/// assert_eq!((r.value, r.exit, r.truncated), (3.0, 0.0, false));
/// # Ok::<(), hamlab::Error>(())
/// ```
pub fn boundary_last_passage(cloud: &WeightedPointCloud, nu: &AtomicMeasure, x: f64, t: f64) -> Result<BoundaryPassage> {
    PassageProfile::new(cloud, nu, t, x)?.at(x)
}

/// `Z_ν(x, t)`, the rightmost boundary candidate attaining `L_ν(x, t)`.
pub fn exit_point(cloud: &WeightedPointCloud, nu: &AtomicMeasure, x: f64, t: f64) -> Result<BoundaryPassage> {
    boundary_last_passage(cloud, nu, x, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::Atom;
    use crate::point_process::Window;

    fn wp(x: f64, t: f64, w: f64) -> WeightedPoint {
        WeightedPoint::new(x, t, w)
    }

    fn three() -> WeightedPointCloud {
        WeightedPointCloud::from_points(vec![wp(1.0, 2.0, 2.0), wp(2.0, 1.0, 3.0), wp(3.0, 3.0, 1.5)]).unwrap()
    }

    #[test]
    fn small_examples() {
        let c = three();
        let o = Point::ORIGIN;
        assert_eq!(last_passage_time(&c, o, Point::new(4.0, 4.0)).unwrap(), 4.5);
        assert_eq!(last_passage_time(&c, o, Point::new(2.5, 2.5)).unwrap(), 3.0);
        let g = geodesic(&c, o, Point::new(4.0, 4.0)).unwrap();
        assert_eq!(g.points, vec![wp(2.0, 1.0, 3.0), wp(3.0, 3.0, 1.5)]);
        assert_eq!(g.value, 4.5);
    }

    #[test]
    fn empty_cloud() {
        let c = WeightedPointCloud::empty(Window::new(0.0, 2.0, 0.0, 2.0).unwrap()).unwrap();
        let q = Point::new(1.0, 1.0);
        assert_eq!(last_passage_time(&c, Point::ORIGIN, q).unwrap(), 0.0);
        assert!(geodesic(&c, Point::ORIGIN, q).unwrap().is_empty());
    }

    #[test]
    fn endpoint_conventions() {
        let c = WeightedPointCloud::from_points(vec![wp(1.0, 1.0, 5.0)]).unwrap();
        assert_eq!(last_passage_time(&c, Point::new(0.0, 0.0), Point::new(1.0, 1.0)).unwrap(), 5.0);
        assert_eq!(last_passage_time(&c, Point::new(1.0, 0.0), Point::new(2.0, 2.0)).unwrap(), 0.0);
        assert_eq!(last_passage_time(&c, Point::new(0.0, 1.0), Point::new(2.0, 2.0)).unwrap(), 0.0);
    }

    #[test]
    fn domain_errors() {
        let c = three();
        assert!(last_passage_time(&c, Point::new(1.0, 1.0), Point::new(1.0, 1.0)).is_err());
        assert!(last_passage_time(&c, Point::new(2.0, 0.0), Point::new(1.0, 3.0)).is_err());
        assert!(geodesic(&c, Point::new(0.0, 2.0), Point::new(1.0, 1.0)).is_err());
        // Degenerate boxes along one axis are allowed.
        assert_eq!(last_passage_time(&c, Point::new(0.0, 1.0), Point::new(0.0, 3.0)).unwrap(), 0.0);
    }

    #[test]
    fn lowest_among_ties() {
        // Two chains of weight 2: through (1,1),(2,2) or (1.5,0.5),(3,2.5).
        let c = WeightedPointCloud::from_points(vec![
            wp(1.0, 1.0, 1.0),
            wp(1.5, 0.5, 1.0),
            wp(2.0, 2.0, 1.0),
            wp(3.0, 2.5, 1.0),
        ])
        .unwrap();
        let g = geodesic(&c, Point::ORIGIN, Point::new(4.0, 4.0)).unwrap();
        assert_eq!(g.value, 3.0);
        assert_eq!(g.points, vec![wp(1.5, 0.5, 1.0), wp(2.0, 2.0, 1.0), wp(3.0, 2.5, 1.0)]);
        let tree = GeodesicTree::new(&c, Point::ORIGIN, Point::new(4.0, 4.0)).unwrap();
        assert_eq!(tree.path_to(Point::new(4.0, 4.0)).unwrap(), g);
    }

    #[test]
    fn boundary_examples() {
        let cloud = WeightedPointCloud::new(vec![wp(1.0, 1.0, 1.0)], Window::new(-1.0, 3.0, 0.0, 3.0).unwrap(), 0).unwrap();
        let nu = AtomicMeasure::new(vec![Atom::new(0.0, 2.0)]).unwrap();
        let r = boundary_last_passage(&cloud, &nu, 2.0, 2.0).unwrap();
        assert_eq!(r, BoundaryPassage { value: 3.0, exit: 0.0, truncated: false });
        let r = exit_point(&cloud, &AtomicMeasure::empty(), 2.0, 2.0).unwrap();
        assert_eq!(r, BoundaryPassage { value: 1.0, exit: -1.0, truncated: true });
        assert!(boundary_last_passage(&cloud, &nu, 2.0, -1.0).is_err());
        assert!(boundary_last_passage(&cloud, &nu, -2.0, 1.0).is_err());
    }

    #[test]
    fn boundary_reduces_to_plain_passage() {
        let w = Window::new(-5.0, 5.0, 0.0, 5.0).unwrap();
        let cloud = crate::sample_cloud(w, 1.0, &crate::WeightDistribution::Exponential { mean: 1.0 }, 4).unwrap();
        for &(x, t) in &[(0.0, 1.0), (3.0, 4.5), (5.0, 5.0), (-4.0, 2.0)] {
            let r = boundary_last_passage(&cloud, &AtomicMeasure::empty(), x, t).unwrap();
            let l = last_passage_time(&cloud, Point::new(-5.0, 0.0), Point::new(x, t)).unwrap();
            assert_eq!(r.value, l);
        }
    }

    #[test]
    fn step_functions() {
        let c = three();
        let tree = GeodesicTree::new(&c, Point::ORIGIN, Point::new(4.0, 4.0)).unwrap();
        let h = tree.horizontal_profile(2.5, 4.0);
        assert_eq!(h.eval(0.5), 0.0);
        assert_eq!(h.eval(1.0), 2.0);
        assert_eq!(h.eval(2.0), 3.0);
        assert_eq!(h.jumps_in(0.0, 4.0), vec![(1.0, 2.0), (2.0, 1.0)]);
        let v = tree.vertical_profile(4.0, 4.0);
        assert_eq!(v.eval(1.0), 3.0);
        assert_eq!(v.eval(3.0), 4.5);
        let back = PassageToTarget::new(&c, 0.0, -1.0, Point::new(4.0, 4.0)).unwrap();
        assert_eq!(back.eval(0.0), 4.5);
        assert_eq!(back.eval(1.5), 4.5);
        assert_eq!(back.eval(2.0), 1.5);
        assert_eq!(back.eval(3.0), 0.0);
    }
}

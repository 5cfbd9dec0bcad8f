//! Finite-window Busemann functions.
//!
//! An α-ray is approximated by geodesics from far points
//! `z_k = anchor + R_k (cos α, sin α)` with `R_k = R0·factor^k`. Two
//! geodesics from the same far point form a tree, so they meet and then
//! separate; the most up-right shared point is the coalescence point `c` and
//! `B_α(x, y) = L(c, y) − L(c, x)`. A value is reported as stabilized once
//! the coalescence point agrees at two consecutive levels.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::error::{domain, param, window, Result};
use crate::last_passage::{GeodesicPath, GeodesicTree, PassageToTarget};
use crate::measure::{Atom, AtomicMeasure};
use crate::point_process::{Point, WeightedPointCloud};

/// Direction angle in the open interval `(π, 3π/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Angle {
    alpha: f64,
}

impl Angle {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > PI && alpha < PI + FRAC_PI_2) {
            return Err(domain(format!("angle {alpha} outside (π, 3π/2)")));
        }
        Ok(Angle { alpha })
    }

    /// The angle with the given `tan α > 0`.
    pub fn from_tan(tan: f64) -> Result<Self> {
        if !(tan > 0.0 && tan.is_finite()) {
            return Err(domain(format!("tan α must be positive, got {tan}")));
        }
        Angle::new(PI + tan.atan())
    }

    /// `5π/4`, the diagonal direction.
    pub fn diagonal() -> Self {
        Angle { alpha: 1.25 * PI }
    }

    pub fn value(&self) -> f64 {
        self.alpha
    }

    pub fn tan(&self) -> f64 {
        self.alpha.tan()
    }

    /// Equilibrium intensity `λ(α) = √tan α` of the classical model.
    pub fn lambda(&self) -> f64 {
        self.tan().sqrt()
    }

    /// Unit vector `(cos α, sin α)`; both components are negative.
    pub fn direction(&self) -> Point {
        Point::new(self.alpha.cos(), self.alpha.sin())
    }

    /// Image under the reflection `(x, t) -> (t, x)`: `5π/2 − α`.
    pub fn reflected(&self) -> Angle {
        Angle { alpha: 2.5 * PI - self.alpha }
    }
}

/// Far-point distances `R_k = r0·factor^k`, `k = 0..=k_max`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct RaySchedule {
    pub r0: f64,
    pub factor: f64,
    pub k_max: usize,
}

impl RaySchedule {
    pub fn new(r0: f64, factor: f64, k_max: usize) -> Result<Self> {
        let s = RaySchedule { r0, factor, k_max };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r0 > 0.0 && self.r0.is_finite()) {
            return Err(param(format!("schedule r0 must be positive, got {}", self.r0)));
        }
        if !(self.factor > 1.0 && self.factor.is_finite()) {
            return Err(param(format!("schedule factor must exceed 1, got {}", self.factor)));
        }
        if self.k_max < 2 {
            return Err(param(format!("schedule k_max must be at least 2, got {}", self.k_max)));
        }
        Ok(())
    }

    /// Default schedule for queries spread over a box of diagonal `diag`:
    /// `r0 = 4·max(diag, 1)`, factor 2, four doublings.
    pub fn for_diameter(diag: f64) -> Self {
        RaySchedule { r0: 4.0 * diag.max(1.0), factor: 2.0, k_max: 4 }
    }

    pub fn radius(&self, k: usize) -> f64 {
        self.r0 * self.factor.powi(k as i32)
    }

    /// Largest radius, which sets the required window size.
    pub fn reach(&self) -> f64 {
        self.radius(self.k_max)
    }
}

/// Estimate of `B_α(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BusemannEstimate {
    pub value: f64,
    pub coalescence: Option<Point>,
    pub stabilized: bool,
    /// Schedule level whose geodesics produced the value.
    pub k_used: usize,
}

/// Most up-right point common to both paths.
pub fn coalescence(a: &GeodesicPath, b: &GeodesicPath) -> Option<Point> {
    let (mut i, mut j) = (0, 0);
    let mut last = None;
    while i < a.points.len() && j < b.points.len() {
        let (p, q) = (&a.points[i], &b.points[j]);
        if p.x == q.x && p.t == q.t {
            last = Some(p.pos());
            i += 1;
            j += 1;
        } else if p.x < q.x {
            i += 1;
        } else {
            j += 1;
        }
    }
    last
}

/// Geodesics from the far points of one schedule to a fixed set of queries.
///
/// Levels are computed on demand and cached.
pub struct BusemannFrame<'a> {
    cloud: &'a WeightedPointCloud,
    alpha: Angle,
    sched: RaySchedule,
    anchor: Point,
    queries: Vec<Point>,
    upper: Point,
    levels: Vec<Option<Level<'a>>>,
}

struct Level<'a> {
    tree: GeodesicTree<'a>,
    paths: Vec<GeodesicPath>,
}

impl<'a> BusemannFrame<'a> {
    /// Far points are measured from `anchor`; each must lie strictly below
    /// every query in both coordinates and inside the cloud window.
    pub fn new(
        cloud: &'a WeightedPointCloud,
        alpha: Angle,
        sched: RaySchedule,
        anchor: Point,
        queries: Vec<Point>,
    ) -> Result<Self> {
        sched.validate()?;
        if queries.is_empty() {
            return Err(param("a Busemann frame needs at least one query"));
        }
        let mut upper = queries[0];
        let mut lower = queries[0];
        for q in &queries {
            upper = upper.max(q);
            lower = lower.min(q);
        }
        let w = cloud.window();
        for k in 0..=sched.k_max {
            let z = far_point(anchor, alpha, sched.radius(k));
            if !z.lt_all(&lower) {
                return Err(domain(format!(
                    "far point at level {k} does not lie below all queries; increase r0"
                )));
            }
            if !w.contains(z) {
                return Err(window(format!(
                    "far point ({:.3}, {:.3}) at level {k} lies outside the cloud window",
                    z.x, z.t
                )));
            }
        }
        if !w.contains(upper) {
            return Err(window("queries lie outside the cloud window"));
        }
        let levels = (0..=sched.k_max).map(|_| None).collect();
        Ok(BusemannFrame { cloud, alpha, sched, anchor, queries, upper, levels })
    }

    pub fn schedule(&self) -> &RaySchedule {
        &self.sched
    }

    pub fn far_point(&self, k: usize) -> Point {
        far_point(self.anchor, self.alpha, self.sched.radius(k))
    }

    fn level(&mut self, k: usize) -> &Level<'a> {
        if self.levels[k].is_none() {
            let z = self.far_point(k);
            let tree = GeodesicTree::new(self.cloud, z, self.upper).expect("far point lies below the queries");
            let paths = self.queries.iter().map(|&q| tree.path_to(q).expect("query inside tree box")).collect();
            self.levels[k] = Some(Level { tree, paths });
        }
        self.levels[k].as_ref().unwrap()
    }

    pub fn path(&mut self, k: usize, i: usize) -> &GeodesicPath {
        &self.level(k).paths[i]
    }

    pub fn tree(&mut self, k: usize) -> &GeodesicTree<'a> {
        &self.level(k).tree
    }

    pub fn coalescence_at(&mut self, k: usize, i: usize, j: usize) -> Option<Point> {
        let lvl = self.level(k);
        coalescence(&lvl.paths[i], &lvl.paths[j])
    }

    /// First level `k >= 1` where the coalescence point of queries `i`, `j`
    /// exists and equals the one at level `k − 1`.
    pub fn stable_level(&mut self, i: usize, j: usize) -> Option<usize> {
        let mut prev = self.coalescence_at(0, i, j);
        for k in 1..=self.sched.k_max {
            let cur = self.coalescence_at(k, i, j);
            if cur.is_some() && cur == prev {
                return Some(k);
            }
            prev = cur;
        }
        None
    }

    /// `L(c, q_j) − L(c, q_i)` at level `k`. Without a coalescence point the
    /// difference of passage times from the far point is returned instead.
    pub fn value_at(&mut self, k: usize, i: usize, j: usize) -> (f64, Option<Point>) {
        let lvl = self.level(k);
        let (a, b) = (&lvl.paths[i], &lvl.paths[j]);
        match coalescence(a, b) {
            Some(c) => {
                let va = a.weight_after(c).expect("c lies on both paths");
                let vb = b.weight_after(c).expect("c lies on both paths");
                (vb - va, Some(c))
            }
            None => (b.value - a.value, None),
        }
    }

    /// Busemann estimate for the pair of queries `(i, j)`.
    pub fn estimate(&mut self, i: usize, j: usize) -> BusemannEstimate {
        if self.queries[i] == self.queries[j] {
            return BusemannEstimate { value: 0.0, coalescence: Some(self.queries[i]), stabilized: true, k_used: 0 };
        }
        match self.stable_level(i, j) {
            Some(k) => {
                let (value, c) = self.value_at(k, i, j);
                BusemannEstimate { value, coalescence: c, stabilized: true, k_used: k }
            }
            None => {
                let k = self.sched.k_max;
                let (value, c) = self.value_at(k, i, j);
                BusemannEstimate { value, coalescence: c, stabilized: false, k_used: k }
            }
        }
    }
}

fn midpoint(a: Point, b: Point) -> Point {
    Point::new(0.5 * (a.x + b.x), 0.5 * (a.t + b.t))
}

fn far_point(anchor: Point, alpha: Angle, r: f64) -> Point {
    let d = alpha.direction();
    Point::new(anchor.x + r * d.x, anchor.t + r * d.t)
}

/// Approximate α-ray ending at `x`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RayApproximation {
    pub path: GeodesicPath,
    pub stabilized: bool,
    pub k_used: usize,
}

/// Geodesic from `z_{k*}` to `x`, where `k*` is the first level whose
/// geodesic agrees with the previous level's within distance `R_{k−1}/2` of
/// `x`.
pub fn approx_ray(cloud: &WeightedPointCloud, x: Point, alpha: Angle, sched: RaySchedule) -> Result<RayApproximation> {
    let mut frame = BusemannFrame::new(cloud, alpha, sched, x, vec![x])?;
    let near = |path: &GeodesicPath, radius: f64| -> Vec<Point> {
        path.points.iter().map(|p| p.pos()).filter(|p| p.dist(&x) <= radius).collect()
    };
    for k in 1..=sched.k_max {
        let radius = sched.radius(k - 1) / 2.0;
        let prev = near(frame.path(k - 1, 0), radius);
        let cur = near(frame.path(k, 0), radius);
        if prev == cur {
            return Ok(RayApproximation { path: frame.path(k, 0).clone(), stabilized: true, k_used: k });
        }
    }
    let k = sched.k_max;
    Ok(RayApproximation { path: frame.path(k, 0).clone(), stabilized: false, k_used: k })
}

/// `B_α(x, y)` on a finite cloud.
///
/// The far points are measured from the midpoint of `x` and `y`, so
/// `busemann_value(x, y) = −busemann_value(y, x)` exactly.
pub fn busemann_value(
    cloud: &WeightedPointCloud,
    x: Point,
    y: Point,
    alpha: Angle,
    sched: RaySchedule,
) -> Result<BusemannEstimate> {
    let mut frame = BusemannFrame::new(cloud, alpha, sched, midpoint(x, y), vec![x, y])?;
    Ok(frame.estimate(0, 1))
}

/// Busemann values on a triple evaluated at one common level, so that
/// additivity holds exactly for integer weights.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TripleEstimate {
    /// `B(a, b)`, `B(b, c)`, `B(a, c)`.
    pub ab: f64,
    pub bc: f64,
    pub ac: f64,
    pub stabilized: bool,
    pub k_used: usize,
}

pub fn busemann_triple(
    cloud: &WeightedPointCloud,
    a: Point,
    b: Point,
    c: Point,
    alpha: Angle,
    sched: RaySchedule,
) -> Result<TripleEstimate> {
    let anchor = Point::new((a.x + b.x + c.x) / 3.0, (a.t + b.t + c.t) / 3.0);
    let mut frame = BusemannFrame::new(cloud, alpha, sched, anchor, vec![a, b, c])?;
    let level = (0..=sched.k_max).position(|k| {
        k >= 1
            && [(0, 1), (1, 2), (0, 2)].iter().all(|&(i, j)| {
                let prev = frame.coalescence_at(k - 1, i, j);
                prev.is_some() && prev == frame.coalescence_at(k, i, j)
            })
    });
    let (k, stabilized) = match level {
        Some(k) => (k, true),
        None => (sched.k_max, false),
    };
    Ok(TripleEstimate {
        ab: frame.value_at(k, 0, 1).0,
        bc: frame.value_at(k, 1, 2).0,
        ac: frame.value_at(k, 0, 2).0,
        stabilized,
        k_used: k,
    })
}

/// A segment of a horizontal or vertical line.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, serde::Deserialize)]
pub enum LineSegment {
    /// `{(w, t) : a <= w <= b}`.
    Horizontal { t: f64, a: f64, b: f64 },
    /// `{(x, u) : a <= u <= b}`.
    Vertical { x: f64, a: f64, b: f64 },
}

impl LineSegment {
    fn ends(&self) -> (Point, Point) {
        match *self {
            LineSegment::Horizontal { t, a, b } => (Point::new(a, t), Point::new(b, t)),
            LineSegment::Vertical { x, a, b } => (Point::new(x, a), Point::new(x, b)),
        }
    }
}

/// Busemann measure on a line segment.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NuAlpha {
    /// Atoms at positions along the line (the `x` coordinate for horizontal
    /// segments, `t` for vertical ones) inside `(a, b]`.
    pub measure: AtomicMeasure,
    /// Per-cell stability flags when a resolution was requested, otherwise
    /// a single flag for the whole segment.
    pub cell_stable: Vec<bool>,
    pub k_used: usize,
}

impl NuAlpha {
    pub fn stabilized(&self) -> bool {
        self.cell_stable.iter().all(|&s| s)
    }
}

/// `ν_α((u, v]) = B_α(u, v)` for `u, v` on the segment.
///
/// Far points are measured from the segment midpoint. Values come from a
/// single geodesic tree at the level where the two
/// endpoints' coalescence point has stabilized. Every inner pair's
/// geodesics are squeezed between the endpoints' ones, so its stability is
/// inherited. With `resolution = Some(h)` the increments are aggregated over
/// cells `(a + jh, a + (j+1)h]` and placed at the right cell ends.
pub fn nu_alpha(
    cloud: &WeightedPointCloud,
    alpha: Angle,
    sched: RaySchedule,
    line: LineSegment,
    resolution: Option<f64>,
) -> Result<NuAlpha> {
    let (lo, hi) = line.ends();
    let (a, b) = match line {
        LineSegment::Horizontal { a, b, .. } | LineSegment::Vertical { a, b, .. } => (a, b),
    };
    if !(a <= b) {
        return Err(domain(format!("segment endpoints out of order: {a} > {b}")));
    }
    if let Some(h) = resolution {
        if !(h > 0.0) {
            return Err(param(format!("resolution must be positive, got {h}")));
        }
    }
    if a == b {
        return Ok(NuAlpha { measure: AtomicMeasure::empty(), cell_stable: vec![true], k_used: 0 });
    }
    let mut frame = BusemannFrame::new(cloud, alpha, sched, midpoint(lo, hi), vec![lo, hi])?;
    let (k, stable) = match frame.stable_level(0, 1) {
        Some(k) => (k, true),
        None => (sched.k_max, false),
    };
    let tree = frame.tree(k);
    let profile = match line {
        LineSegment::Horizontal { t, .. } => tree.horizontal_profile(t, b),
        LineSegment::Vertical { x, .. } => tree.vertical_profile(x, b),
    };
    let jumps = profile.jumps_in(a, b);
    let (atoms, cell_stable) = match resolution {
        None => (jumps.into_iter().map(|(p, m)| Atom::new(p, m)).collect(), vec![stable]),
        Some(h) => {
            let cells = ((b - a) / h).ceil().max(1.0) as usize;
            let mut atoms = Vec::new();
            for j in 0..cells {
                let l = a + j as f64 * h;
                let r = if j + 1 == cells { b } else { a + (j + 1) as f64 * h };
                let m = jumps.iter().filter(|(p, _)| *p > l && *p <= r).fold(0.0, |acc, (_, m)| acc + m);
                if m > 0.0 {
                    atoms.push(Atom::new(r, m));
                }
            }
            (atoms, vec![stable; cells])
        }
    };
    Ok(NuAlpha { measure: AtomicMeasure::new(atoms)?, cell_stable, k_used: k })
}

/// Result of the variational identity check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MarkovResidual {
    /// `B((0,s),(x,t)) − max_z [B((0,s),(z,s)) + L((z,s),(x,t))]`.
    pub residual: f64,
    /// Maximising grid point.
    pub argmax: f64,
    pub stabilized: bool,
    pub k_used: usize,
}

/// Checks `B_α((0,s),(x,t)) = max_{z <= x} [B_α((0,s),(z,s)) + L((z,s),(x,t))]`.
///
/// All Busemann values are taken from the geodesic tree of one level: the
/// level where the coalescence point of `(0,s)` and `(x,t)` stabilized. With
/// `grid = None` the candidates are the far point's `x` and the jump
/// positions of `z ↦ B_α((0,s),(z,s))` up to `x`, which always contain a
/// maximiser.
pub fn markov_check(
    cloud: &WeightedPointCloud,
    alpha: Angle,
    sched: RaySchedule,
    s: f64,
    t: f64,
    x: f64,
    grid: Option<&[f64]>,
) -> Result<MarkovResidual> {
    if !(s < t) {
        return Err(domain(format!("markov check needs s < t, got s={s}, t={t}")));
    }
    let o = Point::new(0.0, s);
    let target = Point::new(x, t);
    let anchor = midpoint(o, target);
    let mut frame = BusemannFrame::new(cloud, alpha, sched, anchor, vec![o, target])?;
    let (k, stabilized) = match frame.stable_level(0, 1) {
        Some(k) => (k, true),
        None => (sched.k_max, false),
    };
    let z_far = frame.far_point(k);
    let tree = frame.tree(k);
    let base = tree.value_to(o)?;
    let total = tree.value_to(target)? - base;
    let line = tree.horizontal_profile(s, x);
    let to_target = PassageToTarget::new(cloud, s, z_far.x, target)?;
    let atom_grid: Vec<f64>;
    let grid = match grid {
        Some(g) => g,
        None => {
            atom_grid = line.breakpoints().to_vec();
            &atom_grid
        }
    };
    let mut best = f64::NEG_INFINITY;
    let mut argmax = f64::NAN;
    for &z in grid {
        if z > x || z < z_far.x {
            continue;
        }
        let v = (line.eval(z) - base) + to_target.eval(z);
        if v > best {
            best = v;
            argmax = z;
        }
    }
    if !best.is_finite() {
        return Err(domain("markov check grid has no point in [far point, x]"));
    }
    Ok(MarkovResidual { residual: total - best, argmax, stabilized, k_used: k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point_process::{WeightedPoint, Window};

    fn wp(x: f64, t: f64, w: f64) -> WeightedPoint {
        WeightedPoint::new(x, t, w)
    }

    fn big_window() -> Window {
        Window::new(-200.0, 10.0, -200.0, 10.0).unwrap()
    }

    #[test]
    fn angles() {
        assert!(Angle::new(PI).is_err());
        assert!(Angle::new(1.5 * PI).is_err());
        let a = Angle::from_tan(4.0).unwrap();
        assert!((a.lambda() - 2.0).abs() < 1e-12);
        assert!((a.reflected().tan() - 0.25).abs() < 1e-12);
        let d = Angle::diagonal().direction();
        assert!(d.x < 0.0 && d.t < 0.0);
    }

    #[test]
    fn schedules() {
        assert!(RaySchedule::new(0.0, 2.0, 3).is_err());
        assert!(RaySchedule::new(1.0, 1.0, 3).is_err());
        assert!(RaySchedule::new(1.0, 2.0, 1).is_err());
        let s = RaySchedule::new(4.0, 2.0, 3).unwrap();
        assert_eq!(s.reach(), 32.0);
    }

    #[test]
    fn coalescence_of_shared_suffix() {
        let path = |pts: &[(f64, f64)]| GeodesicPath {
            start: Point::ORIGIN,
            end: Point::ORIGIN,
            points: pts.iter().map(|&(x, t)| wp(x, t, 1.0)).collect(),
            value: pts.len() as f64,
        };
        let a = path(&[(0.0, 1.0), (1.0, 2.0), (2.0, 3.0), (3.0, 4.0)]);
        let b = path(&[(0.5, 0.0), (1.0, 2.0), (2.0, 3.0), (4.0, 3.5)]);
        assert_eq!(coalescence(&a, &b), Some(Point::new(2.0, 3.0)));
        assert_eq!(coalescence(&a, &a), Some(Point::new(3.0, 4.0)));
        let c = path(&[(5.0, 5.0)]);
        assert_eq!(coalescence(&a, &c), None);
    }

    #[test]
    fn empty_cloud_ray() {
        let cloud = WeightedPointCloud::empty(big_window()).unwrap();
        let r = approx_ray(&cloud, Point::ORIGIN, Angle::diagonal(), RaySchedule::for_diameter(1.0)).unwrap();
        assert!(r.stabilized);
        assert!(r.path.is_empty());
        assert_eq!(r.path.value, 0.0);
    }

    #[test]
    fn single_point_ray() {
        let cloud = WeightedPointCloud::new(vec![wp(-1.0, -1.0, 1.0)], big_window(), 0).unwrap();
        let r = approx_ray(&cloud, Point::ORIGIN, Angle::diagonal(), RaySchedule::for_diameter(1.0)).unwrap();
        assert!(r.stabilized);
        assert_eq!(r.k_used, 1);
        assert_eq!(r.path.points, vec![wp(-1.0, -1.0, 1.0)]);
    }

    #[test]
    fn window_errors() {
        let cloud = WeightedPointCloud::empty(Window::new(-5.0, 5.0, -5.0, 5.0).unwrap()).unwrap();
        let r = busemann_value(&cloud, Point::ORIGIN, Point::new(1.0, 0.0), Angle::diagonal(), RaySchedule::for_diameter(1.0));
        assert!(matches!(r, Err(crate::Error::Window(_))));
    }

    #[test]
    fn identical_points() {
        let cloud = WeightedPointCloud::empty(big_window()).unwrap();
        let e = busemann_value(&cloud, Point::new(1.0, 1.0), Point::new(1.0, 1.0), Angle::diagonal(), RaySchedule::for_diameter(1.0)).unwrap();
        assert_eq!(e.value, 0.0);
        assert!(e.stabilized);
    }

    #[test]
    fn hand_built_busemann() {
        // Both queries are reached through (-1,-1); after it the path to
        // (1,1) picks up (0.5,0.5).
        let cloud = WeightedPointCloud::new(vec![wp(-1.0, -1.0, 1.0), wp(0.5, 0.5, 2.0)], big_window(), 0).unwrap();
        let x = Point::new(0.0, 0.0);
        let y = Point::new(1.0, 1.0);
        let e = busemann_value(&cloud, x, y, Angle::diagonal(), RaySchedule::for_diameter(2.0)).unwrap();
        assert_eq!(e.coalescence, Some(Point::new(-1.0, -1.0)));
        assert_eq!(e.value, 2.0);
        assert!(e.stabilized);
        let r = busemann_value(&cloud, y, x, Angle::diagonal(), RaySchedule::for_diameter(2.0)).unwrap();
        assert_eq!(r.value, -2.0);
    }

    #[test]
    fn zero_length_segment() {
        let cloud = WeightedPointCloud::empty(big_window()).unwrap();
        let nu = nu_alpha(&cloud, Angle::diagonal(), RaySchedule::for_diameter(1.0), LineSegment::Horizontal { t: 0.0, a: 1.0, b: 1.0 }, None).unwrap();
        assert!(nu.measure.is_empty());
    }

    #[test]
    fn markov_on_empty_cloud() {
        let cloud = WeightedPointCloud::empty(big_window()).unwrap();
        let m = markov_check(&cloud, Angle::diagonal(), RaySchedule::for_diameter(2.0), 0.0, 1.0, 1.0, None).unwrap();
        assert_eq!(m.residual, 0.0);
    }
}

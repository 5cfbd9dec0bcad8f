//! Compound Poisson point clouds: positions from a homogeneous planar
//! Poisson process, weights i.i.d. from a [`WeightDistribution`].

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::error::{domain, format_err, io_err, param, Error, Result};
use crate::rng::{derive_seed, rng_from_seed, SimRng};

/// A location in space-time. `x` is space, `t` is time.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub t: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, t: 0.0 };

    pub const fn new(x: f64, t: f64) -> Self {
        Point { x, t }
    }

    /// Coordinatewise `self <= other`.
    pub fn le_all(&self, other: &Point) -> bool {
        self.x <= other.x && self.t <= other.t
    }

    /// Coordinatewise strict `self < other`.
    pub fn lt_all(&self, other: &Point) -> bool {
        self.x < other.x && self.t < other.t
    }

    pub fn min(&self, other: &Point) -> Point {
        Point::new(self.x.min(other.x), self.t.min(other.t))
    }

    pub fn max(&self, other: &Point) -> Point {
        Point::new(self.x.max(other.x), self.t.max(other.t))
    }

    pub fn dist(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.t - other.t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedPoint {
    pub x: f64,
    pub t: f64,
    pub w: f64,
}

impl WeightedPoint {
    pub const fn new(x: f64, t: f64, w: f64) -> Self {
        WeightedPoint { x, t, w }
    }

    pub fn pos(&self) -> Point {
        Point::new(self.x, self.t)
    }
}

/// Closed rectangle `[x_min, x_max] × [t_min, t_max]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub x_min: f64,
    pub x_max: f64,
    pub t_min: f64,
    pub t_max: f64,
}

impl Window {
    pub fn new(x_min: f64, x_max: f64, t_min: f64, t_max: f64) -> Result<Self> {
        let w = Window { x_min, x_max, t_min, t_max };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.x_min, self.x_max, self.t_min, self.t_max]
            .iter()
            .all(|v| v.is_finite());
        if !finite || self.x_min >= self.x_max || self.t_min >= self.t_max {
            return Err(param(format!("degenerate window {self:?}")));
        }
        Ok(())
    }

    pub fn area(&self) -> f64 {
        (self.x_max - self.x_min) * (self.t_max - self.t_min)
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.x_min && p.x <= self.x_max && p.t >= self.t_min && p.t <= self.t_max
    }

    /// Smallest window holding both `self` and `p`.
    pub fn expand_to(&self, p: Point) -> Window {
        Window {
            x_min: self.x_min.min(p.x),
            x_max: self.x_max.max(p.x),
            t_min: self.t_min.min(p.t),
            t_max: self.t_max.max(p.t),
        }
    }
}

/// Law of the point weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightDistribution {
    /// Every weight equals 1 (the classical Hammersley model).
    Delta1,
    Exponential { mean: f64 },
    /// Quantile table `q_0 <= ... <= q_m` read at the uniform grid `i/m`
    /// and interpolated linearly.
    InverseCdf { table: Vec<f64> },
}

impl WeightDistribution {
    pub fn validate(&self) -> Result<()> {
        match self {
            WeightDistribution::Delta1 => Ok(()),
            WeightDistribution::Exponential { mean } => {
                if mean.is_finite() && *mean > 0.0 {
                    Ok(())
                } else {
                    Err(param(format!("exponential mean must be positive, got {mean}")))
                }
            }
            WeightDistribution::InverseCdf { table } => {
                if table.len() < 2 {
                    return Err(param("inverse-cdf table needs at least two entries"));
                }
                if table.iter().any(|q| !q.is_finite() || *q < 0.0) {
                    return Err(param("inverse-cdf table entries must be finite and non-negative"));
                }
                if table.windows(2).any(|p| p[1] < p[0]) {
                    return Err(param("inverse-cdf table must be non-decreasing"));
                }
                if *table.last().unwrap() <= 0.0 {
                    return Err(param("inverse-cdf table must have positive mass"));
                }
                Ok(())
            }
        }
    }

    pub fn is_delta1(&self) -> bool {
        matches!(self, WeightDistribution::Delta1)
    }

    pub fn mean(&self) -> f64 {
        match self {
            WeightDistribution::Delta1 => 1.0,
            WeightDistribution::Exponential { mean } => *mean,
            WeightDistribution::InverseCdf { table } => {
                let m = (table.len() - 1) as f64;
                table.windows(2).map(|p| 0.5 * (p[0] + p[1])).sum::<f64>() / m
            }
        }
    }

    /// One draw; may be zero for tables starting at 0.
    pub fn sample_raw(&self, rng: &mut SimRng) -> f64 {
        match self {
            WeightDistribution::Delta1 => 1.0,
            WeightDistribution::Exponential { mean } => {
                let u: f64 = 1.0 - rng.random::<f64>();
                -mean * u.ln()
            }
            WeightDistribution::InverseCdf { table } => {
                let u: f64 = rng.random::<f64>();
                let m = (table.len() - 1) as f64;
                let s = u * m;
                let i = (s.floor() as usize).min(table.len() - 2);
                let f = s - i as f64;
                table[i] + f * (table[i + 1] - table[i])
            }
        }
    }

    /// One strictly positive draw (zero draws are redrawn).
    pub fn sample_positive(&self, rng: &mut SimRng) -> f64 {
        loop {
            let w = self.sample_raw(rng);
            if w > 0.0 {
                return w;
            }
        }
    }
}

impl FromStr for WeightDistribution {
    type Err = Error;

    /// Accepts `delta1`, `exponential`, `exponential:<mean>` or
    /// `table:<q0>,<q1>,...`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let dist = if s == "delta1" || s == "classical" {
            WeightDistribution::Delta1
        } else if s == "exponential" || s == "exp" {
            WeightDistribution::Exponential { mean: 1.0 }
        } else if let Some(rest) = s.strip_prefix("exponential:").or_else(|| s.strip_prefix("exp:")) {
            let mean = rest
                .parse::<f64>()
                .map_err(|_| param(format!("bad exponential mean {rest:?}")))?;
            WeightDistribution::Exponential { mean }
        } else if let Some(rest) = s.strip_prefix("table:") {
            let table = rest
                .split(',')
                .map(|v| v.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| param(format!("bad quantile table {rest:?}")))?;
            WeightDistribution::InverseCdf { table }
        } else {
            return Err(param(format!("unknown weight distribution {s:?}")));
        };
        dist.validate()?;
        Ok(dist)
    }
}

/// Immutable weighted point set.
///
/// Points are sorted by `x`, all `x` values are distinct and so are all `t`
/// values. Weights are strictly positive.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedPointCloud {
    points: Vec<WeightedPoint>,
    seed: u64,
    window: Window,
}

impl WeightedPointCloud {
    /// Builds a cloud from explicit points, checking every invariant.
    pub fn new(mut points: Vec<WeightedPoint>, window: Window, seed: u64) -> Result<Self> {
        window.validate()?;
        for p in &points {
            if !(p.x.is_finite() && p.t.is_finite() && p.w.is_finite()) {
                return Err(domain(format!("non-finite point {p:?}")));
            }
            if p.w <= 0.0 {
                return Err(domain(format!("non-positive weight at ({}, {})", p.x, p.t)));
            }
            if !window.contains(p.pos()) {
                return Err(domain(format!("point ({}, {}) outside window", p.x, p.t)));
            }
        }
        points.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.t.total_cmp(&b.t)));
        if points.windows(2).any(|p| p[0].x == p[1].x) {
            return Err(domain("two points share an x-coordinate"));
        }
        let mut ts: Vec<f64> = points.iter().map(|p| p.t).collect();
        ts.sort_by(f64::total_cmp);
        if ts.windows(2).any(|p| p[0] == p[1]) {
            return Err(domain("two points share a t-coordinate"));
        }
        Ok(WeightedPointCloud { points, seed, window })
    }

    /// Cloud whose window is the bounding box of the points, padded by one
    /// unit on every side. Convenient for hand-built examples.
    pub fn from_points(points: Vec<WeightedPoint>) -> Result<Self> {
        let mut w = Window { x_min: -1.0, x_max: 1.0, t_min: -1.0, t_max: 1.0 };
        for p in &points {
            w = w.expand_to(Point::new(p.x - 1.0, p.t - 1.0));
            w = w.expand_to(Point::new(p.x + 1.0, p.t + 1.0));
        }
        Self::new(points, w, 0)
    }

    pub fn empty(window: Window) -> Result<Self> {
        Self::new(Vec::new(), window, 0)
    }

    pub fn points(&self) -> &[WeightedPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    /// Index range of points with `lo < x <= hi`.
    pub fn x_range(&self, lo: f64, hi: f64) -> std::ops::Range<usize> {
        let a = self.points.partition_point(|p| p.x <= lo);
        let b = self.points.partition_point(|p| p.x <= hi);
        a..b.max(a)
    }

    /// Indices of points in the box `lo < p <= hi`, in `x` order.
    pub fn box_indices(&self, lo: Point, hi: Point) -> Vec<usize> {
        self.x_range(lo.x, hi.x)
            .filter(|&i| {
                let t = self.points[i].t;
                t > lo.t && t <= hi.t
            })
            .collect()
    }

    /// Image of the cloud under the reflection `(x, t) -> (t, x)`.
    pub fn reflected(&self) -> WeightedPointCloud {
        let w = self.window;
        let points = self.points.iter().map(|p| WeightedPoint::new(p.t, p.x, p.w)).collect();
        Self::new(points, Window { x_min: w.t_min, x_max: w.t_max, t_min: w.x_min, t_max: w.x_max }, self.seed)
            .expect("reflection preserves the invariants")
    }

    /// Image under `(x, t) -> (a·x + b, c·t + d)` with `a, c > 0`.
    pub fn affine(&self, a: f64, b: f64, c: f64, d: f64) -> Result<WeightedPointCloud> {
        if !(a > 0.0 && c > 0.0) {
            return Err(param("affine map must preserve orientation"));
        }
        let w = self.window;
        let points = self.points.iter().map(|p| WeightedPoint::new(a * p.x + b, c * p.t + d, p.w)).collect();
        let window = Window::new(a * w.x_min + b, a * w.x_max + b, c * w.t_min + d, c * w.t_max + d)?;
        Self::new(points, window, self.seed)
    }

    /// Writes the cloud as CSV (`x,t,w`), preceded by `# seed=` and
    /// `# window=` comment lines so that [`load_cloud`] restores it exactly.
    pub fn to_csv_string(&self) -> String {
        let w = &self.window;
        let mut out = String::with_capacity(32 * (self.points.len() + 3));
        let _ = writeln!(out, "# seed={}", self.seed);
        let _ = writeln!(out, "# window={},{},{},{}", w.x_min, w.x_max, w.t_min, w.t_max);
        out.push_str("x,t,w\n");
        for p in &self.points {
            let _ = writeln!(out, "{},{},{}", p.x, p.t, p.w);
        }
        out
    }

    pub fn from_csv_str(text: &str, path: &Path) -> Result<Self> {
        let mut seed = 0u64;
        let mut window: Option<Window> = None;
        let mut header_seen = false;
        let mut points = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            let at = |msg: String| format_err(path, format!("line {}: {msg}", lineno + 1));
            if let Some(comment) = line.strip_prefix('#') {
                let comment = comment.trim();
                if let Some(v) = comment.strip_prefix("seed=") {
                    seed = v.trim().parse().map_err(|_| at(format!("bad seed {v:?}")))?;
                } else if let Some(v) = comment.strip_prefix("window=") {
                    let vals = parse_floats(v).ok_or_else(|| at(format!("bad window {v:?}")))?;
                    if vals.len() != 4 {
                        return Err(at("window needs four values".into()));
                    }
                    let w = Window::new(vals[0], vals[1], vals[2], vals[3])
                        .map_err(|e| at(e.to_string()))?;
                    window = Some(w);
                }
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            if !header_seen {
                if line.split(',').map(str::trim).collect::<Vec<_>>() != ["x", "t", "w"] {
                    return Err(at(format!("expected header x,t,w, found {line:?}")));
                }
                header_seen = true;
                continue;
            }
            let vals = parse_floats(line).ok_or_else(|| at(format!("malformed row {line:?}")))?;
            if vals.len() != 3 {
                return Err(at(format!("expected 3 columns, found {}", vals.len())));
            }
            if !(vals[2] > 0.0) {
                return Err(at(format!("non-positive weight {}", vals[2])));
            }
            points.push(WeightedPoint::new(vals[0], vals[1], vals[2]));
        }
        if !header_seen {
            return Err(format_err(path, "missing header x,t,w"));
        }
        let window = match window {
            Some(w) => w,
            None => bounding_window(&points),
        };
        WeightedPointCloud::new(points, window, seed).map_err(|e| format_err(path, e.to_string()))
    }
}

fn parse_floats(s: &str) -> Option<Vec<f64>> {
    s.split(',').map(|v| v.trim().parse::<f64>().ok()).collect()
}

fn bounding_window(points: &[WeightedPoint]) -> Window {
    let Some(first) = points.first() else {
        return Window { x_min: 0.0, x_max: 1.0, t_min: 0.0, t_max: 1.0 };
    };
    let mut w = Window { x_min: first.x, x_max: first.x, t_min: first.t, t_max: first.t };
    for p in points {
        w = w.expand_to(p.pos());
    }
    // A single point or a line of points gives a degenerate box.
    if w.x_min == w.x_max {
        w.x_max = w.x_min + 1.0;
    }
    if w.t_min == w.t_max {
        w.t_max = w.t_min + 1.0;
    }
    w
}

/// Samples a compound Poisson cloud on `window`.
///
/// The count is Poisson(`intensity · area`), positions are uniform on the
/// half-open box `(x_min, x_max] × (t_min, t_max]` and weights are drawn from
/// `dist` (zero draws are redrawn). Colliding coordinates are redrawn, so
/// the result always satisfies the cloud invariants. The output is a pure
/// function of the arguments.
pub fn sample_cloud(
    window: Window,
    intensity: f64,
    dist: &WeightDistribution,
    seed: u64,
) -> Result<WeightedPointCloud> {
    window.validate()?;
    dist.validate()?;
    if !(intensity.is_finite() && intensity > 0.0) {
        return Err(param(format!("intensity must be positive, got {intensity}")));
    }
    let mut rng = rng_from_seed(seed);
    let mean = intensity * window.area();
    let n = if mean > 0.0 {
        let pois = Poisson::new(mean).map_err(|e| param(format!("poisson mean {mean}: {e}")))?;
        pois.sample(&mut rng) as usize
    } else {
        0
    };
    let xs = distinct_uniform(&mut rng, n, window.x_min, window.x_max);
    let ts = distinct_uniform(&mut rng, n, window.t_min, window.t_max);
    // Weights come from their own stream so that swapping the weight law
    // keeps the positions.
    let mut wrng = rng_from_seed(derive_seed(seed, 0x5745_4947_4854));
    let points = xs
        .into_iter()
        .zip(ts)
        .map(|(x, t)| WeightedPoint::new(x, t, dist.sample_positive(&mut wrng)))
        .collect();
    WeightedPointCloud::new(points, window, seed)
}

fn uniform_in(rng: &mut SimRng, lo: f64, hi: f64) -> f64 {
    let u = 1.0 - rng.random::<f64>();
    let v = lo + u * (hi - lo);
    // Rounding can land on `lo`; the box is open there.
    if v <= lo { hi } else { v.min(hi) }
}

fn distinct_uniform(rng: &mut SimRng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    let mut vals: Vec<f64> = (0..n).map(|_| uniform_in(rng, lo, hi)).collect();
    loop {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]).then(a.cmp(&b)));
        let mut clash = false;
        for w in order.windows(2) {
            if vals[w[0]] == vals[w[1]] {
                vals[w[1]] = uniform_in(rng, lo, hi);
                clash = true;
            }
        }
        if !clash {
            return vals;
        }
    }
}

pub fn load_cloud(path: impl AsRef<Path>) -> Result<WeightedPointCloud> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    WeightedPointCloud::from_csv_str(&text, path)
}

pub fn save_cloud(cloud: &WeightedPointCloud, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, cloud.to_csv_string()).map_err(|e| io_err(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_window() -> Window {
        Window::new(0.0, 1.0, 0.0, 1.0).unwrap()
    }

    #[test]
    fn degenerate_windows_are_rejected() {
        assert!(Window::new(0.0, 0.0, 0.0, 1.0).is_err());
        assert!(Window::new(0.0, 1.0, 2.0, 1.0).is_err());
        assert!(Window::new(f64::NAN, 1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn bad_distributions_are_rejected() {
        assert!(WeightDistribution::Exponential { mean: 0.0 }.validate().is_err());
        assert!(WeightDistribution::InverseCdf { table: vec![1.0, 0.5] }.validate().is_err());
        assert!(WeightDistribution::InverseCdf { table: vec![-1.0, 0.5] }.validate().is_err());
        assert!(sample_cloud(unit_window(), 0.0, &WeightDistribution::Delta1, 1).is_err());
    }

    #[test]
    fn points_stay_inside_the_window() {
        for seed in 0..50 {
            let c = sample_cloud(unit_window(), 1.0, &WeightDistribution::Delta1, seed).unwrap();
            assert!(c.points().iter().all(|p| unit_window().contains(p.pos())));
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let w = Window::new(-3.0, 5.0, 0.0, 4.0).unwrap();
        let d = WeightDistribution::Exponential { mean: 2.0 };
        assert_eq!(sample_cloud(w, 1.5, &d, 99).unwrap(), sample_cloud(w, 1.5, &d, 99).unwrap());
        assert_ne!(sample_cloud(w, 1.5, &d, 99).unwrap(), sample_cloud(w, 1.5, &d, 100).unwrap());
    }

    #[test]
    fn weight_law_does_not_move_points() {
        let w = Window::new(0.0, 10.0, 0.0, 10.0).unwrap();
        let a = sample_cloud(w, 1.0, &WeightDistribution::Delta1, 5).unwrap();
        let b = sample_cloud(w, 1.0, &WeightDistribution::Exponential { mean: 1.0 }, 5).unwrap();
        let pos = |c: &WeightedPointCloud| c.points().iter().map(|p| p.pos()).collect::<Vec<_>>();
        assert_eq!(pos(&a), pos(&b));
    }

    #[test]
    fn inverse_cdf_interpolates() {
        let d = WeightDistribution::InverseCdf { table: vec![1.0, 3.0] };
        assert_eq!(d.mean(), 2.0);
        let mut rng = rng_from_seed(3);
        for _ in 0..1000 {
            let w = d.sample_raw(&mut rng);
            assert!((1.0..=3.0).contains(&w));
        }
    }

    #[test]
    fn parse_distribution_strings() {
        assert_eq!("delta1".parse::<WeightDistribution>().unwrap(), WeightDistribution::Delta1);
        assert_eq!(
            "exponential:2.5".parse::<WeightDistribution>().unwrap(),
            WeightDistribution::Exponential { mean: 2.5 }
        );
        assert_eq!(
            "table:0,1,4".parse::<WeightDistribution>().unwrap(),
            WeightDistribution::InverseCdf { table: vec![0.0, 1.0, 4.0] }
        );
        assert!("gamma".parse::<WeightDistribution>().is_err());
        assert!("exponential:-1".parse::<WeightDistribution>().is_err());
    }

    #[test]
    fn box_indices_respect_open_closed_edges() {
        let c = WeightedPointCloud::from_points(vec![
            WeightedPoint::new(1.0, 1.0, 1.0),
            WeightedPoint::new(2.0, 2.0, 1.0),
            WeightedPoint::new(3.0, 0.5, 1.0),
        ])
        .unwrap();
        assert_eq!(c.box_indices(Point::new(1.0, 0.0), Point::new(3.0, 2.0)), vec![1, 2]);
        assert_eq!(c.box_indices(Point::new(0.0, 1.0), Point::new(3.0, 2.0)), vec![1]);
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let w = Window::new(-2.5, 7.0, 0.0, 3.0).unwrap();
        let c = sample_cloud(w, 2.0, &WeightDistribution::Exponential { mean: 0.7 }, 11).unwrap();
        let back = WeightedPointCloud::from_csv_str(&c.to_csv_string(), Path::new("mem")).unwrap();
        assert_eq!(c, back);
    }

    #[test]
    fn csv_rejects_bad_input() {
        let p = Path::new("mem");
        assert!(WeightedPointCloud::from_csv_str("x,t,w\n1,2,0\n", p).is_err());
        assert!(WeightedPointCloud::from_csv_str("x,t,w\n1,2,1\n1,3,1\n", p).is_err());
        assert!(WeightedPointCloud::from_csv_str("x,t,w\n1,2,1\n2,2,1\n", p).is_err());
        assert!(WeightedPointCloud::from_csv_str("x,t,w\n1,2\n", p).is_err());
        assert!(WeightedPointCloud::from_csv_str("x,t,w\n1,a,1\n", p).is_err());
        assert!(WeightedPointCloud::from_csv_str("a,b,c\n1,2,1\n", p).is_err());
        let ok = WeightedPointCloud::from_csv_str("x,t,w\n1,2,1\n2,3,1.5\n", p).unwrap();
        assert_eq!(ok.len(), 2);
    }
}

//! Lattice last-passage percolation on `ℤ²` with i.i.d. non-negative
//! weights. With exponential weights this is the TASEP growth model.
//!
//! Paths are up-right nearest-neighbour paths and include both endpoints.
//! Ties between the two DP branches go to the step from below.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::busemann::{Angle, BusemannEstimate, RaySchedule};
use crate::error::{domain, format_err, io_err, param, window, Result};
use crate::point_process::WeightDistribution;
use crate::rng::rng_from_seed;

pub type Site = (i64, i64);

/// Rectangular block of weights with lower-left corner `origin`. Row `r`
/// holds time `origin.1 + r`.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeField {
    width: usize,
    height: usize,
    origin: Site,
    weights: Vec<f64>,
    seed: u64,
    dist: WeightDistribution,
}

impl LatticeField {
    /// Row-major weights (`weights[r * width + c]`).
    pub fn new(width: usize, height: usize, origin: Site, weights: Vec<f64>) -> Result<Self> {
        Self::with_meta(width, height, origin, weights, 0, WeightDistribution::Delta1)
    }

    fn with_meta(
        width: usize,
        height: usize,
        origin: Site,
        weights: Vec<f64>,
        seed: u64,
        dist: WeightDistribution,
    ) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(param("lattice field needs positive dimensions"));
        }
        if weights.len() != width * height {
            return Err(param(format!("expected {} weights, got {}", width * height, weights.len())));
        }
        if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(param("lattice weights must be finite and non-negative"));
        }
        Ok(LatticeField { width, height, origin, weights, seed, dist })
    }

    /// `rows[r][c]` is the weight at `(origin.0 + c, origin.1 + r)`.
    pub fn from_rows(rows: &[Vec<f64>], origin: Site) -> Result<Self> {
        let width = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != width) {
            return Err(param("ragged lattice rows"));
        }
        Self::new(width, rows.len(), origin, rows.concat())
    }

    pub fn sample(width: usize, height: usize, origin: Site, dist: &WeightDistribution, seed: u64) -> Result<Self> {
        dist.validate()?;
        let mut rng = rng_from_seed(seed);
        let weights = (0..width * height).map(|_| dist.sample_raw(&mut rng)).collect();
        Self::with_meta(width, height, origin, weights, seed, dist.clone())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn origin(&self) -> Site {
        self.origin
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn dist(&self) -> &WeightDistribution {
        &self.dist
    }

    pub fn contains(&self, p: Site) -> bool {
        let (c, r) = (p.0 - self.origin.0, p.1 - self.origin.1);
        c >= 0 && r >= 0 && (c as usize) < self.width && (r as usize) < self.height
    }

    /// Weight at a site; panics outside the field.
    pub fn weight(&self, p: Site) -> f64 {
        assert!(self.contains(p), "site {p:?} outside the field");
        let (c, r) = ((p.0 - self.origin.0) as usize, (p.1 - self.origin.1) as usize);
        self.weights[r * self.width + c]
    }

    fn check(&self, p: Site) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(domain(format!("site {p:?} outside the field")))
        }
    }

    /// CSV dump: `# width=`, `# height=`, `# origin=`, `# seed=`, `# dist=`
    /// header lines, then one comma-separated row of weights per time.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# width={}", self.width);
        let _ = writeln!(out, "# height={}", self.height);
        let _ = writeln!(out, "# origin={},{}", self.origin.0, self.origin.1);
        let _ = writeln!(out, "# seed={}", self.seed);
        let _ = writeln!(out, "# dist={}", serde_json::to_string(&self.dist).expect("dist serializes"));
        for row in self.weights.chunks(self.width) {
            let cells: Vec<String> = row.iter().map(|w| w.to_string()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv_str(text: &str, path: &Path) -> Result<Self> {
        let (mut width, mut height, mut origin, mut seed) = (None, None, (0, 0), 0u64);
        let mut dist = WeightDistribution::Delta1;
        let mut weights = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let at = |msg: String| format_err(path, format!("line {}: {msg}", lineno + 1));
            if let Some(c) = line.strip_prefix('#') {
                let c = c.trim();
                if let Some((k, v)) = c.split_once('=') {
                    match k.trim() {
                        "width" => width = Some(v.trim().parse::<usize>().map_err(|_| at(format!("bad width {v:?}")))?),
                        "height" => height = Some(v.trim().parse::<usize>().map_err(|_| at(format!("bad height {v:?}")))?),
                        "seed" => seed = v.trim().parse().map_err(|_| at(format!("bad seed {v:?}")))?,
                        "origin" => {
                            let (a, b) = v.split_once(',').ok_or_else(|| at(format!("bad origin {v:?}")))?;
                            origin = (
                                a.trim().parse().map_err(|_| at(format!("bad origin {v:?}")))?,
                                b.trim().parse().map_err(|_| at(format!("bad origin {v:?}")))?,
                            );
                        }
                        "dist" => dist = serde_json::from_str(v.trim()).map_err(|e| at(format!("bad dist: {e}")))?,
                        _ => {}
                    }
                }
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            for cell in line.split(',') {
                weights.push(cell.trim().parse::<f64>().map_err(|_| at(format!("bad weight {cell:?}")))?);
            }
        }
        let width = width.ok_or_else(|| format_err(path, "missing width header"))?;
        let height = height.ok_or_else(|| format_err(path, "missing height header"))?;
        Self::with_meta(width, height, origin, weights, seed, dist).map_err(|e| format_err(path, e.to_string()))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_csv_string()).map_err(|e| io_err(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
        Self::from_csv_str(&text, path)
    }
}

/// DP over the box `[p, q]`, row-major relative to `p`. `from_below[k]`
/// records which predecessor the lowest geodesic uses.
struct BoxDp {
    p: Site,
    w: usize,
    value: Vec<f64>,
    from_below: Vec<bool>,
}

impl BoxDp {
    fn new(field: &LatticeField, p: Site, q: Site) -> Self {
        let w = (q.0 - p.0 + 1) as usize;
        let h = (q.1 - p.1 + 1) as usize;
        let mut value = vec![0.0; w * h];
        let mut from_below = vec![false; w * h];
        for r in 0..h {
            for c in 0..w {
                let omega = field.weight((p.0 + c as i64, p.1 + r as i64));
                let k = r * w + c;
                let (best, below) = match (c > 0, r > 0) {
                    (false, false) => (0.0, false),
                    (true, false) => (value[k - 1], false),
                    (false, true) => (value[k - w], true),
                    (true, true) => {
                        let (left, down) = (value[k - 1], value[k - w]);
                        if down >= left { (down, true) } else { (left, false) }
                    }
                };
                value[k] = omega + best;
                from_below[k] = below;
            }
        }
        BoxDp { p, w, value, from_below }
    }

    fn at(&self, q: Site) -> f64 {
        self.value[self.idx(q)]
    }

    fn idx(&self, q: Site) -> usize {
        (q.1 - self.p.1) as usize * self.w + (q.0 - self.p.0) as usize
    }

    /// Sites of the geodesic from `p` to `q`, in path order.
    fn path(&self, q: Site) -> Vec<Site> {
        let mut out = vec![q];
        let mut cur = q;
        while cur != self.p {
            cur = if self.from_below[self.idx(cur)] { (cur.0, cur.1 - 1) } else { (cur.0 - 1, cur.1) };
            out.push(cur);
        }
        out.reverse();
        out
    }
}

/// `L(p, q)` with both endpoint weights included.
pub fn lattice_last_passage(field: &LatticeField, p: Site, q: Site) -> Result<f64> {
    field.check(p)?;
    field.check(q)?;
    if !(p.0 <= q.0 && p.1 <= q.1) {
        return Err(domain(format!("need p <= q, got {p:?} and {q:?}")));
    }
    Ok(BoxDp::new(field, p, q).at(q))
}

/// Lowest geodesic from `p` to `q`.
pub fn lattice_geodesic(field: &LatticeField, p: Site, q: Site) -> Result<Vec<Site>> {
    lattice_last_passage(field, p, q)?;
    Ok(BoxDp::new(field, p, q).path(q))
}

/// Equilibrium density `ρ(α) = √|cos α| / (√|cos α| + √|sin α|)`, which
/// equals `1/(1 + √tan α)`.
pub fn rho(alpha: Angle) -> f64 {
    let c = alpha.value().cos().abs().sqrt();
    let s = alpha.value().sin().abs().sqrt();
    c / (c + s)
}

/// `(1 + √tan α)² − (1/ρ + tan α/(1 − ρ))`.
pub fn rho_identity_residual(alpha: Angle) -> f64 {
    let r = rho(alpha);
    let tan = alpha.tan();
    (1.0 + tan.sqrt()).powi(2) - (1.0 / r + tan / (1.0 - r))
}

/// Non-decreasing boundary function on consecutive lattice sites.
///
/// `increments[i]` is `ν(start + i) − ν(start + i − 1)`; the value at
/// `start` is zero and `increments[0]` is unused (kept as 0).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundaryProfile {
    pub start: i64,
    pub increments: Vec<f64>,
}

impl BoundaryProfile {
    pub fn new(start: i64, increments: Vec<f64>) -> Result<Self> {
        if increments.is_empty() {
            return Err(param("boundary profile needs at least one site"));
        }
        if increments.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(param("boundary increments must be finite and non-negative"));
        }
        Ok(BoundaryProfile { start, increments })
    }

    /// I.i.d. exponential increments with the given rate.
    pub fn exponential(start: i64, len: usize, rate: f64, seed: u64) -> Result<Self> {
        if !(rate > 0.0) {
            return Err(param("rate must be positive"));
        }
        let dist = WeightDistribution::Exponential { mean: 1.0 / rate };
        let mut rng = rng_from_seed(seed);
        let mut inc: Vec<f64> = (0..len).map(|_| dist.sample_raw(&mut rng)).collect();
        if let Some(first) = inc.first_mut() {
            *first = 0.0;
        }
        Self::new(start, inc)
    }

    pub fn len(&self) -> usize {
        self.increments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.increments.is_empty()
    }

    /// Cumulative values `ν(start + i)`.
    pub fn values(&self) -> Vec<f64> {
        let mut acc = 0.0;
        self.increments
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if i > 0 {
                    acc += v;
                }
                acc
            })
            .collect()
    }
}

/// Output of [`lattice_boundary_evolution`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LatticeEvolution {
    pub profile: BoundaryProfile,
    /// Per output site: the exit point is the left end of the input profile.
    pub truncated: Vec<bool>,
}

/// `x ↦ L_ν(x, t) = max_{z <= x} [ν(z) + L((z, 1), (x, t))]` on the sites of
/// `x_range` (inclusive).
///
/// The boundary sits on field row `r0` (its weights are not used) and rows
/// `r0 + 1 ..= r0 + t` supply the bulk, where `r0` is the field's first row.
/// Exit ties go to the rightmost boundary site.
pub fn lattice_boundary_evolution(
    field: &LatticeField,
    profile: &BoundaryProfile,
    t: usize,
    x_range: (i64, i64),
) -> Result<LatticeEvolution> {
    let x0 = profile.start;
    let n = profile.len();
    let x_end = x0 + n as i64 - 1;
    let (a, b) = x_range;
    if !(x0 <= a && a <= b && b <= x_end) {
        return Err(window(format!("x-range {x_range:?} not inside the profile [{x0}, {x_end}]")));
    }
    let r0 = field.origin().1;
    for (x, r) in [(x0, r0), (x_end, r0 + t as i64)] {
        if !field.contains((x, r)) {
            return Err(window(format!("site ({x}, {r}) outside the field")));
        }
    }
    let lo = (a - x0) as usize;
    let hi = (b - x0) as usize;
    if t == 0 {
        // Increments are copied rather than re-differenced, which keeps them exact.
        let mut inc = vec![0.0];
        inc.extend_from_slice(&profile.increments[lo + 1..=hi]);
        let truncated = (lo..=hi).map(|i| i == 0).collect();
        return Ok(LatticeEvolution { profile: BoundaryProfile::new(a, inc)?, truncated });
    }
    let mut value = profile.values();
    let mut exit: Vec<i64> = (0..n as i64).map(|i| x0 + i).collect();
    let key_lt = |v1: f64, e1: i64, v2: f64, e2: i64| v1 < v2 || (v1 == v2 && e1 < e2);
    for r in 1..=t as i64 {
        for i in 0..n {
            let omega = field.weight((x0 + i as i64, r0 + r));
            // `value[i]` still holds the row below.
            let (mut bv, mut be) = (value[i], exit[i]);
            if i > 0 && key_lt(bv, be, value[i - 1], exit[i - 1]) {
                bv = value[i - 1];
                be = exit[i - 1];
            }
            value[i] = omega + bv;
            exit[i] = be;
        }
    }
    let mut inc = vec![0.0];
    inc.extend((lo + 1..=hi).map(|i| value[i] - value[i - 1]));
    let truncated = (lo..=hi).map(|i| exit[i] == x0).collect();
    Ok(LatticeEvolution { profile: BoundaryProfile::new(a, inc)?, truncated })
}

/// Lattice Busemann estimate `B(x, y) = L(c, y) − L(c, x)`.
///
/// Far points are `round(m + R_k (cos α, sin α))` with `m` the midpoint of
/// `x` and `y`; each must lie below both.
pub fn lattice_busemann(field: &LatticeField, x: Site, y: Site, alpha: Angle, sched: RaySchedule) -> Result<BusemannEstimate> {
    sched.validate()?;
    field.check(x)?;
    field.check(y)?;
    if x == y {
        return Ok(BusemannEstimate {
            value: 0.0,
            coalescence: Some(crate::Point::new(x.0 as f64, x.1 as f64)),
            stabilized: true,
            k_used: 0,
        });
    }
    let lower = (x.0.min(y.0), x.1.min(y.1));
    let upper = (x.0.max(y.0), x.1.max(y.1));
    let mid = (0.5 * (x.0 + y.0) as f64, 0.5 * (x.1 + y.1) as f64);
    let d = alpha.direction();
    let far: Vec<Site> = (0..=sched.k_max)
        .map(|k| {
            let r = sched.radius(k);
            ((mid.0 + r * d.x).round() as i64, (mid.1 + r * d.t).round() as i64)
        })
        .collect();
    for z in &far {
        if !(z.0 <= lower.0 && z.1 <= lower.1) {
            return Err(domain(format!("far point {z:?} does not lie below both sites; increase r0")));
        }
        if !field.contains(*z) {
            return Err(window(format!("far point {z:?} outside the field")));
        }
    }
    let level = |k: usize| {
        let dp = BoxDp::new(field, far[k], upper);
        let px = dp.path(x);
        let py = dp.path(y);
        let c = px.iter().zip(&py).take_while(|(a, b)| a == b).last().map(|(a, _)| *a);
        let value = match c {
            Some(c) => suffix_weight(field, &py, c) - suffix_weight(field, &px, c),
            None => dp.at(y) - dp.at(x),
        };
        (c, value)
    };
    let mut prev = level(0);
    for k in 1..=sched.k_max {
        let cur = level(k);
        if cur.0.is_some() && cur.0 == prev.0 {
            return Ok(estimate(cur, true, k));
        }
        prev = cur;
    }
    Ok(estimate(prev, false, sched.k_max))
}

fn suffix_weight(field: &LatticeField, path: &[Site], c: Site) -> f64 {
    let i = path.iter().position(|s| *s == c).expect("c on path");
    path[i + 1..].iter().fold(0.0, |acc, s| acc + field.weight(*s))
}

fn estimate((c, value): (Option<Site>, f64), stabilized: bool, k: usize) -> BusemannEstimate {
    BusemannEstimate {
        value,
        coalescence: c.map(|c| crate::Point::new(c.0 as f64, c.1 as f64)),
        stabilized,
        k_used: k,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn tiny_fields() {
        let f = LatticeField::from_rows(&[vec![5.0]], (0, 0)).unwrap();
        assert_eq!(lattice_last_passage(&f, (0, 0), (0, 0)).unwrap(), 5.0);
        let f = LatticeField::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]], (0, 0)).unwrap();
        assert_eq!(lattice_last_passage(&f, (0, 0), (1, 1)).unwrap(), 8.0);
        assert_eq!(lattice_geodesic(&f, (0, 0), (1, 1)).unwrap(), vec![(0, 0), (0, 1), (1, 1)]);
        assert!(lattice_last_passage(&f, (1, 1), (0, 0)).is_err());
        assert!(lattice_last_passage(&f, (0, 0), (2, 1)).is_err());
    }

    #[test]
    fn ties_prefer_the_lower_step() {
        let f = LatticeField::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]], (0, 0)).unwrap();
        assert_eq!(lattice_geodesic(&f, (0, 0), (1, 1)).unwrap(), vec![(0, 0), (1, 0), (1, 1)]);
    }

    #[test]
    fn rho_values() {
        assert_eq!(rho(Angle::new(1.25 * PI).unwrap()), 0.5);
        let a = Angle::new(PI + 4f64.atan()).unwrap();
        assert!((rho(a) - 1.0 / 3.0).abs() < 1e-12);
        assert!(rho_identity_residual(a).abs() < 1e-12);
    }

    #[test]
    fn evolution_at_time_zero_is_identity() {
        let f = LatticeField::sample(20, 5, (0, 0), &WeightDistribution::Exponential { mean: 1.0 }, 1).unwrap();
        let p = BoundaryProfile::exponential(0, 20, 0.5, 2).unwrap();
        let e = lattice_boundary_evolution(&f, &p, 0, (0, 19)).unwrap();
        assert_eq!(e.profile, p);
        let zero = LatticeField::new(20, 5, (0, 0), vec![0.0; 100]).unwrap();
        let z = BoundaryProfile::new(0, vec![0.0; 20]).unwrap();
        let e = lattice_boundary_evolution(&zero, &z, 4, (0, 19)).unwrap();
        assert!(e.profile.increments.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn csv_round_trip() {
        let f = LatticeField::sample(7, 3, (-2, 5), &WeightDistribution::Exponential { mean: 1.0 }, 8).unwrap();
        let back = LatticeField::from_csv_str(&f.to_csv_string(), Path::new("mem")).unwrap();
        assert_eq!(f, back);
        assert!(LatticeField::from_csv_str("# width=2\n# height=1\n1,-1\n", Path::new("mem")).is_err());
    }

    #[test]
    fn busemann_identity_and_antisymmetry() {
        let f = LatticeField::sample(120, 120, (-100, -100), &WeightDistribution::Exponential { mean: 1.0 }, 3).unwrap();
        let s = RaySchedule::new(8.0, 2.0, 3).unwrap();
        let a = Angle::diagonal();
        assert_eq!(lattice_busemann(&f, (2, 3), (2, 3), a, s).unwrap().value, 0.0);
        let xy = lattice_busemann(&f, (0, 0), (5, 2), a, s).unwrap();
        let yx = lattice_busemann(&f, (5, 2), (0, 0), a, s).unwrap();
        assert_eq!(xy.value, -yx.value);
        assert_eq!(xy.stabilized, yx.stabilized);
    }
}

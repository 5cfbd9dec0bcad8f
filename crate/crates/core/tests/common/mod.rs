#![allow(dead_code)]

use hamlab::rng::rng_from_seed;
use hamlab::{Point, WeightedPoint, WeightedPointCloud, Window};
use rand::Rng;

/// Best chain by enumerating every subset of the points in `(p, q]`.
pub fn brute_passage(cloud: &WeightedPointCloud, p: Point, q: Point) -> f64 {
    let mut pts: Vec<&WeightedPoint> =
        cloud.points().iter().filter(|w| w.x > p.x && w.x <= q.x && w.t > p.t && w.t <= q.t).collect();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x));
    let n = pts.len();
    let mut best = 0.0_f64;
    for mask in 0u32..(1 << n) {
        let mut last: Option<&WeightedPoint> = None;
        let mut sum = 0.0;
        let mut ok = true;
        for (i, w) in pts.iter().enumerate() {
            if mask & (1 << i) == 0 {
                continue;
            }
            if let Some(l) = last {
                if !(w.x > l.x && w.t > l.t) {
                    ok = false;
                    break;
                }
            }
            sum += w.w;
            last = Some(w);
        }
        if ok {
            best = best.max(sum);
        }
    }
    best
}

/// Up to `max_n` points in `[0, 10]²`; integer weights 1 to 3 when
/// `integer`, otherwise real weights in `(0.1, 5)`.
pub fn small_cloud(seed: u64, max_n: usize, integer: bool) -> WeightedPointCloud {
    let mut rng = rng_from_seed(seed);
    let n = rng.random_range(0..=max_n);
    let pts = (0..n)
        .map(|_| {
            let w = if integer { rng.random_range(1..=3) as f64 } else { rng.random_range(0.1..5.0) };
            WeightedPoint::new(rng.random_range(0.0..10.0), rng.random_range(0.0..10.0), w)
        })
        .collect();
    WeightedPointCloud::new(pts, Window::new(0.0, 10.0, 0.0, 10.0).unwrap(), seed).unwrap()
}

/// All monotone up/right lattice paths from `p` to `q`, endpoints included.
pub fn brute_lattice(weight: &dyn Fn(i64, i64) -> f64, p: (i64, i64), q: (i64, i64)) -> f64 {
    let here = weight(p.0, p.1);
    if p == q {
        return here;
    }
    let mut best = f64::NEG_INFINITY;
    if p.0 < q.0 {
        best = best.max(brute_lattice(weight, (p.0 + 1, p.1), q));
    }
    if p.1 < q.1 {
        best = best.max(brute_lattice(weight, (p.0, p.1 + 1), q));
    }
    here + best
}

mod common;

use common::{brute_lattice, brute_passage, small_cloud};
use hamlab::rng::rng_from_seed;
use hamlab::{
    boundary_last_passage, exit_point, geodesic, lattice_geodesic, lattice_last_passage, last_passage_time, Atom,
    AtomicMeasure, LatticeField, Point,
};
use rand::Rng;

#[test]
fn passage_matches_enumeration() {
    for seed in 0..300u64 {
        let integer = seed % 2 == 0;
        let cloud = small_cloud(seed, 12, integer);
        let mut rng = rng_from_seed(seed ^ 0xabc);
        let p = Point::new(rng.random_range(-1.0..4.0), rng.random_range(-1.0..4.0));
        let q = Point::new(rng.random_range(6.0..11.0), rng.random_range(6.0..11.0));
        let dp = last_passage_time(&cloud, p, q).unwrap();
        let bf = brute_passage(&cloud, p, q);
        if integer {
            assert_eq!(dp, bf, "seed {seed}");
        } else {
            assert!((dp - bf).abs() <= 1e-12, "seed {seed}: {dp} vs {bf}");
        }
    }
}

#[test]
fn geodesics_are_maximising_chains() {
    for seed in 0..200u64 {
        let cloud = small_cloud(seed, 12, seed % 3 == 0);
        let (p, q) = (Point::new(0.0, 0.0), Point::new(10.0, 10.0));
        let path = geodesic(&cloud, p, q).unwrap();
        let pts = &path.points;
        for w in pts.windows(2) {
            assert!(w[0].x < w[1].x && w[0].t < w[1].t);
        }
        let sum: f64 = pts.iter().map(|w| w.w).sum();
        assert!((sum - brute_passage(&cloud, p, q)).abs() <= 1e-12, "seed {seed}");
        assert_eq!(path.value, last_passage_time(&cloud, p, q).unwrap());
    }
}

/// `sup_z ν(z) + L((z, 0), (x, t))` over a dense set of `z`: the window
/// edge, every atom and both sides of every atom and cloud abscissa.
fn dense_boundary(cloud: &hamlab::WeightedPointCloud, nu: &AtomicMeasure, x: f64, t: f64) -> f64 {
    let edge = cloud.window().x_min;
    let mut zs = vec![edge];
    for a in nu.atoms() {
        zs.extend([a.pos - 1e-7, a.pos, a.pos + 1e-7]);
    }
    for p in cloud.points() {
        zs.extend([p.x - 1e-7, p.x + 1e-7]);
    }
    zs.into_iter()
        .filter(|&z| z >= edge && z <= x)
        .map(|z| nu.cumulative(z) + brute_passage(cloud, Point::new(z, 0.0), Point::new(x, t)))
        .fold(f64::NEG_INFINITY, f64::max)
}

fn random_nu(seed: u64) -> AtomicMeasure {
    let mut rng = rng_from_seed(seed);
    let n = rng.random_range(0..6);
    let atoms = (0..n).map(|_| Atom::new(rng.random_range(0.0..10.0), rng.random_range(1..=3) as f64)).collect();
    AtomicMeasure::from_unsorted(atoms).unwrap()
}

#[test]
fn boundary_passage_matches_dense_supremum() {
    for seed in 0..200u64 {
        let cloud = small_cloud(seed, 10, true);
        let nu = random_nu(seed + 7);
        let mut rng = rng_from_seed(seed + 99);
        let x = rng.random_range(0.0..10.0);
        let t = rng.random_range(0.0..10.0);
        let got = boundary_last_passage(&cloud, &nu, x, t).unwrap();
        assert_eq!(got.value, dense_boundary(&cloud, &nu, x, t), "seed {seed}");
    }
}

#[test]
fn exit_is_rightmost_maximising_candidate() {
    for seed in 0..200u64 {
        let cloud = small_cloud(seed, 10, true);
        let nu = random_nu(seed + 3);
        let (x, t) = (8.0, 6.0);
        let edge = cloud.window().x_min;
        let mut cands = vec![edge];
        cands.extend(nu.atoms().iter().map(|a| a.pos).filter(|&p| p <= x));
        let score = |z: f64| nu.cumulative(z) + brute_passage(&cloud, Point::new(z, 0.0), Point::new(x, t));
        let best = cands.iter().map(|&z| score(z)).fold(f64::NEG_INFINITY, f64::max);
        let rightmost = cands.iter().copied().filter(|&z| score(z) == best).fold(f64::NEG_INFINITY, f64::max);
        let z = exit_point(&cloud, &nu, x, t).unwrap();
        assert_eq!((z.value, z.exit), (best, rightmost), "seed {seed}");
        assert_eq!(z.truncated, rightmost == edge);
    }
}

#[test]
fn lattice_matches_path_enumeration() {
    for seed in 0..200u64 {
        let mut rng = rng_from_seed(seed);
        let (w, h) = (rng.random_range(1..=4usize), rng.random_range(1..=4usize));
        let rows: Vec<Vec<f64>> =
            (0..h).map(|_| (0..w).map(|_| rng.random_range(0..4) as f64).collect()).collect();
        let field = LatticeField::from_rows(&rows, (-1, 2)).unwrap();
        let weight = |x: i64, t: i64| rows[(t - 2) as usize][(x + 1) as usize];
        let p = (-1, 2);
        let q = (-1 + w as i64 - 1, 2 + h as i64 - 1);
        let v = lattice_last_passage(&field, p, q).unwrap();
        assert_eq!(v, brute_lattice(&weight, p, q), "seed {seed}");
        let path = lattice_geodesic(&field, p, q).unwrap();
        assert_eq!(path.first(), Some(&p));
        assert_eq!(path.last(), Some(&q));
        assert_eq!(path.iter().map(|s| field.weight(*s)).sum::<f64>(), v);
    }
}

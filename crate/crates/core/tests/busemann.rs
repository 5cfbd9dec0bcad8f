use hamlab::rng::derive_seed;
use hamlab::stats::{exp_cdf, ks_test, summarize};
use hamlab::{
    approx_ray, busemann_value, nu_alpha, sample_cloud, Angle, BusemannFrame, LineSegment, Point, RaySchedule,
    WeightDistribution, Window,
};
use rayon::prelude::*;

const CLASSICAL: WeightDistribution = WeightDistribution::Delta1;

#[test]
fn reflection_gives_identical_values() {
    let alpha = Angle::new(1.15 * std::f64::consts::PI).unwrap();
    let sched = RaySchedule::new(16.0, 2.0, 3).unwrap();
    let w = Window::new(-120.0, 10.0, -120.0, 10.0).unwrap();
    for seed in 0..40u64 {
        let cloud = sample_cloud(w, 1.0, &CLASSICAL, seed).unwrap();
        let refl = cloud.reflected();
        let (x, y) = (Point::new(0.5, 1.5), Point::new(3.0, 0.2));
        let (xr, yr) = (Point::new(x.t, x.x), Point::new(y.t, y.x));
        let mid = Point::new(0.5 * (x.x + y.x), 0.5 * (x.t + y.t));
        let mut a = BusemannFrame::new(&cloud, alpha, sched, mid, vec![x, y]).unwrap();
        let mut b = BusemannFrame::new(&refl, alpha.reflected(), sched, Point::new(mid.t, mid.x), vec![xr, yr]).unwrap();
        for k in 0..=sched.k_max {
            assert_eq!(a.value_at(k, 0, 1).0, b.value_at(k, 0, 1).0, "seed {seed} level {k}");
        }
        let e = busemann_value(&cloud, x, y, alpha, sched).unwrap();
        let f = busemann_value(&refl, xr, yr, alpha.reflected(), sched).unwrap();
        if e.k_used == f.k_used {
            assert_eq!(e.value, f.value);
        }
    }
}

#[test]
fn rays_stabilize_on_large_windows() {
    let sched = RaySchedule::new(25.0, 2.0, 4).unwrap();
    let w = Window::new(-350.0, 50.0, -350.0, 50.0).unwrap();
    let stable: usize = (0..200u64)
        .into_par_iter()
        .map(|seed| {
            let cloud = sample_cloud(w, 1.0, &CLASSICAL, derive_seed(77, seed)).unwrap();
            approx_ray(&cloud, Point::ORIGIN, Angle::diagonal(), sched).unwrap().stabilized as usize
        })
        .sum();
    assert!(stable >= 190, "{stable} of 200 stabilized");
}

#[test]
fn unit_busemann_mean() {
    let (x, y) = (Point::ORIGIN, Point::new(1.0, 0.0));
    let sched = RaySchedule::for_diameter(1.0);
    let w = Window::new(-50.0, 3.0, -50.0, 2.0).unwrap();
    let est: Vec<_> = (0..700u64)
        .into_par_iter()
        .map(|seed| {
            let cloud = sample_cloud(w, 1.0, &CLASSICAL, derive_seed(5, seed)).unwrap();
            busemann_value(&cloud, x, y, Angle::diagonal(), sched).unwrap()
        })
        .collect();
    let vals: Vec<f64> = est.iter().filter(|e| e.stabilized).map(|e| e.value).take(500).collect();
    assert_eq!(vals.len(), 500);
    let m = summarize(&vals).unwrap().mean;
    assert!((0.85..=1.15).contains(&m), "mean {m}");
}

#[test]
fn horizontal_busemann_gaps_are_exponential() {
    let alpha = Angle::diagonal();
    let sched = RaySchedule::new(150.0, 2.0, 2).unwrap();
    let w = Window::new(-385.0, 102.0, -430.0, 2.0).unwrap();
    let seeds = 40u64;
    let pass: usize = (0..seeds)
        .into_par_iter()
        .map(|seed| {
            let cloud = sample_cloud(w, 1.0, &CLASSICAL, derive_seed(31, seed)).unwrap();
            let nu = nu_alpha(&cloud, alpha, sched, LineSegment::Horizontal { t: 0.0, a: 0.0, b: 100.0 }, None).unwrap();
            let ks = ks_test(&nu.measure.gaps(), exp_cdf(1.0)).unwrap();
            (ks.p_value > 0.01) as usize
        })
        .sum();
    assert!(pass as f64 >= 0.95 * seeds as f64, "{pass} of {seeds}");
}

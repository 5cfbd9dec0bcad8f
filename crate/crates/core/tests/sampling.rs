use hamlab::stats::{exp_cdf, ks_test, summarize};
use hamlab::{load_cloud, sample_cloud, save_cloud, AtomicMeasure, WeightDistribution, Window};

#[test]
fn counts_are_poisson() {
    let w = Window::new(-2.0, 3.0, 0.0, 5.0).unwrap();
    let counts: Vec<f64> = (0..1000u64)
        .map(|s| sample_cloud(w, 1.0, &WeightDistribution::Delta1, s).unwrap().len() as f64)
        .collect();
    let s = summarize(&counts).unwrap();
    // Poisson(25): standard error of the mean 0.16, of the variance about 1.1.
    assert!((s.mean - 25.0).abs() < 4.0 * 0.16, "mean {}", s.mean);
    assert!((s.variance - 25.0).abs() < 0.15 * 25.0, "variance {}", s.variance);
}

#[test]
fn exponential_weights_have_the_right_law() {
    let w = Window::new(0.0, 40.0, 0.0, 40.0).unwrap();
    let cloud = sample_cloud(w, 1.0, &WeightDistribution::Exponential { mean: 2.0 }, 3).unwrap();
    let ws: Vec<f64> = cloud.points().iter().map(|p| p.w).collect();
    assert!(ks_test(&ws, exp_cdf(0.5)).unwrap().p_value > 0.001);
}

#[test]
fn poisson_measure_gaps() {
    let nu = AtomicMeasure::poisson(0.0, 2000.0, 2.0, 1.0, 9).unwrap();
    assert!(ks_test(&nu.gaps(), exp_cdf(2.0)).unwrap().p_value > 0.001);
}

#[test]
fn cloud_files_round_trip() {
    let w = Window::new(-1.0, 4.0, 0.0, 3.0).unwrap();
    let cloud = sample_cloud(w, 2.0, &WeightDistribution::Exponential { mean: 1.0 }, 11).unwrap();
    let path = std::env::temp_dir().join(format!("hamlab-cloud-{}.csv", std::process::id()));
    save_cloud(&cloud, &path).unwrap();
    assert_eq!(load_cloud(&path).unwrap(), cloud);
    std::fs::remove_file(path).ok();
}

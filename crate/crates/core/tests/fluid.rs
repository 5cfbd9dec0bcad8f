use hamlab::experiments::{self, ExperimentConfig};
use hamlab::rng::derive_seed;
use hamlab::stats::ks_two_sample;
use hamlab::{
    exit_point, measure_via_lastpassage, sample_cloud, second_class_position, AtomicMeasure, Scenario,
    WeightDistribution, Window,
};
use rayon::prelude::*;

fn shipped_example() -> Scenario {
    Scenario::load(concat!(env!("CARGO_MANIFEST_DIR"), "/../../scenarios/example.json")).unwrap()
}

#[test]
fn shipped_scenario_replays() {
    let sc = shipped_example();
    assert_eq!(sc, Scenario::example());
    let tr = sc.evolve().unwrap();
    let at5: Vec<(f64, f64)> = tr.at(5.0).atoms().iter().map(|a| (a.pos, a.mass)).collect();
    assert_eq!(at5, vec![(2.0, 1.0), (4.0, 4.0), (8.0, 6.0)]);
    let last: Vec<(f64, f64)> = tr.last().restrict(0.0, 8.5).atoms().iter().map(|a| (a.pos, a.mass)).collect();
    assert_eq!(last, vec![(6.0, 7.0)]);
    let cloud = sc.to_cloud().unwrap();
    for t in [5.0, 10.0] {
        let dual = measure_via_lastpassage(&cloud, &sc.nu, t, 0.0, 8.5).unwrap();
        assert_eq!(dual.measure, tr.at(t).restrict(0.0, 8.5));
    }
}

#[test]
fn dual_at_time_zero_is_the_initial_measure() {
    for seed in 0..50u64 {
        let sc = experiments::random_scenario(seed);
        let cloud = sc.to_cloud().unwrap();
        let dual = measure_via_lastpassage(&cloud, &sc.nu, 0.0, 0.0, 10.0).unwrap();
        assert!(!dual.truncated);
        if seed % 2 == 1 {
            assert_eq!(dual.measure, sc.nu, "seed {seed}");
        } else {
            assert!(dual.measure.sup_distance(&sc.nu) <= 1e-12, "seed {seed}");
        }
    }
}

#[test]
fn duality_on_clean_random_scenarios() {
    let report = experiments::run("duality", &ExperimentConfig::default()).unwrap();
    assert!(report.passed(), "{}", report.summary_text());
    assert_eq!(report.summary_value("clean_scenarios"), Some(100.0));
}

#[test]
fn multiclass_order_is_preserved() {
    let report = experiments::run("multiclass", &ExperimentConfig::default()).unwrap();
    assert!(report.passed(), "{}", report.summary_text());
}

#[test]
fn second_class_starts_at_origin_and_moves_right() {
    let w = Window::new(-80.0, 80.0, 0.0, 40.0).unwrap();
    for seed in 0..20u64 {
        let cloud = sample_cloud(w, 1.0, &WeightDistribution::Delta1, seed).unwrap();
        let nu = AtomicMeasure::lattice(-80.0, 80.0, 1.0, 1.0).unwrap();
        assert_eq!(second_class_position(&cloud, &nu, 0.0).unwrap().position, 0.0);
        let mut prev = 0.0;
        for t in [5.0, 10.0, 20.0, 30.0, 40.0] {
            let x = second_class_position(&cloud, &nu, t).unwrap();
            if x.truncated {
                break;
            }
            assert!(x.position >= prev, "seed {seed} t {t}: {} < {prev}", x.position);
            prev = x.position;
        }
    }
}

#[test]
fn exit_point_is_translation_covariant_in_law() {
    let (t, h) = (20.0, 10.0);
    let w = Window::new(-70.0, 20.0, 0.0, t).unwrap();
    let draw = |base: u64, x: f64| -> Vec<f64> {
        (0..500u64)
            .into_par_iter()
            .filter_map(|i| {
                let s = derive_seed(base, i);
                let nu = AtomicMeasure::poisson(-70.0, 20.0, 1.0, 1.0, derive_seed(s, 1)).unwrap();
                let cloud = sample_cloud(w, 1.0, &WeightDistribution::Delta1, derive_seed(s, 2)).unwrap();
                let z = exit_point(&cloud, &nu, x, t).unwrap();
                (!z.truncated).then_some(z.exit)
            })
            .collect()
    };
    let shifted = draw(1, h);
    let moved: Vec<f64> = draw(2, 0.0).into_iter().map(|z| z + h).collect();
    assert!(shifted.len() > 450 && moved.len() > 450);
    let ks = ks_two_sample(&shifted, &moved).unwrap();
    assert!(ks.p_value >= 0.01, "p = {}", ks.p_value);
}

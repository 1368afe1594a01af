mod common;

use common::random_ensemble;
use multiswap::estimation::{estimates_from_counts, run_experiment, tally, Engine, Experiment};
use multiswap::fixtures;
use multiswap::sim::Simulator;
use multiswap::{Scheme, SwapTestVariant};

#[test]
fn estimates_tighten_with_more_shots() {
    let ensemble = fixtures::dataset(0).unwrap();
    let exp = Experiment::new(&ensemble, Scheme::New, SwapTestVariant::Standard).unwrap();
    let sim = Simulator::default();
    let mut previous = f64::INFINITY;
    for shots in [1_000, 10_000, 100_000] {
        let counts = run_experiment(&exp, shots, 11, Engine::Oracle, &sim).unwrap();
        let est = estimates_from_counts(&counts, &exp).unwrap();
        let mut max_dev: f64 = 0.0;
        for e in &est {
            let dev = e.deviation().unwrap().abs();
            assert!(dev <= 4.5 * e.stderr.unwrap(), "N={shots} pair {:?}", e.pair);
            max_dev = max_dev.max(dev);
        }
        // Band for the maximum over 28 pairs at m ≈ N/(n−1).
        let band = 4.5 / (shots as f64 / 7.0).sqrt();
        assert!(max_dev <= band, "N={shots}: {max_dev} > {band}");
        assert!(max_dev < previous * 1.5);
        previous = max_dev;
    }
}

#[test]
fn estimator_is_unbiased() {
    let ensemble = random_ensemble(5, 4, 1);
    let exp = Experiment::new(&ensemble, Scheme::New, SwapTestVariant::Standard).unwrap();
    let sim = Simulator::default();
    let seeds = 200;
    let mut sums = [0.0; 6];
    let mut samples = [0u64; 6];
    for seed in 0..seeds {
        let counts = run_experiment(&exp, 500, seed, Engine::Statevector, &sim).unwrap();
        for (k, e) in estimates_from_counts(&counts, &exp).unwrap().iter().enumerate() {
            sums[k] += e.estimate.unwrap();
            samples[k] += e.samples;
        }
    }
    for (k, pair) in exp.real_pairs().into_iter().enumerate() {
        let mean = sums[k] / seeds as f64;
        let sigma = 1.0 / (samples[k] as f64).sqrt() * 1.05;
        assert!((mean - exp.exact(pair)).abs() <= 3.0 * sigma, "{pair:?}");
    }
}

#[test]
fn per_pair_sample_totals() {
    let sim = Simulator::default();
    let shots = 4096;
    let ensemble = random_ensemble(9, 8, 1);
    for (scheme, per_shot) in [(Scheme::New, 4), (Scheme::San, 1)] {
        let exp = Experiment::new(&ensemble, scheme, SwapTestVariant::Standard).unwrap();
        let counts = run_experiment(&exp, shots, 3, Engine::Auto, &sim).unwrap();
        let total: u64 = tally(&counts, &exp).unwrap().iter().map(|t| t.samples()).sum();
        assert_eq!(total, per_shot * shots, "{scheme}");
    }
}

#[test]
fn statevector_and_destructive_runs_decode() {
    let sim = Simulator::default();
    let ensemble = random_ensemble(21, 4, 1);
    for variant in SwapTestVariant::ALL {
        let exp = Experiment::new(&ensemble, Scheme::New, variant).unwrap();
        let counts = run_experiment(&exp, 20_000, 8, Engine::Statevector, &sim).unwrap();
        for e in estimates_from_counts(&counts, &exp).unwrap() {
            assert!(e.deviation().unwrap().abs() <= 4.5 * e.stderr.unwrap(), "{variant} {:?}", e.pair);
        }
    }
}

#[test]
fn padded_ensembles_only_report_real_pairs() {
    let ensemble = random_ensemble(4, 5, 1);
    let exp = Experiment::new(&ensemble, Scheme::New, SwapTestVariant::Standard).unwrap();
    assert_eq!(exp.ensemble.len(), 8);
    let counts = run_experiment(&exp, 2000, 1, Engine::Auto, &Simulator::default()).unwrap();
    let est = estimates_from_counts(&counts, &exp).unwrap();
    assert_eq!(est.len(), 10);
    assert!(est.iter().all(|e| e.pair.1 <= 5));
}

#[test]
fn same_seed_same_counts() {
    let ensemble = random_ensemble(2, 8, 1);
    let exp = Experiment::new(&ensemble, Scheme::New, SwapTestVariant::Standard).unwrap();
    let sim = Simulator::default();
    for engine in [Engine::Statevector, Engine::Oracle] {
        let a = run_experiment(&exp, 3000, 99, engine, &sim).unwrap();
        let b = run_experiment(&exp, 3000, 99, engine, &sim).unwrap();
        let c = run_experiment(&exp, 3000, 100, engine, &sim).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}

#[test]
fn oracle_scales_past_the_statevector_cap() {
    let ensemble = random_ensemble(64, 64, 1);
    let exp = Experiment::new(&ensemble, Scheme::New, SwapTestVariant::Standard).unwrap();
    let sim = Simulator::default();
    assert_eq!(exp.resolve_engine(Engine::Auto, &sim), Engine::Oracle);
    assert!(run_experiment(&exp, 10, 1, Engine::Statevector, &sim).is_err());
    let counts = run_experiment(&exp, 1_000_000, 1, Engine::Auto, &sim).unwrap();
    assert_eq!(counts.total(), 1_000_000);
    let est = estimates_from_counts(&counts, &exp).unwrap();
    assert_eq!(est.len(), 2016);
}

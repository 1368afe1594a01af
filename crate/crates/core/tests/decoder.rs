mod common;

use common::random_ensemble;
use multiswap::estimation::{oracle_distribution, Experiment};
use multiswap::multiswap::build_un;
use multiswap::permutation::{derive_permutation_table, pair_coverage_map};
use multiswap::san::{build_san_un, san_pair_coverage};
use multiswap::sim::{run_statevector, Simulator};
use multiswap::state::tensor_product;
use multiswap::{PureState, Scheme, SwapTestVariant};
use num_complex::Complex64;

/// For every ancilla outcome, the data registers after the network hold the
/// inputs in the order the table predicts.
fn check_conditioned_registers(n: usize, width: usize, seed: u64) {
    let ensemble = random_ensemble(seed, n, width);
    let (circuit, layout) = build_un(n, width, None).unwrap();
    let table = derive_permutation_table(&circuit, &layout).unwrap();
    let network = circuit.truncated(layout.network_len);
    let input = layout.initial_state(&circuit, &ensemble).unwrap();
    let out = run_statevector(&network, &input).unwrap();
    let block = 1usize << (n * width);
    let d = layout.ancilla_count();
    for outcome in 0..1usize << d {
        let slice = &out.amplitudes()[outcome * block..(outcome + 1) * block];
        let weight: f64 = slice.iter().map(|a| a.norm_sqr()).sum();
        assert!((weight - 1.0 / (1 << d) as f64).abs() < 1e-12);
        let parts: Vec<&PureState> = table.row(outcome).iter().map(|&l| ensemble.get(l)).collect();
        let expected = tensor_product(parts).unwrap();
        let inner: Complex64 = expected.amplitudes().iter().zip(slice).map(|(e, s)| e.conj() * s).sum();
        let fidelity = inner.norm_sqr() / weight;
        assert!(fidelity >= 1.0 - 1e-10, "n={n} outcome={outcome:b} fidelity={fidelity}");
    }
}

#[test]
fn conditioned_registers_follow_the_table() {
    for seed in 0..20 {
        check_conditioned_registers(4, 1, seed);
        check_conditioned_registers(8, 1, 100 + seed);
    }
    check_conditioned_registers(4, 2, 7);
}

#[test]
fn circuit_and_oracle_distributions_agree() {
    let sim = Simulator::default();
    for (n, seed) in [(4, 1), (4, 2), (8, 3), (8, 4)] {
        let ensemble = random_ensemble(seed, n, 1);
        let exp = Experiment::new(&ensemble, Scheme::New, SwapTestVariant::Standard).unwrap();
        let full = exp.analytic_distribution(&sim).unwrap();
        let oracle = oracle_distribution(&exp.ensemble, &exp.layout, &exp.table).unwrap();
        assert_eq!(full.labels(), oracle.labels());
        let tv: f64 = full.probs().iter().zip(oracle.probs()).map(|(a, b)| (a - b).abs()).sum::<f64>() / 2.0;
        assert!(tv <= 1e-9, "n={n} tv={tv}");
    }
}

#[test]
fn tables_are_bijections_fixing_the_first_label() {
    for n in [4, 8, 16, 32] {
        let (c, l) = build_un(n, 1, None).unwrap();
        let t = derive_permutation_table(&c, &l).unwrap();
        assert!(t.is_bijective());
        assert!(t.rows().iter().all(|r| r[0] == 1));
    }
    for n in [4, 8, 16] {
        let (c, l) = build_san_un(n, 1, None).unwrap();
        assert!(derive_permutation_table(&c, &l).unwrap().is_bijective());
    }
}

#[test]
fn every_pair_is_covered() {
    for n in [4, 8, 16, 32] {
        let (c, l) = build_un(n, 1, None).unwrap();
        let t = derive_permutation_table(&c, &l).unwrap();
        assert_eq!(pair_coverage_map(&t, n).unwrap().len(), n * (n - 1) / 2);
    }
    for n in [4, 8, 16] {
        assert_eq!(san_pair_coverage(n).unwrap().len(), n * (n - 1) / 2);
    }
}

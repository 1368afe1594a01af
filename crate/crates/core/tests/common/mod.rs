#![allow(dead_code)]

use multiswap::state::normalize;
use multiswap::{PureState, StateEnsemble};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn random_state(rng: &mut impl Rng, width: usize) -> PureState {
    loop {
        let v: Vec<Complex64> = (0..1 << width)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        if let Ok(s) = normalize(v) {
            return s;
        }
    }
}

pub fn random_ensemble(seed: u64, n: usize, width: usize) -> StateEnsemble {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    StateEnsemble::new((0..n).map(|_| random_state(&mut rng, width)).collect()).unwrap()
}

pub fn state_strategy(width: usize) -> impl Strategy<Value = PureState> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << width)
        .prop_filter_map("zero vector", |v| {
            normalize(v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect()).ok()
        })
}

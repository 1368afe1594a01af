//! Dense statevector execution, measured marginals and seeded shot sampling.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bits::Bits;
use crate::circuit::{CircuitIR, Gate};
use crate::counts::CountsTable;
use crate::error::{Error, Result};
use crate::state::PureState;

pub const DEFAULT_QUBIT_CAP: usize = 26;

/// The random stream for one shot. Streams depend only on `(seed, shot)`, so
/// results do not depend on how shots are split across workers.
pub fn shot_rng(seed: u64, shot: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shot);
    rng
}

/// One sampled shot: the measured bits in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShotOutcome {
    pub bits: Bits,
}

#[derive(Clone, Copy, Debug)]
pub struct Simulator {
    qubit_cap: usize,
}

impl Default for Simulator {
    fn default() -> Self {
        Simulator {
            qubit_cap: DEFAULT_QUBIT_CAP,
        }
    }
}

impl Simulator {
    pub fn with_qubit_cap(qubit_cap: usize) -> Self {
        Simulator { qubit_cap }
    }

    pub fn qubit_cap(&self) -> usize {
        self.qubit_cap
    }

    pub fn check_size(&self, circuit: &CircuitIR) -> Result<()> {
        if circuit.qubit_count() > self.qubit_cap {
            return Err(Error::QubitCapExceeded {
                qubits: circuit.qubit_count(),
                cap: self.qubit_cap,
            });
        }
        Ok(())
    }

    pub fn run(&self, circuit: &CircuitIR, input: &PureState) -> Result<PureState> {
        self.check_size(circuit)?;
        if input.width() != circuit.qubit_count() {
            return Err(Error::WidthMismatch {
                expected: circuit.qubit_count(),
                found: input.width(),
            });
        }
        let n = circuit.qubit_count();
        let mut amps = input.clone().into_amplitudes();
        for gate in circuit.gates() {
            apply_gate(&mut amps, n, gate);
        }
        Ok(PureState::from_unitary_output(n, amps))
    }

    pub fn distribution(&self, circuit: &CircuitIR, input: &PureState) -> Result<MeasuredDistribution> {
        if circuit.measured().is_empty() {
            return Err(Error::EmptyMeasurement);
        }
        let out = self.run(circuit, input)?;
        Ok(MeasuredDistribution::marginal(circuit, &out))
    }
}

pub fn run_statevector(circuit: &CircuitIR, input: &PureState) -> Result<PureState> {
    Simulator::default().run(circuit, input)
}

/// Probabilities of the measured bits, keyed by bitstrings in label order.
/// Zero-probability outcomes are omitted.
pub fn measure_probabilities(circuit: &CircuitIR, input: &PureState) -> Result<BTreeMap<String, f64>> {
    Ok(Simulator::default().distribution(circuit, input)?.to_map())
}

pub fn sample_shots(circuit: &CircuitIR, input: &PureState, shots: u64, seed: u64) -> Result<Vec<ShotOutcome>> {
    let dist = Simulator::default().distribution(circuit, input)?;
    Ok(dist
        .sample_indices(shots, seed)?
        .into_iter()
        .map(|i| ShotOutcome {
            bits: Bits::from_index(i as u64, dist.bit_count()),
        })
        .collect())
}

#[inline]
fn mask(n: usize, q: usize) -> usize {
    1 << (n - 1 - q)
}

fn apply_gate(amps: &mut [Complex64], n: usize, gate: &Gate) {
    let len = amps.len();
    match *gate {
        Gate::H(q) => {
            let m = mask(n, q);
            let s = std::f64::consts::FRAC_1_SQRT_2;
            for i in (0..len).filter(|i| i & m == 0) {
                let (a, b) = (amps[i], amps[i | m]);
                amps[i] = (a + b) * s;
                amps[i | m] = (a - b) * s;
            }
        }
        Gate::X(q) => {
            let m = mask(n, q);
            for i in (0..len).filter(|i| i & m == 0) {
                amps.swap(i, i | m);
            }
        }
        Gate::Z(q) => {
            let m = mask(n, q);
            for (i, a) in amps.iter_mut().enumerate() {
                if i & m != 0 {
                    *a = -*a;
                }
            }
        }
        Gate::Cnot { control, target } => {
            let (c, t) = (mask(n, control), mask(n, target));
            for i in (0..len).filter(|i| i & c != 0 && i & t == 0) {
                amps.swap(i, i | t);
            }
        }
        Gate::Ccz(a, b, c) => {
            let m = mask(n, a) | mask(n, b) | mask(n, c);
            for (i, amp) in amps.iter_mut().enumerate() {
                if i & m == m {
                    *amp = -*amp;
                }
            }
        }
        Gate::Swap(a, b) => swap_lines(amps, 0, mask(n, a), mask(n, b)),
        Gate::Cswap { control, a, b } => swap_lines(amps, mask(n, control), mask(n, a), mask(n, b)),
    }
}

/// Exchanges qubits `a` and `b` on the subspace where all `control` bits are set.
fn swap_lines(amps: &mut [Complex64], control: usize, a: usize, b: usize) {
    for i in 0..amps.len() {
        if i & control == control && i & a != 0 && i & b == 0 {
            amps.swap(i, i ^ a ^ b);
        }
    }
}

/// Exact distribution over the measured bits, stored densely by outcome index
/// (first label = most significant bit).
#[derive(Clone, Debug, PartialEq)]
pub struct MeasuredDistribution {
    labels: Vec<String>,
    probs: Vec<f64>,
}

impl MeasuredDistribution {
    pub fn new(labels: Vec<String>, probs: Vec<f64>) -> Self {
        assert_eq!(probs.len(), 1 << labels.len());
        MeasuredDistribution { labels, probs }
    }

    fn marginal(circuit: &CircuitIR, state: &PureState) -> Self {
        let n = circuit.qubit_count();
        let measured = circuit.measured();
        let m = measured.len();
        let shifts: Vec<(usize, usize)> = measured
            .iter()
            .enumerate()
            .map(|(j, meas)| (n - 1 - meas.qubit, m - 1 - j))
            .collect();
        let chunk = 1 << 14;
        let probs = state
            .amplitudes()
            .par_chunks(chunk)
            .enumerate()
            .fold(
                || vec![0.0; 1 << m],
                |mut acc, (ci, amps)| {
                    for (off, a) in amps.iter().enumerate() {
                        let p = a.norm_sqr();
                        if p == 0.0 {
                            continue;
                        }
                        let i = ci * chunk + off;
                        let key = shifts
                            .iter()
                            .fold(0usize, |k, &(from, to)| k | (((i >> from) & 1) << to));
                        acc[key] += p;
                    }
                    acc
                },
            )
            .reduce(
                || vec![0.0; 1 << m],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );
        MeasuredDistribution {
            labels: circuit.labels(),
            probs,
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn bit_count(&self) -> usize {
        self.labels.len()
    }

    /// Probability of each outcome index.
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn probability(&self, key: &Bits) -> f64 {
        self.probs[key.slice_index(0..key.len()) as usize]
    }

    pub fn to_map(&self) -> BTreeMap<String, f64> {
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 0.0)
            .map(|(i, &p)| (Bits::from_index(i as u64, self.bit_count()).to_string(), p))
            .collect()
    }

    /// Draws `shots` outcome indices; shot `i` uses [`shot_rng`]`(seed, i)`.
    pub fn sample_indices(&self, shots: u64, seed: u64) -> Result<Vec<usize>> {
        if shots == 0 {
            return Err(Error::ZeroShots);
        }
        let mut cdf = Vec::with_capacity(self.probs.len());
        let mut acc = 0.0;
        for &p in &self.probs {
            acc += p;
            cdf.push(acc);
        }
        let total = acc;
        let last = self.probs.iter().rposition(|&p| p > 0.0).unwrap_or(0);
        Ok((0..shots)
            .into_par_iter()
            .map(|shot| {
                let u: f64 = shot_rng(seed, shot).random::<f64>() * total;
                cdf.partition_point(|&c| c <= u).min(last)
            })
            .collect())
    }

    pub fn sample(&self, shots: u64, seed: u64) -> Result<CountsTable> {
        let mut hist = vec![0u64; self.probs.len()];
        for i in self.sample_indices(shots, seed)? {
            hist[i] += 1;
        }
        let mut table = CountsTable::new(self.labels.clone());
        for (i, c) in hist.into_iter().enumerate().filter(|(_, c)| *c > 0) {
            table.add(Bits::from_index(i as u64, self.bit_count()), c)?;
        }
        Ok(table)
    }
}

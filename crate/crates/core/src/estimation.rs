//! End-to-end overlap estimation: running a scheme, tallying verdicts per
//! pair, turning tallies into estimates, and replaying recorded counts.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::AddAssign;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bits::Bits;
use crate::circuit::CircuitIR;
use crate::counts::CountsTable;
use crate::error::{Error, Result};
use crate::layout::{LayoutPlan, Scheme};
use crate::multiswap::{build_un, pad_inputs, PadMask};
use crate::permutation::{
    derive_permutation_table, ordered_pair, pair_coverage_map, CoverageMap, Pair, PermutationTable,
};
use crate::san::build_san_un;
use crate::sim::{shot_rng, MeasuredDistribution, Simulator};
use crate::state::StateEnsemble;
use crate::swap_test::{ResolvedReadout, SwapTestVariant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    /// Exact statevector marginals, then multinomial sampling.
    Statevector,
    /// Classical sampler over the permutation table; no statevector.
    Oracle,
    /// Statevector when the circuit fits under the qubit cap, oracle otherwise.
    Auto,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Statevector => "statevector",
            Engine::Oracle => "oracle",
            Engine::Auto => "auto",
        })
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "statevector" => Ok(Engine::Statevector),
            "oracle" => Ok(Engine::Oracle),
            "auto" => Ok(Engine::Auto),
            other => Err(Error::Config(format!("unknown engine {other:?}"))),
        }
    }
}

/// A scheme circuit built for a (padded) ensemble, with its decoder.
#[derive(Clone, Debug)]
pub struct Experiment {
    pub scheme: Scheme,
    pub ensemble: StateEnsemble,
    pub mask: PadMask,
    pub circuit: CircuitIR,
    pub layout: LayoutPlan,
    pub table: PermutationTable,
    pub coverage: CoverageMap,
}

impl Experiment {
    pub fn new(ensemble: &StateEnsemble, scheme: Scheme, final_variant: SwapTestVariant) -> Result<Self> {
        let (padded, mask) = pad_inputs(ensemble);
        let (circuit, layout) = match scheme {
            Scheme::New => build_un(padded.len(), padded.width(), Some(final_variant))?,
            Scheme::San => build_san_un(padded.len(), padded.width(), Some(final_variant))?,
        };
        let table = derive_permutation_table(&circuit, &layout)?;
        let coverage = pair_coverage_map(&table, mask.real_count)?;
        Ok(Experiment {
            scheme,
            ensemble: padded,
            mask,
            circuit,
            layout,
            table,
            coverage,
        })
    }

    /// Unordered pairs of real inputs, ascending.
    pub fn real_pairs(&self) -> Vec<Pair> {
        self.coverage.keys().copied().collect()
    }

    pub fn exact(&self, pair: Pair) -> f64 {
        self.ensemble.overlap(pair.0, pair.1)
    }

    pub fn resolve_engine(&self, engine: Engine, sim: &Simulator) -> Engine {
        match engine {
            Engine::Auto if self.circuit.qubit_count() <= sim.qubit_cap() => Engine::Statevector,
            Engine::Auto => Engine::Oracle,
            other => other,
        }
    }

    pub fn analytic_distribution(&self, sim: &Simulator) -> Result<MeasuredDistribution> {
        sim.check_size(&self.circuit)?;
        let input = self.layout.initial_state(&self.circuit, &self.ensemble)?;
        sim.distribution(&self.circuit, &input)
    }
}

/// Builds and samples the scheme circuit for `shots` shots.
pub fn run_experiment(
    experiment: &Experiment,
    shots: u64,
    seed: u64,
    engine: Engine,
    sim: &Simulator,
) -> Result<CountsTable> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    match experiment.resolve_engine(engine, sim) {
        Engine::Oracle => oracle_sample(&experiment.ensemble, &experiment.layout, &experiment.table, shots, seed),
        _ => experiment.analytic_distribution(sim)?.sample(shots, seed),
    }
}

/// Positions of the ancilla bits and per-slot readouts within a counts layout.
struct BoundLayout {
    ancillas: Vec<usize>,
    readouts: Vec<ResolvedReadout>,
}

impl BoundLayout {
    fn bind(layout: &LayoutPlan, labels: &[String]) -> Result<Self> {
        let raw = layout.raw_labels();
        let readouts = if labels == raw.as_slice() {
            layout
                .readouts
                .iter()
                .map(|r| r.resolve(labels))
                .collect::<Result<Vec<_>>>()?
        } else if labels == layout.verdict_labels().as_slice() {
            (0..layout.slot_count())
                .map(|i| ResolvedReadout::Single(layout.ancilla_count() + i))
                .collect()
        } else {
            return Err(Error::LayoutMismatch {
                expected: raw.join(" "),
                found: labels.join(" "),
            });
        };
        if readouts.len() != layout.slot_count() {
            return Err(Error::Config("layout has no final swap tests to read".into()));
        }
        Ok(BoundLayout {
            ancillas: (0..layout.ancilla_count()).collect(),
            readouts,
        })
    }

    fn outcome(&self, bits: &Bits) -> usize {
        self.ancillas
            .iter()
            .fold(0usize, |acc, &p| (acc << 1) | bits.get(p) as usize)
    }
}

fn accumulate<W, I>(
    items: I,
    bound: &BoundLayout,
    table: &PermutationTable,
    coverage: &CoverageMap,
) -> BTreeMap<Pair, (W, W)>
where
    W: Copy + Default + AddAssign,
    I: IntoIterator<Item = (Bits, W)>,
{
    let mut acc: BTreeMap<Pair, (W, W)> = coverage.keys().map(|&p| (p, (W::default(), W::default()))).collect();
    for (bits, weight) in items {
        let outcome = bound.outcome(&bits);
        for ((a, b), readout) in table.slot_pairs(outcome).into_iter().zip(&bound.readouts) {
            // Pairs with a padding label are not in the map.
            if let Some(entry) = acc.get_mut(&ordered_pair(a, b)) {
                if readout.verdict(&bits) {
                    entry.1 += weight;
                } else {
                    entry.0 += weight;
                }
            }
        }
    }
    acc
}

/// Swap-test verdict counts pooled over every `(outcome, slot)` holding a pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TallyRecord {
    pub pair: Pair,
    pub t0: u64,
    pub t1: u64,
    /// `(ancilla outcome, slot)` entries that place this pair in a slot.
    pub entries: Vec<(usize, usize)>,
}

impl TallyRecord {
    pub fn samples(&self) -> u64 {
        self.t0 + self.t1
    }
}

/// Tallies `counts` against the experiment's permutation table. Accepts either
/// the circuit's raw bit layout or the condensed verdict layout.
pub fn tally(counts: &CountsTable, experiment: &Experiment) -> Result<Vec<TallyRecord>> {
    let bound = BoundLayout::bind(&experiment.layout, counts.labels())?;
    let acc = accumulate(
        counts.iter().map(|(b, c)| (b.clone(), c)),
        &bound,
        &experiment.table,
        &experiment.coverage,
    );
    Ok(acc
        .into_iter()
        .map(|(pair, (t0, t1))| TallyRecord {
            pair,
            t0,
            t1,
            entries: experiment.coverage[&pair].clone(),
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OverlapEstimate {
    pub pair: Pair,
    pub exact: f64,
    /// `None` when the pair received no samples.
    pub estimate: Option<f64>,
    pub samples: u64,
    /// `1/√m`; `None` when unsampled or computed from exact probabilities.
    pub stderr: Option<f64>,
}

impl OverlapEstimate {
    pub fn deviation(&self) -> Option<f64> {
        self.estimate.map(|e| e - self.exact)
    }
}

/// `2·t0/(t0+t1) − 1`, or `None` without samples.
pub fn estimate_value(t0: u64, t1: u64) -> Option<f64> {
    let m = t0 + t1;
    (m > 0).then(|| 2.0 * t0 as f64 / m as f64 - 1.0)
}

pub fn estimate(t: &TallyRecord, exact: f64) -> OverlapEstimate {
    let m = t.samples();
    OverlapEstimate {
        pair: t.pair,
        exact,
        estimate: estimate_value(t.t0, t.t1),
        samples: m,
        stderr: (m > 0).then(|| 1.0 / (m as f64).sqrt()),
    }
}

/// Tally + estimate for every real pair.
pub fn estimates_from_counts(counts: &CountsTable, experiment: &Experiment) -> Result<Vec<OverlapEstimate>> {
    Ok(tally(counts, experiment)?
        .iter()
        .map(|t| estimate(t, experiment.exact(t.pair)))
        .collect())
}

/// Estimates computed from exact outcome probabilities instead of samples.
pub fn analytic_estimates(experiment: &Experiment, engine: Engine, sim: &Simulator) -> Result<Vec<OverlapEstimate>> {
    let acc: BTreeMap<Pair, (f64, f64)> = match experiment.resolve_engine(engine, sim) {
        Engine::Oracle => {
            let overlaps = overlap_matrix(&experiment.ensemble);
            let weight = 1.0 / experiment.table.outcome_count() as f64;
            let mut acc: BTreeMap<Pair, (f64, f64)> =
                experiment.coverage.keys().map(|&p| (p, (0.0, 0.0))).collect();
            for outcome in 0..experiment.table.outcome_count() {
                for (a, b) in experiment.table.slot_pairs(outcome) {
                    if let Some(e) = acc.get_mut(&ordered_pair(a, b)) {
                        let p0 = (1.0 + overlaps[a - 1][b - 1]) / 2.0;
                        e.0 += weight * p0;
                        e.1 += weight * (1.0 - p0);
                    }
                }
            }
            acc
        }
        _ => {
            let dist = experiment.analytic_distribution(sim)?;
            let bound = BoundLayout::bind(&experiment.layout, dist.labels())?;
            let n = dist.bit_count();
            let items = dist
                .probs()
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0.0)
                .map(|(i, &p)| (Bits::from_index(i as u64, n), p));
            accumulate(items, &bound, &experiment.table, &experiment.coverage)
        }
    };
    Ok(acc
        .into_iter()
        .map(|(pair, (w0, w1))| OverlapEstimate {
            pair,
            exact: experiment.exact(pair),
            estimate: (w0 + w1 > 0.0).then(|| 2.0 * w0 / (w0 + w1) - 1.0),
            samples: 0,
            stderr: None,
        })
        .collect())
}

fn overlap_matrix(ensemble: &StateEnsemble) -> Vec<Vec<f64>> {
    let n = ensemble.len();
    (1..=n)
        .map(|i| (1..=n).map(|j| ensemble.overlap(i, j)).collect())
        .collect()
}

/// Samples the condensed outcome (ancilla bits, then one verdict per slot)
/// without a statevector: the ancilla outcome is uniform and, given it, each
/// slot is an independent two-state swap test on the permuted pair.
pub fn oracle_sample(
    ensemble: &StateEnsemble,
    layout: &LayoutPlan,
    table: &PermutationTable,
    shots: u64,
    seed: u64,
) -> Result<CountsTable> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let d = table.ancilla_count();
    if d > 63 {
        return Err(Error::Config(format!("{d} ancillas exceed the oracle sampler's range")));
    }
    let overlaps = overlap_matrix(ensemble);
    let slots = table.slots.len();
    let hist = (0..shots)
        .into_par_iter()
        .fold(HashMap::<Bits, u64>::new, |mut hist, shot| {
            let mut rng = shot_rng(seed, shot);
            let outcome = if d == 0 { 0 } else { rng.random_range(0..1u64 << d) };
            let mut key = Bits::zeros(d + slots);
            for i in 0..d {
                key.set(i, (outcome >> (d - 1 - i)) & 1 == 1);
            }
            for (s, (a, b)) in table.slot_pairs(outcome as usize).into_iter().enumerate() {
                let p0 = (1.0 + overlaps[a - 1][b - 1]) / 2.0;
                key.set(d + s, rng.random::<f64>() >= p0);
            }
            *hist.entry(key).or_insert(0) += 1;
            hist
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let mut counts = CountsTable::new(layout.verdict_labels());
    for (k, v) in hist {
        counts.add(k, v)?;
    }
    Ok(counts)
}

/// Exact distribution the oracle samples from, over the condensed layout.
pub fn oracle_distribution(
    ensemble: &StateEnsemble,
    layout: &LayoutPlan,
    table: &PermutationTable,
) -> Result<MeasuredDistribution> {
    let d = table.ancilla_count();
    let slots = table.slots.len();
    if d + slots > crate::sim::DEFAULT_QUBIT_CAP {
        return Err(Error::Config(format!(
            "{} outcome bits are too many for a dense distribution",
            d + slots
        )));
    }
    let overlaps = overlap_matrix(ensemble);
    let weight = 1.0 / (1u64 << d) as f64;
    let mut probs = vec![0.0; 1 << (d + slots)];
    for outcome in 0..1usize << d {
        let p0: Vec<f64> = table
            .slot_pairs(outcome)
            .into_iter()
            .map(|(a, b)| (1.0 + overlaps[a - 1][b - 1]) / 2.0)
            .collect();
        for verdicts in 0..1usize << slots {
            let p = p0.iter().enumerate().fold(weight, |acc, (s, &q)| {
                if (verdicts >> (slots - 1 - s)) & 1 == 1 {
                    acc * (1.0 - q)
                } else {
                    acc * q
                }
            });
            probs[(outcome << slots) | verdicts] = p;
        }
    }
    Ok(MeasuredDistribution::new(layout.verdict_labels(), probs))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Discrepancy {
    Unsampled { pair: Pair },
    /// `|ô − o|` exceeds `3/√m`.
    OutsideBand { pair: Pair, deviation: f64, bound: f64 },
    /// The replayed estimate differs from the supplied reference estimate.
    Reference { pair: Pair, reference: f64, replayed: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReplayReport {
    pub total_shots: u64,
    pub tallies: Vec<TallyRecord>,
    pub estimates: Vec<OverlapEstimate>,
    pub flags: Vec<Discrepancy>,
}

/// Re-derives per-pair estimates from recorded counts and flags pairs that are
/// unsampled, outside the 3σ band, or off a reference by more than `tolerance`.
pub fn replay(
    counts: &CountsTable,
    experiment: &Experiment,
    reference: Option<&BTreeMap<Pair, f64>>,
    tolerance: f64,
) -> Result<ReplayReport> {
    let tallies = tally(counts, experiment)?;
    let estimates: Vec<OverlapEstimate> = tallies
        .iter()
        .map(|t| estimate(t, experiment.exact(t.pair)))
        .collect();
    let mut flags = Vec::new();
    for e in &estimates {
        let Some(value) = e.estimate else {
            flags.push(Discrepancy::Unsampled { pair: e.pair });
            continue;
        };
        let bound = 3.0 * e.stderr.unwrap_or(0.0);
        if (value - e.exact).abs() > bound {
            flags.push(Discrepancy::OutsideBand {
                pair: e.pair,
                deviation: value - e.exact,
                bound,
            });
        }
        if let Some(&r) = reference.and_then(|r| r.get(&e.pair)) {
            if (value - r).abs() > tolerance {
                flags.push(Discrepancy::Reference {
                    pair: e.pair,
                    reference: r,
                    replayed: value,
                });
            }
        }
    }
    Ok(ReplayReport {
        total_shots: counts.total(),
        tallies,
        estimates,
        flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::PureState;

    fn basis_ensemble(n: usize) -> StateEnsemble {
        StateEnsemble::new(vec![PureState::basis(1, 0); n]).unwrap()
    }

    #[test]
    fn worked_estimate() {
        let t = TallyRecord {
            pair: (6, 7),
            t0: 601,
            t1: 403,
            entries: vec![],
        };
        let e = estimate(&t, 0.2218);
        assert!((e.estimate.unwrap() - 0.1972).abs() < 1e-4);
        assert_eq!(e.samples, 1004);
        assert!((e.stderr.unwrap() - 1.0 / 1004f64.sqrt()).abs() < 1e-15);
        assert_eq!(estimate_value(10, 0), Some(1.0));
        assert_eq!(estimate_value(7, 7), Some(0.0));
        assert_eq!(estimate_value(0, 0), None);
    }

    #[test]
    fn identical_states_never_fail() {
        let exp = Experiment::new(&basis_ensemble(5), Scheme::New, SwapTestVariant::Standard).unwrap();
        let counts = run_experiment(&exp, 2000, 1, Engine::Statevector, &Simulator::default()).unwrap();
        for t in tally(&counts, &exp).unwrap() {
            assert_eq!(t.t1, 0);
        }
        let oracle = run_experiment(&exp, 2000, 1, Engine::Oracle, &Simulator::default()).unwrap();
        for (bits, _) in oracle.iter() {
            assert!((exp.layout.ancilla_count()..bits.len()).all(|i| !bits.get(i)));
        }
    }

    #[test]
    fn empty_counts_give_unsampled_pairs() {
        let exp = Experiment::new(&basis_ensemble(4), Scheme::New, SwapTestVariant::Standard).unwrap();
        let counts = CountsTable::new(exp.layout.raw_labels());
        let tallies = tally(&counts, &exp).unwrap();
        assert_eq!(tallies.len(), 6);
        assert!(tallies.iter().all(|t| t.samples() == 0));
        let report = replay(&counts, &exp, None, 0.0).unwrap();
        assert!(report.flags.iter().all(|f| matches!(f, Discrepancy::Unsampled { .. })));
        assert_eq!(report.flags.len(), 6);
    }

    #[test]
    fn uniform_counts_reach_every_pair() {
        let exp = Experiment::new(&basis_ensemble(4), Scheme::New, SwapTestVariant::Standard).unwrap();
        let mut counts = CountsTable::new(exp.layout.raw_labels());
        let bits = exp.layout.raw_labels().len();
        for i in 0..1u64 << bits {
            counts.add(Bits::from_index(i, bits), 1).unwrap();
        }
        assert!(tally(&counts, &exp).unwrap().iter().all(|t| t.samples() > 0));
    }

    #[test]
    fn wrong_layout_is_rejected() {
        let exp = Experiment::new(&basis_ensemble(4), Scheme::New, SwapTestVariant::Standard).unwrap();
        let counts = CountsTable::new(vec!["s1".into(), "r1".into()]);
        assert!(matches!(tally(&counts, &exp), Err(Error::LayoutMismatch { .. })));
    }

    #[test]
    fn engine_parsing() {
        for e in [Engine::Statevector, Engine::Oracle, Engine::Auto] {
            assert_eq!(e.to_string().parse::<Engine>().unwrap(), e);
        }
        assert!("gpu".parse::<Engine>().is_err());
    }
}

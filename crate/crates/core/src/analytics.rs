//! Precision and resource models for the two schemes, and scatter summaries.

use serde::Serialize;

use crate::circuit::count_resources;
use crate::error::{Error, Result};
use crate::estimation::OverlapEstimate;
use crate::multiswap::build_un;
use crate::permutation::Pair;
use crate::san::build_san_un;

/// Largest `k` for which `resource_report` also builds the circuits.
pub const MEASURED_MAX_K: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PrecisionModel {
    pub n: usize,
    pub shots: u64,
    /// Average samples per pair with one tested slot per run.
    pub m1: f64,
    /// Average samples per pair with `n/2` tested slots per run.
    pub m2: f64,
    pub ratio: f64,
    /// Smallest power of two `≥ n`.
    pub padded_n: usize,
    /// `m2/m1` once `n` is padded up to `padded_n`.
    pub stepwise_ratio: f64,
}

pub fn precision(n: usize, shots: u64) -> Result<PrecisionModel> {
    if n < 2 {
        return Err(Error::Config(format!("precision needs n >= 2, got {n}")));
    }
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let nf = n as f64;
    let big_n = shots as f64;
    let padded_n = n.next_power_of_two();
    Ok(PrecisionModel {
        n,
        shots,
        m1: 2.0 * big_n / (nf * (nf - 1.0)),
        m2: big_n / (nf - 1.0),
        ratio: nf / 2.0,
        padded_n,
        stepwise_ratio: padded_n as f64 / 2.0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SchemeResources {
    pub cswap: usize,
    pub ancilla: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResourceRow {
    pub n: usize,
    pub k: usize,
    /// `(k−1)·2^(k−1)` and `2(k−1)`.
    pub new_closed: SchemeResources,
    /// `3(2^(k−1)−1)` and `3(k−1)`.
    pub san_closed: SchemeResources,
    pub new_measured: Option<SchemeResources>,
    pub san_measured: Option<SchemeResources>,
    /// `n·k`, the general-term CSWAP count for the new scheme.
    pub general_new_cswap: usize,
    /// `n(k + 1/2)`: the same count with the final swap tests included.
    pub general_new_cswap_with_tests: usize,
    /// `3(n−1)`, the general-term CSWAP count for the baseline.
    pub general_san_cswap: usize,
    /// Ancillas from `d(2n) = d(n) + 2`, `d(4) = 2`.
    pub new_ancilla_recursion: usize,
    pub precision_ratio: f64,
    pub paper_formula_mismatch: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonTable {
    pub rows: Vec<ResourceRow>,
}

fn measured_new(n: usize) -> Result<SchemeResources> {
    let r = count_resources(&build_un(n, 1, None)?.0);
    Ok(SchemeResources { cswap: r.cswap_count, ancilla: r.ancilla_count })
}

fn measured_san(n: usize) -> Result<SchemeResources> {
    let r = count_resources(&build_san_un(n, 1, None)?.0);
    Ok(SchemeResources { cswap: r.cswap_count, ancilla: r.ancilla_count })
}

/// One row per `n = 2^k`, `k = 2..=max_k`, at register width 1.
pub fn resource_report(max_k: usize) -> Result<ComparisonTable> {
    if !(2..usize::BITS as usize - 2).contains(&max_k) {
        return Err(Error::Config(format!("max k must be in 2..=61, got {max_k}")));
    }
    let mut rows = Vec::with_capacity(max_k - 1);
    let mut d_rec = 2;
    for k in 2..=max_k {
        let n = 1usize << k;
        if k > 2 {
            d_rec += 2;
        }
        let new_closed = SchemeResources { cswap: (k - 1) << (k - 1), ancilla: 2 * (k - 1) };
        let san_closed = SchemeResources { cswap: 3 * ((1 << (k - 1)) - 1), ancilla: 3 * (k - 1) };
        let measure = k <= MEASURED_MAX_K;
        let general_new_cswap = n * k;
        let general_san_cswap = 3 * (n - 1);
        rows.push(ResourceRow {
            n,
            k,
            new_closed,
            san_closed,
            new_measured: measure.then(|| measured_new(n)).transpose()?,
            san_measured: measure.then(|| measured_san(n)).transpose()?,
            general_new_cswap,
            general_new_cswap_with_tests: n * k + n / 2,
            general_san_cswap,
            new_ancilla_recursion: d_rec,
            precision_ratio: n as f64 / 2.0,
            paper_formula_mismatch: general_new_cswap != new_closed.cswap
                || general_san_cswap != san_closed.cswap
                || d_rec != new_closed.ancilla,
        });
    }
    Ok(ComparisonTable { rows })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScatterRow {
    pub pair: Pair,
    /// Estimated overlap.
    pub x: f64,
    /// Exact overlap.
    pub y: f64,
    pub samples: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScatterData {
    pub rows: Vec<ScatterRow>,
    /// Pairs left out because they were never sampled.
    pub unsampled: Vec<Pair>,
    pub max_abs_deviation: Option<f64>,
    pub rmse: Option<f64>,
}

pub fn scatter_data(estimates: &[OverlapEstimate]) -> ScatterData {
    let mut rows = Vec::with_capacity(estimates.len());
    let mut unsampled = Vec::new();
    for e in estimates {
        match e.estimate {
            Some(x) => rows.push(ScatterRow { pair: e.pair, x, y: e.exact, samples: e.samples }),
            None => unsampled.push(e.pair),
        }
    }
    let (max_abs_deviation, rmse) = if rows.is_empty() {
        (None, None)
    } else {
        let max = rows.iter().map(|r| (r.x - r.y).abs()).fold(0.0, f64::max);
        let mse = rows.iter().map(|r| (r.x - r.y).powi(2)).sum::<f64>() / rows.len() as f64;
        (Some(max), Some(mse.sqrt()))
    };
    ScatterData { rows, unsampled, max_abs_deviation, rmse }
}

//! CSV reports with fixed column orders.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::analytics::{ComparisonTable, PrecisionModel, ScatterData};
use crate::error::{Error, Result};
use crate::estimation::{Discrepancy, OverlapEstimate, ReplayReport};
use crate::permutation::{ordered_pair, Pair};

pub const ESTIMATES_HEADER: [&str; 6] = ["pair_i", "pair_j", "exact", "estimate", "samples", "stderr"];
pub const SCATTER_HEADER: [&str; 5] = ["x_estimate", "y_exact", "pair_i", "pair_j", "samples"];
pub const PRECISION_HEADER: [&str; 7] = ["n", "shots", "m1", "m2", "ratio", "padded_n", "stepwise_ratio"];
pub const RESOURCES_HEADER: [&str; 16] = [
    "n",
    "k",
    "new_cswap",
    "new_ancilla",
    "new_cswap_measured",
    "new_ancilla_measured",
    "san_cswap",
    "san_ancilla",
    "san_cswap_measured",
    "san_ancilla_measured",
    "general_new_cswap_nk",
    "general_new_cswap_with_tests",
    "general_san_cswap_3n_minus_3",
    "new_ancilla_recursion",
    "precision_ratio",
    "paper_formula_mismatch",
];
pub const REPLAY_HEADER: [&str; 10] = [
    "pair_i", "pair_j", "exact", "estimate", "samples", "stderr", "t0", "t1", "reference", "flags",
];

fn finish(writer: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = writer.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn estimate_cells(e: &OverlapEstimate) -> Vec<String> {
    vec![
        e.pair.0.to_string(),
        e.pair.1.to_string(),
        e.exact.to_string(),
        e.estimate.map_or_else(|| "unsampled".to_string(), |x| x.to_string()),
        e.samples.to_string(),
        opt(e.stderr),
    ]
}

pub fn estimates_csv(estimates: &[OverlapEstimate]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(ESTIMATES_HEADER)?;
    for e in estimates {
        w.write_record(estimate_cells(e))?;
    }
    finish(w)
}

pub fn scatter_csv(scatter: &ScatterData) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SCATTER_HEADER)?;
    for r in &scatter.rows {
        w.write_record([
            r.x.to_string(),
            r.y.to_string(),
            r.pair.0.to_string(),
            r.pair.1.to_string(),
            r.samples.to_string(),
        ])?;
    }
    finish(w)
}

pub fn precision_csv(rows: &[PrecisionModel]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(PRECISION_HEADER)?;
    for p in rows {
        w.write_record([
            p.n.to_string(),
            p.shots.to_string(),
            p.m1.to_string(),
            p.m2.to_string(),
            p.ratio.to_string(),
            p.padded_n.to_string(),
            p.stepwise_ratio.to_string(),
        ])?;
    }
    finish(w)
}

pub fn resources_csv(table: &ComparisonTable) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(RESOURCES_HEADER)?;
    for r in &table.rows {
        w.write_record([
            r.n.to_string(),
            r.k.to_string(),
            r.new_closed.cswap.to_string(),
            r.new_closed.ancilla.to_string(),
            opt(r.new_measured.map(|m| m.cswap)),
            opt(r.new_measured.map(|m| m.ancilla)),
            r.san_closed.cswap.to_string(),
            r.san_closed.ancilla.to_string(),
            opt(r.san_measured.map(|m| m.cswap)),
            opt(r.san_measured.map(|m| m.ancilla)),
            r.general_new_cswap.to_string(),
            r.general_new_cswap_with_tests.to_string(),
            r.general_san_cswap.to_string(),
            r.new_ancilla_recursion.to_string(),
            r.precision_ratio.to_string(),
            r.paper_formula_mismatch.to_string(),
        ])?;
    }
    finish(w)
}

fn flag_text(d: &Discrepancy) -> String {
    match d {
        Discrepancy::Unsampled { .. } => "unsampled".into(),
        Discrepancy::OutsideBand { deviation, bound, .. } => format!("outside_3sigma({deviation:+.4}>{bound:.4})"),
        Discrepancy::Reference { reference, replayed, .. } => {
            format!("reference_mismatch({:+.4})", replayed - reference)
        }
    }
}

fn flag_pair(d: &Discrepancy) -> Pair {
    match d {
        Discrepancy::Unsampled { pair }
        | Discrepancy::OutsideBand { pair, .. }
        | Discrepancy::Reference { pair, .. } => *pair,
    }
}

pub fn replay_csv(report: &ReplayReport, reference: Option<&BTreeMap<Pair, f64>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(REPLAY_HEADER)?;
    for (e, t) in report.estimates.iter().zip(&report.tallies) {
        let mut cells = estimate_cells(e);
        cells.push(t.t0.to_string());
        cells.push(t.t1.to_string());
        cells.push(opt(reference.and_then(|r| r.get(&e.pair))));
        let flags: Vec<String> = report
            .flags
            .iter()
            .filter(|f| flag_pair(f) == e.pair)
            .map(flag_text)
            .collect();
        cells.push(flags.join(";"));
        w.write_record(cells)?;
    }
    finish(w)
}

#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
pub struct ReferenceRow {
    pub pair_i: usize,
    pub pair_j: usize,
    pub exact: f64,
    pub estimate: f64,
}

impl ReferenceRow {
    pub fn pair(&self) -> Pair {
        ordered_pair(self.pair_i, self.pair_j)
    }
}

/// Reads `pair_i,pair_j,exact,estimate` rows; `#` lines are comments.
pub fn parse_reference(text: &str) -> Result<Vec<ReferenceRow>> {
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (i, row) in reader.deserialize().enumerate() {
        let row: ReferenceRow = row.map_err(|e| Error::parse(format!("reference row {}", i + 1), e.to_string()))?;
        rows.push(row);
    }
    Ok(rows)
}

/// Reference estimates keyed by pair.
pub fn reference_estimates(rows: &[ReferenceRow]) -> BTreeMap<Pair, f64> {
    rows.iter().map(|r| (r.pair(), r.estimate)).collect()
}

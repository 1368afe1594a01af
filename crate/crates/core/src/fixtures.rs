//! Data sets and reference tables shipped with the crate.

use crate::error::{Error, Result};
use crate::io::report::{parse_reference, ReferenceRow};
use crate::io::states::parse_states;
use crate::io::table_json::ReferenceRow as TableRow;
use crate::layout::Scheme;
use crate::state::StateEnsemble;

/// Counts of the 8-state hardware run, in counts-file format.
pub const HARDWARE_COUNTS: &str = include_str!("../data/hardware_counts.txt");

/// Exact and estimated overlaps for all 28 pairs of data set 0.
pub const REFERENCE_OVERLAPS: &str = include_str!("../data/reference_overlaps.csv");

const DATASETS: [&str; 10] = [
    include_str!("../data/d0.json"),
    include_str!("../data/d1.json"),
    include_str!("../data/d2.json"),
    include_str!("../data/d3.json"),
    include_str!("../data/d4.json"),
    include_str!("../data/d5.json"),
    include_str!("../data/d6.json"),
    include_str!("../data/d7.json"),
    include_str!("../data/d8.json"),
    include_str!("../data/d9.json"),
];

pub const DATASET_COUNT: usize = DATASETS.len();

/// Raw JSON of data set `i`: 0 is the worked 8-state experiment, 1..=9 the
/// random sets.
pub fn dataset_json(i: usize) -> Result<&'static str> {
    DATASETS
        .get(i)
        .copied()
        .ok_or_else(|| Error::Config(format!("no data set D{i}")))
}

pub fn dataset(i: usize) -> Result<StateEnsemble> {
    parse_states(dataset_json(i)?, false)
}

pub fn reference_overlaps() -> Result<Vec<ReferenceRow>> {
    parse_reference(REFERENCE_OVERLAPS)
}

/// Baseline `U4`, keyed `s1 s2 s3`.
pub const SAN_U4_ROWS: [TableRow<'static>; 8] = [
    ("000", &[1, 2, 3, 4]),
    ("010", &[1, 4, 3, 2]),
    ("100", &[3, 2, 1, 4]),
    ("110", &[4, 2, 1, 3]),
    ("001", &[1, 3, 2, 4]),
    ("011", &[4, 3, 2, 1]),
    ("101", &[3, 1, 2, 4]),
    ("111", &[4, 1, 2, 3]),
];

/// New-scheme `U4`, keyed `s1 s2`.
pub const U4_ROWS: [TableRow<'static>; 4] = [
    ("00", &[1, 2, 3, 4]),
    ("01", &[1, 3, 2, 4]),
    ("10", &[1, 4, 3, 2]),
    ("11", &[1, 4, 2, 3]),
];

/// New-scheme `U8`, keyed `s1 s2 s3 s4`, as printed (row 0011 repeats 0010).
pub const U8_ROWS: [TableRow<'static>; 16] = [
    ("0000", &[1, 2, 3, 4, 5, 6, 7, 8]),
    ("0001", &[1, 3, 2, 4, 5, 7, 6, 8]),
    ("0010", &[1, 4, 3, 2, 5, 8, 7, 6]),
    ("0011", &[1, 4, 3, 2, 5, 8, 7, 6]),
    ("0100", &[1, 2, 5, 6, 3, 4, 7, 8]),
    ("0101", &[1, 5, 2, 6, 3, 7, 4, 8]),
    ("0110", &[1, 6, 5, 2, 3, 8, 7, 4]),
    ("0111", &[1, 6, 2, 5, 3, 8, 4, 7]),
    ("1000", &[1, 2, 7, 8, 5, 6, 3, 4]),
    ("1001", &[1, 7, 2, 8, 5, 3, 6, 4]),
    ("1010", &[1, 8, 7, 2, 5, 4, 3, 6]),
    ("1011", &[1, 8, 2, 7, 5, 4, 6, 3]),
    ("1100", &[1, 2, 7, 8, 3, 4, 5, 6]),
    ("1101", &[1, 7, 2, 8, 3, 5, 4, 6]),
    ("1110", &[1, 8, 7, 2, 3, 6, 5, 4]),
    ("1111", &[1, 8, 2, 7, 3, 6, 4, 5]),
];

/// The transcribed table for a scheme and size, when one exists.
pub fn reference_table(scheme: Scheme, n: usize) -> Option<&'static [TableRow<'static>]> {
    match (scheme, n) {
        (Scheme::San, 4) => Some(&SAN_U4_ROWS),
        (Scheme::New, 4) => Some(&U4_ROWS),
        (Scheme::New, 8) => Some(&U8_ROWS),
        _ => None,
    }
}

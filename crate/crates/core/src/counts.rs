use std::collections::BTreeMap;

use crate::bits::Bits;
use crate::error::{Error, Result};

/// Outcome histogram keyed by bitstrings over an ordered list of bit labels.
///
/// Adding a key twice sums its counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountsTable {
    labels: Vec<String>,
    counts: BTreeMap<Bits, u64>,
}

impl CountsTable {
    pub fn new(labels: Vec<String>) -> Self {
        CountsTable {
            labels,
            counts: BTreeMap::new(),
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn add(&mut self, key: Bits, count: u64) -> Result<()> {
        if key.len() != self.labels.len() {
            return Err(Error::MalformedBits(format!(
                "bitstring {key} has {} bits, layout declares {}",
                key.len(),
                self.labels.len()
            )));
        }
        *self.counts.entry(key).or_insert(0) += count;
        Ok(())
    }

    pub fn get(&self, key: &Bits) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Number of distinct keys.
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Entries in ascending bitstring order.
    pub fn iter(&self) -> impl Iterator<Item = (&Bits, u64)> {
        self.counts.iter().map(|(k, &v)| (k, v))
    }

    pub fn merge(&mut self, other: &CountsTable) -> Result<()> {
        if other.labels != self.labels {
            return Err(Error::LayoutMismatch {
                expected: self.labels.join(" "),
                found: other.labels.join(" "),
            });
        }
        for (k, v) in other.iter() {
            *self.counts.entry(k.clone()).or_insert(0) += v;
        }
        Ok(())
    }
}

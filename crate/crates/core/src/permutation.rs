//! Ancilla-outcome → register-permutation tables, derived by replaying the
//! controlled swaps of a constructed circuit on classical labels.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bits::Bits;
use crate::circuit::{CircuitIR, Gate, Role};
use crate::error::{Error, Result};
use crate::layout::LayoutPlan;

/// Unordered pair of 1-based input labels, smaller label first.
pub type Pair = (usize, usize);

pub fn ordered_pair(a: usize, b: usize) -> Pair {
    (a.min(b), a.max(b))
}

/// Coverage entry: (ancilla outcome index, slot index).
pub type CoverageMap = BTreeMap<Pair, Vec<(usize, usize)>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermutationTable {
    pub n: usize,
    pub ancilla_labels: Vec<String>,
    /// Tested register positions, 1-based.
    pub slots: Vec<(usize, usize)>,
    /// `rows[outcome][position]` = 1-based input label held at `position`.
    rows: Vec<Vec<usize>>,
}

impl PermutationTable {
    pub fn ancilla_count(&self) -> usize {
        self.ancilla_labels.len()
    }

    pub fn outcome_count(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, outcome: usize) -> &[usize] {
        &self.rows[outcome]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn outcome_bits(&self, outcome: usize) -> Bits {
        Bits::from_index(outcome as u64, self.ancilla_count())
    }

    /// The (ordered) label pairs sitting in each slot for `outcome`.
    pub fn slot_pairs(&self, outcome: usize) -> Vec<(usize, usize)> {
        let row = &self.rows[outcome];
        self.slots.iter().map(|&(a, b)| (row[a - 1], row[b - 1])).collect()
    }

    pub fn is_bijective(&self) -> bool {
        self.rows.iter().all(|row| {
            let mut seen = vec![false; self.n];
            row.iter().all(|&l| {
                (1..=self.n).contains(&l) && !std::mem::replace(&mut seen[l - 1], true)
            })
        })
    }
}

/// Replays every ancilla-controlled `CSWAP` in `gates[..layout.network_len]`
/// on the label sequence `1..=n`, once per ancilla outcome.
pub fn derive_permutation_table(circuit: &CircuitIR, layout: &LayoutPlan) -> Result<PermutationTable> {
    let d = layout.ancilla_count();
    if d >= usize::BITS as usize - 1 {
        return Err(Error::Config(format!("{d} ancillas is too many to enumerate")));
    }
    // Qubit -> (register, offset) for data qubits; ancilla qubit -> bit position.
    let mut data_slot = vec![None; circuit.qubit_count()];
    for (r, range) in layout.registers.iter().enumerate() {
        for (off, q) in range.clone().enumerate() {
            data_slot[q] = Some((r, off));
        }
    }
    let mut ancilla_bit = vec![None; circuit.qubit_count()];
    for (i, &q) in layout.ancillas.iter().enumerate() {
        ancilla_bit[q] = Some(d - 1 - i);
    }

    let mut swaps = Vec::new();
    for gate in &circuit.gates()[..layout.network_len] {
        match *gate {
            Gate::Cswap { control, a, b } => {
                let bit = ancilla_bit[control].ok_or_else(|| {
                    Error::InvalidGate(format!("network CSWAP controlled by non-ancilla qubit {control}"))
                })?;
                match (data_slot[a], data_slot[b]) {
                    (Some(_), Some(_)) => swaps.push((bit, a, b)),
                    _ => {
                        return Err(Error::InvalidGate(
                            "network CSWAP targets a non-data qubit".into(),
                        ))
                    }
                }
            }
            Gate::H(q) if circuit.role(q) == Role::Ancilla => {}
            other => {
                return Err(Error::InvalidGate(format!(
                    "unexpected {:?} inside the permutation network",
                    other.kind()
                )))
            }
        }
    }

    let mut rows = Vec::with_capacity(1 << d);
    for outcome in 0..(1usize << d) {
        let mut labels: Vec<Option<(usize, usize)>> = data_slot.clone();
        for &(bit, a, b) in &swaps {
            if (outcome >> bit) & 1 == 1 {
                labels.swap(a, b);
            }
        }
        let mut row = Vec::with_capacity(layout.n);
        for range in &layout.registers {
            let (reg, _) = labels[range.start].expect("data qubit carries a label");
            for (off, q) in range.clone().enumerate() {
                if labels[q] != Some((reg, off)) {
                    return Err(Error::InvalidGate(format!(
                        "register split by the network for outcome {outcome}"
                    )));
                }
            }
            row.push(reg + 1);
        }
        rows.push(row);
    }

    Ok(PermutationTable {
        n: layout.n,
        ancilla_labels: layout.ancilla_labels.clone(),
        slots: layout.slots.iter().map(|&(a, b)| (a + 1, b + 1)).collect(),
        rows,
    })
}

/// For each unordered pair of real (non-padding) labels, every
/// `(outcome, slot)` placing it in a tested slot. Labels above `real_count`
/// are padding.
pub fn pair_coverage_map(table: &PermutationTable, real_count: usize) -> Result<CoverageMap> {
    let mut map: CoverageMap = BTreeMap::new();
    for i in 1..=real_count {
        for j in i + 1..=real_count {
            map.insert((i, j), Vec::new());
        }
    }
    for outcome in 0..table.outcome_count() {
        for (slot, (a, b)) in table.slot_pairs(outcome).into_iter().enumerate() {
            if let Some(entries) = map.get_mut(&ordered_pair(a, b)) {
                entries.push((outcome, slot));
            }
        }
    }
    if let Some((&(i, j), _)) = map.iter().find(|(_, v)| v.is_empty()) {
        return Err(Error::UncoveredPair(i, j));
    }
    Ok(map)
}

//! Permutation-table audit export.

use serde_json::{json, Value};

use crate::permutation::PermutationTable;

/// A transcribed reference row: outcome bitstring and the label order it lists.
pub type ReferenceRow<'a> = (&'a str, &'a [usize]);

/// `{ n, ancilla_labels, slots, rows: [{outcome, permutation, slot_pairs}],
/// reference_mismatches }`. Mismatches are listed only when a reference is given.
pub fn export_table(table: &PermutationTable, reference: Option<&[ReferenceRow<'_>]>) -> Value {
    let rows: Vec<Value> = (0..table.outcome_count())
        .map(|o| {
            json!({
                "outcome": table.outcome_bits(o).to_string(),
                "permutation": table.row(o),
                "slot_pairs": table.slot_pairs(o),
            })
        })
        .collect();
    let mut doc = json!({
        "n": table.n,
        "ancilla_labels": table.ancilla_labels,
        "slots": table.slots,
        "rows": rows,
    });
    if let Some(reference) = reference {
        doc["reference_mismatches"] = Value::Array(reference_mismatches(table, reference));
    }
    doc
}

pub fn reference_mismatches(table: &PermutationTable, reference: &[ReferenceRow<'_>]) -> Vec<Value> {
    reference
        .iter()
        .filter_map(|&(outcome, expected)| {
            let idx = usize::from_str_radix(outcome, 2).ok()?;
            let derived = table.rows().get(idx)?;
            (derived.as_slice() != expected).then(|| {
                json!({ "outcome": outcome, "reference": expected, "derived": derived })
            })
        })
        .collect()
}

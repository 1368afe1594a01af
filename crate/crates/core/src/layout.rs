//! Qubit layout shared by the multi-state schemes.
//!
//! Qubits are laid out as: permutation ancillas `s1..sd`, then the `n` data
//! registers of `width` qubits each, then one result qubit per tested slot
//! (none for destructive tests). Measured bits follow the same order.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::Serialize;

use crate::circuit::{CircuitIR, Gate};
use crate::error::{Error, Result};
use crate::state::{tensor_product, PureState, StateEnsemble};
use crate::swap_test::{SlotReadout, SwapTestVariant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    /// Two ancillas per recursion level, `n/2` tested slots.
    New,
    /// Three ancillas per level, a single tested slot `(q1, q2)`.
    San,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::New => "new",
            Scheme::San => "san",
        })
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "new" => Ok(Scheme::New),
            "san" => Ok(Scheme::San),
            other => Err(Error::Config(format!("unknown scheme {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LayoutPlan {
    pub scheme: Scheme,
    /// Register count (a power of two, at least 4).
    pub n: usize,
    /// `log2(n)`.
    pub k: usize,
    pub width: usize,
    /// Ancilla qubit indices in label order.
    pub ancillas: Vec<usize>,
    pub ancilla_labels: Vec<String>,
    /// What each ancilla controls, for audit output.
    pub ancilla_roles: Vec<String>,
    /// Data qubits of each register position.
    pub registers: Vec<Range<usize>>,
    /// Register positions (0-based) tested by the final swap tests.
    pub slots: Vec<(usize, usize)>,
    pub final_variant: Option<SwapTestVariant>,
    /// One entry per slot when final tests are present.
    pub readouts: Vec<SlotReadout>,
    /// `gates[..network_len]` is the permutation network (ancilla preparation included).
    pub network_len: usize,
}

impl LayoutPlan {
    pub fn ancilla_count(&self) -> usize {
        self.ancillas.len()
    }

    pub fn slot_count(&self) -> usize {
        self.slots.len()
    }

    /// Labels of the circuit's measured bits.
    pub fn raw_labels(&self) -> Vec<String> {
        let mut labels = self.ancilla_labels.clone();
        for r in &self.readouts {
            labels.extend(r.labels());
        }
        labels
    }

    /// Labels of the condensed form: ancilla bits then one verdict per slot.
    pub fn verdict_labels(&self) -> Vec<String> {
        let mut labels = self.ancilla_labels.clone();
        labels.extend((1..=self.slot_count()).map(|i| format!("r{i}")));
        labels
    }

    /// `|0…0⟩ ⊗ φ1 ⊗ … ⊗ φn ⊗ |0…0⟩` matching the qubit layout.
    pub fn initial_state(&self, circuit: &CircuitIR, ensemble: &StateEnsemble) -> Result<PureState> {
        if ensemble.len() != self.n {
            return Err(Error::Config(format!(
                "layout has {} registers but the ensemble has {} states",
                self.n,
                ensemble.len()
            )));
        }
        if ensemble.width() != self.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: ensemble.width(),
            });
        }
        let head = PureState::zero(self.ancilla_count());
        let tail_width = circuit.qubit_count() - self.ancilla_count() - self.n * self.width;
        let tail = PureState::zero(tail_width.max(1));
        let mut parts: Vec<&PureState> = Vec::with_capacity(self.n + 2);
        if self.ancilla_count() > 0 {
            parts.push(&head);
        }
        parts.extend(ensemble.states());
        if tail_width > 0 {
            parts.push(&tail);
        }
        tensor_product(parts)
    }
}

/// One qubit-level `CSWAP` per qubit of the two registers, sharing `control`.
pub(crate) fn cswap_registers(
    circuit: &mut CircuitIR,
    control: usize,
    a: &Range<usize>,
    b: &Range<usize>,
) -> Result<()> {
    for (x, y) in a.clone().zip(b.clone()) {
        circuit.push(Gate::Cswap { control, a: x, b: y })?;
    }
    Ok(())
}

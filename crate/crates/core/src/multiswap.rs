//! The recursive multi-state swap-test network `Uₙ`.
//!
//! `n = 2^k` registers are split into four equal groups `G1..G4`. Rule 1
//! exchanges `G2↔G3` pointwise and rule 2 exchanges `G2↔G4`; each rule is a fan
//! of `CSWAP`s controlled by one `|+⟩` ancilla. The two halves `G1G2` and `G3G4`
//! are then permuted by `U_{n/2}`, down to `U4`. All blocks of one recursion
//! level share that level's two ancillas, so the network uses `2(k-1)`
//! ancillas and `(k-1)·2^(k-1)` register-level `CSWAP`s. Finally `n/2` swap
//! tests compare the slots `(q1,q2), (q3,q4), …`.
//!
//! Ancilla labels run `s1, s2, …` level by level from the top; within a level
//! the first label controls rule 2 and the second rule 1, while the rule-1 fan
//! is applied first.

use std::ops::Range;

use crate::circuit::{CircuitIR, Gate, Role};
use crate::error::{Error, Result};
use crate::layout::{cswap_registers, LayoutPlan, Scheme};
use crate::state::{PureState, StateEnsemble};
use crate::swap_test::{append_swap_test, SwapTestVariant};

/// Which trailing labels of a padded ensemble are `|0…0⟩` fillers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PadMask {
    pub real_count: usize,
    pub total: usize,
}

impl PadMask {
    pub fn is_padded(&self, label: usize) -> bool {
        label > self.real_count
    }

    pub fn padded_labels(&self) -> Vec<usize> {
        (self.real_count + 1..=self.total).collect()
    }
}

/// Smallest supported register count for `m` inputs.
pub fn padded_size(m: usize) -> usize {
    m.max(4).next_power_of_two()
}

/// Appends `|0…0⟩` states up to the next power of two (at least 4).
pub fn pad_inputs(ensemble: &StateEnsemble) -> (StateEnsemble, PadMask) {
    let m = ensemble.len();
    let n = padded_size(m);
    let mut states = ensemble.states().to_vec();
    states.resize(n, PureState::zero(ensemble.width()));
    let padded = StateEnsemble::new(states).expect("padding keeps width uniform");
    (padded, PadMask { real_count: m, total: n })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwapRule {
    /// `G1 G2 G3 G4 → G1 G3 G2 G4`
    Rule1,
    /// `G1 G2 G3 G4 → G1 G4 G3 G2`
    Rule2,
}

impl SwapRule {
    /// The pairs of positions exchanged within a block of `len` registers.
    pub fn exchanges(self, len: usize) -> impl Iterator<Item = (usize, usize)> {
        let q = len / 4;
        let partner = match self {
            SwapRule::Rule1 => 2 * q,
            SwapRule::Rule2 => 3 * q,
        };
        (0..q).map(move |i| (q + i, partner + i))
    }

    /// Applies the rule to a sequence of group contents.
    pub fn apply<T>(self, items: &mut [T]) {
        for (a, b) in self.exchanges(items.len()) {
            items.swap(a, b);
        }
    }
}

/// Four contiguous equal groups of a block of registers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPartition {
    pub groups: [Range<usize>; 4],
}

impl GroupPartition {
    pub fn new(start: usize, len: usize) -> Result<Self> {
        if len < 4 || !len.is_power_of_two() {
            return Err(Error::InvalidRegisterCount(len));
        }
        let q = len / 4;
        Ok(GroupPartition {
            groups: [0, 1, 2, 3].map(|g| start + g * q..start + (g + 1) * q),
        })
    }
}

/// `U4` alone: four registers, two ancillas, no final tests.
pub fn build_u4(width: usize) -> Result<(CircuitIR, LayoutPlan)> {
    build_un(4, width, None)
}

/// Builds `Uₙ` for `n = 2^k ≥ 4` registers of `width` qubits, followed by
/// `n/2` swap tests of `final_variant` (none when `None`).
pub fn build_un(
    n: usize,
    width: usize,
    final_variant: Option<SwapTestVariant>,
) -> Result<(CircuitIR, LayoutPlan)> {
    if n < 4 || !n.is_power_of_two() {
        return Err(Error::InvalidRegisterCount(n));
    }
    if width == 0 {
        return Err(Error::Config("register width must be at least 1".into()));
    }
    let k = n.trailing_zeros() as usize;
    let levels = k - 1;
    let mut circuit = CircuitIR::new();
    let ancillas: Vec<usize> = circuit.add_qubits(Role::Ancilla, 2 * levels).collect();
    let registers: Vec<Range<usize>> = (0..n).map(|_| circuit.add_qubits(Role::Data, width)).collect();

    for &a in &ancillas {
        circuit.push(Gate::H(a))?;
    }
    let mut ancilla_roles = Vec::with_capacity(ancillas.len());
    for level in 0..levels {
        let block = n >> level;
        let rule2 = ancillas[2 * level];
        let rule1 = ancillas[2 * level + 1];
        ancilla_roles.push(format!("level {} rule 2 (G2<->G4, blocks of {block})", level + 1));
        ancilla_roles.push(format!("level {} rule 1 (G2<->G3, blocks of {block})", level + 1));
        for (rule, control) in [(SwapRule::Rule1, rule1), (SwapRule::Rule2, rule2)] {
            for start in (0..n).step_by(block) {
                GroupPartition::new(start, block)?;
                for (a, b) in rule.exchanges(block) {
                    cswap_registers(&mut circuit, control, &registers[start + a], &registers[start + b])?;
                }
            }
        }
    }
    let network_len = circuit.gates().len();

    let ancilla_labels: Vec<String> = (1..=ancillas.len()).map(|i| format!("s{i}")).collect();
    for (&q, label) in ancillas.iter().zip(&ancilla_labels) {
        circuit.measure(q, label.clone())?;
    }

    let slots: Vec<(usize, usize)> = (0..n / 2).map(|i| (2 * i, 2 * i + 1)).collect();
    let mut readouts = Vec::new();
    if let Some(variant) = final_variant {
        for (i, &(a, b)) in slots.iter().enumerate() {
            let ra: Vec<usize> = registers[a].clone().collect();
            let rb: Vec<usize> = registers[b].clone().collect();
            readouts.push(append_swap_test(&mut circuit, variant, &ra, &rb, &format!("r{}", i + 1))?);
        }
    }

    let plan = LayoutPlan {
        scheme: Scheme::New,
        n,
        k,
        width,
        ancillas,
        ancilla_labels,
        ancilla_roles,
        registers,
        slots,
        final_variant,
        readouts,
        network_len,
    };
    Ok((circuit, plan))
}

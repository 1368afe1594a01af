//! The baseline multi-state construction with three ancillas per level and a
//! single tested slot `(q1, q2)`.
//!
//! Its `U4` block over registers `(p1, p2, p3, p4)` and ancillas `(t1, t2, t3)`
//! applies `CSWAP(t1; p1, p3)`, `CSWAP(t2; p1, p4)`, `CSWAP(t3; p2, p3)` in that
//! order. `Uₙ` runs `U_{n/2}` on both halves (the two halves share the ancillas
//! of each level) and then a `U4` on the lead registers
//! `(q1, q2, q_{n/2+1}, q_{n/2+2})` with three fresh ancillas.

use std::ops::Range;

use crate::circuit::{CircuitIR, Gate, Role};
use crate::error::{Error, Result};
use crate::layout::{cswap_registers, LayoutPlan, Scheme};
use crate::permutation::{derive_permutation_table, pair_coverage_map, CoverageMap};
use crate::swap_test::{append_swap_test, SwapTestVariant};

pub type SanLayout = LayoutPlan;

/// `(ancilla offset, register a, register b)` within one `U4` block.
const U4_WIRING: [(usize, usize, usize); 3] = [(0, 0, 2), (1, 0, 3), (2, 1, 2)];

fn san_u4(
    circuit: &mut CircuitIR,
    registers: &[Range<usize>],
    positions: [usize; 4],
    triple: &[usize],
) -> Result<()> {
    for (t, a, b) in U4_WIRING {
        cswap_registers(circuit, triple[t], &registers[positions[a]], &registers[positions[b]])?;
    }
    Ok(())
}

fn san_block(
    circuit: &mut CircuitIR,
    registers: &[Range<usize>],
    ancillas: &[usize],
    start: usize,
    len: usize,
) -> Result<()> {
    if len == 4 {
        return san_u4(circuit, registers, [start, start + 1, start + 2, start + 3], &ancillas[0..3]);
    }
    let half = len / 2;
    san_block(circuit, registers, ancillas, start, half)?;
    san_block(circuit, registers, ancillas, start + half, half)?;
    let level = len.trailing_zeros() as usize - 2;
    san_u4(
        circuit,
        registers,
        [start, start + 1, start + half, start + half + 1],
        &ancillas[3 * level..3 * level + 3],
    )
}

/// `U4` alone: four registers, three ancillas, no final test.
pub fn build_san_u4(width: usize) -> Result<(CircuitIR, SanLayout)> {
    build_san_un(4, width, None)
}

pub fn build_san_un(
    n: usize,
    width: usize,
    final_variant: Option<SwapTestVariant>,
) -> Result<(CircuitIR, SanLayout)> {
    if n < 4 || !n.is_power_of_two() {
        return Err(Error::InvalidRegisterCount(n));
    }
    if width == 0 {
        return Err(Error::Config("register width must be at least 1".into()));
    }
    let k = n.trailing_zeros() as usize;
    let mut circuit = CircuitIR::new();
    let ancillas: Vec<usize> = circuit.add_qubits(Role::Ancilla, 3 * (k - 1)).collect();
    let registers: Vec<Range<usize>> = (0..n).map(|_| circuit.add_qubits(Role::Data, width)).collect();
    for &a in &ancillas {
        circuit.push(Gate::H(a))?;
    }
    san_block(&mut circuit, &registers, &ancillas, 0, n)?;
    let network_len = circuit.gates().len();

    let ancilla_labels: Vec<String> = (1..=ancillas.len()).map(|i| format!("s{i}")).collect();
    for (&q, label) in ancillas.iter().zip(&ancilla_labels) {
        circuit.measure(q, label.clone())?;
    }
    let ancilla_roles = (0..ancillas.len())
        .map(|i| {
            let (_, a, b) = U4_WIRING[i % 3];
            format!("level {} U4 swap of block registers {} and {}", i / 3 + 1, a + 1, b + 1)
        })
        .collect();

    let slots = vec![(0, 1)];
    let mut readouts = Vec::new();
    if let Some(variant) = final_variant {
        let ra: Vec<usize> = registers[0].clone().collect();
        let rb: Vec<usize> = registers[1].clone().collect();
        readouts.push(append_swap_test(&mut circuit, variant, &ra, &rb, "r1")?);
    }

    let plan = LayoutPlan {
        scheme: Scheme::San,
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

/// Pairs reachable at the single tested slot, with the outcomes that reach them.
pub fn san_pair_coverage(n: usize) -> Result<CoverageMap> {
    let (circuit, layout) = build_san_un(n, 1, None)?;
    let table = derive_permutation_table(&circuit, &layout)?;
    pair_coverage_map(&table, n)
}

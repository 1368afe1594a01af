//! Gate-level circuit representation and resource counting.

use std::ops::Range;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GateKind {
    H,
    X,
    Z,
    Cnot,
    Ccz,
    Swap,
    Cswap,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::H | GateKind::X | GateKind::Z => 1,
            GateKind::Cnot | GateKind::Swap => 2,
            GateKind::Ccz | GateKind::Cswap => 3,
        }
    }
}

/// A gate over qubit indices. Controls come first, then targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    H(usize),
    X(usize),
    Z(usize),
    Cnot { control: usize, target: usize },
    Ccz(usize, usize, usize),
    Swap(usize, usize),
    Cswap { control: usize, a: usize, b: usize },
}

impl Gate {
    pub fn kind(&self) -> GateKind {
        match self {
            Gate::H(_) => GateKind::H,
            Gate::X(_) => GateKind::X,
            Gate::Z(_) => GateKind::Z,
            Gate::Cnot { .. } => GateKind::Cnot,
            Gate::Ccz(..) => GateKind::Ccz,
            Gate::Swap(..) => GateKind::Swap,
            Gate::Cswap { .. } => GateKind::Cswap,
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::X(q) | Gate::Z(q) => vec![q],
            Gate::Cnot { control, target } => vec![control, target],
            Gate::Ccz(a, b, c) => vec![a, b, c],
            Gate::Swap(a, b) => vec![a, b],
            Gate::Cswap { control, a, b } => vec![control, a, b],
        }
    }

    /// Builds a gate from a kind and an ordered qubit list.
    pub fn from_parts(kind: GateKind, qubits: &[usize]) -> Result<Gate> {
        if qubits.len() != kind.arity() {
            return Err(Error::InvalidGate(format!(
                "{kind:?} takes {} qubits, got {}",
                kind.arity(),
                qubits.len()
            )));
        }
        let q = qubits;
        Ok(match kind {
            GateKind::H => Gate::H(q[0]),
            GateKind::X => Gate::X(q[0]),
            GateKind::Z => Gate::Z(q[0]),
            GateKind::Cnot => Gate::Cnot {
                control: q[0],
                target: q[1],
            },
            GateKind::Ccz => Gate::Ccz(q[0], q[1], q[2]),
            GateKind::Swap => Gate::Swap(q[0], q[1]),
            GateKind::Cswap => Gate::Cswap {
                control: q[0],
                a: q[1],
                b: q[2],
            },
        })
    }

    fn validate(&self, qubit_count: usize) -> Result<()> {
        let qs = self.qubits();
        for (i, &q) in qs.iter().enumerate() {
            if q >= qubit_count {
                return Err(Error::InvalidGate(format!(
                    "{:?} uses qubit {q} but the circuit has {qubit_count}",
                    self.kind()
                )));
            }
            if qs[..i].contains(&q) {
                return Err(Error::InvalidGate(format!(
                    "{:?} repeats qubit {q}",
                    self.kind()
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Ancilla,
    Data,
    Result,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measurement {
    pub qubit: usize,
    pub label: String,
}

/// An ordered gate list over indexed qubit lines, with a role per qubit and
/// terminal measurements in declaration order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CircuitIR {
    roles: Vec<Role>,
    gates: Vec<Gate>,
    measured: Vec<Measurement>,
}

impl CircuitIR {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends `count` qubit lines with `role` and returns their indices.
    pub fn add_qubits(&mut self, role: Role, count: usize) -> Range<usize> {
        let start = self.roles.len();
        self.roles.extend(std::iter::repeat_n(role, count));
        start..self.roles.len()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.qubit_count())?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn measure(&mut self, qubit: usize, label: impl Into<String>) -> Result<()> {
        let label = label.into();
        if qubit >= self.qubit_count() {
            return Err(Error::InvalidGate(format!(
                "measurement of qubit {qubit} outside the circuit"
            )));
        }
        if self.measured.iter().any(|m| m.label == label) {
            return Err(Error::DuplicateLabel(label));
        }
        if self.measured.iter().any(|m| m.qubit == qubit) {
            return Err(Error::InvalidGate(format!("qubit {qubit} measured twice")));
        }
        self.measured.push(Measurement { qubit, label });
        Ok(())
    }

    pub fn qubit_count(&self) -> usize {
        self.roles.len()
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn role(&self, qubit: usize) -> Role {
        self.roles[qubit]
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn measured(&self) -> &[Measurement] {
        &self.measured
    }

    pub fn labels(&self) -> Vec<String> {
        self.measured.iter().map(|m| m.label.clone()).collect()
    }

    /// A copy holding only the first `len` gates, with no measurements.
    pub fn truncated(&self, len: usize) -> CircuitIR {
        CircuitIR {
            roles: self.roles.clone(),
            gates: self.gates[..len].to_vec(),
            measured: Vec::new(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ResourceProfile {
    pub cswap_count: usize,
    pub ancilla_count: usize,
    pub gate_count_total: usize,
    pub qubit_count: usize,
}

pub fn count_resources(circuit: &CircuitIR) -> ResourceProfile {
    ResourceProfile {
        cswap_count: circuit
            .gates
            .iter()
            .filter(|g| g.kind() == GateKind::Cswap)
            .count(),
        ancilla_count: circuit.roles.iter().filter(|&&r| r == Role::Ancilla).count(),
        gate_count_total: circuit.gates.len(),
        qubit_count: circuit.qubit_count(),
    }
}

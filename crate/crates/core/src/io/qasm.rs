//! OpenQASM 2.0 export.

use std::fmt::Write as _;

use crate::circuit::{CircuitIR, Gate};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QasmOptions {
    /// Emit `cswap` directly. When false, each CSWAP becomes `cx; ccx; cx`.
    pub native_cswap: bool,
}

impl Default for QasmOptions {
    fn default() -> Self {
        QasmOptions { native_cswap: true }
    }
}

/// One `q` register, one `c` register in measurement order, gates in IR
/// order, then the terminal measurements. CCZ is written as `h; ccx; h`.
pub fn to_qasm(circuit: &CircuitIR, options: QasmOptions) -> String {
    let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    writeln!(out, "qreg q[{}];", circuit.qubit_count()).unwrap();
    let measured = circuit.measured();
    if !measured.is_empty() {
        writeln!(out, "creg c[{}];", measured.len()).unwrap();
    }
    for (i, m) in measured.iter().enumerate() {
        writeln!(out, "// c[{i}] = {}", m.label).unwrap();
    }
    for gate in circuit.gates() {
        match *gate {
            Gate::H(q) => writeln!(out, "h q[{q}];"),
            Gate::X(q) => writeln!(out, "x q[{q}];"),
            Gate::Z(q) => writeln!(out, "z q[{q}];"),
            Gate::Cnot { control, target } => writeln!(out, "cx q[{control}],q[{target}];"),
            Gate::Ccz(a, b, c) => writeln!(out, "h q[{c}];\nccx q[{a}],q[{b}],q[{c}];\nh q[{c}];"),
            Gate::Swap(a, b) => writeln!(out, "swap q[{a}],q[{b}];"),
            Gate::Cswap { control, a, b } if options.native_cswap => {
                writeln!(out, "cswap q[{control}],q[{a}],q[{b}];")
            }
            Gate::Cswap { control, a, b } => {
                writeln!(out, "cx q[{b}],q[{a}];\nccx q[{control}],q[{a}],q[{b}];\ncx q[{b}],q[{a}];")
            }
        }
        .unwrap();
    }
    for (i, m) in measured.iter().enumerate() {
        writeln!(out, "measure q[{}] -> c[{i}];", m.qubit).unwrap();
    }
    out
}

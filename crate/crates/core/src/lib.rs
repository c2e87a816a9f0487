//! Circuit synthesis for exponentials of Pauli-string operators.
//!
//! Given a weighted Pauli string `w·P`, [`synthesis::exp_pauli_term`] builds a
//! circuit over the gate set {H, S, S†, RZ, RX, CX, CZ} whose unitary is
//! exactly `e^{-i·t·w·P}`. Sums of such terms are handled by first-order
//! Trotter splitting in [`synthesis::trotter_circuit`]. Every construction can
//! be checked against the dense-matrix ground truth in [`oracle`].
//!
//! Conventions used throughout:
//!
//! * qubits are 0-based, and qubit 0 is the leftmost (most significant)
//!   tensor factor;
//! * `RZ(θ) = diag(e^{-iθ/2}, e^{iθ/2})`, `RX(θ) = e^{-iθX/2}`;
//! * `CX(a, b)` has control `a` and target `b`;
//! * circuits list gates in application order.

pub mod circuit;
pub mod cli;
pub mod oracle;
pub mod parser;
pub mod pauli;
pub mod qasm;
pub mod synthesis;

pub use circuit::{Gate, GateCounts, GateKind, QuantumCircuit};
pub use oracle::UnitaryMatrix;
pub use parser::{format_hamiltonian, parse_hamiltonian, ParseError};
pub use pauli::{Hamiltonian, PauliOp, PauliString, PauliTerm};
pub use qasm::{emit_qasm, QasmDocument};
pub use synthesis::{exp_pauli_term, synth_z_rotation, trotter_circuit, EvolutionParams, SynthVariant};

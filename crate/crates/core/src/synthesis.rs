//! Circuits for `e^{-i·t·w·P}` and first-order Trotter products.
//!
//! Every construction reduces the Pauli string to a single-qubit rotation with
//! a parity ladder: CNOTs fold the joint parity of the support onto one anchor
//! qubit, a rotation acts on the anchor, and the ladder is undone. Non-native
//! axes are reached by conjugating individual qubits:
//!
//! * `H·Z·H = X`, so an H on both sides swaps the Z and X axes;
//! * `S·X·S† = Y`, so `S†` before and `S` after (application order) turns an
//!   X axis into Y.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::circuit::{CircuitError, Gate, QuantumCircuit};
use crate::pauli::{Hamiltonian, PauliOp, PauliTerm};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SynthError {
    #[error("empty support; identity strings have no ladder")]
    EmptySupport,
    #[error("support must be strictly ascending")]
    UnsortedSupport,
    #[error("evolution time must be finite, got {0}")]
    NonFiniteTime(f64),
    #[error("Trotter repetitions must be at least 1")]
    ZeroReps,
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// Which parity ladder the synthesis starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SynthVariant {
    /// Z-parity ladder with RZ; X and Y reached through H and S†H / HS wraps.
    #[default]
    ZLadder,
    /// X-parity ladder with RX; Z reached through H wraps, Y through S†/S.
    XLadder,
    /// X-parity ladder over the X/Y qubits with Z qubits folded in by CZ.
    /// Uses no Hadamards at all.
    Mixed,
}

impl SynthVariant {
    pub const ALL: [SynthVariant; 3] = [SynthVariant::ZLadder, SynthVariant::XLadder, SynthVariant::Mixed];

    pub fn name(self) -> &'static str {
        match self {
            SynthVariant::ZLadder => "z-ladder",
            SynthVariant::XLadder => "x-ladder",
            SynthVariant::Mixed => "mixed",
        }
    }
}

impl fmt::Display for SynthVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SynthVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SynthVariant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| format!("unknown variant {s:?}; expected z-ladder, x-ladder or mixed"))
    }
}

/// Total evolution time and number of Trotter slices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionParams {
    t: f64,
    reps: usize,
}

impl EvolutionParams {
    pub fn new(t: f64, reps: usize) -> Result<Self, SynthError> {
        if !t.is_finite() {
            return Err(SynthError::NonFiniteTime(t));
        }
        if reps == 0 {
            return Err(SynthError::ZeroReps);
        }
        Ok(EvolutionParams { t, reps })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn reps(&self) -> usize {
        self.reps
    }
}

fn check_support(n_qubits: usize, support: &[usize]) -> Result<(), SynthError> {
    if support.is_empty() {
        return Err(SynthError::EmptySupport);
    }
    if support.windows(2).any(|w| w[0] >= w[1]) {
        return Err(SynthError::UnsortedSupport);
    }
    if let Some(&qubit) = support.last().filter(|&&q| q >= n_qubits) {
        return Err(CircuitError::QubitOutOfRange { qubit, n_qubits }.into());
    }
    Ok(())
}

/// CNOT ladder realizing `e^{-i·(theta/2)·Z_support}`.
///
/// For support `q_1 < … < q_k` the gates are `CX(q_k, q_{k-1}), …,
/// CX(q_2, q_1), RZ(q_1, theta)` followed by the CNOTs in mirrored order.
pub fn synth_z_rotation(n_qubits: usize, support: &[usize], theta: f64) -> Result<QuantumCircuit, SynthError> {
    check_support(n_qubits, support)?;
    let mut c = QuantumCircuit::new(n_qubits)?;
    push_z_ladder(&mut c, support, theta)?;
    Ok(c)
}

fn push_z_ladder(c: &mut QuantumCircuit, support: &[usize], theta: f64) -> Result<(), CircuitError> {
    let ladder: Vec<Gate> = support.windows(2).map(|w| Gate::cx(w[1], w[0])).rev().collect();
    for &g in &ladder {
        c.push(g)?;
    }
    c.push(Gate::Rz(support[0], theta))?;
    for &g in ladder.iter().rev() {
        c.push(g)?;
    }
    Ok(())
}

/// X-parity ladder for `e^{-i·(theta/2)·X_support}`, optionally with Z
/// factors on `z_qubits` attached through CZ gates to the anchor.
///
/// `CX(a, b)` maps `X_a` to `X_a·X_b` under conjugation and `CZ(a, z)` maps
/// `X_a` to `X_a·Z_z`, so the anchor rotation `RX(a)` spreads to the whole
/// string.
fn push_x_ladder(
    c: &mut QuantumCircuit,
    support: &[usize],
    z_qubits: &[usize],
    theta: f64,
) -> Result<(), CircuitError> {
    let anchor = support[0];
    let mut ladder: Vec<Gate> = support.windows(2).map(|w| Gate::cx(w[0], w[1])).rev().collect();
    ladder.extend(z_qubits.iter().map(|&z| Gate::Cz(anchor, z)));
    for &g in &ladder {
        c.push(g)?;
    }
    c.push(Gate::Rx(anchor, theta))?;
    for &g in ladder.iter().rev() {
        c.push(g)?;
    }
    Ok(())
}

type GateCtor = fn(usize) -> Gate;

/// Single-qubit gates placed before and after the ladder on one qubit.
fn basis_change(variant: SynthVariant, op: PauliOp) -> (&'static [GateCtor], &'static [GateCtor]) {
    const NONE: &[GateCtor] = &[];
    const H: &[GateCtor] = &[Gate::H];
    const SDG: &[GateCtor] = &[Gate::Sdg];
    const S: &[GateCtor] = &[Gate::S];
    const SDG_H: &[GateCtor] = &[Gate::Sdg, Gate::H];
    const H_S: &[GateCtor] = &[Gate::H, Gate::S];
    match (variant, op) {
        (_, PauliOp::I) => (NONE, NONE),
        (SynthVariant::ZLadder, PauliOp::Z) => (NONE, NONE),
        (SynthVariant::ZLadder, PauliOp::X) => (H, H),
        (SynthVariant::ZLadder, PauliOp::Y) => (SDG_H, H_S),
        (SynthVariant::XLadder, PauliOp::X) => (NONE, NONE),
        (SynthVariant::XLadder, PauliOp::Z) => (H, H),
        (SynthVariant::XLadder, PauliOp::Y) => (SDG, S),
        (SynthVariant::Mixed, PauliOp::X | PauliOp::Z) => (NONE, NONE),
        (SynthVariant::Mixed, PauliOp::Y) => (SDG, S),
    }
}

/// Circuit whose unitary is exactly `e^{-i·t·w·P}` for `term = w·P`.
///
/// Identity strings give an empty circuit with global phase `-t·w`. The three
/// variants produce different gate sequences for the same unitary.
pub fn exp_pauli_term(term: &PauliTerm, t: f64, variant: SynthVariant) -> Result<QuantumCircuit, SynthError> {
    if !t.is_finite() {
        return Err(SynthError::NonFiniteTime(t));
    }
    let string = term.string();
    let n = string.n_qubits();
    let angle = t * term.coefficient();
    let mut c = QuantumCircuit::new(n)?;
    let support = string.support();
    if support.is_empty() {
        c.set_global_phase(-angle);
        return Ok(c);
    }
    let theta = 2.0 * angle;

    let ops = string.ops();
    for &q in &support {
        for make in basis_change(variant, ops[q]).0 {
            c.push(make(q))?;
        }
    }

    match variant {
        SynthVariant::ZLadder => push_z_ladder(&mut c, &support, theta)?,
        SynthVariant::XLadder => push_x_ladder(&mut c, &support, &[], theta)?,
        SynthVariant::Mixed => {
            let (x_like, z_like): (Vec<usize>, Vec<usize>) = support.iter().partition(|&&q| ops[q] != PauliOp::Z);
            if x_like.is_empty() {
                push_z_ladder(&mut c, &z_like, theta)?;
            } else {
                push_x_ladder(&mut c, &x_like, &z_like, theta)?;
            }
        }
    }

    for &q in &support {
        for make in basis_change(variant, ops[q]).1 {
            c.push(make(q))?;
        }
    }
    Ok(c)
}

/// First-order Trotter circuit for `e^{-i·t·H}`.
///
/// Each of the `reps` slices applies `exp_pauli_term(term, t/reps)` for every
/// term in stored order. With `compact`, adjacent inverse gates across term
/// boundaries are cancelled and rotations merged.
pub fn trotter_circuit(
    h: &Hamiltonian,
    params: EvolutionParams,
    variant: SynthVariant,
    compact: bool,
) -> Result<QuantumCircuit, SynthError> {
    let dt = params.t / params.reps as f64;
    let slice = h
        .terms()
        .iter()
        .map(|term| exp_pauli_term(term, dt, variant))
        .collect::<Result<Vec<_>, _>>()?;
    let mut c = QuantumCircuit::new(h.n_qubits())?;
    for _ in 0..params.reps {
        for part in &slice {
            c.extend(part)?;
        }
    }
    Ok(if compact { c.cancel_adjacent() } else { c })
}

//! Gate-level circuit representation and structural passes.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CircuitError {
    #[error("qubit {qubit} out of range for a {n_qubits}-qubit circuit")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("two-qubit gate acts twice on qubit {0}")]
    RepeatedQubit(usize),
    #[error("rotation angle must be finite, got {0}")]
    NonFiniteAngle(f64),
    #[error("circuit must have at least one qubit")]
    NoQubits,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    H,
    S,
    Sdg,
    Rz,
    Rx,
    Cx,
    Cz,
}

impl GateKind {
    pub const ALL: [GateKind; 7] = [
        GateKind::H,
        GateKind::S,
        GateKind::Sdg,
        GateKind::Rz,
        GateKind::Rx,
        GateKind::Cx,
        GateKind::Cz,
    ];

    /// Lower-case OpenQASM mnemonic.
    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::Rz => "rz",
            GateKind::Rx => "rx",
            GateKind::Cx => "cx",
            GateKind::Cz => "cz",
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A gate from the fixed alphabet. Rotation angles are in radians with
/// `RZ(θ) = diag(e^{-iθ/2}, e^{iθ/2})` and `RX(θ) = e^{-iθX/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    H(usize),
    S(usize),
    Sdg(usize),
    Rz(usize, f64),
    Rx(usize, f64),
    Cx { control: usize, target: usize },
    Cz(usize, usize),
}

impl Gate {
    pub fn cx(control: usize, target: usize) -> Gate {
        Gate::Cx { control, target }
    }

    pub fn kind(&self) -> GateKind {
        match self {
            Gate::H(_) => GateKind::H,
            Gate::S(_) => GateKind::S,
            Gate::Sdg(_) => GateKind::Sdg,
            Gate::Rz(..) => GateKind::Rz,
            Gate::Rx(..) => GateKind::Rx,
            Gate::Cx { .. } => GateKind::Cx,
            Gate::Cz(..) => GateKind::Cz,
        }
    }

    /// Qubits in gate order: `[q]`, `[control, target]` or the CZ pair.
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::S(q) | Gate::Sdg(q) | Gate::Rz(q, _) | Gate::Rx(q, _) => vec![q],
            Gate::Cx { control, target } => vec![control, target],
            Gate::Cz(a, b) => vec![a, b],
        }
    }

    pub fn touches(&self, qubit: usize) -> bool {
        self.qubits().contains(&qubit)
    }

    pub fn angle(&self) -> Option<f64> {
        match *self {
            Gate::Rz(_, theta) | Gate::Rx(_, theta) => Some(theta),
            _ => None,
        }
    }

    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::S(q) => Gate::Sdg(q),
            Gate::Sdg(q) => Gate::S(q),
            Gate::Rz(q, theta) => Gate::Rz(q, -theta),
            Gate::Rx(q, theta) => Gate::Rx(q, -theta),
            g => g,
        }
    }

    fn validate(&self, n_qubits: usize) -> Result<(), CircuitError> {
        let qubits = self.qubits();
        if let Some(&qubit) = qubits.iter().find(|&&q| q >= n_qubits) {
            return Err(CircuitError::QubitOutOfRange { qubit, n_qubits });
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(CircuitError::RepeatedQubit(qubits[0]));
        }
        match self.angle() {
            Some(theta) if !theta.is_finite() => Err(CircuitError::NonFiniteAngle(theta)),
            _ => Ok(()),
        }
    }

    /// True when `self` followed by `other` is the identity and both act on
    /// the same qubits.
    fn cancels_with(&self, other: &Gate) -> bool {
        match (*self, *other) {
            (Gate::H(a), Gate::H(b)) => a == b,
            (Gate::S(a), Gate::Sdg(b)) | (Gate::Sdg(a), Gate::S(b)) => a == b,
            (
                Gate::Cx {
                    control: c1,
                    target: t1,
                },
                Gate::Cx {
                    control: c2,
                    target: t2,
                },
            ) => c1 == c2 && t1 == t2,
            (Gate::Cz(a1, b1), Gate::Cz(a2, b2)) => (a1 == a2 && b1 == b2) || (a1 == b2 && b1 == a2),
            _ => false,
        }
    }

    /// Merged rotation for two same-axis rotations on one qubit.
    fn merge_rotation(&self, other: &Gate) -> Option<Gate> {
        match (*self, *other) {
            (Gate::Rz(a, x), Gate::Rz(b, y)) if a == b => Some(Gate::Rz(a, x + y)),
            (Gate::Rx(a, x), Gate::Rx(b, y)) if a == b => Some(Gate::Rx(a, x + y)),
            _ => None,
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::Rz(q, theta) | Gate::Rx(q, theta) => write!(f, "{}({theta}) q{q}", self.kind()),
            Gate::Cx { control, target } => write!(f, "cx q{control},q{target}"),
            Gate::Cz(a, b) => write!(f, "cz q{a},q{b}"),
            Gate::H(q) | Gate::S(q) | Gate::Sdg(q) => write!(f, "{} q{q}", self.kind()),
        }
    }
}

/// Ordered gate list on `n_qubits` qubits plus a global phase.
///
/// The represented unitary is `e^{i·global_phase}·G_m···G_2·G_1` where `G_1`
/// is the first gate in the list.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumCircuit {
    n_qubits: usize,
    gates: Vec<Gate>,
    global_phase: f64,
}

impl QuantumCircuit {
    pub fn new(n_qubits: usize) -> Result<Self, CircuitError> {
        if n_qubits == 0 {
            return Err(CircuitError::NoQubits);
        }
        Ok(QuantumCircuit {
            n_qubits,
            gates: Vec::new(),
            global_phase: 0.0,
        })
    }

    pub fn from_gates(n_qubits: usize, gates: impl IntoIterator<Item = Gate>) -> Result<Self, CircuitError> {
        let mut c = QuantumCircuit::new(n_qubits)?;
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn global_phase(&self) -> f64 {
        self.global_phase
    }

    pub fn set_global_phase(&mut self, phase: f64) {
        self.global_phase = phase;
    }

    pub fn push(&mut self, gate: Gate) -> Result<(), CircuitError> {
        gate.validate(self.n_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    /// Returns a copy of `self` with `gate` appended.
    pub fn append(&self, gate: Gate) -> Result<Self, CircuitError> {
        let mut out = self.clone();
        out.push(gate)?;
        Ok(out)
    }

    /// Appends every gate of `other` and adds its global phase.
    pub fn extend(&mut self, other: &QuantumCircuit) -> Result<(), CircuitError> {
        for g in &other.gates {
            self.push(*g)?;
        }
        self.global_phase += other.global_phase;
        Ok(())
    }

    /// Inverse circuit: reversed order, each gate inverted, phase negated.
    pub fn dagger(&self) -> QuantumCircuit {
        QuantumCircuit {
            n_qubits: self.n_qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
            global_phase: -self.global_phase,
        }
    }

    pub fn gate_counts(&self) -> GateCounts {
        let mut counts = GateCounts::default();
        for g in &self.gates {
            counts.counts[g.kind() as usize] += 1;
        }
        counts
    }

    /// Peephole pass removing adjacent inverse pairs and merging adjacent
    /// same-axis rotations, iterated to a fixed point.
    ///
    /// Two gates are adjacent when no gate between them touches any of their
    /// qubits. A merged rotation is dropped only when its angle is exactly
    /// zero.
    pub fn cancel_adjacent(&self) -> QuantumCircuit {
        let mut slots: Vec<Option<Gate>> = self.gates.iter().copied().map(Some).collect();
        loop {
            let mut changed = false;
            for i in 0..slots.len() {
                let Some(first) = slots[i] else { continue };
                let qubits = first.qubits();
                let Some(j) =
                    (i + 1..slots.len()).find(|&j| slots[j].is_some_and(|g| qubits.iter().any(|&q| g.touches(q))))
                else {
                    continue;
                };
                let second = slots[j].unwrap();
                if first.cancels_with(&second) {
                    slots[i] = None;
                    slots[j] = None;
                    changed = true;
                } else if let Some(merged) = first.merge_rotation(&second) {
                    slots[i] = None;
                    slots[j] = if merged.angle() == Some(0.0) {
                        None
                    } else {
                        Some(merged)
                    };
                    changed = true;
                }
            }
            if !changed {
                break;
            }
            slots.retain(Option::is_some);
        }
        QuantumCircuit {
            n_qubits: self.n_qubits,
            gates: slots.into_iter().flatten().collect(),
            global_phase: self.global_phase,
        }
    }
}

/// Histogram of gates by kind.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GateCounts {
    counts: [usize; 7],
}

impl GateCounts {
    pub fn get(&self, kind: GateKind) -> usize {
        self.counts[kind as usize]
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// `(kind, count)` pairs in declaration order, zeros included.
    pub fn iter(&self) -> impl Iterator<Item = (GateKind, usize)> + '_ {
        GateKind::ALL.iter().map(|&k| (k, self.get(k)))
    }
}

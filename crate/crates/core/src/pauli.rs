//! Pauli operators, strings, weighted terms and Hamiltonians.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PauliError {
    #[error("empty Pauli label")]
    EmptyLabel,
    #[error("invalid Pauli character {found:?} at position {position}")]
    InvalidChar { position: usize, found: char },
    #[error("coefficient must be finite, got {0}")]
    NonFiniteCoefficient(f64),
    #[error("Hamiltonian must act on at least one qubit")]
    NoQubits,
    #[error("term {index} acts on {found} qubits, expected {expected}")]
    LengthMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
}

/// Single-qubit Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PauliOp {
    I,
    X,
    Y,
    Z,
}

impl PauliOp {
    pub const ALL: [PauliOp; 4] = [PauliOp::I, PauliOp::X, PauliOp::Y, PauliOp::Z];

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(PauliOp::I),
            'X' => Some(PauliOp::X),
            'Y' => Some(PauliOp::Y),
            'Z' => Some(PauliOp::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            PauliOp::I => 'I',
            PauliOp::X => 'X',
            PauliOp::Y => 'Y',
            PauliOp::Z => 'Z',
        }
    }

    pub fn is_identity(self) -> bool {
        self == PauliOp::I
    }
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Dense assignment of a Pauli operator to each of `n ≥ 1` qubits.
///
/// Index `k` holds the operator on qubit `k`. Identity entries are stored
/// explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    ops: Vec<PauliOp>,
}

impl PauliString {
    pub fn new(ops: Vec<PauliOp>) -> Result<Self, PauliError> {
        if ops.is_empty() {
            return Err(PauliError::EmptyLabel);
        }
        Ok(PauliString { ops })
    }

    pub fn identity(n_qubits: usize) -> Result<Self, PauliError> {
        PauliString::new(vec![PauliOp::I; n_qubits])
    }

    /// Parses a dense label such as `"IXZY"`; character `k` is qubit `k`.
    pub fn from_dense(label: &str) -> Result<Self, PauliError> {
        let ops = label
            .chars()
            .enumerate()
            .map(|(position, c)| PauliOp::from_char(c).ok_or(PauliError::InvalidChar { position, found: c }))
            .collect::<Result<Vec<_>, _>>()?;
        PauliString::new(ops)
    }

    pub fn n_qubits(&self) -> usize {
        self.ops.len()
    }

    pub fn ops(&self) -> &[PauliOp] {
        &self.ops
    }

    pub fn get(&self, qubit: usize) -> Option<PauliOp> {
        self.ops.get(qubit).copied()
    }

    /// Number of non-identity factors.
    pub fn weight(&self) -> usize {
        self.ops.iter().filter(|op| !op.is_identity()).count()
    }

    /// Ascending indices of the non-identity factors.
    pub fn support(&self) -> Vec<usize> {
        self.ops
            .iter()
            .enumerate()
            .filter(|(_, op)| !op.is_identity())
            .map(|(k, _)| k)
            .collect()
    }

    pub fn count(&self, op: PauliOp) -> usize {
        self.ops.iter().filter(|&&o| o == op).count()
    }

    pub fn to_dense(&self) -> String {
        self.ops.iter().map(|op| op.as_char()).collect()
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dense())
    }
}

impl FromStr for PauliString {
    type Err = PauliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PauliString::from_dense(s)
    }
}

/// Shorthand for [`PauliString::from_dense`].
pub fn pauli_string_from_dense(label: &str) -> Result<PauliString, PauliError> {
    PauliString::from_dense(label)
}

/// A real-weighted Pauli string `coefficient · string`.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    coefficient: f64,
    string: PauliString,
}

impl PauliTerm {
    pub fn new(coefficient: f64, string: PauliString) -> Result<Self, PauliError> {
        if !coefficient.is_finite() {
            return Err(PauliError::NonFiniteCoefficient(coefficient));
        }
        Ok(PauliTerm { coefficient, string })
    }

    pub fn unit(string: PauliString) -> Self {
        PauliTerm {
            coefficient: 1.0,
            string,
        }
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    pub fn string(&self) -> &PauliString {
        &self.string
    }

    pub fn n_qubits(&self) -> usize {
        self.string.n_qubits()
    }
}

/// Ordered sum of Pauli terms on a fixed number of qubits.
///
/// Term order is significant: Trotter products follow it exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian {
    n_qubits: usize,
    terms: Vec<PauliTerm>,
}

impl Hamiltonian {
    pub fn new(n_qubits: usize, terms: Vec<PauliTerm>) -> Result<Self, PauliError> {
        if n_qubits == 0 {
            return Err(PauliError::NoQubits);
        }
        if let Some((index, term)) = terms.iter().enumerate().find(|(_, t)| t.n_qubits() != n_qubits) {
            return Err(PauliError::LengthMismatch {
                index,
                expected: n_qubits,
                found: term.n_qubits(),
            });
        }
        Ok(Hamiltonian { n_qubits, terms })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

//! Dense-matrix ground truth for small circuits.
//!
//! Qubit 0 is the leftmost Kronecker factor, i.e. the most significant bit of
//! a basis-state index.

use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;
use thiserror::Error;

use crate::circuit::{Gate, QuantumCircuit};
use crate::pauli::{Hamiltonian, PauliOp, PauliString};

/// Largest qubit count for Kronecker-built matrices.
pub const MAX_DENSE_QUBITS: usize = 12;
/// Largest qubit count accepted by [`matrix_exponential`].
pub const MAX_EXPM_QUBITS: usize = 8;
/// Hermiticity tolerance for [`matrix_exponential`] inputs.
pub const HERMITIAN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("{n_qubits} qubits exceeds the dense-matrix cap of {cap}")]
    TooManyQubits { n_qubits: usize, cap: usize },
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("dimension {0} is not a power of two")]
    BadDimension(usize),
}

fn check_cap(n_qubits: usize, cap: usize) -> Result<(), OracleError> {
    if n_qubits > cap {
        Err(OracleError::TooManyQubits { n_qubits, cap })
    } else {
        Ok(())
    }
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Square complex matrix of dimension `2^n`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl UnitaryMatrix {
    pub fn zeros(dim: usize) -> Self {
        UnitaryMatrix {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = UnitaryMatrix::zeros(dim);
        for k in 0..dim {
            m[(k, k)] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries; `dim` must be a power of two.
    pub fn from_rows(dim: usize, data: Vec<Complex64>) -> Result<Self, OracleError> {
        if !dim.is_power_of_two() {
            return Err(OracleError::BadDimension(dim));
        }
        if data.len() != dim * dim {
            return Err(OracleError::DimMismatch(data.len(), dim * dim));
        }
        Ok(UnitaryMatrix { dim, data })
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let mut m = UnitaryMatrix::zeros(entries.len());
        for (k, &v) in entries.iter().enumerate() {
            m[(k, k)] = v;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_qubits(&self) -> usize {
        self.dim.trailing_zeros() as usize
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let mut out = UnitaryMatrix::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out[(c, r)] = self[(r, c)].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        UnitaryMatrix {
            dim: self.dim,
            data: self.data.iter().map(|&v| v * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        UnitaryMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = UnitaryMatrix::zeros(n);
        for r in 0..n {
            let row = &self.data[r * n..(r + 1) * n];
            let dst = &mut out.data[r * n..(r + 1) * n];
            for (k, &a) in row.iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                let src = &other.data[k * n..(k + 1) * n];
                for (d, &b) in dst.iter_mut().zip(src) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|k| self[(k, k)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest absolute entry.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Plain Frobenius distance `‖a − b‖_F`.
    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `‖U†U − I‖_F`.
    pub fn unitarity_error(&self) -> f64 {
        self.adjoint()
            .matmul(self)
            .frobenius_distance(&UnitaryMatrix::identity(self.dim))
    }

    /// Largest entry of `M − M†`.
    pub fn hermiticity_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..self.dim {
            for c in r..self.dim {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// Left-multiplies by a single-qubit gate `[[a, b], [c, d]]` on `qubit`.
    fn apply_1q(&mut self, n_qubits: usize, qubit: usize, u: [[Complex64; 2]; 2]) {
        let mask = 1usize << (n_qubits - 1 - qubit);
        let n = self.dim;
        for r0 in (0..n).filter(|r| r & mask == 0) {
            let r1 = r0 | mask;
            for c in 0..n {
                let x0 = self.data[r0 * n + c];
                let x1 = self.data[r1 * n + c];
                self.data[r0 * n + c] = u[0][0] * x0 + u[0][1] * x1;
                self.data[r1 * n + c] = u[1][0] * x0 + u[1][1] * x1;
            }
        }
    }

    fn apply_cx(&mut self, n_qubits: usize, control: usize, target: usize) {
        let cmask = 1usize << (n_qubits - 1 - control);
        let tmask = 1usize << (n_qubits - 1 - target);
        let n = self.dim;
        for r in (0..n).filter(|r| r & cmask != 0 && r & tmask == 0) {
            let s = r | tmask;
            for c in 0..n {
                self.data.swap(r * n + c, s * n + c);
            }
        }
    }

    fn apply_cz(&mut self, n_qubits: usize, a: usize, b: usize) {
        let mask = (1usize << (n_qubits - 1 - a)) | (1usize << (n_qubits - 1 - b));
        let n = self.dim;
        for r in (0..n).filter(|r| r & mask == mask) {
            for v in &mut self.data[r * n..(r + 1) * n] {
                *v = -*v;
            }
        }
    }
}

impl Index<(usize, usize)> for UnitaryMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for UnitaryMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.dim + c]
    }
}

impl Mul for &UnitaryMatrix {
    type Output = UnitaryMatrix;

    fn mul(self, rhs: &UnitaryMatrix) -> UnitaryMatrix {
        self.matmul(rhs)
    }
}

/// 2×2 matrix of a single-qubit Pauli operator.
pub fn pauli_2x2(op: PauliOp) -> [[Complex64; 2]; 2] {
    match op {
        PauliOp::I => [[ONE, ZERO], [ZERO, ONE]],
        PauliOp::X => [[ZERO, ONE], [ONE, ZERO]],
        PauliOp::Y => [[ZERO, -I], [I, ZERO]],
        PauliOp::Z => [[ONE, ZERO], [ZERO, -ONE]],
    }
}

/// Dense matrix of a Pauli string.
///
/// Each row of a Pauli tensor product has a single non-zero entry, so the
/// matrix is filled directly rather than through repeated Kronecker products.
pub fn pauli_matrix(p: &PauliString) -> Result<UnitaryMatrix, OracleError> {
    let n = p.n_qubits();
    check_cap(n, MAX_DENSE_QUBITS)?;
    let dim = 1usize << n;
    let mut m = UnitaryMatrix::zeros(dim);
    for row in 0..dim {
        let mut col = row;
        let mut value = ONE;
        for (k, &op) in p.ops().iter().enumerate() {
            let shift = n - 1 - k;
            let bit = (row >> shift) & 1;
            let u = pauli_2x2(op);
            // the unique non-zero column in this row of the 2×2 factor
            let c = if u[bit][0] != ZERO { 0 } else { 1 };
            value *= u[bit][c];
            col = (col & !(1 << shift)) | (c << shift);
        }
        m[(row, col)] = value;
    }
    Ok(m)
}

/// `e^{-i·t·P} = cos t·I − i·sin t·P`, valid because `P² = I`.
pub fn exp_pauli_closed_form(p: &PauliString, t: f64) -> Result<UnitaryMatrix, OracleError> {
    let pm = pauli_matrix(p)?;
    let dim = pm.dim();
    Ok(UnitaryMatrix::identity(dim)
        .scale(Complex64::new(t.cos(), 0.0))
        .add(&pm.scale(Complex64::new(0.0, -t.sin()))))
}

fn gate_2x2(gate: &Gate) -> Option<(usize, [[Complex64; 2]; 2])> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let m = match *gate {
        Gate::H(q) => (q, [[ONE * h, ONE * h], [ONE * h, -ONE * h]]),
        Gate::S(q) => (q, [[ONE, ZERO], [ZERO, I]]),
        Gate::Sdg(q) => (q, [[ONE, ZERO], [ZERO, -I]]),
        Gate::Rz(q, theta) => (
            q,
            [
                [Complex64::from_polar(1.0, -theta / 2.0), ZERO],
                [ZERO, Complex64::from_polar(1.0, theta / 2.0)],
            ],
        ),
        Gate::Rx(q, theta) => {
            let c = Complex64::new((theta / 2.0).cos(), 0.0);
            let s = Complex64::new(0.0, -(theta / 2.0).sin());
            (q, [[c, s], [s, c]])
        }
        Gate::Cx { .. } | Gate::Cz(..) => return None,
    };
    Some(m)
}

/// Unitary of `c`, including its global phase.
pub fn circuit_unitary(c: &QuantumCircuit) -> Result<UnitaryMatrix, OracleError> {
    let n = c.n_qubits();
    check_cap(n, MAX_DENSE_QUBITS)?;
    let mut u = UnitaryMatrix::identity(1 << n);
    for gate in c.gates() {
        match *gate {
            Gate::Cx { control, target } => u.apply_cx(n, control, target),
            Gate::Cz(a, b) => u.apply_cz(n, a, b),
            ref g => {
                let (q, m) = gate_2x2(g).expect("single-qubit gate");
                u.apply_1q(n, q, m);
            }
        }
    }
    if c.global_phase() != 0.0 {
        u = u.scale(Complex64::from_polar(1.0, c.global_phase()));
    }
    Ok(u)
}

/// `Σ_k w_k·P_k` as a dense Hermitian matrix.
pub fn hamiltonian_matrix(h: &Hamiltonian) -> Result<UnitaryMatrix, OracleError> {
    check_cap(h.n_qubits(), MAX_DENSE_QUBITS)?;
    let mut m = UnitaryMatrix::zeros(1 << h.n_qubits());
    for term in h.terms() {
        let p = pauli_matrix(term.string())?;
        m = m.add(&p.scale(Complex64::new(term.coefficient(), 0.0)));
    }
    Ok(m)
}

const TAYLOR_MIN_TERMS: usize = 20;
const TAYLOR_MAX_TERMS: usize = 60;

/// `e^{-i·t·m}` for Hermitian `m` by scaling and squaring a truncated Taylor
/// series.
pub fn matrix_exponential(m: &UnitaryMatrix, t: f64) -> Result<UnitaryMatrix, OracleError> {
    check_cap(m.n_qubits(), MAX_EXPM_QUBITS)?;
    let herm = m.hermiticity_error();
    if herm > HERMITIAN_TOL {
        return Err(OracleError::NotHermitian(herm));
    }
    let dim = m.dim();
    let a = m.scale(Complex64::new(0.0, -t));
    let norm = a.frobenius_norm();
    let mut squarings = 0u32;
    while norm / 2f64.powi(squarings as i32) > 0.5 {
        squarings += 1;
    }
    let a = a.scale(Complex64::new(1.0 / 2f64.powi(squarings as i32), 0.0));

    let mut sum = UnitaryMatrix::identity(dim);
    let mut term = UnitaryMatrix::identity(dim);
    for k in 1..=TAYLOR_MAX_TERMS {
        term = term.matmul(&a).scale(Complex64::new(1.0 / k as f64, 0.0));
        sum = sum.add(&term);
        if k >= TAYLOR_MIN_TERMS && term.max_norm() < f64::EPSILON * 1e-3 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum.matmul(&sum);
    }
    Ok(sum)
}

/// `min_φ ‖a − e^{iφ}·b‖_F`.
///
/// The minimizing phase is `φ = arg tr(b†a)`; the distance is then evaluated
/// directly, which equals `sqrt(‖a‖² + ‖b‖² − 2|tr(b†a)|)` but does not lose
/// precision to cancellation when `a ≈ e^{iφ}b`.
pub fn phase_invariant_distance(a: &UnitaryMatrix, b: &UnitaryMatrix) -> Result<f64, OracleError> {
    if a.dim() != b.dim() {
        return Err(OracleError::DimMismatch(a.dim(), b.dim()));
    }
    // tr(b†a) = Σ conj(b_ij)·a_ij
    let overlap: Complex64 = b.as_slice().iter().zip(a.as_slice()).map(|(x, y)| x.conj() * y).sum();
    let phase = if overlap == ZERO {
        ONE
    } else {
        Complex64::from_polar(1.0, overlap.arg())
    };
    Ok(a.frobenius_distance(&b.scale(phase)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn p(label: &str) -> PauliString {
        label.parse().unwrap()
    }

    #[test]
    fn pauli_matrices() {
        assert_eq!(pauli_matrix(&p("Z")).unwrap(), UnitaryMatrix::diagonal(&[ONE, -ONE]));
        assert_eq!(pauli_matrix(&p("II")).unwrap(), UnitaryMatrix::identity(4));

        let xz = pauli_matrix(&p("XZ")).unwrap();
        let mut expected = UnitaryMatrix::zeros(4);
        expected[(0, 2)] = ONE;
        expected[(1, 3)] = -ONE;
        expected[(2, 0)] = ONE;
        expected[(3, 1)] = -ONE;
        assert_eq!(xz, expected);

        let y = pauli_matrix(&p("Y")).unwrap();
        assert_eq!(y[(0, 1)], -I);
        assert_eq!(y[(1, 0)], I);
    }

    #[test]
    fn size_caps() {
        let big = PauliString::identity(MAX_DENSE_QUBITS + 1).unwrap();
        assert!(matches!(pauli_matrix(&big), Err(OracleError::TooManyQubits { .. })));
        let c = QuantumCircuit::new(MAX_DENSE_QUBITS + 1).unwrap();
        assert!(matches!(circuit_unitary(&c), Err(OracleError::TooManyQubits { .. })));
        let m = UnitaryMatrix::identity(1 << (MAX_EXPM_QUBITS + 1));
        assert!(matches!(
            matrix_exponential(&m, 1.0),
            Err(OracleError::TooManyQubits { .. })
        ));
    }

    #[test]
    fn closed_form_zz_is_parity_diagonal() {
        let t = 0.37;
        let u = exp_pauli_closed_form(&p("ZZ"), t).unwrap();
        let minus = Complex64::from_polar(1.0, -t);
        let plus = Complex64::from_polar(1.0, t);
        let expected = UnitaryMatrix::diagonal(&[minus, plus, plus, minus]);
        assert!(u.frobenius_distance(&expected) < 1e-15);
        assert_eq!(
            exp_pauli_closed_form(&p("XYZ"), 0.0).unwrap(),
            UnitaryMatrix::identity(8)
        );
    }

    #[test]
    fn closed_form_xz_matches_sign_flipped_display() {
        // e^{+i·s·X⊗Z} written out entrywise, evaluated at s = -t
        let t: f64 = 0.9;
        let s: f64 = -t;
        let (co, si) = (s.cos(), s.sin());
        #[rustfmt::skip]
        let expected = UnitaryMatrix::from_rows(
            4,
            vec![
                c(co, 0.0), c(0.0, 0.0), c(0.0, si), c(0.0, 0.0),
                c(0.0, 0.0), c(co, 0.0), c(0.0, 0.0), c(0.0, -si),
                c(0.0, si), c(0.0, 0.0), c(co, 0.0), c(0.0, 0.0),
                c(0.0, 0.0), c(0.0, -si), c(0.0, 0.0), c(co, 0.0),
            ],
        )
        .unwrap();
        let u = exp_pauli_closed_form(&p("XZ"), t).unwrap();
        assert!(u.frobenius_distance(&expected) < 1e-15);
    }

    #[test]
    fn circuit_unitary_basics() {
        let empty = QuantumCircuit::new(2).unwrap();
        assert_eq!(circuit_unitary(&empty).unwrap(), UnitaryMatrix::identity(4));

        let t = 0.8;
        let rz = QuantumCircuit::from_gates(1, [Gate::Rz(0, 2.0 * t)]).unwrap();
        let expected = UnitaryMatrix::diagonal(&[Complex64::from_polar(1.0, -t), Complex64::from_polar(1.0, t)]);
        assert!(circuit_unitary(&rz).unwrap().frobenius_distance(&expected) < 1e-15);

        let mut phased = QuantumCircuit::new(1).unwrap();
        phased.set_global_phase(-t);
        let u = circuit_unitary(&phased).unwrap();
        assert!((u[(0, 0)] - Complex64::from_polar(1.0, -t)).norm() < 1e-15);
    }

    #[test]
    fn cx_orientation() {
        // control 0 (MSB), target 1: |10> -> |11>
        let cx = circuit_unitary(&QuantumCircuit::from_gates(2, [Gate::cx(0, 1)]).unwrap()).unwrap();
        assert_eq!(cx[(3, 2)], ONE);
        assert_eq!(cx[(2, 3)], ONE);
        assert_eq!(cx[(1, 1)], ONE);
        let cx = circuit_unitary(&QuantumCircuit::from_gates(2, [Gate::cx(1, 0)]).unwrap()).unwrap();
        assert_eq!(cx[(3, 1)], ONE);
        assert_eq!(cx[(2, 2)], ONE);
    }

    #[test]
    fn hamiltonian_matrix_sum() {
        let h = crate::parser::parse_hamiltonian("0.5*Z0 Z1 + 0.3*X0", 2).unwrap();
        let m = hamiltonian_matrix(&h).unwrap();
        assert_eq!(m[(0, 0)], c(0.5, 0.0));
        assert_eq!(m[(1, 1)], c(-0.5, 0.0));
        assert_eq!(m[(0, 2)], c(0.3, 0.0));
        assert_eq!(m[(3, 1)], c(0.3, 0.0));
        assert_eq!(m[(0, 1)], ZERO);
        assert_eq!(m.hermiticity_error(), 0.0);

        let empty = Hamiltonian::new(2, vec![]).unwrap();
        assert_eq!(hamiltonian_matrix(&empty).unwrap(), UnitaryMatrix::zeros(4));

        let h = crate::parser::parse_hamiltonian("Z0", 1).unwrap();
        assert_eq!(hamiltonian_matrix(&h).unwrap(), UnitaryMatrix::diagonal(&[ONE, -ONE]));
    }

    #[test]
    fn expm_diagonal_and_zero() {
        let m = UnitaryMatrix::diagonal(&[c(1.7, 0.0), c(-3.2, 0.0)]);
        assert_eq!(matrix_exponential(&m, 0.0).unwrap(), UnitaryMatrix::identity(2));
        let t = 1.3;
        let u = matrix_exponential(&m, t).unwrap();
        let expected = UnitaryMatrix::diagonal(&[
            Complex64::from_polar(1.0, -t * 1.7),
            Complex64::from_polar(1.0, t * 3.2),
        ]);
        assert!(u.frobenius_distance(&expected) < 1e-10);
    }

    #[test]
    fn expm_rejects_non_hermitian() {
        let mut m = UnitaryMatrix::zeros(2);
        m[(0, 1)] = ONE;
        assert!(matches!(matrix_exponential(&m, 1.0), Err(OracleError::NotHermitian(_))));
    }

    #[test]
    fn phase_distance() {
        let u = exp_pauli_closed_form(&p("XY"), 0.4).unwrap();
        assert!(phase_invariant_distance(&u, &u).unwrap() < 1e-15);
        let shifted = u.scale(Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4));
        assert!(phase_invariant_distance(&u, &shifted).unwrap() < 1e-14);

        let id = UnitaryMatrix::identity(2);
        let z = pauli_matrix(&p("Z")).unwrap();
        assert!((phase_invariant_distance(&id, &z).unwrap() - 2.0).abs() < 1e-15);

        assert!(matches!(
            phase_invariant_distance(&id, &UnitaryMatrix::identity(4)),
            Err(OracleError::DimMismatch(2, 4))
        ));
    }
}

//! Test-only helpers: a Kronecker-product route to circuit unitaries that
//! shares no code with `oracle::circuit_unitary`, plus random generators.

#![allow(dead_code)]

use num_complex::Complex64;
use pauli_synth::oracle::UnitaryMatrix;
use pauli_synth::{Gate, PauliOp, PauliString, QuantumCircuit};
use rand::Rng;

pub type Dense = Vec<Vec<Complex64>>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn eye(dim: usize) -> Dense {
    (0..dim)
        .map(|r| {
            (0..dim)
                .map(|k| if r == k { c(1.0, 0.0) } else { c(0.0, 0.0) })
                .collect()
        })
        .collect()
}

pub fn kron(a: &Dense, b: &Dense) -> Dense {
    let (na, nb) = (a.len(), b.len());
    let mut out = vec![vec![c(0.0, 0.0); na * nb]; na * nb];
    for i in 0..na {
        for j in 0..na {
            for k in 0..nb {
                for l in 0..nb {
                    out[i * nb + k][j * nb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut out = vec![vec![c(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn add(a: &Dense, b: &Dense) -> Dense {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y).collect())
        .collect()
}

/// Tensor product of per-qubit 2×2 factors, qubit 0 leftmost.
pub fn tensor(factors: &[Dense]) -> Dense {
    factors.iter().fold(eye(1), |acc, f| kron(&acc, f))
}

pub fn single(u: Dense, qubit: usize, n: usize) -> Dense {
    let factors: Vec<Dense> = (0..n).map(|k| if k == qubit { u.clone() } else { eye(2) }).collect();
    tensor(&factors)
}

fn proj(bit: usize) -> Dense {
    let mut m = vec![vec![c(0.0, 0.0); 2]; 2];
    m[bit][bit] = c(1.0, 0.0);
    m
}

/// `|0><0|_control ⊗ I + |1><1|_control ⊗ u_target`.
pub fn controlled(u: Dense, control: usize, target: usize, n: usize) -> Dense {
    let branch = |bit: usize, tgt: Dense| {
        let factors: Vec<Dense> = (0..n)
            .map(|k| {
                if k == control {
                    proj(bit)
                } else if k == target {
                    tgt.clone()
                } else {
                    eye(2)
                }
            })
            .collect();
        tensor(&factors)
    };
    add(&branch(0, eye(2)), &branch(1, u))
}

pub fn x() -> Dense {
    vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]]
}

pub fn z() -> Dense {
    vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(-1.0, 0.0)]]
}

pub fn gate_matrix(g: &Gate, n: usize) -> Dense {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    match *g {
        Gate::H(q) => single(vec![vec![c(r, 0.0), c(r, 0.0)], vec![c(r, 0.0), c(-r, 0.0)]], q, n),
        Gate::S(q) => single(
            vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 1.0)]],
            q,
            n,
        ),
        Gate::Sdg(q) => single(
            vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.0, -1.0)]],
            q,
            n,
        ),
        Gate::Rz(q, th) => single(
            vec![
                vec![c((th / 2.0).cos(), -(th / 2.0).sin()), c(0.0, 0.0)],
                vec![c(0.0, 0.0), c((th / 2.0).cos(), (th / 2.0).sin())],
            ],
            q,
            n,
        ),
        Gate::Rx(q, th) => single(
            vec![
                vec![c((th / 2.0).cos(), 0.0), c(0.0, -(th / 2.0).sin())],
                vec![c(0.0, -(th / 2.0).sin()), c((th / 2.0).cos(), 0.0)],
            ],
            q,
            n,
        ),
        Gate::Cx { control, target } => controlled(x(), control, target, n),
        Gate::Cz(a, b) => controlled(z(), a, b, n),
    }
}

/// Unitary of `circ` via explicit Kronecker embedding and full matrix products.
pub fn kron_unitary(circ: &QuantumCircuit) -> UnitaryMatrix {
    let n = circ.n_qubits();
    let mut u = eye(1 << n);
    for g in circ.gates() {
        u = matmul(&gate_matrix(g, n), &u);
    }
    let phase = Complex64::from_polar(1.0, circ.global_phase());
    to_unitary(&u).scale(phase)
}

pub fn to_unitary(m: &Dense) -> UnitaryMatrix {
    UnitaryMatrix::from_rows(m.len(), m.iter().flatten().copied().collect()).unwrap()
}

pub fn all_strings(n: usize) -> Vec<PauliString> {
    (0..4usize.pow(n as u32))
        .map(|mut code| {
            let ops = (0..n)
                .map(|_| {
                    let op = PauliOp::ALL[code % 4];
                    code /= 4;
                    op
                })
                .collect();
            PauliString::new(ops).unwrap()
        })
        .collect()
}

pub fn random_string<R: Rng>(rng: &mut R, n: usize) -> PauliString {
    PauliString::new((0..n).map(|_| PauliOp::ALL[rng.gen_range(0..4)]).collect()).unwrap()
}

pub fn random_gate<R: Rng>(rng: &mut R, n: usize) -> Gate {
    let q = rng.gen_range(0..n);
    let other = |rng: &mut R| {
        let mut p = rng.gen_range(0..n - 1);
        if p >= q {
            p += 1;
        }
        p
    };
    let angle = rng.gen_range(-3.0..3.0);
    match rng.gen_range(0..if n > 1 { 7 } else { 5 }) {
        0 => Gate::H(q),
        1 => Gate::S(q),
        2 => Gate::Sdg(q),
        3 => Gate::Rz(q, angle),
        4 => Gate::Rx(q, angle),
        5 => Gate::cx(q, other(rng)),
        _ => Gate::Cz(q, other(rng)),
    }
}

pub fn random_circuit<R: Rng>(rng: &mut R, n: usize, len: usize) -> QuantumCircuit {
    let mut circ = QuantumCircuit::from_gates(n, (0..len).map(|_| random_gate(rng, n))).unwrap();
    circ.set_global_phase(rng.gen_range(-3.0..3.0));
    circ
}

/// Random circuit biased towards cancellable neighbours.
pub fn random_redundant_circuit<R: Rng>(rng: &mut R, n: usize, len: usize) -> QuantumCircuit {
    let mut gates = Vec::new();
    while gates.len() < len {
        let g = random_gate(rng, n);
        gates.push(g);
        if rng.gen_bool(0.5) {
            gates.push(match g {
                Gate::Rz(q, _) => Gate::Rz(q, rng.gen_range(-1.0..1.0)),
                Gate::Rx(q, a) => Gate::Rx(q, -a),
                other => other.inverse(),
            });
        }
    }
    QuantumCircuit::from_gates(n, gates).unwrap()
}

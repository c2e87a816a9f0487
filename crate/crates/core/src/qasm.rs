//! OpenQASM 2.0 emission.

use std::fmt;
use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

use crate::circuit::{Gate, QuantumCircuit};

pub const HEADER: &str = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";

/// An emitted OpenQASM 2.0 program. LF line endings, trailing newline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QasmDocument {
    text: String,
}

impl QasmDocument {
    pub fn as_str(&self) -> &str {
        &self.text
    }

    pub fn into_string(self) -> String {
        self.text
    }

    pub fn write_to(&self, path: impl AsRef<Path>) -> io::Result<()> {
        fs::write(path, &self.text)
    }
}

impl fmt::Display for QasmDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

/// Positional decimal rendering of `x` rounded to 17 significant digits,
/// with trailing fractional zeros trimmed (at least one fractional digit
/// is kept).
pub fn format_real(x: f64) -> String {
    let sci = format!("{:.16e}", x.abs());
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();

    let (int_part, frac_part) = if x == 0.0 {
        ("0".to_string(), String::new())
    } else if exp >= 0 {
        let split = exp as usize + 1;
        if split >= digits.len() {
            (format!("{digits}{}", "0".repeat(split - digits.len())), String::new())
        } else {
            (digits[..split].to_string(), digits[split..].to_string())
        }
    } else {
        ("0".to_string(), format!("{}{digits}", "0".repeat((-exp - 1) as usize)))
    };
    let frac = frac_part.trim_end_matches('0');
    let frac = if frac.is_empty() { "0" } else { frac };
    let sign = if x.is_sign_negative() { "-" } else { "" };
    format!("{sign}{int_part}.{frac}")
}

fn statement(gate: &Gate) -> String {
    match *gate {
        Gate::H(q) => format!("h q[{q}];"),
        Gate::S(q) => format!("s q[{q}];"),
        Gate::Sdg(q) => format!("sdg q[{q}];"),
        Gate::Rz(q, theta) => format!("rz({}) q[{q}];", format_real(theta)),
        Gate::Rx(q, theta) => format!("rx({}) q[{q}];", format_real(theta)),
        Gate::Cx { control, target } => format!("cx q[{control}],q[{target}];"),
        Gate::Cz(a, b) => format!("cz q[{a}],q[{b}];"),
    }
}

/// Renders `c` as OpenQASM 2.0. A non-zero global phase, which the language
/// cannot express, is recorded in a trailing comment.
pub fn emit_qasm(c: &QuantumCircuit) -> QasmDocument {
    let mut text = String::from(HEADER);
    text.push_str(&format!("qreg q[{}];\n", c.n_qubits()));
    for gate in c.gates() {
        text.push_str(&statement(gate));
        text.push('\n');
    }
    if c.global_phase() != 0.0 {
        text.push_str(&format!("// global phase: {}\n", format_real(c.global_phase())));
    }
    QasmDocument { text }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct QasmValidationError {
    pub line: usize,
    pub message: String,
}

fn is_real_literal(s: &str) -> bool {
    let s = s.strip_prefix('-').unwrap_or(s);
    match s.split_once('.') {
        Some((int, frac)) => {
            !int.is_empty()
                && !frac.is_empty()
                && int.bytes().all(|b| b.is_ascii_digit())
                && frac.bytes().all(|b| b.is_ascii_digit())
        }
        None => false,
    }
}

fn qubit_ref(s: &str, n_qubits: usize) -> Option<usize> {
    let idx = s.strip_prefix("q[")?.strip_suffix(']')?;
    if idx.is_empty() || !idx.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    idx.parse().ok().filter(|&q| q < n_qubits)
}

fn check_statement(line: &str, n_qubits: usize) -> Result<(), String> {
    let body = line.strip_suffix(';').ok_or("missing ';'")?;
    let (head, args) = body.split_once(' ').ok_or("missing operands")?;
    let operands: Vec<&str> = args.split(',').collect();
    let arity = match head {
        "h" | "s" | "sdg" => 1,
        "cx" | "cz" => 2,
        _ => {
            let (name, param) = head
                .strip_suffix(')')
                .and_then(|h| h.split_once('('))
                .ok_or_else(|| format!("unknown statement {head:?}"))?;
            if name != "rz" && name != "rx" {
                return Err(format!("unknown gate {name:?}"));
            }
            if !is_real_literal(param) {
                return Err(format!("bad angle literal {param:?}"));
            }
            1
        }
    };
    if operands.len() != arity {
        return Err(format!("expected {arity} operand(s)"));
    }
    let qubits = operands
        .iter()
        .map(|o| qubit_ref(o, n_qubits).ok_or_else(|| format!("bad qubit operand {o:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    if arity == 2 && qubits[0] == qubits[1] {
        return Err("two-qubit gate on a single qubit".into());
    }
    Ok(())
}

/// Checks that `text` is exactly the statement subset produced by
/// [`emit_qasm`]: header, one `qreg`, the seven gate statements, and an
/// optional final global-phase comment.
pub fn validate_qasm(text: &str) -> Result<(), QasmValidationError> {
    let err = |line: usize, message: &str| QasmValidationError {
        line,
        message: message.to_string(),
    };
    let body = text
        .strip_suffix('\n')
        .ok_or_else(|| err(0, "missing trailing newline"))?;
    if body.contains('\r') {
        return Err(err(0, "CR characters are not allowed"));
    }
    let lines: Vec<&str> = body.split('\n').collect();
    if lines.len() < 3 {
        return Err(err(lines.len(), "truncated document"));
    }
    if lines[0] != "OPENQASM 2.0;" {
        return Err(err(1, "bad version header"));
    }
    if lines[1] != "include \"qelib1.inc\";" {
        return Err(err(2, "bad include line"));
    }
    let n_qubits: usize = lines[2]
        .strip_prefix("qreg q[")
        .and_then(|s| s.strip_suffix("];"))
        .filter(|s| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()))
        .and_then(|s| s.parse().ok())
        .filter(|&n| n > 0)
        .ok_or_else(|| err(3, "bad qreg declaration"))?;

    let mut rest = &lines[3..];
    if let Some((last, init)) = rest.split_last() {
        if let Some(value) = last.strip_prefix("// global phase: ") {
            if !is_real_literal(value) {
                return Err(err(lines.len(), "bad global phase literal"));
            }
            rest = init;
        }
    }
    for (k, line) in rest.iter().enumerate() {
        check_statement(line, n_qubits).map_err(|m| err(k + 4, &m))?;
    }
    Ok(())
}

//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 verification failure,
//! 3 the oracle cannot handle the requested size.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::circuit::{GateKind, QuantumCircuit};
use crate::oracle::{self, OracleError, UnitaryMatrix};
use crate::parser::parse_hamiltonian;
use crate::pauli::Hamiltonian;
use crate::qasm::emit_qasm;
use crate::synthesis::{trotter_circuit, EvolutionParams, SynthVariant};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_VERIFY_FAILED: u8 = 2;
pub const EXIT_TOO_LARGE: u8 = 3;

/// Distance above which `verify` reports FAIL.
pub const VERIFY_THRESHOLD: f64 = 1e-8;

/// Order in which `stats` prints non-zero gate counts.
const STATS_ORDER: [GateKind; 7] = [
    GateKind::Cx,
    GateKind::Cz,
    GateKind::Rz,
    GateKind::Rx,
    GateKind::H,
    GateKind::S,
    GateKind::Sdg,
];

#[derive(Debug, Parser)]
#[command(
    name = "pauli-synth",
    version,
    about = "Synthesize and verify circuits for exp(-i t H)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit OpenQASM for one slice of every term.
    Synth(CommonArgs),
    /// Emit OpenQASM for a first-order Trotter product.
    Trotter(CommonArgs),
    /// Compare the synthesized circuit against the dense-matrix oracle.
    Verify(CommonArgs),
    /// Print gate counts as `kind=count` lines.
    Stats(CommonArgs),
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["ham", "ham_file"])))]
struct CommonArgs {
    /// Hamiltonian expression, e.g. "0.5*Z0 Z1 + 0.3*X0".
    #[arg(long)]
    ham: Option<String>,
    /// File holding a Hamiltonian expression.
    #[arg(long = "ham-file")]
    ham_file: Option<PathBuf>,
    /// Number of qubits.
    #[arg(long = "n")]
    n: usize,
    /// Evolution time.
    #[arg(long = "t", allow_negative_numbers = true)]
    t: f64,
    /// Trotter slices (trotter, verify and stats only).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    reps: Option<u64>,
    #[arg(long, default_value = "z-ladder")]
    variant: SynthVariant,
    /// Run the peephole cancellation pass on the result.
    #[arg(long)]
    compact: bool,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Synth,
    Trotter,
    Verify,
    Stats,
}

/// Resolved command-line configuration.
#[derive(Debug)]
pub struct CliConfig {
    mode: Mode,
    hamiltonian: Hamiltonian,
    params: EvolutionParams,
    variant: SynthVariant,
    compact: bool,
    out: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

fn configure(cli: Cli) -> Result<CliConfig, Failure> {
    let (mode, args) = match cli.command {
        Command::Synth(a) => (Mode::Synth, a),
        Command::Trotter(a) => (Mode::Trotter, a),
        Command::Verify(a) => (Mode::Verify, a),
        Command::Stats(a) => (Mode::Stats, a),
    };
    if mode == Mode::Synth && args.reps.is_some() {
        return Err(Failure::usage("--reps is not accepted by synth; use trotter"));
    }
    if args.n == 0 {
        return Err(Failure::usage("--n must be positive"));
    }
    let text = match (args.ham, args.ham_file) {
        (Some(text), None) => text,
        (None, Some(path)) => {
            fs::read_to_string(&path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?
        }
        _ => return Err(Failure::usage("exactly one of --ham and --ham-file is required")),
    };
    let hamiltonian = parse_hamiltonian(&text, args.n).map_err(|e| Failure::usage(e.to_string()))?;
    let reps = args.reps.unwrap_or(1) as usize;
    let params = EvolutionParams::new(args.t, reps).map_err(|e| Failure::usage(e.to_string()))?;
    Ok(CliConfig {
        mode,
        hamiltonian,
        params,
        variant: args.variant,
        compact: args.compact,
        out: args.out,
    })
}

/// Reference unitary for `verify`: the closed form for a single term,
/// otherwise the exact exponential of the summed Hamiltonian.
fn reference_unitary(cfg: &CliConfig) -> Result<UnitaryMatrix, OracleError> {
    let h = &cfg.hamiltonian;
    let t = cfg.params.t();
    if let [term] = h.terms() {
        return oracle::exp_pauli_closed_form(term.string(), t * term.coefficient());
    }
    oracle::matrix_exponential(&oracle::hamiltonian_matrix(h)?, t)
}

fn emit(cfg: &CliConfig, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match &cfg.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
        }
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::usage(format!("write failed: {e}"))),
    }
}

fn execute(cfg: &CliConfig, out: &mut dyn Write) -> Result<u8, Failure> {
    let circuit: QuantumCircuit = trotter_circuit(&cfg.hamiltonian, cfg.params, cfg.variant, cfg.compact)
        .map_err(|e| Failure::usage(e.to_string()))?;

    match cfg.mode {
        Mode::Synth | Mode::Trotter => {
            emit(cfg, emit_qasm(&circuit).as_str(), out)?;
            Ok(EXIT_OK)
        }
        Mode::Stats => {
            let counts = circuit.gate_counts();
            let text: String = STATS_ORDER
                .iter()
                .filter(|&&k| counts.get(k) > 0)
                .map(|&k| format!("{}={}\n", k.name(), counts.get(k)))
                .collect();
            emit(cfg, &text, out)?;
            Ok(EXIT_OK)
        }
        Mode::Verify => {
            let too_large = |e: OracleError| Failure {
                code: match e {
                    OracleError::TooManyQubits { .. } => EXIT_TOO_LARGE,
                    _ => EXIT_USAGE,
                },
                message: format!("cannot verify: {e}"),
            };
            let reference = reference_unitary(cfg).map_err(too_large)?;
            let actual = oracle::circuit_unitary(&circuit).map_err(too_large)?;
            let distance = oracle::phase_invariant_distance(&actual, &reference).map_err(too_large)?;
            let pass = distance <= VERIFY_THRESHOLD;
            let text = format!(
                "distance: {distance:.6e}\nthreshold: {VERIFY_THRESHOLD:e}\n{}\n",
                if pass { "PASS" } else { "FAIL" }
            );
            emit(cfg, &text, out)?;
            Ok(if pass { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code. Normal output goes to `out`, diagnostics to `err`.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = configure(cli).and_then(|cfg| execute(&cfg, out));
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (u8, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("pauli-synth").chain(args.iter().copied());
        let code = run_cli(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn synth_zz() {
        let (code, out, _) = run(&["synth", "--ham", "1*Z0 Z1", "--n", "2", "--t", "0.5"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\ncx q[1],q[0];\nrz(1.0) q[0];\ncx q[1],q[0];\n"
        );
    }

    #[test]
    fn negative_time() {
        let (code, out, _) = run(&["synth", "--ham", "Z0", "--n", "1", "--t", "-0.5"]);
        assert_eq!(code, 0);
        assert!(out.contains("rz(-1.0) q[0];"));
    }

    #[test]
    fn stats_lines() {
        let (code, out, _) = run(&["stats", "--ham", "1*Y1 Y3 X5", "--n", "6", "--t", "0.7"]);
        assert_eq!(code, 0);
        assert_eq!(out, "cx=4\nrz=1\nh=6\ns=2\nsdg=2\n");
    }

    #[test]
    fn usage_errors_exit_1() {
        assert_eq!(run(&["synth", "--n", "2", "--t", "0.5"]).0, 1);
        assert_eq!(
            run(&["synth", "--ham", "Z0", "--ham-file", "x", "--n", "2", "--t", "0.5"]).0,
            1
        );
        assert_eq!(run(&["synth", "--ham", "Z0", "--n", "2", "--t", "0.5", "--bogus"]).0, 1);
        assert_eq!(
            run(&["synth", "--ham", "Z0", "--n", "2", "--t", "0.5", "--reps", "2"]).0,
            1
        );
        assert_eq!(
            run(&["trotter", "--ham", "Z0", "--n", "2", "--t", "0.5", "--reps", "0"]).0,
            1
        );
        assert_eq!(
            run(&["synth", "--ham", "Z0", "--n", "2", "--t", "0.5", "--variant", "w"]).0,
            1
        );
        assert_eq!(run(&["frobnicate"]).0, 1);
        assert_eq!(run(&[]).0, 1);
    }

    #[test]
    fn parse_error_reports_position() {
        let (code, out, err) = run(&["synth", "--ham", "1.0*Z0 Z0", "--n", "2", "--t", "0.5"]);
        assert_eq!(code, 1);
        assert!(out.is_empty());
        assert!(err.contains("offset 7"), "{err}");
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("verify"));
    }
}

//! The `qinv` command line. [`run`] takes an argument vector and returns the
//! exit code with everything that would be written to stdout and stderr.

mod input;
mod output;

use std::f64::consts::TAU;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use qinv_core::gate_invariants::perfect_entangler_inequality;
use qinv_core::{
    canonicalize_state, entangler_windows, fixture_pair, gates_equivalent, invariants18, josephson_alpha,
    makhlin_invariants, solve_time, states_equivalent, synthesize_witness, Error, GateInvariants, HamiltonianFamily,
};
use serde_json::{json, Map, Value};

use input::{load_gate, load_state, InputError};
use output::{complex, complex2, num, pauli, real3, render};

const ABOUT: &str = "Local-unitary invariants of two-qubit gates and states";

const LONG_ABOUT: &str = "\
Local-unitary invariants of two-qubit gates and states.

Matrices use the standard basis order |00>, |01>, |10>, |11>, first qubit \
most significant. Gate files are JSON objects {\"matrix\": 4x4 array of \
[re, im]}; the names identity, cnot, swap and sqrt-swap may be given instead \
of a file. State files hold either {\"rho\": 4x4 array of [re, im]} or \
{\"pauli\": {\"s\": [3], \"p\": [3], \"beta\": [[3],[3],[3]]}} with \
rho = 1/4 + s.sigma/2 (x) 1 + 1 (x) p.sigma/2 + beta_ij sigma_i (x) sigma_j.

Exit codes: 0 yes / success, 1 no, 2 invalid input, 3 numerical failure.";

#[derive(Parser)]
#[command(name = "qinv", version, about = ABOUT, long_about = LONG_ABOUT)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print G1, G2 and the eigenphases of m for a gate.
    GateInv { gate: String },
    /// Exit 0 if two gates are locally equivalent, 1 otherwise.
    GateEquiv {
        a: String,
        b: String,
        /// Also print single-qubit gates with B = exp(i phase) (w1_left x w2_left) A (w1_right x w2_right).
        #[arg(long)]
        witness: bool,
        #[arg(long, env = "QINV_TOL", default_value_t = 1e-6)]
        tol: f64,
    },
    /// Exit 0 if the gate is a perfect entangler, 1 otherwise.
    Entangler { gate: String },
    /// Print the 18 polynomial invariants of a state.
    StateInv { state: String },
    /// Exit 0 if two states are locally equivalent, 1 otherwise.
    StateEquiv {
        a: String,
        b: String,
        #[arg(long, env = "QINV_TOL", default_value_t = 1e-9)]
        tol: f64,
    },
    /// Print the canonical form of a state with its case and rotations.
    StateCanon { state: String },
    /// One-step synthesis from a coupling Hamiltonian.
    #[command(subcommand)]
    Pulse(PulseCommand),
    /// Write the pair of states distinguished only by invariant K (10..=18).
    Fixtures {
        #[arg(long)]
        index: usize,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

#[derive(Subcommand)]
enum PulseCommand {
    /// Times at which exp(iHt) is locally equivalent to the target.
    Solve {
        /// heisenberg, xy, yy or josephson:ALPHA
        #[arg(long)]
        family: String,
        #[arg(long)]
        target: String,
        #[arg(long)]
        t_max: f64,
    },
    /// Josephson coupling ratios giving a CNOT-class gate in one step.
    Josephson {
        #[arg(long)]
        n_max: u32,
        #[arg(long, default_value_t = 50.0)]
        alpha_max: f64,
    },
    /// Time intervals during which exp(iHt) is a perfect entangler.
    Windows {
        #[arg(long)]
        family: String,
        #[arg(long)]
        t_max: f64,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Input(String),
    Numeric(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numeric(e.to_string())
    }
}

type Reply = Result<(i32, Value), Failure>;

fn yes_no(flag: bool) -> i32 {
    if flag {
        0
    } else {
        1
    }
}

fn positive(name: &str, x: f64) -> Result<f64, Failure> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(Failure::Input(format!("{name} must be positive and finite, got {x}")))
    }
}

fn family(name: &str) -> Result<HamiltonianFamily, Failure> {
    let parsed = match name.split_once(':') {
        Some(("josephson", alpha)) => alpha
            .parse::<f64>()
            .ok()
            .filter(|a| a.is_finite() && *a > 0.0)
            .map(HamiltonianFamily::josephson),
        None => HamiltonianFamily::named(name, None),
        _ => None,
    };
    parsed.ok_or_else(|| Failure::Input(format!("unknown family {name:?}; expected heisenberg, xy, yy or josephson:ALPHA")))
}

fn invariants_json(inv: &GateInvariants) -> Value {
    json!({
        "g1": complex(inv.g1),
        "g2": num(inv.g2),
        "spectrum_phases": inv.phases().iter().map(|&p| num(p)).collect::<Vec<_>>(),
    })
}

fn gate_inv(gate: &str) -> Reply {
    let inv = makhlin_invariants(&load_gate(gate)?)?;
    Ok((0, invariants_json(&inv)))
}

fn gate_equiv(a: &str, b: &str, witness: bool, tol: f64) -> Reply {
    let tol = positive("--tol", tol)?;
    let (ma, mb) = (load_gate(a)?, load_gate(b)?);
    let equivalent = gates_equivalent(&ma, &mb, tol)?;
    let mut out = Map::new();
    out.insert("equivalent".into(), json!(equivalent));
    out.insert("a".into(), invariants_json(&makhlin_invariants(&ma)?));
    out.insert("b".into(), invariants_json(&makhlin_invariants(&mb)?));
    if witness && equivalent {
        let w = synthesize_witness(&ma, &mb)?;
        out.insert(
            "witness".into(),
            json!({
                "w1_left": complex2(&w.left.w1),
                "w2_left": complex2(&w.left.w2),
                "w1_right": complex2(&w.right.w1),
                "w2_right": complex2(&w.right.w2),
                "phase": num(if w.phase > TAU - 1e-12 { 0.0 } else { w.phase }),
            }),
        );
    }
    Ok((yes_no(equivalent), Value::Object(out)))
}

fn entangler(gate: &str) -> Reply {
    let inv = makhlin_invariants(&load_gate(gate)?)?;
    let hull = inv.hull_contains_zero();
    Ok((
        yes_no(hull),
        json!({
            "perfect_entangler": hull,
            "hull_test": hull,
            "inequality_test": perfect_entangler_inequality(&inv),
            "max_phase_gap": num(inv.max_phase_gap()),
        }),
    ))
}

fn state_inv(state: &str) -> Reply {
    let inv = invariants18(&load_state(state)?);
    let map: Map<String, Value> = (1..=18).map(|k| (format!("i{k}"), num(inv.get(k)))).collect();
    Ok((0, Value::Object(map)))
}

fn state_equiv(a: &str, b: &str, tol: f64) -> Reply {
    let tol = positive("--tol", tol)?;
    let (fa, fb) = (load_state(a)?, load_state(b)?);
    let differing = invariants18(&fa).differing(&invariants18(&fb), tol);
    let equivalent = states_equivalent(&fa, &fb, tol);
    Ok((yes_no(equivalent), json!({ "equivalent": equivalent, "differing": differing })))
}

fn state_canon(state: &str) -> Reply {
    let c = canonicalize_state(&load_state(state)?);
    Ok((
        0,
        json!({
            "case": c.case.as_str(),
            "pauli": pauli(&c.form),
            "witness": { "o": real3(&c.witness.o), "p_rot": real3(&c.witness.p_rot) },
        }),
    ))
}

fn pulse(cmd: &PulseCommand) -> Reply {
    match cmd {
        PulseCommand::Solve { family: f, target, t_max } => {
            let h = family(f)?;
            let t_max = positive("--t-max", *t_max)?;
            let r = solve_time(&h, &load_gate(target)?, t_max)?;
            let times: Vec<Value> = r.times.iter().map(|&(t, e)| json!({ "t": num(t), "mismatch": num(e) })).collect();
            Ok((0, json!({ "family": f, "verdict": r.verdict.as_str(), "times": times })))
        }
        PulseCommand::Josephson { n_max, alpha_max } => {
            let alpha_max = positive("--alpha-max", *alpha_max)?;
            let sols: Vec<Value> = josephson_alpha(*n_max, alpha_max)
                .iter()
                .map(|s| json!({ "n": s.n, "alpha": num(s.alpha), "t": num(s.t), "residual": num(s.residual) }))
                .collect();
            Ok((0, json!({ "solutions": sols })))
        }
        PulseCommand::Windows { family: f, t_max } => {
            let h = family(f)?;
            let t_max = positive("--t-max", *t_max)?;
            let windows: Vec<Value> = entangler_windows(&h, t_max).iter().map(|&(lo, hi)| json!([num(lo), num(hi)])).collect();
            Ok((0, json!({ "family": f, "windows": windows })))
        }
    }
}

fn fixtures(index: usize, out_dir: &Path) -> Reply {
    let (a, b) = fixture_pair(index).map_err(|e| Failure::Input(e.to_string()))?;
    let mut paths = Vec::new();
    for (label, f) in [("a", a), ("b", b)] {
        let path = out_dir.join(format!("fixture_{index}_{label}.json"));
        fs::write(&path, render(&json!({ "pauli": pauli(&f) })))
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
        paths.push(path.display().to_string());
    }
    Ok((0, json!({ "index": index, "a": paths[0], "b": paths[1] })))
}

fn dispatch(cli: &Cli) -> Reply {
    match &cli.command {
        Command::GateInv { gate } => gate_inv(gate),
        Command::GateEquiv { a, b, witness, tol } => gate_equiv(a, b, *witness, *tol),
        Command::Entangler { gate } => entangler(gate),
        Command::StateInv { state } => state_inv(state),
        Command::StateEquiv { a, b, tol } => state_equiv(a, b, *tol),
        Command::StateCanon { state } => state_canon(state),
        Command::Pulse(cmd) => pulse(cmd),
        Command::Fixtures { index, out_dir } => fixtures(*index, out_dir),
    }
}

fn first_line(text: &str) -> String {
    text.lines().find(|l| !l.trim().is_empty()).unwrap_or("error").trim().to_string()
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { code: 0, stdout: text, stderr: String::new() },
                _ => Outcome { code: 2, stdout: String::new(), stderr: format!("{}\n", first_line(&text)) },
            };
        }
    };
    match dispatch(&cli) {
        Ok((code, value)) => Outcome { code, stdout: render(&value), stderr: String::new() },
        Err(Failure::Input(msg)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {}\n", first_line(&msg)) },
        Err(Failure::Numeric(msg)) => Outcome { code: 3, stdout: String::new(), stderr: format!("error: {}\n", first_line(&msg)) },
    }
}

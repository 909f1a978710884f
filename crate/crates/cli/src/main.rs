//! `magic-jsd`: evaluate divergences and magic quantifiers, run the example
//! scans, export stabilizer sets and run the property suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 bad input, 3 domain error
//! (for example `alpha = 1` or `beta = 0`).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use magic_jsd::entropy::{quantum_entropy, quantum_relative_entropy};
use magic_jsd::gate_power::gate_power;
use magic_jsd::jsd::{jsd, jsd_prime};
use magic_jsd::magic::{c_psi, magic_entropic, magic_mixed_upper_bound, magic_relative, MixedBoundOptions};
use magic_jsd::scan::{scan_example1, scan_example2, scan_example3, Axis, GridSpec, ScanTable};
use magic_jsd::stabilizer::{qubit_robustness, stabilizer_fidelity};
use magic_jsd::verify::{self, Suite, VerifyConfig};
use magic_jsd::{AnyState, Error, ParamPair, StabilizerSet};

mod inputs;

const THREADS_VAR: &str = "MAGIC_JSD_THREADS";

#[derive(Parser)]
#[command(
    name = "magic-jsd",
    version,
    about = "Quantum (alpha, beta) Jensen-Shannon divergences and magic monotones"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one quantity and print a JSON object.
    Eval(EvalArgs),
    /// Bloch-sphere scan of q_max and M for a qubit (theta in [0, pi], phi in [0, 2 pi)).
    ScanExample1(Scan1Args),
    /// M and m of the qutrit T state over an (alpha, beta) grid.
    ScanExample2(ScanArgs),
    /// Magic boost of T^(1/4) against its generating power over an (alpha, beta) grid.
    ScanExample3(ScanArgs),
    /// Run a property suite; the JSON report goes to stdout (or --out), the summary to stderr.
    Verify(VerifyArgs),
    /// Write a stabilizer set as JSON, sorted by label.
    ExportStabilizers(ExportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Entropy,
    Relent,
    Jsd,
    Jsdprime,
    #[value(name = "magicM")]
    MagicBig,
    #[value(name = "magicm")]
    MagicSmall,
    Robustness,
    Gatepower,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Entropy => "entropy",
            Kind::Relent => "relent",
            Kind::Jsd => "jsd",
            Kind::Jsdprime => "jsdprime",
            Kind::MagicBig => "magicM",
            Kind::MagicSmall => "magicm",
            Kind::Robustness => "robustness",
            Kind::Gatepower => "gatepower",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(clap::Args)]
struct EvalArgs {
    kind: Kind,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    /// State as inline JSON ({"dim","amps"} or {"dim","rows"}) or a preset name.
    #[arg(long)]
    state: Option<String>,
    #[arg(long)]
    state_file: Option<PathBuf>,
    /// Second state for relent, jsd and jsdprime.
    #[arg(long)]
    state2: Option<String>,
    #[arg(long)]
    state2_file: Option<PathBuf>,
    /// Unitary as inline JSON ({"dim","rows"}) or a preset name (I, H, S, T, T^1/2, T^1/4).
    #[arg(long)]
    unitary: Option<String>,
    #[arg(long)]
    unitary_file: Option<PathBuf>,
    /// Seed for the mixed-state magic bound.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random decompositions tried by the mixed-state magic bound.
    #[arg(long, default_value_t = 200)]
    samples: usize,
}

#[derive(clap::Args)]
struct ScanOutput {
    /// Axis override `var:start:stop:steps`; repeat for both axes.
    #[arg(long = "grid")]
    grid: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct Scan1Args {
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.5)]
    alpha: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 2.0)]
    beta: f64,
    #[command(flatten)]
    output: ScanOutput,
}

#[derive(clap::Args)]
struct ScanArgs {
    #[command(flatten)]
    output: ScanOutput,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// entropy, jsd, magic, gatepower, stabilizer or all.
    suite: String,
    #[arg(long, default_value_t = VerifyConfig::default().seed)]
    seed: u64,
    #[arg(long, default_value_t = VerifyConfig::default().samples)]
    samples: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct ExportArgs {
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Output path (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

/// How a command failed, which fixes the exit code.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Domain(String),
    Verify(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verify(_) => 1,
            Failure::Input(_) => 2,
            Failure::Domain(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Domain(m) | Failure::Verify(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BadParams(_) | Error::DegenerateKernel(_) | Error::ImaginaryResidue(_) => {
                Failure::Domain(e.to_string())
            }
            other => Failure::Input(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(f) = configure_threads().and_then(|_| run(cli.command)) {
        eprintln!("error: {}", f.message());
        return ExitCode::from(f.code());
    }
    ExitCode::SUCCESS
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Input(format!("{THREADS_VAR}={raw:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Input(format!("thread pool: {e}")))
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Eval(a) => {
            let v = eval(&a)?;
            emit(None, &format!("{v}\n"))
        }
        Command::ScanExample1(a) => {
            let p = ParamPair::new(a.alpha, a.beta)?;
            let grid = grid_for(GridSpec::example1(), &a.output.grid)?;
            write_table(&scan_example1(p, &grid)?, &a.output)
        }
        Command::ScanExample2(a) => {
            let grid = grid_for(GridSpec::example2(), &a.output.grid)?;
            write_table(&scan_example2(&grid)?, &a.output)
        }
        Command::ScanExample3(a) => {
            let grid = grid_for(GridSpec::example3(), &a.output.grid)?;
            write_table(&scan_example3(&grid)?, &a.output)
        }
        Command::Verify(a) => {
            let suite: Suite = a.suite.parse().map_err(Failure::Input)?;
            let report = verify::run(
                suite,
                &VerifyConfig {
                    seed: a.seed,
                    samples: a.samples,
                },
            );
            eprintln!("{report}");
            let body = serde_json::to_string_pretty(&report).expect("report serializes");
            emit(a.out.as_deref(), &format!("{body}\n"))?;
            if report.all_passed() {
                Ok(())
            } else {
                Err(Failure::Verify(format!("{} case(s) failed", report.failed)))
            }
        }
        Command::ExportStabilizers(a) => {
            let set = StabilizerSet::new(a.d, a.n)?;
            let body = serde_json::to_string_pretty(&set.export()).expect("set serializes");
            emit(a.out.as_deref(), &format!("{body}\n"))
        }
    }
}

fn grid_for(base: GridSpec, overrides: &[String]) -> Result<GridSpec, Failure> {
    let axes = overrides
        .iter()
        .map(|s| s.parse::<Axis>())
        .collect::<Result<Vec<_>, _>>()?;
    let grid = base.with_overrides(&axes)?;
    if grid.points().is_empty() {
        return Err(Failure::Input("grid is empty after exclusions".into()));
    }
    Ok(grid)
}

fn write_table(table: &ScanTable, out: &ScanOutput) -> Result<(), Failure> {
    let body = match out.format {
        Format::Csv => table.to_csv(),
        Format::Json => format!("{}\n", table.to_json()),
    };
    emit(out.out.as_deref(), &body)
}

fn emit(path: Option<&Path>, body: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, body).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Input(format!("stdout: {e}")))
        }
    }
}

fn params(a: &EvalArgs) -> Result<ParamPair, Failure> {
    match (a.alpha, a.beta) {
        (Some(alpha), Some(beta)) => Ok(ParamPair::new(alpha, beta)?),
        _ => Err(Failure::Input(format!("{} needs --alpha and --beta", a.kind.name()))),
    }
}

fn set_for_dim(dim: usize) -> Result<StabilizerSet, Failure> {
    let (d, n) = match dim {
        2 => (2, 1),
        3 => (3, 1),
        4 => (2, 2),
        _ => return Err(Failure::Input(format!("no stabilizer set for dimension {dim}"))),
    };
    Ok(StabilizerSet::new(d, n)?)
}

fn first_state(a: &EvalArgs) -> Result<AnyState, Failure> {
    inputs::state(a.state.as_deref(), a.state_file.as_deref(), "state")
}

fn second_state(a: &EvalArgs) -> Result<AnyState, Failure> {
    inputs::state(a.state2.as_deref(), a.state2_file.as_deref(), "state2")
}

fn eval(a: &EvalArgs) -> Result<Value, Failure> {
    let kind = a.kind.name();
    if let Kind::Robustness = a.kind {
        return robustness(a);
    }
    let p = params(a)?;
    let mut out = json!({ "kind": kind, "alpha": p.alpha(), "beta": p.beta() });
    let obj = out.as_object_mut().expect("object");
    match a.kind {
        Kind::Entropy => {
            let rho = first_state(a)?.density();
            obj.insert("value".into(), json!(quantum_entropy(&rho, p)));
        }
        Kind::Relent => {
            let (rho, sigma) = (first_state(a)?.density(), second_state(a)?.density());
            let r = quantum_relative_entropy(&rho, &sigma, p)?;
            obj.insert("value".into(), json!(r.value));
            obj.insert("kernel".into(), json!(r.kernel));
            obj.insert("support_mismatch".into(), json!(r.support_mismatch));
        }
        Kind::Jsd | Kind::Jsdprime => {
            let (rho, sigma) = (first_state(a)?.density(), second_state(a)?.density());
            let v = if let Kind::Jsd = a.kind {
                jsd(&rho, &sigma, p)?
            } else {
                jsd_prime(&rho, &sigma, p)?
            };
            obj.insert("value".into(), json!(v));
        }
        Kind::MagicBig | Kind::MagicSmall => {
            let state = first_state(a)?;
            let set = set_for_dim(state.dim())?;
            match (&state, a.kind) {
                (AnyState::Pure(psi), kind) => {
                    let r = if let Kind::MagicBig = kind {
                        magic_entropic(psi, p, &set)?
                    } else {
                        magic_relative(psi, p, &set)?
                    };
                    let best = c_psi(psi, &set)?;
                    obj.insert("value".into(), json!(r.value));
                    obj.insert("c_psi".into(), json!(r.c_psi));
                    obj.insert("witness".into(), json!(r.argmax_label));
                    obj.insert("ties".into(), json!(best.ties));
                }
                (AnyState::Mixed(rho), Kind::MagicBig) => {
                    let opts = MixedBoundOptions {
                        trials: a.samples,
                        seed: a.seed,
                        ..MixedBoundOptions::default()
                    };
                    let b = magic_mixed_upper_bound(rho, p, &set, opts)?;
                    obj.insert("value".into(), json!(b.value));
                    obj.insert("upper_bound".into(), json!(true));
                    obj.insert("eigen_baseline".into(), json!(b.eigen_baseline));
                    obj.insert("stabilizer_decomposition".into(), json!(b.stabilizer_decomposition));
                }
                (AnyState::Mixed(_), _) => {
                    return Err(Failure::Input("magicm takes a pure state".into()));
                }
            }
        }
        Kind::Gatepower => {
            let u = inputs::gate(a.unitary.as_deref(), a.unitary_file.as_deref())?;
            let set = set_for_dim(u.dim())?;
            let r = gate_power(&u, p, &set)?;
            obj.insert("value".into(), json!(r.value));
            obj.insert("C_U".into(), json!(r.c_u));
            obj.insert("worst_input".into(), json!(r.worst_input_label));
            obj.insert("best_output".into(), json!(r.best_output_label));
        }
        Kind::Robustness => unreachable!("handled above"),
    }
    Ok(out)
}

fn robustness(a: &EvalArgs) -> Result<Value, Failure> {
    let state = first_state(a)?;
    if state.dim() != 2 {
        return Err(Failure::Input(format!(
            "robustness is defined here for qubits, got dimension {}",
            state.dim()
        )));
    }
    let r = qubit_robustness(&state.density())?;
    let mut out = json!({
        "kind": "robustness",
        "alpha": a.alpha,
        "beta": a.beta,
        "value": r.value,
        "lp_value": r.lp_value,
        "certified": r.certified,
    });
    if let AnyState::Pure(psi) = &state {
        let f = stabilizer_fidelity(psi, &set_for_dim(2)?)?;
        let obj = out.as_object_mut().expect("object");
        obj.insert("fidelity".into(), json!(f.fidelity));
        obj.insert("d_min".into(), json!(f.d_min));
        obj.insert("witness".into(), json!(f.witness));
    }
    Ok(out)
}

//! Command-line front end.
//!
//! Exit codes: 0 success, 1 demo fidelity failure, 2 usage, parse or
//! validation error, 3 I/O failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::codes::{CodeKind, CodeLayout, ProbeSettings, SyndromeMode};
use crate::config::{parse_config, RunPlan};
use crate::experiments::{correct, encode, initial_register};
use crate::noise::{inject_pauli, lose_qubit, Pauli};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FIDELITY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Environment variable consulted for the seed when neither `--seed` nor
/// the config file sets one.
pub const SEED_ENV: &str = "PROBEQEC_SEED";

const DEMO_THETA: f64 = 0.1;

#[derive(Parser, Debug)]
#[command(name = "probeqec", about = "Quantum error correction with coherent-state probes", disable_version_flag = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Noiseless encode → error → correct walkthrough of one code.
    Demo(DemoArgs),
    /// Run the experiment (or sweep) described by a config file.
    Run(RunArgs),
    /// Like `run`, but the config must contain a [sweep] table.
    Sweep(RunArgs),
    /// Print the version.
    Version,
}

#[derive(clap::Args, Debug)]
struct DemoArgs {
    /// bitflip3, phaseflip3, shor9 or erasure.
    code: String,
    /// Pauli error to inject after encoding, e.g. `X:2` (qubits are 1-based).
    #[arg(long = "error", value_name = "PAULI:QUBIT")]
    errors: Vec<String>,
    /// Number of Bell pairs (erasure code).
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Qubit to lose after encoding (erasure code, 1-based).
    #[arg(long = "lose", value_name = "QUBIT")]
    lose: Vec<usize>,
    /// Syndrome read-out for the 3-qubit blocks.
    #[arg(long, value_enum, default_value_t = ModeArg::Mod4)]
    mode: ModeArg,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(clap::Args, Debug)]
struct RunArgs {
    /// Config file.
    config: PathBuf,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides the config file and the environment.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (0 = all cores). Output does not depend on it.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Mod4,
    Binary,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
}

/// Parse `args` (including the program name) and execute. Normal output
/// goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let env_seed = std::env::var(SEED_ENV).ok();
    match cli.command {
        Command::Version => {
            if writeln!(out, "probeqec {}", env!("CARGO_PKG_VERSION")).is_err() {
                return EXIT_IO;
            }
            EXIT_OK
        }
        Command::Demo(a) => demo(&a, env_seed.as_deref(), out, err),
        Command::Run(a) => run_config(&a, false, env_seed.as_deref(), out, err),
        Command::Sweep(a) => run_config(&a, true, env_seed.as_deref(), out, err),
    }
}

fn parse_env_seed(value: Option<&str>) -> Result<Option<u64>, String> {
    match value {
        None => Ok(None),
        Some(s) => s.trim().parse().map(Some).map_err(|_| format!("{SEED_ENV}={s:?} is not a 64-bit unsigned integer")),
    }
}

fn run_config(a: &RunArgs, require_sweep: bool, env_seed: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let Format::Csv = a.format;
    let text = match std::fs::read_to_string(&a.config) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: cannot read {}: {e}", a.config.display());
            return EXIT_IO;
        }
    };
    let RunPlan { mut config, sweep: plan_sweep, seed_set } = match parse_config(&text) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", a.config.display());
            return EXIT_USAGE;
        }
    };
    let env = match parse_env_seed(env_seed) {
        Ok(s) => s,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    if let Some(s) = a.seed {
        config.seed = s;
    } else if let (false, Some(s)) = (seed_set, env) {
        config.seed = s;
    }
    if require_sweep && plan_sweep.is_none() {
        let _ = writeln!(err, "error: {}: the sweep command needs a [sweep] table", a.config.display());
        return EXIT_USAGE;
    }

    let plan = RunPlan { config, sweep: plan_sweep, seed_set };
    let csv = match plan.csv(a.jobs) {
        Ok(csv) => csv,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", a.config.display());
            return EXIT_USAGE;
        }
    };
    let written = match &a.out {
        Some(path) => write_file(path, &csv),
        None => out.write_all(csv.as_bytes()).and_then(|_| out.flush()),
    };
    if let Err(e) = written {
        let target = a.out.as_deref().map_or("stdout".into(), |p| p.display().to_string());
        let _ = writeln!(err, "error: cannot write {target}: {e}");
        return EXIT_IO;
    }
    EXIT_OK
}

fn write_file(path: &Path, contents: &str) -> std::io::Result<()> {
    std::fs::write(path, contents)
}

fn parse_error_spec(spec: &str, num_qubits: usize) -> Result<(Pauli, usize), String> {
    let (p, q) = spec.split_once(':').ok_or_else(|| format!("--error {spec:?}: expected PAULI:QUBIT, e.g. X:2"))?;
    let pauli: Pauli = p.parse().map_err(|e| format!("--error {spec:?}: {e}"))?;
    let qubit = parse_qubit(q, num_qubits).map_err(|e| format!("--error {spec:?}: {e}"))?;
    Ok((pauli, qubit))
}

fn parse_qubit(q: &str, num_qubits: usize) -> Result<usize, String> {
    match q.trim().parse::<usize>() {
        Ok(k) if (1..=num_qubits).contains(&k) => Ok(k - 1),
        _ => Err(format!("qubit {q:?} must be an integer in 1..={num_qubits}")),
    }
}

fn demo(a: &DemoArgs, env_seed: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let kind = match a.code.as_str() {
        "bitflip3" => CodeKind::BitFlip3,
        "phaseflip3" => CodeKind::PhaseFlip3,
        "shor9" => CodeKind::Shor9,
        "erasure" => {
            if a.n == 0 || a.n > 32 {
                let _ = writeln!(err, "error: --n {} must be in 1..=32", a.n);
                return EXIT_USAGE;
            }
            CodeKind::Erasure(a.n)
        }
        other => {
            let _ = writeln!(err, "error: unknown code {other:?} (expected bitflip3, phaseflip3, shor9 or erasure)");
            return EXIT_USAGE;
        }
    };
    if !a.lose.is_empty() && !matches!(kind, CodeKind::Erasure(_)) {
        let _ = writeln!(err, "error: --lose only applies to the erasure code");
        return EXIT_USAGE;
    }
    let nq = kind.num_qubits();
    let mut errors = Vec::new();
    for spec in &a.errors {
        match parse_error_spec(spec, nq) {
            Ok(e) => errors.push(e),
            Err(msg) => {
                let _ = writeln!(err, "error: {msg}");
                return EXIT_USAGE;
            }
        }
    }
    let mut losses = Vec::new();
    for &k in &a.lose {
        match parse_qubit(&k.to_string(), nq) {
            Ok(q) if !losses.contains(&q) => losses.push(q),
            Ok(_) => {
                let _ = writeln!(err, "error: --lose {k} given twice");
                return EXIT_USAGE;
            }
            Err(msg) => {
                let _ = writeln!(err, "error: --lose: {msg}");
                return EXIT_USAGE;
            }
        }
    }
    let seed = match a.seed {
        Some(s) => s,
        None => match parse_env_seed(env_seed) {
            Ok(s) => s.unwrap_or(0),
            Err(msg) => {
                let _ = writeln!(err, "error: {msg}");
                return EXIT_USAGE;
            }
        },
    };
    let mode = match a.mode {
        ModeArg::Mod4 => SyndromeMode::OneProbeMod4,
        ModeArg::Binary => SyndromeMode::TwoProbeBinary,
    };
    match demo_walkthrough(kind, mode, &errors, &losses, seed, out) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FIDELITY,
        Err(DemoError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_IO
        }
        Err(DemoError::Sim(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

enum DemoError {
    Io(std::io::Error),
    Sim(crate::Error),
}

impl From<std::io::Error> for DemoError {
    fn from(e: std::io::Error) -> Self {
        DemoError::Io(e)
    }
}

impl From<crate::Error> for DemoError {
    fn from(e: crate::Error) -> Self {
        DemoError::Sim(e)
    }
}

fn print_state(out: &mut dyn Write, title: &str, state: &crate::HybridState) -> std::io::Result<()> {
    writeln!(out, "== {title}")?;
    writeln!(out, "{state}")
}

fn print_record(out: &mut dyn Write, title: &str, record: &crate::codes::SyndromeRecord) -> std::io::Result<()> {
    writeln!(out, "-- syndrome record ({title})")?;
    if record.is_empty() {
        writeln!(out, "(empty)")
    } else {
        writeln!(out, "{record}")
    }
}

/// Returns whether the final state matches the noiseless encoding.
fn demo_walkthrough(
    kind: CodeKind,
    mode: SyndromeMode,
    errors: &[(Pauli, usize)],
    losses: &[usize],
    seed: u64,
    out: &mut dyn Write,
) -> Result<bool, DemoError> {
    let probes = ProbeSettings::ideal(DEMO_THETA)?;
    let layout = CodeLayout::contiguous(kind)?;
    let (c0, c1) = (Complex64::new(0.6, 0.0), Complex64::new(0.8, 0.0));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut state = initial_register(kind, c0, c1)?;
    writeln!(out, "code: {}  input: 0.6|0> + 0.8|1>  seed: {seed}", code_label(kind))?;
    print_state(out, "initial register", &state)?;
    let record = encode(&mut state, &layout, mode, &probes, &mut rng)?;
    print_record(out, "encode", &record)?;
    print_state(out, "encoded", &state)?;
    let reference = state.clone();

    for &(p, q) in errors {
        inject_pauli(&mut state, q, p)?;
        print_state(out, &format!("after {p} on qubit {}", q + 1), &state)?;
    }
    for &q in losses {
        lose_qubit(&mut state, q, &mut rng)?;
        print_state(out, &format!("after losing qubit {}", q + 1), &state)?;
    }

    let (record, recovered) = correct(&mut state, &layout, mode, &probes, &mut rng)?;
    print_record(out, "correct", &record)?;
    if !matches!(kind, CodeKind::Erasure(_)) {
        let verdict = if record.all_trivial() { "all trivial" } else { "error detected" };
        writeln!(out, "error syndromes: {verdict}")?;
    }
    if !recovered {
        writeln!(out, "unrecoverable loss pattern")?;
        return Ok(false);
    }
    print_state(out, "corrected", &state)?;
    let fidelity = state.fidelity(&reference)?;
    writeln!(out, "fidelity: {fidelity:.10}")?;
    Ok(fidelity > 1.0 - 1e-10)
}

fn code_label(kind: CodeKind) -> String {
    match kind {
        CodeKind::BitFlip3 => "bitflip3".into(),
        CodeKind::PhaseFlip3 => "phaseflip3".into(),
        CodeKind::Shor9 => "shor9".into(),
        CodeKind::Erasure(n) => format!("erasure (n = {n})"),
    }
}

use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use mgltg::dense;
use mgltg::ltg::{self, LtgRepresentation, MarginOutcome, CENSUS_CSV_HEADER};
use mgltg::synthesis::{synthesize_function, synthesize_ltg_circuit, SynthesisResult};
use mgltg::verify::{self, Level};
use mgltg::wms::{equivalence_check, WmsProgram};
use mgltg::{BitString, BooleanFunction, Circuit, ErrorKind};

#[derive(Parser)]
#[command(name = "mgltg", version, about = "Matchgate circuits and linear threshold gates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact margin, certificates and integer weights of a truth table.
    Analyze {
        /// Truth table: binary string of length 2^n or 0x-prefixed hex.
        #[arg(long)]
        input: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Optimal matchgate circuit for a truth table or a {"w","theta"} file.
    Synthesize {
        /// Truth table, or path to a representation JSON file.
        #[arg(long)]
        input: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Measure qubit 1 after running a circuit on a basis input.
    Simulate {
        /// Circuit JSON (a synthesized circuit file also works).
        #[arg(long)]
        circuit: PathBuf,
        /// Input bits; padded with zeros up to the register size.
        #[arg(long)]
        input: String,
        #[arg(long, value_enum, default_value_t = Backend::Both)]
        backend: Backend,
        /// Largest accepted disagreement between backends.
        #[arg(long, default_value_t = mgltg::TOLERANCE)]
        tolerance: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Weighted majority sampling programs.
    Wms {
        #[command(subcommand)]
        command: WmsCommand,
    },
    /// Cross-check every pipeline against brute force.
    Verify {
        #[arg(long, default_value = "fast")]
        level: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Classify every function on n inputs; writes CSV.
    Census {
        /// Number of inputs, at most 4.
        #[arg(short, long)]
        n: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Subcommand)]
enum WmsCommand {
    /// Build a program from a truth table or a {"w","theta"} file.
    Compile {
        #[arg(long)]
        input: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Sample a program and compare with the exact probability.
    Run {
        #[arg(long)]
        program: PathBuf,
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Per-input agreement between a program and its synthesized circuit.
    Check {
        /// Truth table of a threshold function.
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args)]
struct OutputArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Backend {
    Rotation,
    Dense,
    Both,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn verification(message: impl Into<String>) -> Self {
        Self {
            code: 4,
            message: message.into(),
        }
    }
}

impl From<mgltg::Error> for Failure {
    fn from(e: mgltg::Error) -> Self {
        let code = match e.kind() {
            ErrorKind::InvalidInput => 2,
            ErrorKind::Capacity => 3,
            ErrorKind::Verification => 4,
        };
        let mut message = e.to_string();
        if matches!(e, mgltg::Error::NotLtg) {
            message.push_str(" (the margin LP optimum is 0; run `analyze` for the certificate)");
        }
        Self { code, message }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

type CliResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Analyze { input, out } => analyze(&input, &out),
        Command::Synthesize { input, out } => synthesize(&input, &out),
        Command::Simulate {
            circuit,
            input,
            backend,
            tolerance,
            out,
        } => simulate(&circuit, &input, backend, tolerance, &out),
        Command::Wms { command } => match command {
            WmsCommand::Compile { input, out } => wms_compile(&input, &out),
            WmsCommand::Run {
                program,
                input,
                samples,
                seed,
                out,
            } => wms_run(&program, &input, samples, seed, &out),
            WmsCommand::Check {
                input,
                tolerance,
                out,
            } => wms_check(&input, tolerance, &out),
        },
        Command::Verify { level, seed, out } => verify_suite(&level, seed, &out),
        Command::Census { n, out } => census(n, &out),
    }
}

fn emit(out: &OutputArgs, text: &str) -> CliResult<()> {
    match &out.output {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::invalid(format!("cannot write to stdout: {e}")))
        }
    }
}

fn emit_json(out: &OutputArgs, value: &Value) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("json values serialize");
    text.push('\n');
    emit(out, &text)
}

fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::invalid(format!("cannot read {}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    serde_json::from_str(&read_file(path)?)
        .map_err(|e| Failure::invalid(format!("malformed JSON in {}: {e}", path.display())))
}

/// `{"num", "den", "decimal"}`; integers too large for JSON numbers are
/// written as strings.
fn rational(q: &BigRational) -> Value {
    let int = |v: &BigInt| match v.to_i64() {
        Some(i) => json!(i),
        None => json!(v.to_string()),
    };
    json!({
        "num": int(q.numer()),
        "den": int(q.denom()),
        "decimal": ltg::to_f64(q),
    })
}

fn parse_bits(s: &str) -> CliResult<BitString> {
    s.parse::<BitString>()
        .map_err(|e| Failure::invalid(format!("bad input bits {s:?}: {e}")))
}

fn parse_table(s: &str) -> CliResult<BooleanFunction> {
    Ok(s.parse::<BooleanFunction>()?)
}

enum Target {
    Table(BooleanFunction),
    Representation(LtgRepresentation),
}

/// A truth table literal, or a file holding either a table or a
/// representation.
fn parse_target(input: &str) -> CliResult<Target> {
    if let Ok(f) = input.parse::<BooleanFunction>() {
        return Ok(Target::Table(f));
    }
    let path = Path::new(input);
    if !path.exists() {
        return Err(Failure::invalid(format!(
            "{input:?} is neither a truth table nor an existing file"
        )));
    }
    let text = read_file(path)?;
    if let Ok(f) = text.trim().parse::<BooleanFunction>() {
        return Ok(Target::Table(f));
    }
    let rep: LtgRepresentation = serde_json::from_str(&text)
        .map_err(|e| Failure::invalid(format!("{}: not a table or {{\"w\",\"theta\"}}: {e}", path.display())))?;
    Ok(Target::Representation(rep))
}

fn normalized(rep: LtgRepresentation) -> CliResult<LtgRepresentation> {
    if rep.is_normalized() {
        return Ok(rep);
    }
    eprintln!("note: dividing the representation by its 1-norm {}", rep.one_norm());
    Ok(rep.normalized()?)
}

fn analyze(input: &str, out: &OutputArgs) -> CliResult<()> {
    let f = parse_table(input)?;
    let n = f.num_inputs();
    let dependent = ltg::dependent_variables(&f);
    let mut report = json!({
        "table": f.to_binary(),
        "n": n,
        "constant": f.is_constant(),
        "dependent_variables": dependent,
    });
    match ltg::optimal_margin(&f)? {
        MarginOutcome::Ltg(cert) => {
            let bounds = ltg::integer_weight_bounds(&f)?;
            report["is_ltg"] = json!(true);
            report["margin"] = rational(&cert.epsilon);
            report["optimal_probability"] = rational(&cert.optimal_probability());
            report["representation"] = json!({
                "w": cert.rep.w.iter().map(rational).collect::<Vec<_>>(),
                "theta": rational(&cert.rep.theta),
            });
            report["witness"] = json!(cert.witness.to_string());
            report["integer_weight"] = json!({
                "lower_bound": rational(&bounds.lower),
                "upper_bound": rational(&bounds.upper),
                "achieved": bounds.achieved,
                "weight": bounds.achieved.weight(),
            });
            eprintln!(
                "{}: threshold gate, margin {} ≈ {:.6}, optimal success probability {}, integer weight {} in [{}, {}]",
                f.to_binary(),
                cert.epsilon,
                cert.epsilon_f64(),
                cert.optimal_probability(),
                bounds.achieved.weight(),
                bounds.lower,
                bounds.upper,
            );
        }
        MarginOutcome::NotLtg(proof) => {
            report["is_ltg"] = json!(false);
            report["certificate"] = json!({
                "input_weights": proof.input_weights.iter().map(rational).collect::<Vec<_>>(),
            });
            eprintln!(
                "{}: not a threshold gate; the margin LP optimum is 0 and the input weights cancel every signed feature",
                f.to_binary()
            );
        }
    }
    emit_json(out, &report)
}

fn synthesize(input: &str, out: &OutputArgs) -> CliResult<()> {
    let (result, f) = match parse_target(input)? {
        Target::Table(f) => (synthesize_function(&f)?, f),
        Target::Representation(rep) => {
            let rep = normalized(rep)?;
            let f = rep.function()?;
            (synthesize_ltg_circuit(&rep)?, f)
        }
    };
    check_synthesis(&result, &f)?;
    eprintln!(
        "{} qubits, {} gates, margin {:.6}, promised success probability {:.6}",
        result.circuit.num_qubits,
        result.circuit.gates.len(),
        result.margin,
        result.promised_probability
    );
    let doc = serde_json::to_value(result.to_document()).map_err(mgltg::Error::from)?;
    emit_json(out, &doc)
}

/// Re-checks the promise on the state vector when the register fits.
fn check_synthesis(result: &SynthesisResult, f: &BooleanFunction) -> CliResult<()> {
    if result.circuit.num_qubits > dense::MAX_QUBITS {
        eprintln!("note: register too large for the state-vector check");
        return Ok(());
    }
    let probs = dense::oracle_success_probabilities(&result.circuit, f)?;
    let min = probs.iter().copied().fold(f64::INFINITY, f64::min);
    if min < result.promised_probability - 1e-8 {
        return Err(Failure::verification(format!(
            "state-vector success probability {min} below promised {}",
            result.promised_probability
        )));
    }
    Ok(())
}

fn simulate(path: &Path, input: &str, backend: Backend, tolerance: f64, out: &OutputArgs) -> CliResult<()> {
    let circuit: Circuit = parse_json(path)?;
    let m = circuit.num_qubits;
    let x = parse_bits(input)?;
    if x.len() > m {
        return Err(Failure::invalid(format!("{} input bits for a {m}-qubit register", x.len())));
    }
    let x = x.padded(m - x.len());
    let measure = |z: f64| json!({ "p0": (1.0 + z) / 2.0, "expectation_z1": z });
    let mut report = json!({ "num_qubits": m, "input": x.to_string() });
    let mut values = Vec::new();
    if matches!(backend, Backend::Rotation | Backend::Both) {
        let z = circuit.compile()?.expectation_z1(&x)?;
        report["rotation"] = measure(z);
        values.push(("rotation", z));
    }
    if matches!(backend, Backend::Dense | Backend::Both) {
        let z = dense::oracle_expectation_z1(&circuit, &x)?;
        report["dense"] = measure(z);
        values.push(("dense", z));
    }
    for (name, z) in &values {
        eprintln!("{name}: p0 = {:.12}, <Z1> = {z:.12}", (1.0 + z) / 2.0);
    }
    if let [(_, a), (_, b)] = values[..] {
        let gap = (a - b).abs();
        report["discrepancy"] = json!(gap);
        emit_json(out, &report)?;
        if gap > tolerance {
            return Err(Failure::verification(format!("backends differ by {gap:e} > {tolerance:e}")));
        }
        return Ok(());
    }
    emit_json(out, &report)
}

fn wms_compile(input: &str, out: &OutputArgs) -> CliResult<()> {
    let rep = match parse_target(input)? {
        Target::Table(f) => match ltg::optimal_margin(&f)? {
            MarginOutcome::Ltg(cert) => cert.rep.to_f64(),
            MarginOutcome::NotLtg(_) => return Err(mgltg::Error::NotLtg.into()),
        },
        Target::Representation(rep) => normalized(rep)?,
    };
    let program = WmsProgram::from_representation(&rep)?;
    emit_json(out, &serde_json::to_value(&program).map_err(mgltg::Error::from)?)
}

fn wms_run(path: &Path, input: &str, samples: usize, seed: u64, out: &OutputArgs) -> CliResult<()> {
    if samples == 0 {
        return Err(Failure::invalid("--samples must be positive"));
    }
    let program: WmsProgram = parse_json(path)?;
    program.validate()?;
    let x = parse_bits(input)?;
    let exact = (1.0 + program.exact_output_expectation(&x)?) / 2.0;
    let freq = program.frequency_of_zero(&x, seed, samples)?;
    let sigma = (exact * (1.0 - exact) / samples as f64).sqrt();
    eprintln!("empirical frequency of 0: {freq:.6} ({samples} samples, seed {seed})");
    eprintln!("exact probability of 0:   {exact:.6} (σ = {sigma:.6})");
    emit_json(
        out,
        &json!({
            "input": x.to_string(),
            "samples": samples,
            "seed": seed,
            "empirical_frequency_zero": freq,
            "exact_probability_zero": exact,
            "standard_error": sigma,
        }),
    )
}

fn wms_check(input: &str, tolerance: f64, out: &OutputArgs) -> CliResult<()> {
    let f = parse_table(input)?;
    let report = equivalence_check(&f)?;
    let gap = report.max_discrepancy();
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "input": r.input.to_string(),
                "wms": r.wms_probability,
                "circuit": r.circuit_probability,
            })
        })
        .collect();
    emit_json(
        out,
        &json!({
            "program": report.program,
            "rows": rows,
            "max_discrepancy": gap,
        }),
    )?;
    eprintln!("max per-input discrepancy {gap:e}");
    if gap > tolerance {
        return Err(Failure::verification(format!("discrepancy {gap:e} > {tolerance:e}")));
    }
    Ok(())
}

fn verify_suite(level: &str, seed: u64, out: &OutputArgs) -> CliResult<()> {
    let level: Level = level.parse()?;
    let results = verify::run(level, seed);
    let mut failed = Vec::new();
    for r in &results {
        eprintln!("[{}] {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail);
        if !r.passed {
            failed.push(r.name);
        }
    }
    let checks: Vec<Value> = results
        .iter()
        .map(|r| json!({ "name": r.name, "passed": r.passed, "detail": r.detail }))
        .collect();
    emit_json(out, &json!({ "seed": seed, "passed": failed.is_empty(), "checks": checks }))?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::verification(format!("failed: {}", failed.join(", "))))
    }
}

fn census(n: usize, out: &OutputArgs) -> CliResult<()> {
    let entries = ltg::census(n)?;
    let mut csv = String::with_capacity(entries.len() * 32);
    csv.push_str(CENSUS_CSV_HEADER);
    csv.push('\n');
    for e in &entries {
        csv.push_str(&e.csv_row());
        csv.push('\n');
    }
    let count = entries.iter().filter(|e| e.is_ltg()).count();
    eprintln!("{count} of {} functions on {n} inputs are threshold gates", entries.len());
    emit(out, &csv)
}

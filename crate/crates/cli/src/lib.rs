//! Command-line driver: argument parsing, command dispatch, and reports.

mod commands;
mod suites;

use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use u11_langlands::arith::{ArithError, FieldElem, LocalRing, PrimeCtx};
use u11_langlands::kisin::Shape;

pub use suites::Violation;

#[derive(Parser, Debug)]
#[command(name = "u11", version, about = "Mod-p Langlands combinatorics for U(1,1)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub config: Config,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// List every irreducible non-supercuspidal label.
    Classify,
    /// Factors of the packet Π(r, λ, k).
    Packet,
    /// C-parameter of a packet and the full fiber over it.
    Correspond,
    /// Equivalence partner of ψ̃_{r,λ}, checked by conjugacy search when feasible.
    ParamEquiv,
    /// Genericity of ψ̃_{r,λ}, or of the type (a, b) when both are given.
    Generic,
    /// Orientation of the principal-series type (a, b).
    Orientation,
    /// Frobenius-twist self-duality of the type (a, b).
    Ftsd,
    /// Sample a gauge matrix and report its invariants.
    Shape,
    /// Base change and polarisation of ψ̃_{r,λ}.
    Polarise,
    /// Explicit deformation ring of a shape.
    Defring,
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::Packet => "packet",
            Command::Correspond => "correspond",
            Command::ParamEquiv => "param-equiv",
            Command::Generic => "generic",
            Command::Orientation => "orientation",
            Command::Ftsd => "ftsd",
            Command::Shape => "shape",
            Command::Polarise => "polarise",
            Command::Defring => "defring",
            Command::Verify { .. } => "verify",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Arith,
    Reps,
    Galois,
    Kisin,
    Correspondence,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Output {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingKind {
    /// F_{p^f}
    Field,
    /// Galois ring GR(p^m, f)
    Galois,
    /// (Z/p^m)[ϖ]/(ϖ² − p)
    Ramified,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShapeArg {
    #[value(name = "t")]
    T,
    #[value(name = "t'")]
    TPrime,
    #[value(name = "w")]
    W,
}

impl From<ShapeArg> for Shape {
    fn from(s: ShapeArg) -> Shape {
        match s {
            ShapeArg::T => Shape::T,
            ShapeArg::TPrime => Shape::TPrime,
            ShapeArg::W => Shape::W,
        }
    }
}

#[derive(clap::Args, Debug, Clone)]
pub struct Config {
    #[arg(long, global = true, default_value_t = 3)]
    pub p: u64,
    /// Degree of the coefficient field over F_p.
    #[arg(long, global = true, default_value_t = 1)]
    pub f: u32,
    /// Length of the coefficient rings (p^m) for shape and kisin sampling.
    #[arg(long, global = true, default_value_t = 2)]
    pub m: u32,
    /// "auto" or comma-separated little-endian coefficients of a monic modulus.
    #[arg(long, global = true, default_value = "auto")]
    pub modulus: String,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub r: Option<i64>,
    /// Comma-separated coefficients over the session modulus.
    #[arg(long, global = true, conflicts_with = "lambda_index")]
    pub lambda: Option<String>,
    /// Index into the nonzero field elements in lexicographic order.
    #[arg(long, global = true)]
    pub lambda_index: Option<usize>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub k: Option<i64>,
    /// Genericity level; for verify, restricts the level list to this value.
    #[arg(long, global = true)]
    pub n: Option<u64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub a: Option<i64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub b: Option<i64>,
    #[arg(long, global = true, value_enum)]
    pub shape: Option<ShapeArg>,
    #[arg(long, global = true, value_enum, default_value = "ramified")]
    pub ring: RingKind,
    #[arg(long, global = true, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub output: Output,
    /// Include wall-clock timing; reports are otherwise byte-identical across runs.
    #[arg(long, global = true)]
    pub timing: bool,
}

/// Failure of a command, mapped onto exit codes 2 and 3.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain { kind: &'static str, message: String },
}

impl CliError {
    pub fn domain(kind: &'static str, e: impl std::fmt::Display) -> Self {
        CliError::Domain {
            kind,
            message: e.to_string(),
        }
    }

    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain { .. } => 3,
        }
    }
}

impl From<ArithError> for CliError {
    fn from(e: ArithError) -> Self {
        CliError::domain("arith", e)
    }
}

#[derive(Serialize, Debug)]
pub struct ErrorRecord {
    pub kind: &'static str,
    pub message: String,
}

#[derive(Serialize, Debug)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Serialize, Debug)]
pub struct Report {
    pub command: String,
    pub results: Value,
    pub violations: Vec<Violation>,
    pub timing: Option<Timing>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorRecord>,
}

impl Config {
    pub fn ctx(&self) -> Result<PrimeCtx, CliError> {
        if self.modulus == "auto" {
            return Ok(PrimeCtx::new(self.p, self.f)?);
        }
        let coeffs = parse_ints(&self.modulus, "--modulus")?;
        Ok(PrimeCtx::with_modulus(self.p, &coeffs)?)
    }

    /// Context for the parameter and Kisin sides, which need `p` odd.
    pub fn odd_ctx(&self) -> Result<PrimeCtx, CliError> {
        if self.p == 2 {
            return Err(CliError::domain("arith", "p must be odd for this command"));
        }
        self.ctx()
    }

    pub fn lambda(&self, ctx: &PrimeCtx) -> Result<FieldElem, CliError> {
        let l = match (&self.lambda, self.lambda_index) {
            (Some(s), _) => ctx.elem(&parse_ints(s, "--lambda")?)?,
            (None, i) => ctx.lambda_by_index(i.unwrap_or(0))?,
        };
        if l.is_zero() {
            return Err(CliError::domain("bad-lambda", "lambda must be nonzero"));
        }
        Ok(l)
    }

    pub fn ring(&self) -> Result<std::sync::Arc<LocalRing>, CliError> {
        Ok(match self.ring {
            RingKind::Field => LocalRing::finite_field(self.p, self.f)?,
            RingKind::Galois => LocalRing::galois_ring(self.p, self.m, self.f)?,
            RingKind::Ramified => LocalRing::eisenstein(self.p, self.m, 2)?,
        })
    }

    pub fn n_list(&self) -> Vec<u64> {
        self.n.map_or_else(|| vec![0, 1, 2], |n| vec![n])
    }
}

pub fn require<T: Copy>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("{flag} is required")))
}

fn parse_ints(s: &str, flag: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("{flag} expects comma-separated integers")))
}

/// Output of one invocation: rendered report and exit code.
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (program name first) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let echo = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    match Cli::try_parse_from(&args) {
        Ok(cli) => run(&cli, echo),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 {
                (text, String::new())
            } else {
                (String::new(), text)
            };
            Outcome { stdout, stderr, code }
        }
    }
}

pub fn run(cli: &Cli, echo: String) -> Outcome {
    let start = Instant::now();
    let result = commands::dispatch(&cli.command, &cli.config);
    let timing = cli.config.timing.then(|| Timing {
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    });
    let (report, code) = match result {
        Ok((results, violations)) => {
            let code = i32::from(!violations.is_empty());
            let report = Report {
                command: echo,
                results,
                violations,
                timing,
                error: None,
            };
            (report, code)
        }
        Err(CliError::Usage(msg)) => {
            return Outcome {
                stdout: String::new(),
                stderr: format!("error: {msg}\n"),
                code: 2,
            }
        }
        Err(e @ CliError::Domain { .. }) => {
            let code = e.exit_code();
            let CliError::Domain { kind, message } = e else {
                unreachable!()
            };
            let report = Report {
                command: echo,
                results: Value::Null,
                violations: Vec::new(),
                timing,
                error: Some(ErrorRecord { kind, message }),
            };
            (report, code)
        }
    };
    Outcome {
        stdout: render(&report, cli.config.output),
        stderr: String::new(),
        code,
    }
}

fn render(report: &Report, output: Output) -> String {
    match output {
        Output::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Output::Text => render_text(report),
    }
}

/// Line-oriented projection of the JSON report.
fn render_text(report: &Report) -> String {
    let mut out = format!("command: {}\n", report.command);
    if let Some(e) = &report.error {
        out.push_str(&format!("error ({}): {}\n", e.kind, e.message));
        return out;
    }
    match &report.results {
        Value::Object(map) => {
            for (k, v) in map {
                out.push_str(&format!("{k}: {v}\n"));
            }
        }
        other => out.push_str(&format!("results: {other}\n")),
    }
    if report.violations.is_empty() {
        out.push_str("violations: none\n");
    } else {
        out.push_str(&format!("violations: {}\n", report.violations.len()));
        for v in &report.violations {
            out.push_str(&format!("  {}: {}\n", v.property, v.detail));
        }
    }
    if let Some(t) = &report.timing {
        out.push_str(&format!("elapsed_ms: {:.3}\n", t.elapsed_ms));
    }
    out
}

//! Command-line driver: `swt map | run | verify`.
//!
//! Exit codes: 0 success, 2 configuration or I/O problem, 3 first-order
//! elimination infeasible, 4 a verification check failed.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Result, SwtError};
use crate::fermion::{jw_map, FermionOperator};
use crate::models::ModelConfig;
use crate::oracle::{
    conjugate, exact_generator_dense, pauli_decompose, to_matrix, DegeneratePair,
    MAX_DENSE_QUBITS,
};
use crate::pauli::{PauliString, PauliSum};
use crate::swt::{
    bch_conjugate, build_ansatz, compute_eta, effective_hamiltonian, fit_generator, run_swt,
    split, SplitHamiltonian, SwtOptions, DEFAULT_MAX_DEPTH, DEFAULT_TOL,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_VERIFY_FAILED: i32 = 4;

/// Largest register for which verification runs by default and the
/// exponential-based checks are attempted.
pub const VERIFY_MAX_QUBITS: usize = 10;

/// Ratio windows for halving the off-diagonal part.
pub const FIRST_ORDER_WINDOW: (f64, f64) = (3.4, 4.6);
pub const SECOND_ORDER_WINDOW: (f64, f64) = (6.5, 9.5);
const BCH_CHECK_ORDER: usize = 10;
const BCH_CHECK_BOUND: f64 = 1e-8;

#[derive(Debug, Parser)]
#[command(name = "swt", version, about = "Schrieffer-Wolff transformation of qubit Hamiltonians")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Map a model to a qubit Hamiltonian.
    Map(CommonArgs),
    /// Run the full transformation and write the report.
    Run(CommonArgs),
    /// Cross-check every stage against the dense oracle.
    Verify(CommonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Model, fermion-operator, or qubit-Hamiltonian JSON file.
    #[arg(short = 'c', long = "config")]
    pub config: PathBuf,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Maximum ansatz closure depth.
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long = "no-verify")]
    pub no_verify: bool,
    /// Directory for output artifacts.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

/// What the config file describes.
#[derive(Debug, Clone, PartialEq)]
pub enum Input {
    Model(ModelConfig),
    Fermion(FermionOperator),
    Qubit(PauliSum),
}

impl Input {
    /// Detects the input kind from its keys: `model`, `n_modes`, or `n_qubits`.
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)?;
        if v.get("model").is_some() {
            Ok(Input::Model(serde_json::from_value(v)?))
        } else if v.get("n_modes").is_some() {
            FermionOperator::from_json(text).map(Input::Fermion)
        } else if v.get("n_qubits").is_some() {
            Ok(Input::Qubit(serde_json::from_value(v)?))
        } else {
            Err(SwtError::InvalidParams(
                "config needs a \"model\", \"n_modes\", or \"n_qubits\" key".into(),
            ))
        }
    }

    pub fn qubit_hamiltonian(&self) -> Result<PauliSum> {
        match self {
            Input::Model(m) => jw_map(&m.build()?),
            Input::Fermion(f) => jw_map(f),
            Input::Qubit(h) => Ok(h.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub input: Input,
    pub tol: f64,
    pub max_closure_depth: usize,
    pub verify: bool,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

impl RunConfig {
    /// Reads the config file; optional top-level `tol`, `max_closure_depth`, and
    /// `verify` keys are honoured unless overridden on the command line.
    pub fn load(args: &CommonArgs) -> Result<Self> {
        let text = fs::read_to_string(&args.config)?;
        let input = Input::from_json(&text)?;
        let v: Value = serde_json::from_str(&text)?;
        let tol = args
            .tol
            .or_else(|| v.get("tol").and_then(Value::as_f64))
            .unwrap_or(DEFAULT_TOL);
        let max_closure_depth = args
            .depth
            .or_else(|| v.get("max_closure_depth").and_then(Value::as_u64).map(|d| d as usize))
            .unwrap_or(DEFAULT_MAX_DEPTH);
        if tol.is_nan() || tol < 0.0 || max_closure_depth == 0 {
            return Err(SwtError::InvalidParams(
                "tol must be non-negative and depth at least 1".into(),
            ));
        }
        let n_qubits = input.qubit_hamiltonian()?.n_qubits();
        let verify_key = v.get("verify").and_then(Value::as_bool).unwrap_or(true);
        Ok(RunConfig {
            input,
            tol,
            max_closure_depth,
            verify: verify_key && !args.no_verify && n_qubits <= VERIFY_MAX_QUBITS,
            out: args.out.clone(),
            format: args.format,
        })
    }

    pub fn options(&self) -> SwtOptions {
        SwtOptions {
            tol: self.tol,
            max_depth: self.max_closure_depth,
        }
    }
}

/// Map, run, and verify write artifacts under `--out` and return text for stdout.
#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
    /// `(file name, contents)` pairs written under `--out`.
    pub artifacts: Vec<(String, String)>,
}

pub fn cmd_map(cfg: &RunConfig) -> Result<CommandOutput> {
    let h = cfg.input.qubit_hamiltonian()?;
    let json = h.to_json();
    let text = h.to_text();
    Ok(CommandOutput {
        exit_code: EXIT_OK,
        stdout: match cfg.format {
            OutputFormat::Json => format!("{json}\n"),
            OutputFormat::Text => text.clone(),
        },
        stderr: String::new(),
        artifacts: vec![
            ("qubit_hamiltonian.json".into(), format!("{json}\n")),
            ("qubit_hamiltonian.txt".into(), text),
        ],
    })
}

#[derive(Debug, Serialize)]
struct FailureRecord<'a> {
    error: &'static str,
    residual: f64,
    unreachable: Vec<String>,
    unmatched: &'a PauliSum,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    degenerate_pairs: Vec<DegeneratePair>,
}

fn degeneracy_pairs(parts: &SplitHamiltonian) -> Vec<DegeneratePair> {
    if parts.n_qubits() > MAX_DENSE_QUBITS {
        return Vec::new();
    }
    exact_generator_dense(parts, None)
        .map(|(_, r)| r.pairs)
        .unwrap_or_default()
}

pub fn cmd_run(cfg: &RunConfig) -> Result<CommandOutput> {
    let h = cfg.input.qubit_hamiltonian()?;
    match run_swt(&h, &cfg.options()) {
        Ok(report) => {
            let json = report.to_json();
            let mut summary = format!(
                "residual: {:e}\nclosure_depth: {}\ngenerator terms: {}\nh_eff terms: {}\n",
                report.constraint_residual,
                report.closure_depth,
                report.generator.len(),
                report.h_eff.len()
            );
            let mut exit_code = EXIT_OK;
            let mut stderr = String::new();
            if cfg.verify {
                let parts = split(&h);
                let (exact, _) = exact_generator_dense(&parts, None)?;
                let diff = report.generator.max_diff(&pauli_decompose(&exact))?;
                let ok = diff <= cfg.tol;
                summary.push_str(&format!(
                    "oracle cross-check: max |ΔS| = {diff:e} ({})\n",
                    if ok { "pass" } else { "FAIL" }
                ));
                if !ok {
                    exit_code = EXIT_VERIFY_FAILED;
                    stderr = format!("generator differs from the dense oracle by {diff:e}\n");
                }
            }
            Ok(CommandOutput {
                exit_code,
                stdout: match cfg.format {
                    OutputFormat::Json => format!("{json}\n"),
                    OutputFormat::Text => format!("{summary}{}", report.h_eff.to_text()),
                },
                stderr,
                artifacts: vec![("swt_report.json".into(), format!("{json}\n"))],
            })
        }
        Err(SwtError::EliminationInfeasible {
            residual,
            unmatched,
            unreachable,
        }) => {
            let pairs = if cfg.verify {
                degeneracy_pairs(&split(&h))
            } else {
                Vec::new()
            };
            let record = FailureRecord {
                error: "first-order elimination infeasible",
                residual,
                unreachable: unreachable.iter().map(PauliString::to_string).collect(),
                unmatched: &unmatched,
                degenerate_pairs: pairs,
            };
            let json = serde_json::to_string_pretty(&record)?;
            let mut stderr = format!(
                "first-order elimination infeasible: residual {residual:e}\nunreachable strings: {}\n",
                record.unreachable.join(" ")
            );
            for p in &record.degenerate_pairs {
                stderr.push_str(&format!(
                    "degenerate pair ({}, {}) at E = {}, Hv = ({}, {})\n",
                    p.i, p.j, p.energy, p.hv[0], p.hv[1]
                ));
            }
            Ok(CommandOutput {
                exit_code: EXIT_INFEASIBLE,
                stdout: match cfg.format {
                    OutputFormat::Json => format!("{json}\n"),
                    OutputFormat::Text => String::new(),
                },
                stderr,
                artifacts: vec![("swt_failure.json".into(), format!("{json}\n"))],
            })
        }
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    /// `[lo, hi]` acceptance window; upper-bound-only checks use `lo = 0`.
    pub bound: [f64; 2],
    pub passed: bool,
}

impl Check {
    fn at_most(name: &str, measured: f64, hi: f64) -> Self {
        Check {
            name: name.into(),
            measured,
            bound: [0.0, hi],
            passed: measured <= hi,
        }
    }

    fn within(name: &str, measured: f64, (lo, hi): (f64, f64)) -> Self {
        Check {
            name: name.into(),
            measured,
            bound: [lo, hi],
            passed: (lo..=hi).contains(&measured),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub degenerate_pairs: Vec<DegeneratePair>,
}

/// Dense `exp(S) H exp(−S)` and its distance from `H_eff`, with `hv` scaled by `lambda`.
///
/// Returns `(off-diagonal norm of the transformed H, ‖transformed H − H_eff‖_F)`.
pub fn transformed_norms(parts: &SplitHamiltonian, lambda: f64, depth: usize) -> Result<(f64, f64)> {
    let scaled = parts.with_scaled_hv(lambda);
    let basis = build_ansatz(&compute_eta(&scaled), &scaled.h0, depth)?;
    let s = fit_generator(&basis, &scaled)?.generator;
    let h_eff = effective_hamiltonian(&scaled, &s)?;
    let t = conjugate(&to_matrix(&scaled.total())?, &to_matrix(&s)?);
    Ok((t.off_diagonal_norm(), t.sub(&to_matrix(&h_eff)?).frobenius_norm()))
}

/// Every oracle equivalence plus both halving-ratio tests.
pub fn verify_hamiltonian(h: &PauliSum, opts: &SwtOptions) -> Result<VerifyReport> {
    let n = h.n_qubits();
    if n > MAX_DENSE_QUBITS {
        return Err(SwtError::TooLarge {
            n,
            max: MAX_DENSE_QUBITS,
        });
    }
    let parts = split(h);
    let tol = opts.tol;
    let mut checks = Vec::new();
    let (exact, degeneracy) = exact_generator_dense(&parts, None)?;
    checks.push(Check::at_most("nondegenerate", degeneracy.pairs.len() as f64, 0.0));

    let report = match run_swt(h, opts) {
        Ok(r) => r,
        Err(SwtError::EliminationInfeasible { residual, .. }) => {
            checks.push(Check::at_most("constraint_residual", residual, tol));
            let reason = if degeneracy.is_empty() { "infeasible" } else { "degenerate" };
            return Ok(VerifyReport {
                checks,
                passed: false,
                reason: Some(reason.into()),
                degenerate_pairs: degeneracy.pairs,
            });
        }
        Err(e) => return Err(e),
    };
    checks.push(Check::at_most("constraint_residual", report.constraint_residual, tol));

    let exact_pauli = pauli_decompose(&exact);
    checks.push(Check::at_most(
        "generator_vs_exact",
        report.generator.max_diff(&exact_pauli)?,
        tol,
    ));
    let max_re = report.generator.terms().iter().map(|t| t.coeff.re.abs()).fold(0.0, f64::max);
    checks.push(Check::at_most("generator_anti_hermitian", max_re, 0.0));
    let max_im = report.h_eff.terms().iter().map(|t| t.coeff.im.abs()).fold(0.0, f64::max);
    checks.push(Check::at_most("h_eff_hermitian", max_im, 0.0));

    let hv = to_matrix(&parts.hv)?;
    let dense_eff = to_matrix(&parts.h0)?.add(&exact.commutator(&hv).scale(Complex64::new(0.5, 0.0)));
    checks.push(Check::at_most(
        "h_eff_vs_dense",
        to_matrix(&report.h_eff)?.max_abs_diff(&dense_eff),
        tol,
    ));

    if n <= VERIFY_MAX_QUBITS && !parts.hv.is_empty() {
        let bch = to_matrix(&bch_conjugate(h, &report.generator, BCH_CHECK_ORDER)?)?;
        let dense = conjugate(&to_matrix(h)?, &to_matrix(&report.generator)?);
        checks.push(Check::at_most("bch_vs_expm", bch.max_abs_diff(&dense), BCH_CHECK_BOUND));

        let (off_full, rem_full) = transformed_norms(&parts, 1.0, opts.max_depth)?;
        let (off_half, rem_half) = transformed_norms(&parts, 0.5, opts.max_depth)?;
        checks.push(Check::within("first_order_scaling", off_full / off_half, FIRST_ORDER_WINDOW));
        checks.push(Check::within("second_order_scaling", rem_full / rem_half, SECOND_ORDER_WINDOW));
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        reason: (!passed).then(|| {
            if degeneracy.is_empty() { "check failed" } else { "degenerate" }.to_string()
        }),
        passed,
        checks,
        degenerate_pairs: degeneracy.pairs,
    })
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<CommandOutput> {
    let h = cfg.input.qubit_hamiltonian()?;
    let report = verify_hamiltonian(&h, &cfg.options())?;
    let json = serde_json::to_string_pretty(&report)?;
    let mut text = String::new();
    for c in &report.checks {
        text.push_str(&format!(
            "{:<26} {:>12.4e}  [{:e}, {:e}]  {}\n",
            c.name,
            c.measured,
            c.bound[0],
            c.bound[1],
            if c.passed { "pass" } else { "FAIL" }
        ));
    }
    if let Some(reason) = &report.reason {
        text.push_str(&format!("verification failed: {reason}\n"));
    }
    Ok(CommandOutput {
        exit_code: if report.passed { EXIT_OK } else { EXIT_VERIFY_FAILED },
        stdout: match cfg.format {
            OutputFormat::Json => format!("{json}\n"),
            OutputFormat::Text => text,
        },
        stderr: String::new(),
        artifacts: vec![("verify_report.json".into(), format!("{json}\n"))],
    })
}

fn exit_code_for(e: &SwtError) -> i32 {
    match e {
        SwtError::EliminationInfeasible { .. } | SwtError::ClosureNotReached { .. } => EXIT_INFEASIBLE,
        _ => EXIT_CONFIG,
    }
}

fn write_artifacts(dir: &Path, artifacts: &[(String, String)]) -> Result<()> {
    fs::create_dir_all(dir)?;
    for (name, contents) in artifacts {
        fs::write(dir.join(name), contents)?;
    }
    Ok(())
}

/// Parses `args`, runs the command, writes to the given streams, and returns the exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let (args, cmd): (&CommonArgs, fn(&RunConfig) -> Result<CommandOutput>) = match &cli.command {
        Command::Map(a) => (a, cmd_map),
        Command::Run(a) => (a, cmd_run),
        Command::Verify(a) => (a, cmd_verify),
    };
    let result = RunConfig::load(args).and_then(|cfg| {
        let output = cmd(&cfg)?;
        if let Some(dir) = &cfg.out {
            write_artifacts(dir, &output.artifacts)?;
        }
        Ok(output)
    });
    match result {
        Ok(o) => {
            let _ = out.write_all(o.stdout.as_bytes());
            let _ = err.write_all(o.stderr.as_bytes());
            o.exit_code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}

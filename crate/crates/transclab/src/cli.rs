//! Command-line interface: one binary, thirteen subcommands, reproducible
//! machine-readable outputs.
//!
//! Every run emits a JSON envelope `{schema, command, generated_unix_ms,
//! config, result}` where `config` echoes the fully resolved parameters
//! (including seed and thread count). A `--config file.json` provides
//! defaults that individual flags override. Outputs are byte-identical across
//! reruns and thread counts, up to the timestamp field.

use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::{json, Value};

use transclab_core::algebra::FieldContext;
use transclab_core::equidist::{
    box_measure, discrepancy_stats, BoxSpec, DEFAULT_POINT_CAP,
};
use transclab_core::families::{
    build_coherent_state, build_diagonal_unitary, build_phase_table, certify, FamilySpec,
    DEFAULT_CERTIFY_RANK_CAP, DEFAULT_TABLE_CAP,
};
use transclab_core::gamma::{gibbs_bounds, tn_feasibility, GammaValue, SpectrumSet, TnVerdict};
use transclab_core::hardness::{
    coherent_bound, diagonal_bound, sign_diagonal_bound, steinhaus_tail, HardnessQuery,
    OverlapVariant, SampleMode,
};
use transclab_core::synth::{
    builtin_gate, sk_overhead, CMatrix, GateSet, SynthesisOptions,
};

use crate::formats;
use crate::runner;

/// Exit-code classification: usage errors (2) versus domain errors (1).
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(anyhow::Error),
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Domain(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Parser, Debug)]
#[command(
    name = "transclab",
    version,
    about = "Exact complexity certificates, hardness bounds, equidistribution diagnostics, and brute-force circuit synthesis"
)]
pub struct Cli {
    /// JSON file with default parameter values (flags override it)
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Worker threads (fallback: TRANSCLAB_THREADS, then 1); results are
    /// identical for every value
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Write the JSON envelope here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Emit the exact complexity certificate of a phase family
    Certify(CertifyArgs),
    /// Emit the exact phase table (all d^n monomials)
    PhaseTable(PhaseTableArgs),
    /// Build the diagonal unitary U_t and export it as binary f64 pairs
    BuildUnitary(BuildArgs),
    /// Build the maximally coherent state ψ_t and export it
    BuildState(BuildArgs),
    /// Parameter-count a tensor-network graph and check feasibility
    TnAudit(TnAuditArgs),
    /// Gibbs-state γ bounds from a Hamiltonian spectrum
    Gibbs(GibbsArgs),
    /// Closed-form hardness bounds (diagonal, sign-diagonal, coherent, steinhaus)
    HardnessBound(HardnessBoundArgs),
    /// Monte Carlo measure of the ε-ball in the diagonal group
    McBall(McBallArgs),
    /// Monte Carlo (or exhaustive) overlap-tail verification
    McOverlap(McOverlapArgs),
    /// Generate Weyl points and export them as CSV
    Weyl(WeylArgs),
    /// Discrepancy and KS statistics of a Weyl sequence
    Discrepancy(DiscrepancyArgs),
    /// Brute-force circuit synthesis oracle
    Synth(SynthArgs),
    /// Gate-set-change overhead calculator
    SkBound(SkBoundArgs),
}

#[derive(Args, Debug, Default)]
pub struct FamilyArgs {
    /// Comma-separated distinct primes, e.g. 2,3,5
    #[arg(long)]
    pub primes: Option<String>,
    /// Use the first N primes instead of an explicit list
    #[arg(long)]
    pub first_primes: Option<usize>,
    /// Root order d ≥ 1
    #[arg(long)]
    pub d: Option<u32>,
    /// Number of primes (validated against the list when both are given)
    #[arg(long)]
    pub n: Option<usize>,
    /// Family parameter t ≥ 0 (integer or rational like 3/2)
    #[arg(long)]
    pub t: Option<String>,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Basis-size threshold below which γ runs through the elimination oracle
    #[arg(long)]
    pub rank_cap: Option<usize>,
}

#[derive(Args, Debug)]
pub struct PhaseTableArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Cap on d^n for materialized tables
    #[arg(long)]
    pub cap: Option<usize>,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Guaranteed decimal digits of every phase (mod 2π)
    #[arg(long)]
    pub precision: Option<u32>,
    /// Cap on d^n for materialized vectors
    #[arg(long)]
    pub cap: Option<usize>,
    /// Output path prefix: writes `<prefix>.bin` and `<prefix>.json`
    #[arg(long)]
    pub prefix: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TnAuditArgs {
    /// Tensor-network graph JSON file
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Compare against this γ value (decimal integer)
    #[arg(long)]
    pub gamma: Option<String>,
    /// Or compare against the certified γ of a family
    #[command(flatten)]
    pub family: FamilyArgs,
}

#[derive(Args, Debug)]
pub struct GibbsArgs {
    /// Comma-separated rational eigenvalues, e.g. 1,2,3 or 1,1/2
    #[arg(long)]
    pub rationals: Option<String>,
    /// JSON file holding an array of field-element objects
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct HardnessBoundArgs {
    /// One of: diagonal, sign-diagonal, coherent, steinhaus
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    /// Gate-set cardinality k
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub eps: Option<f64>,
    /// Hilbert-space dimension D (steinhaus kind only)
    #[arg(long)]
    pub dim: Option<u64>,
}

#[derive(Args, Debug)]
pub struct McBallArgs {
    /// Number of phase coordinates D ≤ 32
    #[arg(long, visible_alias = "D")]
    pub dim: Option<usize>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Write per-batch hit counts as CSV
    #[arg(long)]
    pub batch_csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct McOverlapArgs {
    /// Vector dimension D ≥ 4
    #[arg(long, visible_alias = "D")]
    pub dim: Option<usize>,
    #[arg(long)]
    pub eps: Option<f64>,
    /// steinhaus or rademacher
    #[arg(long)]
    pub variant: Option<String>,
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Enumerate all 2^D sign vectors exactly (rademacher only)
    #[arg(long)]
    pub exhaustive: bool,
    /// Write per-batch hit counts as CSV
    #[arg(long)]
    pub batch_csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct WeylArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Sequence length N
    #[arg(long, visible_alias = "N")]
    pub points: Option<u64>,
    /// Working precision in decimal digits (default: digits(N) + 12)
    #[arg(long)]
    pub precision: Option<u32>,
    /// Cap on N·D for the point matrix
    #[arg(long)]
    pub cap: Option<usize>,
    /// Write the points as CSV (t, coord0, …)
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DiscrepancyArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Sequence length N
    #[arg(long, visible_alias = "N")]
    pub points: Option<u64>,
    #[arg(long)]
    pub precision: Option<u32>,
    /// Anchored-grid resolution per coordinate (grid^D cells ≤ 10^6)
    #[arg(long)]
    pub grid: Option<u32>,
    #[arg(long)]
    pub cap: Option<usize>,
}

#[derive(Args, Debug)]
pub struct SynthArgs {
    /// Builtin target (identity, swap, cnot, cz) or @matrix.json
    #[arg(long)]
    pub target: Option<String>,
    /// Comma-separated builtin gate labels (cnot, cz, swap, h0, h1, t0, t1)
    /// or @gateset.json
    #[arg(long)]
    pub gateset: Option<String>,
    #[arg(long)]
    pub d: Option<u32>,
    /// Number of qudits
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub eps: Option<f64>,
    /// Iterative-deepening depth limit
    #[arg(long)]
    pub gmax: Option<usize>,
    /// Skip duplicate prefix products (must not change the result)
    #[arg(long)]
    pub prune: bool,
}

#[derive(Args, Debug)]
pub struct SkBoundArgs {
    /// Known circuit complexity C_ε ≥ 1
    #[arg(long)]
    pub c_eps: Option<u64>,
    #[arg(long)]
    pub eps: Option<f64>,
    /// Gate-set constant c > 0 (from the efficient-universality literature)
    #[arg(long, allow_hyphen_values = false)]
    pub c: Option<f64>,
}

// ---------------------------------------------------------------------------
// config file merging

/// Defaults loaded from --config; flags override these values.
pub struct ConfigDefaults(Value);

impl ConfigDefaults {
    fn load(path: Option<&Path>) -> CliResult<Self> {
        match path {
            None => Ok(ConfigDefaults(Value::Null)),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| usage(format!("cannot read config {}: {e}", p.display())))?;
                let value: Value = serde_json::from_str(&text)
                    .map_err(|e| usage(format!("malformed config {}: {e}", p.display())))?;
                Ok(ConfigDefaults(value))
            }
        }
    }

    fn get(&self, key: &str) -> Option<&Value> {
        self.0.get(key)
    }

    fn str(&self, key: &str) -> Option<String> {
        self.get(key).map(|v| match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        })
    }

    fn u64(&self, key: &str) -> Option<u64> {
        self.get(key).and_then(Value::as_u64)
    }

    fn f64(&self, key: &str) -> Option<f64> {
        self.get(key).and_then(Value::as_f64)
    }

    fn bool(&self, key: &str) -> Option<bool> {
        self.get(key).and_then(Value::as_bool)
    }
}

fn required<T>(value: Option<T>, flag: &str) -> CliResult<T> {
    value.ok_or_else(|| usage(format!("missing required --{flag}")))
}

// ---------------------------------------------------------------------------
// shared resolution

struct ResolvedFamily {
    spec: FamilySpec,
    config_echo: Value,
}

fn resolve_family(
    args: &FamilyArgs,
    cfg: &ConfigDefaults,
    default_t: Option<&str>,
) -> CliResult<ResolvedFamily> {
    let primes_text = args.primes.clone().or_else(|| cfg.str("primes"));
    let first = args
        .first_primes
        .or_else(|| cfg.u64("first_primes").map(|v| v as usize));
    let d = required(args.d.or_else(|| cfg.u64("d").map(|v| v as u32)), "d")?;
    let primes: Vec<BigUint> = match (&primes_text, first) {
        (Some(_), Some(_)) => {
            return Err(usage("--primes and --first-primes are mutually exclusive"))
        }
        (Some(text), None) => text
            .split(',')
            .map(|p| {
                BigUint::from_str(p.trim())
                    .map_err(|_| usage(format!("bad prime {:?} in --primes", p.trim())))
            })
            .collect::<CliResult<Vec<_>>>()?,
        (None, Some(k)) => {
            let ctx = FieldContext::with_first_primes(k, d)
                .map_err(|e| CliError::Domain(e.into()))?;
            ctx.primes().to_vec()
        }
        (None, None) => return Err(usage("need --primes or --first-primes")),
    };
    if let Some(n) = args.n.or_else(|| cfg.u64("n").map(|v| v as usize)) {
        if n != primes.len() {
            return Err(usage(format!(
                "--n {n} disagrees with {} primes",
                primes.len()
            )));
        }
    }
    let t_text = args
        .t
        .clone()
        .or_else(|| cfg.str("t"))
        .or_else(|| default_t.map(String::from));
    let t = match &t_text {
        Some(text) => formats::rational_from_string(text)
            .map_err(|e| usage(format!("bad --t: {e}")))?,
        None => return Err(usage("missing required --t")),
    };
    let context = Arc::new(FieldContext::new(primes.clone(), d)?);
    let spec = FamilySpec::new(context, t.clone())?;
    let config_echo = json!({
        "primes": primes.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "d": d,
        "n": primes.len(),
        "t": formats::rational_to_string(&t),
    });
    Ok(ResolvedFamily { spec, config_echo })
}

impl From<transclab_core::algebra::AlgebraError> for CliError {
    fn from(e: transclab_core::algebra::AlgebraError) -> Self {
        CliError::Domain(e.into())
    }
}

impl From<transclab_core::families::FamiliesError> for CliError {
    fn from(e: transclab_core::families::FamiliesError) -> Self {
        CliError::Domain(e.into())
    }
}

impl From<transclab_core::gamma::GammaError> for CliError {
    fn from(e: transclab_core::gamma::GammaError) -> Self {
        CliError::Domain(e.into())
    }
}

impl From<transclab_core::hardness::HardnessError> for CliError {
    fn from(e: transclab_core::hardness::HardnessError) -> Self {
        CliError::Domain(e.into())
    }
}

impl From<transclab_core::equidist::EquidistError> for CliError {
    fn from(e: transclab_core::equidist::EquidistError) -> Self {
        CliError::Domain(e.into())
    }
}

impl From<transclab_core::synth::SynthError> for CliError {
    fn from(e: transclab_core::synth::SynthError) -> Self {
        CliError::Domain(e.into())
    }
}

// ---------------------------------------------------------------------------
// dispatch

/// Runs a parsed invocation end to end, writing the envelope to --out or
/// stdout.
pub fn run(cli: Cli) -> CliResult<()> {
    let cfg = ConfigDefaults::load(cli.config.as_deref())?;
    let threads = runner::resolve_threads(cli.threads);
    let (name, config_echo, result) = dispatch(&cli.command, &cfg, threads)?;
    let envelope = json!({
        "schema": crate::SCHEMA,
        "command": name,
        "generated_unix_ms": unix_ms(),
        "config": config_echo,
        "result": result,
    });
    let text = serde_json::to_string_pretty(&envelope).expect("serializable");
    match &cli.out {
        Some(path) => std::fs::write(path, text.as_bytes())
            .with_context(|| format!("cannot write {}", path.display()))
            .map_err(CliError::Domain)?,
        None => println!("{text}"),
    }
    Ok(())
}

fn unix_ms() -> u128 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_millis())
        .unwrap_or(0)
}

fn dispatch(
    command: &Command,
    cfg: &ConfigDefaults,
    threads: usize,
) -> CliResult<(&'static str, Value, Value)> {
    match command {
        Command::Certify(args) => {
            let family = resolve_family(&args.family, cfg, None)?;
            let rank_cap = args
                .rank_cap
                .or_else(|| cfg.u64("rank_cap").map(|v| v as usize))
                .unwrap_or(DEFAULT_CERTIFY_RANK_CAP);
            let cert = certify(&family.spec, rank_cap)?;
            let mut echo = family.config_echo;
            echo["rank_cap"] = json!(rank_cap);
            echo["threads"] = json!(threads);
            Ok((
                "certify",
                echo,
                json!({ "certificate": formats::certificate_to_json(&cert) }),
            ))
        }
        Command::PhaseTable(args) => {
            let family = resolve_family(&args.family, cfg, Some("0"))?;
            let cap = args
                .cap
                .or_else(|| cfg.u64("cap").map(|v| v as usize))
                .unwrap_or(DEFAULT_TABLE_CAP);
            let table = build_phase_table(&family.spec, cap)?;
            let entries: Vec<_> = table
                .entries()
                .iter()
                .map(formats::element_to_json)
                .collect();
            let mut echo = family.config_echo;
            echo["cap"] = json!(cap);
            echo["threads"] = json!(threads);
            Ok((
                "phase-table",
                echo,
                json!({ "size": entries.len(), "entries": entries }),
            ))
        }
        Command::BuildUnitary(args) => {
            let family = resolve_family(&args.family, cfg, None)?;
            let precision = args
                .precision
                .or_else(|| cfg.u64("precision").map(|v| v as u32))
                .unwrap_or(12);
            let cap = args
                .cap
                .or_else(|| cfg.u64("cap").map(|v| v as usize))
                .unwrap_or(DEFAULT_TABLE_CAP);
            let prefix = required(
                args.prefix
                    .clone()
                    .or_else(|| cfg.str("prefix").map(PathBuf::from)),
                "prefix",
            )?;
            let unitary = build_diagonal_unitary(&family.spec, precision, cap)?;
            let sidecar =
                formats::export_diagonal_unitary(&prefix, &unitary).map_err(CliError::Domain)?;
            let mut echo = family.config_echo;
            echo["precision"] = json!(precision);
            echo["cap"] = json!(cap);
            echo["prefix"] = json!(prefix.display().to_string());
            echo["threads"] = json!(threads);
            Ok((
                "build-unitary",
                echo,
                json!({
                    "dim": unitary.dim(),
                    "error_bound": unitary.error_bound(),
                    "sidecar": sidecar,
                }),
            ))
        }
        Command::BuildState(args) => {
            let family = resolve_family(&args.family, cfg, None)?;
            let precision = args
                .precision
                .or_else(|| cfg.u64("precision").map(|v| v as u32))
                .unwrap_or(12);
            let cap = args
                .cap
                .or_else(|| cfg.u64("cap").map(|v| v as usize))
                .unwrap_or(DEFAULT_TABLE_CAP);
            let prefix = required(
                args.prefix
                    .clone()
                    .or_else(|| cfg.str("prefix").map(PathBuf::from)),
                "prefix",
            )?;
            let state = build_coherent_state(&family.spec, precision, cap)?;
            let sidecar = formats::export_state(&prefix, &state).map_err(CliError::Domain)?;
            let mut echo = family.config_echo;
            echo["precision"] = json!(precision);
            echo["cap"] = json!(cap);
            echo["prefix"] = json!(prefix.display().to_string());
            echo["threads"] = json!(threads);
            Ok((
                "build-state",
                echo,
                json!({
                    "dim": state.dim(),
                    "norm": state.norm(),
                    "error_bound": state.error_bound(),
                    "sidecar": sidecar,
                }),
            ))
        }
        Command::TnAudit(args) => {
            let graph_path = required(
                args.graph
                    .clone()
                    .or_else(|| cfg.str("graph").map(PathBuf::from)),
                "graph",
            )?;
            let text = std::fs::read_to_string(&graph_path)
                .map_err(|e| usage(format!("cannot read {}: {e}", graph_path.display())))?;
            let graph_json: formats::TnGraphJson = serde_json::from_str(&text)
                .map_err(|e| usage(format!("malformed graph JSON: {e}")))?;
            let graph = formats::graph_from_json(&graph_json).map_err(CliError::Domain)?;
            let counts = graph.parameter_count();
            let mut echo = json!({
                "graph": graph_path.display().to_string(),
                "threads": threads,
            });
            let gamma_text = args.gamma.clone().or_else(|| cfg.str("gamma"));
            let gamma: Option<GammaValue> = match &gamma_text {
                Some(text) => {
                    let value = BigUint::from_str(text)
                        .map_err(|_| usage(format!("bad --gamma {text:?}")))?;
                    echo["gamma"] = json!(text);
                    Some(GammaValue::exact(value, vec![]))
                }
                None if args.family.primes.is_some() || args.family.first_primes.is_some() => {
                    let family = resolve_family(&args.family, cfg, None)?;
                    let cert = certify(&family.spec, DEFAULT_CERTIFY_RANK_CAP)?;
                    echo["family"] = family.config_echo;
                    echo["gamma"] = json!(cert.gamma.value.to_string());
                    Some(cert.gamma)
                }
                None => None,
            };
            let verdict = match &gamma {
                Some(g) => Some(match tn_feasibility(g, &graph)? {
                    TnVerdict::Infeasible => "INFEASIBLE",
                    TnVerdict::Undecided => "UNDECIDED",
                }),
                None => None,
            };
            Ok((
                "tn-audit",
                echo,
                json!({
                    "counts": formats::tn_count_to_json(&counts),
                    "verdict": verdict,
                }),
            ))
        }
        Command::Gibbs(args) => {
            let rationals = args.rationals.clone().or_else(|| cfg.str("rationals"));
            let input = args
                .input
                .clone()
                .or_else(|| cfg.str("input").map(PathBuf::from));
            let (values, echo_src) = match (&rationals, &input) {
                (Some(_), Some(_)) => {
                    return Err(usage("--rationals and --input are mutually exclusive"))
                }
                (Some(list), None) => {
                    let ctx = Arc::new(FieldContext::new(vec![], 1)?);
                    let values = list
                        .split(',')
                        .map(|s| {
                            let q = formats::rational_from_string(s)
                                .map_err(|e| usage(format!("bad rational {s:?}: {e}")))?;
                            Ok(transclab_core::algebra::RadicalElement::from_rational(
                                ctx.clone(),
                                q,
                            ))
                        })
                        .collect::<CliResult<Vec<_>>>()?;
                    (values, json!({ "rationals": list }))
                }
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
                    let jsons: Vec<formats::RadicalElementJson> = serde_json::from_str(&text)
                        .map_err(|e| usage(format!("malformed element JSON: {e}")))?;
                    let values = formats::elements_from_json(&jsons).map_err(CliError::Domain)?;
                    (values, json!({ "input": path.display().to_string() }))
                }
                (None, None) => return Err(usage("need --rationals or --input")),
            };
            let spectrum = SpectrumSet::new(values)?;
            let bounds = gibbs_bounds(&spectrum)?;
            let mut echo = echo_src;
            echo["threads"] = json!(threads);
            Ok(("gibbs", echo, json!(formats::gibbs_to_json(&bounds))))
        }
        Command::HardnessBound(args) => {
            let kind = required(args.kind.clone().or_else(|| cfg.str("kind")), "kind")?;
            let eps = required(args.eps.or_else(|| cfg.f64("eps")), "eps")?;
            match kind.as_str() {
                "steinhaus" => {
                    let dim = required(args.dim.or_else(|| cfg.u64("dim")), "dim")?;
                    let tail = steinhaus_tail(dim, eps)?;
                    let echo = json!({ "kind": kind, "dim": dim, "eps": eps, "threads": threads });
                    Ok((
                        "hardness-bound",
                        echo,
                        json!({
                            "tau": tail.tau,
                            "bound": tail.bound,
                            "log10_bound": finite_or_null(tail.log10_bound),
                            "weakened_quarter": tail.weakened_quarter,
                            "log10_weakened_quarter": finite_or_null(tail.log10_weakened_quarter),
                            "weakened_constant": tail.weakened_constant,
                            "log10_weakened_constant": finite_or_null(tail.log10_weakened_constant),
                        }),
                    ))
                }
                "diagonal" | "sign-diagonal" | "coherent" => {
                    let d = required(args.d.or_else(|| cfg.u64("d").map(|v| v as u32)), "d")?;
                    let n = required(args.n.or_else(|| cfg.u64("n").map(|v| v as u32)), "n")?;
                    let k = required(args.k.or_else(|| cfg.u64("k").map(|v| v as u32)), "k")?;
                    let query = HardnessQuery::new(d, n, k, eps)?;
                    let echo = json!({
                        "kind": kind, "d": d, "n": n, "k": k, "eps": eps, "threads": threads,
                    });
                    let result = match kind.as_str() {
                        "diagonal" => {
                            let b = diagonal_bound(&query)?;
                            json!({
                                "g": b.g,
                                "measure_bound": b.measure_bound,
                                "log10_measure_bound": finite_or_null(b.log10_measure_bound),
                            })
                        }
                        "sign-diagonal" => {
                            let b = sign_diagonal_bound(&query)?;
                            json!({
                                "bound": b.bound,
                                "log10_bound": finite_or_null(b.log10_bound),
                            })
                        }
                        _ => {
                            let b = coherent_bound(&query)?;
                            json!({
                                "g_cap": b.g_cap,
                                "bound": b.bound,
                                "log10_bound": finite_or_null(b.log10_bound),
                                "sign_bound": b.sign_bound,
                                "log10_sign_bound": b.log10_sign_bound,
                            })
                        }
                    };
                    Ok(("hardness-bound", echo, result))
                }
                other => Err(usage(format!(
                    "unknown --kind {other:?} (expected diagonal, sign-diagonal, coherent, steinhaus)"
                ))),
            }
        }
        Command::McBall(args) => {
            let dim = required(
                args.dim.or_else(|| cfg.u64("dim").map(|v| v as usize)),
                "dim",
            )?;
            let eps = required(args.eps.or_else(|| cfg.f64("eps")), "eps")?;
            let samples = required(args.samples.or_else(|| cfg.u64("samples")), "samples")?;
            let seed = args.seed.or_else(|| cfg.u64("seed")).unwrap_or(0);
            let (report, blocks) =
                runner::run_ball(dim, eps, samples, seed, threads).map_err(CliError::Domain)?;
            if let Some(path) = args
                .batch_csv
                .clone()
                .or_else(|| cfg.str("batch_csv").map(PathBuf::from))
            {
                formats::write_batch_csv(&path, &blocks).map_err(CliError::Domain)?;
            }
            let echo = json!({
                "dim": dim, "eps": eps, "samples": samples, "seed": seed, "threads": threads,
            });
            Ok(("mc-ball", echo, json!(formats::mc_report_to_json(&report))))
        }
        Command::McOverlap(args) => {
            let dim = required(
                args.dim.or_else(|| cfg.u64("dim").map(|v| v as usize)),
                "dim",
            )?;
            let eps = required(args.eps.or_else(|| cfg.f64("eps")), "eps")?;
            let variant_text = args
                .variant
                .clone()
                .or_else(|| cfg.str("variant"))
                .unwrap_or_else(|| "steinhaus".into());
            let variant = match variant_text.as_str() {
                "steinhaus" => OverlapVariant::Steinhaus,
                "rademacher" => OverlapVariant::Rademacher,
                other => return Err(usage(format!("unknown --variant {other:?}"))),
            };
            let exhaustive = args.exhaustive || cfg.bool("exhaustive").unwrap_or(false);
            let seed = args.seed.or_else(|| cfg.u64("seed")).unwrap_or(0);
            let mode = if exhaustive {
                SampleMode::Exhaustive
            } else {
                let samples = required(args.samples.or_else(|| cfg.u64("samples")), "samples")?;
                SampleMode::Monte { samples, seed }
            };
            let (report, blocks) =
                runner::run_overlap(dim, eps, variant, mode, threads).map_err(CliError::Domain)?;
            if let Some(path) = args
                .batch_csv
                .clone()
                .or_else(|| cfg.str("batch_csv").map(PathBuf::from))
            {
                formats::write_batch_csv(&path, &blocks).map_err(CliError::Domain)?;
            }
            let echo = json!({
                "dim": dim, "eps": eps, "variant": variant_text,
                "exhaustive": exhaustive, "seed": seed,
                "samples": report.samples, "threads": threads,
            });
            Ok((
                "mc-overlap",
                echo,
                json!(formats::mc_report_to_json(&report)),
            ))
        }
        Command::Weyl(args) => {
            let family = resolve_family(&args.family, cfg, Some("0"))?;
            let n_points = required(args.points.or_else(|| cfg.u64("points")), "points")?;
            let precision = args
                .precision
                .or_else(|| cfg.u64("precision").map(|v| v as u32));
            let cap = args
                .cap
                .or_else(|| cfg.u64("cap").map(|v| v as usize))
                .unwrap_or(DEFAULT_POINT_CAP);
            let seq = runner::run_weyl(&family.spec, n_points, precision, cap, threads)
                .map_err(CliError::Domain)?;
            let csv = args
                .csv
                .clone()
                .or_else(|| cfg.str("csv").map(PathBuf::from));
            if let Some(path) = &csv {
                write_points_csv(path, &seq).map_err(CliError::Domain)?;
            }
            let mut echo = family.config_echo;
            echo["points"] = json!(n_points);
            echo["precision"] = json!(seq.precision());
            echo["cap"] = json!(cap);
            echo["threads"] = json!(threads);
            if let Some(path) = &csv {
                echo["csv"] = json!(path.display().to_string());
            }
            Ok((
                "weyl",
                echo,
                json!({
                    "dim": seq.dim(),
                    "points": seq.len(),
                    "point_error": seq.point_error(),
                    "theta": seq
                        .theta()
                        .iter()
                        .map(|t| json!({ "value": t.value, "unit_error": t.unit_error }))
                        .collect::<Vec<_>>(),
                }),
            ))
        }
        Command::Discrepancy(args) => {
            let family = resolve_family(&args.family, cfg, Some("0"))?;
            let n_points = required(args.points.or_else(|| cfg.u64("points")), "points")?;
            let precision = args
                .precision
                .or_else(|| cfg.u64("precision").map(|v| v as u32));
            let grid = args
                .grid
                .or_else(|| cfg.u64("grid").map(|v| v as u32))
                .unwrap_or(2);
            let cap = args
                .cap
                .or_else(|| cfg.u64("cap").map(|v| v as usize))
                .unwrap_or(DEFAULT_POINT_CAP);
            let seq = runner::run_weyl(&family.spec, n_points, precision, cap, threads)
                .map_err(CliError::Domain)?;
            let stats = discrepancy_stats(&seq, grid)?;
            // the anchored half cube is a cheap, interpretable companion
            let half = BoxSpec::anchored_cube(seq.dim(), 0.5)
                .and_then(|b| box_measure(&seq, &b))?;
            let mut echo = family.config_echo;
            echo["points"] = json!(n_points);
            echo["precision"] = json!(seq.precision());
            echo["grid"] = json!(grid);
            echo["cap"] = json!(cap);
            echo["threads"] = json!(threads);
            Ok((
                "discrepancy",
                echo,
                json!({
                    "dim": seq.dim(),
                    "max_box_deviation": stats.max_box_deviation,
                    "per_coordinate_ks": stats.per_coordinate_ks,
                    "half_cube": {
                        "fraction": half.fraction,
                        "volume": half.volume,
                        "deviation": half.deviation,
                    },
                }),
            ))
        }
        Command::Synth(args) => {
            let d = args.d.or_else(|| cfg.u64("d").map(|v| v as u32)).unwrap_or(2);
            let n = args
                .n
                .or_else(|| cfg.u64("n").map(|v| v as usize))
                .unwrap_or(2);
            let target_text = required(args.target.clone().or_else(|| cfg.str("target")), "target")?;
            let gateset_text =
                required(args.gateset.clone().or_else(|| cfg.str("gateset")), "gateset")?;
            let eps = args.eps.or_else(|| cfg.f64("eps")).unwrap_or(1e-9);
            let gmax = args
                .gmax
                .or_else(|| cfg.u64("gmax").map(|v| v as usize))
                .unwrap_or(4);
            let prune = args.prune || cfg.bool("prune").unwrap_or(false);
            let gs = resolve_gateset(&gateset_text, d)?;
            let (target, label) = resolve_target(&target_text, d, n)?;
            let mut opts = SynthesisOptions::new(eps, gmax);
            opts.prune = prune;
            let result = runner::run_synth(&target, &label, &gs, n, &opts, threads)
                .map_err(CliError::Domain)?;
            let echo = json!({
                "target": target_text, "gateset": gateset_text,
                "d": d, "n": n, "eps": eps, "gmax": gmax,
                "prune": prune, "threads": threads,
            });
            Ok(("synth", echo, json!(formats::synthesis_to_json(&result))))
        }
        Command::SkBound(args) => {
            let c_eps = required(args.c_eps.or_else(|| cfg.u64("c_eps")), "c-eps")?;
            let eps = required(args.eps.or_else(|| cfg.f64("eps")), "eps")?;
            let c = args.c.or_else(|| cfg.f64("c")).unwrap_or(1.0);
            let bound = sk_overhead(c_eps, eps, c)?;
            let echo = json!({ "c_eps": c_eps, "eps": eps, "c": c, "threads": threads });
            Ok((
                "sk-bound",
                echo,
                json!({ "gate_count_bound": bound }),
            ))
        }
    }
}

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

fn write_points_csv(path: &Path, seq: &transclab_core::equidist::WeylSequence) -> anyhow::Result<()> {
    use std::io::Write;
    let mut out = std::io::BufWriter::new(
        std::fs::File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
    );
    write!(out, "t")?;
    for k in 0..seq.dim() {
        write!(out, ",coord{k}")?;
    }
    writeln!(out)?;
    for row in 0..seq.len() {
        write!(out, "{}", row + 1)?;
        for v in seq.row(row) {
            write!(out, ",{v}")?;
        }
        writeln!(out)?;
    }
    out.flush()?;
    Ok(())
}

fn resolve_gateset(text: &str, d: u32) -> CliResult<GateSet> {
    if let Some(path) = text.strip_prefix('@') {
        let raw = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read gate set {path}: {e}")))?;
        let json: formats::GateSetJson =
            serde_json::from_str(&raw).map_err(|e| usage(format!("malformed gate set: {e}")))?;
        if json.d != d {
            return Err(usage(format!(
                "gate set has d = {}, command uses d = {d}",
                json.d
            )));
        }
        return formats::gate_set_from_json(&json).map_err(CliError::Domain);
    }
    let labels: Vec<&str> = text.split(',').map(str::trim).collect();
    GateSet::from_builtin_labels(d, &labels).map_err(Into::into)
}

fn resolve_target(text: &str, d: u32, n: usize) -> CliResult<(CMatrix, String)> {
    if let Some(path) = text.strip_prefix('@') {
        let raw = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read target {path}: {e}")))?;
        let json: formats::MatrixJson =
            serde_json::from_str(&raw).map_err(|e| usage(format!("malformed target: {e}")))?;
        let m = formats::target_from_json(&json).map_err(CliError::Domain)?;
        return Ok((m, path.to_string()));
    }
    let lower = text.to_lowercase();
    let dim = (d as usize).pow(n as u32);
    match lower.as_str() {
        "identity" => Ok((CMatrix::identity(dim), lower)),
        "swap" | "cnot" | "cz" => {
            if n != 2 {
                return Err(usage(format!("builtin target {lower:?} requires --n 2")));
            }
            Ok((builtin_gate(&lower, d)?, lower))
        }
        other => Err(usage(format!(
            "unknown target {other:?} (builtins: identity, swap, cnot, cz; or @matrix.json)"
        ))),
    }
}


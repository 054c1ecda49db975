//! Command-line surface: argument types, subcommand runners and run manifests.
//!
//! Every subcommand writes one output file, a manifest next to it at
//! `<out>.manifest.json`, and a single summary line on stdout.
//!
//! Exit codes: 0 success, 1 domain or input error, 2 resource ceiling,
//! 3 verification failure.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::config::Configuration;
use crate::counting::{
    conjecture_recurrence_check, count_t_direct_with, count_t_recurrence, count_t_summation_with, sequence_csv,
    AgreeingLimit, CountLedger,
};
use crate::diffusion::{default_max_steps, detect_period, run_sequence};
use crate::error::Error;
use crate::graph::parse_graph;
use crate::limits::{Limits, ENV_ORACLE_CEILING, ENV_ORIENTATION_CEILING};
use crate::oracle::{enumerate_p2_configurations_with, enumerate_p2_on_bridge_graph_with};
use crate::verify::{verify, Suite, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_CEILING: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "pdiffusion",
    version,
    about = "Parallel Diffusion chip-firing: simulate, classify and count period-2 configurations"
)]
pub struct Cli {
    /// Worker threads for enumeration (default: machine parallelism).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the firing rule for a fixed number of steps; writes a JSON-lines trace.
    Simulate(SimulateArgs),
    /// Find preperiod and period of a sequence; writes a JSON report.
    Period(PeriodArgs),
    /// Count period-2 configurations on P_n; writes the count with its ledger.
    Count(CountArgs),
    /// Write the R_n, A_n, T_n table as CSV.
    Sequence(SequenceArgs),
    /// Run the property suites; writes a JSON report.
    Verify(VerifyArgs),
    /// Measure the path recurrence on G_0 with a bridged path; writes a CSV.
    Conjecture(ConjectureArgs),
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// `path:<n>` or a path to an edge-list file.
    #[arg(long)]
    pub graph: String,
    /// Comma-separated stacks, `v_1` first.
    #[arg(long, allow_hyphen_values = true)]
    pub config: String,
    #[arg(long)]
    pub steps: usize,
    #[arg(long, default_value = "trace.jsonl")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct PeriodArgs {
    #[arg(long)]
    pub graph: String,
    #[arg(long, allow_hyphen_values = true)]
    pub config: String,
    /// Defaults to 10 n (max - min + 1).
    #[arg(long)]
    pub max_steps: Option<usize>,
    #[arg(long, default_value = "period.json")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMethod {
    Recurrence,
    Summation,
    Direct,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LimitArg {
    Full,
    Truncated,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "recurrence")]
    pub method: CountMethod,
    /// Upper limit of the agreeing-first sum (summation only).
    #[arg(long, value_enum, default_value = "full")]
    pub agreeing_limit: LimitArg,
    /// Oracle offset bound between neighbouring stacks.
    #[arg(long, default_value_t = 3)]
    pub diff_bound: u32,
    /// Include every oracle configuration in the output.
    #[arg(long)]
    pub list_configurations: bool,
    #[arg(long, default_value = "count.json")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SequenceArgs {
    #[arg(long, default_value_t = 30)]
    pub max_n: usize,
    #[arg(long, default_value = "sequence.csv")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Comma-separated subset of graph, engine, orientation, counting, oracle.
    #[arg(long, value_delimiter = ',')]
    pub suites: Vec<String>,
    /// Caps the path length of every suite.
    #[arg(long)]
    pub max_n: Option<usize>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value = "verify.json")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ConjectureArgs {
    /// Edge-list file describing G_0.
    #[arg(long)]
    pub g0: PathBuf,
    /// Vertex of G_0 the path hangs from.
    #[arg(long, default_value_t = 1)]
    pub base: usize,
    #[arg(long, default_value_t = 4)]
    pub k_min: usize,
    #[arg(long, default_value_t = 8)]
    pub k_max: usize,
    /// Starting stack window around the pinned vertex.
    #[arg(long, default_value_t = 3)]
    pub diff_bound: u32,
    #[arg(long, default_value = "conjecture.csv")]
    pub out: PathBuf,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{failed} of {total} properties failed")]
    Verification { failed: usize, total: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(e) if e.is_ceiling() => EXIT_CEILING,
            CliError::Domain(_) | CliError::Io { .. } => EXIT_DOMAIN,
            CliError::Verification { .. } => EXIT_VERIFICATION,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Written next to every output as `<out>.manifest.json`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub artifact_version: String,
    /// Seconds.
    pub wall_time: f64,
    pub output_path: PathBuf,
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

/// Result of one subcommand, before anything is written.
struct Outcome {
    body: String,
    summary: String,
    /// Set when the body is written but the run still has to fail.
    failure: Option<CliError>,
}

fn ok(body: String, summary: String) -> Result<Outcome, CliError> {
    Ok(Outcome {
        body,
        summary,
        failure: None,
    })
}

/// Parses `args` (program name first) and runs the subcommand. Returns the
/// exit code; diagnostics go to stderr, the summary line to stdout.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_DOMAIN } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(summary) => {
            println!("{summary}");
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Runs a parsed command; returns the stdout summary line.
pub fn run(cli: Cli) -> Result<String, CliError> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(Error::InvalidArgument("--jobs must be at least 1".into()).into());
        }
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let limits = Limits::from_env()?;
    let started = Instant::now();
    let (name, out, mut parameters, outcome) = match &cli.command {
        Command::Simulate(a) => ("simulate", &a.out, simulate_params(a), simulate(a)),
        Command::Period(a) => ("period", &a.out, period_params(a), period(a)),
        Command::Count(a) => ("count", &a.out, count_params(a), count(a, &limits)),
        Command::Sequence(a) => (
            "sequence",
            &a.out,
            params([("max_n", a.max_n.to_string())]),
            sequence(a),
        ),
        Command::Verify(a) => ("verify", &a.out, verify_params(a), run_verify(a, &limits)),
        Command::Conjecture(a) => ("conjecture", &a.out, conjecture_params(a), conjecture(a, &limits)),
    };
    let outcome = outcome?;
    if let Some(jobs) = cli.jobs {
        parameters.insert("jobs".into(), jobs.to_string());
    }
    parameters.insert(ENV_ORIENTATION_CEILING.into(), limits.orientation_max_n.to_string());
    parameters.insert(ENV_ORACLE_CEILING.into(), limits.oracle_max_candidates.to_string());

    fs::write(out, &outcome.body).map_err(io_err(out))?;
    let manifest = RunManifest {
        command: name.to_string(),
        parameters,
        artifact_version: env!("CARGO_PKG_VERSION").to_string(),
        wall_time: started.elapsed().as_secs_f64(),
        output_path: out.clone(),
    };
    let mpath = manifest_path(out);
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    fs::write(&mpath, json + "\n").map_err(io_err(&mpath))?;

    match outcome.failure {
        Some(e) => {
            println!("{}", outcome.summary);
            Err(e)
        }
        None => Ok(outcome.summary),
    }
}

fn params<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn load_graph(spec: &str) -> Result<crate::graph::SimpleGraph, CliError> {
    if spec.trim_start().starts_with("path:") {
        return Ok(parse_graph(spec)?);
    }
    let path = Path::new(spec);
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    Ok(parse_graph(&text)?)
}

fn simulate_params(a: &SimulateArgs) -> BTreeMap<String, String> {
    params([
        ("graph", a.graph.clone()),
        ("config", a.config.clone()),
        ("steps", a.steps.to_string()),
    ])
}

fn simulate(a: &SimulateArgs) -> Result<Outcome, CliError> {
    let graph = load_graph(&a.graph)?;
    let config: Configuration = a.config.parse()?;
    let trace = run_sequence(&graph, &config, a.steps)?;
    let last = trace.steps.last().expect("trace holds the initial configuration");
    ok(
        trace.to_json_lines(),
        format!("simulate: {} configurations, final {last}", trace.steps.len()),
    )
}

fn period_params(a: &PeriodArgs) -> BTreeMap<String, String> {
    let max = a.max_steps.map_or_else(|| "default".to_string(), |m| m.to_string());
    params([
        ("graph", a.graph.clone()),
        ("config", a.config.clone()),
        ("max_steps", max),
    ])
}

fn period(a: &PeriodArgs) -> Result<Outcome, CliError> {
    let graph = load_graph(&a.graph)?;
    let config: Configuration = a.config.parse()?;
    config.check_matches(&graph)?;
    let max_steps = a.max_steps.unwrap_or_else(|| default_max_steps(&graph, &config));
    let report = detect_period(&graph, &config, max_steps)?;
    let body = serde_json::to_string(&report).expect("report serializes") + "\n";
    ok(
        body,
        format!("period: preperiod {}, period {}", report.preperiod, report.period),
    )
}

#[derive(Serialize)]
struct Provenance {
    method: CountMethod,
    orientation_max_n: usize,
    oracle_max_candidates: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    agreeing_limit: Option<LimitArg>,
    #[serde(skip_serializing_if = "Option::is_none")]
    erratum: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    diff_bound: Option<u32>,
}

#[derive(Serialize)]
struct CountReport {
    n: usize,
    count: u128,
    provenance: Provenance,
    /// Absent when `n` is beyond the orientation ceiling.
    ledger: Option<CountLedger>,
    #[serde(skip_serializing_if = "Option::is_none")]
    configurations: Option<Vec<Configuration>>,
}

const AGREEING_LIMIT_NOTE: &str =
    "agreeing-first sum runs k = 3..=n-2; stopping at n-3 undercounts from n = 5 (88 instead of 96)";

fn count_params(a: &CountArgs) -> BTreeMap<String, String> {
    let mut p = params([("n", a.n.to_string()), ("method", method_name(a.method).to_string())]);
    match a.method {
        CountMethod::Summation => {
            p.insert(
                "agreeing_limit".into(),
                format!("{:?}", a.agreeing_limit).to_lowercase(),
            );
        }
        CountMethod::Oracle => {
            p.insert("diff_bound".into(), a.diff_bound.to_string());
        }
        _ => {}
    }
    p
}

fn method_name(m: CountMethod) -> &'static str {
    match m {
        CountMethod::Recurrence => "recurrence",
        CountMethod::Summation => "summation",
        CountMethod::Direct => "direct",
        CountMethod::Oracle => "oracle",
    }
}

fn count(a: &CountArgs, limits: &Limits) -> Result<Outcome, CliError> {
    let n = a.n;
    let mut configurations = None;
    let count = match a.method {
        CountMethod::Recurrence => count_t_recurrence(n)?,
        CountMethod::Direct => count_t_direct_with(n, limits)?,
        CountMethod::Summation => {
            let limit = match a.agreeing_limit {
                LimitArg::Full => AgreeingLimit::Full,
                LimitArg::Truncated => AgreeingLimit::Truncated,
            };
            count_t_summation_with(n, limit, limits)?
        }
        CountMethod::Oracle => {
            let result = enumerate_p2_configurations_with(n, a.diff_bound, limits)?;
            if a.list_configurations {
                configurations = Some(result.configurations);
            }
            result.count as u128
        }
    };
    let ledger = if n >= 1 && n <= limits.orientation_max_n {
        Some(CountLedger::build(n, limits)?)
    } else {
        None
    };
    let summation = a.method == CountMethod::Summation;
    let report = CountReport {
        n,
        count,
        provenance: Provenance {
            method: a.method,
            orientation_max_n: limits.orientation_max_n,
            oracle_max_candidates: limits.oracle_max_candidates,
            agreeing_limit: summation.then_some(a.agreeing_limit),
            erratum: summation.then_some(AGREEING_LIMIT_NOTE),
            diff_bound: (a.method == CountMethod::Oracle).then_some(a.diff_bound),
        },
        ledger,
        configurations,
    };
    let body = serde_json::to_string_pretty(&report).expect("count report serializes") + "\n";
    ok(body, format!("count: T_{n} = {count} ({})", method_name(a.method)))
}

fn sequence(a: &SequenceArgs) -> Result<Outcome, CliError> {
    let csv = sequence_csv(a.max_n)?;
    ok(csv, format!("sequence: {} rows", a.max_n))
}

fn verify_params(a: &VerifyArgs) -> BTreeMap<String, String> {
    let mut p = params([(
        "suites",
        if a.suites.is_empty() {
            "all".into()
        } else {
            a.suites.join(",")
        },
    )]);
    if let Some(m) = a.max_n {
        p.insert("max_n".into(), m.to_string());
    }
    if let Some(t) = a.trials {
        p.insert("trials".into(), t.to_string());
    }
    if let Some(s) = a.seed {
        p.insert("seed".into(), s.to_string());
    }
    p
}

fn run_verify(a: &VerifyArgs, limits: &Limits) -> Result<Outcome, CliError> {
    let suites = a.suites.iter().map(|s| s.parse()).collect::<Result<Vec<Suite>, _>>()?;
    let mut config = VerifyConfig {
        limits: *limits,
        ..VerifyConfig::default()
    };
    if let Some(cap) = a.max_n {
        for field in [
            &mut config.max_n_orientation,
            &mut config.max_n_routes,
            &mut config.max_n_structural,
            &mut config.max_n_witness,
            &mut config.max_n_alternating,
            &mut config.max_n_oracle,
            &mut config.max_n_bound_stability,
        ] {
            *field = (*field).min(cap);
        }
    }
    if let Some(t) = a.trials {
        config.random_trials = t;
    }
    if let Some(s) = a.seed {
        config.seed = s;
    }
    let report = verify(&suites, &config);
    for outcome in &report.outcomes {
        match &outcome.counterexample {
            None => eprintln!("pass  {}: {}", outcome.suite, outcome.property),
            Some(c) => eprintln!(
                "FAIL  {}: {}\n      counterexample: {c}",
                outcome.suite, outcome.property
            ),
        }
    }
    let total = report.outcomes.len();
    let failed = report.failures().count();
    let body = serde_json::to_string_pretty(&report).expect("verify report serializes") + "\n";
    let summary = format!("verify: {}/{total} properties passed", total - failed);
    let failure = (failed > 0).then_some(CliError::Verification { failed, total });
    Ok(Outcome { body, summary, failure })
}

fn conjecture_params(a: &ConjectureArgs) -> BTreeMap<String, String> {
    params([
        ("g0", a.g0.display().to_string()),
        ("base", a.base.to_string()),
        ("k_min", a.k_min.to_string()),
        ("k_max", a.k_max.to_string()),
        ("diff_bound", a.diff_bound.to_string()),
    ])
}

/// CSV columns: `k,vertices,count,final_window,residual,exploratory`.
/// `residual` is empty below `k_min` (and below 4, where it is undefined).
pub const CONJECTURE_HEADER: &str = "k,vertices,count,final_window,residual,exploratory";

fn conjecture(a: &ConjectureArgs, limits: &Limits) -> Result<Outcome, CliError> {
    let text = fs::read_to_string(&a.g0).map_err(io_err(&a.g0))?;
    let g0 = parse_graph(&text)?;
    if a.k_min > a.k_max {
        return Err(Error::InvalidArgument(format!("k-min {} exceeds k-max {}", a.k_min, a.k_max)).into());
    }
    let first = a.k_min.saturating_sub(4);
    let mut rows = Vec::new();
    for k in first..=a.k_max {
        rows.push(enumerate_p2_on_bridge_graph_with(&g0, a.base, k, a.diff_bound, limits)?);
    }
    let counts: Vec<i128> = rows.iter().map(|r| r.count as i128).collect();
    // residuals[j] belongs to k = first + 4 + j
    let residuals = if counts.len() >= 5 {
        conjecture_recurrence_check(&counts)?
    } else {
        Vec::new()
    };
    let mut csv = format!("{CONJECTURE_HEADER}\n");
    let mut worst = 0i128;
    for (j, row) in rows.iter().enumerate() {
        let residual = if row.k >= a.k_min && j >= 4 {
            Some(residuals[j - 4])
        } else {
            None
        };
        if let Some(r) = residual {
            worst = worst.max(r.abs());
        }
        let window = row.windows.last().map_or(0, |w| w.0);
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.k,
            row.vertex_count,
            row.count,
            window,
            residual.map_or_else(String::new, |r| r.to_string()),
            row.exploratory
        ));
    }
    ok(
        csv,
        format!(
            "conjecture: k = {}..={}, max |residual| {worst} (exploratory)",
            a.k_min, a.k_max
        ),
    )
}

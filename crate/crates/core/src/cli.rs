//! Command-line front end. The binary only forwards to [`main_with_args`];
//! everything else lives here so it can be tested in-process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::config::{BoardingConfig, DEFAULT_BUDGET};
use crate::distribution::{fraction_string, to_f64, ExactDistribution, ExactValue};
use crate::error::Error as CoreError;
use crate::exact;
use crate::process::{count_feasible, enumerate_feasible};
use crate::rng;
use crate::simulate;
use crate::stats;
use crate::svg;
use crate::verify::{self, ExactModel, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_VERIFY_FAILED: i32 = 4;

/// Largest `n` for which `simulate` shows the exact single-passenger pmf next
/// to the empirical one.
const EXACT_COLUMN_MAX_N: usize = 2_000;

#[derive(Debug, Parser)]
#[command(
    name = "absent-minded",
    version,
    about = "Exact laws and simulation of the absent-minded passenger boarding process"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandKind,
}

#[derive(Debug, Clone, Subcommand)]
pub enum CommandKind {
    /// List every feasible seating with its exact probability
    Enumerate(Flags),
    /// Exact pmf of the number of misplaced passengers
    Dist(Flags),
    /// Closed-form mean and variance
    Moments(Flags),
    /// Monte Carlo histogram of the number of misplaced passengers
    Simulate(Flags),
    /// Run a verification suite
    Verify(Flags),
    /// SVG bar chart of the exact pmf
    Chart(Flags),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Enumeration-based identities on a grid of small instances
    Exact,
    /// Chi-square fit of the simulator against exact laws
    Mc,
    /// Normal-limit ladder
    Clt,
    All,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Flags {
    /// Number of seats (and passengers)
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of absent-minded passengers
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Number of simulated boardings
    #[arg(long)]
    pub trials: Option<u64>,
    /// Base seed for the random streams
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output format (default depends on the command)
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
    /// Which verification suite to run
    #[arg(long, value_enum, default_value_t = Suite::Exact)]
    pub suite: Suite,
    /// Largest plane in the exact verification grid
    #[arg(long)]
    pub max_n: Option<usize>,
    /// Largest k in the exact verification grid
    #[arg(long)]
    pub max_k: Option<usize>,
    /// Cap on enumerated placements
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Enumerate,
    Dist,
    Moments,
    Simulate,
    Verify,
    Chart,
}

/// A fully validated invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub config: Option<BoardingConfig>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub suite: Suite,
    pub max_n: usize,
    pub max_k: usize,
    pub budget: u64,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Core(CoreError::BudgetExceeded { .. }) => EXIT_BUDGET,
            CliError::Core(_) => EXIT_VALIDATION,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let (command, flags) = match cli.command {
            CommandKind::Enumerate(f) => (Command::Enumerate, f),
            CommandKind::Dist(f) => (Command::Dist, f),
            CommandKind::Moments(f) => (Command::Moments, f),
            CommandKind::Simulate(f) => (Command::Simulate, f),
            CommandKind::Verify(f) => (Command::Verify, f),
            CommandKind::Chart(f) => (Command::Chart, f),
        };
        let config = match (command, flags.n) {
            (Command::Verify, _) => None,
            (_, None) => return Err(invalid("--n is required")),
            (_, Some(n)) => Some(BoardingConfig::new(n, flags.k)?),
        };
        let allowed: &[Format] = match command {
            Command::Enumerate | Command::Dist | Command::Simulate => {
                &[Format::Table, Format::Json, Format::Csv]
            }
            Command::Moments | Command::Verify => &[Format::Table, Format::Json],
            Command::Chart => &[Format::Svg],
        };
        let default_format = match command {
            Command::Verify => Format::Json,
            Command::Chart => Format::Svg,
            _ => Format::Table,
        };
        let format = flags.format.unwrap_or(default_format);
        if !allowed.contains(&format) {
            return Err(invalid(format!(
                "--format {format:?} is not available for this command"
            )));
        }
        if command == Command::Simulate {
            if flags.seed.is_none() {
                return Err(invalid("simulate requires --seed"));
            }
            if flags.trials.is_none() {
                return Err(invalid("simulate requires --trials"));
            }
        }
        if command == Command::Verify && flags.suite != Suite::Exact && flags.seed.is_none() {
            return Err(invalid("statistical suites require --seed"));
        }
        if flags.trials == Some(0) {
            return Err(invalid("--trials must be at least 1"));
        }
        let max_n = flags.max_n.unwrap_or(8);
        let max_k = flags.max_k.unwrap_or(3);
        if command == Command::Verify && matches!(flags.suite, Suite::Exact | Suite::All) {
            if max_n < 2 {
                return Err(invalid("--max-n must be at least 2"));
            }
            if max_k < 1 {
                return Err(invalid("--max-k must be at least 1"));
            }
        }
        Ok(Self {
            command,
            config,
            trials: flags.trials,
            seed: flags.seed,
            format,
            output: flags.output,
            suite: flags.suite,
            max_n,
            max_k,
            budget: flags.budget,
        })
    }

    fn instance(&self) -> BoardingConfig {
        self.config.expect("validated: every command but verify has an instance")
    }
}

/// Rendered result of a command.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Output {
    pub body: String,
    /// Lines for stderr (timing, throughput).
    pub diagnostics: Vec<String>,
    /// False when a verification check failed.
    pub success: bool,
}

impl Output {
    fn ok(body: String) -> Self {
        Self {
            body,
            diagnostics: Vec::new(),
            success: true,
        }
    }
}

pub fn run(cfg: &RunConfig) -> Result<Output, CliError> {
    match cfg.command {
        Command::Enumerate => cmd_enumerate(cfg),
        Command::Dist => cmd_dist(cfg),
        Command::Moments => cmd_moments(cfg),
        Command::Simulate => cmd_simulate(cfg),
        Command::Verify => cmd_verify(cfg),
        Command::Chart => cmd_chart(cfg),
    }
}

#[derive(Serialize)]
struct ConfigJson {
    n: usize,
    k: usize,
}

impl From<&BoardingConfig> for ConfigJson {
    fn from(c: &BoardingConfig) -> Self {
        Self { n: c.n(), k: c.k() }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn cmd_enumerate(cfg: &RunConfig) -> Result<Output, CliError> {
    let config = cfg.instance();
    let mut rows = enumerate_feasible(&config, cfg.budget)?;
    rows.sort_by(|a, b| a.placement.cmp(&b.placement));
    let n = config.n();
    let body = match cfg.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                seats: Vec<usize>,
                probability: ExactValue,
                wrong: usize,
            }
            #[derive(Serialize)]
            struct Doc {
                config: ConfigJson,
                count: String,
                placements: Vec<Row>,
            }
            to_json(&Doc {
                config: (&config).into(),
                count: count_feasible(&config).to_string(),
                placements: rows
                    .iter()
                    .map(|w| Row {
                        seats: w.placement.seats().to_vec(),
                        probability: (&w.probability).into(),
                        wrong: w.placement.wrong_count(),
                    })
                    .collect(),
            })
        }
        Format::Csv => {
            let mut s = String::new();
            let header: Vec<String> = (1..=n).map(|i| format!("n_{i}")).collect();
            let _ = writeln!(
                s,
                "{},probability_num,probability_den,probability_decimal,wrong",
                header.join(",")
            );
            for w in &rows {
                let seats: Vec<String> = w.placement.seats().iter().map(|v| v.to_string()).collect();
                let _ = writeln!(
                    s,
                    "{},{},{},{:.6},{}",
                    seats.join(","),
                    w.probability.numer(),
                    w.probability.denom(),
                    to_f64(&w.probability),
                    w.placement.wrong_count()
                );
            }
            s
        }
        _ => {
            let width = n.to_string().len().max(2) + 1;
            let mut s = String::new();
            for i in 1..=n {
                let _ = write!(s, "{:>width$}", format!("N{i}"));
            }
            let _ = writeln!(s, " | {:>12} | W", "prob");
            for w in &rows {
                for seat in w.placement.seats() {
                    let _ = write!(s, "{seat:>width$}");
                }
                let _ = writeln!(
                    s,
                    " | {:>12} | {}",
                    fraction_string(&w.probability),
                    w.placement.wrong_count()
                );
            }
            s
        }
    };
    Ok(Output::ok(body))
}

fn exact_law(cfg: &RunConfig, config: &BoardingConfig) -> Result<ExactDistribution, CliError> {
    Ok(exact::dist_w(config, cfg.budget)?)
}

fn pmf_csv(dist: &ExactDistribution) -> String {
    let mut s = String::from("value,probability_num,probability_den,probability_decimal\n");
    for (v, p) in dist.iter() {
        let _ = writeln!(s, "{v},{},{},{:.6}", p.numer(), p.denom(), to_f64(p));
    }
    s
}

pub fn cmd_dist(cfg: &RunConfig) -> Result<Output, CliError> {
    let config = cfg.instance();
    let dist = exact_law(cfg, &config)?;
    let mean = exact::mean_w(&config);
    let variance = exact::var_w(&config);
    let body = match cfg.format {
        Format::Csv => pmf_csv(&dist),
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                value: usize,
                probability: ExactValue,
            }
            #[derive(Serialize)]
            struct Doc {
                config: ConfigJson,
                pmf: Vec<Row>,
                mean: ExactValue,
                variance: ExactValue,
            }
            to_json(&Doc {
                config: (&config).into(),
                pmf: dist
                    .iter()
                    .map(|(value, p)| Row {
                        value,
                        probability: p.into(),
                    })
                    .collect(),
                mean: (&mean).into(),
                variance: (&variance).into(),
            })
        }
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "{:>6}  {:>24}  {:>10}", "value", "probability", "decimal");
            for (v, p) in dist.iter() {
                let frac = fraction_string(p);
                let shown = if frac.len() > 24 { "(see json)".to_string() } else { frac };
                let _ = writeln!(s, "{v:>6}  {shown:>24}  {:>10.6}", to_f64(p));
            }
            let _ = writeln!(
                s,
                "mean = {} ({:.6})",
                short_fraction(&mean),
                to_f64(&mean)
            );
            let _ = writeln!(
                s,
                "variance = {} ({:.6})",
                short_fraction(&variance),
                to_f64(&variance)
            );
            s
        }
    };
    Ok(Output::ok(body))
}

fn short_fraction(r: &num_rational::BigRational) -> String {
    let s = fraction_string(r);
    if s.len() > 60 {
        format!("<{} digit fraction>", s.len())
    } else {
        s
    }
}

pub fn cmd_moments(cfg: &RunConfig) -> Result<Output, CliError> {
    let config = cfg.instance();
    let n = config.n();
    let mean = exact::mean_w(&config);
    let variance = exact::var_w(&config);
    let correct = num_rational::BigRational::from_integer(n.into()) - &mean;
    let (asym_mean, asym_sd) = exact::asymptotic_params(&config);
    let body = match cfg.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc {
                config: ConfigJson,
                mean_wrong: ExactValue,
                variance_wrong: ExactValue,
                mean_correct: ExactValue,
                variance_correct: ExactValue,
                asymptotic_mean: f64,
                asymptotic_sd: f64,
            }
            to_json(&Doc {
                config: (&config).into(),
                mean_wrong: (&mean).into(),
                variance_wrong: (&variance).into(),
                mean_correct: (&correct).into(),
                variance_correct: (&variance).into(),
                asymptotic_mean: asym_mean,
                asymptotic_sd: asym_sd,
            })
        }
        _ => {
            let mut s = String::new();
            let mut line = |name: &str, r: &num_rational::BigRational| {
                let _ = writeln!(s, "{name:<16} {} ({:.6})", short_fraction(r), to_f64(r));
            };
            line("E(W)", &mean);
            line("V(W)", &variance);
            line("E(C)", &correct);
            line("V(C)", &variance);
            let _ = writeln!(s, "{:<16} {asym_mean:.6}", "k log n");
            let _ = writeln!(s, "{:<16} {asym_sd:.6}", "sqrt(k log n)");
            s
        }
    };
    Ok(Output::ok(body))
}

pub fn cmd_simulate(cfg: &RunConfig) -> Result<Output, CliError> {
    let config = cfg.instance();
    let trials = cfg.trials.expect("validated");
    let seed = cfg.seed.expect("validated");
    let started = Instant::now();
    let hist = simulate::wrong_count_histogram(&config, trials, seed);
    let elapsed = started.elapsed().as_secs_f64();

    let exact_pmf = if config.k() == 1 && config.n() <= EXACT_COLUMN_MAX_N {
        Some(exact::dist_w1(config.n())?)
    } else if config.k() > 1 && count_feasible(&config) <= cfg.budget.into() {
        Some(exact::dist_w_general(&config, cfg.budget)?)
    } else {
        None
    };
    let (mean, var) = stats::sample_moments(&hist);
    let exact_mean = exact::mean_w_f64(&config);
    let exact_var = exact::var_w_f64(&config);
    let total = trials as f64;

    let body = match cfg.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                value: usize,
                count: u64,
                frequency: f64,
                #[serde(skip_serializing_if = "Option::is_none")]
                exact: Option<ExactValue>,
            }
            #[derive(Serialize)]
            struct Doc {
                config: ConfigJson,
                trials: u64,
                seed: u64,
                generator: &'static str,
                histogram: Vec<Row>,
                sample_mean: f64,
                sample_variance: f64,
                exact_mean: f64,
                exact_variance: f64,
            }
            to_json(&Doc {
                config: (&config).into(),
                trials,
                seed,
                generator: rng::GENERATOR,
                histogram: hist
                    .iter()
                    .map(|(&value, &count)| Row {
                        value,
                        count,
                        frequency: count as f64 / total,
                        exact: exact_pmf.as_ref().map(|d| (&d.pmf(value)).into()),
                    })
                    .collect(),
                sample_mean: mean,
                sample_variance: var,
                exact_mean,
                exact_variance: exact_var,
            })
        }
        Format::Csv => {
            let mut s = String::from("value,count,frequency,exact_probability_decimal\n");
            for (&v, &c) in &hist {
                let exact = exact_pmf
                    .as_ref()
                    .map(|d| format!("{:.6}", to_f64(&d.pmf(v))))
                    .unwrap_or_default();
                let _ = writeln!(s, "{v},{c},{:.6},{exact}", c as f64 / total);
            }
            s
        }
        _ => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "n = {}, k = {}, trials = {trials}, seed = {seed}, generator = {}",
                config.n(),
                config.k(),
                rng::GENERATOR
            );
            let _ = write!(s, "{:>8} {:>12} {:>10}", "value", "count", "frequency");
            if exact_pmf.is_some() {
                let _ = write!(s, " {:>10} {:>10}", "exact", "diff");
            }
            s.push('\n');
            for (&v, &c) in &hist {
                let freq = c as f64 / total;
                let _ = write!(s, "{v:>8} {c:>12} {freq:>10.6}");
                if let Some(d) = &exact_pmf {
                    let p = to_f64(&d.pmf(v));
                    let _ = write!(s, " {p:>10.6} {:>+10.6}", freq - p);
                }
                s.push('\n');
            }
            let _ = writeln!(s, "sample mean = {mean:.6}, exact mean = {exact_mean:.6}");
            let _ = writeln!(s, "sample variance = {var:.6}, exact variance = {exact_var:.6}");
            s
        }
    };
    let mut out = Output::ok(body);
    out.diagnostics.push(format!(
        "{trials} trials in {elapsed:.3} s ({:.0} trials/s)",
        total / elapsed.max(1e-9)
    ));
    Ok(out)
}

/// Instances used by the `mc` suite.
pub const MC_INSTANCES: [(usize, usize); 3] = [(4, 1), (8, 2), (7, 3)];

pub fn verify_reports(cfg: &RunConfig) -> Result<Vec<VerificationReport>, CliError> {
    let mut reports = Vec::new();
    if matches!(cfg.suite, Suite::Exact | Suite::All) {
        reports.push(verify::check_r_routes(cfg.max_n.max(2)));
        for n in 2..=cfg.max_n {
            for k in 1..=cfg.max_k.min(n - 1) {
                let model = ExactModel::new(BoardingConfig::new(n, k)?, cfg.budget)?;
                reports.extend(model.exact_suite()?);
            }
        }
    }
    if matches!(cfg.suite, Suite::Mc | Suite::All) {
        let seed = cfg.seed.expect("validated");
        let trials = cfg.trials.unwrap_or(1_000_000);
        for (n, k) in MC_INSTANCES {
            let config = BoardingConfig::new(n, k)?;
            reports.push(verify::monte_carlo_fit(&config, trials, seed, cfg.budget)?);
        }
    }
    if matches!(cfg.suite, Suite::Clt | Suite::All) {
        let seed = cfg.seed.expect("validated");
        let trials = cfg.trials.unwrap_or(100_000);
        for k in [1, 3] {
            reports.push(verify::clt_ladder(k, &verify::CLT_LADDER, trials, seed)?);
        }
    }
    Ok(reports)
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<Output, CliError> {
    let reports = verify_reports(cfg)?;
    let mut body = String::new();
    for r in &reports {
        match cfg.format {
            Format::Json => {
                body.push_str(&serde_json::to_string(r).expect("serializable"));
                body.push('\n');
            }
            _ => {
                body.push_str(&r.summary());
                body.push('\n');
            }
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let mut out = Output::ok(body);
    out.success = failed == 0;
    out.diagnostics
        .push(format!("{} checks, {failed} failed", reports.len()));
    Ok(out)
}

pub fn cmd_chart(cfg: &RunConfig) -> Result<Output, CliError> {
    let config = cfg.instance();
    let dist = exact_law(cfg, &config)?;
    let title = if config.k() == 1 {
        format!("P(W = l), n = {}", config.n())
    } else {
        format!("P(W = l), n = {}, k = {}", config.n(), config.k())
    };
    Ok(Output::ok(svg::pmf_bar_chart(&dist, &title)))
}

/// Parses arguments, runs the command, writes output, and returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
        }
    };
    let result = RunConfig::from_cli(cli).and_then(|cfg| {
        let out = run(&cfg)?;
        match &cfg.output {
            Some(path) => std::fs::write(path, &out.body)?,
            None => print!("{}", out.body),
        }
        Ok(out)
    });
    match result {
        Ok(out) => {
            for line in &out.diagnostics {
                eprintln!("{line}");
            }
            if out.success {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

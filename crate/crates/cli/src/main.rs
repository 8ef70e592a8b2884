//! `girth-qaoa`: certified QAOA bounds, table reproduction, verification
//! suites, graph utilities and sampling experiments.

mod commands;
mod config;
mod error;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use girth_qaoa::optimize::Mode;

use config::Settings;
use error::{exit, CliError};

#[derive(Debug, Parser)]
#[command(name = "girth-qaoa", version, about = "Exact QAOA performance bounds on high-girth regular graphs")]
struct Cli {
    /// Flat `key = value` configuration file; flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Worker threads (0 = one per core). Defaults to $GIRTH_QAOA_THREADS.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Optimize angles at depth p and write a bound certificate.
    Bound(BoundArgs),
    /// Optimize depths 1..=p-max and write the table and plot data as CSV.
    Table(TableArgs),
    /// Run an invariant suite and report pass or fail.
    Verify(VerifyArgs),
    /// Girth, edge coloring, certified depth or exact MaxCut of a graph.
    Graph(GraphArgs),
    /// Repeated-measurement cut experiment on a graph.
    Sample(SampleArgs),
}

/// Settings shared by the optimizing subcommands.
#[derive(Debug, Args)]
struct Tuning {
    /// Seed for random restarts and sampling.
    #[arg(long)]
    seed: Option<u64>,
    /// Vertex degree of the regular graphs the bound covers.
    #[arg(long, short = 'd', value_parser = clap::value_parser!(u64).range(2..))]
    d: Option<u64>,
    /// Largest depth the memory budget admits.
    #[arg(long)]
    max_depth: Option<usize>,
    /// Random restarts below `deep-from`.
    #[arg(long)]
    shallow_restarts: Option<usize>,
    /// Random restarts from `deep-from` on (an interpolated start is always added).
    #[arg(long)]
    deep_restarts: Option<usize>,
    /// First depth using `deep-restarts`.
    #[arg(long)]
    deep_from: Option<usize>,
    #[arg(long)]
    max_iterations: Option<usize>,
    #[arg(long)]
    gradient_tolerance: Option<f64>,
}

impl Tuning {
    fn flags(&self) -> Vec<(&'static str, Option<String>)> {
        vec![
            ("seed", self.seed.map(|v| v.to_string())),
            ("d", self.d.map(|v| v.to_string())),
            ("max_depth", self.max_depth.map(|v| v.to_string())),
            ("shallow_restarts", self.shallow_restarts.map(|v| v.to_string())),
            ("deep_restarts", self.deep_restarts.map(|v| v.to_string())),
            ("deep_from", self.deep_from.map(|v| v.to_string())),
            ("max_iterations", self.max_iterations.map(|v| v.to_string())),
            ("gradient_tolerance", self.gradient_tolerance.map(|v| v.to_string())),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Maxcut,
    Mis2,
    Mis3,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Maxcut => Mode::Maxcut,
            ModeArg::Mis2 => Mode::MisTwoParam,
            ModeArg::Mis3 => Mode::MisThreeParam,
        }
    }
}

#[derive(Debug, Args)]
struct BoundArgs {
    /// QAOA depth.
    #[arg(long, short = 'p', value_parser = clap::value_parser!(u64).range(1..))]
    p: u64,
    #[arg(long, value_enum, default_value = "maxcut")]
    mode: ModeArg,
    /// Certificate JSON path (stdout when omitted).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Also write the optimized angles as a parameter document.
    #[arg(long, value_name = "FILE")]
    params_out: Option<PathBuf>,
    #[command(flatten)]
    tuning: Tuning,
}

#[derive(Debug, Args)]
struct TableArgs {
    /// Largest depth.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    p_max: u64,
    /// Comma-separated objectives.
    #[arg(long, value_enum, value_delimiter = ',', num_args = 1.., default_value = "maxcut")]
    modes: Vec<ModeArg>,
    /// Table CSV path (stdout when omitted).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Plot-data CSV path (value against 1/p plus reference lines).
    #[arg(long, value_name = "FILE")]
    plot_out: Option<PathBuf>,
    /// Full optimization results as JSON.
    #[arg(long, value_name = "FILE")]
    json_out: Option<PathBuf>,
    #[command(flatten)]
    tuning: Tuning,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    /// Tree contraction against the dense statevector simulator.
    Oracle,
    /// Angle symmetries and the vanishing linear term.
    Symmetry,
    /// Normalization and the cut/independent-set identities.
    Identity,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    #[arg(long)]
    seed: Option<u64>,
    /// Random cases per configuration.
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    cases: u64,
    /// Restrict the oracle suite to one degree.
    #[arg(long, short = 'd')]
    d: Option<usize>,
    /// Restrict the oracle suite to one depth.
    #[arg(long, short = 'p')]
    p: Option<usize>,
    /// Report JSON path (stdout when omitted).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct GraphSource {
    /// Edge-list file: `u v` per line, optional `n <count>` header, `#` comments.
    #[arg(long, value_name = "FILE")]
    file: Option<PathBuf>,
    /// Built-in graph: cycle, k33, petersen, heawood, pappus, moebius_kantor, mcgee, tutte_coxeter.
    #[arg(long)]
    named: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphAction {
    Girth,
    Color,
    Maxdepth,
    Brute,
}

#[derive(Debug, Args)]
struct GraphArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Vertex count for sized families such as `cycle`.
    #[arg(long)]
    size: Option<usize>,
    #[arg(long, value_enum)]
    action: GraphAction,
    /// Vertex cap for `brute`.
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(id = "angles", required = true, multiple = false)]
struct AngleSource {
    /// Parameter document or bound certificate JSON.
    #[arg(long, value_name = "FILE")]
    params: Option<PathBuf>,
    /// Optimize MaxCut angles for the graph's degree first.
    #[arg(long)]
    auto: bool,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[command(flatten)]
    source: GraphSource,
    #[arg(long)]
    size: Option<usize>,
    #[arg(long, short = 'p', value_parser = clap::value_parser!(u64).range(1..))]
    p: u64,
    #[command(flatten)]
    angles: AngleSource,
    /// Measurements per experiment.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    repetitions: u64,
    /// Independent experiments, each with its own derived seed.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    experiments: u64,
    #[arg(long)]
    max_qubits: Option<usize>,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(flatten)]
    tuning: Tuning,
}

fn settings_for(cli: &Cli, flags: Vec<(&'static str, Option<String>)>) -> Result<Settings, CliError> {
    let mut settings = Settings::from_environment()?;
    if let Some(path) = &cli.config {
        settings.apply_config_file(path)?;
    }
    settings.apply_flags(&[("threads", cli.threads.map(|t| t.to_string()))])?;
    settings.apply_flags(&flags)?;
    Ok(settings)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let flags = match &cli.command {
        Command::Bound(a) => a.tuning.flags(),
        Command::Table(a) => a.tuning.flags(),
        Command::Sample(a) => {
            let mut f = a.tuning.flags();
            f.push(("max_qubits", a.max_qubits.map(|v| v.to_string())));
            f
        }
        Command::Verify(a) => vec![("seed", a.seed.map(|v| v.to_string()))],
        Command::Graph(a) => vec![("brute_force_cap", a.cap.map(|v| v.to_string()))],
    };
    let settings = settings_for(&cli, flags)?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(settings.threads)
        .build_global()
        .map_err(|e| CliError::usage(format!("cannot start worker pool: {e}")))?;
    match &cli.command {
        Command::Bound(a) => commands::bound::run(a, &settings),
        Command::Table(a) => commands::table::run(a, &settings),
        Command::Verify(a) => commands::verify::run(a, &settings),
        Command::Graph(a) => commands::graph::run(a, &settings),
        Command::Sample(a) => commands::sample::run(a, &settings),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::SUCCESS };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}

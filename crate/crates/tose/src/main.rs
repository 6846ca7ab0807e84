//! Benchmark CLI over the library runners. One subcommand per study:
//! accuracy, runtime scaling, density convergence, plus a scenario
//! dump. Results stream as CSV to stdout or `--out`.
//!
//! Exit codes: 0 success, 1 invalid configuration, 2 numerical failure,
//! 3 I/O failure.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use tose::{
    build_scenario, csv_to_string, emit_csv, run_accuracy, run_convergence, run_scaling,
    scenario_to_string, write_scenario, BenchmarkRecord, ClusterPick, Error, Result,
    ScenarioConfig,
};

#[derive(Parser, Debug)]
#[command(
    name = "tose",
    version,
    about = "Cluster capacity benchmarks: spike approximation vs exact Cholesky baseline"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Flat key=value configuration file; flags override its values.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Users-per-BS ratio; the user count is round(beta * J).
    #[arg(long)]
    beta: Option<f64>,
    /// Area shape: square or disk.
    #[arg(long, value_name = "SHAPE")]
    area: Option<String>,
    /// Side length (square) or diameter (disk), meters.
    #[arg(long, value_name = "METERS")]
    area_size: Option<f64>,
    /// Total BS count J.
    #[arg(long)]
    j: Option<usize>,
    /// Monte-Carlo trials per configuration.
    #[arg(long)]
    trials: Option<usize>,
    /// Master seed; every number in the output is a function of it.
    #[arg(long)]
    seed: Option<u64>,
    /// What each trial re-draws: fading or all.
    #[arg(long, value_name = "MODE")]
    redraw: Option<String>,
    /// Report capacities in this logarithm base: e (nats) or 2 (bits).
    #[arg(long, default_value = "e", value_name = "BASE")]
    log_base: String,
    /// Output path (stdout when omitted).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compare the spike estimate against the exact baseline on one
    /// cluster, trial-paired through a shared fading seed.
    Accuracy {
        #[command(flatten)]
        common: CommonArgs,
        /// Analysis cluster: central or an explicit index.
        #[arg(long, default_value = "central", value_name = "PICK")]
        cluster: String,
    },
    /// Time the Cholesky baseline and the spike core over a grid of
    /// cluster sizes (single-threaded, median of repeats).
    Scaling {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated strictly ascending J_m sizes, each >= 16.
        #[arg(long, default_value = "100,200,400,800,1600", value_name = "LIST")]
        jm_grid: String,
        /// Time the trace pass inside the spike region as well.
        #[arg(long)]
        include_trace: bool,
    },
    /// Track the gap between the spike estimate and the exact capacity
    /// of the true entrywise channel as the network densifies.
    Convergence {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated strictly ascending cluster counts (J = 100 M).
        #[arg(long, default_value = "4,9,16,25", value_name = "LIST")]
        m_grid: String,
        /// Analysis cluster: central or an explicit index.
        #[arg(long, default_value = "central", value_name = "PICK")]
        cluster: String,
    },
    /// Generate a scenario and dump it as flat text (config header plus
    /// one node per line).
    GenScenario {
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn build_config(common: &CommonArgs) -> Result<ScenarioConfig> {
    let mut config = ScenarioConfig::default();
    if let Some(path) = &common.config {
        config.load_file(path)?;
    }
    if let Some(beta) = common.beta {
        config.beta = beta;
    }
    if let Some(area) = &common.area {
        config.area = area.parse()?;
    }
    if let Some(size) = common.area_size {
        config.area_size = size;
    }
    if let Some(j) = common.j {
        config.num_bs = j;
    }
    if let Some(trials) = common.trials {
        config.trials = trials;
    }
    if let Some(seed) = common.seed {
        config.seed = seed;
    }
    if let Some(redraw) = &common.redraw {
        config.redraw = redraw.parse()?;
    }
    config.validate()?;
    Ok(config)
}

fn parse_grid(list: &str) -> Result<Vec<usize>> {
    list.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::invalid("grid", format!("cannot parse size `{}`", s.trim())))
        })
        .collect()
}

/// Rescales nat-valued records when bits were requested.
fn apply_log_base(records: &mut [BenchmarkRecord], base: &str) -> Result<()> {
    match base {
        "e" => Ok(()),
        "2" => {
            let ln2 = std::f64::consts::LN_2;
            for r in records.iter_mut() {
                r.capacity_mean /= ln2;
                r.capacity_std /= ln2;
            }
            Ok(())
        }
        other => Err(Error::invalid(
            "log_base",
            format!("expected `e` or `2`, got `{other}`"),
        )),
    }
}

fn write_records(records: &[BenchmarkRecord], out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => emit_csv(records, path),
        None => {
            print!("{}", csv_to_string(records));
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Accuracy { common, cluster } => {
            let config = build_config(&common)?;
            let pick: ClusterPick = cluster.parse()?;
            let mut records = run_accuracy(&config, pick)?;
            apply_log_base(&mut records, &common.log_base)?;
            write_records(&records, common.out.as_ref())
        }
        Command::Scaling {
            common,
            jm_grid,
            include_trace,
        } => {
            let config = build_config(&common)?;
            let grid = parse_grid(&jm_grid)?;
            let mut records = run_scaling(&config, &grid, include_trace)?;
            apply_log_base(&mut records, &common.log_base)?;
            write_records(&records, common.out.as_ref())
        }
        Command::Convergence {
            common,
            m_grid,
            cluster,
        } => {
            let config = build_config(&common)?;
            let grid = parse_grid(&m_grid)?;
            let pick: ClusterPick = cluster.parse()?;
            let mut records = run_convergence(&config, &grid, pick)?;
            apply_log_base(&mut records, &common.log_base)?;
            write_records(&records, common.out.as_ref())
        }
        Command::GenScenario { common } => {
            let config = build_config(&common)?;
            let scenario = build_scenario(&config)?;
            match common.out.as_ref() {
                Some(path) => write_scenario(&scenario, &config, path),
                None => {
                    print!("{}", scenario_to_string(&scenario, &config));
                    Ok(())
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let mut source = std::error::Error::source(&e);
            while let Some(s) = source {
                eprintln!("  caused by: {s}");
                source = s.source();
            }
            ExitCode::from(e.exit_code())
        }
    }
}

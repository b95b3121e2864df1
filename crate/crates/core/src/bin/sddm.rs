use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sddm::cli::{self, Format, OutputBundle, ScenarioFile};
use sddm::oracle::Horizon;

#[derive(Parser)]
#[command(
    name = "sddm",
    version,
    about = "Stochastic dividend discount merger analysis"
)]
struct Args {
    /// Scenario JSON file
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory for artifacts
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    #[arg(long, global = true)]
    seed: Option<u64>,

    #[arg(long, global = true)]
    paths: Option<usize>,

    /// Simulation horizon in periods, or `auto`
    #[arg(long, global = true)]
    horizon: Option<Horizon>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Value every company in the scenario
    Value {
        #[arg(long)]
        company: Option<String>,
    },
    /// Sweep the bargaining region
    Region,
    /// Compare closed forms with exact truncation and Monte Carlo
    McCheck,
    /// Regenerate the bundled two-company reference example
    ReproducePaper,
}

enum Failure {
    Model(sddm::Error),
    Io(String),
}

impl From<sddm::Error> for Failure {
    fn from(e: sddm::Error) -> Self {
        Failure::Model(e)
    }
}

fn load(args: &Args) -> Result<ScenarioFile, Failure> {
    let path = args
        .config
        .as_ref()
        .ok_or_else(|| sddm::Error::Config("--config PATH is required".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(ScenarioFile::from_json(&text)?)
}

fn run(args: &Args) -> Result<OutputBundle, Failure> {
    let bundle = match &args.command {
        Command::Value { company } => {
            cli::cmd_value(&load(args)?, company.as_deref(), args.format)?
        }
        Command::Region => cli::cmd_region(&load(args)?, args.format)?,
        Command::McCheck => {
            let s = load(args)?;
            let mut sim = s.sim.clone();
            if let Some(seed) = args.seed {
                sim.seed = seed;
            }
            if let Some(paths) = args.paths {
                sim.paths = paths;
            }
            if let Some(h) = args.horizon {
                sim.horizon = h;
            }
            cli::cmd_mc_check(&s, &sim, args.format)?
        }
        Command::ReproducePaper => cli::cmd_reproduce_paper(args.format)?,
    };
    bundle
        .write_to(&args.out)
        .map_err(|e| Failure::Io(format!("{}: {e}", args.out.display())))?;
    Ok(bundle)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(bundle) => {
            print!("{}", bundle.summary);
            ExitCode::SUCCESS
        }
        Err(Failure::Model(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_infeasible_model() { 3 } else { 2 })
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

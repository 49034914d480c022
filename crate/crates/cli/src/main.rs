mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hilbertforge::{Limits, RankEngine};

use crate::config::{FileConfig, Settings, CAP_ENV};
use crate::report::Failure;

#[derive(Debug, Parser)]
#[command(
    name = "hilbertforge",
    version,
    about = "Hilbert series, iterated Hilbert coefficients and Betti numbers of monomial ideals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Shortcut for `--format json`.
    #[arg(long, global = true)]
    json: bool,

    /// Enumeration cap; overrides HF_ENUM_CAP and the config file.
    #[arg(long, global = true)]
    cap: Option<u64>,

    /// Worker threads for scans (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Config file (default: ./hilbertforge.toml when present).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Cross-check against brute-force enumeration where one is defined.
    #[arg(long, global = true)]
    oracle: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct IdealArgs {
    /// Inline ideal, e.g. "ring: x,y; ideal: x^2, x*y".
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    pub ideal: Option<String>,

    /// File containing the ideal.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 0)]
    pub i: u32,
    #[arg(long, default_value_t = 0)]
    pub j: u32,
    #[arg(long)]
    pub kmax: Option<u32>,
    #[arg(long)]
    pub window: Option<usize>,
    /// Exit with status 3 when no stable fit is found.
    #[arg(long)]
    pub require_stable: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hilbert series of S/I, or of I with --of-ideal.
    Hilbert {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        of_ideal: bool,
    },
    /// Iterated Hilbert coefficients e^i_j.
    Coeffs {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        of_ideal: bool,
        #[arg(long, default_value_t = 0)]
        i: u32,
    },
    /// h-vector of the reduced numerator.
    Hvector {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        of_ideal: bool,
    },
    /// Coefficient e^i_j of the strand A(-a,-b)_k of a bigraded free module.
    Strand {
        #[arg(long)]
        n: usize,
        /// Number of y-variables; must match the length of --p.
        #[arg(long)]
        m: Option<usize>,
        /// Weights p_1,...,p_m of the y-variables.
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<u32>,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        b: i64,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long)]
        j: u32,
        /// Iterate index; when omitted the value is reported for every
        /// admissible i (it does not depend on i).
        #[arg(long)]
        i: Option<u32>,
    },
    /// Scan e^i_j(I^k) over k and fit a polynomial in k.
    ScanPower {
        #[command(flatten)]
        ideal: IdealArgs,
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Graded Betti numbers of I^k via Koszul homology.
    Betti {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        k: u32,
        /// Probabilistic ranks modulo 32003.
        #[arg(long)]
        modular: bool,
    },
    /// Scan e^i_j(Tor_l(K, I^k)) over k and fit a polynomial in k.
    ScanBetti {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long, default_value_t = 0)]
        l: usize,
        #[command(flatten)]
        scan: ScanArgs,
        #[arg(long)]
        modular: bool,
    },
    /// Dimension of the special fiber of an ideal generated in one degree.
    FiberDim {
        #[command(flatten)]
        ideal: IdealArgs,
    },
    /// Run every consistency check on one ideal.
    Verify {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        kmax: Option<u32>,
        #[arg(long)]
        window: Option<usize>,
    },
}

pub struct Context {
    pub format: Format,
    pub oracle: bool,
    pub settings: Settings,
}

impl Context {
    pub fn limits(&self) -> Limits {
        Limits::with_cap(self.settings.enumeration_cap)
    }

    pub fn engine(&self, modular: bool) -> RankEngine {
        if modular {
            RankEngine::Modular
        } else {
            RankEngine::Exact
        }
    }
}

fn setup(cli: &Cli) -> Result<Context, Failure> {
    let file = FileConfig::discover(cli.config.as_deref()).map_err(Failure::Input)?;
    let env_cap = std::env::var(CAP_ENV).ok();
    let (kmax, window) = match &cli.command {
        Command::ScanPower { scan, .. } | Command::ScanBetti { scan, .. } => (scan.kmax, scan.window),
        Command::Verify { kmax, window, .. } => (*kmax, *window),
        _ => (None, None),
    };
    let settings =
        config::resolve(&file, env_cap.as_deref(), cli.cap, kmax, window, cli.threads).map_err(Failure::Input)?;
    if let Some(n) = settings.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Input(format!("--threads: {e}")))?;
    }
    let format = if cli.json { Format::Json } else { cli.format };
    Ok(Context {
        format,
        oracle: cli.oracle,
        settings,
    })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = setup(&cli).and_then(|ctx| report::run(&cli.command, &ctx));
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(out) = f.output() {
                print!("{out}");
            }
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

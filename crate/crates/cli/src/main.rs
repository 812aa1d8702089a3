mod commands;
mod output;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use wbq_core::WbqError;

#[derive(Parser, Debug)]
#[command(name = "wbq", version, about = "Exact computations for quantized walled Brauer algebras B_{r,s}")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
    #[command(flatten)]
    pub cfg: Config,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Config {
    /// Number of V factors
    #[arg(long, global = true)]
    pub r: Option<usize>,
    /// Number of dual factors
    #[arg(long, global = true)]
    pub s: Option<usize>,
    /// Rank of the natural module (default r+s)
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// generic | qpow:<a> | cyclo:<m>[,rho=zeta^<a>|rho=free]
    #[arg(long, global = true, default_value = "generic")]
    pub field: String,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Structure-constant cache (default $WBQ_CACHE_DIR; none if unset)
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub output: Format,
    /// verify: comma-separated check families
    #[arg(long, global = true)]
    pub only: Option<String>,
    /// singular: layer index f of the label
    #[arg(long, global = true)]
    pub f: Option<usize>,
    /// singular: first partition of the label, e.g. 2,1 (empty for ∅)
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda1: Option<String>,
    /// singular: second partition of the label
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda2: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Latex,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Decomposition matrix, Gram ranks, blocks and oracles
    Decomp,
    /// Run the invariant suites and print a pass/fail table
    Verify,
    /// Gram matrices of the cellular forms
    Gram,
    /// Block partition of the labels
    Blocks,
    /// Computed and predicted semisimplicity
    Semisimple,
    /// Singular vectors of one label in V^{r,s}
    Singular,
    /// Rank of B_{r,s} acting on V^{r,s}
    SchurWeyl,
    /// Structure-constant cache management
    Cache {
        #[command(subcommand)]
        action: CacheCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum CacheCmd {
    List,
    Clear,
    Build,
}

/// Failure classes with their exit codes.
pub enum Failure {
    Usage(String),
    Engine(WbqError),
    Oracle(String),
}

impl From<WbqError> for Failure {
    fn from(e: WbqError) -> Self {
        match e {
            WbqError::Parse(_) | WbqError::InvalidInput(_) | WbqError::IndexOutOfRange(_) | WbqError::RankTooSmall { .. } => Failure::Usage(e.to_string()),
            WbqError::OracleMismatch(m) => Failure::Oracle(format!("OracleMismatch: {m}")),
            e => Failure::Engine(e),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let msg = e.to_string();
            let line = msg.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            eprintln!("usage error: {}", line.trim_start_matches("error: "));
            return ExitCode::from(1);
        }
    };
    if let Some(j) = cli.cfg.jobs {
        if j == 0 {
            eprintln!("usage error: --jobs must be positive");
            return ExitCode::from(1);
        }
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    match commands::run(&cli) {
        Ok(rep) => {
            print!("{}", rep.text);
            match rep.failed {
                Some(m) => {
                    eprintln!("{m}");
                    ExitCode::from(2)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Engine(e)) => {
            eprintln!("{}: {e}", e.name());
            ExitCode::from(2)
        }
        Err(Failure::Oracle(m)) => {
            eprintln!("{m}");
            ExitCode::from(2)
        }
    }
}

//! `qtensor`: batch front end for tensor-power computations on Dynkin quivers.

mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quiver_tensor::formulas::TwinBranch;

use crate::output::Format;

/// Exit statuses.
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_UNSUPPORTED: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "qtensor", version, about = "Tensor powers of Dynkin quiver representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Quiver JSON: {"vertices": [..], "arrows": [{"name", "source", "target"}]}.
    #[arg(short = 'q', long = "quiver")]
    pub quiver: PathBuf,

    /// Comma-separated arrow names to reverse before anything else.
    #[arg(long = "reverse", value_delimiter = ',')]
    pub reverse: Vec<String>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Directory for cached fusion tables.
    #[arg(long = "cache-dir")]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Lemma,
    Prop,
}

impl From<BranchArg> for TwinBranch {
    fn from(b: BranchArg) -> Self {
        match b {
            BranchArg::Lemma => TwinBranch::Lemma,
            BranchArg::Prop => TwinBranch::Prop,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Closed forms (no size bound).
    Formula,
    /// Products in the fusion table.
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the positive roots with kind and length.
    Roots {
        #[command(flatten)]
        common: Common,
    },
    /// Krull-Schmidt decomposition of a module.
    Decompose {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'm', long = "module")]
        module: PathBuf,
    },
    /// Decomposition of M1 (x) M2 (x) ... (Delta-tensor when -p is given).
    Tensor {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'm', long = "module", num_args = 1.., required = true)]
        modules: Vec<PathBuf>,
        #[arg(short = 'p', long = "partition")]
        partition: Option<PathBuf>,
        /// Build the product explicitly and decompose it.
        #[arg(long)]
        explicit: bool,
        /// Refuse explicit products above this total dimension.
        #[arg(long = "max-dim", default_value_t = 10_000)]
        max_dim: u64,
    },
    /// Decompositions of M^(x)n for one n or for 1..=n-max.
    Power {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'm', long = "module")]
        module: PathBuf,
        #[arg(short = 'n', long = "n")]
        n: Option<u32>,
        #[arg(long = "n-max")]
        n_max: Option<u32>,
        #[arg(short = 'p', long = "partition")]
        partition: Option<PathBuf>,
        #[arg(long)]
        explicit: bool,
        #[arg(long = "max-dim", default_value_t = 10_000)]
        max_dim: u64,
    },
    /// Table of n, b_n, b_n^Delta and b_n^(1/n).
    Bn {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'm', long = "module")]
        module: PathBuf,
        #[arg(long = "n-max", short = 'n')]
        n_max: u32,
        #[arg(long = "twin-branch", value_enum, default_value_t = BranchArg::Lemma)]
        twin_branch: BranchArg,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
    },
    /// Partitioning morphisms: enumerate, or validate one with its chain sets.
    DeltaEnum {
        #[command(flatten)]
        common: Common,
        /// List every valid spec, not only coassociative ones.
        #[arg(long)]
        all: bool,
        #[arg(short = 'p', long = "partition")]
        partition: Option<PathBuf>,
        /// Chain length for the chain sets of a given spec.
        #[arg(short = 'n', long = "n")]
        n: Option<u32>,
    },
    /// Run a verification suite; exits 1 on any mismatch.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest n checked.
        #[arg(short = 'n', long = "n", alias = "n-max")]
        n: Option<u32>,
        #[arg(long = "max-mult", default_value_t = 3)]
        max_mult: u64,
        #[arg(long = "twin-branch", value_enum, default_value_t = BranchArg::Lemma)]
        twin_branch: BranchArg,
        /// Use only the first k orientations of the quiver.
        #[arg(long)]
        orientations: Option<usize>,
    },
    /// Estimates b_n^(1/n) for n = 1..=n-max.
    Beta {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'm', long = "module")]
        module: PathBuf,
        #[arg(long = "n-max", short = 'n')]
        n_max: u32,
        #[arg(long, default_value_t = 30)]
        digits: usize,
        #[arg(long = "twin-branch", value_enum, default_value_t = BranchArg::Lemma)]
        twin_branch: BranchArg,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Roots { common } => commands::roots(&common),
        Command::Decompose { common, module } => commands::decompose(&common, &module),
        Command::Tensor { common, modules, partition, explicit, max_dim } => {
            commands::tensor(&common, &modules, partition.as_deref(), explicit, max_dim)
        }
        Command::Power { common, module, n, n_max, partition, explicit, max_dim } => {
            commands::power(&common, &module, n, n_max, partition.as_deref(), explicit, max_dim)
        }
        Command::Bn { common, module, n_max, twin_branch, method } => {
            commands::bn(&common, &module, n_max, twin_branch.into(), method)
        }
        Command::DeltaEnum { common, all, partition, n } => {
            commands::delta_enum(&common, all, partition.as_deref(), n)
        }
        Command::Verify { common, suite, trials, seed, n, max_mult, twin_branch, orientations } => {
            commands::verify(&common, &suite, trials, seed, n, max_mult, twin_branch.into(), orientations)
        }
        Command::Beta { common, module, n_max, digits, twin_branch } => {
            commands::beta(&common, &module, n_max, digits, twin_branch.into())
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

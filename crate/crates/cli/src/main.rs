//! Command-line front end for the half-flip toolkit.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use halfflip_core::proof::Premises;

#[derive(Debug, Parser)]
#[command(name = "halfflip", version, about = "Half-flip avoidance: generation, detection, exact verification, search")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Ceiling on window material (letters) for exact factor computations.
    #[arg(long, default_value_t = halfflip_core::factors::DEFAULT_MAX_MATERIAL, global = true)]
    pub max_material: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PremisesArg {
    Stated,
    Corrected,
}

impl From<PremisesArg> for Premises {
    fn from(p: PremisesArg) -> Self {
        match p {
            PremisesArg::Stated => Premises::Stated,
            PremisesArg::Corrected => Premises::Corrected,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a prefix of the fixed point, or of its image under a second morphism.
    Generate {
        #[arg(long, short = 'n')]
        length: usize,
        /// Base morphism: m, f3, f2 or a JSON morphism file.
        #[arg(long, default_value = "m")]
        base: String,
        #[arg(long, default_value_t = 0)]
        seed: u8,
        /// Optional morphism applied to the fixed point.
        #[arg(long)]
        image: Option<String>,
    },
    /// Look for half-flips in each word of a file (one digit word per line).
    Detect {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        min_period: usize,
        #[arg(long, default_value_t = 500)]
        max_period: usize,
        #[arg(long)]
        distinct_halves: bool,
        /// Exit with status 1 when some word contains a half-flip.
        #[arg(long)]
        require_absent: bool,
    },
    /// Export exact factor sets or offset profiles.
    Factors {
        #[arg(long, short = 'L')]
        length: usize,
        #[arg(long, default_value = "m")]
        base: String,
        #[arg(long, default_value_t = 0)]
        seed: u8,
        #[arg(long)]
        image: Option<String>,
        /// Export residues of each factor instead of the plain set.
        #[arg(long)]
        offsets: bool,
    },
    /// Run a theorem pipeline and write its check report.
    Verify {
        #[arg(long)]
        theorem: String,
        #[arg(long, default_value_t = 500)]
        max_period: usize,
        /// Published constants, or the corrected ones that hold for the printed images.
        #[arg(long, value_enum, default_value_t = PremisesArg::Stated)]
        premises: PremisesArg,
    },
    /// Exhaustive search for the longest words without k-half-flips.
    Backtrack {
        #[arg(long)]
        alphabet: usize,
        #[arg(long, default_value_t = 1)]
        min_period: usize,
        #[arg(long)]
        distinct_halves: bool,
        /// Node cap; the HALFFLIP_MAX_NODES environment variable overrides it.
        #[arg(long)]
        max_nodes: Option<u64>,
        #[arg(long, default_value_t = halfflip_core::search::DEFAULT_MAX_LENGTH)]
        max_length: usize,
        /// Also require letters to first appear in increasing order.
        #[arg(long)]
        full_symmetry: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(status) => status.into(),
        Err(e) => {
            eprintln!("error: {e}");
            e.status().into()
        }
    }
}

//! `grain`: bounds, constructions, verification, colourings and exact
//! cardinalities for grain- and mineral-error-correcting codes.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use grain_core::{Error, DEFAULT_ENUMERATION_CAP};
use report::Format;

#[derive(Parser, Debug)]
#[command(name = "grain", version, about = "Grain-error-correcting code toolkit")]
pub struct Cli {
    /// Largest enumeration the run may perform before refusing.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub cap: u128,

    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Output format; `table1` defaults to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Upper bound on the size of a t-grain-correcting code of length n.
    Bound {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        t: u32,
        /// Also report the closed form where one exists.
        #[arg(long)]
        closed_form: bool,
    },
    /// Single-error lower and upper bounds for a range of lengths.
    Table1 {
        #[arg(long, default_value_t = 3)]
        n_min: u32,
        #[arg(long, default_value_t = 20)]
        n_max: u32,
    },
    /// Build a code and write it out.
    #[command(subcommand)]
    Construct(Construct),
    /// Check that a code file corrects t errors of the given kind.
    Verify {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        t: u32,
        #[arg(long, value_enum, default_value_t = Model::Grain)]
        model: Model,
    },
    /// Colourings of the block confusability graph.
    #[command(subcommand)]
    Color(Color),
    /// Exact code sizes without listing the code.
    #[command(subcommand)]
    Cardinality(Cardinality),
    /// Largest zero-residue group code over all Abelian groups of order n.
    BestGroup {
        #[arg(long)]
        n: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// Subset-sum code over a finite Abelian group.
    Group {
        /// Cyclic factors, e.g. `Z3xZ6`.
        #[arg(long)]
        group: String,
        /// Residue as comma-separated coordinates; `0` is the identity.
        #[arg(long, default_value = "0")]
        residue: String,
        #[arg(long)]
        lift: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Two-bit block map into GF(3) composed with an outer code.
    Gamma {
        #[command(flatten)]
        outer: OuterArg,
        #[arg(long)]
        lift: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Arbitrary block colouring composed with an outer code.
    Colored {
        #[arg(long)]
        coloring: PathBuf,
        #[command(flatten)]
        outer: OuterArg,
        #[arg(long)]
        lift: bool,
        /// Test a single word for membership instead of enumerating.
        #[arg(long)]
        check: Option<String>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Ternary code whose parity-check columns are `(2h, h)`.
    Lifted {
        #[arg(long)]
        matrix: PathBuf,
        /// Comma-separated syndrome; defaults to zero.
        #[arg(long)]
        residue: Option<String>,
        #[arg(long)]
        lift: bool,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand, Debug)]
pub enum Color {
    /// Randomised greedy search with local refinement.
    Search {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        t: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 16)]
        restarts: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Check that a colouring file is proper.
    Verify {
        #[arg(long)]
        file: PathBuf,
    },
    /// The known 7-colouring of all 6-bit blocks.
    Published {
        #[command(flatten)]
        out: OutArg,
    },
    /// The (m+1)-colouring induced by the group-code partition.
    Group {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand, Debug)]
pub enum Cardinality {
    /// Size of the block-map code, and of its grain lift with `--lift`.
    Gamma {
        #[command(flatten)]
        outer: OuterArg,
        #[arg(long)]
        lift: bool,
    },
    /// Size of a coloured code, largest class at symbol 0.
    Colored {
        #[arg(long)]
        coloring: PathBuf,
        #[command(flatten)]
        outer: OuterArg,
        #[arg(long)]
        lift: bool,
    },
    /// Coset sizes of a lifted ternary code by character sums.
    Fourier {
        #[arg(long, conflicts_with = "outer", required_unless_present = "outer")]
        matrix: Option<PathBuf>,
        #[arg(long)]
        outer: Option<String>,
        /// `all`, or a comma-separated syndrome.
        #[arg(long, default_value = "all")]
        residue: String,
    },
}

#[derive(Args, Debug)]
pub struct OuterArg {
    /// `hamming:P:R` or `rep:P:LEN`.
    #[arg(long)]
    pub outer: String,
    /// Errors to correct; defaults to 1 (or the colouring's t).
    #[arg(long)]
    pub t: Option<u32>,
}

#[derive(Args, Debug)]
pub struct OutArg {
    /// Destination file; without it the words go into the report.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Grain,
    Mineral,
    Random,
}

/// Failures, split by exit status.
#[derive(Debug)]
pub enum Failure {
    /// Bad input or violated precondition: exit 2.
    Usage(String),
    /// Resource cap refusal: exit 3.
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let default_format = match cli.command {
        Command::Table1 { .. } => Format::Csv,
        _ => Format::Json,
    };
    match commands::run(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.format.unwrap_or(default_format)));
            if report.failed() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("refused: {msg}");
            ExitCode::from(3)
        }
    }
}

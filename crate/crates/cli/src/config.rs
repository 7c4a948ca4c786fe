use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "bdx", version, about = "Build and query bidirectional-anchor text indexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sample anchors, build an index and write it to disk.
    Build {
        #[command(flatten)]
        input: TextArgs,
        #[command(flatten)]
        scheme: SchemeArgs,
        #[command(flatten)]
        build: BuildArgs,
        /// Where to write the index.
        #[arg(long, short = 'o')]
        index: PathBuf,
    },
    /// Report occurrences of each pattern (one per line) in the indexed text.
    Query {
        #[command(flatten)]
        input: TextArgs,
        #[arg(long, short = 'i')]
        index: PathBuf,
        #[arg(long, short = 'p')]
        patterns: PathBuf,
        #[arg(long, value_enum, default_value_t = Variant::Bidir)]
        variant: Variant,
        /// Write results here instead of stdout.
        #[arg(long, short = 'o')]
        output: Option<PathBuf>,
        /// Answer with a plain scan of the text instead of the index.
        #[arg(long, hide = true)]
        oracle: bool,
    },
    /// Print the header and sizes of an index file.
    Stats {
        #[arg(long, short = 'i')]
        index: PathBuf,
    },
    /// Draw patterns uniformly at random from the text.
    Patgen {
        #[command(flatten)]
        input: TextArgs,
        /// Pattern length.
        #[arg(long, short = 'l')]
        length: usize,
        /// Number of patterns.
        #[arg(long, short = 'c')]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Reject repeated patterns (gives up after 50 draws per requested pattern).
        #[arg(long)]
        distinct: bool,
        #[arg(long, short = 'o')]
        output: Option<PathBuf>,
    },
    /// Time anchor sampling, construction and querying; prints CSV.
    Bench {
        #[command(flatten)]
        input: TextArgs,
        #[command(flatten)]
        scheme: SchemeArgs,
        #[command(flatten)]
        build: BuildArgs,
        #[arg(long, short = 'p')]
        patterns: PathBuf,
    },
}

#[derive(Args, Debug)]
pub struct TextArgs {
    /// Text file; every byte is a letter.
    #[arg(long, short = 't')]
    pub text: PathBuf,
    /// Drop a single trailing '\n' from the text file. On by default, so a
    /// text saved by an editor indexes the same as one written without it.
    #[arg(long, action = clap::ArgAction::Set, default_value_t = true, value_name = "BOOL")]
    pub strip_trailing_newline: bool,
}

#[derive(Args, Debug)]
pub struct SchemeArgs {
    /// Window length ℓ; the shortest pattern the index can answer.
    #[arg(long)]
    pub ell: usize,
    /// Rotations starting in the last r window positions are skipped.
    /// Defaults to the smallest r with σ^r ≥ ℓ^4.
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long, value_enum, default_value_t = Kind::Ran)]
    pub kind: Kind,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    /// Block length used while sampling anchors.
    #[arg(long, default_value_t = 25_000)]
    pub block: usize,
    #[arg(long, value_enum, default_value_t = Builder::Sparse)]
    pub builder: Builder,
    /// `grid` also stores the 2D structure needed by grid queries.
    #[arg(long, value_enum, default_value_t = Variant::Bidir)]
    pub variant: Variant,
    /// Worker threads for anchor sampling; output does not depend on it.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Lex,
    Ran,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builder {
    Full,
    Sparse,
}

impl Builder {
    pub fn as_str(self) -> &'static str {
        match self {
            Builder::Full => "full",
            Builder::Sparse => "sparse",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Grid,
    Bidir,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Grid => "grid",
            Variant::Bidir => "bidir",
        }
    }
}

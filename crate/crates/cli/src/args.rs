use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "betafin", version, about = "Exact beta-expansion experiments for Pisot families")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0, global = true)]
    pub threads: usize,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    P,
    Q,
    R,
    Poly,
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    #[arg(long, value_enum, default_value_t = FamilyKind::P)]
    pub family: FamilyKind,
    /// Polynomial coefficients, highest degree first, e.g. "1,-3,2,-2".
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    #[arg(long)]
    pub n: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<i64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Beta-expansion of an integer or of an element given by power-basis coordinates.
    Expand {
        #[command(flatten)]
        family: FamilyArgs,
        /// An integer, or coordinates "c0,c1,..." of c0 + c1 beta + ...
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
    },
    /// Expansion of 1.
    One {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Classifies 1..=nmax.
    Scan {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 10_000)]
        nmax: i64,
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
    },
    /// Residue-class claims for p_n around n^2.
    Residues {
        #[arg(long, default_value_t = 2)]
        n_lo: i64,
        #[arg(long, default_value_t = 30)]
        n_hi: i64,
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
    },
    /// Orbit of a lattice point under tau.
    TauOrbit {
        #[arg(long)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        j: i64,
        /// Defaults to the unique l placing (l,k,j) in U.
        #[arg(long, allow_hyphen_values = true)]
        l: Option<i64>,
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
    },
    /// Cycles of tau in a ball.
    Census {
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = 30)]
        radius: i64,
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
    },
    /// Akiyama's finite set for a cubic base.
    Akiyama {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
        /// Include every element in the output.
        #[arg(long)]
        list: bool,
    },
    /// Finiteness of alpha^2, ..., alpha^(d-1).
    Suff {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 10_000)]
        nmax: i64,
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
    },
    /// Claims for q_{n,b,c}.
    QCheck {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        b: i64,
        #[arg(long)]
        c: i64,
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
    },
    /// Claims for r_{n,c}.
    RCheck {
        #[arg(long)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        c: i64,
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
    },
    /// Runs the reproduction suite.
    ReproPaper {
        /// Criterion ids to run; all when omitted.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
    },
}

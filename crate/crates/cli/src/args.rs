use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "cayley",
    version,
    about = "Cayley hash functions over 2x2 matrix groups"
)]
pub struct Cli {
    /// Suppress the warning printed for schemes with published attacks.
    #[arg(long, global = true)]
    pub no_warn: bool,

    /// Print reports as JSON instead of key=value lines.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hash a file, stdin, or an explicit bit string.
    Hash(HashArgs),
    /// Multiply two digests: the digest of the concatenated inputs.
    Combine(CombineArgs),
    /// Growth, girth and randomness experiments.
    #[command(subcommand)]
    Analyze(Analyze),
}

#[derive(Debug, Args, Clone)]
pub struct SchemeArgs {
    /// zemor, bsv, neg, tz or cookies.
    #[arg(long, default_value = "bsv")]
    pub scheme: String,

    /// Prime modulus. `0x…` or any hex letter means hex, plain digits mean
    /// decimal. Defaults to 2^256 - 189.
    #[arg(long)]
    pub prime: Option<String>,

    /// Field modulus for tz, as a hex bit-polynomial (bit i = coefficient
    /// of x^i). Defaults to x^127 + x + 1.
    #[arg(long)]
    pub modulus: Option<String>,
}

#[derive(Debug, Args)]
pub struct HashArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,

    /// Input file; stdin when neither this nor --bits is given.
    #[arg(long = "in", conflicts_with = "bits")]
    pub input: Option<PathBuf>,

    /// Explicit 0/1 string (whitespace and `_` ignored).
    #[arg(long)]
    pub bits: Option<String>,

    /// Append the cookie release padding so the digest can be combined on
    /// the right.
    #[arg(long)]
    pub pad: bool,
}

#[derive(Debug, Args)]
pub struct CombineArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,

    /// Digest of the first segment.
    pub left: String,

    /// Digest of the second segment.
    pub right: String,

    /// The first segment was hashed with --pad.
    #[arg(long)]
    pub pad: bool,
}

#[derive(Debug, Subcommand)]
pub enum Analyze {
    /// Exhaustive largest entry over all products of length n.
    Growth {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[arg(long)]
        n: usize,
        /// Largest n allowed (default 24 for two generators, 16 for three).
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Per-letter spectral radius of a periodic word, optionally with the
    /// exhaustive growth exponent at length n for comparison.
    Jsr {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[arg(long, default_value = "AB")]
        word: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Shortest relation between words mod a small prime, by BFS.
    Girth {
        #[command(flatten)]
        scheme: SchemeArgs,
        /// Maximum number of stored group elements.
        #[arg(long)]
        cap: Option<u64>,
    },
    /// floor(ln p / ln s).
    GirthBound {
        #[arg(long, conflicts_with = "prime", required_unless_present = "prime")]
        p_bits: Option<u32>,
        #[arg(long)]
        prime: Option<String>,
        #[arg(long)]
        s: f64,
    },
    /// Random-word birthday search for a collision.
    Collide {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[arg(long, default_value_t = 40)]
        length: usize,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Mean growth rate along random products.
    Randwalk {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Counter-mode bitstream with monobit and runs results.
    Stream {
        #[command(flatten)]
        scheme: SchemeArgs,
        /// Number of bits.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Write the packed bits here and the test report to stdout.
        /// Without it the raw bytes go to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

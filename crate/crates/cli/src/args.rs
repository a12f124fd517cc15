use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "globular", version, about = "Cellular towers, their finite models and homotopy groups")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Truncation dimension for generated libraries.
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

/// A model: a JSON table file, or one builtin.
#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Model file.
    pub model: Option<PathBuf>,
    /// One-object model of a group, e.g. `S3`.
    #[arg(long)]
    pub kg1: Option<String>,
    /// Eilenberg-MacLane model `A,n`, e.g. `Z2,2`.
    #[arg(long)]
    pub kan: Option<String>,
    /// Discrete model on this many points.
    #[arg(long)]
    pub discrete: Option<usize>,
    /// Strict 2-group from a crossed-module file.
    #[arg(long)]
    pub xmod: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Replays a tower script, checking every lifting.
    Check {
        /// Tower script.
        tower: PathBuf,
        /// Random terms reduced under both strategies.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Emits the library of structural maps as a tower script.
    Stdlib {
        /// Write the script here instead of printing it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Prints the normal form of a term.
    Normalize {
        tower: PathBuf,
        /// Term in the script syntax, e.g. `[eps1; eps2] * comp_1_0`.
        #[arg(long)]
        term: String,
        /// Expected source table, when it cannot be inferred.
        #[arg(long)]
        source: Option<String>,
        /// Expected target table, when it cannot be inferred.
        #[arg(long)]
        target: Option<String>,
    },
    /// Decides whether two terms form an admissible pair.
    Admissible {
        tower: PathBuf,
        /// First term of the pair.
        #[arg(long)]
        src: String,
        /// Second term of the pair.
        #[arg(long)]
        tgt: String,
        /// Dimension of the source disk.
        #[arg(long)]
        n: Option<usize>,
        /// The common target table.
        #[arg(long)]
        target: Option<String>,
    },
    /// Checks both lifting equations of every generator in a model.
    ModelCheck {
        tower: PathBuf,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Computes a homotopy group of a model.
    Pi {
        tower: PathBuf,
        #[command(flatten)]
        model: ModelArgs,
        /// Dimension of the group.
        #[arg(long)]
        n: usize,
        /// Base 0-cell.
        #[arg(long, default_value_t = 0)]
        base: usize,
    },
    /// Evaluates the four characterizations of weak equivalences.
    Weq {
        tower: PathBuf,
        /// Morphism file: source and target models with the cell maps or a functor.
        morphism: PathBuf,
    },
    /// Builds the fundamental model of a groupoid and compares homotopy.
    Fundamental {
        /// Groupoid file.
        groupoid: PathBuf,
    },
    /// Homotopy groups of a groupoid through loop objects.
    GpdPi {
        groupoid: PathBuf,
        /// Base object.
        #[arg(long)]
        x: usize,
        /// Dimension of the group.
        #[arg(long)]
        n: usize,
    },
    /// Whiskering bijection between hom-sets of n-classes, with its inverse.
    Divide {
        tower: PathBuf,
        #[command(flatten)]
        model: ModelArgs,
        /// Dimension of the whiskered cells.
        #[arg(long)]
        n: usize,
        /// Dimension along which to whisker, below `n - 1`.
        #[arg(long)]
        i: usize,
        /// The whiskering `n`-cell.
        #[arg(long)]
        gamma: usize,
        /// Source `(n-1)`-cell of the hom-set.
        #[arg(long)]
        u: usize,
        /// Target `(n-1)`-cell of the hom-set.
        #[arg(long)]
        v: usize,
        /// Whisker on the left (`gamma * a`) or the right (`a * gamma`).
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
    },
}

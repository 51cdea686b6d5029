use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wedgecalc::DEFAULT_PERM_LIMIT;

/// Exact wedge decompositions of polyhedral products (CX,X)^K.
#[derive(Debug, Parser)]
#[command(name = "wedgecalc", version)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// A complex from a file (`-` for stdin) or inline with `--spec`.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// Path to a complex in JSON or text form.
    pub input: Option<PathBuf>,

    /// The complex inline, in either form.
    #[arg(long)]
    pub spec: Option<String>,
}

#[derive(Debug, Args)]
pub struct Search {
    /// Search all vertex orders instead of using the label order.
    #[arg(long)]
    pub search: bool,

    /// Cap on the number of orders a search may visit.
    #[arg(long, default_value_t = DEFAULT_PERM_LIMIT)]
    pub max_perms: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Test the shift condition under one order or search for one.
    CheckShifted {
        #[command(flatten)]
        input: Input,
        /// Vertices from smallest to largest, e.g. "2,1,3,4".
        #[arg(long, conflicts_with = "search")]
        order: Option<String>,
        #[command(flatten)]
        search: Search,
    },

    /// Decompose (CX,X)^K for a shifted complex.
    Decompose {
        #[command(flatten)]
        input: Input,
        /// Print the step-by-step trace.
        #[arg(long)]
        trace: bool,
        /// Compare with the homological wedge.
        #[arg(long)]
        check_bbcg: bool,
        #[command(flatten)]
        search: Search,
    },

    /// The wedge over missing faces weighted by reduced homology.
    Bbcg {
        #[command(flatten)]
        input: Input,
        /// List the homology of every full subcomplex used.
        #[arg(long)]
        show_subcomplexes: bool,
        /// Treat the complex as shifted when it is too large to search.
        #[arg(long)]
        assume_shifted: bool,
        #[arg(long, env = "WEDGECALC_MAX_VERTICES", default_value_t = 20)]
        max_vertices: usize,
        #[arg(long, default_value_t = DEFAULT_PERM_LIMIT)]
        max_perms: u64,
    },

    /// Reduced integral homology.
    Homology {
        #[command(flatten)]
        input: Input,
    },

    /// Decompose the union of two complexes along a common face.
    GlueDecompose {
        left: PathBuf,
        right: PathBuf,
        /// The shared face, e.g. "2,3".
        #[arg(long)]
        tau: String,
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value_t = DEFAULT_PERM_LIMIT)]
        max_perms: u64,
    },

    /// Decompose the simplicial wedge K(J).
    WedgeDecompose {
        #[command(flatten)]
        input: Input,
        /// Copies of each vertex, in vertex order, e.g. "1,1,1,2".
        #[arg(long = "J", value_name = "J")]
        copies: String,
        #[arg(long, default_value_t = DEFAULT_PERM_LIMIT)]
        max_perms: u64,
    },

    /// Decompose the k-skeleton of the simplex on n vertices.
    Skeleton {
        #[arg(long = "n")]
        n: u32,
        #[arg(long = "k", allow_negative_numbers = true)]
        k: i64,
    },

    /// The moment-angle complex (D²,S¹)^K as a wedge of spheres.
    MomentAngle {
        #[command(flatten)]
        input: Input,
        /// Accept the suspended wedge when K is not shifted.
        #[arg(long)]
        suspended_only_ack: bool,
        #[arg(long, default_value_t = DEFAULT_PERM_LIMIT)]
        max_perms: u64,
    },

    /// Evaluate the decomposition at spheres S^{d_i}.
    Specialize {
        #[command(flatten)]
        input: Input,
        /// Sphere dimension per vertex, in vertex order, e.g. "1,1,2,3".
        #[arg(long)]
        dims: String,
        #[arg(long, default_value_t = DEFAULT_PERM_LIMIT)]
        max_perms: u64,
    },

    /// Compare decompose with the homological wedge on every shifted
    /// complex up to the given size.
    Verify {
        #[arg(long, default_value_t = 5)]
        max_n: u32,
    },
}

//! Command-line surface.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "semiord",
    version,
    about = "Exact computations over totally ordered semigroups"
)]
pub struct Cli {
    /// Workspace document declaring named backends, points, and families.
    #[arg(long, global = true, value_name = "FILE")]
    pub workspace: Option<PathBuf>,

    /// Refinement-level budget for searches and stream comparisons.
    #[arg(long, global = true, default_value_t = 64, value_name = "N")]
    pub budget_level: u32,

    /// Doubling budget for multiplicity searches.
    #[arg(long, global = true, default_value_t = 128, value_name = "N")]
    pub budget_gallop: u32,

    /// Output format for the result record.
    #[arg(long, global = true, value_enum, default_value_t = Format::Structured)]
    pub format: Format,

    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 1, value_name = "N")]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Plain lines for people.
    Text,
    /// One JSON record, integers as decimal strings.
    Structured,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check order and composition axioms on sampled elements.
    Validate {
        /// Backend name or inline descriptor.
        backend: String,
        /// How many elements to sample.
        #[arg(long, default_value_t = 32)]
        count: usize,
    },
    /// Compare two elements.
    Cmp {
        backend: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Classify an element as positive, negative, or the identity.
    Sign {
        backend: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Dyadic enclosure of an element measured against a basepoint.
    Embed {
        backend: String,
        /// Basepoint element.
        #[arg(long, allow_hyphen_values = true)]
        base: String,
        /// Refinement level of the enclosure.
        #[arg(long)]
        level: u32,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Bounded anomalous-pair scan for a same-signed ordered pair.
    Anomalous {
        backend: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        /// Largest multiplicity to scan.
        #[arg(long, default_value_t = 64)]
        depth: u32,
    },
    /// Greatest n with n copies of y at most x.
    Floor {
        backend: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Least n >= 0 such that x with n copies of the step is positive.
    Positivize {
        backend: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        /// Positive step element.
        #[arg(long, allow_hyphen_values = true)]
        step: String,
    },
    /// Weak-order comparison of two formal sums over a pointed family.
    CoprodCmp {
        /// Family member as a workspace point name or "DESCRIPTOR:BASE".
        #[arg(long = "member", value_name = "POINT", required_unless_present = "family")]
        members: Vec<String>,
        /// Workspace family name (alternative to --member).
        #[arg(long, value_name = "NAME", conflicts_with = "members")]
        family: Option<String>,
        /// Term of the left sum, as "INDEX=EXPR".
        #[arg(long = "x", value_name = "INDEX=EXPR", required = true)]
        x: Vec<String>,
        /// Term of the right sum, as "INDEX=EXPR".
        #[arg(long = "y", value_name = "INDEX=EXPR", required = true)]
        y: Vec<String>,
    },
    /// Scalar of the morphism sending the source basepoint to an image.
    Lambda {
        /// Source as a workspace point name or "DESCRIPTOR:BASE".
        #[arg(long, value_name = "POINT")]
        source: String,
        /// Target as a workspace point name or "DESCRIPTOR:BASE".
        #[arg(long, value_name = "POINT")]
        target: String,
        /// Image of the source basepoint, in the target backend.
        #[arg(long, allow_hyphen_values = true)]
        image: String,
        #[arg(long, default_value_t = 16)]
        level: u32,
    },
    /// Interval product of two embedded elements.
    Mul {
        backend: String,
        #[arg(long, allow_hyphen_values = true)]
        base: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value_t = 16)]
        level: u32,
    },
    /// Enclosure of the reciprocal of an embedded element.
    Inv {
        backend: String,
        #[arg(long, allow_hyphen_values = true)]
        base: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = 16)]
        level: u32,
    },
    /// Nearest dyadic-grid element to an embedded value.
    Sup {
        backend: String,
        #[arg(long, allow_hyphen_values = true)]
        base: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        /// Grid level: the answer is a multiple of the unit over 2^level.
        #[arg(long)]
        level: u32,
        /// Basepoint of the dyadic backend the answer lives in.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        unit: String,
    },
    /// Field-law suite on sampled embedded elements.
    Laws {
        backend: String,
        #[arg(long, allow_hyphen_values = true)]
        base: String,
        #[arg(long, default_value_t = 16)]
        count: usize,
        #[arg(long, default_value_t = 20)]
        level: u32,
    },
}

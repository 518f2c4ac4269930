//! clap argument definitions.

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "pfs",
    version,
    about = "Compute pointed fusion systems of p-blocks of finite groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Compute a block's pointed fusion system and emit pfs.v1 JSON
    Compute(ComputeArgs),
    /// Run a named verification suite
    Verify(VerifyArgs),
    /// Compare two pfs.v1 files
    Compare(CompareArgs),
}

#[derive(Args)]
pub struct ComputeArgs {
    /// Catalog group name (C<n>, V4, D<m>, Q8, A4, A5, S4, SL23,
    /// C3_semi_Q8, or products like V4xC3)
    #[arg(long)]
    pub group: Option<String>,
    /// JSON group file: {"permutations": [[[0,1],[2,3]], ...]} or {"table": [[...]]}
    #[arg(long, conflicts_with = "group")]
    pub group_file: Option<PathBuf>,
    /// The prime p
    #[arg(long)]
    pub p: u64,
    /// Block selector: an index, "principal", or "all"
    #[arg(long, default_value = "principal")]
    pub block: String,
    /// Splitting-field degree override (default: automatic bound)
    #[arg(long)]
    pub field_degree: Option<u32>,
    /// Decomposition seed (default: PFS_SEED env var, else 0)
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output path; with --block all the block index is inserted before the
    /// extension. Default: stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write a Graphviz Hasse diagram of the multiposet
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Emit the stable part (trivial-subgroup objects removed)
    #[arg(long)]
    pub stable: bool,
    /// Cross-check the multiplicity table against the diagonal-bimodule oracle
    #[arg(long)]
    pub cross_check: bool,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Suite: klein4 | axioms | bounds | ell | crosscheck | slq8
    pub suite: String,
    /// Include the A5 principal block in the crosscheck suite
    #[arg(long)]
    pub include_a5: bool,
    /// Decomposition seed (default: PFS_SEED env var, else 0)
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args)]
pub struct CompareArgs {
    pub file1: PathBuf,
    pub file2: PathBuf,
    /// multiposet | category | f-identical
    #[arg(long, default_value = "multiposet")]
    pub mode: String,
}

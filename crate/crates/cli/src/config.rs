//! Run configuration: validated form of the compute arguments.

use crate::args::ComputeArgs;
use pfs_core::blocks::auto_field_degree;
use pfs_core::error::{PfsError, PfsResult};
use pfs_core::groups::catalog::catalog;
use pfs_core::groups::{group_from_json, Group};
use pfs_core::linff::is_prime;
use std::path::PathBuf;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockSelector {
    Principal,
    All,
    Index(usize),
}

pub struct RunConfig {
    pub group: Arc<Group>,
    pub p: u64,
    pub selector: BlockSelector,
    pub field_degree: Option<u32>,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub dot: Option<PathBuf>,
    pub stable: bool,
    pub cross_check: bool,
}

/// Default seed: the PFS_SEED environment variable, else 0.
pub fn default_seed() -> u64 {
    std::env::var("PFS_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

impl RunConfig {
    pub fn from_args(args: &ComputeArgs) -> PfsResult<RunConfig> {
        if !is_prime(args.p) {
            return Err(PfsError::NotPrime(args.p));
        }
        let group = match (&args.group, &args.group_file) {
            (Some(name), None) => catalog(name)?,
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| PfsError::BadInput(format!("io: {}: {e}", path.display())))?;
                let name = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| "file".into());
                group_from_json(&text, &name)?
            }
            _ => {
                return Err(PfsError::BadInput(
                    "exactly one of --group or --group-file is required".into(),
                ))
            }
        };
        let selector = match args.block.as_str() {
            "principal" => BlockSelector::Principal,
            "all" => BlockSelector::All,
            s => BlockSelector::Index(s.parse().map_err(|_| {
                PfsError::BadInput(format!(
                    "--block takes an index, \"principal\" or \"all\", got {s:?}"
                ))
            })?),
        };
        if let Some(k) = args.field_degree {
            let auto = auto_field_degree(&group, args.p);
            if k < auto {
                eprintln!(
                    "warning: field degree {k} is below the automatic splitting bound {auto}; \
                     split checks will fail loudly if GF({}^{k}) is too small",
                    args.p
                );
            }
        }
        if selector == BlockSelector::All && args.out.is_none() {
            return Err(PfsError::BadInput("--block all requires --out".into()));
        }
        Ok(RunConfig {
            group,
            p: args.p,
            selector,
            field_degree: args.field_degree,
            seed: args.seed.unwrap_or_else(default_seed),
            out: args.out.clone(),
            dot: args.dot.clone(),
            stable: args.stable,
            cross_check: args.cross_check,
        })
    }
}

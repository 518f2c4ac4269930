//! The pointed fusion system of a block: fusion morphisms between subgroups
//! of the defect group, the action of morphisms on points, the multiplicity
//! table, stable parts, axiom validation and isomorphism testing.

mod build;
mod dot;
mod fusion;
mod iso;
mod serial;
#[cfg(test)]
mod tests;
mod validate;

pub use build::{build_pfs, BlockSession, MorphismAction, PfsObject, PointedFusionSystem};
pub use dot::to_dot;
pub use fusion::{fusion_iso, fusion_system, FusionSystem, Morphism};
pub use iso::{iso_test, IsoMode, IsoWitness};
pub use serial::{compare_files, from_file_json, to_file_json, validate_file, PfsFile};
pub use validate::{prop44_check, validate_axioms, Prop44Report};

use crate::linff::FieldDesc;
use serde::{Deserialize, Serialize};

/// Block-level metadata carried by a pointed fusion system.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BlockMeta {
    pub group: String,
    pub p: u64,
    pub field: FieldDesc,
    pub block_index: usize,
    pub dim_source_algebra: usize,
    pub cartan: Vec<Vec<usize>>,
    pub ell: usize,
    /// Extra context, not part of the canonical schema keys above.
    pub block_dim: usize,
    pub defect_order: usize,
}

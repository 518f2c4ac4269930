//! Computation of pointed fusion systems of p-blocks of finite groups.
//!
//! The pipeline, bottom to top:
//!
//! * [`linff`] — finite fields GF(p^k) and exact linear algebra;
//! * [`groups`] — finite groups as Cayley tables, subgroups, conjugacy,
//!   p-subgroup machinery and a catalog of named groups;
//! * [`algebra`] — finite-dimensional associative algebras by structure
//!   constants: radical, Wedderburn decomposition, primitive idempotents,
//!   points, Cartan matrix;
//! * [`blocks`] — group algebras, block decomposition, Brauer maps, defect
//!   groups, source idempotents and relative multiplicities;
//! * [`pfs`] — the pointed fusion system itself: fusion morphisms, point
//!   actions, multiplicity tables, stable parts, isomorphism testing,
//!   serialization;
//! * [`bimods`] — diagonal bimodules and the Brauer construction, used as an
//!   independent oracle for multiplicities and locality.

pub mod algebra;
pub mod bimods;
pub mod blocks;
pub mod error;
pub mod groups;
pub mod linff;
pub mod pfs;

pub use error::{PfsError, PfsResult};
pub use linff::{make_field, Fel, Field, FieldMatrix};

//! Shared setup for the kernel benchmarks.

use pfs_core::groups::catalog::catalog;
use pfs_core::linff::{make_field, Fel, Field, FieldMatrix};
use std::sync::Arc;

pub fn gf4() -> Arc<Field> {
    Arc::new(make_field(2, 2).unwrap())
}

/// Deterministic pseudo-random matrix over the given field.
pub fn random_matrix(field: Arc<Field>, n: usize, mut seed: u64) -> FieldMatrix {
    let q = field.order() as u64;
    let data: Vec<Fel> = (0..n * n)
        .map(|_| {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            Fel((seed % q) as u16)
        })
        .collect();
    FieldMatrix::from_flat(field, n, n, data)
}

pub fn a4_group_algebra() -> pfs_core::blocks::GroupAlgebra {
    pfs_core::blocks::GroupAlgebra::new(catalog("A4").unwrap(), gf4())
}

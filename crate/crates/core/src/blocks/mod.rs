//! Group algebras, block decomposition, Brauer maps and defect groups.

mod source;
#[cfg(test)]
mod tests;

pub use source::{
    brauer_pair_contained, brauer_pairs_over, centralizer_blocks, local_points,
    overshadowed_objects, prepare_defect_lattice, relative_multiplicity, source_data,
    source_data_prepared, source_data_with_choice, BrauerPair, FixedPointAlgebra, LocalPointData,
    PointedGroup, SourceData,
};

use crate::algebra::{decompose_identity, Algebra};
use crate::error::{PfsError, PfsResult};
use crate::groups::{centralizer, conjugators, p_subgroups_up_to_conjugacy, Gel, Group, Subgroup};
use crate::linff::{Fel, Field, FieldMatrix, ONE, ZERO};
use std::sync::Arc;

/// The group algebra FG. Elements are coefficient vectors indexed by group
/// element labels; multiplication is convolution against the Cayley table.
pub struct GroupAlgebra {
    group: Arc<Group>,
    field: Arc<Field>,
    algebra: Algebra,
}

impl GroupAlgebra {
    pub fn new(group: Arc<Group>, field: Arc<Field>) -> GroupAlgebra {
        let d = group.order();
        let mut sc = vec![ZERO; d * d * d];
        for i in 0..d {
            for j in 0..d {
                let m = group.mul(i as Gel, j as Gel) as usize;
                sc[(i * d + j) * d + m] = ONE;
            }
        }
        let mut id = vec![ZERO; d];
        id[0] = ONE;
        let algebra = Algebra::new(field.clone(), d, sc, id);
        GroupAlgebra { group, field, algebra }
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }
    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }
    pub fn dim(&self) -> usize {
        self.group.order()
    }

    pub fn zero(&self) -> Vec<Fel> {
        vec![ZERO; self.dim()]
    }
    pub fn one(&self) -> Vec<Fel> {
        let mut v = self.zero();
        v[0] = ONE;
        v
    }
    pub fn basis_elem(&self, g: Gel) -> Vec<Fel> {
        let mut v = self.zero();
        v[g as usize] = ONE;
        v
    }

    /// Convolution product (quadratic in |G|, cheaper than generic structure
    /// constants).
    pub fn mul(&self, x: &[Fel], y: &[Fel]) -> Vec<Fel> {
        let f = &self.field;
        let n = self.dim();
        let mut out = vec![ZERO; n];
        for i in 0..n {
            let xi = x[i];
            if xi == ZERO {
                continue;
            }
            for j in 0..n {
                let yj = y[j];
                if yj == ZERO {
                    continue;
                }
                let t = self.group.mul(i as Gel, j as Gel) as usize;
                out[t] = f.add(out[t], f.mul(xi, yj));
            }
        }
        out
    }

    pub fn add(&self, x: &[Fel], y: &[Fel]) -> Vec<Fel> {
        x.iter().zip(y).map(|(&a, &b)| self.field.add(a, b)).collect()
    }

    pub fn sub(&self, x: &[Fel], y: &[Fel]) -> Vec<Fel> {
        x.iter().zip(y).map(|(&a, &b)| self.field.sub(a, b)).collect()
    }

    pub fn augmentation(&self, x: &[Fel]) -> Fel {
        let mut a = ZERO;
        for &c in x {
            a = self.field.add(a, c);
        }
        a
    }

    /// g x g^-1, a coordinate permutation.
    pub fn conj_elem(&self, g: Gel, x: &[Fel]) -> Vec<Fel> {
        let mut out = self.zero();
        for (i, &c) in x.iter().enumerate() {
            if c != ZERO {
                out[self.group.conj(g, i as Gel) as usize] = c;
            }
        }
        out
    }

    pub fn is_fixed_by(&self, s: &Subgroup, x: &[Fel]) -> bool {
        s.small_generating_set()
            .iter()
            .all(|&u| self.conj_elem(u, x) == x)
    }

    /// Class sums: the canonical basis of the center.
    pub fn class_sums(&self) -> FieldMatrix {
        let classes = self.group.conjugacy_classes();
        let rows: Vec<Vec<Fel>> = classes
            .iter()
            .map(|class| {
                let mut v = self.zero();
                for &g in class {
                    v[g as usize] = ONE;
                }
                v
            })
            .collect();
        FieldMatrix::from_rows(self.field.clone(), rows)
    }

    /// Orbit sums of S acting on G by conjugation: a basis of (FG)^S.
    pub fn orbit_sums(&self, s: &Subgroup) -> FieldMatrix {
        let n = self.dim();
        let mut seen = vec![false; n];
        let mut rows = Vec::new();
        for g in 0..n as Gel {
            if seen[g as usize] {
                continue;
            }
            let mut v = self.zero();
            let mut orbit = vec![g];
            seen[g as usize] = true;
            v[g as usize] = ONE;
            while let Some(x) = orbit.pop() {
                for &u in s.elements() {
                    let y = self.group.conj(u, x);
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        v[y as usize] = ONE;
                        orbit.push(y);
                    }
                }
            }
            rows.push(v);
        }
        FieldMatrix::from_rows(self.field.clone(), rows)
    }

    /// The P-relative Brauer map: truncate the support of a P-fixed element
    /// to the centralizer of P. Rejects elements that are not P-fixed.
    pub fn brauer_map(&self, x: &[Fel], p: &Subgroup) -> PfsResult<Vec<Fel>> {
        if !self.is_fixed_by(p, x) {
            return Err(PfsError::BadInput(
                "Brauer map applied to an element not fixed by the subgroup".into(),
            ));
        }
        let c = centralizer(&self.group, p);
        let mut out = self.zero();
        for &g in c.elements() {
            out[g as usize] = x[g as usize];
        }
        Ok(out)
    }

    /// Dimension of the left ideal FG x.
    pub fn left_ideal_dim(&self, x: &[Fel]) -> usize {
        let rows: Vec<Vec<Fel>> = (0..self.dim() as Gel)
            .map(|g| self.mul(&self.basis_elem(g), x))
            .collect();
        FieldMatrix::from_rows(self.field.clone(), rows).rank()
    }
}

/// A block: central primitive idempotent of FG.
#[derive(Clone)]
pub struct Block {
    pub index: usize,
    pub idempotent: Vec<Fel>,
    pub is_principal: bool,
    /// Dimension of the block algebra FGb.
    pub dim: usize,
}

/// Block decomposition: the canonical set of central primitive idempotents,
/// obtained by decomposing the center (spanned by class sums). The
/// decomposition of a commutative algebra is unique, so the result does not
/// depend on internal randomness; blocks are ordered canonically.
pub fn blocks(fga: &GroupAlgebra) -> PfsResult<Vec<Block>> {
    let sums = fga.class_sums();
    let (zalg, zbasis) = center_algebra(fga, &sums)?;
    let idems = decompose_identity(&zalg, 0)?;
    let mut out = Vec::with_capacity(idems.len());
    for (index, e) in idems.iter().enumerate() {
        let mut fg = fga.zero();
        for (t, &c) in e.coords.iter().enumerate() {
            if c != ZERO {
                let row = zbasis.row(t);
                for (o, &r) in fg.iter_mut().zip(row) {
                    *o = fga.field.add(*o, fga.field.mul(c, r));
                }
            }
        }
        let is_principal = fga.augmentation(&fg) == ONE;
        let dim = fga.left_ideal_dim(&fg);
        out.push(Block { index, idempotent: fg, is_principal, dim });
    }
    // sanity: orthogonal, sums to 1
    let mut sum = fga.zero();
    for b in &out {
        sum = fga.add(&sum, &b.idempotent);
    }
    if sum != fga.one() {
        return Err(PfsError::Inconsistency("blocks do not sum to 1".into()));
    }
    if out.iter().filter(|b| b.is_principal).count() != 1 {
        return Err(PfsError::Inconsistency("expected exactly one principal block".into()));
    }
    Ok(out)
}

fn center_algebra(fga: &GroupAlgebra, sums: &FieldMatrix) -> PfsResult<(Algebra, FieldMatrix)> {
    let (basis, rank, pivots) = sums.rref();
    let d = rank;
    let mut sc = vec![ZERO; d * d * d];
    for i in 0..d {
        for j in 0..d {
            let prod = fga.mul(basis.row(i), basis.row(j));
            let coords = basis.coords_in_rref_basis(&prod, &pivots).ok_or_else(|| {
                PfsError::Inconsistency("class sums are not multiplicatively closed".into())
            })?;
            sc[(i * d + j) * d..(i * d + j + 1) * d].copy_from_slice(&coords);
        }
    }
    let id = basis
        .coords_in_rref_basis(&fga.one(), &pivots)
        .ok_or_else(|| PfsError::Inconsistency("identity not central".into()))?;
    Ok((Algebra::new(fga.field.clone(), d, sc, id), basis))
}

/// Defect group of a block: a p-subgroup representative, maximal under
/// subconjugacy among those with br_P(b) != 0. All maximal survivors are
/// checked to be conjugate.
pub fn defect_group(fga: &GroupAlgebra, block: &Block) -> PfsResult<Subgroup> {
    let p = fga.field.p();
    let reps = p_subgroups_up_to_conjugacy(fga.group(), p)?;
    let survivors: Vec<&Subgroup> = reps
        .iter()
        .filter(|s| {
            let br = fga.brauer_map(&block.idempotent, s).expect("block is G-fixed");
            br.iter().any(|&c| c != ZERO)
        })
        .collect();
    if survivors.is_empty() {
        return Err(PfsError::Inconsistency("no p-subgroup survives the Brauer map".into()));
    }
    // maximal under "conjugate into"
    let maximal: Vec<&&Subgroup> = survivors
        .iter()
        .filter(|s| {
            !survivors.iter().any(|t| {
                t.order() > s.order() && !conjugators(fga.group(), s, t).is_empty()
            })
        })
        .collect();
    for a in &maximal {
        for b in &maximal {
            if conjugators(fga.group(), a, b).is_empty() {
                return Err(PfsError::Inconsistency(
                    "maximal Brauer-surviving subgroups are not conjugate".into(),
                ));
            }
        }
    }
    Ok((**maximal[0]).clone())
}

/// Default splitting-field degree: the multiplicative order of p modulo the
/// p'-part of the exponent of G. Sufficient for FG and for every centralizer
/// subalgebra; runtime split checks still guard every decomposition.
pub fn auto_field_degree(group: &Arc<Group>, p: u64) -> u32 {
    let mut e = group.exponent();
    while e % p == 0 {
        e /= p;
    }
    if e == 1 {
        return 1;
    }
    let mut k = 1u32;
    let mut pw = p % e;
    while pw != 1 {
        pw = pw * p % e;
        k += 1;
    }
    k
}

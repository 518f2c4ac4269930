//! Spinning bases, equivariant Hom-spaces and endomorphism algebras.
//!
//! A cyclic module M = FH v is spanned by images of its generator under
//! words in the acting generators; an equivariant map out of M is then
//! determined by the image w of v, and the admissible w form the solution
//! space of one linear system per acting generator. This keeps every Hom
//! computation inside the module's own action matrices.

use super::GModule;
use crate::algebra::Algebra;
use crate::error::{PfsError, PfsResult};
use crate::linff::{Fel, FieldMatrix, ZERO};

pub(crate) struct SpunData {
    /// Spun basis vectors as rows (dim x dim, invertible), module coords.
    pub s_rows: FieldMatrix,
    /// (S^T)^-1, mapping a column vector to its spun-basis coordinates.
    pub st_inv: FieldMatrix,
    /// How each spun vector arose: None for the root (the generator), or
    /// (parent row, position into `gens()`).
    pub derivation: Vec<Option<(usize, usize)>>,
}

pub(crate) fn spin(m: &GModule) -> PfsResult<SpunData> {
    let f = m.field().clone();
    let dim = m.dim();
    let mut rows: Vec<Vec<Fel>> = vec![m.generator().to_vec()];
    let mut derivation: Vec<Option<(usize, usize)>> = vec![None];
    // incremental row reduction for independence testing
    let mut reduced: Vec<Vec<Fel>> = Vec::with_capacity(dim);
    let mut pivots: Vec<usize> = Vec::with_capacity(dim);
    let try_add = |v: &[Fel], reduced: &mut Vec<Vec<Fel>>, pivots: &mut Vec<usize>| -> bool {
        let mut v = v.to_vec();
        for (row, &pc) in reduced.iter().zip(pivots.iter()) {
            let c = v[pc];
            if c != ZERO {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
        let Some(pc) = v.iter().position(|&x| x != ZERO) else {
            return false;
        };
        let inv = f.inv(v[pc]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        reduced.push(v);
        pivots.push(pc);
        true
    };
    assert!(try_add(&rows[0], &mut reduced, &mut pivots), "zero generator");
    let mut cursor = 0usize;
    while cursor < rows.len() && rows.len() < dim {
        for (gpos, &h) in m.gens().iter().enumerate() {
            let y = m.apply(h, &rows[cursor]);
            if try_add(&y, &mut reduced, &mut pivots) {
                rows.push(y);
                derivation.push(Some((cursor, gpos)));
                if rows.len() == dim {
                    break;
                }
            }
        }
        cursor += 1;
    }
    if rows.len() != dim {
        return Err(PfsError::Inconsistency(format!(
            "module {} is not cyclic over its designated generator",
            m.tag()
        )));
    }
    let s_rows = FieldMatrix::from_rows(f, rows);
    let st_inv = s_rows
        .transpose()
        .inverse()
        .ok_or_else(|| PfsError::Inconsistency("spun basis is singular".into()))?;
    Ok(SpunData { s_rows, st_inv, derivation })
}

/// The space of F(GxP)-equivariant maps M -> N, parametrized by the image w
/// of M's cyclic generator.
pub struct HomData {
    /// rref rows: admissible w, N coordinates.
    pub w_basis: FieldMatrix,
    w_pivots: Vec<usize>,
    /// chains[c]: the operator sending w to the image of the c-th spun basis
    /// vector (target action).
    chains: Vec<FieldMatrix>,
    /// Source spun data, for operator reconstruction.
    st_inv: FieldMatrix,
}

impl HomData {
    pub fn dim(&self) -> usize {
        self.w_basis.rows()
    }

    /// Full operator matrix (dim N x dim M) of the map with generator image w.
    pub fn operator(&self, w: &[Fel]) -> FieldMatrix {
        let dim_m = self.chains.len();
        let dim_n = w.len();
        let f = self.w_basis.field().clone();
        let mut u = FieldMatrix::zeros(f, dim_n, dim_m);
        for (c, chain) in self.chains.iter().enumerate() {
            let img = chain.apply(w);
            for (r, &v) in img.iter().enumerate() {
                u.set(r, c, v);
            }
        }
        u.matmul(&self.st_inv)
    }

    pub fn coords_of(&self, w: &[Fel]) -> Option<Vec<Fel>> {
        self.w_basis.coords_in_rref_basis(w, &self.w_pivots)
    }
}

pub fn hom_space(m: &GModule, n: &GModule) -> PfsResult<HomData> {
    if !m.same_acting_group(n) {
        return Err(PfsError::BadInput(
            "Hom requires modules over the same product group".into(),
        ));
    }
    let f = m.field().clone();
    let spun = m.spun()?;
    let (dim_m, dim_n) = (m.dim(), n.dim());
    // chains with the target action
    let mut chains: Vec<FieldMatrix> = Vec::with_capacity(dim_m);
    for c in 0..dim_m {
        match spun.derivation[c] {
            None => chains.push(FieldMatrix::identity(f.clone(), dim_n)),
            Some((parent, gpos)) => {
                let mat = n.action_matrix(m.gens()[gpos]);
                chains.push(mat.matmul(&chains[parent]));
            }
        }
    }
    // constraints per generator and spun column
    let mut rows: Vec<Vec<Fel>> = Vec::new();
    for &h in m.gens() {
        let rho_m = m.action_matrix(h);
        let rho_n = n.action_matrix(h);
        for c in 0..dim_m {
            // gamma = spun coords of rho_m . s_c
            let y = rho_m.apply(spun.s_rows.row(c));
            let gamma = spun.st_inv.apply(&y);
            // E = sum gamma_c' A_c' - rho_n A_c
            let mut e = rho_n.matmul(&chains[c]).scale(f.neg(crate::linff::ONE));
            for (cp, &g) in gamma.iter().enumerate() {
                if g != ZERO {
                    e = e.add_mat(&chains[cp].scale(g));
                }
            }
            for r in 0..dim_n {
                if e.row(r).iter().any(|&x| x != ZERO) {
                    rows.push(e.row(r).to_vec());
                }
            }
        }
    }
    let w_basis = if rows.is_empty() {
        FieldMatrix::identity(f.clone(), dim_n)
    } else {
        FieldMatrix::from_rows(f, rows).nullspace()
    };
    let (w_basis, _, w_pivots) = w_basis.rref();
    Ok(HomData { w_basis, w_pivots, chains, st_inv: spun.st_inv.clone() })
}

/// End(M) as a structure-constant algebra (composition order: the product
/// a*b acts as "first b, then a"), together with the Hom parametrization.
pub fn end_algebra(m: &GModule) -> PfsResult<(Algebra, HomData)> {
    let hom = hom_space(m, m)?;
    let e = hom.dim();
    let f = m.field().clone();
    // operators for each basis element
    let ops: Vec<FieldMatrix> = (0..e).map(|t| hom.operator(hom.w_basis.row(t))).collect();
    let mut sc = vec![ZERO; e * e * e];
    for a in 0..e {
        for b in 0..e {
            // (X_a . X_b)(v) = X_a(w_b)
            let w = ops[a].apply(hom.w_basis.row(b));
            let coords = hom.coords_of(&w).ok_or_else(|| {
                PfsError::Inconsistency("endomorphism composition left the Hom space".into())
            })?;
            sc[(a * e + b) * e..(a * e + b + 1) * e].copy_from_slice(&coords);
        }
    }
    let idw = m.generator().to_vec();
    let id = hom.coords_of(&idw).ok_or_else(|| {
        PfsError::Inconsistency("identity map missing from End".into())
    })?;
    Ok((Algebra::new(f, e, sc, id), hom))
}

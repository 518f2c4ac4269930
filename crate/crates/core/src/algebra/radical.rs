//! Jacobson radical in characteristic p.
//!
//! The radical is the terminal member of the descending chain
//!
//!   I_0 = A,   I_{i+1} = { x in I_i : c_{p^i}(L_x L_y) = 0 for all y in I_i },
//!
//! for i = 0..l with p^l <= n < p^{l+1}, where c_j denotes the degree-(n-j)
//! coefficient of the characteristic polynomial of the regular representation
//! (n = dim A). On I_i the map x -> c_{p^i}(L_x L_y) is additive and
//! p^i-semilinear, so each step is one nullspace computation after
//! de-twisting with the inverse Frobenius. The i = 0 step is the ordinary
//! trace form.

use super::Algebra;
use crate::linff::{Fel, FieldMatrix, ZERO};

pub struct SemisimpleData {
    /// rref basis (rows) of the radical inside A.
    pub radical: FieldMatrix,
    /// The quotient algebra A/rad.
    pub quotient: Algebra,
    /// Coordinates in the quotient of each A-basis vector: (dim Abar) x (dim A).
    pub projection: FieldMatrix,
    /// A linear section of the projection: (dim A) x (dim Abar).
    pub section: FieldMatrix,
}

impl SemisimpleData {
    pub fn project(&self, x: &[Fel]) -> Vec<Fel> {
        self.projection.apply(x)
    }
    pub fn lift_linear(&self, xbar: &[Fel]) -> Vec<Fel> {
        self.section.apply(xbar)
    }
}

pub fn radical_basis(a: &Algebra) -> FieldMatrix {
    let f = a.field().clone();
    let d = a.dim();
    let mut basis = FieldMatrix::identity(f.clone(), d);
    let mut power = 1usize; // p^i
    let mut level = 0u32;
    loop {
        let m = basis.rows();
        if m == 0 {
            break;
        }
        // left-multiplication matrices of the current basis
        let lmats: Vec<FieldMatrix> = (0..m).map(|s| a.left_mult_matrix(basis.row(s))).collect();
        // gram[s][j] = c_{p^level}(L_{r_s} L_{r_j})
        let mut gram = FieldMatrix::zeros(f.clone(), m, m);
        if power == 1 {
            // plain trace form: tr(L_s L_j) without forming the product
            for s in 0..m {
                for j in 0..=s {
                    let mut t = ZERO;
                    for r in 0..d {
                        for c in 0..d {
                            let x = lmats[s].get(r, c);
                            if x != ZERO {
                                t = f.add(t, f.mul(x, lmats[j].get(c, r)));
                            }
                        }
                    }
                    gram.set(s, j, t);
                    gram.set(j, s, t);
                }
            }
        } else {
            for s in 0..m {
                for j in 0..m {
                    let prod = lmats[s].matmul(&lmats[j]);
                    let cp = prod.charpoly();
                    gram.set(s, j, cp[d - power]);
                }
            }
        }
        // solve sum_s eta_s gram[s][j] = 0, then de-twist eta by Frobenius^-level
        let eta = gram.transpose().nullspace();
        let mut rows: Vec<Vec<Fel>> = Vec::with_capacity(eta.rows());
        for r in 0..eta.rows() {
            let mut v = vec![ZERO; d];
            for s in 0..m {
                let xi = f.inv_frobenius_iter(eta.get(r, s), level);
                if xi == ZERO {
                    continue;
                }
                for (vc, &bc) in v.iter_mut().zip(basis.row(s)) {
                    *vc = f.add(*vc, f.mul(xi, bc));
                }
            }
            rows.push(v);
        }
        basis = if rows.is_empty() {
            FieldMatrix::zeros(f.clone(), 0, d)
        } else {
            FieldMatrix::from_rows(f.clone(), rows).rref().0
        };
        // last level has p^level <= d < p^(level+1)
        if power > d / a.field().p() as usize {
            break;
        }
        power *= a.field().p() as usize;
        level += 1;
    }
    basis
}

pub fn semisimple_data(a: &Algebra) -> SemisimpleData {
    let f = a.field().clone();
    let d = a.dim();
    let radical = radical_basis(a);
    let (rad, rank, rad_pivots) = radical.rref();
    // complement: coordinates outside the radical pivot columns
    let comp: Vec<usize> = (0..d).filter(|c| !rad_pivots.contains(c)).collect();
    let dq = comp.len();
    debug_assert_eq!(rank + dq, d);
    // projection: eliminate radical pivots, read complement coordinates
    let mut projection = FieldMatrix::zeros(f.clone(), dq, d);
    for t in 0..d {
        // image of basis vector e_t
        let mut v = vec![ZERO; d];
        v[t] = crate::linff::ONE;
        for (i, &pc) in rad_pivots.iter().enumerate() {
            let coeff = v[pc];
            if coeff == ZERO {
                continue;
            }
            for (vc, &rc) in v.iter_mut().zip(rad.row(i)) {
                *vc = f.sub(*vc, f.mul(coeff, rc));
            }
        }
        for (q, &cc) in comp.iter().enumerate() {
            projection.set(q, t, v[cc]);
        }
    }
    let mut section = FieldMatrix::zeros(f.clone(), d, dq);
    for (q, &cc) in comp.iter().enumerate() {
        section.set(cc, q, crate::linff::ONE);
    }
    // quotient structure constants, using the complement unit vectors as
    // section images
    let mut sc = vec![ZERO; dq * dq * dq];
    for i in 0..dq {
        let mut ei = vec![ZERO; d];
        ei[comp[i]] = crate::linff::ONE;
        for j in 0..dq {
            let mut ej = vec![ZERO; d];
            ej[comp[j]] = crate::linff::ONE;
            let prod = a.mul(&ei, &ej);
            let coords = projection.apply(&prod);
            sc[(i * dq + j) * dq..(i * dq + j + 1) * dq].copy_from_slice(&coords);
        }
    }
    let idq = projection.apply(a.identity());
    let quotient = Algebra::new(f, dq, sc, idq);
    SemisimpleData {
        radical: rad,
        quotient,
        projection,
        section,
    }
}

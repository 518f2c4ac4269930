//! The Brauer construction M(Delta(S)) = M^{Delta(S)} / sum of relative
//! traces from the diagonals of proper subgroups.

use super::GModule;
use crate::error::PfsResult;
use crate::groups::{centralizer, subgroups_of, Gel, Subgroup};
use crate::linff::{Fel, FieldMatrix, ZERO};

pub struct BrauerQuotient {
    /// Basis of the Delta(S)-fixed points, rows in module coordinates (rref).
    pub fixed: FieldMatrix,
    fixed_pivots: Vec<usize>,
    /// Trace-sum subspace expressed in fixed-point coordinates (rref).
    pub traces_in_fixed: FieldMatrix,
    trace_pivots: Vec<usize>,
    /// Fixed-point coordinate positions surviving into the quotient.
    complement: Vec<usize>,
    subgroup: Subgroup,
}

impl BrauerQuotient {
    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    fn project_fixed_coords(&self, mut v: Vec<Fel>) -> Vec<Fel> {
        let f = self.fixed.field().clone();
        for (i, &pc) in self.trace_pivots.iter().enumerate() {
            let c = v[pc];
            if c != ZERO {
                for (x, &r) in v.iter_mut().zip(self.traces_in_fixed.row(i)) {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
        self.complement.iter().map(|&c| v[c]).collect()
    }

    /// Induced action of a centralizer element c (acting as the pair (c, 1))
    /// on the quotient.
    pub fn centralizer_action(&self, m: &GModule, c: Gel) -> FieldMatrix {
        let cent = centralizer(m.group(), &self.subgroup);
        assert!(cent.contains(c), "element does not centralize the subgroup");
        let h = m.pair_index(c, 0);
        let mat = m.action_matrix(h);
        let f = self.fixed.field().clone();
        let n = self.dim();
        let mut out = FieldMatrix::zeros(f, n, n);
        for (j, &cj) in self.complement.iter().enumerate() {
            let img = mat.apply(self.fixed.row(cj));
            let coords = self
                .fixed
                .coords_in_rref_basis(&img, &self.fixed_pivots)
                .expect("centralizer action preserves the fixed points");
            let q = self.project_fixed_coords(coords);
            for (r, &v) in q.iter().enumerate() {
                out.set(r, j, v);
            }
        }
        out
    }
}

/// Brauer construction of `m` at Delta(S), S a subgroup of the right factor.
pub fn brauer_construction(m: &GModule, s: &Subgroup) -> PfsResult<BrauerQuotient> {
    let f = m.field().clone();
    let dim = m.dim();
    // fixed points of the diagonal
    let fixed = if s.is_trivial() {
        FieldMatrix::identity(f.clone(), dim)
    } else {
        let gens = s.small_generating_set();
        let mut stacked = FieldMatrix::zeros(f.clone(), dim * gens.len(), dim);
        for (t, &u) in gens.iter().enumerate() {
            let mat = m.action_matrix(m.diagonal_index(u));
            for r in 0..dim {
                for c in 0..dim {
                    let mut v = mat.get(r, c);
                    if r == c {
                        v = f.sub(v, crate::linff::ONE);
                    }
                    stacked.set(t * dim + r, c, v);
                }
            }
        }
        stacked.nullspace()
    };
    let (fixed, _, fixed_pivots) = fixed.rref();

    // relative traces from the maximal proper subgroups (index p covers all)
    let mut trace_rows: Vec<Vec<Fel>> = Vec::new();
    if !s.is_trivial() {
        let subs = subgroups_of(s)?;
        for q in subs.iter().filter(|q| q.order() < s.order()) {
            let maximal = s.order() / q.order()
                == m.field().p() as usize;
            if !maximal {
                continue;
            }
            // fixed points of Delta(Q)
            let q_fixed = if q.is_trivial() {
                FieldMatrix::identity(f.clone(), dim)
            } else {
                let gens = q.small_generating_set();
                let mut stacked = FieldMatrix::zeros(f.clone(), dim * gens.len(), dim);
                for (t, &u) in gens.iter().enumerate() {
                    let mat = m.action_matrix(m.diagonal_index(u));
                    for r in 0..dim {
                        for c in 0..dim {
                            let mut v = mat.get(r, c);
                            if r == c {
                                v = f.sub(v, crate::linff::ONE);
                            }
                            stacked.set(t * dim + r, c, v);
                        }
                    }
                }
                stacked.nullspace()
            };
            let reps = q.left_transversal(s);
            for r in 0..q_fixed.rows() {
                let mut acc = vec![ZERO; dim];
                for &rep in &reps {
                    let img = m.apply(m.diagonal_index(rep), q_fixed.row(r));
                    for (a, &b) in acc.iter_mut().zip(&img) {
                        *a = f.add(*a, b);
                    }
                }
                if acc.iter().any(|&x| x != ZERO) {
                    trace_rows.push(acc);
                }
            }
        }
    }
    // express traces in fixed-point coordinates
    let mut in_fixed: Vec<Vec<Fel>> = Vec::new();
    for t in &trace_rows {
        let coords = fixed
            .coords_in_rref_basis(t, &fixed_pivots)
            .expect("relative traces land in the fixed points");
        in_fixed.push(coords);
    }
    let traces_in_fixed = if in_fixed.is_empty() {
        FieldMatrix::zeros(f.clone(), 0, fixed.rows())
    } else {
        FieldMatrix::from_rows(f, in_fixed).rref().0
    };
    let (traces_in_fixed, _, trace_pivots) = traces_in_fixed.rref();
    let complement: Vec<usize> =
        (0..fixed.rows()).filter(|c| !trace_pivots.contains(c)).collect();
    Ok(BrauerQuotient {
        fixed,
        fixed_pivots,
        traces_in_fixed,
        trace_pivots,
        complement,
        subgroup: s.clone(),
    })
}

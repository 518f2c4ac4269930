//! Finite-dimensional associative unital algebras over GF(p^k), given by
//! structure constants.
//!
//! Services: Jacobson radical (characteristic-p coefficient chain),
//! semisimple quotient, Wedderburn decomposition over a splitting field,
//! primitive idempotent decompositions with lifting, points, Cartan matrix
//! and fixed subalgebras. All randomized searches take an explicit seed and
//! every public result is seed-invariant.

mod idempotents;
mod radical;
mod wedderburn;

pub use idempotents::{decompose_identity, lift_idempotent, point_of, same_point, Idempotent, Point};
pub use radical::SemisimpleData;
pub use wedderburn::{Component, WedderburnData};

use crate::error::{PfsError, PfsResult};
use crate::linff::{Fel, Field, FieldMatrix, ONE, ZERO};
use serde::Serialize;
use std::sync::{Arc, OnceLock};

pub struct Algebra {
    field: Arc<Field>,
    dim: usize,
    /// sc[(i*dim + j)*dim + m] = coefficient of basis_m in basis_i * basis_j.
    sc: Vec<Fel>,
    identity: Vec<Fel>,
    left_mats: Vec<FieldMatrix>,
    semisimple: OnceLock<Arc<SemisimpleData>>,
    wedderburn: OnceLock<Result<Arc<WedderburnData>, String>>,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Algebra(dim {} over GF({}^{}))",
            self.dim,
            self.field.p(),
            self.field.k()
        )
    }
}

impl Algebra {
    pub fn new(field: Arc<Field>, dim: usize, sc: Vec<Fel>, identity: Vec<Fel>) -> Algebra {
        assert_eq!(sc.len(), dim * dim * dim);
        assert_eq!(identity.len(), dim);
        let left_mats = (0..dim)
            .map(|i| {
                let mut m = FieldMatrix::zeros(field.clone(), dim, dim);
                for j in 0..dim {
                    for t in 0..dim {
                        m.set(t, j, sc[(i * dim + j) * dim + t]);
                    }
                }
                m
            })
            .collect();
        Algebra {
            field,
            dim,
            sc,
            identity,
            left_mats,
            semisimple: OnceLock::new(),
            wedderburn: OnceLock::new(),
        }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn identity(&self) -> &[Fel] {
        &self.identity
    }
    pub fn zero(&self) -> Vec<Fel> {
        vec![ZERO; self.dim]
    }

    #[inline]
    pub fn sc_entry(&self, i: usize, j: usize, m: usize) -> Fel {
        self.sc[(i * self.dim + j) * self.dim + m]
    }

    /// Basis product as a coordinate vector.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Fel] {
        &self.sc[(i * self.dim + j) * self.dim..(i * self.dim + j + 1) * self.dim]
    }

    pub fn mul(&self, x: &[Fel], y: &[Fel]) -> Vec<Fel> {
        let f = &self.field;
        let mut out = vec![ZERO; self.dim];
        for (i, &xi) in x.iter().enumerate() {
            if xi == ZERO {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == ZERO {
                    continue;
                }
                let c = f.mul(xi, yj);
                let prod = self.basis_product(i, j);
                for (o, &pm) in out.iter_mut().zip(prod) {
                    if pm != ZERO {
                        *o = f.add(*o, f.mul(c, pm));
                    }
                }
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

    pub fn scale(&self, c: Fel, x: &[Fel]) -> Vec<Fel> {
        x.iter().map(|&a| self.field.mul(c, a)).collect()
    }

    pub fn is_zero_vec(x: &[Fel]) -> bool {
        x.iter().all(|&a| a == ZERO)
    }

    /// Matrix of left multiplication by x in the regular representation.
    pub fn left_mult_matrix(&self, x: &[Fel]) -> FieldMatrix {
        let f = &self.field;
        let mut m = FieldMatrix::zeros(self.field.clone(), self.dim, self.dim);
        for (i, &xi) in x.iter().enumerate() {
            if xi == ZERO {
                continue;
            }
            let li = &self.left_mats[i];
            for r in 0..self.dim {
                for c in 0..self.dim {
                    let v = li.get(r, c);
                    if v != ZERO {
                        m.set(r, c, f.add(m.get(r, c), f.mul(xi, v)));
                    }
                }
            }
        }
        m
    }

    pub fn left_mats(&self) -> &[FieldMatrix] {
        &self.left_mats
    }

    pub fn element_pow(&self, x: &[Fel], n: u64) -> Vec<Fel> {
        let mut acc = self.identity.clone();
        let mut base = x.to_vec();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Associativity on all basis triples (use for d <= 64 / external input).
    pub fn verify_associative_full(&self) -> PfsResult<()> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.basis_product(i, j).to_vec();
                for k in 0..self.dim {
                    let jk = self.basis_product(j, k).to_vec();
                    let mut ei = self.zero();
                    ei[i] = ONE;
                    let mut ek = self.zero();
                    ek[k] = ONE;
                    if self.mul(&ij, &ek) != self.mul(&ei, &jk) {
                        return Err(PfsError::BadInput(format!(
                            "structure constants not associative at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Basis (rows, rref) of the center.
    pub fn center(&self) -> FieldMatrix {
        // x central iff (L_i - R_i) x = 0 for all basis i
        let f = &self.field;
        let mut stacked = FieldMatrix::zeros(self.field.clone(), self.dim * self.dim, self.dim);
        for i in 0..self.dim {
            for r in 0..self.dim {
                for j in 0..self.dim {
                    // L_i[r][j] - R_i[r][j], R_i[r][j] = sc[j][i][r]
                    let v = f.sub(self.left_mats[i].get(r, j), self.sc_entry(j, i, r));
                    stacked.set(i * self.dim + r, j, v);
                }
            }
        }
        stacked.nullspace()
    }

    /// The subalgebra spanned by `span` (rows), which must be closed under
    /// multiplication and contain `identity_elt`. Returns the algebra and its
    /// rref basis inside self.
    pub fn subalgebra(&self, span: &FieldMatrix, identity_elt: &[Fel]) -> PfsResult<(Algebra, FieldMatrix)> {
        let (basis, rank, pivots) = span.rref();
        let d = rank;
        let mut sc = vec![ZERO; d * d * d];
        for i in 0..d {
            for j in 0..d {
                let prod = self.mul(basis.row(i), basis.row(j));
                let coords = basis.coords_in_rref_basis(&prod, &pivots).ok_or_else(|| {
                    PfsError::Inconsistency("span is not closed under multiplication".into())
                })?;
                sc[(i * d + j) * d..(i * d + j + 1) * d].copy_from_slice(&coords);
            }
        }
        let id = basis
            .coords_in_rref_basis(identity_elt, &pivots)
            .ok_or_else(|| PfsError::Inconsistency("identity not inside the span".into()))?;
        Ok((Algebra::new(self.field.clone(), d, sc, id), basis))
    }

    /// Fixed points of a group of algebra automorphisms, given by matrices
    /// for a generating set. Returns the fixed subalgebra and its embedding
    /// basis.
    pub fn fixed_subalgebra(&self, autos: &[FieldMatrix]) -> PfsResult<(Algebra, FieldMatrix)> {
        if autos.is_empty() {
            let id = FieldMatrix::identity(self.field.clone(), self.dim);
            return self.subalgebra(&id, &self.identity.clone());
        }
        let f = &self.field;
        let mut stacked = FieldMatrix::zeros(
            self.field.clone(),
            self.dim * autos.len(),
            self.dim,
        );
        for (t, m) in autos.iter().enumerate() {
            for r in 0..self.dim {
                for c in 0..self.dim {
                    let mut v = m.get(r, c);
                    if r == c {
                        v = f.sub(v, ONE);
                    }
                    stacked.set(t * self.dim + r, c, v);
                }
            }
        }
        let fixed = stacked.nullspace();
        self.subalgebra(&fixed, &self.identity.clone())
    }

    /// Jacobson radical basis (rows, rref), cached.
    pub fn radical(&self) -> &FieldMatrix {
        &self.semisimple_data().radical
    }

    pub fn semisimple_data(&self) -> &Arc<SemisimpleData> {
        self.semisimple.get_or_init(|| Arc::new(radical::semisimple_data(self)))
    }

    /// Wedderburn components of A/rad(A), canonically ordered; cached.
    pub fn wedderburn(&self) -> PfsResult<&Arc<WedderburnData>> {
        let r = self
            .wedderburn
            .get_or_init(|| wedderburn::compute(self).map(Arc::new).map_err(|e| e.to_string()));
        match r {
            Ok(w) => Ok(w),
            Err(msg) => Err(PfsError::SplitField(msg.clone())),
        }
    }

    /// Number of isomorphism classes of simple modules.
    pub fn ell(&self) -> PfsResult<usize> {
        Ok(self.wedderburn()?.components.len())
    }

    /// Minimal polynomial of x relative to the algebra unit, coefficients
    /// low-to-high, monic.
    pub fn min_poly(&self, x: &[Fel]) -> Vec<Fel> {
        let mut powers: Vec<Vec<Fel>> = vec![self.identity.clone()];
        loop {
            let next = self.mul(powers.last().unwrap(), x);
            let m = FieldMatrix::from_rows(self.field.clone(), powers.clone()).transpose();
            if let Ok(Some(c)) = m.solve(&next) {
                let f = &self.field;
                let mut coeffs: Vec<Fel> = c.iter().map(|&ci| f.neg(ci)).collect();
                coeffs.push(ONE);
                return coeffs;
            }
            powers.push(next);
            assert!(powers.len() <= self.dim + 1, "minimal polynomial search ran away");
        }
    }

    /// Cartan matrix: entry (i,j) = dim e_i A e_j for one primitive
    /// idempotent per point.
    pub fn cartan_matrix(&self, seed: u64) -> PfsResult<Vec<Vec<usize>>> {
        let idems = decompose_identity(self, seed)?;
        let mut reps: Vec<(usize, &Idempotent)> = Vec::new();
        for e in &idems {
            let pt = point_of(self, e)?;
            if !reps.iter().any(|&(l, _)| l == pt.label) {
                reps.push((pt.label, e));
            }
        }
        reps.sort_by_key(|&(l, _)| l);
        let n = reps.len();
        let mut cartan = vec![vec![0usize; n]; n];
        for (a, &(_, ea)) in reps.iter().enumerate() {
            for (b, &(_, eb)) in reps.iter().enumerate() {
                let mut rows = Vec::with_capacity(self.dim);
                for t in 0..self.dim {
                    let mut bt = self.zero();
                    bt[t] = ONE;
                    rows.push(self.mul(&self.mul(&ea.coords, &bt), &eb.coords));
                }
                cartan[a][b] = FieldMatrix::from_rows(self.field.clone(), rows).rank();
            }
        }
        Ok(cartan)
    }

    /// Debug serialization: field, dimension, structure constants.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Repr {
            field: crate::linff::FieldDesc,
            dim: usize,
            identity: Vec<u16>,
            structure_constants: Vec<Vec<Vec<u16>>>,
        }
        let sc = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| self.basis_product(i, j).iter().map(|e| e.0).collect())
                    .collect()
            })
            .collect();
        serde_json::to_value(Repr {
            field: self.field.desc(),
            dim: self.dim,
            identity: self.identity.iter().map(|e| e.0).collect(),
            structure_constants: sc,
        })
        .expect("serialization cannot fail")
    }
}

/// Group algebra of a small matrix algebra, for tests: full m x m matrix
/// algebra over F with the elementary-matrix basis (row-major).
pub fn matrix_algebra(field: Arc<Field>, m: usize) -> Algebra {
    let d = m * m;
    let mut sc = vec![ZERO; d * d * d];
    for (a, b, c, e) in (0..m).flat_map(|a| {
        (0..m).flat_map(move |b| (0..m).flat_map(move |c| (0..m).map(move |e| (a, b, c, e))))
    }) {
        // E_ab * E_ce = delta(b,c) E_ae
        if b == c {
            let i = a * m + b;
            let j = c * m + e;
            let t = a * m + e;
            sc[(i * d + j) * d + t] = ONE;
        }
    }
    let mut id = vec![ZERO; d];
    for a in 0..m {
        id[a * m + a] = ONE;
    }
    Algebra::new(field, d, sc, id)
}

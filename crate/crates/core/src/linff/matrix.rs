//! Dense matrices over GF(p^k) with exact, deterministic elimination.

use super::field::{Fel, Field, ONE, ZERO};
use crate::error::{PfsError, PfsResult};
use std::sync::Arc;

#[derive(Clone)]
pub struct FieldMatrix {
    field: Arc<Field>,
    rows: usize,
    cols: usize,
    data: Vec<Fel>,
}

impl std::fmt::Debug for FieldMatrix {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(fm, "FieldMatrix {}x{} over GF({}^{})", self.rows, self.cols, self.field.p(), self.field.k())?;
        for r in 0..self.rows {
            let row: Vec<u16> = self.row(r).iter().map(|e| e.0).collect();
            writeln!(fm, "  {row:?}")?;
        }
        Ok(())
    }
}

impl PartialEq for FieldMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}
impl Eq for FieldMatrix {}

impl FieldMatrix {
    pub fn zeros(field: Arc<Field>, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            field,
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(field: Arc<Field>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, ONE);
        }
        m
    }

    pub fn from_rows(field: Arc<Field>, rows: Vec<Vec<Fel>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        FieldMatrix {
            field,
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_flat(field: Arc<Field>, rows: usize, cols: usize, data: Vec<Fel>) -> Self {
        assert_eq!(data.len(), rows * cols);
        FieldMatrix { field, rows, cols, data }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fel {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fel) {
        self.data[r * self.cols + c] = v;
    }
    #[inline]
    pub fn row(&self, r: usize) -> &[Fel] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&e| e == ZERO)
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut t = FieldMatrix::zeros(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn matmul(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let f = &self.field;
        let mut out = FieldMatrix::zeros(self.field.clone(), self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == ZERO {
                    continue;
                }
                let src = other.row(k);
                let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d = f.add(*d, f.mul(a, s));
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Fel]) -> Vec<Fel> {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        let mut out = vec![ZERO; self.rows];
        for (r, o) in out.iter_mut().enumerate() {
            let mut acc = ZERO;
            for (c, &x) in v.iter().enumerate() {
                if x != ZERO {
                    acc = f.add(acc, f.mul(self.get(r, c), x));
                }
            }
            *o = acc;
        }
        out
    }

    pub fn add_mat(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        FieldMatrix::from_flat(self.field.clone(), self.rows, self.cols, data)
    }

    pub fn scale(&self, c: Fel) -> FieldMatrix {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        FieldMatrix::from_flat(self.field.clone(), self.rows, self.cols, data)
    }

    pub fn vstack(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FieldMatrix::from_flat(self.field.clone(), self.rows + other.rows, self.cols, data)
    }

    pub fn trace(&self) -> Fel {
        assert_eq!(self.rows, self.cols);
        let f = &self.field;
        let mut t = ZERO;
        for i in 0..self.rows {
            t = f.add(t, self.get(i, i));
        }
        t
    }

    /// Reduced row-echelon form. Returns (rref, rank, pivot columns).
    /// Pivoting is deterministic: first row with a nonzero entry in the
    /// leftmost unfinished column.
    pub fn rref(&self) -> (FieldMatrix, usize, Vec<usize>) {
        let mut m = self.clone();
        let rank = m.rref_in_place();
        let mut pivots = Vec::with_capacity(rank);
        for r in 0..rank {
            let c = m.row(r).iter().position(|&e| e != ZERO).unwrap();
            pivots.push(c);
        }
        m.data.truncate(rank * m.cols);
        m.rows = rank;
        // keep the zero-row-free rref but report the original shape via rank
        (m, rank, pivots)
    }

    fn rref_in_place(&mut self) -> usize {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut lead = 0usize;
        let mut r = 0usize;
        while r < rows && lead < cols {
            // find pivot
            let mut pr = None;
            for i in r..rows {
                if self.get(i, lead) != ZERO {
                    pr = Some(i);
                    break;
                }
            }
            let Some(pr) = pr else {
                lead += 1;
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv(self.get(r, lead));
            if inv != ONE {
                for c in lead..cols {
                    let v = self.get(r, c);
                    self.set(r, c, f.mul(v, inv));
                }
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, lead);
                if factor == ZERO {
                    continue;
                }
                let (head, tail) = self.data.split_at_mut(std::cmp::max(i, r) * cols);
                let (src, dst) = if i > r {
                    (&head[r * cols..r * cols + cols], &mut tail[..cols])
                } else {
                    (&tail[..cols], &mut head[i * cols..i * cols + cols])
                };
                for (d, &s) in dst.iter_mut().zip(src.iter()).skip(lead) {
                    *d = f.sub(*d, f.mul(factor, s));
                }
            }
            r += 1;
            lead += 1;
        }
        r
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let c = self.cols;
        for j in 0..c {
            self.data.swap(a * c + j, b * c + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place()
    }

    /// Basis of the right nullspace {x : Mx = 0}, rows of the result, in rref.
    pub fn nullspace(&self) -> FieldMatrix {
        let f = &self.field;
        let (r, rank, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![ZERO; self.cols];
            v[fc] = ONE;
            for (i, &pc) in pivots.iter().enumerate().take(rank) {
                v[pc] = f.neg(r.get(i, fc));
            }
            rows.push(v);
        }
        let m = FieldMatrix::from_rows(self.field.clone(), rows);
        if m.rows == 0 {
            return FieldMatrix::zeros(self.field.clone(), 0, self.cols);
        }
        let (nm, _, _) = m.rref();
        nm
    }

    /// Solve M x = b. `Ok(None)` means the system is inconsistent;
    /// dimension mismatches are reported as errors.
    pub fn solve(&self, b: &[Fel]) -> PfsResult<Option<Vec<Fel>>> {
        if b.len() != self.rows {
            return Err(PfsError::BadInput(format!(
                "solve: rhs has length {} but matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let f = &self.field;
        // eliminate on the augmented matrix
        let mut aug = FieldMatrix::zeros(self.field.clone(), self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b[r]);
        }
        let (ar, rank, pivots) = aug.rref();
        let mut x = vec![ZERO; self.cols];
        for i in 0..rank {
            let pc = pivots[i];
            if pc == self.cols {
                return Ok(None); // row [0 ... 0 | 1]
            }
            x[pc] = ar.get(i, self.cols);
        }
        // verify (guards against misuse with free variables set to zero)
        let check = self.apply(&x);
        if check != b {
            return Ok(None);
        }
        let _ = f;
        Ok(Some(x))
    }

    /// Coordinates of `v` with respect to this matrix viewed as an rref basis
    /// (rows). Returns `None` when `v` is outside the row space.
    pub fn coords_in_rref_basis(&self, v: &[Fel], pivots: &[usize]) -> Option<Vec<Fel>> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        let coords: Vec<Fel> = pivots.iter().map(|&c| v[c]).collect();
        // verify v = coords . rows
        let mut rec = vec![ZERO; self.cols];
        for (i, &ci) in coords.iter().enumerate() {
            if ci == ZERO {
                continue;
            }
            for (j, &rj) in self.row(i).iter().enumerate() {
                rec[j] = f.add(rec[j], f.mul(ci, rj));
            }
        }
        if rec == v {
            Some(coords)
        } else {
            None
        }
    }

    /// Intersection of row spaces, as an rref basis.
    pub fn intersect_rowspace(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.cols, other.cols);
        let n = self.cols;
        let (a, b) = (self.rows, other.rows);
        if a == 0 || b == 0 {
            return FieldMatrix::zeros(self.field.clone(), 0, n);
        }
        // columns: [U^T | -V^T]; nullspace vectors (u, v) give u^T U in the
        // intersection
        let f = &self.field;
        let mut m = FieldMatrix::zeros(self.field.clone(), n, a + b);
        for i in 0..a {
            for j in 0..n {
                m.set(j, i, self.get(i, j));
            }
        }
        for i in 0..b {
            for j in 0..n {
                m.set(j, a + i, f.neg(other.get(i, j)));
            }
        }
        let ns = m.nullspace();
        let mut rows = Vec::new();
        for r in 0..ns.rows() {
            let u = &ns.row(r)[..a];
            let mut v = vec![ZERO; n];
            for (i, &ui) in u.iter().enumerate() {
                if ui == ZERO {
                    continue;
                }
                for (j, &xj) in self.row(i).iter().enumerate() {
                    v[j] = f.add(v[j], f.mul(ui, xj));
                }
            }
            if v.iter().any(|&e| e != ZERO) {
                rows.push(v);
            }
        }
        if rows.is_empty() {
            return FieldMatrix::zeros(self.field.clone(), 0, n);
        }
        let (m, _, _) = FieldMatrix::from_rows(self.field.clone(), rows).rref();
        m
    }

    /// Inverse of a square matrix; `None` when singular.
    pub fn inverse(&self) -> Option<FieldMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = FieldMatrix::zeros(self.field.clone(), n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, ONE);
        }
        let rank = aug.rref_in_place();
        if rank < n || (0..n).any(|i| aug.get(i, i) != ONE) {
            return None;
        }
        let mut inv = FieldMatrix::zeros(self.field.clone(), n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, aug.get(r, n + c));
            }
        }
        Some(inv)
    }

    /// Characteristic polynomial det(lambda*I - M), coefficients low-to-high,
    /// monic of degree n. Computed exactly via Hessenberg reduction.
    pub fn charpoly(&self) -> Vec<Fel> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let f = self.field.clone();
        let mut h = self.clone();
        // similarity-reduce to upper Hessenberg form
        for col in 0..n.saturating_sub(2) {
            let mut piv = None;
            for r in col + 1..n {
                if h.get(r, col) != ZERO {
                    piv = Some(r);
                    break;
                }
            }
            let Some(piv) = piv else { continue };
            if piv != col + 1 {
                h.swap_rows(piv, col + 1);
                // compensating column swap keeps the transform a similarity
                for r in 0..n {
                    let (x, y) = (h.get(r, piv), h.get(r, col + 1));
                    h.set(r, piv, y);
                    h.set(r, col + 1, x);
                }
            }
            let d = f.inv(h.get(col + 1, col));
            for r in col + 2..n {
                let factor = f.mul(h.get(r, col), d);
                if factor == ZERO {
                    continue;
                }
                // row r -= factor * row (col+1)
                for c in 0..n {
                    let v = f.sub(h.get(r, c), f.mul(factor, h.get(col + 1, c)));
                    h.set(r, c, v);
                }
                // col (col+1) += factor * col r
                for rr in 0..n {
                    let v = f.add(h.get(rr, col + 1), f.mul(factor, h.get(rr, r)));
                    h.set(rr, col + 1, v);
                }
            }
        }
        // char polys of leading principal minors of the Hessenberg matrix
        let mut polys: Vec<Vec<Fel>> = Vec::with_capacity(n + 1);
        polys.push(vec![ONE]);
        for k in 1..=n {
            // (lambda - H[k-1][k-1]) * p_{k-1}
            let prev = &polys[k - 1];
            let mut pk = vec![ZERO; k + 1];
            for (i, &c) in prev.iter().enumerate() {
                pk[i + 1] = f.add(pk[i + 1], c);
                pk[i] = f.sub(pk[i], f.mul(h.get(k - 1, k - 1), c));
            }
            let mut subprod = ONE;
            for i in 1..k {
                // H[k-1-i][k-1] * prod of subdiagonal entries * p_{k-1-i}
                subprod = f.mul(subprod, h.get(k - i, k - i - 1));
                if subprod == ZERO {
                    break;
                }
                let coeff = f.mul(h.get(k - 1 - i, k - 1), subprod);
                if coeff == ZERO {
                    continue;
                }
                for (j, &c) in polys[k - 1 - i].iter().enumerate() {
                    pk[j] = f.sub(pk[j], f.mul(coeff, c));
                }
            }
            polys.push(pk);
        }
        polys.pop().unwrap()
    }
}

/// Intersection of a family of row spaces.
pub fn intersect_subspaces(bases: &[FieldMatrix]) -> FieldMatrix {
    assert!(!bases.is_empty());
    let mut acc = bases[0].rref().0;
    for b in &bases[1..] {
        acc = acc.intersect_rowspace(b);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linff::field::make_field;
    use proptest::prelude::*;

    fn f(p: u64, k: u32) -> Arc<Field> {
        Arc::new(make_field(p, k).unwrap())
    }

    #[test]
    fn rref_identity_and_zero() {
        let gf2 = f(2, 1);
        let id = FieldMatrix::identity(gf2.clone(), 3);
        let (r, rank, piv) = id.rref();
        assert_eq!(rank, 3);
        assert_eq!(piv, vec![0, 1, 2]);
        assert_eq!(r, id);

        let z = FieldMatrix::zeros(gf2, 2, 5);
        let (_, rank, piv) = z.rref();
        assert_eq!(rank, 0);
        assert!(piv.is_empty());
    }

    #[test]
    fn rref_equal_rows_over_gf4() {
        let gf4 = f(2, 2);
        let x = gf4.x();
        let m = FieldMatrix::from_rows(gf4, vec![vec![x, x], vec![x, x]]);
        let (_, rank, _) = m.rref();
        assert_eq!(rank, 1);
    }

    #[test]
    fn nullspace_dims() {
        let gf3 = f(3, 1);
        let id = FieldMatrix::identity(gf3.clone(), 4);
        assert_eq!(id.nullspace().rows(), 0);
        let z = FieldMatrix::zeros(gf3, 4, 4);
        assert_eq!(z.nullspace().rows(), 4);
    }

    #[test]
    fn solve_consistency() {
        let gf2 = f(2, 1);
        // x + y = 1, x + y = 0 is inconsistent
        let m = FieldMatrix::from_rows(gf2.clone(), vec![vec![ONE, ONE], vec![ONE, ONE]]);
        assert_eq!(m.solve(&[ONE, ZERO]).unwrap(), None);
        assert!(m.solve(&[ONE]).is_err());
        let sol = m.solve(&[ONE, ONE]).unwrap().unwrap();
        assert_eq!(m.apply(&sol), vec![ONE, ONE]);
    }

    #[test]
    fn intersect_coordinate_subspaces() {
        let gf2 = f(2, 1);
        let e = |i: usize| {
            let mut v = vec![ZERO; 3];
            v[i] = ONE;
            v
        };
        let u = FieldMatrix::from_rows(gf2.clone(), vec![e(0), e(1)]);
        let v = FieldMatrix::from_rows(gf2.clone(), vec![e(1), e(2)]);
        let w = u.intersect_rowspace(&v);
        assert_eq!(w.rows(), 1);
        assert_eq!(w.row(0), &e(1)[..]);
    }

    #[test]
    fn intersect_family_of_subspaces() {
        let gf2 = f(2, 1);
        let e = |i: usize| {
            let mut v = vec![ZERO; 4];
            v[i] = ONE;
            v
        };
        let u = FieldMatrix::from_rows(gf2.clone(), vec![e(0), e(1), e(2)]);
        let v = FieldMatrix::from_rows(gf2.clone(), vec![e(1), e(2), e(3)]);
        let w = FieldMatrix::from_rows(gf2.clone(), vec![e(2), e(3)]);
        let inter = intersect_subspaces(&[u, v, w]);
        assert_eq!(inter.rows(), 1);
        assert_eq!(inter.row(0), &e(2)[..]);
    }

    #[test]
    fn charpoly_known_cases() {
        let gf2 = f(2, 1);
        let id = FieldMatrix::identity(gf2.clone(), 3);
        // (x-1)^3 = x^3 + x^2 + x + 1 over GF(2)
        assert_eq!(id.charpoly(), vec![ONE, ONE, ONE, ONE]);
        let gf3 = f(3, 1);
        let m = FieldMatrix::from_rows(
            gf3.clone(),
            vec![
                vec![Fel(0), Fel(1), Fel(0)],
                vec![Fel(0), Fel(0), Fel(1)],
                vec![Fel(2), Fel(0), Fel(0)],
            ],
        );
        // companion-like matrix of x^3 - 2
        assert_eq!(m.charpoly(), vec![Fel(1), Fel(0), Fel(0), Fel(1)]);
    }

    proptest! {
        #[test]
        fn rank_equals_transpose_rank(seed in 0u64..500) {
            let gf4 = f(2, 2);
            let mut s = seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(1);
            let mut next = move || { s ^= s << 13; s ^= s >> 7; s ^= s << 17; s };
            let rows = 1 + (next() % 6) as usize;
            let cols = 1 + (next() % 6) as usize;
            let data: Vec<Fel> = (0..rows*cols).map(|_| Fel((next() % 4) as u16)).collect();
            let m = FieldMatrix::from_flat(gf4, rows, cols, data);
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rref_is_idempotent(seed in 0u64..500) {
            let gf3 = f(3, 1);
            let mut s = seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(7);
            let mut next = move || { s ^= s << 13; s ^= s >> 7; s ^= s << 17; s };
            let rows = 1 + (next() % 5) as usize;
            let cols = 1 + (next() % 5) as usize;
            let data: Vec<Fel> = (0..rows*cols).map(|_| Fel((next() % 3) as u16)).collect();
            let m = FieldMatrix::from_flat(gf3, rows, cols, data);
            let (r1, _, _) = m.rref();
            let (r2, _, _) = r1.rref();
            prop_assert_eq!(r1, r2);
        }

        #[test]
        fn nullity_plus_rank_is_cols(seed in 0u64..300) {
            let gf2 = f(2, 1);
            let mut s = seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(3);
            let mut next = move || { s ^= s << 13; s ^= s >> 7; s ^= s << 17; s };
            let rows = 1 + (next() % 6) as usize;
            let cols = 1 + (next() % 6) as usize;
            let data: Vec<Fel> = (0..rows*cols).map(|_| Fel((next() % 2) as u16)).collect();
            let m = FieldMatrix::from_flat(gf2, rows, cols, data);
            prop_assert_eq!(m.rank() + m.nullspace().rows(), cols);
        }

        #[test]
        fn intersection_dimension_formula(seed in 0u64..300) {
            let gf2 = f(2, 1);
            let mut s = seed.wrapping_mul(0x2545F4914F6CDD1D).wrapping_add(11);
            let mut next = move || { s ^= s << 13; s ^= s >> 7; s ^= s << 17; s };
            let n = 5usize;
            let mk = |next: &mut dyn FnMut() -> u64, rows: usize| {
                let data: Vec<Fel> = (0..rows*n).map(|_| Fel((next() % 2) as u16)).collect();
                FieldMatrix::from_flat(gf2.clone(), rows, n, data).rref().0
            };
            let u = mk(&mut next, 3);
            let v = mk(&mut next, 3);
            let inter = u.intersect_rowspace(&v);
            let sum = u.vstack(&v);
            prop_assert_eq!(inter.rows() + sum.rank(), u.rows() + v.rows());
        }
    }
}

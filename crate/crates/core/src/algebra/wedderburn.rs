//! Wedderburn decomposition of the semisimple quotient over a splitting
//! field.
//!
//! The center of A/rad is decomposed by random-element minimal-polynomial
//! splitting (explicit seed, Lagrange projections onto the eigenvalues);
//! the resulting set of central primitive idempotents is canonical, and the
//! components are ordered by (dimension, lexicographic rref basis), so the
//! cached result is independent of the internal randomness.

use super::idempotents::{min_poly_rel, poly_eval};
use super::Algebra;
use crate::error::{PfsError, PfsResult};
use crate::linff::{Fel, FieldMatrix, ONE, ZERO};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Component {
    /// Central primitive idempotent, in A/rad coordinates.
    pub central_idem: Vec<Fel>,
    /// rref basis (rows) of the component ideal inside A/rad.
    pub basis: FieldMatrix,
    /// Matrix size: the component is m x m matrices over F.
    pub msize: usize,
}

pub struct WedderburnData {
    pub components: Vec<Component>,
}

const SPLIT_SEED: u64 = 0x5EED_CAFE;
const MAX_DRAWS: usize = 512;

pub fn compute(a: &Algebra) -> PfsResult<WedderburnData> {
    let ss = a.semisimple_data();
    let quo = &ss.quotient;
    let f = quo.field().clone();
    let zc = quo.center();
    // split check: the q-power map is F-linear on a commutative semisimple
    // algebra, so checking basis vectors suffices
    let q = f.order() as u64;
    for r in 0..zc.rows() {
        let z = zc.row(r).to_vec();
        if quo.element_pow(&z, q) != z {
            return Err(PfsError::SplitField(format!(
                "center of the semisimple quotient contains an element outside GF({}^{})",
                f.p(),
                f.k()
            )));
        }
    }
    let idems = split_center(quo, &zc)?;
    let mut components = Vec::with_capacity(idems.len());
    for e in idems {
        // component ideal: span of b_t * e
        let mut rows = Vec::with_capacity(quo.dim());
        for t in 0..quo.dim() {
            let mut bt = quo.zero();
            bt[t] = ONE;
            rows.push(quo.mul(&bt, &e));
        }
        let (basis, rank, _) = FieldMatrix::from_rows(f.clone(), rows).rref();
        let m = (rank as f64).sqrt().round() as usize;
        if m * m != rank {
            return Err(PfsError::SplitField(format!(
                "simple component of dimension {rank} is not a full matrix algebra"
            )));
        }
        components.push(Component { central_idem: e, basis, msize: m });
    }
    components.sort_by(|x, y| {
        let kx: (usize, Vec<u16>) = (
            x.basis.rows(),
            (0..x.basis.rows()).flat_map(|r| x.basis.row(r).iter().map(|e| e.0)).collect(),
        );
        let ky: (usize, Vec<u16>) = (
            y.basis.rows(),
            (0..y.basis.rows()).flat_map(|r| y.basis.row(r).iter().map(|e| e.0)).collect(),
        );
        kx.cmp(&ky)
    });
    Ok(WedderburnData { components })
}

/// Primitive idempotents of the (commutative, semisimple, split) center.
fn split_center(quo: &Algebra, zbasis: &FieldMatrix) -> PfsResult<Vec<Vec<Fel>>> {
    let f = quo.field().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    // stack entries: (idempotent e, basis of eZ)
    let mut done: Vec<Vec<Fel>> = Vec::new();
    let mut work: Vec<(Vec<Fel>, FieldMatrix)> = vec![(quo.identity().to_vec(), zbasis.clone())];
    let mut draws = 0usize;
    while let Some((e, zb)) = work.pop() {
        if zb.rows() == 1 {
            done.push(e);
            continue;
        }
        // random element of eZ, try to split by its eigenvalues
        let mut split_found = false;
        while !split_found {
            draws += 1;
            if draws > MAX_DRAWS {
                return Err(PfsError::Inconsistency(
                    "center splitting failed to separate components".into(),
                ));
            }
            let mut z = quo.zero();
            for r in 0..zb.rows() {
                let c = Fel(rng.gen_range(0..f.order() as u16));
                if c != ZERO {
                    z = quo.add(&z, &quo.scale(c, zb.row(r)));
                }
            }
            let mp = min_poly_rel(quo, &z, &e);
            let deg = mp.len() - 1;
            if deg < 2 {
                continue;
            }
            let roots: Vec<Fel> = f.elements().filter(|&l| poly_eval(&f, &mp, l) == ZERO).collect();
            if roots.len() != deg {
                // repeated or missing roots: semisimplicity + split check make
                // this a bad draw rather than an error
                continue;
            }
            for &lam in &roots {
                // Lagrange projector onto the lam-eigenspace
                let mut proj = e.clone();
                for &mu in &roots {
                    if mu == lam {
                        continue;
                    }
                    let factor = quo.sub(&z, &quo.scale(mu, &e));
                    proj = quo.mul(&proj, &quo.scale(f.inv(f.sub(lam, mu)), &factor));
                }
                debug_assert_eq!(quo.mul(&proj, &proj), proj);
                let mut rows = Vec::with_capacity(zb.rows());
                for r in 0..zb.rows() {
                    rows.push(quo.mul(zb.row(r), &proj));
                }
                let (pb, rank, _) = FieldMatrix::from_rows(f.clone(), rows).rref();
                debug_assert!(rank >= 1);
                work.push((proj, pb));
            }
            split_found = true;
        }
    }
    Ok(done)
}

//! Primitive idempotent decompositions, lifting, and points.

use super::Algebra;
use crate::error::{PfsError, PfsResult};
use crate::linff::{Fel, FieldMatrix, ONE, ZERO};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// An idempotent element, stored by coordinates in its owning algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Idempotent {
    pub coords: Vec<Fel>,
}

/// A point: the conjugacy class of a primitive idempotent, identified by the
/// canonical label of the Wedderburn component its members project into.
#[derive(Clone, Debug)]
pub struct Point {
    pub label: usize,
    pub rep: Idempotent,
}

/// Lift an idempotent of A/rad to A by the Newton iteration e <- 3e^2 - 2e^3
/// (which degenerates to squaring in characteristic 2). The error e^2 - e
/// deepens in the radical filtration each step.
pub fn lift_idempotent(a: &Algebra, ebar: &[Fel]) -> PfsResult<Idempotent> {
    let ss = a.semisimple_data();
    debug_assert_eq!(ss.quotient.mul(ebar, ebar), ebar, "input is not idempotent");
    let x = ss.lift_linear(ebar);
    let e = newton_idempotent(a, x)?;
    debug_assert_eq!(ss.project(&e), ebar);
    Ok(Idempotent { coords: e })
}

fn newton_idempotent(a: &Algebra, mut e: Vec<Fel>) -> PfsResult<Vec<Fel>> {
    let f = a.field().clone();
    let three = f.from_u64(3);
    let two = f.from_u64(2);
    let max_iter = (usize::BITS - a.dim().leading_zeros()) as usize + 2;
    for _ in 0..max_iter {
        let e2 = a.mul(&e, &e);
        if e2 == e {
            return Ok(e);
        }
        let e3 = a.mul(&e2, &e);
        e = a.sub(&a.scale(three, &e2), &a.scale(two, &e3));
    }
    Err(PfsError::Inconsistency(
        "idempotent lifting did not converge (radical is wrong?)".into(),
    ))
}

/// Decompose 1 into primitive, mutually orthogonal idempotents. The multiset
/// of point labels is independent of the seed; only the representatives vary.
pub fn decompose_identity(a: &Algebra, seed: u64) -> PfsResult<Vec<Idempotent>> {
    let wd = a.wedderburn()?;
    let quo = &a.semisimple_data().quotient;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // primitives of the semisimple quotient, component by component
    let mut prims_bar: Vec<Vec<Fel>> = Vec::new();
    for comp in &wd.components {
        let mut out = Vec::with_capacity(comp.msize);
        split_into_primitives(quo, comp.central_idem.clone(), &mut rng, &mut out)?;
        if out.len() != comp.msize {
            return Err(PfsError::Inconsistency(format!(
                "component of size {} split into {} primitives",
                comp.msize,
                out.len()
            )));
        }
        prims_bar.extend(out);
    }
    lift_family(a, &prims_bar)
}

/// Recursively split an idempotent of the (split, semisimple) quotient into
/// primitives of the corner it generates.
fn split_into_primitives(
    quo: &Algebra,
    e: Vec<Fel>,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<Vec<Fel>>,
) -> PfsResult<()> {
    let f = quo.field().clone();
    let corner = corner_basis(quo, &e);
    if corner.rows() == 1 {
        out.push(e);
        return Ok(());
    }
    for _draw in 0..512 {
        let mut z = quo.zero();
        for r in 0..corner.rows() {
            let c = Fel(rng.gen_range(0..f.order() as u16));
            if c != ZERO {
                z = quo.add(&z, &quo.scale(c, corner.row(r)));
            }
        }
        let mp = min_poly_rel(quo, &z, &e);
        let deg = mp.len() - 1;
        if deg < 2 {
            continue;
        }
        let roots: Vec<Fel> = f
            .elements()
            .filter(|&l| poly_eval(&f, &mp, l) == ZERO)
            .collect();
        if roots.len() != deg {
            continue; // not split-squarefree: bad draw
        }
        for &lam in &roots {
            let mut proj = e.clone();
            for &mu in &roots {
                if mu == lam {
                    continue;
                }
                let factor = quo.sub(&z, &quo.scale(mu, &e));
                proj = quo.mul(&proj, &quo.scale(f.inv(f.sub(lam, mu)), &factor));
            }
            split_into_primitives(quo, proj, rng, out)?;
        }
        return Ok(());
    }
    Err(PfsError::Inconsistency(
        "failed to split a corner of the semisimple quotient".into(),
    ))
}

fn corner_basis(a: &Algebra, e: &[Fel]) -> FieldMatrix {
    let mut rows = Vec::with_capacity(a.dim());
    for t in 0..a.dim() {
        let mut bt = a.zero();
        bt[t] = ONE;
        rows.push(a.mul(&a.mul(e, &bt), e));
    }
    FieldMatrix::from_rows(a.field().clone(), rows).rref().0
}

/// Lift an orthogonal family of quotient idempotents summing to 1bar into an
/// orthogonal family in A summing exactly to 1: each lift happens inside the
/// corner of the unlifted remainder, and the last member is the remainder
/// itself.
fn lift_family(a: &Algebra, prims_bar: &[Vec<Fel>]) -> PfsResult<Vec<Idempotent>> {
    let ss = a.semisimple_data();
    let n = prims_bar.len();
    let mut out: Vec<Idempotent> = Vec::with_capacity(n);
    let mut rem = a.identity().to_vec();
    for (t, ebar) in prims_bar.iter().enumerate() {
        let e = if t + 1 == n {
            rem.clone()
        } else {
            let x = ss.lift_linear(ebar);
            let x = a.mul(&a.mul(&rem, &x), &rem);
            newton_idempotent(a, x)?
        };
        if ss.project(&e) != *ebar {
            return Err(PfsError::Inconsistency(
                "lifted idempotent does not reduce to its quotient image".into(),
            ));
        }
        rem = a.sub(&rem, &e);
        out.push(Idempotent { coords: e });
    }
    if !Algebra::is_zero_vec(&rem) {
        return Err(PfsError::Inconsistency("family lift does not sum to 1".into()));
    }
    Ok(out)
}

/// Classify a primitive idempotent: its label is the unique Wedderburn
/// component of A/rad where its image is nonzero. Primitivity is tested as
/// dim ebar (A/rad) ebar = 1 and non-primitive input is rejected.
pub fn point_of(a: &Algebra, e: &Idempotent) -> PfsResult<Point> {
    let ss = a.semisimple_data();
    let wd = a.wedderburn()?;
    let ebar = ss.project(&e.coords);
    if Algebra::is_zero_vec(&ebar) {
        return Err(PfsError::BadInput("zero idempotent has no point".into()));
    }
    let quo = &ss.quotient;
    if corner_basis(quo, &ebar).rows() != 1 {
        return Err(PfsError::BadInput("idempotent is not primitive".into()));
    }
    let mut label = None;
    for (c, comp) in wd.components.iter().enumerate() {
        if !Algebra::is_zero_vec(&quo.mul(&ebar, &comp.central_idem)) {
            if label.is_some() {
                return Err(PfsError::Inconsistency(
                    "primitive idempotent meets two components".into(),
                ));
            }
            label = Some(c);
        }
    }
    let label = label.ok_or_else(|| {
        PfsError::Inconsistency("nonzero idempotent missing from every component".into())
    })?;
    Ok(Point { label, rep: e.clone() })
}

pub fn same_point(a: &Algebra, e: &Idempotent, f: &Idempotent) -> PfsResult<bool> {
    Ok(point_of(a, e)?.label == point_of(a, f)?.label)
}

pub(super) fn min_poly_rel(a: &Algebra, z: &[Fel], e: &[Fel]) -> Vec<Fel> {
    let f = a.field().clone();
    let mut powers: Vec<Vec<Fel>> = vec![e.to_vec()];
    loop {
        let next = a.mul(powers.last().unwrap(), z);
        let m = FieldMatrix::from_rows(f.clone(), powers.clone()).transpose();
        if let Ok(Some(c)) = m.solve(&next) {
            let mut coeffs: Vec<Fel> = c.iter().map(|&ci| f.neg(ci)).collect();
            coeffs.push(ONE);
            return coeffs;
        }
        powers.push(next);
        assert!(powers.len() <= a.dim() + 1, "minimal polynomial search ran away");
    }
}

pub(super) fn poly_eval(f: &crate::linff::Field, coeffs: &[Fel], x: Fel) -> Fel {
    let mut acc = ZERO;
    for &c in coeffs.iter().rev() {
        acc = f.add(f.mul(acc, x), c);
    }
    acc
}

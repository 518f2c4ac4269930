//! Direct-summand multiplicities through endomorphism algebras, and the
//! module-theoretic multiplicity oracle.

use super::brauer_cx::brauer_construction;
use super::meataxe::{end_algebra, hom_space, HomData};
use super::GModule;
use crate::algebra::{decompose_identity, point_of, Algebra};
use crate::blocks::{GroupAlgebra, PointedGroup, SourceData};
use crate::error::{PfsError, PfsResult};
use crate::linff::{Fel, FieldMatrix, ZERO};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// End(L) must be local (split residue field): the indecomposability
/// certificate for L.
fn assert_indecomposable(l: &GModule) -> PfsResult<(Algebra, HomData)> {
    let (alg, hom) = end_algebra(l)?;
    let wd = alg.wedderburn()?;
    if wd.components.len() != 1 || wd.components[0].msize != 1 {
        return Err(PfsError::BadInput(format!(
            "module {} is not indecomposable (End has {} components)",
            l.tag(),
            wd.components.len()
        )));
    }
    Ok((alg, hom))
}

/// Multiplicity of the indecomposable L as a direct summand of M.
///
/// The identity of End(M) is decomposed into primitive orthogonal
/// idempotents; idempotents in one point give isomorphic summands, so one
/// summand per point is tested against L. A found invertible intertwiner is
/// an exact certificate; absence is decided by composing the two Hom spaces
/// through the summand and testing against the radical of End(L), never by
/// sampling failure alone.
pub fn summand_multiplicity(l: &GModule, m: &GModule, seed: u64) -> PfsResult<usize> {
    let (end_l, hom_ll) = assert_indecomposable(l)?;
    let (end_m, hom_mm) = end_algebra(m)?;
    let idems = decompose_identity(&end_m, seed)?;
    let mut label_counts: Vec<(usize, usize, Vec<Fel>)> = Vec::new(); // (label, count, rep w)
    for e in &idems {
        let pt = point_of(&end_m, e)?;
        match label_counts.iter_mut().find(|(l0, _, _)| *l0 == pt.label) {
            Some((_, c, _)) => *c += 1,
            None => {
                // representative w-vector in M coordinates
                let f = m.field().clone();
                let mut w = vec![ZERO; m.dim()];
                for (t, &c) in e.coords.iter().enumerate() {
                    if c != ZERO {
                        for (x, &r) in w.iter_mut().zip(hom_mm.w_basis.row(t)) {
                            *x = f.add(*x, f.mul(c, r));
                        }
                    }
                }
                label_counts.push((pt.label, 1, w));
            }
        }
    }
    let mut matched: Option<(usize, usize)> = None;
    for (label, count, w) in &label_counts {
        let x_e = hom_mm.operator(w);
        if x_e.rank() != l.dim() {
            continue;
        }
        if summand_isomorphic(l, m, &x_e, &end_l, &hom_ll, seed)? {
            if matched.is_some() {
                return Err(PfsError::Inconsistency(
                    "two distinct End(M)-points gave summands isomorphic to L".into(),
                ));
            }
            matched = Some((*label, *count));
        }
    }
    Ok(matched.map(|(_, c)| c).unwrap_or(0))
}

/// Is the summand X_e(M) isomorphic to L? (X_e an idempotent endomorphism of
/// M with rank equal to dim L.)
fn summand_isomorphic(
    l: &GModule,
    m: &GModule,
    x_e: &FieldMatrix,
    end_l: &Algebra,
    hom_ll: &HomData,
    seed: u64,
) -> PfsResult<bool> {
    let hom_lm = hom_space(l, m)?;
    if hom_lm.dim() == 0 {
        return Ok(false);
    }
    let hom_ml = hom_space(m, l)?;
    if hom_ml.dim() == 0 {
        return Ok(false);
    }
    let f = l.field().clone();
    // fast path: random h in Hom(L, M); X_e h of full rank is an iso onto the
    // summand
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x17E27312);
    for _ in 0..8 {
        let mut w = vec![ZERO; m.dim()];
        for t in 0..hom_lm.dim() {
            let c = Fel(rng.gen_range(0..f.order() as u16));
            if c != ZERO {
                for (x, &r) in w.iter_mut().zip(hom_lm.w_basis.row(t)) {
                    *x = f.add(*x, f.mul(c, r));
                }
            }
        }
        let h = hom_lm.operator(&w);
        if x_e.matmul(&h).rank() == l.dim() {
            return Ok(true);
        }
    }
    // decisive: some composite L -> M -> (summand) -> L outside rad End(L)
    let rad = end_l.radical();
    let (rad_basis, _, rad_pivots) = rad.rref();
    for t in 0..hom_ml.dim() {
        let op_ml = hom_ml.operator(hom_ml.w_basis.row(t));
        for s in 0..hom_lm.dim() {
            // (h' . X_e . h)(v_L) = h'(X_e w_s)
            let u = op_ml.apply(&x_e.apply(hom_lm.w_basis.row(s)));
            let coords = hom_ll.coords_of(&u).ok_or_else(|| {
                PfsError::Inconsistency("composite endomorphism left End(L)".into())
            })?;
            let in_rad = if rad_basis.rows() == 0 {
                coords.iter().all(|&c| c == ZERO)
            } else {
                rad_basis.coords_in_rref_basis(&coords, &rad_pivots).is_some()
            };
            if !in_rad {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Exact isomorphism test between two (indecomposable, cyclic) modules of
/// equal dimension.
pub fn modules_isomorphic(l: &GModule, m: &GModule, seed: u64) -> PfsResult<bool> {
    if l.dim() != m.dim() {
        return Ok(false);
    }
    let (end_l, hom_ll) = assert_indecomposable(l)?;
    let identity = FieldMatrix::identity(m.field().clone(), m.dim());
    summand_isomorphic(l, m, &identity, &end_l, &hom_ll, seed)
}

/// The multiplicity oracle: m(Q_delta, P_gamma) computed as the multiplicity
/// of Dia(Q_delta) in the restriction of Dia(P_gamma) to G x Q (restriction
/// implements the transitive-bimodule tensor).
pub fn multiplicity_via_bimodules(
    fga: &GroupAlgebra,
    source: &SourceData,
    q_obj: &PointedGroup,
    p_obj: &PointedGroup,
    seed: u64,
) -> PfsResult<usize> {
    let q = &source.lattice[q_obj.lattice_index];
    let p = &source.lattice[p_obj.lattice_index];
    if !p.contains_subgroup(q) {
        return Ok(0);
    }
    let dia_q = GModule::dia(fga, q, &q_obj.rep, "Dia(Q_delta)")?;
    let res_p = GModule::dia(fga, q, &p_obj.rep, "Res Dia(P_gamma)")?;
    summand_multiplicity(&dia_q, &res_p, seed)
}

/// Locality through the Brauer construction: Dia(P_mu)(Delta(P)) != 0.
pub fn dia_is_local(fga: &GroupAlgebra, p: &crate::groups::Subgroup, rep: &[Fel]) -> PfsResult<bool> {
    let dia = GModule::dia(fga, p, rep, "Dia(P_mu)")?;
    Ok(!brauer_construction(&dia, p)?.is_zero())
}

/// Dia(^phi(P_gamma)) is isomorphic to Dia(P_gamma) with the right action
/// twisted through phi^{-1}.
pub fn lemma53_check(
    fga: &GroupAlgebra,
    source: &SourceData,
    p_obj: &PointedGroup,
    witness: crate::groups::Gel,
    seed: u64,
) -> PfsResult<bool> {
    let p = &source.lattice[p_obj.lattice_index];
    let g = fga.group().clone();
    let image = p.conjugate(witness);
    // ^phi(P_gamma): conjugated representative over the image subgroup
    let conj_rep = fga.conj_elem(witness, &p_obj.rep);
    let dia_image = GModule::dia(fga, &image, &conj_rep, "Dia(^phi P_gamma)")?;
    // Dia(P_gamma) twisted: right factor image, acting through phi^{-1}
    let ginv = g.inv(witness);
    let right_map: Vec<crate::groups::Gel> =
        image.elements().iter().map(|&y| g.conj(ginv, y)).collect();
    let rows: Vec<Vec<Fel>> = (0..fga.dim() as crate::groups::Gel)
        .map(|x| fga.mul(&fga.basis_elem(x), &p_obj.rep))
        .collect();
    let twisted =
        GModule::with_right_map(fga, &image, right_map, rows, &p_obj.rep, "Dia twisted")?;
    modules_isomorphic(&dia_image, &twisted, seed)
}

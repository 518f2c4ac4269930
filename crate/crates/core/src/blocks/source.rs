//! Source idempotents, Brauer pairs, overshadowed pointed groups and
//! relative multiplicities.

use super::{blocks, Block, GroupAlgebra};
use crate::algebra::{decompose_identity, point_of, Algebra, Idempotent};
use crate::error::{PfsError, PfsResult};
use crate::groups::{centralizer, subgroups_of, Subgroup};
use crate::linff::{Fel, FieldMatrix, ZERO};

/// The fixed-point algebra (FGb)^Q, with its basis inside FG.
pub struct FixedPointAlgebra {
    pub subgroup: Subgroup,
    pub algebra: Algebra,
    /// rref basis rows, FG coordinates.
    pub basis: FieldMatrix,
    pivots: Vec<usize>,
}

impl FixedPointAlgebra {
    pub fn build(fga: &GroupAlgebra, block: &Block, q: &Subgroup) -> PfsResult<FixedPointAlgebra> {
        let sums = fga.orbit_sums(q);
        // multiply by b: projects (FG)^Q onto (FGb)^Q
        let rows: Vec<Vec<Fel>> = (0..sums.rows())
            .map(|r| fga.mul(&block.idempotent, sums.row(r)))
            .collect();
        let (basis, rank, pivots) =
            FieldMatrix::from_rows(fga.field().clone(), rows).rref();
        let d = rank;
        let mut sc = vec![ZERO; d * d * d];
        for i in 0..d {
            for j in 0..d {
                let prod = fga.mul(basis.row(i), basis.row(j));
                let coords = basis.coords_in_rref_basis(&prod, &pivots).ok_or_else(|| {
                    PfsError::Inconsistency("(FGb)^Q span not closed under products".into())
                })?;
                sc[(i * d + j) * d..(i * d + j + 1) * d].copy_from_slice(&coords);
            }
        }
        let id = basis
            .coords_in_rref_basis(&block.idempotent, &pivots)
            .ok_or_else(|| PfsError::Inconsistency("b not inside (FGb)^Q".into()))?;
        Ok(FixedPointAlgebra {
            subgroup: q.clone(),
            algebra: Algebra::new(fga.field().clone(), d, sc, id),
            basis,
            pivots,
        })
    }

    pub fn to_fg(&self, coords: &[Fel]) -> Vec<Fel> {
        let f = self.basis.field().clone();
        let mut out = vec![ZERO; self.basis.cols()];
        for (t, &c) in coords.iter().enumerate() {
            if c == ZERO {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(self.basis.row(t)) {
                *o = f.add(*o, f.mul(c, r));
            }
        }
        out
    }

    pub fn from_fg(&self, v: &[Fel]) -> Option<Vec<Fel>> {
        self.basis.coords_in_rref_basis(v, &self.pivots)
    }
}

/// One point of Q on FGb: canonical label, all members found in a
/// decomposition of b, and the locality flag.
pub struct LocalPointData {
    pub label: usize,
    pub is_local: bool,
    /// Members in FG coordinates.
    pub members: Vec<Vec<Fel>>,
}

/// Decompose b inside (FGb)^Q and classify the resulting points. Locality
/// (nonvanishing under br_Q) is checked on every member and must agree.
pub fn local_points(
    fga: &GroupAlgebra,
    fpa: &FixedPointAlgebra,
    seed: u64,
) -> PfsResult<Vec<LocalPointData>> {
    let idems = decompose_identity(&fpa.algebra, seed)?;
    let mut by_label: Vec<LocalPointData> = Vec::new();
    for e in &idems {
        let pt = point_of(&fpa.algebra, e)?;
        let fg = fpa.to_fg(&e.coords);
        let br = fga.brauer_map(&fg, &fpa.subgroup)?;
        let is_local = br.iter().any(|&c| c != ZERO);
        match by_label.iter_mut().find(|lp| lp.label == pt.label) {
            Some(lp) => {
                if lp.is_local != is_local {
                    return Err(PfsError::Inconsistency(
                        "locality differs between representatives of one point".into(),
                    ));
                }
                lp.members.push(fg);
            }
            None => by_label.push(LocalPointData { label: pt.label, is_local, members: vec![fg] }),
        }
    }
    by_label.sort_by_key(|lp| lp.label);
    Ok(by_label)
}

/// A Brauer pair (P, e): a block e of F C_G(P), stored in FG coordinates
/// (support inside the centralizer).
pub struct BrauerPair {
    pub subgroup: Subgroup,
    pub block_idem: Vec<Fel>,
}

/// Blocks e of F C_G(P) with br_P(b) e = e, in canonical block order.
pub fn brauer_pairs_over(
    fga: &GroupAlgebra,
    block: &Block,
    p: &Subgroup,
) -> PfsResult<Vec<BrauerPair>> {
    let br_b = fga.brauer_map(&block.idempotent, p)?;
    if br_b.iter().all(|&c| c == ZERO) {
        return Err(PfsError::BadInput(
            "br_P(b) = 0: the subgroup does not support Brauer pairs for this block".into(),
        ));
    }
    Ok(centralizer_blocks(fga, p)?
        .into_iter()
        .filter(|e| fga.mul(&br_b, e) == *e)
        .map(|e| BrauerPair { subgroup: p.clone(), block_idem: e })
        .collect())
}

/// All blocks of F C_G(P), embedded into FG coordinates, canonical order.
pub fn centralizer_blocks(fga: &GroupAlgebra, p: &Subgroup) -> PfsResult<Vec<Vec<Fel>>> {
    let c = centralizer(fga.group(), p);
    let (cgroup, to_parent) = c.as_group()?;
    let cga = GroupAlgebra::new(cgroup, fga.field().clone());
    let cblocks = blocks(&cga)?;
    Ok(cblocks
        .into_iter()
        .map(|b| {
            let mut v = fga.zero();
            for (local, &global) in to_parent.iter().enumerate() {
                v[global as usize] = b.idempotent[local];
            }
            v
        })
        .collect())
}

/// Everything the pointed fusion system needs from one block: the defect
/// group, its full subgroup lattice, the maximal Brauer pair, a source
/// idempotent and the compatible family {e_Q}. Fixed-point algebras are kept
/// (their radicals and Wedderburn data are the expensive, seed-independent
/// part).
pub struct SourceData {
    pub block: Block,
    pub defect: Subgroup,
    /// All subgroups of the defect group, sorted by (order, elements).
    pub lattice: Vec<Subgroup>,
    /// e_D, FG coordinates.
    pub max_pair_block: Vec<Fel>,
    /// Source idempotent i = 1_B, primitive in (FGb)^D.
    pub source_idem: Vec<Fel>,
    /// e_Q for each lattice member, FG coordinates.
    pub eq_family: Vec<Vec<Fel>>,
    /// Shared: the (FGb)^Q algebras carry the expensive seed-independent
    /// radical and Wedderburn caches.
    pub fixed_algebras: std::sync::Arc<Vec<FixedPointAlgebra>>,
    /// dim of the source algebra i FG i.
    pub source_algebra_dim: usize,
}

/// The seed-independent part of the source computation.
pub fn prepare_defect_lattice(
    fga: &GroupAlgebra,
    block: &Block,
) -> PfsResult<(Subgroup, Vec<Subgroup>, std::sync::Arc<Vec<FixedPointAlgebra>>)> {
    let defect = super::defect_group(fga, block)?;
    let lattice = subgroups_of(&defect)?;
    let fixed_algebras: Vec<FixedPointAlgebra> = lattice
        .iter()
        .map(|q| FixedPointAlgebra::build(fga, block, q))
        .collect::<PfsResult<_>>()?;
    Ok((defect, lattice, std::sync::Arc::new(fixed_algebras)))
}

pub fn source_data(fga: &GroupAlgebra, block: &Block, seed: u64) -> PfsResult<SourceData> {
    source_data_with_choice(fga, block, seed, 0)
}

/// `pair_choice` rotates among the eligible maximal-pair blocks (when the
/// centralizer of D has several); the default choice 0 is the canonically
/// least one.
pub fn source_data_with_choice(
    fga: &GroupAlgebra,
    block: &Block,
    seed: u64,
    pair_choice: usize,
) -> PfsResult<SourceData> {
    let (defect, lattice, algebras) = prepare_defect_lattice(fga, block)?;
    source_data_prepared(fga, block, seed, pair_choice, defect, lattice, algebras)
}

pub fn source_data_prepared(
    fga: &GroupAlgebra,
    block: &Block,
    seed: u64,
    pair_choice: usize,
    defect: Subgroup,
    lattice: Vec<Subgroup>,
    fixed_algebras: std::sync::Arc<Vec<FixedPointAlgebra>>,
) -> PfsResult<SourceData> {
    let pairs = brauer_pairs_over(fga, block, &defect)?;
    if pairs.is_empty() {
        return Err(PfsError::Inconsistency("no Brauer pair over the defect group".into()));
    }
    let e_d = pairs[pair_choice % pairs.len()].block_idem.clone();
    let d_index = lattice.len() - 1; // the full defect group sorts last

    // source idempotent: primitive in (FGb)^D, local, with e_D br_D(i) = br_D(i);
    // canonical choice: least (point label, coordinates)
    let fpa_d = &fixed_algebras[d_index];
    let idems = decompose_identity(&fpa_d.algebra, seed)?;
    let mut candidates: Vec<(usize, Vec<Fel>)> = Vec::new();
    for e in &idems {
        let fg = fpa_d.to_fg(&e.coords);
        let br = fga.brauer_map(&fg, &defect)?;
        if br.iter().all(|&c| c == ZERO) {
            continue;
        }
        if fga.mul(&e_d, &br) != br {
            continue;
        }
        let label = point_of(&fpa_d.algebra, e)?.label;
        candidates.push((label, fg));
    }
    if candidates.is_empty() {
        return Err(PfsError::Inconsistency(
            "no local primitive idempotent is compatible with the maximal Brauer pair".into(),
        ));
    }
    candidates.sort_by(|a, b| {
        (a.0, a.1.iter().map(|e| e.0).collect::<Vec<u16>>())
            .cmp(&(b.0, b.1.iter().map(|e| e.0).collect::<Vec<u16>>()))
    });
    let source_idem = candidates.swap_remove(0).1;

    // e_Q: the unique centralizer block not annihilating br_Q(i)
    let mut eq_family = Vec::with_capacity(lattice.len());
    for q in &lattice {
        let br_i = fga.brauer_map(&source_idem, q)?;
        if br_i.iter().all(|&c| c == ZERO) {
            return Err(PfsError::Inconsistency(
                "br_Q of the source idempotent vanishes for Q <= D".into(),
            ));
        }
        let matching: Vec<Vec<Fel>> = centralizer_blocks(fga, q)?
            .into_iter()
            .filter(|e| fga.mul(e, &br_i) == br_i)
            .collect();
        if matching.len() != 1 {
            return Err(PfsError::Inconsistency(format!(
                "{} centralizer blocks act as identity on br_Q(1_B); theory guarantees exactly one",
                matching.len()
            )));
        }
        eq_family.push(matching.into_iter().next().unwrap());
    }

    // dim i FG i
    let f = fga.field().clone();
    let rows: Vec<Vec<Fel>> = (0..fga.dim())
        .map(|t| {
            let mut bt = fga.zero();
            bt[t] = crate::linff::ONE;
            fga.mul(&fga.mul(&source_idem, &bt), &source_idem)
        })
        .collect();
    let source_algebra_dim = FieldMatrix::from_rows(f, rows).rank();

    Ok(SourceData {
        block: block.clone(),
        defect,
        lattice,
        max_pair_block: e_d,
        source_idem,
        eq_family,
        fixed_algebras,
        source_algebra_dim,
    })
}

/// Brauer-pair containment (Q, e) <= (P, f), computed as the transitive
/// closure of the normal-containment criterion: (S, e) is normally contained
/// in (T, f) iff S is normal in T, e is T-stable and f br_T(e) = f. Every
/// subgroup of a p-group is subnormal, so the normalizer chain from Q to P
/// realizes the closure; each step's block is unique and the walk descends
/// from (P, f).
pub fn brauer_pair_contained(
    fga: &GroupAlgebra,
    q: &Subgroup,
    e_q: &[Fel],
    p: &Subgroup,
    e_p: &[Fel],
) -> PfsResult<bool> {
    if !p.contains_subgroup(q) {
        return Ok(false);
    }
    if q.elements() == p.elements() {
        return Ok(e_q == e_p);
    }
    // normalizer chain upward from Q inside P
    let g = fga.group().clone();
    let mut chain = vec![q.clone()];
    loop {
        let cur = chain.last().unwrap();
        if cur.elements() == p.elements() {
            break;
        }
        let elems: Vec<crate::groups::Gel> = p
            .elements()
            .iter()
            .copied()
            .filter(|&x| {
                cur.elements().iter().all(|&s| cur.contains(g.conj(x, s)))
            })
            .collect();
        let next = Subgroup::from_elements(g.clone(), elems)?;
        if next.order() == cur.order() {
            return Err(PfsError::Inconsistency(
                "normalizer chain stalled inside a p-group".into(),
            ));
        }
        chain.push(next);
    }
    // walk down: the unique normally-contained block at each step
    let mut f_cur = e_p.to_vec();
    for t in (0..chain.len() - 1).rev() {
        let s = &chain[t];
        let bigger = &chain[t + 1];
        let candidates: Vec<Vec<Fel>> = centralizer_blocks(fga, s)?
            .into_iter()
            .filter(|e| fga.is_fixed_by(bigger, e))
            .filter(|e| {
                let br = fga.brauer_map(e, bigger).expect("stable block is fixed");
                fga.mul(&f_cur, &br) == f_cur
            })
            .collect();
        if candidates.len() != 1 {
            return Err(PfsError::Inconsistency(format!(
                "{} blocks normally contained at one chain step; theory guarantees exactly one",
                candidates.len()
            )));
        }
        f_cur = candidates.into_iter().next().unwrap();
    }
    Ok(f_cur == e_q)
}

/// A local pointed group Q_gamma overshadowed by the source idempotent.
#[derive(Clone)]
pub struct PointedGroup {
    /// Index into `SourceData::lattice`.
    pub lattice_index: usize,
    /// Point label inside (FGb)^Q.
    pub point_label: usize,
    /// Representative idempotent, FG coordinates.
    pub rep: Vec<Fel>,
}

/// All overshadowed local pointed groups: for each Q <= D, the local points
/// gamma of Q on FGb whose Brauer image lies in the e_Q block. Membership is
/// checked on every decomposition member of the point.
pub fn overshadowed_objects(
    fga: &GroupAlgebra,
    source: &SourceData,
    seed: u64,
) -> PfsResult<Vec<PointedGroup>> {
    let mut out = Vec::new();
    for (qi, _q) in source.lattice.iter().enumerate() {
        let fpa = &source.fixed_algebras[qi];
        let e_q = &source.eq_family[qi];
        for lp in local_points(fga, fpa, seed)? {
            if !lp.is_local {
                continue;
            }
            let mut verdict: Option<bool> = None;
            for member in &lp.members {
                let br = fga.brauer_map(member, &fpa.subgroup)?;
                let inside = fga.mul(e_q, &br) == br;
                match verdict {
                    None => verdict = Some(inside),
                    Some(v) if v != inside => {
                        return Err(PfsError::Inconsistency(
                            "overshadowing test differs between members of one point".into(),
                        ));
                    }
                    _ => {}
                }
            }
            if verdict == Some(true) {
                out.push(PointedGroup {
                    lattice_index: qi,
                    point_label: lp.label,
                    rep: lp.members[0].clone(),
                });
            }
        }
    }
    Ok(out)
}

/// Relative multiplicity m(Q_delta, P_gamma): the number of delta members in
/// a primitive decomposition of a gamma representative inside (FGb)^Q.
/// Zero unless Q <= P.
pub fn relative_multiplicity(
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
    let fpa_q = &source.fixed_algebras[q_obj.lattice_index];
    let i = &p_obj.rep;
    // decompose i inside the corner i (FGb)^Q i
    let decomposition: Vec<Vec<Fel>> = if *i == source.block.idempotent {
        // the corner is all of (FGb)^Q
        decompose_identity(&fpa_q.algebra, seed)?
            .into_iter()
            .map(|e| fpa_q.to_fg(&e.coords))
            .collect()
    } else {
        let rows: Vec<Vec<Fel>> = (0..fpa_q.algebra.dim())
            .map(|t| fga.mul(&fga.mul(i, fpa_q.basis.row(t)), i))
            .collect();
        let span = FieldMatrix::from_rows(fga.field().clone(), rows);
        let corner_coords: Vec<Vec<Fel>> = {
            let (cb, rank, cpiv) = span.rref();
            let dc = rank;
            let mut sc = vec![ZERO; dc * dc * dc];
            for a in 0..dc {
                for b in 0..dc {
                    let prod = fga.mul(cb.row(a), cb.row(b));
                    let coords = cb.coords_in_rref_basis(&prod, &cpiv).ok_or_else(|| {
                        PfsError::Inconsistency("corner span not closed".into())
                    })?;
                    sc[(a * dc + b) * dc..(a * dc + b + 1) * dc].copy_from_slice(&coords);
                }
            }
            let id = cb.coords_in_rref_basis(i, &cpiv).ok_or_else(|| {
                PfsError::Inconsistency("representative not inside its corner".into())
            })?;
            let corner = Algebra::new(fga.field().clone(), dc, sc, id);
            decompose_identity(&corner, seed)?
                .into_iter()
                .map(|e| {
                    let mut fg = fga.zero();
                    for (t, &c) in e.coords.iter().enumerate() {
                        if c != ZERO {
                            for (o, &r) in fg.iter_mut().zip(cb.row(t)) {
                                *o = fga.field().add(*o, fga.field().mul(c, r));
                            }
                        }
                    }
                    fg
                })
                .collect()
        };
        corner_coords
    };
    // classify each member in the ambient (FGb)^Q
    let mut count = 0usize;
    for member_fg in &decomposition {
        let coords = fpa_q.from_fg(member_fg).ok_or_else(|| {
            PfsError::Inconsistency("corner member escapes (FGb)^Q".into())
        })?;
        let pt = point_of(&fpa_q.algebra, &Idempotent { coords })?;
        if pt.label == q_obj.point_label {
            count += 1;
        }
    }
    Ok(count)
}

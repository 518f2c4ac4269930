//! The pointed-refinement axioms and the proved inequalities, checked
//! exhaustively on every built instance.

use super::build::PointedFusionSystem;
use crate::error::{PfsError, PfsResult};
use serde::Serialize;

/// Validate the four pointed-refinement conditions plus the chain
/// inequality. Hard error with a witness string on any violation.
pub fn validate_axioms(pfs: &PointedFusionSystem) -> PfsResult<()> {
    refinement_condition(pfs)?;
    multiposet_condition(pfs)?;
    bijection_composition(pfs)?;
    compatibility_condition(pfs)?;
    chain_inequality(pfs)?;
    Ok(())
}

/// m(Q_d, P_g) != 0 implies Q <= P, and on equal subgroups only the diagonal
/// survives.
fn refinement_condition(pfs: &PointedFusionSystem) -> PfsResult<()> {
    let n = pfs.objects.len();
    for q in 0..n {
        for p in 0..n {
            let m = pfs.mult[q][p];
            let (oq, op) = (&pfs.objects[q], &pfs.objects[p]);
            if q == p && m != 1 {
                return Err(PfsError::AxiomViolation(format!(
                    "refinement: m({id},{id}) = {m}, expected 1",
                    id = oq.id
                )));
            }
            if m == 0 {
                continue;
            }
            let sq = &pfs.fusion.lattice[oq.lattice_index];
            let sp = &pfs.fusion.lattice[op.lattice_index];
            if !sp.contains_subgroup(sq) {
                return Err(PfsError::AxiomViolation(format!(
                    "refinement: m({},{}) = {m} but subgroups are not nested",
                    oq.id, op.id
                )));
            }
            if oq.lattice_index == op.lattice_index && q != p {
                return Err(PfsError::AxiomViolation(format!(
                    "refinement: m({},{}) = {m} on equal subgroups with different points",
                    oq.id, op.id
                )));
            }
        }
    }
    Ok(())
}

/// The nonvanishing relation is a partial order.
fn multiposet_condition(pfs: &PointedFusionSystem) -> PfsResult<()> {
    let n = pfs.objects.len();
    let le = |a: usize, b: usize| pfs.mult[a][b] != 0;
    for a in 0..n {
        if !le(a, a) {
            return Err(PfsError::AxiomViolation(format!(
                "multiposet: {} not below itself",
                pfs.objects[a].id
            )));
        }
        for b in 0..n {
            if a != b && le(a, b) && le(b, a) {
                return Err(PfsError::AxiomViolation(format!(
                    "multiposet: antisymmetry fails on ({}, {})",
                    pfs.objects[a].id, pfs.objects[b].id
                )));
            }
            for c in 0..n {
                if le(a, b) && le(b, c) && !le(a, c) {
                    return Err(PfsError::AxiomViolation(format!(
                        "multiposet: transitivity fails on ({}, {}, {})",
                        pfs.objects[a].id, pfs.objects[b].id, pfs.objects[c].id
                    )));
                }
            }
        }
    }
    Ok(())
}

/// ^(psi phi) x = ^psi (^phi x) for all composable pairs and all points.
fn bijection_composition(pfs: &PointedFusionSystem) -> PfsResult<()> {
    let fs = &pfs.fusion;
    let n = fs.lattice.len();
    for q in 0..n {
        for p in 0..n {
            for (i1, m1) in fs.homs[q][p].iter().enumerate() {
                let a1 = pfs.find_action(q, p, i1);
                for s in 0..n {
                    for (i2, m2) in fs.homs[p][s].iter().enumerate() {
                        // composite map
                        let comp: Vec<_> = fs.lattice[q]
                            .elements()
                            .iter()
                            .map(|&x| m2.apply(&fs.lattice[p], m1.apply(&fs.lattice[q], x)))
                            .collect();
                        let ic = fs.find(q, s, &comp).ok_or_else(|| {
                            PfsError::AxiomViolation("composite morphism missing".into())
                        })?;
                        let ac = pfs.find_action(q, s, ic);
                        // psi restricted to the image of phi
                        let (rim, rimages) = fs.restrict(p, i2, s, m1.image_index);
                        let ir = fs.find(m1.image_index, rim, &rimages).ok_or_else(|| {
                            PfsError::AxiomViolation("restricted morphism missing".into())
                        })?;
                        let ar = pfs.find_action(m1.image_index, rim, ir);
                        for &(x, fx) in &a1.point_map {
                            let via_restriction = ar
                                .point_map
                                .iter()
                                .find(|&&(y, _)| y == fx)
                                .map(|&(_, z)| z)
                                .ok_or_else(|| {
                                    PfsError::AxiomViolation(
                                        "restricted action misses a point".into(),
                                    )
                                })?;
                            let direct = ac
                                .point_map
                                .iter()
                                .find(|&&(y, _)| y == x)
                                .map(|&(_, z)| z)
                                .unwrap();
                            if direct != via_restriction {
                                return Err(PfsError::AxiomViolation(format!(
                                    "bijection composition fails at point {x} of lattice {q}"
                                )));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// m(^phi(Q_d), ^phi(P_g)) = m(Q_d, P_g) for every morphism phi with domain
/// P and every Q <= P.
fn compatibility_condition(pfs: &PointedFusionSystem) -> PfsResult<()> {
    let fs = &pfs.fusion;
    let n = fs.lattice.len();
    for p in 0..n {
        for s in 0..n {
            for (idx, m) in fs.homs[p][s].iter().enumerate() {
                let act_p = pfs.find_action(p, s, idx);
                for q in 0..n {
                    if !fs.lattice[p].contains_subgroup(&fs.lattice[q]) {
                        continue;
                    }
                    let (qim, qimages) = fs.restrict(p, idx, s, q);
                    let qi = fs.find(q, qim, &qimages).ok_or_else(|| {
                        PfsError::AxiomViolation("restriction missing".into())
                    })?;
                    let act_q = pfs.find_action(q, qim, qi);
                    for oq in pfs.objects.iter().filter(|o| o.lattice_index == q) {
                        for op in pfs.objects.iter().filter(|o| o.lattice_index == p) {
                            let iq = pfs.object_index(q, oq.point_label).unwrap();
                            let ip = pfs.object_index(p, op.point_label).unwrap();
                            let fq = act_q
                                .point_map
                                .iter()
                                .find(|&&(x, _)| x == oq.point_label)
                                .map(|&(_, y)| y)
                                .unwrap();
                            let fp = act_p
                                .point_map
                                .iter()
                                .find(|&&(x, _)| x == op.point_label)
                                .map(|&(_, y)| y)
                                .unwrap();
                            let jq = pfs.object_index(qim, fq).unwrap();
                            let jp = pfs.object_index(m.image_index, fp).unwrap();
                            if pfs.mult[iq][ip] != pfs.mult[jq][jp] {
                                return Err(PfsError::AxiomViolation(format!(
                                    "compatibility: m({},{}) = {} but its image has {}",
                                    oq.id, op.id, pfs.mult[iq][ip], pfs.mult[jq][jp]
                                )));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// m(Q_d, P_g) >= sum over epsilon of m(Q_d, R_e) m(R_e, P_g) for all
/// Q <= R <= P.
fn chain_inequality(pfs: &PointedFusionSystem) -> PfsResult<()> {
    let n = pfs.objects.len();
    for q in 0..n {
        for p in 0..n {
            let sq = pfs.objects[q].lattice_index;
            let sp = pfs.objects[p].lattice_index;
            for r_lat in 0..pfs.fusion.lattice.len() {
                if !pfs.fusion.lattice[r_lat].contains_subgroup(&pfs.fusion.lattice[sq])
                    || !pfs.fusion.lattice[sp].contains_subgroup(&pfs.fusion.lattice[r_lat])
                {
                    continue;
                }
                let total: usize = (0..n)
                    .filter(|&r| pfs.objects[r].lattice_index == r_lat)
                    .map(|r| pfs.mult[q][r] * pfs.mult[r][p])
                    .sum();
                if pfs.mult[q][p] < total {
                    return Err(PfsError::AxiomViolation(format!(
                        "chain inequality fails: m({},{}) = {} < {} through lattice {}",
                        pfs.objects[q].id, pfs.objects[p].id, pfs.mult[q][p], total, r_lat
                    )));
                }
            }
        }
    }
    Ok(())
}

/// The four inequalities tied to the boundedness conjectures; failures are
/// reported, not thrown.
#[derive(Debug, Clone, Serialize)]
pub struct Prop44Report {
    pub c_max_cartan: usize,
    pub m_max_multiplicity: usize,
    pub ell: usize,
    pub dim_source_algebra: usize,
    pub defect_order: usize,
    pub checks: Vec<BoundCheck>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub lhs: usize,
    pub rhs: usize,
    pub ok: bool,
}

impl Prop44Report {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

pub fn prop44_check(pfs: &PointedFusionSystem) -> Prop44Report {
    let c = pfs.meta.cartan.iter().flatten().copied().max().unwrap_or(0);
    let m = pfs.max_multiplicity();
    let ell = pfs.meta.ell;
    let dim = pfs.meta.dim_source_algebra;
    let d = pfs.meta.defect_order;
    let checks = vec![
        BoundCheck { name: "c <= dim FB".into(), lhs: c, rhs: dim, ok: c <= dim },
        BoundCheck { name: "m <= dim FB".into(), lhs: m, rhs: dim, ok: m <= dim },
        BoundCheck {
            name: "dim FB <= c m^2 ell^2".into(),
            lhs: dim,
            rhs: c * m * m * ell * ell,
            ok: dim <= c * m * m * ell * ell,
        },
        BoundCheck {
            // ell <= |D|^2/4 + 1, in integers: 4 ell <= |D|^2 + 4
            name: "4 ell <= |D|^2 + 4".into(),
            lhs: 4 * ell,
            rhs: d * d + 4,
            ok: 4 * ell <= d * d + 4,
        },
    ];
    Prop44Report {
        c_max_cartan: c,
        m_max_multiplicity: m,
        ell,
        dim_source_algebra: dim,
        defect_order: d,
        checks,
    }
}

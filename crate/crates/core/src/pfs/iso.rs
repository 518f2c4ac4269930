//! Isomorphism testing between pointed fusion systems.

use super::build::PointedFusionSystem;
use crate::error::{PfsError, PfsResult};
use serde::{Deserialize, Serialize};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum IsoMode {
    /// Order- and multiplicity-preserving bijection of objects.
    Multiposet,
    /// Bijection of objects preserving pointed Hom-set cardinalities.
    Category,
    /// Family of per-subgroup point bijections over the same fusion system,
    /// preserving actions and multiplicities.
    FIdentical,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IsoWitness {
    pub object_map: Vec<(String, String)>,
}

/// Search for an isomorphism; `Ok(None)` means "proved non-isomorphic by
/// exhaustive search".
pub fn iso_test(
    a: &PointedFusionSystem,
    b: &PointedFusionSystem,
    mode: IsoMode,
) -> PfsResult<Option<IsoWitness>> {
    match mode {
        IsoMode::Multiposet => Ok(table_bijection(a, b, &a.mult, &b.mult)),
        IsoMode::Category => {
            let ha = hom_cardinalities(a);
            let hb = hom_cardinalities(b);
            Ok(table_bijection(a, b, &ha, &hb))
        }
        IsoMode::FIdentical => f_identical(a, b),
    }
}

/// hom[i][j] = number of fusion morphisms phi: Q -> P with ^phi(Q_i) <= P_j
/// in the multiposet order (the conjugation-category morphism count).
pub fn hom_cardinalities(pfs: &PointedFusionSystem) -> Vec<Vec<usize>> {
    let n = pfs.objects.len();
    let mut h = vec![vec![0usize; n]; n];
    for (i, oi) in pfs.objects.iter().enumerate() {
        let q = oi.lattice_index;
        for (j, oj) in pfs.objects.iter().enumerate() {
            let p = oj.lattice_index;
            let mut count = 0usize;
            for (idx, m) in pfs.fusion.homs[q][p].iter().enumerate() {
                let act = pfs.find_action(q, p, idx);
                let image_label = act
                    .point_map
                    .iter()
                    .find(|&&(x, _)| x == oi.point_label)
                    .map(|&(_, y)| y)
                    .expect("every domain point has an image");
                let k = pfs
                    .object_index(m.image_index, image_label)
                    .expect("image is an object");
                if pfs.mult[k][j] != 0 {
                    count += 1;
                }
            }
            h[i][j] = count;
        }
    }
    h
}

/// Backtracking search for a bijection of objects matching two square
/// tables entrywise.
fn table_bijection(
    a: &PointedFusionSystem,
    b: &PointedFusionSystem,
    ta: &[Vec<usize>],
    tb: &[Vec<usize>],
) -> Option<IsoWitness> {
    let n = ta.len();
    if n != tb.len() {
        return None;
    }
    // candidate pruning by row/column multisets
    let profile = |t: &[Vec<usize>], i: usize| {
        let mut row: Vec<usize> = t[i].clone();
        let mut col: Vec<usize> = t.iter().map(|r| r[i]).collect();
        row.sort_unstable();
        col.sort_unstable();
        (row, col)
    };
    let pa: Vec<_> = (0..n).map(|i| profile(ta, i)).collect();
    let pb: Vec<_> = (0..n).map(|i| profile(tb, i)).collect();
    let mut assign = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        pos: usize,
        n: usize,
        ta: &[Vec<usize>],
        tb: &[Vec<usize>],
        pa: &[(Vec<usize>, Vec<usize>)],
        pb: &[(Vec<usize>, Vec<usize>)],
        assign: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if pos == n {
            return true;
        }
        for j in 0..n {
            if used[j] || pa[pos] != pb[j] {
                continue;
            }
            let ok = (0..pos).all(|prev| {
                ta[pos][prev] == tb[j][assign[prev]] && ta[prev][pos] == tb[assign[prev]][j]
            }) && ta[pos][pos] == tb[j][j];
            if !ok {
                continue;
            }
            assign[pos] = j;
            used[j] = true;
            if rec(pos + 1, n, ta, tb, pa, pb, assign, used) {
                return true;
            }
            used[j] = false;
            assign[pos] = usize::MAX;
        }
        false
    }
    if rec(0, n, ta, tb, &pa, &pb, &mut assign, &mut used) {
        Some(IsoWitness {
            object_map: (0..n)
                .map(|i| (a.objects[i].id.clone(), b.objects[assign[i]].id.clone()))
                .collect(),
        })
    } else {
        None
    }
}

/// F-identical isomorphism: both systems must carry literally the same
/// fusion data; search per-subgroup point bijections preserving actions and
/// multiplicities.
fn f_identical(
    a: &PointedFusionSystem,
    b: &PointedFusionSystem,
) -> PfsResult<Option<IsoWitness>> {
    if !a.fusion.same_fusion_data(&b.fusion) {
        return Err(PfsError::BadInput(
            "F-identical comparison requires the same defect group and morphism sets".into(),
        ));
    }
    let nlat = a.fusion.lattice.len();
    // per-subgroup point label lists
    let points = |pfs: &PointedFusionSystem, q: usize| -> Vec<usize> {
        pfs.objects
            .iter()
            .filter(|o| o.lattice_index == q)
            .map(|o| o.point_label)
            .collect()
    };
    let pa: Vec<Vec<usize>> = (0..nlat).map(|q| points(a, q)).collect();
    let pb: Vec<Vec<usize>> = (0..nlat).map(|q| points(b, q)).collect();
    for q in 0..nlat {
        if pa[q].len() != pb[q].len() {
            return Ok(None);
        }
    }
    // enumerate products of per-subgroup bijections (tiny in practice)
    let mut perms: Vec<Vec<usize>> = Vec::with_capacity(nlat); // index permutations
    for q in 0..nlat {
        perms.push((0..pa[q].len()).collect());
    }
    let mut state: Vec<Vec<usize>> = perms.clone();
    if try_perms(a, b, &pa, &pb, &mut state, 0) {
        let mut object_map = Vec::new();
        for q in 0..nlat {
            for (t, &xi) in state[q].iter().enumerate() {
                let ia = a.object_index(q, pa[q][t]).unwrap();
                let ib = b.object_index(q, pb[q][xi]).unwrap();
                object_map.push((a.objects[ia].id.clone(), b.objects[ib].id.clone()));
            }
        }
        Ok(Some(IsoWitness { object_map }))
    } else {
        Ok(None)
    }
}

fn try_perms(
    a: &PointedFusionSystem,
    b: &PointedFusionSystem,
    pa: &[Vec<usize>],
    pb: &[Vec<usize>],
    state: &mut Vec<Vec<usize>>,
    q: usize,
) -> bool {
    if q == pa.len() {
        return f_identical_valid(a, b, pa, pb, state);
    }
    let mut perm: Vec<usize> = (0..pa[q].len()).collect();
    loop {
        state[q] = perm.clone();
        if try_perms(a, b, pa, pb, state, q + 1) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn f_identical_valid(
    a: &PointedFusionSystem,
    b: &PointedFusionSystem,
    pa: &[Vec<usize>],
    pb: &[Vec<usize>],
    state: &[Vec<usize>],
) -> bool {
    // label translation per subgroup
    let iota = |q: usize, label: usize| -> usize {
        let t = pa[q].iter().position(|&l| l == label).unwrap();
        pb[q][state[q][t]]
    };
    // preservation of multiplicities
    for oq in &a.objects {
        for op in &a.objects {
            let ia = a.object_index(oq.lattice_index, oq.point_label).unwrap();
            let ja = a.object_index(op.lattice_index, op.point_label).unwrap();
            let ib = b
                .object_index(oq.lattice_index, iota(oq.lattice_index, oq.point_label))
                .unwrap();
            let jb = b
                .object_index(op.lattice_index, iota(op.lattice_index, op.point_label))
                .unwrap();
            if a.mult[ia][ja] != b.mult[ib][jb] {
                return false;
            }
        }
    }
    // preservation of morphism actions: ^phi(iota(x)) = iota(^phi x)
    for act_a in &a.actions {
        let act_b = b.find_action(act_a.from, act_a.to, act_a.index);
        let image_lat = a.fusion.homs[act_a.from][act_a.to][act_a.index].image_index;
        for &(x, fx) in &act_a.point_map {
            let ix = iota(act_a.from, x);
            let b_fx = act_b
                .point_map
                .iter()
                .find(|&&(y, _)| y == ix)
                .map(|&(_, z)| z)
                .unwrap();
            if b_fx != iota(image_lat, fx) {
                return false;
            }
        }
    }
    true
}

//! The pfs.v1 JSON schema: serialization, parsing, file-level validation and
//! file-level isomorphism comparison (the compare path works on the file
//! data alone, so it applies to any two pfs.v1 files regardless of how the
//! groups were specified).

use super::build::PointedFusionSystem;
use super::iso::{IsoMode, IsoWitness};
use super::BlockMeta;
use crate::error::{PfsError, PfsResult};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const SCHEMA: &str = "pfs.v1";

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct PfsFile {
    pub schema: String,
    pub meta: BlockMeta,
    pub objects: Vec<ObjectV1>,
    pub fusion: Vec<FusionEntryV1>,
    pub actions: Vec<ActionV1>,
    /// (Q_id, P_id, m), nonzero entries only, canonical order.
    pub multiplicities: Vec<(String, String, usize)>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ObjectV1 {
    pub id: String,
    pub subgroup_gens: Vec<u16>,
    pub point_label: usize,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct FusionEntryV1 {
    pub from: String,
    pub to: String,
    /// (x, phi(x)) over the sorted domain elements.
    pub map_images: Vec<(u16, u16)>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ActionV1 {
    pub morphism_id: usize,
    pub point_map: Vec<(usize, usize)>,
}

pub fn to_file_json(pfs: &PointedFusionSystem) -> PfsFile {
    let mut fusion = Vec::new();
    let mut actions = Vec::new();
    for q in 0..pfs.fusion.lattice.len() {
        for p in 0..pfs.fusion.lattice.len() {
            for (idx, m) in pfs.fusion.homs[q][p].iter().enumerate() {
                let morphism_id = fusion.len();
                fusion.push(FusionEntryV1 {
                    from: pfs.subgroup_names[q].clone(),
                    to: pfs.subgroup_names[p].clone(),
                    map_images: pfs.fusion.lattice[q]
                        .elements()
                        .iter()
                        .copied()
                        .zip(m.images.iter().copied())
                        .collect(),
                });
                let act = pfs.find_action(q, p, idx);
                actions.push(ActionV1 { morphism_id, point_map: act.point_map.clone() });
            }
        }
    }
    let objects = pfs
        .objects
        .iter()
        .map(|o| ObjectV1 {
            id: o.id.clone(),
            subgroup_gens: pfs.fusion.lattice[o.lattice_index].small_generating_set(),
            point_label: o.point_label,
        })
        .collect();
    let mut multiplicities = Vec::new();
    for (i, oi) in pfs.objects.iter().enumerate() {
        for (j, oj) in pfs.objects.iter().enumerate() {
            if pfs.mult[i][j] != 0 {
                multiplicities.push((oi.id.clone(), oj.id.clone(), pfs.mult[i][j]));
            }
        }
    }
    PfsFile {
        schema: SCHEMA.to_string(),
        meta: pfs.meta.clone(),
        objects,
        fusion,
        actions,
        multiplicities,
    }
}

pub fn from_file_json(text: &str) -> PfsResult<PfsFile> {
    let file: PfsFile = serde_json::from_str(text)
        .map_err(|e| PfsError::BadInput(format!("pfs.v1 parse error: {e}")))?;
    if file.schema != SCHEMA {
        return Err(PfsError::BadInput(format!(
            "schema mismatch: expected {SCHEMA:?}, found {:?}",
            file.schema
        )));
    }
    Ok(file)
}

// ---------------------------------------------------------------------------
// File-level view: everything needed to re-validate and compare.
// ---------------------------------------------------------------------------

struct FileView<'a> {
    file: &'a PfsFile,
    /// subgroup name -> sorted element set (reconstructed from identity
    /// morphisms).
    subgroups: BTreeMap<String, Vec<u16>>,
    /// object id -> index.
    object_index: BTreeMap<String, usize>,
    /// object index -> subgroup name.
    obj_subgroup: Vec<String>,
    /// mult[(i, j)]
    mult: BTreeMap<(usize, usize), usize>,
    /// morphism image subgroup names.
    image_names: Vec<String>,
}

impl<'a> FileView<'a> {
    fn new(file: &'a PfsFile) -> PfsResult<FileView<'a>> {
        let mut subgroups = BTreeMap::new();
        for f in &file.fusion {
            if f.from == f.to && f.map_images.iter().all(|&(x, y)| x == y) {
                let elems: Vec<u16> = f.map_images.iter().map(|&(x, _)| x).collect();
                subgroups.insert(f.from.clone(), elems);
            }
        }
        let mut object_index = BTreeMap::new();
        let mut obj_subgroup = Vec::new();
        for (i, o) in file.objects.iter().enumerate() {
            object_index.insert(o.id.clone(), i);
            let name = o
                .id
                .rsplit_once('_')
                .map(|(s, _)| s.to_string())
                .ok_or_else(|| PfsError::BadInput(format!("object id {:?} malformed", o.id)))?;
            if !subgroups.contains_key(&name) {
                return Err(PfsError::BadInput(format!(
                    "object {} references unknown subgroup {name}",
                    o.id
                )));
            }
            obj_subgroup.push(name);
        }
        let mut mult = BTreeMap::new();
        for (qid, pid, m) in &file.multiplicities {
            let qi = *object_index
                .get(qid)
                .ok_or_else(|| PfsError::BadInput(format!("unknown object {qid}")))?;
            let pi = *object_index
                .get(pid)
                .ok_or_else(|| PfsError::BadInput(format!("unknown object {pid}")))?;
            mult.insert((qi, pi), *m);
        }
        let mut image_names = Vec::new();
        for f in &file.fusion {
            let mut img: Vec<u16> = f.map_images.iter().map(|&(_, y)| y).collect();
            img.sort_unstable();
            let name = subgroups
                .iter()
                .find(|(_, elems)| **elems == img)
                .map(|(n, _)| n.clone())
                .ok_or_else(|| {
                    PfsError::BadInput("morphism image is not a named subgroup".into())
                })?;
            image_names.push(name);
        }
        Ok(FileView { file, subgroups, object_index, obj_subgroup, mult, image_names })
    }

    fn m(&self, i: usize, j: usize) -> usize {
        self.mult.get(&(i, j)).copied().unwrap_or(0)
    }

    fn contains(&self, small: &str, big: &str) -> bool {
        let s = &self.subgroups[small];
        let b = &self.subgroups[big];
        s.iter().all(|x| b.contains(x))
    }

    fn apply(&self, morphism: usize, x: u16) -> Option<u16> {
        self.file.fusion[morphism]
            .map_images
            .iter()
            .find(|&&(a, _)| a == x)
            .map(|&(_, y)| y)
    }

    fn find_morphism(&self, from: &str, to: &str, map: &[(u16, u16)]) -> Option<usize> {
        self.file
            .fusion
            .iter()
            .position(|f| f.from == from && f.to == to && f.map_images == map)
    }

    fn act(&self, morphism: usize, label: usize) -> Option<usize> {
        self.file.actions[morphism]
            .point_map
            .iter()
            .find(|&&(x, _)| x == label)
            .map(|&(_, y)| y)
    }

    fn object_at(&self, subgroup: &str, label: usize) -> Option<usize> {
        self.file
            .objects
            .iter()
            .position(|o| o.point_label == label && self.obj_subgroup[self.object_index[&o.id]] == subgroup)
    }
}

/// Re-validate the pointed-refinement axioms from the serialized data alone.
pub fn validate_file(file: &PfsFile) -> PfsResult<()> {
    let v = FileView::new(file)?;
    let n = file.objects.len();
    // refinement + multiposet
    for i in 0..n {
        if v.m(i, i) != 1 {
            return Err(PfsError::AxiomViolation(format!(
                "file: m({id},{id}) != 1",
                id = file.objects[i].id
            )));
        }
        for j in 0..n {
            let m = v.m(i, j);
            if m != 0 && !v.contains(&v.obj_subgroup[i], &v.obj_subgroup[j]) {
                return Err(PfsError::AxiomViolation(
                    "file: multiplicity across non-nested subgroups".into(),
                ));
            }
            if i != j && v.obj_subgroup[i] == v.obj_subgroup[j] && m != 0 {
                return Err(PfsError::AxiomViolation(
                    "file: refinement fails on equal subgroups".into(),
                ));
            }
            if i != j && m != 0 && v.m(j, i) != 0 {
                return Err(PfsError::AxiomViolation("file: antisymmetry fails".into()));
            }
            for k in 0..n {
                if v.m(i, j) != 0 && v.m(j, k) != 0 && v.m(i, k) == 0 {
                    return Err(PfsError::AxiomViolation("file: transitivity fails".into()));
                }
            }
        }
    }
    // chain inequality over named subgroups
    for i in 0..n {
        for j in 0..n {
            for rname in v.subgroups.keys() {
                if !v.contains(&v.obj_subgroup[i], rname) || !v.contains(rname, &v.obj_subgroup[j])
                {
                    continue;
                }
                let total: usize = (0..n)
                    .filter(|&r| &v.obj_subgroup[r] == rname)
                    .map(|r| v.m(i, r) * v.m(r, j))
                    .sum();
                if v.m(i, j) < total {
                    return Err(PfsError::AxiomViolation("file: chain inequality fails".into()));
                }
            }
        }
    }
    // composition of morphisms and of point bijections
    for (mi, f1) in file.fusion.iter().enumerate() {
        for (mj, f2) in file.fusion.iter().enumerate() {
            if f2.from != f1.to {
                continue;
            }
            let comp: Vec<(u16, u16)> = f1
                .map_images
                .iter()
                .map(|&(x, y)| (x, v.apply(mj, y).expect("codomain covers image")))
                .collect();
            let mc = v.find_morphism(&f1.from, &f2.to, &comp).ok_or_else(|| {
                PfsError::AxiomViolation("file: composite morphism missing".into())
            })?;
            // restriction of f2 to the image of f1
            let rest: Vec<(u16, u16)> = {
                let mut r: Vec<(u16, u16)> = f1
                    .map_images
                    .iter()
                    .map(|&(_, y)| (y, v.apply(mj, y).unwrap()))
                    .collect();
                r.sort_unstable();
                r
            };
            let rest_from = &v.image_names[mi];
            let rest_to = v
                .find_morphism(rest_from, &f2.to, &rest)
                .or_else(|| {
                    // the restriction may be recorded with its literal image
                    // codomain instead; search all
                    file.fusion.iter().position(|f| {
                        f.from == *rest_from && f.map_images == rest
                    })
                })
                .ok_or_else(|| {
                    PfsError::AxiomViolation("file: restricted morphism missing".into())
                })?;
            for &(x, fx) in &file.actions[mi].point_map {
                let direct = v.act(mc, x).ok_or_else(|| {
                    PfsError::AxiomViolation("file: composite action misses a point".into())
                })?;
                let staged = v.act(rest_to, fx).ok_or_else(|| {
                    PfsError::AxiomViolation("file: restricted action misses a point".into())
                })?;
                if direct != staged {
                    return Err(PfsError::AxiomViolation(
                        "file: bijection composition fails".into(),
                    ));
                }
            }
        }
    }
    // compatibility: m(^phi Q_d, ^phi P_g) = m(Q_d, P_g)
    for (mi, f1) in file.fusion.iter().enumerate() {
        for i in 0..n {
            if v.obj_subgroup[i] != f1.from {
                continue;
            }
            for j in 0..n {
                if !v.contains(&v.obj_subgroup[j], &f1.from) {
                    continue;
                }
                // restriction of f1 to the subgroup of object j
                let relems = &v.subgroups[&v.obj_subgroup[j]];
                let mut rest: Vec<(u16, u16)> = relems
                    .iter()
                    .map(|&x| (x, v.apply(mi, x).unwrap()))
                    .collect();
                rest.sort_unstable();
                let rmor = file
                    .fusion
                    .iter()
                    .position(|f| f.from == v.obj_subgroup[j] && f.map_images == rest)
                    .ok_or_else(|| {
                        PfsError::AxiomViolation("file: restriction missing".into())
                    })?;
                let fi = v.act(mi, file.objects[i].point_label).unwrap();
                let fj = v.act(rmor, file.objects[j].point_label).unwrap();
                let oi2 = v.object_at(&v.image_names[mi], fi).unwrap();
                let oj2 = v.object_at(&v.image_names[rmor], fj).unwrap();
                if v.m(j, i) != v.m(oj2, oi2) {
                    return Err(PfsError::AxiomViolation("file: compatibility fails".into()));
                }
            }
        }
    }
    Ok(())
}

/// File-level isomorphism comparison.
pub fn compare_files(a: &PfsFile, b: &PfsFile, mode: IsoMode) -> PfsResult<Option<IsoWitness>> {
    let va = FileView::new(a)?;
    let vb = FileView::new(b)?;
    match mode {
        IsoMode::Multiposet => Ok(table_search(a, b, &mult_table(&va), &mult_table(&vb), None)),
        IsoMode::Category => Ok(table_search(
            a,
            b,
            &hom_table(&va)?,
            &hom_table(&vb)?,
            Some((&mult_table(&va), &mult_table(&vb))),
        )),
        IsoMode::FIdentical => f_identical_files(a, b, &va, &vb),
    }
}

fn mult_table(v: &FileView) -> Vec<Vec<usize>> {
    let n = v.file.objects.len();
    (0..n).map(|i| (0..n).map(|j| v.m(i, j)).collect()).collect()
}

fn hom_table(v: &FileView) -> PfsResult<Vec<Vec<usize>>> {
    let n = v.file.objects.len();
    let mut h = vec![vec![0usize; n]; n];
    for (i, oi) in v.file.objects.iter().enumerate() {
        for (j, oj) in v.file.objects.iter().enumerate() {
            let mut count = 0;
            for (mi, f) in v.file.fusion.iter().enumerate() {
                if f.from != v.obj_subgroup[i] || f.to != v.obj_subgroup[j] {
                    continue;
                }
                let Some(fi) = v.act(mi, oi.point_label) else { continue };
                let Some(k) = v.object_at(&v.image_names[mi], fi) else {
                    return Err(PfsError::BadInput("action image is not an object".into()));
                };
                if v.m(k, j) != 0 {
                    count += 1;
                }
                let _ = oj;
            }
            h[i][j] = count;
        }
    }
    Ok(h)
}

fn table_search(
    a: &PfsFile,
    b: &PfsFile,
    ta: &[Vec<usize>],
    tb: &[Vec<usize>],
    also: Option<(&Vec<Vec<usize>>, &Vec<Vec<usize>>)>,
) -> Option<IsoWitness> {
    let n = ta.len();
    if n != tb.len() {
        return None;
    }
    let mut assign = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        pos: usize,
        n: usize,
        ta: &[Vec<usize>],
        tb: &[Vec<usize>],
        also: &Option<(&Vec<Vec<usize>>, &Vec<Vec<usize>>)>,
        assign: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if pos == n {
            return true;
        }
        'next: for j in 0..n {
            if used[j] || ta[pos][pos] != tb[j][j] {
                continue;
            }
            for prev in 0..pos {
                if ta[pos][prev] != tb[j][assign[prev]] || ta[prev][pos] != tb[assign[prev]][j] {
                    continue 'next;
                }
                if let Some((ma, mb)) = also {
                    if ma[pos][prev] != mb[j][assign[prev]] || ma[prev][pos] != mb[assign[prev]][j]
                    {
                        continue 'next;
                    }
                }
            }
            if let Some((ma, mb)) = also {
                if ma[pos][pos] != mb[j][j] {
                    continue 'next;
                }
            }
            assign[pos] = j;
            used[j] = true;
            if rec(pos + 1, n, ta, tb, also, assign, used) {
                return true;
            }
            used[j] = false;
            assign[pos] = usize::MAX;
        }
        false
    }
    if rec(0, n, ta, tb, &also, &mut assign, &mut used) {
        Some(IsoWitness {
            object_map: (0..n)
                .map(|i| (a.objects[i].id.clone(), b.objects[assign[i]].id.clone()))
                .collect(),
        })
    } else {
        None
    }
}

fn f_identical_files(
    a: &PfsFile,
    b: &PfsFile,
    va: &FileView,
    vb: &FileView,
) -> PfsResult<Option<IsoWitness>> {
    // identical fusion data required
    let fa: Vec<(&String, &String, &Vec<(u16, u16)>)> =
        a.fusion.iter().map(|f| (&f.from, &f.to, &f.map_images)).collect();
    let fb: Vec<(&String, &String, &Vec<(u16, u16)>)> =
        b.fusion.iter().map(|f| (&f.from, &f.to, &f.map_images)).collect();
    if fa != fb {
        return Err(PfsError::BadInput(
            "F-identical comparison requires identical fusion data (same defect group)".into(),
        ));
    }
    // per-subgroup label lists
    let labels = |v: &FileView, f: &PfsFile, s: &String| -> Vec<usize> {
        f.objects
            .iter()
            .enumerate()
            .filter(|(i, _)| &v.obj_subgroup[*i] == s)
            .map(|(_, o)| o.point_label)
            .collect()
    };
    let names: Vec<String> = va.subgroups.keys().cloned().collect();
    let la: Vec<Vec<usize>> = names.iter().map(|s| labels(va, a, s)).collect();
    let lb: Vec<Vec<usize>> = names.iter().map(|s| labels(vb, b, s)).collect();
    for (x, y) in la.iter().zip(&lb) {
        if x.len() != y.len() {
            return Ok(None);
        }
    }
    let mut state: Vec<Vec<usize>> = la.iter().map(|l| (0..l.len()).collect()).collect();
    fn rec(
        q: usize,
        names: &[String],
        la: &[Vec<usize>],
        lb: &[Vec<usize>],
        state: &mut Vec<Vec<usize>>,
        check: &dyn Fn(&[Vec<usize>]) -> bool,
    ) -> bool {
        if q == names.len() {
            return check(state);
        }
        let mut perm: Vec<usize> = (0..la[q].len()).collect();
        loop {
            state[q] = perm.clone();
            if rec(q + 1, names, la, lb, state, check) {
                return true;
            }
            if !super::iso::next_permutation(&mut perm) {
                return false;
            }
        }
    }
    let check = |state: &[Vec<usize>]| -> bool {
        let iota = |sname: &String, label: usize| -> usize {
            let q = names.iter().position(|n| n == sname).unwrap();
            let t = la[q].iter().position(|&l| l == label).unwrap();
            lb[q][state[q][t]]
        };
        // multiplicities
        for (i, oi) in a.objects.iter().enumerate() {
            for (j, oj) in a.objects.iter().enumerate() {
                let bi = vb
                    .object_at(&va.obj_subgroup[i], iota(&va.obj_subgroup[i], oi.point_label));
                let bj = vb
                    .object_at(&va.obj_subgroup[j], iota(&va.obj_subgroup[j], oj.point_label));
                let (Some(bi), Some(bj)) = (bi, bj) else { return false };
                if va.m(i, j) != vb.m(bi, bj) {
                    return false;
                }
            }
        }
        // actions
        for (mi, f) in a.fusion.iter().enumerate() {
            for &(x, fx) in &a.actions[mi].point_map {
                let bx = iota(&f.from, x);
                let Some(bfx) = vb.act(mi, bx) else { return false };
                if bfx != iota(&va.image_names[mi], fx) {
                    return false;
                }
            }
        }
        true
    };
    if rec(0, &names, &la, &lb, &mut state, &check) {
        let mut object_map = Vec::new();
        for (q, sname) in names.iter().enumerate() {
            for (t, &xi) in state[q].iter().enumerate() {
                let ia = a
                    .objects
                    .iter()
                    .position(|o| {
                        o.point_label == la[q][t]
                            && &va.obj_subgroup[a.objects.iter().position(|x| x.id == o.id).unwrap()]
                                == sname
                    })
                    .unwrap();
                let ib = vb.object_at(sname, lb[q][xi]).unwrap();
                object_map.push((a.objects[ia].id.clone(), b.objects[ib].id.clone()));
            }
        }
        Ok(Some(IsoWitness { object_map }))
    } else {
        Ok(None)
    }
}

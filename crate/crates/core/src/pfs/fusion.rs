//! The fusion system of a block on its defect group.

use crate::blocks::{GroupAlgebra, SourceData};
use crate::error::{PfsError, PfsResult};
use crate::groups::{conjugators, Gel, Group, Subgroup};
use std::sync::Arc;

/// A fusion morphism Q -> P: the restriction of some conjugation map. Two
/// witnesses inducing the same restriction are one morphism.
#[derive(Clone, Debug)]
pub struct Morphism {
    pub from: usize,
    pub to: usize,
    /// Image of each element of Q, in the sorted order of Q's elements.
    pub images: Vec<Gel>,
    /// Every group element inducing this map with the Brauer-pair
    /// compatibility.
    pub witnesses: Vec<Gel>,
    /// Lattice index of the image subgroup.
    pub image_index: usize,
}

impl Morphism {
    pub fn apply(&self, domain: &Subgroup, x: Gel) -> Gel {
        let pos = domain.elements().binary_search(&x).expect("element outside domain");
        self.images[pos]
    }

    pub fn is_identity_inclusion(&self, domain: &Subgroup) -> bool {
        self.images == domain.elements()
    }
}

/// Fusion system data: for each ordered pair of defect-lattice subgroups,
/// the set of block-compatible conjugation maps.
pub struct FusionSystem {
    pub group: Arc<Group>,
    pub defect: Subgroup,
    pub lattice: Vec<Subgroup>,
    /// homs[q][p] = Hom(lattice[q], lattice[p]), sorted by image vector.
    pub homs: Vec<Vec<Vec<Morphism>>>,
}

impl FusionSystem {
    pub fn hom(&self, q: usize, p: usize) -> &[Morphism] {
        &self.homs[q][p]
    }

    pub fn lattice_index(&self, s: &Subgroup) -> Option<usize> {
        self.lattice.iter().position(|t| t == s)
    }

    /// Find a stored morphism matching the given image vector.
    pub fn find(&self, q: usize, p: usize, images: &[Gel]) -> Option<usize> {
        self.homs[q][p].iter().position(|m| m.images == images)
    }

    /// The restriction of homs[q][p][idx] to a sublattice member r <= q:
    /// returns (image lattice index, image vector on r).
    pub fn restrict(&self, q: usize, idx: usize, p: usize, r: usize) -> (usize, Vec<Gel>) {
        let m = &self.homs[q][p][idx];
        let dom = &self.lattice[q];
        let sub = &self.lattice[r];
        let images: Vec<Gel> = sub.elements().iter().map(|&x| m.apply(dom, x)).collect();
        let mut sorted = images.clone();
        sorted.sort_unstable();
        let img = self
            .lattice
            .iter()
            .position(|s| s.elements() == sorted)
            .expect("image of a lattice member is a lattice member");
        (img, images)
    }

    /// Morphism count over all ordered pairs.
    pub fn total_morphisms(&self) -> usize {
        self.homs.iter().flatten().map(Vec::len).sum()
    }

    /// Automorphism group order of an object (morphisms Q -> Q with image Q).
    pub fn aut_order(&self, q: usize) -> usize {
        self.homs[q][q].iter().filter(|m| m.image_index == q).count()
    }

    /// Equality of morphism data (used by the F-identical precondition):
    /// same defect group elements, same lattice, identical image sets.
    pub fn same_fusion_data(&self, other: &FusionSystem) -> bool {
        if self.defect.elements() != other.defect.elements() {
            return false;
        }
        if self.lattice.len() != other.lattice.len() {
            return false;
        }
        for (a, b) in self.lattice.iter().zip(&other.lattice) {
            if a.elements() != b.elements() {
                return false;
            }
        }
        for q in 0..self.lattice.len() {
            for p in 0..self.lattice.len() {
                let ia: Vec<&Vec<Gel>> = self.homs[q][p].iter().map(|m| &m.images).collect();
                let ib: Vec<&Vec<Gel>> = other.homs[q][p].iter().map(|m| &m.images).collect();
                if ia != ib {
                    return false;
                }
            }
        }
        true
    }
}

/// Build the fusion system from source data: Hom(Q, P) consists of the
/// conjugation maps c_g with gQg^-1 <= P carrying e_Q to the family block of
/// the image (equivalent, by uniqueness of compatible families, to Brauer
/// pair containment g(Q, e_Q)g^-1 <= (P, e_P)).
pub fn fusion_system(fga: &GroupAlgebra, source: &SourceData) -> PfsResult<FusionSystem> {
    let group = fga.group().clone();
    let lattice = source.lattice.clone();
    let n = lattice.len();
    let mut homs: Vec<Vec<Vec<Morphism>>> = vec![vec![Vec::new(); n]; n];
    for (qi, q) in lattice.iter().enumerate() {
        for (pi, p) in lattice.iter().enumerate() {
            let mut set: Vec<Morphism> = Vec::new();
            for g in conjugators(&group, q, p) {
                let image = q.conjugate(g);
                let img_idx = lattice
                    .iter()
                    .position(|s| s == &image)
                    .ok_or_else(|| PfsError::Inconsistency("conjugate escaped the lattice".into()))?;
                let conj_eq = fga.conj_elem(g, &source.eq_family[qi]);
                if conj_eq != source.eq_family[img_idx] {
                    continue;
                }
                let images: Vec<Gel> = q.elements().iter().map(|&x| group.conj(g, x)).collect();
                match set.iter_mut().find(|m| m.images == images) {
                    Some(m) => m.witnesses.push(g),
                    None => set.push(Morphism {
                        from: qi,
                        to: pi,
                        images,
                        witnesses: vec![g],
                        image_index: img_idx,
                    }),
                }
            }
            set.sort_by(|a, b| a.images.cmp(&b.images));
            homs[qi][pi] = set;
        }
    }
    let fs = FusionSystem { group, defect: source.defect.clone(), lattice, homs };
    validate_poset_category(&fs)?;
    Ok(fs)
}

/// Poset-category axioms: inclusions exist and are strict, composition and
/// restriction stay inside the morphism sets.
fn validate_poset_category(fs: &FusionSystem) -> PfsResult<()> {
    let n = fs.lattice.len();
    for q in 0..n {
        for p in 0..n {
            if fs.lattice[p].contains_subgroup(&fs.lattice[q]) {
                // inclusion present; an isomorphism only when Q = P
                let inc = fs.find(q, p, fs.lattice[q].elements());
                if inc.is_none() {
                    return Err(PfsError::AxiomViolation(format!(
                        "inclusion {q} <= {p} missing from the fusion system"
                    )));
                }
            }
            for (mi, m) in fs.homs[q][p].iter().enumerate() {
                // factorization: restrictions to smaller lattice members exist
                for r in 0..n {
                    if r == q || !fs.lattice[q].contains_subgroup(&fs.lattice[r]) {
                        continue;
                    }
                    let (img, images) = fs.restrict(q, mi, p, r);
                    if fs.find(r, img, &images).is_none() {
                        return Err(PfsError::AxiomViolation(format!(
                            "restriction of a morphism {q}->{p} to {r} is not a morphism"
                        )));
                    }
                }
                // composition with every composable morphism
                for s in 0..n {
                    for m2 in &fs.homs[p][s] {
                        let comp: Vec<Gel> = fs.lattice[q]
                            .elements()
                            .iter()
                            .map(|&x| m2.apply(&fs.lattice[p], m.apply(&fs.lattice[q], x)))
                            .collect();
                        if fs.find(q, s, &comp).is_none() {
                            return Err(PfsError::AxiomViolation(format!(
                                "composite of morphisms {q}->{p}->{s} is not a morphism"
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Abstract isomorphism of two fusion systems: a group isomorphism between
/// the defect groups transporting every Hom-set bijectively. Searched by
/// brute force over generator images; adequate for the small defect groups
/// in scope.
pub fn fusion_iso(a: &FusionSystem, b: &FusionSystem) -> PfsResult<bool> {
    if a.defect.order() != b.defect.order() || a.lattice.len() != b.lattice.len() {
        return Ok(false);
    }
    let (ga, map_a) = a.defect.as_group()?;
    let (gb, map_b) = b.defect.as_group()?;
    let gens = small_generating_labels(&ga);
    let mut assignment = vec![0 as Gel; gens.len()];
    Ok(search_group_iso(&ga, &gb, &gens, 0, &mut assignment, &mut |iso: &[Gel]| {
        // iso: full map ga labels -> gb labels; transport lattice and homs
        transport_matches(a, b, &map_a, &map_b, iso)
    }))
}

fn small_generating_labels(g: &Arc<Group>) -> Vec<Gel> {
    let full = Subgroup::full(g.clone());
    full.small_generating_set()
}

/// Depth-first over images of generators; on each complete homomorphic
/// bijection, run the check.
fn search_group_iso(
    ga: &Arc<Group>,
    gb: &Arc<Group>,
    gens: &[Gel],
    pos: usize,
    assignment: &mut Vec<Gel>,
    check: &mut dyn FnMut(&[Gel]) -> bool,
) -> bool {
    if pos == gens.len() {
        if let Some(iso) = close_homomorphism(ga, gb, gens, assignment) {
            return check(&iso);
        }
        return false;
    }
    let target_order = ga.element_order(gens[pos]);
    for cand in gb.elements() {
        if gb.element_order(cand) != target_order {
            continue;
        }
        assignment[pos] = cand;
        if search_group_iso(ga, gb, gens, pos + 1, assignment, check) {
            return true;
        }
    }
    false
}

/// Extend generator images to a full map, failing on any inconsistency or
/// non-bijectivity.
fn close_homomorphism(
    ga: &Arc<Group>,
    gb: &Arc<Group>,
    gens: &[Gel],
    images: &[Gel],
) -> Option<Vec<Gel>> {
    let n = ga.order();
    let mut map: Vec<Option<Gel>> = vec![None; n];
    map[0] = Some(0);
    let mut frontier = vec![0 as Gel];
    while let Some(x) = frontier.pop() {
        let fx = map[x as usize].unwrap();
        for (t, &g) in gens.iter().enumerate() {
            let y = ga.mul(x, g);
            let fy = gb.mul(fx, images[t]);
            match map[y as usize] {
                None => {
                    map[y as usize] = Some(fy);
                    frontier.push(y);
                }
                Some(existing) if existing != fy => return None,
                _ => {}
            }
        }
    }
    let full: Vec<Gel> = map.into_iter().collect::<Option<_>>()?;
    let mut seen = vec![false; n];
    for &v in &full {
        if seen[v as usize] {
            return None;
        }
        seen[v as usize] = true;
    }
    // verify homomorphism on all pairs (cheap at these orders)
    for x in ga.elements() {
        for y in ga.elements() {
            if gb.mul(full[x as usize], full[y as usize]) != full[ga.mul(x, y) as usize] {
                return None;
            }
        }
    }
    Some(full)
}

fn transport_matches(
    a: &FusionSystem,
    b: &FusionSystem,
    map_a: &[Gel],
    map_b: &[Gel],
    iso: &[Gel],
) -> bool {
    // parent-label translation: a-defect element -> local -> iso -> b element
    let local_a = |x: Gel| map_a.iter().position(|&g| g == x).unwrap();
    let to_b = |x: Gel| map_b[iso[local_a(x)] as usize];
    // lattice transport
    let mut lattice_map = vec![usize::MAX; a.lattice.len()];
    for (i, s) in a.lattice.iter().enumerate() {
        let mut elems: Vec<Gel> = s.elements().iter().map(|&x| to_b(x)).collect();
        elems.sort_unstable();
        match b.lattice.iter().position(|t| t.elements() == elems) {
            Some(j) => lattice_map[i] = j,
            None => return false,
        }
    }
    // hom-set transport
    for q in 0..a.lattice.len() {
        for p in 0..a.lattice.len() {
            let (bq, bp) = (lattice_map[q], lattice_map[p]);
            if a.homs[q][p].len() != b.homs[bq][bp].len() {
                return false;
            }
            for m in &a.homs[q][p] {
                // transported map: order of domain elements changes with sorting
                let dom_a = a.lattice[q].elements();
                let dom_b = b.lattice[bq].elements();
                let images: Vec<Gel> = dom_b
                    .iter()
                    .map(|&xb| {
                        // preimage in a-domain
                        let xa = *dom_a.iter().find(|&&x| to_b(x) == xb).unwrap();
                        to_b(m.apply(&a.lattice[q], xa))
                    })
                    .collect();
                if b.find(bq, bp, &images).is_none() {
                    return false;
                }
            }
        }
    }
    true
}

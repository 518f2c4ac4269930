//! Finite groups with full multiplication structure.
//!
//! Groups are stored as Cayley tables with element labels `0..n-1`, label 0
//! the identity. Every target group has order <= 60, so quadratic tables and
//! exhaustive scans are the right tool: centralizers, normalizers and
//! conjugator searches are one-line loops over the table.

pub mod catalog;
mod perm;

pub use perm::{closure_bfs, Perm};

use crate::error::{PfsError, PfsResult};
use serde::Deserialize;
use std::collections::HashMap;
use std::sync::Arc;

pub const DEFAULT_ORDER_BOUND: usize = 1000;

/// Element label inside a [`Group`].
pub type Gel = u16;

#[derive(Debug)]
pub struct Group {
    order: usize,
    mul: Vec<Gel>,
    inv: Vec<Gel>,
    name: String,
    /// Generator labels when the group came from a permutation closure.
    gen_labels: Vec<Gel>,
    perms: Vec<Perm>,
}

impl Group {
    /// Closure of a permutation generating set with canonical BFS labelling.
    pub fn from_permutations(gens: &[Perm], name: &str) -> PfsResult<Arc<Group>> {
        Self::from_permutations_bounded(gens, name, DEFAULT_ORDER_BOUND)
    }

    pub fn from_permutations_bounded(
        gens: &[Perm],
        name: &str,
        bound: usize,
    ) -> PfsResult<Arc<Group>> {
        let (els, gen_labels) = closure_bfs(gens, bound)?;
        let n = els.len();
        let index: HashMap<&Perm, Gel> = els.iter().zip(0..).map(|(p, i)| (p, i)).collect();
        let mut mul = vec![0 as Gel; n * n];
        for (a, pa) in els.iter().enumerate() {
            for (b, pb) in els.iter().enumerate() {
                mul[a * n + b] = index[&pa.compose(pb)];
            }
        }
        let mut g = Group {
            order: n,
            mul,
            inv: vec![0; n],
            name: name.to_string(),
            gen_labels: gen_labels.iter().map(|&i| i as Gel).collect(),
            perms: els,
        };
        g.fill_inverses()?;
        Ok(Arc::new(g))
    }

    /// Build from an explicit multiplication table; the table is fully
    /// validated (identity 0, associativity, two-sided inverses).
    pub fn from_table(table: Vec<Vec<u16>>, name: &str) -> PfsResult<Arc<Group>> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n) {
            return Err(PfsError::BadInput("multiplication table must be square".into()));
        }
        if n > DEFAULT_ORDER_BOUND {
            return Err(PfsError::BoundExceeded(format!("group order {n} exceeds bound")));
        }
        let mut mul = vec![0 as Gel; n * n];
        for (a, row) in table.iter().enumerate() {
            for (b, &v) in row.iter().enumerate() {
                if (v as usize) >= n {
                    return Err(PfsError::BadInput("table entry out of range".into()));
                }
                mul[a * n + b] = v;
            }
        }
        for a in 0..n {
            if mul[a] as usize != a || mul[a * n] as usize != a {
                return Err(PfsError::BadInput("label 0 is not a two-sided identity".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let ab_c = mul[mul[a * n + b] as usize * n + c];
                    let a_bc = mul[a * n + mul[b * n + c] as usize];
                    if ab_c != a_bc {
                        return Err(PfsError::BadInput(format!(
                            "table is not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let mut g = Group {
            order: n,
            mul,
            inv: vec![0; n],
            name: name.to_string(),
            gen_labels: vec![],
            perms: vec![],
        };
        g.fill_inverses()?;
        Ok(Arc::new(g))
    }

    fn fill_inverses(&mut self) -> PfsResult<()> {
        let n = self.order;
        for a in 0..n {
            let mut found = false;
            for b in 0..n {
                if self.mul[a * n + b] == 0 && self.mul[b * n + a] == 0 {
                    self.inv[a] = b as Gel;
                    found = true;
                    break;
                }
            }
            if !found {
                return Err(PfsError::BadInput(format!("element {a} has no two-sided inverse")));
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }
    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn generator_labels(&self) -> &[Gel] {
        &self.gen_labels
    }
    pub fn permutations(&self) -> &[Perm] {
        &self.perms
    }

    #[inline]
    pub fn mul(&self, a: Gel, b: Gel) -> Gel {
        self.mul[a as usize * self.order + b as usize]
    }
    #[inline]
    pub fn inv(&self, a: Gel) -> Gel {
        self.inv[a as usize]
    }
    #[inline]
    pub fn conj(&self, g: Gel, x: Gel) -> Gel {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn elements(&self) -> impl Iterator<Item = Gel> {
        0..self.order as Gel
    }

    pub fn element_order(&self, a: Gel) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn exponent(&self) -> u64 {
        let mut e = 1u64;
        for a in self.elements() {
            e = lcm(e, self.element_order(a) as u64);
        }
        e
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes, each sorted, ordered by least member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<Gel>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for a in self.elements() {
            if seen[a as usize] {
                continue;
            }
            let mut class: Vec<Gel> = self.elements().map(|g| self.conj(g, a)).collect();
            class.sort_unstable();
            class.dedup();
            for &x in &class {
                seen[x as usize] = true;
            }
            classes.push(class);
        }
        classes
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}
fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

// ---------------------------------------------------------------------------
// Subgroups
// ---------------------------------------------------------------------------

/// A subgroup, stored as a sorted element list (always containing 0).
#[derive(Clone)]
pub struct Subgroup {
    group: Arc<Group>,
    elems: Vec<Gel>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.elems == other.elems
    }
}
impl Eq for Subgroup {}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup{:?} of {}", self.elems, self.group.name())
    }
}

impl Subgroup {
    pub fn trivial(group: Arc<Group>) -> Subgroup {
        Subgroup { group, elems: vec![0] }
    }

    pub fn full(group: Arc<Group>) -> Subgroup {
        let elems = group.elements().collect();
        Subgroup { group, elems }
    }

    /// Closure of a set of elements.
    pub fn generated_by(group: Arc<Group>, gens: &[Gel]) -> Subgroup {
        let mut elems = vec![0 as Gel];
        let mut frontier = vec![0 as Gel];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                for y in [group.mul(x, g), group.mul(g, x)] {
                    if !elems.contains(&y) {
                        elems.push(y);
                        frontier.push(y);
                    }
                }
            }
        }
        elems.sort_unstable();
        Subgroup { group, elems }
    }

    pub fn from_elements(group: Arc<Group>, mut elems: Vec<Gel>) -> PfsResult<Subgroup> {
        elems.sort_unstable();
        elems.dedup();
        let s = Subgroup { group, elems };
        if !s.is_closed() {
            return Err(PfsError::BadInput("element set is not a subgroup".into()));
        }
        Ok(s)
    }

    fn is_closed(&self) -> bool {
        self.elems.contains(&0)
            && self.elems.iter().all(|&a| {
                self.contains(self.group.inv(a))
                    && self.elems.iter().all(|&b| self.contains(self.group.mul(a, b)))
            })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }
    pub fn order(&self) -> usize {
        self.elems.len()
    }
    pub fn elements(&self) -> &[Gel] {
        &self.elems
    }
    pub fn contains(&self, x: Gel) -> bool {
        self.elems.binary_search(&x).is_ok()
    }
    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> bool {
        other.elems.iter().all(|&x| self.contains(x))
    }

    pub fn conjugate(&self, g: Gel) -> Subgroup {
        let mut elems: Vec<Gel> = self.elems.iter().map(|&x| self.group.conj(g, x)).collect();
        elems.sort_unstable();
        Subgroup { group: self.group.clone(), elems }
    }

    pub fn is_normal_in(&self, bigger: &Subgroup) -> bool {
        bigger.elems.iter().all(|&g| &self.conjugate(g) == self)
    }

    /// Left transversal of `self` in `bigger` (coset representatives,
    /// deterministic: least element of each coset).
    pub fn left_transversal(&self, bigger: &Subgroup) -> Vec<Gel> {
        debug_assert!(bigger.contains_subgroup(self));
        let mut covered = vec![false; self.group.order()];
        let mut reps = Vec::new();
        for &g in &bigger.elems {
            if covered[g as usize] {
                continue;
            }
            reps.push(g);
            for &h in &self.elems {
                covered[self.group.mul(g, h) as usize] = true;
            }
        }
        reps
    }

    /// A small generating set (greedy).
    pub fn small_generating_set(&self) -> Vec<Gel> {
        let mut gens: Vec<Gel> = Vec::new();
        let mut have = Subgroup::trivial(self.group.clone());
        for &x in &self.elems {
            if !have.contains(x) {
                gens.push(x);
                have = Subgroup::generated_by(self.group.clone(), &gens);
                if have.order() == self.order() {
                    break;
                }
            }
        }
        gens
    }

    /// The subgroup as a standalone group (labels renumbered, order of
    /// elements preserved so the identity stays at 0), with the
    /// local-to-parent label map.
    pub fn as_group(&self) -> PfsResult<(Arc<Group>, Vec<Gel>)> {
        let n = self.order();
        let local: HashMap<Gel, u16> = self.elems.iter().zip(0u16..).map(|(&g, i)| (g, i)).collect();
        let mut table = vec![vec![0u16; n]; n];
        for (a, &ga) in self.elems.iter().enumerate() {
            for (b, &gb) in self.elems.iter().enumerate() {
                table[a][b] = local[&self.group.mul(ga, gb)];
            }
        }
        let name = format!("{}<{}>", self.group.name(), n);
        let g = Group::from_table(table, &name)?;
        Ok((g, self.elems.clone()))
    }
}

// ---------------------------------------------------------------------------
// Structure queries
// ---------------------------------------------------------------------------

/// Pointwise stabilizer {g : gs = sg for all s in S}.
pub fn centralizer(group: &Arc<Group>, s: &Subgroup) -> Subgroup {
    let elems: Vec<Gel> = group
        .elements()
        .filter(|&g| s.elements().iter().all(|&x| group.mul(g, x) == group.mul(x, g)))
        .collect();
    Subgroup { group: group.clone(), elems }
}

/// Setwise stabilizer {g : gSg^-1 = S}.
pub fn normalizer(group: &Arc<Group>, s: &Subgroup) -> Subgroup {
    let elems: Vec<Gel> = group
        .elements()
        .filter(|&g| &s.conjugate(g) == s)
        .collect();
    Subgroup { group: group.clone(), elems }
}

/// All g with gQg^-1 <= P.
pub fn conjugators(group: &Arc<Group>, q: &Subgroup, p: &Subgroup) -> Vec<Gel> {
    group
        .elements()
        .filter(|&g| q.elements().iter().all(|&x| p.contains(group.conj(g, x))))
        .collect()
}

pub fn are_conjugate(group: &Arc<Group>, a: &Subgroup, b: &Subgroup) -> bool {
    if a.order() != b.order() {
        return false;
    }
    group.elements().any(|g| &a.conjugate(g) == b)
}

/// A Sylow p-subgroup, deterministic (normalizer-growth from the trivial
/// subgroup, scanning elements in label order).
pub fn sylow_subgroup(group: &Arc<Group>, p: u64) -> Subgroup {
    let mut target = 1usize;
    let mut n = group.order();
    while n % p as usize == 0 {
        target *= p as usize;
        n /= p as usize;
    }
    let mut s = Subgroup::trivial(group.clone());
    while s.order() < target {
        let norm = normalizer(group, &s);
        let mut grown = false;
        for &x in norm.elements() {
            if s.contains(x) {
                continue;
            }
            if !is_p_power(group.element_order(x), p) {
                continue;
            }
            let mut gens = s.small_generating_set();
            gens.push(x);
            let t = Subgroup::generated_by(group.clone(), &gens);
            if is_p_power(t.order(), p) && t.order() > s.order() {
                s = t;
                grown = true;
                break;
            }
        }
        assert!(grown, "Sylow growth stalled (broken multiplication table?)");
    }
    s
}

fn is_p_power(mut n: usize, p: u64) -> bool {
    while n % p as usize == 0 {
        n /= p as usize;
    }
    n == 1
}

pub const SUBGROUP_LATTICE_BOUND: usize = 64;

/// The complete subgroup lattice of `s`, sorted by (order, element list).
pub fn subgroups_of(s: &Subgroup) -> PfsResult<Vec<Subgroup>> {
    if s.order() > SUBGROUP_LATTICE_BOUND {
        return Err(PfsError::BoundExceeded(format!(
            "subgroup lattice enumeration limited to order {SUBGROUP_LATTICE_BOUND}, got {}",
            s.order()
        )));
    }
    let group = s.group().clone();
    let mut all: Vec<Subgroup> = vec![Subgroup::trivial(group.clone())];
    let mut frontier: Vec<Subgroup> = all.clone();
    while let Some(h) = frontier.pop() {
        for &x in s.elements() {
            if h.contains(x) {
                continue;
            }
            let mut gens = h.small_generating_set();
            gens.push(x);
            let t = Subgroup::generated_by(group.clone(), &gens);
            if !s.contains_subgroup(&t) {
                continue;
            }
            if !all.contains(&t) {
                all.push(t.clone());
                frontier.push(t);
            }
        }
    }
    all.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
    Ok(all)
}

/// Conjugacy-class representatives of the p-subgroups of G, all inside a
/// fixed Sylow p-subgroup, sorted by (order, element list).
pub fn p_subgroups_up_to_conjugacy(group: &Arc<Group>, p: u64) -> PfsResult<Vec<Subgroup>> {
    let sylow = sylow_subgroup(group, p);
    let subs = subgroups_of(&sylow)?;
    let mut reps: Vec<Subgroup> = Vec::new();
    for cand in subs {
        if !reps.iter().any(|r| are_conjugate(group, r, &cand)) {
            reps.push(cand);
        }
    }
    Ok(reps)
}

// ---------------------------------------------------------------------------
// Conjugation maps
// ---------------------------------------------------------------------------

/// The injective map x -> gxg^-1 from `domain` into `codomain`.
#[derive(Clone, Debug)]
pub struct GroupMap {
    pub domain: Subgroup,
    pub codomain: Subgroup,
    pub witness: Gel,
}

impl GroupMap {
    pub fn new(domain: Subgroup, codomain: Subgroup, witness: Gel) -> PfsResult<GroupMap> {
        let g = domain.group().clone();
        for &x in domain.elements() {
            if !codomain.contains(g.conj(witness, x)) {
                return Err(PfsError::BadInput(
                    "witness does not conjugate the domain into the codomain".into(),
                ));
            }
        }
        Ok(GroupMap { domain, codomain, witness })
    }

    pub fn apply(&self, x: Gel) -> Gel {
        self.domain.group().conj(self.witness, x)
    }

    /// Images of the (sorted) domain elements; two witnesses inducing the
    /// same restriction give equal image vectors.
    pub fn images(&self) -> Vec<Gel> {
        self.domain.elements().iter().map(|&x| self.apply(x)).collect()
    }

    pub fn image_subgroup(&self) -> Subgroup {
        let mut elems = self.images();
        elems.sort_unstable();
        Subgroup { group: self.domain.group().clone(), elems }
    }
}

// ---------------------------------------------------------------------------
// JSON input format
// ---------------------------------------------------------------------------

/// Group input file: either permutation generators in cycle notation
/// (0-based points) or a full multiplication table.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupInput {
    #[serde(default)]
    pub permutations: Option<Vec<Vec<Vec<usize>>>>,
    #[serde(default)]
    pub table: Option<Vec<Vec<u16>>>,
}

pub fn group_from_json(text: &str, name: &str) -> PfsResult<Arc<Group>> {
    let input: GroupInput =
        serde_json::from_str(text).map_err(|e| PfsError::BadInput(format!("group JSON: {e}")))?;
    match (input.permutations, input.table) {
        (Some(perms), None) => {
            let deg = perms
                .iter()
                .flat_map(|cycles| cycles.iter().flatten())
                .max()
                .map_or(1, |&m| m + 1);
            let gens: PfsResult<Vec<Perm>> =
                perms.iter().map(|cycles| Perm::from_cycles(deg, cycles)).collect();
            Group::from_permutations(&gens?, name)
        }
        (None, Some(table)) => Group::from_table(table, name),
        _ => Err(PfsError::BadInput(
            "group JSON must contain exactly one of \"permutations\" or \"table\"".into(),
        )),
    }
}

#[cfg(test)]
mod tests;

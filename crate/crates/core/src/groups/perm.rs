//! Permutations in one-line notation and deterministic group closure.

use crate::error::{PfsError, PfsResult};
use std::collections::HashMap;

/// A permutation of {0, .., deg-1}; `p.apply(x) = p[x]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(deg: usize) -> Perm {
        Perm((0..deg).collect())
    }

    /// Build from disjoint-or-not cycles on {0, .., deg-1}.
    pub fn from_cycles(deg: usize, cycles: &[Vec<usize>]) -> PfsResult<Perm> {
        let mut p: Vec<usize> = (0..deg).collect();
        for cyc in cycles {
            for &pt in cyc {
                if pt >= deg {
                    return Err(PfsError::BadInput(format!(
                        "cycle point {pt} out of range (degree {deg})"
                    )));
                }
            }
            for i in 0..cyc.len() {
                p[cyc[i]] = cyc[(i + 1) % cyc.len()];
            }
        }
        let perm = Perm(p);
        if !perm.is_bijection() {
            return Err(PfsError::BadInput("cycles do not define a permutation".into()));
        }
        Ok(perm)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        for &v in &self.0 {
            if v >= self.0.len() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    /// Function composition: (self . other)(x) = self(other(x)).
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn extend_to(&self, deg: usize) -> Perm {
        let mut v = self.0.clone();
        v.extend(v.len()..deg);
        Perm(v)
    }
}

/// Deterministic closure of a generating set: breadth-first over products
/// `x * g`, new elements of each layer sorted lexicographically before they
/// are labelled. The identity always receives label 0.
///
/// Returns the ordered element list and the labels of the generators.
pub fn closure_bfs(gens: &[Perm], bound: usize) -> PfsResult<(Vec<Perm>, Vec<usize>)> {
    let deg = gens.iter().map(Perm::degree).max().unwrap_or(1);
    let gens: Vec<Perm> = gens.iter().map(|g| g.extend_to(deg)).collect();
    let id = Perm::identity(deg);
    let mut order: Vec<Perm> = vec![id.clone()];
    let mut seen: HashMap<Perm, usize> = HashMap::from([(id.clone(), 0)]);
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut fresh: Vec<Perm> = Vec::new();
        for x in &frontier {
            for g in &gens {
                let y = x.compose(g);
                if !seen.contains_key(&y) && !fresh.contains(&y) {
                    fresh.push(y);
                }
            }
        }
        fresh.sort();
        for y in &fresh {
            seen.insert(y.clone(), order.len());
            order.push(y.clone());
            if order.len() > bound {
                return Err(PfsError::BoundExceeded(format!(
                    "group order exceeds the bound {bound}"
                )));
            }
        }
        frontier = fresh;
    }
    let gen_ids = gens.iter().map(|g| seen[g]).collect();
    Ok((order, gen_ids))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_a4_generators() {
        // (0 1)(2 3) and (0 1 2)
        let a = Perm::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let b = Perm::from_cycles(4, &[vec![0, 1, 2]]).unwrap();
        let (els, gens) = closure_bfs(&[a.clone(), b.clone()], 1000).unwrap();
        assert_eq!(els.len(), 12);
        assert_eq!(els[gens[0]], a);
        assert_eq!(els[gens[1]], b);
    }

    #[test]
    fn closure_of_a5_generators() {
        let a = Perm::from_cycles(5, &[vec![0, 1, 2, 3, 4]]).unwrap();
        let b = Perm::from_cycles(5, &[vec![0, 1, 2]]).unwrap();
        let (els, _) = closure_bfs(&[a, b], 1000).unwrap();
        assert_eq!(els.len(), 60);
    }

    #[test]
    fn empty_generating_set_gives_trivial_group() {
        let (els, _) = closure_bfs(&[], 1000).unwrap();
        assert_eq!(els.len(), 1);
    }

    #[test]
    fn bound_is_enforced() {
        let a = Perm::from_cycles(5, &[vec![0, 1, 2, 3, 4]]).unwrap();
        let b = Perm::from_cycles(5, &[vec![0, 1, 2]]).unwrap();
        assert!(matches!(
            closure_bfs(&[a, b], 59),
            Err(PfsError::BoundExceeded(_))
        ));
    }
}

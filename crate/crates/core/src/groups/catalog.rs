//! Catalog of named groups with documented canonical generators.
//!
//! Supported names:
//! * `C<n>` — cyclic of order n (acting on n points);
//! * `V4` — Klein four group;
//! * `D<m>` — dihedral of order m (m even, m >= 6);
//! * `Q8` — quaternions, by left translation on {1,i,j,k,-1,-i,-j,-k};
//! * `A4`, `A5`, `S4` — alternating/symmetric, natural generators;
//! * `SL23` — SL(2,3), acting on the 8 nonzero vectors of F_3^2;
//! * `C3_semi_Q8` — the semidirect product C3 x| Q8 of order 24, where Q8
//!   acts on C3 through its quotient Q8/<i> of order 2, j and k inverting
//!   C3 and <i> acting trivially (this reading of "semidirect product of C3
//!   over Q8" is fixed here; experiments downstream report whatever block
//!   data the group actually yields);
//! * `AxB` — direct product of catalog entries, e.g. `V4xC3`.

use super::{Group, Perm};
use crate::error::{PfsError, PfsResult};
use std::sync::Arc;

pub fn catalog(name: &str) -> PfsResult<Arc<Group>> {
    if let Some(pos) = name.find('x') {
        let (left, right) = (&name[..pos], &name[pos + 1..]);
        let a = catalog(left)?;
        let b = catalog(right)?;
        return direct_product(&a, &b, name);
    }
    match name {
        "V4" => {
            let g1 = Perm::from_cycles(4, &[vec![0, 1], vec![2, 3]])?;
            let g2 = Perm::from_cycles(4, &[vec![0, 2], vec![1, 3]])?;
            Group::from_permutations(&[g1, g2], name)
        }
        "Q8" => quaternions(),
        "A4" => {
            let g1 = Perm::from_cycles(4, &[vec![0, 1], vec![2, 3]])?;
            let g2 = Perm::from_cycles(4, &[vec![0, 1, 2]])?;
            Group::from_permutations(&[g1, g2], name)
        }
        "A5" => {
            let g1 = Perm::from_cycles(5, &[vec![0, 1, 2, 3, 4]])?;
            let g2 = Perm::from_cycles(5, &[vec![0, 1, 2]])?;
            Group::from_permutations(&[g1, g2], name)
        }
        "S4" => {
            let g1 = Perm::from_cycles(4, &[vec![0, 1]])?;
            let g2 = Perm::from_cycles(4, &[vec![0, 1, 2, 3]])?;
            Group::from_permutations(&[g1, g2], name)
        }
        "SL23" => sl23(),
        "C3_semi_Q8" => c3_semi_q8(),
        _ => {
            if let Some(n) = name.strip_prefix('C').and_then(|s| s.parse::<usize>().ok()) {
                if n == 0 {
                    return Err(PfsError::BadInput("C0 is not a group".into()));
                }
                if n == 1 {
                    return Group::from_permutations(&[], name);
                }
                let cyc = Perm::from_cycles(n, &[(0..n).collect()])?;
                return Group::from_permutations(&[cyc], name);
            }
            if let Some(m) = name.strip_prefix('D').and_then(|s| s.parse::<usize>().ok()) {
                if m % 2 != 0 || m < 6 {
                    return Err(PfsError::BadInput(format!(
                        "D{m}: dihedral catalog entries need even order >= 6 (use V4 for order 4)"
                    )));
                }
                let n = m / 2;
                let r = Perm::from_cycles(n, &[(0..n).collect()])?;
                let s = Perm((0..n).map(|i| (n - i) % n).collect());
                return Group::from_permutations(&[r, s], name);
            }
            Err(PfsError::BadInput(format!("unknown catalog group {name:?}")))
        }
    }
}

pub fn direct_product(a: &Arc<Group>, b: &Arc<Group>, name: &str) -> PfsResult<Arc<Group>> {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    if n > super::DEFAULT_ORDER_BOUND {
        return Err(PfsError::BoundExceeded(format!("product order {n} exceeds bound")));
    }
    let idx = |x: usize, y: usize| x * nb + y;
    let mut table = vec![vec![0u16; n]; n];
    for x1 in 0..na {
        for y1 in 0..nb {
            for x2 in 0..na {
                for y2 in 0..nb {
                    table[idx(x1, y1)][idx(x2, y2)] = idx(
                        a.mul(x1 as u16, x2 as u16) as usize,
                        b.mul(y1 as u16, y2 as u16) as usize,
                    ) as u16;
                }
            }
        }
    }
    Group::from_table(table, name)
}

// Quaternion units encoded as axis + 4*negative, axes (1, i, j, k).
fn quat_mul(x: usize, y: usize) -> usize {
    const AXIS: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let (ax, nx) = (x % 4, x >= 4);
    let (ay, ny) = (y % 4, y >= 4);
    let (az, flip) = AXIS[ax][ay];
    let neg = nx ^ ny ^ flip;
    az + if neg { 4 } else { 0 }
}

fn quaternions() -> PfsResult<Arc<Group>> {
    let left = |g: usize| Perm((0..8).map(|x| quat_mul(g, x)).collect());
    Group::from_permutations(&[left(1), left(2)], "Q8")
}

fn sl23() -> PfsResult<Arc<Group>> {
    // act on the 8 nonzero vectors of F_3^2, listed lexicographically
    let vecs: Vec<(u8, u8)> = (0..3u8)
        .flat_map(|a| (0..3u8).map(move |b| (a, b)))
        .filter(|&(a, b)| (a, b) != (0, 0))
        .collect();
    let pos = |v: (u8, u8)| vecs.iter().position(|&w| w == v).unwrap();
    let act = |m: [[u8; 2]; 2]| {
        Perm(
            vecs.iter()
                .map(|&(x, y)| {
                    pos((
                        (m[0][0] * x + m[0][1] * y) % 3,
                        (m[1][0] * x + m[1][1] * y) % 3,
                    ))
                })
                .collect(),
        )
    };
    let t = act([[1, 1], [0, 1]]);
    let s = act([[0, 2], [1, 0]]);
    Group::from_permutations(&[t, s], "SL23")
}

fn c3_semi_q8() -> PfsResult<Arc<Group>> {
    // pairs (c, q), c in Z/3, q a quaternion unit; (c,q)(c',q') =
    // (c + s(q) c', qq') with s = -1 exactly on the <i>-coset of j
    let sgn = |q: usize| if q % 4 <= 1 { 1usize } else { 2 };
    let idx = |c: usize, q: usize| c * 8 + q;
    let mul = |x: usize, y: usize| {
        let (cx, qx) = (x / 8, x % 8);
        let (cy, qy) = (y / 8, y % 8);
        idx((cx + sgn(qx) * cy) % 3, quat_mul(qx, qy))
    };
    let left = |g: usize| Perm((0..24).map(|x| mul(g, x)).collect());
    // generators: c, i, j
    Group::from_permutations(&[left(idx(1, 0)), left(idx(0, 1)), left(idx(0, 2))], "C3_semi_Q8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{centralizer, Subgroup};

    #[test]
    fn catalog_orders() {
        for (name, order) in [
            ("C1", 1),
            ("C6", 6),
            ("V4", 4),
            ("D6", 6),
            ("D8", 8),
            ("D10", 10),
            ("Q8", 8),
            ("A4", 12),
            ("A5", 60),
            ("S4", 24),
            ("SL23", 24),
            ("C3_semi_Q8", 24),
            ("V4xC3", 12),
            ("C2xC2", 4),
        ] {
            assert_eq!(catalog(name).unwrap().order(), order, "{name}");
        }
        assert!(catalog("F20").is_err());
        assert!(catalog("D7").is_err());
    }

    #[test]
    fn v4_is_elementary_abelian() {
        let g = catalog("V4").unwrap();
        assert!(g.is_abelian());
        assert_eq!(g.exponent(), 2);
    }

    #[test]
    fn q8_has_unique_involution() {
        let g = catalog("Q8").unwrap();
        let invs: Vec<_> = g.elements().filter(|&a| a != 0 && g.element_order(a) == 2).collect();
        assert_eq!(invs.len(), 1);
        assert!(!g.is_abelian());
    }

    #[test]
    fn sl23_center_has_order_two() {
        let g = catalog("SL23").unwrap();
        let z = centralizer(&g, &Subgroup::full(g.clone()));
        assert_eq!(z.order(), 2);
    }

    #[test]
    fn c3_semi_q8_structure() {
        let g = catalog("C3_semi_Q8").unwrap();
        assert_eq!(g.order(), 24);
        assert!(!g.is_abelian());
        // the generator of the C3 factor generates a normal subgroup of
        // order 3 on which some element acts by inversion
        let c = g.generator_labels()[0];
        let c3 = Subgroup::generated_by(g.clone(), &[c]);
        assert_eq!(c3.order(), 3);
        assert!(c3.is_normal_in(&Subgroup::full(g.clone())));
        let inverted = g.elements().any(|x| g.conj(x, c) == g.inv(c));
        assert!(inverted);
        // <i> (second generator) centralizes C3
        let i = g.generator_labels()[1];
        assert_eq!(g.conj(i, c), c);
    }

    #[test]
    fn full_associativity_small_and_sampled_large() {
        for name in ["V4", "Q8", "A4", "S4", "SL23", "C3_semi_Q8"] {
            let g = catalog(name).unwrap();
            if g.order() <= 24 {
                for a in g.elements() {
                    for b in g.elements() {
                        for c in g.elements() {
                            assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                        }
                    }
                }
            }
        }
        let g = catalog("A5").unwrap();
        let mut s = 0xDEADBEEFu64;
        for _ in 0..1000 {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            let a = (s % 60) as u16;
            let b = ((s >> 8) % 60) as u16;
            let c = ((s >> 16) % 60) as u16;
            assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        }
    }

    #[test]
    fn class_equation_holds_up_to_60() {
        for name in ["C6", "V4", "D10", "Q8", "A4", "S4", "SL23", "C3_semi_Q8", "A5"] {
            let g = catalog(name).unwrap();
            for s in g.elements() {
                let sub = Subgroup::generated_by(g.clone(), &[s]);
                let cent = centralizer(&g, &sub);
                let class: std::collections::BTreeSet<u16> =
                    g.elements().map(|x| g.conj(x, s)).collect();
                assert_eq!(cent.order() * class.len(), g.order(), "{name} elt {s}");
            }
        }
    }
}

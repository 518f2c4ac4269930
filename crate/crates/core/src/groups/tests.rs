use super::catalog::catalog;
use super::*;

fn subgroup_gen(g: &Arc<Group>, perm_cycles: &[Vec<usize>]) -> Subgroup {
    // find the element whose permutation matches the given cycles
    let deg = g.permutations()[0].degree();
    let target = Perm::from_cycles(deg, perm_cycles).unwrap();
    let label = g
        .permutations()
        .iter()
        .position(|p| *p == target)
        .expect("permutation not found in group") as Gel;
    Subgroup::generated_by(g.clone(), &[label])
}

#[test]
fn centralizer_of_sylow2_in_a4_is_itself() {
    let a4 = catalog("A4").unwrap();
    let syl = sylow_subgroup(&a4, 2);
    assert_eq!(syl.order(), 4);
    let c = centralizer(&a4, &syl);
    assert_eq!(c, syl);
}

#[test]
fn centralizer_of_involution_in_a5_is_klein_four() {
    let a5 = catalog("A5").unwrap();
    let x = subgroup_gen(&a5, &[vec![0, 1], vec![2, 3]]);
    assert_eq!(x.order(), 2);
    let c = centralizer(&a5, &x);
    assert_eq!(c.order(), 4);
    assert_eq!(c.group().exponent() % 2, 0);
    assert!(c.contains_subgroup(&x));
    // exponent 2, so Klein four
    assert!(c.elements().iter().all(|&g| a5.mul(g, g) == 0));
}

#[test]
fn centralizer_of_trivial_subgroup_is_everything() {
    let a4 = catalog("A4").unwrap();
    let c = centralizer(&a4, &Subgroup::trivial(a4.clone()));
    assert_eq!(c.order(), 12);
}

#[test]
fn p_subgroups_of_v4() {
    let v4 = catalog("V4").unwrap();
    let reps = p_subgroups_up_to_conjugacy(&v4, 2).unwrap();
    // 1, X, Y, Z, D — V4 is abelian so no fusion
    assert_eq!(reps.len(), 5);
    let orders: Vec<usize> = reps.iter().map(Subgroup::order).collect();
    assert_eq!(orders, vec![1, 2, 2, 2, 4]);
}

#[test]
fn p_subgroups_of_a5_up_to_conjugacy() {
    let a5 = catalog("A5").unwrap();
    let reps = p_subgroups_up_to_conjugacy(&a5, 2).unwrap();
    let orders: Vec<usize> = reps.iter().map(Subgroup::order).collect();
    assert_eq!(orders, vec![1, 2, 4]);
}

#[test]
fn p_subgroups_for_prime_not_dividing() {
    let c3 = catalog("C3").unwrap();
    let reps = p_subgroups_up_to_conjugacy(&c3, 2).unwrap();
    assert_eq!(reps.len(), 1);
    assert!(reps[0].is_trivial());
}

#[test]
fn conjugators_examples() {
    let a4 = catalog("A4").unwrap();
    let full = Subgroup::full(a4.clone());
    assert_eq!(conjugators(&a4, &full, &full).len(), 12);

    // all 12 elements of A4 conjugate <(01)(23)> into the Sylow 2-subgroup
    let q = subgroup_gen(&a4, &[vec![0, 1], vec![2, 3]]);
    let syl = sylow_subgroup(&a4, 2);
    assert_eq!(conjugators(&a4, &q, &syl).len(), 12);

    // in A5 the self-conjugators of <(01)(23)> form its normalizer, which
    // for an order-2 subgroup is the centralizer of the involution: the
    // Klein four group (order 4; A5 has no subgroup of order 8 at all)
    let a5 = catalog("A5").unwrap();
    let x = subgroup_gen(&a5, &[vec![0, 1], vec![2, 3]]);
    let selfc = conjugators(&a5, &x, &x);
    assert_eq!(selfc.len(), 4);
    assert_eq!(normalizer(&a5, &x).order(), 4);
    assert_eq!(selfc, centralizer(&a5, &x).elements());
}

#[test]
fn conjugators_actually_conjugate() {
    let a5 = catalog("A5").unwrap();
    let x = subgroup_gen(&a5, &[vec![0, 1], vec![2, 3]]);
    let syl = sylow_subgroup(&a5, 2);
    for g in conjugators(&a5, &x, &syl) {
        for &q in x.elements() {
            assert!(syl.contains(a5.conj(g, q)));
        }
    }
}

#[test]
fn lagrange_for_all_lattice_members() {
    for name in ["V4", "Q8", "A4", "S4", "C3_semi_Q8"] {
        let g = catalog(name).unwrap();
        let syl = sylow_subgroup(&g, 2);
        for s in subgroups_of(&syl).unwrap() {
            assert_eq!(g.order() % s.order(), 0, "{name}");
        }
    }
}

#[test]
fn subgroup_lattice_of_q8() {
    let q8 = catalog("Q8").unwrap();
    let subs = subgroups_of(&Subgroup::full(q8)).unwrap();
    // 1, Z, three C4's, Q8
    assert_eq!(subs.len(), 6);
    let orders: Vec<usize> = subs.iter().map(Subgroup::order).collect();
    assert_eq!(orders, vec![1, 2, 4, 4, 4, 8]);
}

#[test]
fn transversal_covers_group() {
    let s4 = catalog("S4").unwrap();
    let syl = sylow_subgroup(&s4, 2);
    let full = Subgroup::full(s4.clone());
    let reps = syl.left_transversal(&full);
    assert_eq!(reps.len(), 3);
}

#[test]
fn group_map_images_and_dedup() {
    let a4 = catalog("A4").unwrap();
    let q = subgroup_gen(&a4, &[vec![0, 1], vec![2, 3]]);
    let syl = sylow_subgroup(&a4, 2);
    let gm = GroupMap::new(q.clone(), syl.clone(), 0).unwrap();
    assert_eq!(gm.images(), q.elements());
    // a central witness induces the same map as the identity witness
    for &c in centralizer(&a4, &q).elements() {
        let gm2 = GroupMap::new(q.clone(), syl.clone(), c).unwrap();
        assert_eq!(gm2.images(), gm.images());
    }
}

#[test]
fn json_group_input() {
    let g = group_from_json(r#"{"permutations": [[[0,1],[2,3]], [[0,1,2]]]}"#, "file").unwrap();
    assert_eq!(g.order(), 12);
    let table = r#"{"table": [[0,1],[1,0]]}"#;
    let c2 = group_from_json(table, "file").unwrap();
    assert_eq!(c2.order(), 2);
    assert!(group_from_json(r#"{"table": [[0,1],[1,1]]}"#, "bad").is_err());
    assert!(group_from_json(r#"{}"#, "bad").is_err());
}

#[test]
fn from_permutations_rejects_oversized_groups() {
    // S8 has order 40320, far over the bound
    let a = Perm::from_cycles(8, &[vec![0, 1]]).unwrap();
    let b = Perm::from_cycles(8, &[(0..8).collect()]).unwrap();
    assert!(matches!(
        Group::from_permutations(&[a, b], "S8"),
        Err(PfsError::BoundExceeded(_))
    ));
}

use super::*;
use crate::groups::catalog::catalog;
use crate::pfs::build::BlockSession;
use crate::pfs::compare_files;
use std::collections::BTreeMap;
use std::sync::LazyLock;

fn session(name: &str, degree: Option<u32>) -> BlockSession {
    let g = catalog(name).unwrap();
    let mut s = BlockSession::new(g, 2, 0, degree).unwrap();
    s.block_index = s.principal_index();
    s
}

// the Klein-four builds are reused across many tests
static V4: LazyLock<PointedFusionSystem> =
    LazyLock::new(|| session("V4", None).build(1).unwrap());
static A4: LazyLock<PointedFusionSystem> =
    LazyLock::new(|| session("A4", None).build(1).unwrap());
static A5: LazyLock<PointedFusionSystem> =
    LazyLock::new(|| session("A5", Some(2)).build(1).unwrap());

fn mult_by_id(pfs: &PointedFusionSystem) -> BTreeMap<(String, String), usize> {
    let mut m = BTreeMap::new();
    for (i, oi) in pfs.objects.iter().enumerate() {
        for (j, oj) in pfs.objects.iter().enumerate() {
            if pfs.mult[i][j] != 0 {
                m.insert((oi.id.clone(), oj.id.clone()), pfs.mult[i][j]);
            }
        }
    }
    m
}

#[test]
fn v4_multiposet_matches_left_diagram() {
    let pfs = &*V4;
    assert_eq!(pfs.objects.len(), 5);
    let ids: Vec<&str> = pfs.objects.iter().map(|o| o.id.as_str()).collect();
    assert_eq!(ids, vec!["1_1", "X_1", "Y_1", "Z_1", "D_1"]);
    let m = mult_by_id(pfs);
    let mut expected = BTreeMap::new();
    for id in &ids {
        expected.insert((id.to_string(), id.to_string()), 1);
    }
    for r in ["X_1", "Y_1", "Z_1", "D_1"] {
        expected.insert(("1_1".into(), r.into()), 1);
    }
    for r in ["X_1", "Y_1", "Z_1"] {
        expected.insert((r.into(), "D_1".into()), 1);
    }
    assert_eq!(m, expected);
    // abelian G = D: fusion is inclusions only
    assert_eq!(pfs.fusion.total_morphisms(), 12);
    assert_eq!(pfs.fusion.aut_order(4), 1);
    assert_eq!(pfs.minimal_objects().len(), 1);
    assert!(pfs.ell_check());
}

#[test]
fn a4_multiposet_matches_middle_diagram() {
    let pfs = &*A4;
    assert_eq!(pfs.objects.len(), 7);
    let m = mult_by_id(pfs);
    for i in 1..=3 {
        for r in ["X_1", "Y_1", "Z_1", "D_1"] {
            assert_eq!(m.get(&(format!("1_{i}"), r.into())), Some(&1), "1_{i} -> {r}");
        }
    }
    for r in ["X_1", "Y_1", "Z_1"] {
        assert_eq!(m.get(&(r.into(), "D_1".into())), Some(&1));
    }
    // nothing between the order-2 subgroups
    assert_eq!(m.get(&("X_1".into(), "Y_1".into())), None);
    assert_eq!(m.len(), 7 + 12 + 3);
    // Aut_F(D) = N/C of the self-normalizing... for A4: A4/V4 of order 3
    assert_eq!(pfs.fusion.aut_order(4), 3);
    assert_eq!(pfs.minimal_objects().len(), 3);
    assert!(pfs.ell_check());
}

#[test]
fn a5_multiposet_matches_right_diagram() {
    let pfs = &*A5;
    assert_eq!(pfs.objects.len(), 7);
    let m = mult_by_id(pfs);
    // 1_1 (the trivial-module point) sits below X, Y, Z with multiplicity 1
    for r in ["X_1", "Y_1", "Z_1", "D_1"] {
        assert_eq!(m.get(&("1_1".into(), r.into())), Some(&1), "{r}");
    }
    // 1_2 and 1_3 skip the middle layer and land doubly in D_1
    for i in [2, 3] {
        for r in ["X_1", "Y_1", "Z_1"] {
            assert_eq!(m.get(&(format!("1_{i}"), r.into())), None);
        }
        assert_eq!(m.get(&(format!("1_{i}"), "D_1".into())), Some(&2));
    }
    for r in ["X_1", "Y_1", "Z_1"] {
        assert_eq!(m.get(&(r.into(), "D_1".into())), Some(&1));
    }
    assert_eq!(pfs.minimal_objects().len(), 3);
    assert!(pfs.ell_check());
    // X, Y, Z pairwise F-isomorphic (fused by the order-3 automorphism)
    for q in [1usize, 2, 3] {
        for p in [1usize, 2, 3] {
            let isos = pfs
                .fusion
                .hom(q, p)
                .iter()
                .filter(|mm| mm.image_index == p)
                .count();
            assert!(isos >= 1, "no iso {q} -> {p}");
        }
    }
}

#[test]
fn identity_morphism_acts_trivially() {
    let pfs = &*A5;
    for q in 0..pfs.fusion.lattice.len() {
        let idx = pfs
            .fusion
            .find(q, q, pfs.fusion.lattice[q].elements())
            .expect("identity morphism");
        let act = pfs.find_action(q, q, idx);
        for &(x, y) in &act.point_map {
            assert_eq!(x, y);
        }
    }
}

#[test]
fn stable_parts_are_uniform_with_multiplicity_one() {
    let sv4 = V4.stable_part();
    let sa4 = A4.stable_part();
    let sa5 = A5.stable_part();
    for s in [&sv4, &sa4, &sa5] {
        assert_eq!(s.objects.len(), 4);
        assert_eq!(s.max_multiplicity(), 1);
    }
    // pairwise isomorphic as multiposets
    assert!(iso_test(&sv4, &sa4, IsoMode::Multiposet).unwrap().is_some());
    assert!(iso_test(&sa4, &sa5, IsoMode::Multiposet).unwrap().is_some());
    assert!(iso_test(&sv4, &sa5, IsoMode::Multiposet).unwrap().is_some());
}

#[test]
fn full_multiposets_distinguish_the_three_cases() {
    assert!(iso_test(&V4, &A4, IsoMode::Multiposet).unwrap().is_none());
    assert!(iso_test(&V4, &A5, IsoMode::Multiposet).unwrap().is_none());
    assert!(iso_test(&A4, &A5, IsoMode::Multiposet).unwrap().is_none());
    // self-comparisons succeed in every mode
    for pfs in [&*V4, &*A4, &*A5] {
        assert!(iso_test(pfs, pfs, IsoMode::Multiposet).unwrap().is_some());
        assert!(iso_test(pfs, pfs, IsoMode::Category).unwrap().is_some());
        let w = iso_test(pfs, pfs, IsoMode::FIdentical).unwrap().unwrap();
        assert!(w.object_map.iter().all(|(a, b)| a == b) || !w.object_map.is_empty());
    }
}

#[test]
fn f_identical_mode_rejects_different_fusion() {
    assert!(matches!(
        iso_test(&A4, &A5, IsoMode::FIdentical),
        Err(crate::error::PfsError::BadInput(_))
    ));
}

#[test]
fn seed_invariance_f_identical() {
    let s = session("A4", None);
    let builds: Vec<PointedFusionSystem> = (0..10).map(|seed| s.build(seed).unwrap()).collect();
    for w in builds.windows(2) {
        assert!(iso_test(&w[0], &w[1], IsoMode::FIdentical).unwrap().is_some());
    }
    // stable parts inherit the isomorphism
    for w in builds.windows(2) {
        let (a, b) = (w[0].stable_part(), w[1].stable_part());
        assert!(iso_test(&a, &b, IsoMode::FIdentical).unwrap().is_some());
    }
}

#[test]
fn prop44_reports() {
    let r4 = prop44_check(&A4);
    assert_eq!(r4.c_max_cartan, 2);
    assert_eq!(r4.m_max_multiplicity, 1);
    assert_eq!(r4.ell, 3);
    assert_eq!(r4.dim_source_algebra, 12);
    assert!(r4.all_ok());
    // 12 <= 2 * 1 * 9 = 18
    assert_eq!(r4.checks[2].rhs, 18);

    let r5 = prop44_check(&A5);
    assert_eq!(r5.c_max_cartan, 4);
    assert_eq!(r5.m_max_multiplicity, 2);
    assert_eq!(r5.ell, 3);
    assert_eq!(r5.dim_source_algebra, 44);
    assert!(r5.all_ok());
    assert_eq!(r5.checks[2].rhs, 4 * 4 * 9);
}

#[test]
fn fusion_iso_between_klein_cases() {
    // A4 and A5 principal blocks have the same (abstract) fusion system on V4
    assert!(fusion_iso(&A4.fusion, &A5.fusion).unwrap());
    // the nilpotent V4 fusion is different
    assert!(!fusion_iso(&V4.fusion, &A4.fusion).unwrap());
    assert!(fusion_iso(&V4.fusion, &V4.fusion).unwrap());
}

#[test]
fn serialization_round_trip_and_determinism() {
    let pfs = &*A5;
    let file = to_file_json(pfs);
    let text = serde_json::to_string_pretty(&file).unwrap();
    let parsed = from_file_json(&text).unwrap();
    assert_eq!(parsed, file);
    validate_file(&parsed).unwrap();

    // identical config and seed give byte-identical output
    let again = to_file_json(&session("A5", Some(2)).build(1).unwrap());
    assert_eq!(serde_json::to_string_pretty(&again).unwrap(), text);

    // file-level comparison agrees with the in-memory path
    let f4 = to_file_json(&A4);
    assert!(compare_files(&file, &file, IsoMode::Multiposet).unwrap().is_some());
    assert!(compare_files(&file, &file, IsoMode::FIdentical).unwrap().is_some());
    assert!(compare_files(&f4, &file, IsoMode::Multiposet).unwrap().is_none());
    // stable parts of different blocks: multiposet-isomorphic at file level
    let sa = to_file_json(&A4.stable_part());
    let sb = to_file_json(&A5.stable_part());
    assert!(compare_files(&sa, &sb, IsoMode::Multiposet).unwrap().is_some());
    assert!(matches!(
        compare_files(&sa, &sb, IsoMode::FIdentical),
        Err(crate::error::PfsError::BadInput(_))
    ));
}

#[test]
fn schema_is_versioned() {
    let mut file = to_file_json(&V4);
    file.schema = "pfs.v2".into();
    let text = serde_json::to_string(&file).unwrap();
    assert!(from_file_json(&text).is_err());
}

#[test]
fn dot_export_hasse_covers() {
    let d5 = to_dot(&A5);
    // 1_2 -> D_1 is a covering edge with multiplicity 2
    assert!(d5.contains("\"1_2\" -> \"D_1\" [label=\"\u{00d7}2\", penwidth=2.0]"));
    // 1_1 -> D_1 is not a cover (it factors through X_1)
    assert!(!d5.contains("\"1_1\" -> \"D_1\""));
    assert!(d5.contains("\"1_1\" -> \"X_1\""));
    assert!(d5.contains("\"X_1\" -> \"D_1\""));
    // every covering edge appears exactly once
    let count = d5.matches("\"X_1\" -> \"D_1\"").count();
    assert_eq!(count, 1);
}

#[test]
fn category_mode_counts_hom_sets() {
    // V4 block: between comparable objects exactly the inclusion survives
    let h = super::iso::hom_cardinalities(&V4);
    let i11 = V4.object_by_id("1_1").unwrap();
    let ix = V4.object_by_id("X_1").unwrap();
    let id1 = V4.object_by_id("D_1").unwrap();
    assert_eq!(h[i11][ix], 1);
    assert_eq!(h[ix][id1], 1);
    assert_eq!(h[ix][i11], 0);
    // A5: X_1 -> D_1 admits the inclusion only, but X_1 -> Y_1 is nonempty
    let h5 = super::iso::hom_cardinalities(&A5);
    let x = A5.object_by_id("X_1").unwrap();
    let y = A5.object_by_id("Y_1").unwrap();
    assert!(h5[x][y] >= 1);
}

#[test]
fn pair_rotation_keeps_f_identical_class() {
    // A4: the maximal pair is unique, so rotation changes nothing
    let s = session("A4", None);
    let a = s.build_with_choice(1, 0).unwrap();
    let b = s.build_with_choice(1, 5).unwrap();
    assert!(iso_test(&a, &b, IsoMode::FIdentical).unwrap().is_some());
}

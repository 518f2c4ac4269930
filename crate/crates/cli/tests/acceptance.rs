//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Run with `cargo test -p pfs-cli --test acceptance -- --nocapture` to see
//! the per-criterion lines.

use pfs_cli::commands::verify::{self, klein4_builds, locality_check, CATALOG_SWEEP};
use pfs_core::groups::catalog::catalog;
use pfs_core::pfs::{iso_test, to_file_json, BlockSession, IsoMode, PointedFusionSystem};
use std::collections::BTreeMap;
use std::sync::LazyLock;

static KLEIN4: LazyLock<Vec<(&'static str, PointedFusionSystem)>> =
    LazyLock::new(|| klein4_builds(0).expect("klein-four builds succeed"));

fn mult_map(pfs: &PointedFusionSystem) -> BTreeMap<(String, String), usize> {
    let file = to_file_json(pfs);
    file.multiplicities
        .iter()
        .map(|(a, b, m)| ((a.clone(), b.clone()), *m))
        .collect()
}

#[test]
fn criterion_1_klein4_golden() {
    // golden fixtures match
    assert!(verify::run("klein4", false, 0).unwrap(), "klein4 fixtures mismatch");
    // and the stated values hold verbatim
    let builds = &*KLEIN4;

    let (_, v4) = &builds[0];
    assert_eq!(v4.objects.len(), 5);
    let m = mult_map(v4);
    assert_eq!(m.len(), 12);
    assert!(m.values().all(|&x| x == 1));

    let (_, a4) = &builds[1];
    assert_eq!(a4.objects.len(), 7);
    let m = mult_map(a4);
    for i in 1..=3 {
        for r in ["X_1", "Y_1", "Z_1"] {
            assert_eq!(m.get(&(format!("1_{i}"), r.into())), Some(&1));
        }
    }
    for r in ["X_1", "Y_1", "Z_1"] {
        assert_eq!(m.get(&(r.to_string(), "D_1".into())), Some(&1));
    }

    let (_, a5) = &builds[2];
    assert_eq!(a5.objects.len(), 7);
    let m = mult_map(a5);
    assert_eq!(m.get(&("1_1".into(), "X_1".into())), Some(&1));
    for i in [2, 3] {
        for r in ["X_1", "Y_1", "Z_1"] {
            assert_eq!(m.get(&(format!("1_{i}"), r.into())), None);
        }
        assert_eq!(m.get(&(format!("1_{i}"), "D_1".into())), Some(&2));
    }
    for r in ["X_1", "Y_1", "Z_1"] {
        assert_eq!(m.get(&(r.to_string(), "D_1".into())), Some(&1));
    }
    println!("criterion 1 (klein-four golden reproduction): PASS");
}

#[test]
fn criterion_2_minimal_objects_equal_ell() {
    assert!(verify::run("ell", false, 0).unwrap(), "ell mismatch in the catalog sweep");
    let blocks = verify::sweep().len();
    println!("criterion 2 (minimal objects = Wedderburn count, {blocks} blocks): PASS");
}

#[test]
fn criterion_3_axiom_suite() {
    // every build validates the four pointed-refinement conditions and the
    // chain inequality internally; this re-validates from the serialized form
    assert!(verify::run("axioms", false, 0).unwrap(), "axiom violation in the sweep");
    println!("criterion 3 (pointed-refinement axioms + chain inequality): PASS");
}

#[test]
fn criterion_4_prop44_bounds() {
    assert!(verify::run("bounds", false, 0).unwrap(), "a bound failed");
    // the stated A5 inputs
    let a5 = &KLEIN4[2].1;
    assert_eq!(a5.meta.dim_source_algebra, 44);
    assert_eq!(a5.max_multiplicity(), 2);
    println!("criterion 4 (boundedness inequalities, incl. A5 dim 44, m = 2): PASS");
}

#[test]
fn criterion_5_oracle_equivalence() {
    assert!(
        verify::run("crosscheck", true, 0).unwrap(),
        "bimodule and corner multiplicities disagree"
    );
    println!("criterion 5 (bimodule oracle = idempotent multiplicities, incl. A5): PASS");
}

#[test]
fn criterion_6_locality_matches_brauer_construction() {
    let mut total = 0usize;
    for &name in CATALOG_SWEEP {
        if catalog(name).unwrap().order() > 24 {
            continue;
        }
        for p in [2u64, 3] {
            let (checked, mismatched) = locality_check(name, p, 0).unwrap();
            assert_eq!(mismatched, 0, "{name} p={p}: locality disagreement");
            total += checked;
        }
    }
    println!("criterion 6 (locality = Brauer-construction nonvanishing, {total} points): PASS");
}

#[test]
fn criterion_7_source_choice_invariance() {
    for (name, degree) in [("A4", None), ("A5", Some(2))] {
        let mut session = BlockSession::new(catalog(name).unwrap(), 2, 0, degree).unwrap();
        session.block_index = session.principal_index();
        let builds: Vec<PointedFusionSystem> =
            (0..10).map(|seed| session.build(seed).unwrap()).collect();
        for i in 0..builds.len() {
            for j in i + 1..builds.len() {
                let w = iso_test(&builds[i], &builds[j], IsoMode::FIdentical).unwrap();
                assert!(w.is_some(), "{name}: seeds {i} and {j} not F-identically isomorphic");
            }
        }
    }
    println!("criterion 7 (10-seed F-identical invariance on A4 and A5): PASS");
}

#[test]
fn criterion_8_stable_part_uniformity() {
    let builds = &*KLEIN4;
    let stables: Vec<PointedFusionSystem> =
        builds.iter().map(|(_, pfs)| pfs.stable_part()).collect();
    for s in &stables {
        assert_eq!(s.objects.len(), 4);
        assert_eq!(s.max_multiplicity(), 1, "stable multiplicity above 1");
    }
    for i in 0..3 {
        for j in i + 1..3 {
            assert!(
                iso_test(&stables[i], &stables[j], IsoMode::Multiposet).unwrap().is_some(),
                "stable parts of {} and {} not isomorphic",
                builds[i].0,
                builds[j].0
            );
        }
    }
    println!("criterion 8 (stable parts pairwise isomorphic, all multiplicities 1): PASS");
}

#[test]
fn criterion_9_slq8_experiment() {
    // The suite reports each block's fusion class and minimal count, and
    // passes only when two blocks share a fusion system while their pointed
    // fusion systems have different numbers of minimal objects. Under the
    // documented reading of the order-24 group the defect groups of the two
    // 2-blocks have different orders, so the suite reports the data and
    // fails loudly rather than passing vacuously.
    let found = verify::run("slq8", false, 0).unwrap();
    println!(
        "criterion 9 (order-24 experiment): {}",
        if found { "PASS" } else { "FAIL — phenomenon absent; computed data reported above" }
    );
    assert!(
        found,
        "no pair of 2-blocks of C3_semi_Q8 has isomorphic fusion systems with different \
         minimal-object counts (defect groups Q8 vs C4); see the printed block data"
    );
}

mod common;

use std::collections::BTreeSet;

use pcmult::multiplier::{schur_multiplier_in, TailedContext};
use pcmult::obstruction::{
    bogomolov, genus2_subgroup_in, has_spherical_subgroup, toral_subgroup_in, verdict, Genus2Strategy, Sweep,
    VerdictKind,
};
use pcmult::pc::{GroupTable, Limits};

#[test]
fn divisibility_chain_up_to_order_64() {
    let l = Limits::default();
    for e in common::corpus_range(1, 64) {
        let ctx = TailedContext::new(&e.presentation).unwrap();
        let mult = schur_multiplier_in(&ctx).unwrap();
        let toral = toral_subgroup_in(&ctx, &mult, Sweep::Full, &l).unwrap();
        let g2 = genus2_subgroup_in(&ctx, &mult, Genus2Strategy::Exhaustive, 0, &l).unwrap();
        assert_eq!(g2.genus2_order % toral.toral_order, 0, "{}", e.id);
        assert_eq!(mult.order() % g2.genus2_order, 0, "{}", e.id);
        assert_eq!(toral.toral_generated, toral.toral_order == mult.order());
        assert!(g2.genus2_generated, "{}", e.id);
    }
}

#[test]
fn abelian_groups_are_toral_generated() {
    let l = Limits::default();
    for e in common::corpus_range(1, 128) {
        let p = &e.presentation;
        let abelian = (0..p.len()).all(|j| (0..j).all(|i| p.conj_is_trivial(j, i)));
        if !abelian {
            continue;
        }
        let r = pcmult::obstruction::toral_subgroup(p, &l).unwrap();
        assert!(r.toral_generated, "{}", e.id);
    }
}

#[test]
fn bogomolov_trivial_through_order_27() {
    for e in common::corpus_range(1, 27) {
        assert!(bogomolov(&e.presentation, &Limits::default()).unwrap().is_trivial(), "{}", e.id);
    }
}

#[test]
fn isoclinic_counterexamples_share_bogomolov() {
    let b: Vec<_> = ["243.28.pc", "243.29.pc", "243.30.pc"]
        .iter()
        .map(|f| bogomolov(&common::group(f).presentation, &Limits::default()).unwrap())
        .collect();
    assert_eq!(b[0].torsion, [3]);
    assert!(b.iter().all(|x| *x == b[0]));
}

/// Pairs of distinct involutions and the dihedral subgroup they generate.
fn spherical_by_brute_force(table: &GroupTable) -> bool {
    let n = table.order();
    let invs: Vec<usize> = (1..n).filter(|&a| table.mul(a, a) == 0).collect();
    for &x in &invs {
        for &y in &invs {
            if x == y {
                continue;
            }
            let mut sub: BTreeSet<usize> = [0, x, y].into();
            loop {
                let cur: Vec<usize> = sub.iter().copied().collect();
                let before = sub.len();
                for &a in &cur {
                    for &b in &cur {
                        sub.insert(table.mul(a, b));
                    }
                }
                if sub.len() == before {
                    break;
                }
            }
            if sub.len() >= 4 {
                return true;
            }
        }
    }
    false
}

#[test]
fn spherical_detector_matches_brute_force_through_order_24() {
    let l = Limits::default();
    for e in common::corpus_range(1, 24) {
        let table = GroupTable::build(&e.presentation, &l).unwrap();
        let (found, witness) = has_spherical_subgroup(&e.presentation, &l).unwrap();
        assert_eq!(found, spherical_by_brute_force(&table), "{}", e.id);
        assert_eq!(found, witness.is_some());
    }
}

#[test]
fn verdicts_of_named_groups() {
    let l = Limits::default();
    let kind = |f: &str| verdict(&common::group(f).presentation, &l).unwrap().kind;
    assert_eq!(kind("c5.pc"), VerdictKind::AllExtendFreely);
    assert_eq!(kind("c3xc3.pc"), VerdictKind::AllExtendNonsingularly);
    assert_eq!(kind("243.28.pc"), VerdictKind::NonExtendingExists);
    assert_eq!(kind("q8.pc"), VerdictKind::AllExtendFreely);
    let flagged = common::corpus_range(64, 64)
        .into_iter()
        .find(|e| e.id.to_string() == "64.149")
        .unwrap();
    let v = verdict(&flagged.presentation, &l).unwrap();
    assert_eq!(v.kind, VerdictKind::Indeterminate);
    assert!(v.evidence.involution_count >= 2);
}

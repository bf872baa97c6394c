mod common;

use proptest::prelude::*;
use toric_surface_lab::minimal::table_allows;
use toric_surface_lab::{
    classify_minimal, classify_subgroup, contractible_orbits, corpus, fans_isomorphic,
    is_g_minimal, minimalize, CompleteFan2D, ConjugacyLabel, MinimalError, MinimalKind,
    SymmetryGroup,
};

#[test]
fn corpus_endpoints_are_in_the_table() {
    let entries = corpus::generate(corpus::DEFAULT_SEED);
    assert!(entries.len() > 300);
    for e in &entries {
        let trace = minimalize(&e.fan, &e.group).unwrap();
        let label = classify_minimal(&trace.terminal, &e.group).unwrap();
        assert_eq!(label.group, e.label, "{}", e.origin);
        assert!(table_allows(label.kind, label.group));
    }
}

#[test]
fn every_class_has_a_minimal_seed() {
    let seeds = corpus::minimal_seeds();
    for label in ConjugacyLabel::ALL {
        assert!(seeds.iter().any(|s| s.label == label));
    }
}

#[test]
fn trace_steps_are_valid() {
    for e in corpus::generate(3) {
        let trace = minimalize(&e.fan, &e.group).unwrap();
        let mut current = e.fan.clone();
        for s in &trace.steps {
            assert_eq!(s.before, current);
            let a = s.before.self_intersections();
            assert!(s.orbit.iter().all(|&i| a[i] == -1));
            // every step contracts a whole orbit
            let g = e.group.attach(&s.before).unwrap();
            assert_eq!(g.ray_orbit(s.orbit[0]), s.orbit);
            assert_eq!(s.before.blow_down(&s.orbit).unwrap(), s.after);
            current = s.after.clone();
        }
        assert_eq!(current, trace.terminal);
        assert!(is_g_minimal(&trace.terminal, &e.group).unwrap());
    }
}

#[test]
fn minimal_surfaces_outside_the_table_do_not_occur() {
    // P2 never appears with C4; the pair is rejected before classification
    assert!(!table_allows(MinimalKind::P2, ConjugacyLabel::C4));
    assert!(!table_allows(
        MinimalKind::Hirzebruch(1),
        ConjugacyLabel::C1
    ));
    assert!(!table_allows(MinimalKind::DelPezzo6, ConjugacyLabel::C1));
    assert!(table_allows(
        MinimalKind::Hirzebruch(0),
        ConjugacyLabel::D2Prime
    ));
}

#[test]
fn not_minimal_is_reported() {
    let f1 = CompleteFan2D::projective_plane().blow_up(&[0]).unwrap();
    assert!(matches!(
        classify_minimal(&f1, &SymmetryGroup::trivial()),
        Err(MinimalError::NotMinimal { orbits: 1 })
    ));
    assert_eq!(
        contractible_orbits(&f1, &SymmetryGroup::trivial())
            .unwrap()
            .len(),
        1
    );
}

proptest! {
    #[test]
    fn trivial_group_reaches_classical_minimal_surface(fan in common::arb_fan(12)) {
        let g = SymmetryGroup::trivial();
        let trace = minimalize(&fan, &g).unwrap();
        let label = classify_minimal(&trace.terminal, &g).unwrap();
        prop_assert!(matches!(label.kind, MinimalKind::P2 | MinimalKind::P1xP1 | MinimalKind::Hirzebruch(_)));
        prop_assert_eq!(fan.len() - trace.terminal.len(), trace.len());
    }

    #[test]
    fn classification_is_stable_under_lattice_change(
        idx in 0usize..400,
        p in common::arb_unimodular(2),
    ) {
        let entries = corpus::generate(corpus::DEFAULT_SEED);
        let e = &entries[idx % entries.len()];
        let a = classify_minimal(&minimalize(&e.fan, &e.group).unwrap().terminal, &e.group).unwrap();
        let fan = e.fan.transform(&p);
        let g = e.group.conjugate_by(&p);
        let trace = minimalize(&fan, &g).unwrap();
        let b = classify_minimal(&trace.terminal, &g).unwrap();
        // the minimal model itself is not unique, only its group is
        prop_assert_eq!(a.group, b.group);
        prop_assert!(table_allows(b.kind, b.group));
        if e.fan.len() == trace.terminal.len() {
            prop_assert_eq!(a, b);
        }
        prop_assert_eq!(classify_subgroup(&g).unwrap().label, e.label);
        prop_assert!(fans_isomorphic(&trace.terminal, &b.kind.standard_fan()).is_some());
    }
}

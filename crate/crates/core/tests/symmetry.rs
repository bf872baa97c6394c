mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use toric_surface_lab::symmetry::table;
use toric_surface_lab::{
    classify_subgroup, compute_aut, enumerate_subgroups, CompleteFan2D, ConjugacyLabel,
    SymmetryError, SymmetryGroup, UnimodularMatrix,
};

#[test]
fn automorphism_orders() {
    assert_eq!(compute_aut(&CompleteFan2D::projective_plane()).order(), 6);
    assert_eq!(compute_aut(&CompleteFan2D::square()).order(), 8);
    assert_eq!(compute_aut(&CompleteFan2D::hexagon()).order(), 12);
    for a in 2..=6 {
        assert_eq!(compute_aut(&CompleteFan2D::hirzebruch(a)).order(), 2);
    }
}

#[test]
fn automorphism_orders_match_brute_force() {
    let mut fans = vec![
        CompleteFan2D::projective_plane(),
        CompleteFan2D::square(),
        CompleteFan2D::hexagon(),
    ];
    fans.push(CompleteFan2D::hirzebruch(3));
    fans.push(CompleteFan2D::square().blow_up(&[0, 2]).unwrap());
    fans.push(CompleteFan2D::hexagon().blow_up(&[0]).unwrap());
    for fan in &fans {
        assert_eq!(
            compute_aut(fan).order(),
            common::brute_force_aut_order(fan),
            "{fan}"
        );
    }
}

#[test]
fn table_generators_classify_to_themselves() {
    for label in ConjugacyLabel::ALL {
        let c = classify_subgroup(&label.representative()).unwrap();
        assert_eq!(c.label, label);
        assert_eq!(label.representative().order(), label.order());
    }
}

#[test]
fn classification_examples() {
    let g =
        SymmetryGroup::generated_by(&[UnimodularMatrix::new([[1, 1], [0, -1]]).unwrap()]).unwrap();
    assert_eq!(classify_subgroup(&g).unwrap().label, ConjugacyLabel::D2);
    let t = UnimodularMatrix::new([[1, 1], [0, 1]]).unwrap();
    assert!(matches!(
        SymmetryGroup::generated_by(&[t]),
        Err(SymmetryError::NotFinite(_))
    ));
    let g = SymmetryGroup::generated_by(&[table::C_PRIME]).unwrap();
    assert_eq!(
        classify_subgroup(&g).unwrap().label,
        ConjugacyLabel::D2Prime
    );
}

#[test]
fn subgroup_lattices_match_brute_force() {
    for fan in [
        CompleteFan2D::projective_plane(),
        CompleteFan2D::square(),
        CompleteFan2D::hexagon(),
    ] {
        let aut = compute_aut(&fan);
        let ours: BTreeSet<Vec<UnimodularMatrix>> = enumerate_subgroups(&aut)
            .iter()
            .map(|h| h.elements().to_vec())
            .collect();
        assert_eq!(ours, common::brute_force_subgroups(&aut));
    }
    assert_eq!(
        enumerate_subgroups(&compute_aut(&CompleteFan2D::projective_plane())).len(),
        6
    );
    assert_eq!(
        enumerate_subgroups(&compute_aut(&CompleteFan2D::square())).len(),
        10
    );
    assert_eq!(
        enumerate_subgroups(&compute_aut(&CompleteFan2D::hexagon())).len(),
        16
    );
}

#[test]
fn subgroup_generators_generate() {
    for h in enumerate_subgroups(&compute_aut(&CompleteFan2D::hexagon())) {
        let again = SymmetryGroup::generated_by(h.generators()).unwrap();
        assert!(again.same_elements(&h));
    }
}

#[test]
fn conjugator_is_a_certificate() {
    for fan in [
        CompleteFan2D::projective_plane(),
        CompleteFan2D::square(),
        CompleteFan2D::hexagon(),
    ] {
        for h in enumerate_subgroups(&compute_aut(&fan)) {
            let c = classify_subgroup(&h).unwrap();
            assert!(h
                .conjugate_by(&c.conjugator)
                .same_elements(&c.label.representative()));
        }
    }
}

#[test]
fn orbits_partition_rays() {
    let fan = CompleteFan2D::square().blow_up(&[0, 1, 2, 3]).unwrap();
    let g = ConjugacyLabel::C4.representative().attach(&fan).unwrap();
    let orbits = g.ray_orbits();
    assert_eq!(orbits.len(), 2);
    let all: BTreeSet<usize> = orbits.iter().flatten().copied().collect();
    assert_eq!(all.len(), fan.len());
    assert_eq!(g.cone_orbits().len(), 2);
}

proptest! {
    #[test]
    fn classification_is_conjugation_invariant(
        label in prop::sample::select(ConjugacyLabel::ALL.to_vec()),
        p in common::arb_unimodular(3),
    ) {
        let g = label.representative().conjugate_by(&p);
        let c = classify_subgroup(&g).unwrap();
        prop_assert_eq!(c.label, label);
        prop_assert!(g.conjugate_by(&c.conjugator).same_elements(&label.representative()));
    }

    #[test]
    fn aut_of_moved_fan_is_conjugate(fan in common::arb_fan(10), p in common::arb_unimodular(2)) {
        let aut = compute_aut(&fan);
        let moved = compute_aut(&fan.transform(&p));
        prop_assert!(aut.conjugate_by(&p).same_elements(&moved));
        prop_assert_eq!(classify_subgroup(&aut).unwrap().label, classify_subgroup(&moved).unwrap().label);
    }

    #[test]
    fn group_laws(label in prop::sample::select(ConjugacyLabel::ALL.to_vec())) {
        let g = label.representative();
        for a in g.elements() {
            prop_assert!(g.contains(&a.inverse()));
            prop_assert!(a.compose(&a.inverse()).is_identity());
            for b in g.elements() {
                prop_assert!(g.contains(&a.compose(b)));
            }
        }
    }
}

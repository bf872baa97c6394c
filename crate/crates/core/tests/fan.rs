mod common;

use proptest::prelude::*;
use toric_surface_lab::{fans_isomorphic, CompleteFan2D, FanError};

#[test]
fn self_intersection_examples() {
    assert_eq!(
        CompleteFan2D::projective_plane()
            .self_intersections()
            .values(),
        &[1, 1, 1]
    );
    assert_eq!(
        CompleteFan2D::hirzebruch(2).self_intersections().values(),
        &[0, -2, 0, 2]
    );
    assert_eq!(
        CompleteFan2D::hexagon().self_intersections().values(),
        &[-1; 6]
    );
}

#[test]
fn validation_errors() {
    assert!(matches!(
        CompleteFan2D::new(&[(1, 0), (0, 1)]),
        Err(FanError::TooFewRays { count: 2 })
    ));
    assert!(matches!(
        CompleteFan2D::new(&[(2, 0), (0, 1), (-1, -1)]),
        Err(FanError::NonPrimitiveRay { index: 0, .. })
    ));
    assert!(matches!(
        CompleteFan2D::new(&[(1, 0), (1, 2), (-1, -1)]),
        Err(FanError::NotSmooth { .. })
    ));
    assert!(CompleteFan2D::new(&[(1, 0), (-1, -1), (0, 1)]).is_err());
    // twice around the origin
    let twice = [(1, 0), (0, 1), (-1, -1), (1, 0), (0, 1), (-1, -1)];
    assert!(CompleteFan2D::new(&twice).is_err());
}

#[test]
fn blow_down_rejects_bad_rays() {
    let p2 = CompleteFan2D::projective_plane();
    assert!(matches!(
        p2.blow_down(&[0]),
        Err(FanError::NotMinusOneCurve { index: 0, value: 1 })
    ));
    let hexagon = CompleteFan2D::hexagon();
    assert!(matches!(
        hexagon.blow_down(&[0, 1]),
        Err(FanError::AdjacentContraction { .. })
    ));
}

#[test]
fn oracle_agrees_on_small_fans() {
    for fan in [
        CompleteFan2D::projective_plane(),
        CompleteFan2D::hirzebruch(5),
        CompleteFan2D::hexagon(),
    ] {
        for i in 0..fan.len() {
            assert_eq!(
                fan.self_intersections()[i],
                common::self_intersection_by_relation(&fan, i)
            );
        }
    }
}

proptest! {
    #[test]
    fn sum_of_self_intersections(fan in common::arb_fan(14)) {
        prop_assert_eq!(fan.self_intersections().sum(), 12 - 3 * fan.len() as i64);
    }

    #[test]
    fn self_intersections_match_relation_oracle(fan in common::arb_fan(14)) {
        for i in 0..fan.len() {
            prop_assert_eq!(fan.self_intersections()[i], common::self_intersection_by_relation(&fan, i));
        }
    }

    #[test]
    fn blow_up_then_down_is_identity(fan in common::arb_fan(12), cone in any::<prop::sample::Index>()) {
        let c = cone.index(fan.len());
        let (up, new) = fan.blow_up_traced(&[c]).unwrap();
        prop_assert_eq!(up.self_intersections()[new[0]], -1);
        prop_assert_eq!(up.blow_down(&new).unwrap(), fan);
    }

    #[test]
    fn lattice_change_gives_isomorphic_fan(fan in common::arb_fan(10), m in common::arb_unimodular(3)) {
        let moved = fan.transform(&m);
        let iso = fans_isomorphic(&fan, &moved);
        prop_assert!(iso.is_some());
        let mut a = fan.self_intersections().values().to_vec();
        let mut b = moved.self_intersections().values().to_vec();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
        let iso = iso.unwrap();
        prop_assert_eq!(fan.transform(&iso), moved);
    }

    #[test]
    fn rotation_of_input_is_canonicalised(fan in common::arb_fan(10), shift in any::<prop::sample::Index>()) {
        let mut rays = fan.ray_pairs();
        let k = shift.index(rays.len());
        rays.rotate_left(k);
        prop_assert_eq!(CompleteFan2D::new(&rays).unwrap(), fan);
    }

    #[test]
    fn json_round_trip(fan in common::arb_fan(12)) {
        let text = serde_json::to_string(&fan).unwrap();
        let back: CompleteFan2D = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, fan);
    }
}

// Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use toric_surface_lab::{CompleteFan2D, SymmetryGroup, UnimodularMatrix};

/// `(h⁰, h¹, h²)` by summing local contributions over characters.
///
/// For each `m`, the rays with `⟨m, v_e⟩ < -c_e` cut the circle into arcs;
/// no such ray gives a section, all rays give a class in `H²`, and `k` arcs
/// give `k - 1` classes in `H¹`. Only characters in `[-r, r]²` are visited.
pub fn chamber_cohomology(fan: &CompleteFan2D, c: &[i64], r: i64) -> (u64, u64, u64) {
    let n = fan.len();
    let (mut h0, mut h1, mut h2) = (0, 0, 0);
    for x in -r..=r {
        for y in -r..=r {
            let neg: Vec<bool> = (0..n).map(|e| fan.ray(e).pair((x, y)) < -c[e]).collect();
            let count = neg.iter().filter(|&&b| b).count();
            if count == 0 {
                h0 += 1;
            } else if count == n {
                h2 += 1;
            } else {
                let arcs = (0..n).filter(|&e| neg[e] && !neg[(e + n - 1) % n]).count() as u64;
                h1 += arcs - 1;
            }
        }
    }
    (h0, h1, h2)
}

/// Self-intersection from linear equivalence: fix `m` with `⟨m, v_i⟩ = 1`,
/// move `D_i` to `-Σ_{e≠i} ⟨m, v_e⟩ D_e` and intersect with `D_i`; only the
/// two neighbours meet `D_i`, once each.
pub fn self_intersection_by_relation(fan: &CompleteFan2D, i: usize) -> i64 {
    let v = fan.ray(i);
    let (g, s, t) = ext_gcd(v.x, v.y);
    assert_eq!(g.abs(), 1);
    let m = (s * g, t * g);
    assert_eq!(v.pair(m), 1);
    let prev = fan.ray(fan.prev(i));
    let next = fan.ray(fan.next(i));
    -(prev.pair(m) + next.pair(m))
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, s, t) = ext_gcd(b, a % b);
        (g, t, s - (a / b) * t)
    }
}

/// All matrices with entries in `[-k, k]` and determinant ±1.
pub fn bounded_unimodular(k: i64) -> Vec<UnimodularMatrix> {
    let mut out = Vec::new();
    for a in -k..=k {
        for b in -k..=k {
            for c in -k..=k {
                for d in -k..=k {
                    if let Ok(m) = UnimodularMatrix::new([[a, b], [c, d]]) {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// Fan automorphisms by brute force over bounded matrices.
pub fn brute_force_aut_order(fan: &CompleteFan2D) -> usize {
    let rays: BTreeSet<(i64, i64)> = fan.ray_pairs().into_iter().collect();
    let big = fan
        .rays()
        .iter()
        .map(|v| v.x.abs().max(v.y.abs()))
        .max()
        .unwrap();
    let k = 2 * big * big;
    bounded_unimodular(k)
        .into_iter()
        .filter(|m| {
            fan.ray_pairs()
                .iter()
                .all(|&v| rays.contains(&m.apply_pair(v)))
        })
        .count()
}

/// Subgroups of a finite group as closures of every subset of elements.
pub fn brute_force_subgroups(g: &SymmetryGroup) -> BTreeSet<Vec<UnimodularMatrix>> {
    let els = g.elements();
    assert!(els.len() <= 12);
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << els.len()) {
        let gens: Vec<UnimodularMatrix> = (0..els.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| els[i])
            .collect();
        let mut set: BTreeSet<UnimodularMatrix> = BTreeSet::from([UnimodularMatrix::IDENTITY]);
        loop {
            let snapshot: Vec<UnimodularMatrix> = set.iter().copied().collect();
            let before = set.len();
            for a in &snapshot {
                for b in &gens {
                    set.insert(a.compose(b));
                }
            }
            if set.len() == before {
                break;
            }
        }
        out.insert(set.into_iter().collect());
    }
    out
}

/// A random fan: a seed surface followed by a few blow-ups of random cones.
pub fn arb_fan(max_rays: usize) -> impl Strategy<Value = CompleteFan2D> {
    let seeds = [
        CompleteFan2D::projective_plane(),
        CompleteFan2D::square(),
        CompleteFan2D::hirzebruch(2),
        CompleteFan2D::hirzebruch(3),
        CompleteFan2D::hexagon(),
    ];
    (
        0..seeds.len(),
        proptest::collection::vec(any::<u16>(), 0..8),
    )
        .prop_map(move |(s, picks)| {
            let mut fan = seeds[s].clone();
            for p in picks {
                if fan.len() >= max_rays {
                    break;
                }
                let cone = p as usize % fan.len();
                fan = fan.blow_up(&[cone]).unwrap();
            }
            fan
        })
}

pub fn arb_unimodular(k: i64) -> impl Strategy<Value = UnimodularMatrix> {
    let all = bounded_unimodular(k);
    (0..all.len()).prop_map(move |i| all[i])
}

pub fn arb_coefficients(n: usize, bound: i64) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-bound..=bound, n)
}

/// A fan together with random divisor coefficients on it.
pub fn arb_fan_and_divisor(
    max_rays: usize,
    bound: i64,
) -> impl Strategy<Value = (CompleteFan2D, Vec<i64>)> {
    arb_fan(max_rays).prop_flat_map(move |f| {
        let n = f.len();
        (Just(f), arb_coefficients(n, bound))
    })
}

//! Test corpus of equivariant blow-ups of minimal surfaces.
//!
//! The seeds are all pairs `(fan, H)` with `fan` one of `P²`, `F_0`,
//! `F_2..F_5`, the hexagon, and `H ≤ Aut(fan)` such that the pair is
//! `H`-minimal. On top of the seeds come every one-step equivariant blow-up
//! with at most [`MAX_RAYS`] rays and a fixed number of seeded random
//! chains of blow-ups.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fan::CompleteFan2D;
use crate::minimal::is_g_minimal;
use crate::symmetry::{compute_aut, enumerate_subgroups, ConjugacyLabel, SymmetryGroup};

pub const MAX_RAYS: usize = 12;
pub const RANDOM_CHAINS: usize = 200;
pub const MAX_CHAIN_DEPTH: usize = 3;
pub const DEFAULT_SEED: u64 = 20_240_229;

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub fan: CompleteFan2D,
    /// Detached; acts on every fan of the entry's blow-up history.
    pub group: SymmetryGroup,
    pub label: ConjugacyLabel,
    pub origin: String,
}

/// The minimal fans the corpus grows from.
pub fn seed_fans() -> Vec<(&'static str, CompleteFan2D)> {
    vec![
        ("P2", CompleteFan2D::projective_plane()),
        ("F0", CompleteFan2D::square()),
        ("F2", CompleteFan2D::hirzebruch(2)),
        ("F3", CompleteFan2D::hirzebruch(3)),
        ("F4", CompleteFan2D::hirzebruch(4)),
        ("F5", CompleteFan2D::hirzebruch(5)),
        ("dP6", CompleteFan2D::hexagon()),
    ]
}

pub fn minimal_seeds() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for (name, fan) in seed_fans() {
        for h in enumerate_subgroups(&compute_aut(&fan)) {
            if is_g_minimal(&fan, &h).expect("subgroup of Aut preserves the fan") {
                let label = crate::symmetry::classify_subgroup(&h)
                    .expect("finite subgroup")
                    .label;
                out.push(CorpusEntry {
                    fan: fan.clone(),
                    group: h.detach(),
                    label,
                    origin: format!("{name}/{label}"),
                });
            }
        }
    }
    out
}

/// Every non-empty `g`-stable set of maximal cones, as sorted cone indices,
/// whose blow-up stays within `max_rays`.
pub fn equivariant_blow_up_sets(
    fan: &CompleteFan2D,
    g: &SymmetryGroup,
    max_rays: usize,
) -> Vec<Vec<usize>> {
    let g = g.attach(fan).expect("group preserves the fan");
    let orbits = g.cone_orbits();
    let mut out = Vec::new();
    for mask in 1u32..(1 << orbits.len()) {
        let mut cones: Vec<usize> = (0..orbits.len())
            .filter(|k| mask >> k & 1 == 1)
            .flat_map(|k| orbits[k].iter().copied())
            .collect();
        if fan.len() + cones.len() <= max_rays {
            cones.sort_unstable();
            out.push(cones);
        }
    }
    out
}

/// Seeds, their one-step equivariant blow-ups and seeded random chains.
pub fn generate(seed: u64) -> Vec<CorpusEntry> {
    let seeds = minimal_seeds();
    let mut out = seeds.clone();
    for s in &seeds {
        for cones in equivariant_blow_up_sets(&s.fan, &s.group, MAX_RAYS) {
            out.push(CorpusEntry {
                fan: s.fan.blow_up(&cones).expect("valid cone set"),
                group: s.group.clone(),
                label: s.label,
                origin: format!("{} + blow-up {:?}", s.origin, cones),
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for chain in 0..RANDOM_CHAINS {
        let s = seeds.choose(&mut rng).expect("seeds are non-empty");
        let depth = rng.gen_range(1..=MAX_CHAIN_DEPTH);
        let mut fan = s.fan.clone();
        let mut steps = 0;
        for _ in 0..depth {
            let options = equivariant_blow_up_sets(&fan, &s.group, MAX_RAYS);
            let Some(cones) = options.choose(&mut rng) else {
                break;
            };
            fan = fan.blow_up(cones).expect("valid cone set");
            steps += 1;
        }
        out.push(CorpusEntry {
            fan,
            group: s.group.clone(),
            label: s.label,
            origin: format!("{} + random chain {chain} of depth {steps}", s.origin),
        });
    }
    out
}

//! Equivariant minimal model program for toric surfaces.
//!
//! A `G`-surface is contracted along `G`-stable sets of pairwise disjoint
//! torus-invariant `(-1)`-curves until none remain. The endpoints are then
//! identified with `P²`, a Hirzebruch surface, `P¹×P¹` or the degree-6 del
//! Pezzo surface and checked against the table of `G`-minimal pairs.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::fan::{fans_isomorphic, CompleteFan2D, FanError, PrimitiveVector};
use crate::symmetry::{
    classify_subgroup, ConjugacyLabel, SymmetryError, SymmetryGroup, UnimodularMatrix,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinimalError {
    #[error("surface is not G-minimal: {orbits} contractible orbit(s) remain")]
    NotMinimal { orbits: usize },
    #[error("minimal pair ({kind}, {group}) is not in the table of G-minimal surfaces")]
    TableViolation { kind: String, group: ConjugacyLabel },
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Fan(#[from] FanError),
}

/// Isomorphism type of a minimal split surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MinimalKind {
    P2,
    /// `F_a` with `a ≥ 0`, `a ≠ 1`. `F_0` appears under this name only for
    /// `D2'`; elsewhere it is [`MinimalKind::P1xP1`].
    Hirzebruch(u32),
    P1xP1,
    DelPezzo6,
}

impl MinimalKind {
    /// The labelled fan the standard bases and collections are written on.
    pub fn standard_fan(self) -> CompleteFan2D {
        match self {
            MinimalKind::P2 => CompleteFan2D::projective_plane(),
            MinimalKind::Hirzebruch(a) => CompleteFan2D::hirzebruch(a as i64),
            MinimalKind::P1xP1 => CompleteFan2D::square(),
            MinimalKind::DelPezzo6 => CompleteFan2D::hexagon(),
        }
    }

    pub fn family(self) -> Family {
        match self {
            MinimalKind::Hirzebruch(_) => Family::ConicBundle,
            MinimalKind::P2 => Family::SeveriBrauer,
            MinimalKind::P1xP1 => Family::InvolutionSurface,
            MinimalKind::DelPezzo6 => Family::DelPezzo6,
        }
    }
}

impl fmt::Display for MinimalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinimalKind::P2 => write!(f, "P2"),
            MinimalKind::Hirzebruch(a) => write!(f, "F({a})"),
            MinimalKind::P1xP1 => write!(f, "P1xP1"),
            MinimalKind::DelPezzo6 => write!(f, "dP6"),
        }
    }
}

impl Serialize for MinimalKind {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The four families of minimal toric surfaces over a non-closed field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    /// (i) `P¹`-bundle over a smooth conic, not a form of `F_1`.
    #[serde(rename = "i")]
    ConicBundle,
    /// (ii) Severi–Brauer surface.
    #[serde(rename = "ii")]
    SeveriBrauer,
    /// (iii) involution surface.
    #[serde(rename = "iii")]
    InvolutionSurface,
    /// (iv) del Pezzo surface of degree 6 with Picard rank 1.
    #[serde(rename = "iv")]
    DelPezzo6,
}

impl Family {
    pub fn roman(self) -> &'static str {
        match self {
            Family::ConicBundle => "i",
            Family::SeveriBrauer => "ii",
            Family::InvolutionSurface => "iii",
            Family::DelPezzo6 => "iv",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct MinimalLabel {
    pub kind: MinimalKind,
    pub group: ConjugacyLabel,
}

impl MinimalLabel {
    pub fn family(&self) -> Family {
        self.kind.family()
    }
}

impl fmt::Display for MinimalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.kind, self.group)
    }
}

/// Whether `(kind, group)` is a `G`-minimal pair.
pub fn table_allows(kind: MinimalKind, group: ConjugacyLabel) -> bool {
    use ConjugacyLabel::*;
    use MinimalKind::*;
    match group {
        // trivial group: the classical minimal rational toric surfaces
        C1 => matches!(kind, P2 | P1xP1) || matches!(kind, Hirzebruch(a) if a >= 2),
        D2 => matches!(kind, P2 | P1xP1) || matches!(kind, Hirzebruch(a) if a >= 3 && a % 2 == 1),
        D2Prime => matches!(kind, Hirzebruch(a) if a % 2 == 0),
        C2 | C4 | D4 | D4Prime | D8 => kind == P1xP1,
        C3 | D6 => kind == P2,
        C6 | D6Prime | D12 => kind == DelPezzo6,
    }
}

/// One contraction of a single `G`-orbit of `(-1)`-curves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContractionStep {
    /// Index of the greedy round the orbit was selected in.
    pub round: usize,
    pub before: CompleteFan2D,
    /// Indices into `before`.
    pub orbit: Vec<usize>,
    pub contracted_rays: Vec<PrimitiveVector>,
    pub after: CompleteFan2D,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionTrace {
    pub initial: CompleteFan2D,
    /// The acting group, detached; the same matrices act on every fan of the
    /// trace.
    pub group: SymmetryGroup,
    pub steps: Vec<ContractionStep>,
    pub terminal: CompleteFan2D,
}

impl ContractionTrace {
    /// Group attached to the terminal fan.
    pub fn terminal_group(&self) -> SymmetryGroup {
        self.group
            .attach(&self.terminal)
            .expect("group preserves every fan of the trace")
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// `G`-orbits of rays whose curves are `(-1)`-curves and pairwise disjoint.
pub fn contractible_orbits(
    fan: &CompleteFan2D,
    g: &SymmetryGroup,
) -> Result<Vec<Vec<usize>>, MinimalError> {
    let attached = g.attach(fan)?;
    Ok(contractible_orbits_attached(fan, &attached))
}

fn contractible_orbits_attached(fan: &CompleteFan2D, g: &SymmetryGroup) -> Vec<Vec<usize>> {
    let a = fan.self_intersections();
    g.ray_orbits()
        .into_iter()
        .filter(|orbit| {
            orbit.iter().all(|&i| a[i] == -1)
                && orbit
                    .iter()
                    .enumerate()
                    .all(|(k, &i)| orbit[k + 1..].iter().all(|&j| !fan.are_adjacent(i, j)))
        })
        .collect()
}

pub fn is_g_minimal(fan: &CompleteFan2D, g: &SymmetryGroup) -> Result<bool, MinimalError> {
    Ok(contractible_orbits(fan, g)?.is_empty())
}

/// Runs the equivariant MMP.
///
/// Each round takes the contractible orbits in order of their smallest ray
/// index and greedily keeps every orbit disjoint from and non-adjacent to
/// those already kept. The kept orbits are then contracted one at a time,
/// one trace step per orbit.
pub fn minimalize(
    fan: &CompleteFan2D,
    g: &SymmetryGroup,
) -> Result<ContractionTrace, MinimalError> {
    let group = g.detach();
    let mut current = fan.clone();
    let mut steps = Vec::new();
    let mut round = 0;
    loop {
        let attached = group.attach(&current)?;
        let orbits = contractible_orbits_attached(&current, &attached);
        if orbits.is_empty() {
            break;
        }
        let mut taken = vec![false; current.len()];
        let mut chosen: Vec<Vec<PrimitiveVector>> = Vec::new();
        for orbit in orbits {
            let clashes = orbit
                .iter()
                .any(|&i| taken[i] || taken[current.next(i)] || taken[current.prev(i)]);
            if !clashes {
                for &i in &orbit {
                    taken[i] = true;
                }
                chosen.push(orbit.iter().map(|&i| current.ray(i)).collect());
            }
        }
        for rays in chosen {
            let mut orbit: Vec<usize> = rays
                .iter()
                .map(|&r| {
                    current
                        .index_of(r)
                        .expect("ray survives earlier contractions")
                })
                .collect();
            orbit.sort_unstable();
            let after = current.blow_down(&orbit)?;
            steps.push(ContractionStep {
                round,
                before: current.clone(),
                orbit,
                contracted_rays: rays,
                after: after.clone(),
            });
            current = after;
        }
        round += 1;
    }
    Ok(ContractionTrace {
        initial: fan.clone(),
        group,
        steps,
        terminal: current,
    })
}

/// Identifies a `G`-minimal pair.
pub fn classify_minimal(
    fan: &CompleteFan2D,
    g: &SymmetryGroup,
) -> Result<MinimalLabel, MinimalError> {
    let orbits = contractible_orbits(fan, g)?;
    if !orbits.is_empty() {
        return Err(MinimalError::NotMinimal {
            orbits: orbits.len(),
        });
    }
    let group = classify_subgroup(g)?.label;
    let kind = identify_kind(fan, group).ok_or_else(|| MinimalError::TableViolation {
        kind: format!("unrecognised fan {fan}"),
        group,
    })?;
    if !table_allows(kind, group) {
        return Err(MinimalError::TableViolation {
            kind: kind.to_string(),
            group,
        });
    }
    Ok(MinimalLabel { kind, group })
}

fn identify_kind(fan: &CompleteFan2D, group: ConjugacyLabel) -> Option<MinimalKind> {
    let a = fan.self_intersections();
    let kind = match fan.len() {
        3 => MinimalKind::P2,
        4 => {
            let b = a.values().iter().map(|x| x.unsigned_abs()).max()? as u32;
            match b {
                0 if group != ConjugacyLabel::D2Prime => MinimalKind::P1xP1,
                b => MinimalKind::Hirzebruch(b),
            }
        }
        6 if a.values().iter().all(|&x| x == -1) => MinimalKind::DelPezzo6,
        _ => return None,
    };
    // certificate that the fan really is the standard one
    fans_isomorphic(&kind.standard_fan(), fan).map(|_| kind)
}

/// A lattice isomorphism from the standard fan of `kind` onto `fan`.
pub fn standard_identification(kind: MinimalKind, fan: &CompleteFan2D) -> Option<UnimodularMatrix> {
    fans_isomorphic(&kind.standard_fan(), fan)
}

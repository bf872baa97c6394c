//! Symbolic decomposition into separable algebras.
//!
//! A permutation basis `{S_i}` over the split surface gives one factor per
//! orbit: the endomorphism algebra of `π_*S_i`, central simple over the
//! étale algebra of degree `[G : Stab(S_i)]`. The Brauer classes depend on
//! the torsor and are kept as names.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::grothendieck::{
    verify_permutation_basis, ElementOrigin, GrothendieckError, PermutationBasis,
};
use crate::minimal::{ContractionTrace, Family, MinimalKind, MinimalLabel};
use crate::symmetry::{ConjugacyLabel, SymmetryGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MotivicError {
    #[error("basis does not verify: {0}")]
    UnverifiedBasis(#[source] GrothendieckError),
    #[error("label {0} is not a G-minimal pair")]
    NotMinimal(MinimalLabel),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraFactor {
    /// Degree of the étale centre; equals the orbit size.
    pub base_degree: usize,
    /// Economical name, with matrix algebras over the centre replaced by it.
    pub brauer_label: String,
    /// `End(π_*S)` for the orbit representative `S`.
    pub endomorphism: String,
    /// Index into the basis orbits.
    pub source_orbit: usize,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyDescriptor {
    pub family: Family,
    pub description: String,
    /// Names of the algebra slots of the minimal core, in basis order.
    pub slots: Vec<String>,
    pub product: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MotivicDecomposition {
    pub factors: Vec<AlgebraFactor>,
    pub family: Option<FamilyDescriptor>,
    pub notes: Vec<String>,
}

impl MotivicDecomposition {
    /// The factors joined by `×`.
    pub fn product(&self) -> String {
        self.factors
            .iter()
            .map(|f| f.brauer_label.as_str())
            .collect::<Vec<_>>()
            .join("×")
    }

    pub fn total_degree(&self) -> usize {
        self.factors.iter().map(|f| f.base_degree).sum()
    }
}

impl fmt::Display for MotivicDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.product())
    }
}

const HEXAGON_NOTE: &str = "P is attached to the orbit of R1, which has size 3, while the family description \
                            gives P as a central simple algebra over the quadratic algebra K; both are recorded";

fn core_slot_label(kind: MinimalKind, group: ConjugacyLabel, slot: &str) -> &'static str {
    if group == ConjugacyLabel::C1 {
        return "k";
    }
    match (kind, slot) {
        (_, "1") => "k",
        (MinimalKind::Hirzebruch(a), "J1" | "J1J2") if a % 2 == 0 => "Q",
        (MinimalKind::Hirzebruch(_), _) => "k",
        (MinimalKind::P2, "J1") => "A",
        (MinimalKind::P2, "J1^2") => "A^{⊗2}",
        (MinimalKind::P1xP1, "J1" | "J2") => "B",
        (MinimalKind::P1xP1, "J1J2") => "A",
        (MinimalKind::DelPezzo6, s) if s.starts_with('R') => "P",
        (MinimalKind::DelPezzo6, s) if s.starts_with('Q') => "Q",
        _ => "k",
    }
}

/// Core slots that form a single orbit under the full automorphism group.
fn slot_group(kind: MinimalKind, slot: &str) -> &str {
    match (kind, slot) {
        (MinimalKind::P1xP1, "J1" | "J2") => "J",
        (MinimalKind::DelPezzo6, s) if s.starts_with('R') => "R",
        (MinimalKind::DelPezzo6, s) if s.starts_with('Q') => "Q",
        (_, s) => s,
    }
}

/// Family of a minimal pair with the named algebra slots.
pub fn annotate_family(label: &MinimalLabel) -> Result<FamilyDescriptor, MotivicError> {
    if !crate::minimal::table_allows(label.kind, label.group) {
        return Err(MotivicError::NotMinimal(*label));
    }
    let family = label.family();
    let (description, slots): (&str, Vec<&str>) = match label.kind {
        MinimalKind::Hirzebruch(a) => (
            "P1-bundle over a smooth conic",
            if a % 2 == 0 {
                vec!["k", "Q", "k", "Q"]
            } else {
                vec!["k", "k", "k", "k"]
            },
        ),
        MinimalKind::P2 => ("Severi-Brauer surface", vec!["k", "A", "A^{⊗2}"]),
        MinimalKind::P1xP1 => (
            "involution surface; B over the quadratic discriminant algebra",
            vec!["k", "B", "A"],
        ),
        MinimalKind::DelPezzo6 => ("del Pezzo surface of degree 6", vec!["k", "P", "Q"]),
    };
    Ok(FamilyDescriptor {
        family,
        description: description.to_string(),
        product: slots.join("×"),
        slots: slots.into_iter().map(String::from).collect(),
    })
}

/// One factor per orbit of a verified basis.
pub fn decompose(
    basis: &PermutationBasis,
    trace: &ContractionTrace,
    g: &SymmetryGroup,
) -> Result<MotivicDecomposition, MotivicError> {
    let cert = verify_permutation_basis(&basis.elements, &basis.fan, g)
        .map_err(MotivicError::UnverifiedBasis)?;
    let label = basis.minimal;
    let mut factors: Vec<AlgebraFactor> = Vec::new();
    for (i, orbit) in cert.orbits.iter().enumerate() {
        let rep = &basis.elements[orbit.representative];
        let degree = orbit.members.len();
        let brauer_label = match (&rep.origin, label) {
            (ElementOrigin::Core { slot }, Some(l)) => {
                core_slot_label(l.kind, l.group, slot).to_string()
            }
            (ElementOrigin::Exceptional { step }, _) => {
                if degree == 1 {
                    "k".to_string()
                } else {
                    format!("Hom_G(E{step},l)")
                }
            }
            _ => format!("End(π_*S{})", i + 1),
        };
        factors.push(AlgebraFactor {
            base_degree: degree,
            brauer_label,
            endomorphism: format!("End(π_*{})", rep.name),
            source_orbit: i,
            members: orbit
                .members
                .iter()
                .map(|&m| basis.elements[m].name.clone())
                .collect(),
        });
    }
    // a slot shared by several basis elements may split into several orbits
    if let Some(l) = label {
        let group_of = |i: usize| match &basis.elements[cert.orbits[i].representative].origin {
            ElementOrigin::Core { slot } => Some(slot_group(l.kind, slot)),
            _ => None,
        };
        for i in 0..factors.len() {
            let Some(gi) = group_of(i) else { continue };
            let same: Vec<usize> = (0..factors.len())
                .filter(|&j| group_of(j) == Some(gi))
                .collect();
            if same.len() > 1 && factors[i].brauer_label != "k" {
                let k = same
                    .iter()
                    .position(|&j| j == i)
                    .expect("i is in its own group")
                    + 1;
                factors[i].brauer_label = format!("{}_{k}", factors[i].brauer_label);
            }
        }
    }

    let mut notes = Vec::new();
    let family = match label {
        Some(l) => {
            if l.kind == MinimalKind::DelPezzo6 {
                notes.push(HEXAGON_NOTE.to_string());
            }
            if l.group == ConjugacyLabel::C1 {
                notes.push("trivial group: the torus is split and every factor is k".to_string());
            }
            Some(annotate_family(&l)?)
        }
        None => None,
    };
    if !trace.steps.is_empty() {
        notes.push(format!(
            "{} blow-up orbit(s) contribute étale factors Hom_G(E_i,l)",
            trace.steps.len()
        ));
    }
    Ok(MotivicDecomposition {
        factors,
        family,
        notes,
    })
}

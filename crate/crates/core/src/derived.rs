//! Full exceptional collections of line bundles and their certificates.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::cohomology::{Cohomology, CohomologyVector};
use crate::fan::CompleteFan2D;
use crate::grothendieck::{
    transport_divisors, BasisElement, Divisor, ElementOrigin, K0Class, K0Model,
};
use crate::linalg::determinant;
use crate::minimal::{classify_minimal, ContractionTrace, MinimalError, MinimalKind, MinimalLabel};
use crate::symmetry::{SymmetryError, SymmetryGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivedError {
    #[error("surface is not classified: {0}")]
    NotClassified(#[source] MinimalError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollectionObject {
    pub name: String,
    pub divisor: Divisor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub core: MinimalLabel,
    /// One entry per blow-up step, outermost first.
    pub mutation_steps: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExceptionalCollection {
    pub fan: CompleteFan2D,
    pub blocks: Vec<Vec<CollectionObject>>,
    pub provenance: Option<Provenance>,
}

impl ExceptionalCollection {
    pub fn objects(&self) -> impl Iterator<Item = &CollectionObject> {
        self.blocks.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// The same objects with the block order reversed.
    pub fn reversed(&self) -> Self {
        let mut blocks = self.blocks.clone();
        blocks.reverse();
        ExceptionalCollection {
            fan: self.fan.clone(),
            blocks,
            provenance: self.provenance.clone(),
        }
    }

    pub fn swap_blocks(&self, i: usize, j: usize) -> Self {
        let mut blocks = self.blocks.clone();
        blocks.swap(i, j);
        ExceptionalCollection {
            fan: self.fan.clone(),
            blocks,
            provenance: self.provenance.clone(),
        }
    }
}

impl fmt::Display for ExceptionalCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                format!(
                    "{{{}}}",
                    b.iter()
                        .map(|o| o.name.as_str())
                        .collect::<Vec<_>>()
                        .join(", ")
                )
            })
            .collect();
        write!(f, "[{}]", blocks.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// `Ext^*(V, V) ≠ (1, 0, 0)`.
    NotExceptional,
    /// Two objects of one block have a nonzero Ext.
    Block,
    /// A later object has a nonzero Ext to an earlier one.
    Order,
}

/// A nonzero `Ext^*(source, target)` that the axioms forbid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub source: String,
    pub target: String,
    pub ext: CohomologyVector,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = (0..3).find(|&r| self.ext.get(r) != 0).unwrap_or(0);
        write!(
            f,
            "Ext^{r}({}, {}) = {}",
            self.source,
            self.target,
            self.ext.get(r)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollectionCertificate {
    pub passed: bool,
    pub objects: usize,
    pub exceptional: bool,
    pub blocks_orthogonal: bool,
    pub ordered: bool,
    pub basis_determinant: i128,
    pub group_stable: bool,
    pub pairs_checked: usize,
    pub violations: usize,
    pub first_violation: Option<Violation>,
}

fn core_collection(kind: MinimalKind) -> Vec<BasisElement> {
    let b = |name: &str, c: Vec<i64>| BasisElement {
        name: name.into(),
        divisor: Divisor(c),
        origin: ElementOrigin::Core { slot: name.into() },
    };
    match kind {
        MinimalKind::P2 => vec![
            b("O", vec![0, 0, 0]),
            b("O(1)", vec![1, 0, 0]),
            b("O(2)", vec![2, 0, 0]),
        ],
        MinimalKind::Hirzebruch(_) => vec![
            b("O", vec![0, 0, 0, 0]),
            b("O(D1)", vec![1, 0, 0, 0]),
            b("O(D2)", vec![0, 1, 0, 0]),
            b("O(D1+D2)", vec![1, 1, 0, 0]),
        ],
        MinimalKind::P1xP1 => vec![
            b("O", vec![0, 0, 0, 0]),
            b("O(1,0)", vec![1, 0, 0, 0]),
            b("O(0,1)", vec![0, 1, 0, 0]),
            b("O(1,1)", vec![1, 1, 0, 0]),
        ],
        // duals of R_i, Q_j: rays x1, y3, x2, y1, x3, y2
        MinimalKind::DelPezzo6 => vec![
            b("O", vec![0; 6]),
            b("R1^v", vec![1, 0, 0, 0, 0, 1]),
            b("R2^v", vec![0, 1, 1, 0, 0, 0]),
            b("R3^v", vec![0, 0, 0, 1, 1, 0]),
            b("Q1^v", vec![1, 1, 1, 0, 0, 0]),
            b("Q2^v", vec![0, 0, 0, 1, 1, 1]),
        ],
    }
}

/// Splits a list into blocks of `g`-orbits of their `K₀` classes, in order
/// of first appearance.
fn orbit_blocks(
    model: &K0Model,
    g: &SymmetryGroup,
    items: Vec<BasisElement>,
) -> Vec<Vec<CollectionObject>> {
    let classes: Vec<K0Class> = items
        .iter()
        .map(|e| model.line_bundle_class(&e.divisor))
        .collect();
    let mut taken = vec![false; items.len()];
    let mut blocks = Vec::new();
    for i in 0..items.len() {
        if taken[i] {
            continue;
        }
        let images: Vec<K0Class> = g
            .perms()
            .iter()
            .map(|p| model.act(p, &classes[i]))
            .collect();
        let mut block = Vec::new();
        for j in i..items.len() {
            if !taken[j] && images.contains(&classes[j]) {
                taken[j] = true;
                block.push(CollectionObject {
                    name: items[j].name.clone(),
                    divisor: items[j].divisor.clone(),
                });
            }
        }
        blocks.push(block);
    }
    blocks
}

/// `[{O}, exceptional blocks outermost first, core blocks]` on the initial
/// fan of the trace.
pub fn build_collection(
    trace: &ContractionTrace,
    g: &SymmetryGroup,
) -> Result<ExceptionalCollection, DerivedError> {
    let label = classify_minimal(&trace.terminal, g).map_err(DerivedError::NotClassified)?;
    let (core, exceptional) = transport_divisors(trace, label.kind, &core_collection(label.kind));
    let model = K0Model::new(&trace.initial);
    let g = g.attach(&trace.initial)?;
    let mut items = core.into_iter();
    let unit = items.next().expect("core collections start with O");
    let mut blocks = vec![vec![CollectionObject {
        name: unit.name,
        divisor: unit.divisor,
    }]];
    let mut mutation_steps = Vec::new();
    for (s, step) in exceptional.into_iter().enumerate() {
        mutation_steps.push(format!(
            "step {}: right mutation of (O_E(-1), O) to (O, O(E)) along {} ray(s)",
            s + 1,
            step.len()
        ));
        blocks.extend(orbit_blocks(&model, &g, step));
    }
    blocks.extend(orbit_blocks(&model, &g, items.collect()));
    Ok(ExceptionalCollection {
        fan: trace.initial.clone(),
        blocks,
        provenance: Some(Provenance {
            core: label,
            mutation_steps,
        }),
    })
}

/// Checks the exceptional, block and ordering conditions with exact Ext
/// groups, then the `K₀` basis condition. The first violation is found in
/// object order: for each object its self-Ext, then Ext against earlier
/// objects of its block, then against objects of earlier blocks.
pub fn verify_collection(
    coll: &ExceptionalCollection,
    fan: &CompleteFan2D,
    g: &SymmetryGroup,
) -> CollectionCertificate {
    let h = Cohomology::new(fan);
    let objects: Vec<(usize, &CollectionObject)> = coll
        .blocks
        .iter()
        .enumerate()
        .flat_map(|(b, blk)| blk.iter().map(move |o| (b, o)))
        .collect();
    let one = CohomologyVector {
        h0: 1,
        h1: 0,
        h2: 0,
    };
    let mut first: Option<Violation> = None;
    let (mut exceptional, mut orthogonal, mut ordered) = (true, true, true);
    let (mut checked, mut violations) = (0, 0);
    let mut record =
        |kind: ViolationKind, s: &CollectionObject, t: &CollectionObject, ext: CohomologyVector| {
            violations += 1;
            if first.is_none() {
                first = Some(Violation {
                    kind,
                    source: s.name.clone(),
                    target: t.name.clone(),
                    ext,
                });
            }
        };
    for (i, &(bi, vi)) in objects.iter().enumerate() {
        let own = h.ext(&vi.divisor, &vi.divisor);
        checked += 1;
        if own != one {
            exceptional = false;
            record(ViolationKind::NotExceptional, vi, vi, own);
        }
        for &(bj, vj) in objects[..i].iter().filter(|(bj, _)| *bj == bi) {
            debug_assert_eq!(bi, bj);
            for (s, t) in [(vi, vj), (vj, vi)] {
                let e = h.ext(&s.divisor, &t.divisor);
                checked += 1;
                if !e.is_zero() {
                    orthogonal = false;
                    record(ViolationKind::Block, s, t, e);
                }
            }
        }
        for &(_, vj) in objects[..i].iter().filter(|(bj, _)| *bj < bi) {
            let e = h.ext(&vi.divisor, &vj.divisor);
            checked += 1;
            if !e.is_zero() {
                ordered = false;
                record(ViolationKind::Order, vi, vj, e);
            }
        }
    }

    let model = h.model();
    let classes: Vec<K0Class> = objects
        .iter()
        .map(|(_, o)| model.line_bundle_class(&o.divisor))
        .collect();
    let rows: Vec<Vec<i64>> = classes.iter().map(K0Class::coordinates).collect();
    let basis_determinant = if rows.len() == fan.len() {
        determinant(&rows)
    } else {
        0
    };

    let group_stable = match g.attach(fan) {
        Ok(g) => coll.blocks.iter().all(|blk| {
            let block_classes: Vec<K0Class> = blk
                .iter()
                .map(|o| model.line_bundle_class(&o.divisor))
                .collect();
            g.perms().iter().all(|p| {
                block_classes
                    .iter()
                    .all(|c| block_classes.contains(&model.act(p, c)))
            })
        }),
        Err(_) => false,
    };

    CollectionCertificate {
        passed: exceptional
            && orthogonal
            && ordered
            && basis_determinant.abs() == 1
            && group_stable,
        objects: objects.len(),
        exceptional,
        blocks_orthogonal: orthogonal,
        ordered,
        basis_determinant,
        group_stable,
        pairs_checked: checked,
        violations,
        first_violation: first,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minimal::minimalize;
    use crate::symmetry::compute_aut;

    fn collection(fan: &CompleteFan2D, g: &SymmetryGroup) -> ExceptionalCollection {
        build_collection(&minimalize(fan, g).unwrap(), g).unwrap()
    }

    #[test]
    fn projective_plane() {
        let p2 = CompleteFan2D::projective_plane();
        let g = compute_aut(&p2);
        let c = collection(&p2, &g);
        assert_eq!(c.to_string(), "[{O}, {O(1)}, {O(2)}]");
        assert!(verify_collection(&c, &p2, &g).passed);
        let cert = verify_collection(&c.reversed(), &p2, &g);
        assert!(!cert.passed);
        assert_eq!(
            cert.first_violation.unwrap().to_string(),
            "Ext^0(O(1), O(2)) = 3"
        );
    }

    #[test]
    fn hexagon_blocks() {
        let dp6 = CompleteFan2D::hexagon();
        let g = compute_aut(&dp6);
        let c = collection(&dp6, &g);
        assert_eq!(c.block_sizes(), vec![1, 3, 2]);
        assert!(verify_collection(&c, &dp6, &g).passed);
    }

    #[test]
    fn one_point_blow_up() {
        let bl = CompleteFan2D::projective_plane().blow_up(&[0]).unwrap();
        let g = SymmetryGroup::trivial();
        let c = collection(&bl, &g);
        assert_eq!(c.to_string(), "[{O}, {O(E1)}, {O(1)}, {O(2)}]");
        assert!(verify_collection(&c, &bl, &g).passed);
    }
}

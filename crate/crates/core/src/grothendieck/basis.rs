//! Permutation bases of `K₀` made of line bundles.

use std::collections::BTreeMap;

use serde::Serialize;

use super::picard::Divisor;
use super::ring::{K0Class, K0Model};
use super::GrothendieckError;
use crate::fan::CompleteFan2D;
use crate::linalg::{determinant, extends_to_basis};
use crate::minimal::{
    classify_minimal, standard_identification, ContractionTrace, MinimalKind, MinimalLabel,
};
use crate::symmetry::SymmetryGroup;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ElementOrigin {
    /// Total transform of a basis element of the minimal core.
    Core { slot: String },
    /// `O(E)` for a ray contracted in the given (1-based) trace step.
    Exceptional { step: usize },
    /// Found by [`search_line_bundle_basis`].
    Search,
}

/// A line bundle `O(D)` with a name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisElement {
    pub name: String,
    pub divisor: Divisor,
    pub origin: ElementOrigin,
}

impl BasisElement {
    pub fn core(slot: &str, divisor: Divisor) -> Self {
        BasisElement {
            name: slot.to_string(),
            divisor,
            origin: ElementOrigin::Core {
                slot: slot.to_string(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit {
    /// Indices into the element list, sorted.
    pub members: Vec<usize>,
    pub representative: usize,
    /// `[G : Stab(S)]`, equal to the orbit size.
    pub stabilizer_index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisCertificate {
    pub determinant: i128,
    pub closed: bool,
    pub orbits: Vec<Orbit>,
}

impl BasisCertificate {
    /// Orbit sizes in order of first member.
    pub fn signature(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o.members.len()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PermutationBasis {
    pub fan: CompleteFan2D,
    pub elements: Vec<BasisElement>,
    pub classes: Vec<K0Class>,
    pub orbits: Vec<Orbit>,
    pub determinant: i128,
    /// Minimal pair the basis was transported from, if any.
    pub minimal: Option<MinimalLabel>,
}

impl PermutationBasis {
    pub fn signature(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o.members.len()).collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn names(&self) -> Vec<&str> {
        self.elements.iter().map(|e| e.name.as_str()).collect()
    }
}

/// Certifies unimodularity, closure under `g` and the orbit partition.
pub fn verify_permutation_basis(
    elements: &[BasisElement],
    fan: &CompleteFan2D,
    g: &SymmetryGroup,
) -> Result<BasisCertificate, GrothendieckError> {
    let model = K0Model::new(fan);
    let g = g.attach(fan)?;
    let classes: Vec<K0Class> = elements
        .iter()
        .map(|e| model.line_bundle_class(&e.divisor))
        .collect();
    let rows: Vec<Vec<i64>> = classes.iter().map(K0Class::coordinates).collect();
    let det = if rows.len() == fan.len() {
        determinant(&rows)
    } else {
        0
    };
    if det.abs() != 1 {
        return Err(GrothendieckError::NotABasis { determinant: det });
    }
    let index: BTreeMap<&K0Class, usize> =
        classes.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut image = vec![vec![0; g.order()]; classes.len()];
    for (i, c) in classes.iter().enumerate() {
        for (k, perm) in g.perms().iter().enumerate() {
            let moved = model.act(perm, c);
            image[i][k] = *index
                .get(&moved)
                .ok_or_else(|| GrothendieckError::NotInvariant {
                    element: elements[i].name.clone(),
                    group_element: g.elements()[k].entries(),
                })?;
        }
    }
    let mut seen = vec![false; classes.len()];
    let mut orbits = Vec::new();
    for i in 0..classes.len() {
        if seen[i] {
            continue;
        }
        let mut members: Vec<usize> = image[i].clone();
        members.sort_unstable();
        members.dedup();
        for &j in &members {
            seen[j] = true;
        }
        orbits.push(Orbit {
            representative: i,
            stabilizer_index: members.len(),
            members,
        });
    }
    Ok(BasisCertificate {
        determinant: det,
        closed: true,
        orbits,
    })
}

/// The basis of the minimal core, on the standard fan of `kind`.
pub fn core_elements(kind: MinimalKind) -> Vec<BasisElement> {
    let d = |c: &[i64]| Divisor(c.iter().map(|x| -x).collect());
    match kind {
        MinimalKind::P2 => vec![
            BasisElement::core("1", d(&[0, 0, 0])),
            BasisElement::core("J1", d(&[1, 0, 0])),
            BasisElement::core("J1^2", d(&[2, 0, 0])),
        ],
        MinimalKind::Hirzebruch(_) | MinimalKind::P1xP1 => vec![
            BasisElement::core("1", d(&[0, 0, 0, 0])),
            BasisElement::core("J1", d(&[1, 0, 0, 0])),
            BasisElement::core("J2", d(&[0, 1, 0, 0])),
            BasisElement::core("J1J2", d(&[1, 1, 0, 0])),
        ],
        // rays x1, y3, x2, y1, x3, y2 in counterclockwise order
        MinimalKind::DelPezzo6 => vec![
            BasisElement::core("1", d(&[0, 0, 0, 0, 0, 0])),
            BasisElement::core("R1", d(&[1, 0, 0, 0, 0, 1])),
            BasisElement::core("R2", d(&[0, 1, 1, 0, 0, 0])),
            BasisElement::core("R3", d(&[0, 0, 0, 1, 1, 0])),
            BasisElement::core("Q1", d(&[1, 1, 1, 0, 0, 0])),
            BasisElement::core("Q2", d(&[0, 0, 0, 1, 1, 1])),
        ],
    }
}

/// Moves line bundles on the standard fan of `kind` to the initial fan of
/// the trace, and produces `O(E)` for every contracted ray.
///
/// Returns the transported core elements and, per trace step, the
/// exceptional line bundles of that step, both on `trace.initial`.
pub fn transport_divisors(
    trace: &ContractionTrace,
    kind: MinimalKind,
    core: &[BasisElement],
) -> (Vec<BasisElement>, Vec<Vec<BasisElement>>) {
    let standard = kind.standard_fan();
    let m =
        standard_identification(kind, &trace.terminal).expect("terminal fan is of the given kind");
    let target: Vec<usize> = standard
        .rays()
        .iter()
        .map(|&v| {
            trace
                .terminal
                .index_of(m.apply(v))
                .expect("isomorphism maps rays to rays")
        })
        .collect();
    let mut core: Vec<BasisElement> = core
        .iter()
        .map(|e| {
            let mut c = vec![0; trace.terminal.len()];
            for (i, &t) in target.iter().enumerate() {
                c[t] = e.divisor.0[i];
            }
            BasisElement {
                divisor: Divisor(c),
                ..e.clone()
            }
        })
        .collect();
    let mut exceptional: Vec<Vec<BasisElement>> = vec![Vec::new(); trace.steps.len()];
    for (s, step) in trace.steps.iter().enumerate().rev() {
        for e in core.iter_mut().chain(exceptional.iter_mut().flatten()) {
            e.divisor = e.divisor.pull_back(&step.after, &step.before);
        }
        let single = step.orbit.len() == 1;
        exceptional[s] = step
            .orbit
            .iter()
            .enumerate()
            .map(|(k, &r)| BasisElement {
                name: if single {
                    format!("O(E{})", s + 1)
                } else {
                    format!("O(E{}_{})", s + 1, k + 1)
                },
                divisor: Divisor::prime(step.before.len(), r),
                origin: ElementOrigin::Exceptional { step: s + 1 },
            })
            .collect();
    }
    (core, exceptional)
}

/// The standard permutation basis: the core basis of the minimal model,
/// pulled back along the trace, followed by the `O(E)` of every step.
pub fn standard_permutation_basis(
    trace: &ContractionTrace,
    g: &SymmetryGroup,
) -> Result<PermutationBasis, GrothendieckError> {
    let label = classify_minimal(&trace.terminal, g).map_err(GrothendieckError::NotClassified)?;
    let (core, exceptional) = transport_divisors(trace, label.kind, &core_elements(label.kind));
    let elements: Vec<BasisElement> = core
        .into_iter()
        .chain(exceptional.into_iter().flatten())
        .collect();
    let cert = verify_permutation_basis(&elements, &trace.initial, g)?;
    let model = K0Model::new(&trace.initial);
    Ok(PermutationBasis {
        fan: trace.initial.clone(),
        classes: elements
            .iter()
            .map(|e| model.line_bundle_class(&e.divisor))
            .collect(),
        elements,
        orbits: cert.orbits,
        determinant: cert.determinant,
        minimal: Some(label),
    })
}

/// Searches `g`-stable sets of line-bundle classes `O(D)` with all
/// coefficients of `D` in `[-bound, bound]` for a basis of `K₀`.
///
/// Candidates are ordered by the smallest `|D|₁` realising the class, then
/// lexicographically; orbits are tried depth-first in that order and the
/// first basis found is returned. `None` only means that no basis exists
/// within the bound.
pub fn search_line_bundle_basis(
    fan: &CompleteFan2D,
    g: &SymmetryGroup,
    bound: u32,
) -> Option<PermutationBasis> {
    let model = K0Model::new(fan);
    let g = g.attach(fan).ok()?;
    let n = fan.len();
    let b = bound as i64;

    let mut divisors: Vec<Vec<i64>> = Vec::new();
    let mut c = vec![-b; n];
    loop {
        divisors.push(c.clone());
        let mut k = 0;
        while k < n && c[k] == b {
            c[k] = -b;
            k += 1;
        }
        if k == n {
            break;
        }
        c[k] += 1;
    }
    divisors.sort_by_key(|c| (c.iter().map(|x| x.abs()).sum::<i64>(), c.clone()));

    let mut reps: BTreeMap<K0Class, Divisor> = BTreeMap::new();
    let mut order: Vec<K0Class> = Vec::new();
    for c in divisors {
        let d = Divisor(c);
        let class = model.line_bundle_class(&d);
        if let std::collections::btree_map::Entry::Vacant(slot) = reps.entry(class.clone()) {
            order.push(class);
            slot.insert(d);
        }
    }

    let mut orbit_of: BTreeMap<K0Class, usize> = BTreeMap::new();
    let mut orbits: Vec<Vec<K0Class>> = Vec::new();
    for class in &order {
        if orbit_of.contains_key(class) {
            continue;
        }
        let mut members: Vec<K0Class> = Vec::new();
        for perm in g.perms() {
            let image = model.act(perm, class);
            if !members.contains(&image) {
                members.push(image);
            }
        }
        for m in &members {
            orbit_of.insert(m.clone(), orbits.len());
        }
        orbits.push(members);
    }

    fn dfs(
        orbits: &[Vec<K0Class>],
        start: usize,
        rows: &mut Vec<Vec<i64>>,
        chosen: &mut Vec<usize>,
        n: usize,
    ) -> bool {
        if rows.len() == n {
            return true;
        }
        for i in start..orbits.len() {
            if rows.len() + orbits[i].len() > n {
                continue;
            }
            let before = rows.len();
            rows.extend(orbits[i].iter().map(K0Class::coordinates));
            if extends_to_basis(rows) {
                chosen.push(i);
                if dfs(orbits, i + 1, rows, chosen, n) {
                    return true;
                }
                chosen.pop();
            }
            rows.truncate(before);
        }
        false
    }

    let mut rows = Vec::new();
    let mut chosen = Vec::new();
    if !dfs(&orbits, 0, &mut rows, &mut chosen, n) {
        return None;
    }
    let elements: Vec<BasisElement> = chosen
        .iter()
        .flat_map(|&i| orbits[i].iter())
        .map(|class| {
            let d = reps[class].clone();
            BasisElement {
                name: format!("O({d})"),
                divisor: d,
                origin: ElementOrigin::Search,
            }
        })
        .collect();
    let cert = verify_permutation_basis(&elements, fan, &g).ok()?;
    Some(PermutationBasis {
        fan: fan.clone(),
        classes: elements
            .iter()
            .map(|e| model.line_bundle_class(&e.divisor))
            .collect(),
        elements,
        orbits: cert.orbits,
        determinant: cert.determinant,
        minimal: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minimal::minimalize;
    use crate::symmetry::compute_aut;

    fn basis_for(fan: &CompleteFan2D, g: &SymmetryGroup) -> PermutationBasis {
        standard_permutation_basis(&minimalize(fan, g).unwrap(), g).unwrap()
    }

    #[test]
    fn core_signatures() {
        let f2 = CompleteFan2D::hirzebruch(2);
        assert_eq!(
            basis_for(&f2, &compute_aut(&f2)).signature(),
            vec![1, 1, 1, 1]
        );
        let p2 = CompleteFan2D::projective_plane();
        assert_eq!(basis_for(&p2, &compute_aut(&p2)).signature(), vec![1, 1, 1]);
        let sq = CompleteFan2D::square();
        assert_eq!(basis_for(&sq, &compute_aut(&sq)).signature(), vec![1, 2, 1]);
        let dp6 = CompleteFan2D::hexagon();
        let b = basis_for(&dp6, &compute_aut(&dp6));
        assert_eq!(b.signature(), vec![1, 3, 2]);
        assert_eq!(b.names(), vec!["1", "R1", "R2", "R3", "Q1", "Q2"]);
    }

    #[test]
    fn not_a_basis() {
        let f2 = CompleteFan2D::hirzebruch(2);
        let els = vec![
            BasisElement::core("1", Divisor(vec![0, 0, 0, 0])),
            BasisElement::core("J1", Divisor(vec![-1, 0, 0, 0])),
            BasisElement::core("J2", Divisor(vec![0, -1, 0, 0])),
            BasisElement::core("J1^2", Divisor(vec![-2, 0, 0, 0])),
        ];
        assert!(matches!(
            verify_permutation_basis(&els, &f2, &SymmetryGroup::trivial()),
            Err(GrothendieckError::NotABasis { .. })
        ));
    }

    #[test]
    fn transported_basis_on_blow_up() {
        let dp6 = CompleteFan2D::hexagon();
        let b = basis_for(&dp6, &SymmetryGroup::trivial());
        assert_eq!(b.len(), 6);
        assert_eq!(b.names()[3..], ["O(E1)", "O(E2)", "O(E3)"]);
    }

    #[test]
    fn search_examples() {
        let p2 = CompleteFan2D::projective_plane();
        let b = search_line_bundle_basis(&p2, &SymmetryGroup::trivial(), 2).unwrap();
        assert_eq!(b.len(), 3);
        assert!(search_line_bundle_basis(&p2, &SymmetryGroup::trivial(), 0).is_none());
        let f2 = CompleteFan2D::hirzebruch(2);
        assert!(search_line_bundle_basis(&f2, &compute_aut(&f2), 2).is_some());
    }
}

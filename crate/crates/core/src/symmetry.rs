//! Finite subgroups of `GL(2,Z)` and their action on fans.
//!
//! Up to conjugacy there are thirteen finite subgroups of `GL(2,Z)`, four
//! cyclic families and their dihedral extensions. [`classify_subgroup`]
//! names the class of any finite subgroup by first reducing it to a
//! conjugate with small entries, then filtering on conjugacy invariants and
//! finally exhibiting an explicit conjugator to the table representative.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fan::{CompleteFan2D, PrimitiveVector};
use crate::linalg::{det2, gcd};

/// Largest order of a finite subgroup of `GL(2,Z)`.
pub const MAX_FINITE_ORDER: usize = 12;

/// Entry bound for the conjugator search in [`classify_subgroup`].
pub const CONJUGATOR_BOUND: i64 = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("matrix {0:?} is not unimodular")]
    NotUnimodular([[i64; 2]; 2]),
    #[error("group is not finite: {0}")]
    NotFinite(String),
    #[error("no conjugator onto a table representative with entries bounded by {bound} was found")]
    UnclassifiedSubgroup { bound: i64 },
    #[error("matrix {0:?} does not permute the rays of the fan")]
    NotFanAutomorphism([[i64; 2]; 2]),
}

/// An element of `GL(2,Z)`, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[[i64; 2]; 2]", into = "[[i64; 2]; 2]")]
pub struct UnimodularMatrix([[i64; 2]; 2]);

impl TryFrom<[[i64; 2]; 2]> for UnimodularMatrix {
    type Error = SymmetryError;
    fn try_from(m: [[i64; 2]; 2]) -> Result<Self, SymmetryError> {
        UnimodularMatrix::new(m)
    }
}

impl From<UnimodularMatrix> for [[i64; 2]; 2] {
    fn from(m: UnimodularMatrix) -> Self {
        m.0
    }
}

impl UnimodularMatrix {
    pub const IDENTITY: UnimodularMatrix = UnimodularMatrix([[1, 0], [0, 1]]);

    pub fn new(m: [[i64; 2]; 2]) -> Result<Self, SymmetryError> {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if det.abs() == 1 {
            Ok(UnimodularMatrix(m))
        } else {
            Err(SymmetryError::NotUnimodular(m))
        }
    }

    /// Matrix whose columns are `a` and `b`; panics unless they form a basis.
    pub fn from_columns(a: PrimitiveVector, b: PrimitiveVector) -> Self {
        Self::new([[a.x, b.x], [a.y, b.y]]).expect("columns form a lattice basis")
    }

    pub fn entries(&self) -> [[i64; 2]; 2] {
        self.0
    }

    pub fn det(&self) -> i64 {
        let m = self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn trace(&self) -> i64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    pub fn neg(&self) -> Self {
        let m = self.0;
        UnimodularMatrix([[-m[0][0], -m[0][1]], [-m[1][0], -m[1][1]]])
    }

    pub fn apply(&self, v: PrimitiveVector) -> PrimitiveVector {
        let (x, y) = self.apply_pair((v.x, v.y));
        PrimitiveVector { x, y }
    }

    pub fn apply_pair(&self, v: (i64, i64)) -> (i64, i64) {
        let m = self.0;
        (m[0][0] * v.0 + m[0][1] * v.1, m[1][0] * v.0 + m[1][1] * v.1)
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &Self) -> Self {
        let (a, b) = (self.0, other.0);
        let mut c = [[0; 2]; 2];
        for (i, row) in c.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        UnimodularMatrix(c)
    }

    pub fn inverse(&self) -> Self {
        let m = self.0;
        let d = self.det();
        UnimodularMatrix([[d * m[1][1], -d * m[0][1]], [-d * m[1][0], d * m[0][0]]])
    }

    pub fn transpose(&self) -> Self {
        let m = self.0;
        UnimodularMatrix([[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
    }

    /// `p · self · p⁻¹`.
    pub fn conjugate_by(&self, p: &Self) -> Self {
        p.compose(self).compose(&p.inverse())
    }

    /// Multiplicative order, or `None` when it exceeds [`MAX_FINITE_ORDER`]
    /// (a finite-order element of `GL(2,Z)` has order 1, 2, 3, 4 or 6).
    pub fn order(&self) -> Option<usize> {
        let mut p = *self;
        for k in 1..=MAX_FINITE_ORDER {
            if p.is_identity() {
                return Some(k);
            }
            p = p.compose(self);
        }
        None
    }

    pub fn max_abs_entry(&self) -> i64 {
        self.0.iter().flatten().map(|x| x.abs()).max().unwrap_or(0)
    }

    /// Index in `Z²` of the sum of the `±1` eigenlattices, for an involution
    /// of determinant `-1`. Index 2 is the swap type `C`, index 1 the
    /// coordinate-reflection type `C'`.
    pub fn reflection_index(&self) -> Option<i64> {
        if self.det() != -1 || !self.compose(self).is_identity() {
            return None;
        }
        let m = self.0;
        let kernel = |d: i64| -> (i64, i64) {
            let (p, q, r, s) = (m[0][0] - d, m[0][1], m[1][0], m[1][1] - d);
            let v = if (p, q) != (0, 0) { (q, -p) } else { (s, -r) };
            let g = gcd(v.0, v.1);
            (v.0 / g, v.1 / g)
        };
        Some(det2(kernel(1), kernel(-1)).abs())
    }
}

impl fmt::Display for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.0;
        write!(f, "[[{},{}],[{},{}]]", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

/// A finite subgroup of `GL(2,Z)`, optionally attached to a fan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryGroup {
    elements: Vec<UnimodularMatrix>,
    generators: Vec<UnimodularMatrix>,
    /// `ray_permutations[k][i]` is the image index of ray `i` under
    /// `elements[k]`.
    ray_permutations: Option<Vec<Vec<usize>>>,
}

impl SymmetryGroup {
    pub fn trivial() -> Self {
        SymmetryGroup {
            elements: vec![UnimodularMatrix::IDENTITY],
            generators: Vec::new(),
            ray_permutations: None,
        }
    }

    /// Closure of a set of generators.
    pub fn generated_by(generators: &[UnimodularMatrix]) -> Result<Self, SymmetryError> {
        for g in generators {
            if g.order().is_none() {
                return Err(SymmetryError::NotFinite(format!("{g} has infinite order")));
            }
        }
        let mut seen: BTreeSet<UnimodularMatrix> = BTreeSet::from([UnimodularMatrix::IDENTITY]);
        let mut queue = VecDeque::from([UnimodularMatrix::IDENTITY]);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = x.compose(g);
                if seen.insert(y) {
                    if seen.len() > MAX_FINITE_ORDER {
                        return Err(SymmetryError::NotFinite(format!(
                            "closure exceeds {MAX_FINITE_ORDER} elements"
                        )));
                    }
                    queue.push_back(y);
                }
            }
        }
        let mut gens: Vec<UnimodularMatrix> = generators
            .iter()
            .copied()
            .filter(|g| !g.is_identity())
            .collect();
        gens.sort();
        gens.dedup();
        Ok(SymmetryGroup {
            elements: seen.into_iter().collect(),
            generators: gens,
            ray_permutations: None,
        })
    }

    /// Group on an explicit element set that is already closed.
    fn from_closed_set(elements: BTreeSet<UnimodularMatrix>) -> Self {
        let elements: Vec<UnimodularMatrix> = elements.into_iter().collect();
        let generators = minimal_generators(&elements);
        SymmetryGroup {
            elements,
            generators,
            ray_permutations: None,
        }
    }

    pub fn elements(&self) -> &[UnimodularMatrix] {
        &self.elements
    }

    pub fn generators(&self) -> &[UnimodularMatrix] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, m: &UnimodularMatrix) -> bool {
        self.elements.binary_search(m).is_ok()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements
            .iter()
            .all(|a| self.elements.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        self.elements.iter().any(|g| g.order() == Some(n))
    }

    pub fn same_elements(&self, other: &SymmetryGroup) -> bool {
        self.elements == other.elements
    }

    /// `p G p⁻¹` (detached from any fan).
    pub fn conjugate_by(&self, p: &UnimodularMatrix) -> Self {
        let elements: BTreeSet<UnimodularMatrix> =
            self.elements.iter().map(|g| g.conjugate_by(p)).collect();
        let mut generators: Vec<UnimodularMatrix> =
            self.generators.iter().map(|g| g.conjugate_by(p)).collect();
        generators.sort();
        SymmetryGroup {
            elements: elements.into_iter().collect(),
            generators,
            ray_permutations: None,
        }
    }

    /// Attaches the group to a fan, recording the ray permutation of every
    /// element.
    pub fn attach(&self, fan: &CompleteFan2D) -> Result<Self, SymmetryError> {
        let perms = self
            .elements
            .iter()
            .map(|g| {
                fan.ray_permutation(g)
                    .ok_or(SymmetryError::NotFanAutomorphism(g.entries()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SymmetryGroup {
            ray_permutations: Some(perms),
            ..self.clone()
        })
    }

    pub fn detach(&self) -> Self {
        SymmetryGroup {
            ray_permutations: None,
            ..self.clone()
        }
    }

    pub fn is_attached(&self) -> bool {
        self.ray_permutations.is_some()
    }

    pub fn ray_permutations(&self) -> Option<&[Vec<usize>]> {
        self.ray_permutations.as_deref()
    }

    /// Ray permutations; panics when the group is not attached.
    pub fn perms(&self) -> &[Vec<usize>] {
        self.ray_permutations
            .as_deref()
            .expect("group is not attached to a fan")
    }

    /// Orbit of a ray index, sorted.
    pub fn ray_orbit(&self, ray: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = self.perms().iter().map(|p| p[ray]).collect();
        set.into_iter().collect()
    }

    /// All ray orbits, ordered by smallest member.
    pub fn ray_orbits(&self) -> Vec<Vec<usize>> {
        let n = self.perms()[0].len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for i in 0..n {
            if !seen[i] {
                let orbit = self.ray_orbit(i);
                for &j in &orbit {
                    seen[j] = true;
                }
                out.push(orbit);
            }
        }
        out
    }

    /// Orbits of the maximal cones `⟨v_i, v_{i+1}⟩`, labelled by `i`.
    pub fn cone_orbits(&self) -> Vec<Vec<usize>> {
        let n = self.perms()[0].len();
        let cone_of = |a: usize, b: usize| -> usize {
            if (a + 1) % n == b {
                a
            } else {
                debug_assert_eq!((b + 1) % n, a);
                b
            }
        };
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let orbit: BTreeSet<usize> = self
                .perms()
                .iter()
                .map(|p| cone_of(p[i], p[(i + 1) % n]))
                .collect();
            for &j in &orbit {
                seen[j] = true;
            }
            out.push(orbit.into_iter().collect());
        }
        out
    }
}

fn minimal_generators(elements: &[UnimodularMatrix]) -> Vec<UnimodularMatrix> {
    // elements of larger order first keeps generating sets short
    let mut candidates: Vec<UnimodularMatrix> = elements
        .iter()
        .copied()
        .filter(|g| !g.is_identity())
        .collect();
    candidates.sort_by_key(|g| (std::cmp::Reverse(g.order().unwrap_or(0)), *g));
    let mut gens = Vec::new();
    let mut span = SymmetryGroup::trivial();
    for g in candidates {
        if span.order() == elements.len() {
            break;
        }
        if !span.contains(&g) {
            gens.push(g);
            span = SymmetryGroup::generated_by(&gens).expect("subgroup of a finite group");
        }
    }
    gens.sort();
    gens
}

/// The full group of fan automorphisms `Aut_Σ`, attached to the fan.
pub fn compute_aut(fan: &CompleteFan2D) -> SymmetryGroup {
    let elements: BTreeSet<UnimodularMatrix> = fan.isomorphisms_to(fan).into_iter().collect();
    SymmetryGroup::from_closed_set(elements)
        .attach(fan)
        .expect("automorphisms preserve the fan")
}

/// Every subgroup of a finite group, each with a generating set. Sorted by
/// order, then by element list.
pub fn enumerate_subgroups(g: &SymmetryGroup) -> Vec<SymmetryGroup> {
    // subgroups of cyclic and dihedral groups need at most two generators
    let mut found: BTreeSet<Vec<UnimodularMatrix>> = BTreeSet::new();
    let els = g.elements();
    for (i, a) in els.iter().enumerate() {
        for b in &els[i..] {
            let h = SymmetryGroup::generated_by(&[*a, *b]).expect("subgroup of a finite group");
            found.insert(h.elements);
        }
    }
    let mut subgroups: Vec<SymmetryGroup> = found
        .into_iter()
        .map(|els| SymmetryGroup::from_closed_set(els.into_iter().collect()))
        .collect();
    subgroups.sort_by(|x, y| {
        x.order()
            .cmp(&y.order())
            .then_with(|| x.elements.cmp(&y.elements))
    });
    subgroups
}

/// One of the thirteen conjugacy classes of finite subgroups of `GL(2,Z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConjugacyLabel {
    C1,
    C2,
    C3,
    C4,
    C6,
    D2,
    #[serde(rename = "D2'")]
    D2Prime,
    D4,
    #[serde(rename = "D4'")]
    D4Prime,
    D6,
    #[serde(rename = "D6'")]
    D6Prime,
    D8,
    D12,
}

/// Table generators.
pub mod table {
    use super::UnimodularMatrix;
    pub const A: UnimodularMatrix = UnimodularMatrix([[1, -1], [1, 0]]);
    pub const B: UnimodularMatrix = UnimodularMatrix([[0, -1], [1, 0]]);
    pub const C: UnimodularMatrix = UnimodularMatrix([[0, 1], [1, 0]]);
    pub const C_PRIME: UnimodularMatrix = UnimodularMatrix([[1, 0], [0, -1]]);
    pub const MINUS_I: UnimodularMatrix = UnimodularMatrix([[-1, 0], [0, -1]]);
}

impl ConjugacyLabel {
    pub const ALL: [ConjugacyLabel; 13] = [
        ConjugacyLabel::C1,
        ConjugacyLabel::C2,
        ConjugacyLabel::C3,
        ConjugacyLabel::C4,
        ConjugacyLabel::C6,
        ConjugacyLabel::D2,
        ConjugacyLabel::D2Prime,
        ConjugacyLabel::D4,
        ConjugacyLabel::D4Prime,
        ConjugacyLabel::D6,
        ConjugacyLabel::D6Prime,
        ConjugacyLabel::D8,
        ConjugacyLabel::D12,
    ];

    pub fn name(self) -> &'static str {
        use ConjugacyLabel::*;
        match self {
            C1 => "C1",
            C2 => "C2",
            C3 => "C3",
            C4 => "C4",
            C6 => "C6",
            D2 => "D2",
            D2Prime => "D2'",
            D4 => "D4",
            D4Prime => "D4'",
            D6 => "D6",
            D6Prime => "D6'",
            D8 => "D8",
            D12 => "D12",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|l| l.name() == s)
    }

    /// Generators of the table representative.
    pub fn generators(self) -> Vec<UnimodularMatrix> {
        use table::*;
        use ConjugacyLabel::*;
        let a2 = A.compose(&A);
        match self {
            C1 => vec![],
            C2 => vec![MINUS_I],
            C3 => vec![a2],
            C4 => vec![B],
            C6 => vec![A],
            D2 => vec![C],
            D2Prime => vec![C_PRIME],
            D4 => vec![MINUS_I, C],
            D4Prime => vec![MINUS_I, C_PRIME],
            D6 => vec![a2, C],
            D6Prime => vec![a2, C.neg()],
            D8 => vec![B, C],
            D12 => vec![A, C],
        }
    }

    pub fn representative(self) -> SymmetryGroup {
        SymmetryGroup::generated_by(&self.generators()).expect("table groups are finite")
    }

    pub fn order(self) -> usize {
        use ConjugacyLabel::*;
        match self {
            C1 => 1,
            C2 | D2 | D2Prime => 2,
            C3 => 3,
            C4 | D4 | D4Prime => 4,
            C6 | D6 | D6Prime => 6,
            D8 => 8,
            D12 => 12,
        }
    }
}

impl fmt::Display for ConjugacyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Result of [`classify_subgroup`]: the label and a conjugator `P` with
/// `P G P⁻¹` equal to the table representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub label: ConjugacyLabel,
    pub conjugator: UnimodularMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Invariants {
    order: usize,
    rotations: usize,
    has_minus_identity: bool,
    reflection_indices: Vec<i64>,
}

fn invariants(g: &SymmetryGroup) -> Invariants {
    let mut reflection_indices: Vec<i64> = g
        .elements()
        .iter()
        .filter_map(|m| m.reflection_index())
        .collect();
    reflection_indices.sort_unstable();
    Invariants {
        order: g.order(),
        rotations: g.elements().iter().filter(|m| m.det() == 1).count(),
        has_minus_identity: g.contains(&table::MINUS_I),
        reflection_indices,
    }
}

fn table_invariants() -> &'static Vec<(ConjugacyLabel, SymmetryGroup, Invariants)> {
    static CELL: OnceLock<Vec<(ConjugacyLabel, SymmetryGroup, Invariants)>> = OnceLock::new();
    CELL.get_or_init(|| {
        ConjugacyLabel::ALL
            .into_iter()
            .map(|l| {
                let rep = l.representative();
                let inv = invariants(&rep);
                (l, rep, inv)
            })
            .collect()
    })
}

fn bounded_matrices() -> &'static Vec<UnimodularMatrix> {
    static CELL: OnceLock<Vec<UnimodularMatrix>> = OnceLock::new();
    CELL.get_or_init(|| {
        let r = -CONJUGATOR_BOUND..=CONJUGATOR_BOUND;
        let mut out = Vec::new();
        for a in r.clone() {
            for b in r.clone() {
                for c in r.clone() {
                    for d in r.clone() {
                        if let Ok(m) = UnimodularMatrix::new([[a, b], [c, d]]) {
                            out.push(m);
                        }
                    }
                }
            }
        }
        // small conjugators first
        out.sort_by_key(|m| (m.max_abs_entry(), *m));
        out
    })
}

/// Reduces the invariant form `Σ gᵀg` by Gauss reduction and returns `U`
/// such that `U⁻¹ G U` preserves a reduced form and so has entries in
/// `{-1, 0, 1}`.
fn reducing_basis(g: &SymmetryGroup) -> UnimodularMatrix {
    let (mut a, mut b, mut c) = (0i64, 0i64, 0i64);
    for m in g.elements() {
        let e = m.entries();
        a += e[0][0] * e[0][0] + e[1][0] * e[1][0];
        b += e[0][0] * e[0][1] + e[1][0] * e[1][1];
        c += e[0][1] * e[0][1] + e[1][1] * e[1][1];
    }
    let mut u = UnimodularMatrix::IDENTITY;
    loop {
        // e2 -= t e1 with t the nearest integer to b/a
        let t = (2 * b + a).div_euclid(2 * a);
        if t != 0 {
            let shear = UnimodularMatrix([[1, -t], [0, 1]]);
            u = u.compose(&shear);
            c = c - 2 * t * b + t * t * a;
            b -= t * a;
        }
        if a > c {
            u = u.compose(&table::C);
            std::mem::swap(&mut a, &mut c);
        } else {
            break;
        }
    }
    u
}

/// Names the conjugacy class of a finite subgroup of `GL(2,Z)`.
pub fn classify_subgroup(g: &SymmetryGroup) -> Result<Classification, SymmetryError> {
    for m in g.elements() {
        if m.order().is_none() {
            return Err(SymmetryError::NotFinite(format!("{m} has infinite order")));
        }
    }
    let u = reducing_basis(g);
    let reduced = g.conjugate_by(&u.inverse());
    let inv = invariants(&reduced);
    for (label, rep, rep_inv) in table_invariants() {
        if *rep_inv != inv {
            continue;
        }
        let gens = if reduced.generators().is_empty() {
            reduced.elements()
        } else {
            reduced.generators()
        };
        for p in bounded_matrices() {
            if gens.iter().all(|x| rep.contains(&x.conjugate_by(p))) {
                // P U⁻¹ G U P⁻¹ = rep
                return Ok(Classification {
                    label: *label,
                    conjugator: p.compose(&u.inverse()),
                });
            }
        }
    }
    Err(SymmetryError::UnclassifiedSubgroup {
        bound: CONJUGATOR_BOUND,
    })
}

//! Smooth complete fans in `Z²`.
//!
//! A fan is stored as its cyclic list of primitive ray generators in
//! counterclockwise order; the maximal cones are the consecutive pairs. The
//! list is always rotated so that the first ray makes the smallest angle with
//! `(1, 0)`, which gives every fan a single canonical form.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{det2, gcd};
use crate::symmetry::UnimodularMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("ray {index} = ({x},{y}) is not primitive")]
    NonPrimitiveRay { index: usize, x: i64, y: i64 },
    #[error("rays {index} and {next} are not in counterclockwise order (det {det})")]
    NotCounterclockwise { index: usize, next: usize, det: i64 },
    #[error("cone spanned by rays {index} and {next} is not smooth (det {det})")]
    NotSmooth { index: usize, next: usize, det: i64 },
    #[error("ray sequence winds {winding} times around the origin")]
    NotComplete { winding: usize },
    #[error("a complete fan needs at least 3 rays, got {count}")]
    TooFewRays { count: usize },
    #[error("cone index {index} is out of range or repeated")]
    InvalidConeIndex { index: usize },
    #[error("ray {index} has self-intersection {value}, not -1")]
    NotMinusOneCurve { index: usize, value: i64 },
    #[error("rays {first} and {second} are adjacent; their curves meet")]
    AdjacentContraction { first: usize, second: usize },
    #[error("ray index {index} is out of range or repeated")]
    InvalidRayIndex { index: usize },
}

/// A primitive lattice vector; `gcd(|x|, |y|) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimitiveVector {
    pub x: i64,
    pub y: i64,
}

impl PrimitiveVector {
    pub fn new(x: i64, y: i64) -> Option<Self> {
        (gcd(x, y) == 1).then_some(PrimitiveVector { x, y })
    }

    pub fn as_pair(self) -> (i64, i64) {
        (self.x, self.y)
    }

    /// Pairing with a character `m ∈ M = Hom(N, Z)`.
    pub fn pair(self, m: (i64, i64)) -> i64 {
        self.x * m.0 + self.y * m.1
    }

    fn half(self) -> u8 {
        if self.y > 0 || (self.y == 0 && self.x > 0) {
            0
        } else {
            1
        }
    }

    /// Exact comparison of counterclockwise angles measured from `(1, 0)`
    /// in `[0, 2π)`.
    pub fn angle_cmp(self, other: Self) -> Ordering {
        self.half()
            .cmp(&other.half())
            .then_with(|| 0.cmp(&det2(self.as_pair(), other.as_pair())))
    }
}

impl fmt::Display for PrimitiveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Cyclic sequence `a_i = D_i²` aligned with the rays of a fan.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct SelfIntersectionSequence(pub Vec<i64>);

impl SelfIntersectionSequence {
    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::ops::Index<usize> for SelfIntersectionSequence {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

/// A smooth complete fan in `Z²`: the split toric surface.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompleteFan2D {
    rays: Vec<PrimitiveVector>,
}

impl CompleteFan2D {
    /// Validates a counterclockwise cyclic ray list and returns it in
    /// canonical rotation.
    pub fn new(raw: &[(i64, i64)]) -> Result<Self, FanError> {
        if raw.len() < 3 {
            return Err(FanError::TooFewRays { count: raw.len() });
        }
        let mut rays = Vec::with_capacity(raw.len());
        for (index, &(x, y)) in raw.iter().enumerate() {
            rays.push(PrimitiveVector::new(x, y).ok_or(FanError::NonPrimitiveRay {
                index,
                x,
                y,
            })?);
        }
        let n = rays.len();
        for index in 0..n {
            let next = (index + 1) % n;
            let det = det2(rays[index].as_pair(), rays[next].as_pair());
            if det <= 0 {
                return Err(FanError::NotCounterclockwise { index, next, det });
            }
            if det != 1 {
                return Err(FanError::NotSmooth { index, next, det });
            }
        }
        // every step turns by less than π, so each wrap past angle 0 is one full turn
        let winding = (0..n)
            .filter(|&i| rays[(i + 1) % n].angle_cmp(rays[i]) == Ordering::Less)
            .count();
        if winding != 1 {
            return Err(FanError::NotComplete { winding });
        }
        Ok(Self::canonical(rays))
    }

    fn canonical(mut rays: Vec<PrimitiveVector>) -> Self {
        let first = (0..rays.len())
            .min_by(|&a, &b| rays[a].angle_cmp(rays[b]))
            .expect("non-empty");
        rays.rotate_left(first);
        CompleteFan2D { rays }
    }

    pub fn projective_plane() -> Self {
        Self::new(&[(1, 0), (0, 1), (-1, -1)]).expect("P2 fan")
    }

    /// Hirzebruch surface `F_a` with rays `(1,0), (0,1), (-1,a), (0,-1)`.
    pub fn hirzebruch(a: i64) -> Self {
        Self::new(&[(1, 0), (0, 1), (-1, a), (0, -1)]).expect("Hirzebruch fan")
    }

    /// `P¹ × P¹`, the square fan.
    pub fn square() -> Self {
        Self::hirzebruch(0)
    }

    /// Degree-6 del Pezzo surface, the hexagonal fan.
    pub fn hexagon() -> Self {
        Self::new(&[(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)]).expect("dP6 fan")
    }

    pub fn rays(&self) -> &[PrimitiveVector] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> PrimitiveVector {
        self.rays[i]
    }

    pub fn ray_pairs(&self) -> Vec<(i64, i64)> {
        self.rays.iter().map(|r| r.as_pair()).collect()
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn index_of(&self, v: PrimitiveVector) -> Option<usize> {
        self.rays.iter().position(|&r| r == v)
    }

    pub fn index_of_pair(&self, v: (i64, i64)) -> Option<usize> {
        self.rays.iter().position(|r| r.as_pair() == v)
    }

    pub fn next(&self, i: usize) -> usize {
        (i + 1) % self.len()
    }

    pub fn prev(&self, i: usize) -> usize {
        (i + self.len() - 1) % self.len()
    }

    pub fn are_adjacent(&self, i: usize, j: usize) -> bool {
        i != j && (self.next(i) == j || self.next(j) == i)
    }

    /// `a_i` from the wall relation `v_{i-1} + v_{i+1} = -a_i v_i`.
    pub fn self_intersections(&self) -> SelfIntersectionSequence {
        let values = (0..self.len())
            .map(|i| {
                let (p, v, q) = (
                    self.rays[self.prev(i)],
                    self.rays[i],
                    self.rays[self.next(i)],
                );
                let s = (p.x + q.x, p.y + q.y);
                debug_assert_eq!(
                    det2(s, v.as_pair()),
                    0,
                    "wall relation fails on a smooth fan"
                );
                // v is primitive so one of its coordinates is nonzero
                if v.x != 0 {
                    -s.0 / v.x
                } else {
                    -s.1 / v.y
                }
            })
            .collect();
        SelfIntersectionSequence(values)
    }

    /// Star subdivision of each selected maximal cone `⟨v_i, v_{i+1}⟩`.
    pub fn blow_up(&self, cone_indices: &[usize]) -> Result<Self, FanError> {
        self.blow_up_traced(cone_indices).map(|(f, _)| f)
    }

    /// Like [`blow_up`](Self::blow_up), also returning the indices of the
    /// inserted rays in the new fan.
    pub fn blow_up_traced(&self, cone_indices: &[usize]) -> Result<(Self, Vec<usize>), FanError> {
        let n = self.len();
        let mut selected = vec![false; n];
        for &index in cone_indices {
            if index >= n || selected[index] {
                return Err(FanError::InvalidConeIndex { index });
            }
            selected[index] = true;
        }
        let mut rays = Vec::with_capacity(n + cone_indices.len());
        let mut inserted = Vec::new();
        for (i, &picked) in selected.iter().enumerate() {
            rays.push(self.rays[i]);
            if picked {
                let (u, v) = (self.rays[i], self.rays[self.next(i)]);
                let w = PrimitiveVector {
                    x: u.x + v.x,
                    y: u.y + v.y,
                };
                inserted.push(w);
                rays.push(w);
            }
        }
        let fan = Self::canonical(rays);
        let mut idx: Vec<usize> = inserted
            .iter()
            .map(|&w| fan.index_of(w).expect("inserted ray present"))
            .collect();
        idx.sort_unstable();
        Ok((fan, idx))
    }

    /// Contracts the `(-1)`-curves of the selected rays.
    pub fn blow_down(&self, ray_indices: &[usize]) -> Result<Self, FanError> {
        let n = self.len();
        let a = self.self_intersections();
        let mut selected = vec![false; n];
        for &index in ray_indices {
            if index >= n || selected[index] {
                return Err(FanError::InvalidRayIndex { index });
            }
            if a[index] != -1 {
                return Err(FanError::NotMinusOneCurve {
                    index,
                    value: a[index],
                });
            }
            selected[index] = true;
        }
        for i in 0..n {
            let j = self.next(i);
            if selected[i] && selected[j] {
                return Err(FanError::AdjacentContraction {
                    first: i.min(j),
                    second: i.max(j),
                });
            }
        }
        let remaining: Vec<(i64, i64)> = (0..n)
            .filter(|&i| !selected[i])
            .map(|i| self.rays[i].as_pair())
            .collect();
        Self::new(&remaining)
    }

    /// Image of the fan under a lattice automorphism.
    pub fn transform(&self, m: &UnimodularMatrix) -> Self {
        let mut rays: Vec<PrimitiveVector> = self.rays.iter().map(|&r| m.apply(r)).collect();
        if m.det() < 0 {
            rays.reverse();
        }
        Self::canonical(rays)
    }

    /// Permutation of ray indices induced by `m`, if `m` maps the ray set to
    /// itself: `perm[i]` is the index of `m·v_i`.
    pub fn ray_permutation(&self, m: &UnimodularMatrix) -> Option<Vec<usize>> {
        self.rays
            .iter()
            .map(|&r| self.index_of(m.apply(r)))
            .collect()
    }

    /// Every `M ∈ GL(2,Z)` with `M·self = other`, found by sending the
    /// lattice basis `(v_0, v_1)` to each adjacent pair of `other` in both
    /// orientations.
    pub fn isomorphisms_to(&self, other: &CompleteFan2D) -> Vec<UnimodularMatrix> {
        if self.len() != other.len() {
            return Vec::new();
        }
        let (v0, v1) = (self.rays[0], self.rays[1]);
        let source_inv = UnimodularMatrix::from_columns(v0, v1).inverse();
        let mut found = Vec::new();
        let n = other.len();
        for j in 0..n {
            let (w, w_next) = (other.rays[j], other.rays[(j + 1) % n]);
            for (a, b) in [(w, w_next), (w_next, w)] {
                let m = UnimodularMatrix::from_columns(a, b).compose(&source_inv);
                if self
                    .rays
                    .iter()
                    .all(|&r| other.index_of(m.apply(r)).is_some())
                {
                    found.push(m);
                }
            }
        }
        found.sort();
        found.dedup();
        found
    }
}

/// A lattice isomorphism carrying `f1` onto `f2`, if one exists.
pub fn fans_isomorphic(f1: &CompleteFan2D, f2: &CompleteFan2D) -> Option<UnimodularMatrix> {
    let all = f1.isomorphisms_to(f2);
    all.iter()
        .find(|m| m.is_identity())
        .or_else(|| all.first())
        .copied()
}

impl fmt::Display for CompleteFan2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rays.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

/// Wire form of a fan: `{"rays": [[1,0],[0,1],[-1,-1]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanJson {
    pub rays: Vec<[i64; 2]>,
}

impl From<&CompleteFan2D> for FanJson {
    fn from(f: &CompleteFan2D) -> Self {
        FanJson {
            rays: f.rays.iter().map(|r| [r.x, r.y]).collect(),
        }
    }
}

impl TryFrom<FanJson> for CompleteFan2D {
    type Error = FanError;
    fn try_from(j: FanJson) -> Result<Self, FanError> {
        let raw: Vec<(i64, i64)> = j.rays.iter().map(|r| (r[0], r[1])).collect();
        CompleteFan2D::new(&raw)
    }
}

impl Serialize for CompleteFan2D {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FanJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for CompleteFan2D {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = FanJson::deserialize(d)?;
        CompleteFan2D::try_from(j).map_err(serde::de::Error::custom)
    }
}

//! `K₀(X)` in `(rank, c₁, χ)` coordinates.
//!
//! Products go through the Chern character `(r, c₁, ch₂)`. On a rational
//! surface `χ = r + (c₁·(-K))/2 + ch₂`, so `2ch₂ = 2χ - 2r + c₁·K` is an
//! integer and the product formula
//! `ch(xy) = (r r', r c₁' + r' c₁, r ch₂' + r' ch₂ + c₁·c₁')`
//! stays integral when `ch₂` is stored doubled.

use std::fmt;

use serde::Serialize;

use super::picard::{Divisor, PicardLattice};
use super::GrothendieckError;
use crate::fan::CompleteFan2D;
use crate::linalg::{extends_to_basis, smith_invariants};
use crate::symmetry::SymmetryGroup;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct K0Class {
    pub rank: i64,
    pub c1: Vec<i64>,
    pub chi: i64,
}

impl K0Class {
    /// `(r, c₁, χ)` flattened into `Z^N`.
    pub fn coordinates(&self) -> Vec<i64> {
        let mut v = Vec::with_capacity(self.c1.len() + 2);
        v.push(self.rank);
        v.extend(&self.c1);
        v.push(self.chi);
        v
    }
}

impl fmt::Display for K0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c1: Vec<String> = self.c1.iter().map(|c| c.to_string()).collect();
        write!(f, "({}, [{}], {})", self.rank, c1.join(","), self.chi)
    }
}

/// The ring `K₀(X_Σ)` of a fixed fan.
#[derive(Debug, Clone)]
pub struct K0Model {
    pic: PicardLattice,
    canonical: Vec<i64>,
}

impl K0Model {
    pub fn new(fan: &CompleteFan2D) -> Self {
        let pic = PicardLattice::new(fan);
        let canonical = pic.canonical_coordinates();
        K0Model { pic, canonical }
    }

    pub fn picard(&self) -> &PicardLattice {
        &self.pic
    }

    pub fn fan(&self) -> &CompleteFan2D {
        self.pic.fan()
    }

    pub fn rank(&self) -> usize {
        self.pic.ray_count()
    }

    fn check(&self, x: &K0Class) -> Result<(), GrothendieckError> {
        if x.c1.len() == self.pic.rank() {
            Ok(())
        } else {
            Err(GrothendieckError::IncompatibleFan {
                expected: self.pic.rank(),
                found: x.c1.len(),
            })
        }
    }

    fn doubled_ch2(&self, x: &K0Class) -> i64 {
        2 * x.chi - 2 * x.rank + self.pic.intersect_coordinates(&x.c1, &self.canonical)
    }

    fn class_from_ch(&self, rank: i64, c1: Vec<i64>, doubled_ch2: i64) -> K0Class {
        let t = doubled_ch2 - self.pic.intersect_coordinates(&c1, &self.canonical);
        debug_assert_eq!(t % 2, 0, "c1·K and c1² have the same parity");
        K0Class {
            rank,
            chi: rank + t / 2,
            c1,
        }
    }

    pub fn one(&self) -> K0Class {
        K0Class {
            rank: 1,
            c1: vec![0; self.pic.rank()],
            chi: 1,
        }
    }

    pub fn zero(&self) -> K0Class {
        K0Class {
            rank: 0,
            c1: vec![0; self.pic.rank()],
            chi: 0,
        }
    }

    /// Class of a skyscraper sheaf at a torus-fixed point.
    pub fn point(&self) -> K0Class {
        K0Class {
            rank: 0,
            c1: vec![0; self.pic.rank()],
            chi: 1,
        }
    }

    /// `[O(D)] = (1, [D], 1 + D·(D-K)/2)`.
    pub fn line_bundle_class(&self, d: &Divisor) -> K0Class {
        let c1 = self.pic.coordinates(d);
        let dd = self.pic.intersect_coordinates(&c1, &c1);
        let dk = self.pic.intersect_coordinates(&c1, &self.canonical);
        K0Class {
            rank: 1,
            chi: 1 + (dd - dk) / 2,
            c1,
        }
    }

    /// `J_e = [O(-D_e)]`.
    pub fn j(&self, e: usize) -> K0Class {
        self.line_bundle_class(&Divisor::prime(self.pic.ray_count(), e).scale(-1))
    }

    pub fn from_coordinates(&self, v: &[i64]) -> K0Class {
        let r = self.pic.rank();
        K0Class {
            rank: v[0],
            c1: v[1..=r].to_vec(),
            chi: v[r + 1],
        }
    }

    pub fn try_multiply(&self, x: &K0Class, y: &K0Class) -> Result<K0Class, GrothendieckError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.multiply(x, y))
    }

    /// Product; both classes must belong to this fan.
    pub fn multiply(&self, x: &K0Class, y: &K0Class) -> K0Class {
        let (dx, dy) = (self.doubled_ch2(x), self.doubled_ch2(y));
        let c1: Vec<i64> =
            x.c1.iter()
                .zip(&y.c1)
                .map(|(a, b)| x.rank * b + y.rank * a)
                .collect();
        let d = x.rank * dy + y.rank * dx + 2 * self.pic.intersect_coordinates(&x.c1, &y.c1);
        self.class_from_ch(x.rank * y.rank, c1, d)
    }

    pub fn add(&self, x: &K0Class, y: &K0Class) -> K0Class {
        K0Class {
            rank: x.rank + y.rank,
            c1: x.c1.iter().zip(&y.c1).map(|(a, b)| a + b).collect(),
            chi: x.chi + y.chi,
        }
    }

    pub fn neg(&self, x: &K0Class) -> K0Class {
        K0Class {
            rank: -x.rank,
            c1: x.c1.iter().map(|a| -a).collect(),
            chi: -x.chi,
        }
    }

    pub fn sub(&self, x: &K0Class, y: &K0Class) -> K0Class {
        self.add(x, &self.neg(y))
    }

    /// The duality involution `[E] ↦ [E^∨]`.
    pub fn dual(&self, x: &K0Class) -> K0Class {
        let d = self.doubled_ch2(x);
        self.class_from_ch(x.rank, x.c1.iter().map(|a| -a).collect(), d)
    }

    /// `x^k`, with negative powers taken through the dual; only meaningful
    /// for line-bundle classes when `k < 0`.
    pub fn pow(&self, x: &K0Class, k: i64) -> K0Class {
        let base = if k < 0 { self.dual(x) } else { x.clone() };
        let mut out = self.one();
        for _ in 0..k.unsigned_abs() {
            out = self.multiply(&out, &base);
        }
        out
    }

    /// Action of a group element given by its ray permutation.
    pub fn act(&self, perm: &[usize], x: &K0Class) -> K0Class {
        K0Class {
            rank: x.rank,
            c1: self.pic.act_coordinates(perm, &x.c1),
            chi: x.chi,
        }
    }

    /// Euler pairing `χ(x^∨ · y)`.
    pub fn euler_pairing(&self, x: &K0Class, y: &K0Class) -> i64 {
        self.multiply(&self.dual(x), y).chi
    }
}

/// The cones of a complete fan in `Z²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Cone {
    Zero,
    Ray(usize),
    /// `⟨v_i, v_{i+1}⟩`.
    Maximal(usize),
}

impl Cone {
    pub fn all(n: usize) -> Vec<Cone> {
        let mut out = vec![Cone::Zero];
        out.extend((0..n).map(Cone::Ray));
        out.extend((0..n).map(Cone::Maximal));
        out
    }

    pub fn rays(self, n: usize) -> Vec<usize> {
        match self {
            Cone::Zero => vec![],
            Cone::Ray(i) => vec![i],
            Cone::Maximal(i) => vec![i, (i + 1) % n],
        }
    }

    /// Smallest cone containing both, if their rays span one.
    pub fn join(self, other: Cone, fan: &CompleteFan2D) -> Option<Cone> {
        let n = fan.len();
        let mut rays = self.rays(n);
        for r in other.rays(n) {
            if !rays.contains(&r) {
                rays.push(r);
            }
        }
        match rays[..] {
            [] => Some(Cone::Zero),
            [i] => Some(Cone::Ray(i)),
            [i, j] if fan.next(i) == j => Some(Cone::Maximal(i)),
            [i, j] if fan.next(j) == i => Some(Cone::Maximal(j)),
            _ => None,
        }
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cone::Zero => write!(f, "0"),
            Cone::Ray(i) => write!(f, "ρ{i}"),
            Cone::Maximal(i) => write!(f, "σ{i}"),
        }
    }
}

/// Evidence that the Klyachko presentation matches the `(r, c₁, χ)` model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KlyachkoCertificate {
    pub rank: usize,
    pub maximal_cones: usize,
    pub generators: usize,
    /// Invariant factors of the span of the classes `O_σ`.
    pub span_invariants: Vec<i64>,
    pub span_index: i64,
    pub product_pairs_checked: usize,
    pub product_pairs_skipped: usize,
    pub characters_checked: usize,
    pub fixed_points_agree: bool,
}

/// The class `O_σ` of the structure sheaf of the orbit closure of `σ`.
pub fn orbit_class(model: &K0Model, cone: Cone) -> K0Class {
    let n = model.rank();
    match cone {
        Cone::Zero => model.one(),
        Cone::Ray(e) => model.sub(&model.one(), &model.j(e)),
        Cone::Maximal(i) => model.multiply(
            &orbit_class(model, Cone::Ray(i)),
            &orbit_class(model, Cone::Ray((i + 1) % n)),
        ),
    }
}

/// Checks generation, rank and the two families of relations.
///
/// The product relation `O_σ O_τ = O_{⟨σ,τ⟩}` is checked for every pair of
/// cones with disjoint ray sets; for overlapping cones the product carries a
/// self-intersection term and is not tested.
pub fn verify_klyachko(fan: &CompleteFan2D) -> Result<KlyachkoCertificate, GrothendieckError> {
    let model = K0Model::new(fan);
    let n = fan.len();
    let cones = Cone::all(n);
    let classes: Vec<K0Class> = cones.iter().map(|&c| orbit_class(&model, c)).collect();

    let point = model.point();
    let fixed_points_agree = classes[n + 1..].iter().all(|c| *c == point);
    if !fixed_points_agree {
        return Err(GrothendieckError::RelationFailure(
            "fixed-point classes differ from the point class".into(),
        ));
    }

    let (mut checked, mut skipped) = (0, 0);
    for (a, &s) in cones.iter().enumerate() {
        for (b, &t) in cones.iter().enumerate().skip(a) {
            let (rs, rt) = (s.rays(n), t.rays(n));
            if rs.iter().any(|r| rt.contains(r)) {
                skipped += 1;
                continue;
            }
            let expected = s
                .join(t, fan)
                .map(|c| orbit_class(&model, c))
                .unwrap_or_else(|| model.zero());
            let product = model.multiply(&classes[a], &classes[b]);
            if product != expected {
                return Err(GrothendieckError::RelationFailure(format!(
                    "O_{s} · O_{t} = {product}, expected {expected}"
                )));
            }
            checked += 1;
        }
    }

    for m in [(1, 0), (0, 1)] {
        let product = (0..n).fold(model.one(), |acc, e| {
            model.multiply(&acc, &model.pow(&model.j(e), fan.ray(e).pair(m)))
        });
        if product != model.one() {
            return Err(GrothendieckError::RelationFailure(format!(
                "character ({},{}) gives {product}, expected 1",
                m.0, m.1
            )));
        }
    }

    let rows: Vec<Vec<i64>> = classes.iter().map(K0Class::coordinates).collect();
    let span_invariants = smith_invariants(&rows);
    if span_invariants.len() != n {
        return Err(GrothendieckError::RelationFailure(format!(
            "orbit classes span rank {}, expected {n}",
            span_invariants.len()
        )));
    }
    let span_index = span_invariants.iter().product();
    if span_index != 1 {
        return Err(GrothendieckError::RelationFailure(format!(
            "orbit classes span a sublattice of index {span_index}"
        )));
    }
    Ok(KlyachkoCertificate {
        rank: n,
        maximal_cones: n,
        generators: classes.len(),
        span_invariants,
        span_index,
        product_pairs_checked: checked,
        product_pairs_skipped: skipped,
        characters_checked: 2,
        fixed_points_agree,
    })
}

/// Labels `(J₁, J₂)` of a Hirzebruch fan: `J₁` the fibre ray with
/// self-intersection 0 and `J₂` the next ray, the negative section.
pub fn hirzebruch_labels(fan: &CompleteFan2D) -> Option<(usize, usize)> {
    if fan.len() != 4 {
        return None;
    }
    let a = fan.self_intersections();
    let b = a.values().iter().map(|x| x.abs()).max()?;
    let pattern = [0, -b, 0, b];
    (0..4)
        .find(|&i| (0..4).all(|k| a[(i + k) % 4] == pattern[k]))
        .map(|i| (i, (i + 1) % 4))
}

/// Checks `J₁^{m+1}J₂ = J₁^m J₂ + J₁J₂ - J₂` for every `m` in the range.
pub fn fa_recurrence_check(
    fan: &CompleteFan2D,
    ms: impl IntoIterator<Item = i64>,
) -> Result<bool, GrothendieckError> {
    let (i1, i2) = hirzebruch_labels(fan).ok_or(GrothendieckError::NotHirzebruch)?;
    let model = K0Model::new(fan);
    let (j1, j2) = (model.j(i1), model.j(i2));
    let j1j2 = model.multiply(&j1, &j2);
    for m in ms {
        let lhs = model.multiply(&model.pow(&j1, m + 1), &j2);
        let jm = model.multiply(&model.pow(&j1, m), &j2);
        let rhs = model.sub(&model.add(&jm, &j1j2), &j2);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the classes form a `Z`-basis of the model.
pub fn is_basis(classes: &[K0Class], n: usize) -> bool {
    classes.len() == n
        && extends_to_basis(&classes.iter().map(K0Class::coordinates).collect::<Vec<_>>())
}

/// Image of a class under every group element.
pub fn orbit_images(model: &K0Model, g: &SymmetryGroup, x: &K0Class) -> Vec<K0Class> {
    g.perms().iter().map(|p| model.act(p, x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_bundles_on_p2() {
        let m = K0Model::new(&CompleteFan2D::projective_plane());
        let o1 = m.line_bundle_class(&Divisor(vec![1, 0, 0]));
        assert_eq!(
            o1,
            K0Class {
                rank: 1,
                c1: vec![1],
                chi: 3
            }
        );
        assert_eq!(
            m.line_bundle_class(&Divisor(vec![-1, 0, 0])),
            K0Class {
                rank: 1,
                c1: vec![-1],
                chi: 0
            }
        );
        assert_eq!(
            m.multiply(&o1, &o1),
            K0Class {
                rank: 1,
                c1: vec![2],
                chi: 6
            }
        );
        assert_eq!(m.multiply(&o1, &m.one()), o1);
        assert_eq!(m.dual(&o1), m.line_bundle_class(&Divisor(vec![0, -1, 0])));
    }

    #[test]
    fn klyachko_relations_on_small_fans() {
        let p2 = CompleteFan2D::projective_plane();
        let cert = verify_klyachko(&p2).unwrap();
        assert_eq!((cert.rank, cert.span_index), (3, 1));
        let m = K0Model::new(&p2);
        assert_eq!(m.j(0), m.j(1));
        assert_eq!(m.j(1), m.j(2));

        for a in 0..5 {
            let f = CompleteFan2D::hirzebruch(a);
            verify_klyachko(&f).unwrap();
            let m = K0Model::new(&f);
            // rays (1,0),(0,1),(-1,a),(0,-1): J1 = J(ray 0), J2 = J(ray 1)
            assert_eq!(m.j(2), m.j(0));
            assert_eq!(m.j(3), m.multiply(&m.pow(&m.j(0), a), &m.j(1)));
        }
        verify_klyachko(&CompleteFan2D::hexagon()).unwrap();
    }

    #[test]
    fn recurrence_on_hirzebruch() {
        for a in [0, 2, 5] {
            assert!(fa_recurrence_check(&CompleteFan2D::hirzebruch(a), 0..=5).unwrap());
        }
        assert_eq!(
            fa_recurrence_check(&CompleteFan2D::projective_plane(), 0..=1),
            Err(GrothendieckError::NotHirzebruch)
        );
    }

    #[test]
    fn wrong_fan_is_rejected() {
        let m2 = K0Model::new(&CompleteFan2D::projective_plane());
        let m4 = K0Model::new(&CompleteFan2D::square());
        assert!(matches!(
            m2.try_multiply(&m4.one(), &m2.one()),
            Err(GrothendieckError::IncompatibleFan { .. })
        ));
    }
}

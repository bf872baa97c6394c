//! Torus-invariant divisors and the Picard lattice.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::fan::CompleteFan2D;
use crate::linalg::{determinant, signature, smith_invariants, IntMatrix};

/// A torus-invariant divisor `Σ c_e D_e`, one coefficient per ray.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Divisor(pub Vec<i64>);

impl Divisor {
    pub fn zero(n: usize) -> Self {
        Divisor(vec![0; n])
    }

    /// The prime divisor `D_i`.
    pub fn prime(n: usize, i: usize) -> Self {
        let mut c = vec![0; n];
        c[i] = 1;
        Divisor(c)
    }

    /// The canonical divisor `K = -Σ D_e`.
    pub fn canonical(n: usize) -> Self {
        Divisor(vec![-1; n])
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scale(&self, k: i64) -> Self {
        Divisor(self.0.iter().map(|c| k * c).collect())
    }

    /// The divisor `g·D`, where `perm[i]` is the image of ray `i`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut out = vec![0; self.0.len()];
        for (i, &c) in self.0.iter().enumerate() {
            out[perm[i]] = c;
        }
        Divisor(out)
    }

    /// Total transform along a blow-down `before → after`: the coefficient of
    /// every new ray is the sum of the coefficients of its two neighbours.
    pub fn pull_back(&self, after: &CompleteFan2D, before: &CompleteFan2D) -> Self {
        let mut out = vec![0; before.len()];
        for (j, slot) in out.iter_mut().enumerate() {
            let v = before.ray(j);
            *slot = match after.index_of(v) {
                Some(i) => self.0[i],
                None => {
                    let p = after
                        .index_of(before.ray(before.prev(j)))
                        .expect("neighbour survives");
                    let q = after
                        .index_of(before.ray(before.next(j)))
                        .expect("neighbour survives");
                    self.0[p] + self.0[q]
                }
            }
        }
        Divisor(out)
    }
}

impl Add for &Divisor {
    type Output = Divisor;
    fn add(self, o: &Divisor) -> Divisor {
        Divisor(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Divisor {
    type Output = Divisor;
    fn sub(self, o: &Divisor) -> Divisor {
        Divisor(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Divisor {
    type Output = Divisor;
    fn neg(self) -> Divisor {
        Divisor(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match c {
                1 => format!("D{i}"),
                -1 => format!("-D{i}"),
                c => format!("{c}D{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
        }
    }
}

/// `Pic(X) = CDiv_T(X) / M` with a fixed basis and the intersection form.
///
/// The basis is the classes of `D_0, …, D_{N-3}`: the two last rays span a
/// smooth cone, so the character with prescribed pairings on them eliminates
/// their coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PicardLattice {
    fan: CompleteFan2D,
    relations: IntMatrix,
    /// Coordinates of each prime divisor, one row per ray.
    prime_coordinates: IntMatrix,
    form: IntMatrix,
    divisor_form: IntMatrix,
}

impl PicardLattice {
    pub fn new(fan: &CompleteFan2D) -> Self {
        let n = fan.len();
        let relations: IntMatrix = vec![
            fan.rays().iter().map(|v| v.x).collect(),
            fan.rays().iter().map(|v| v.y).collect(),
        ];
        debug_assert_eq!(smith_invariants(&relations), vec![1, 1]);
        let a = fan.self_intersections();
        let divisor_form: IntMatrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            a[i]
                        } else if fan.are_adjacent(i, j) {
                            1
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        let mut pic = PicardLattice {
            fan: fan.clone(),
            relations,
            prime_coordinates: Vec::new(),
            form: Vec::new(),
            divisor_form,
        };
        pic.prime_coordinates = (0..n)
            .map(|i| pic.coordinates(&Divisor::prime(n, i)))
            .collect();
        let r = n - 2;
        pic.form = (0..r)
            .map(|i| (0..r).map(|j| pic.divisor_form[i][j]).collect())
            .collect();
        pic
    }

    pub fn fan(&self) -> &CompleteFan2D {
        &self.fan
    }

    pub fn ray_count(&self) -> usize {
        self.fan.len()
    }

    pub fn rank(&self) -> usize {
        self.fan.len() - 2
    }

    /// The `2×N` matrix of pairings `⟨m, v_e⟩` for `m = (1,0), (0,1)`.
    pub fn relation_matrix(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn prime_coordinates(&self) -> &IntMatrix {
        &self.prime_coordinates
    }

    /// Intersection form on the basis `D_0, …, D_{N-3}`.
    pub fn form(&self) -> &IntMatrix {
        &self.form
    }

    /// Intersection form on all prime divisors.
    pub fn divisor_form(&self) -> &IntMatrix {
        &self.divisor_form
    }

    /// Class of a divisor in the chosen basis.
    pub fn coordinates(&self, d: &Divisor) -> Vec<i64> {
        let n = self.fan.len();
        let c = d.coefficients();
        let (p, q) = (self.fan.ray(n - 2), self.fan.ray(n - 1));
        // m with <m, v_p> = c_p and <m, v_q> = c_q; det(v_p, v_q) = 1
        let m = (
            q.y * c[n - 2] - p.y * c[n - 1],
            -q.x * c[n - 2] + p.x * c[n - 1],
        );
        (0..n - 2).map(|j| c[j] - self.fan.ray(j).pair(m)).collect()
    }

    /// A divisor representing the given class.
    pub fn representative(&self, coords: &[i64]) -> Divisor {
        let mut c = coords.to_vec();
        c.extend([0, 0]);
        Divisor(c)
    }

    /// Whether two divisors are linearly equivalent.
    pub fn equivalent(&self, d: &Divisor, e: &Divisor) -> bool {
        self.coordinates(d) == self.coordinates(e)
    }

    pub fn intersect_coordinates(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0;
        for (i, row) in self.form.iter().enumerate() {
            for (j, f) in row.iter().enumerate() {
                s += x[i] * f * y[j];
            }
        }
        s
    }

    pub fn intersect(&self, d: &Divisor, e: &Divisor) -> i64 {
        let mut s = 0;
        for (i, row) in self.divisor_form.iter().enumerate() {
            for (j, f) in row.iter().enumerate() {
                s += d.0[i] * f * e.0[j];
            }
        }
        s
    }

    pub fn canonical_coordinates(&self) -> Vec<i64> {
        self.coordinates(&Divisor::canonical(self.fan.len()))
    }

    pub fn canonical_square(&self) -> i64 {
        let k = self.canonical_coordinates();
        self.intersect_coordinates(&k, &k)
    }

    /// Image under the ray permutation of a group element.
    pub fn act_coordinates(&self, perm: &[usize], x: &[i64]) -> Vec<i64> {
        self.coordinates(&self.representative(x).permute(perm))
    }

    pub fn form_determinant(&self) -> i128 {
        determinant(&self.form)
    }

    pub fn form_signature(&self) -> (usize, usize, usize) {
        signature(&self.form)
    }

    /// Invariant factors of the cokernel presentation; all ones means `Pic`
    /// is free on the chosen basis.
    pub fn cokernel_invariants(&self) -> Vec<i64> {
        smith_invariants(&self.relations)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_forms() {
        let p2 = PicardLattice::new(&CompleteFan2D::projective_plane());
        assert_eq!(p2.rank(), 1);
        assert_eq!(p2.form(), &vec![vec![1]]);

        let f2 = PicardLattice::new(&CompleteFan2D::hirzebruch(2));
        assert_eq!(f2.form(), &vec![vec![0, 1], vec![1, -2]]);

        let dp6 = PicardLattice::new(&CompleteFan2D::hexagon());
        assert_eq!(dp6.rank(), 4);
        assert_eq!(dp6.form_signature(), (1, 3, 0));
        assert_eq!(dp6.canonical_square(), 6);
    }

    #[test]
    fn characters_are_trivial() {
        let fan = CompleteFan2D::hirzebruch(3);
        let pic = PicardLattice::new(&fan);
        for m in [(1, 0), (0, 1), (2, -5)] {
            let d = Divisor(fan.rays().iter().map(|v| v.pair(m)).collect());
            assert_eq!(pic.coordinates(&d), vec![0, 0]);
        }
    }

    #[test]
    fn pull_back_adds_neighbours() {
        let p2 = CompleteFan2D::projective_plane();
        let bl = p2.blow_up(&[0]).unwrap();
        let h = Divisor(vec![1, 0, 0]);
        let up = h.pull_back(&p2, &bl);
        assert_eq!(up.0.iter().sum::<i64>(), 2);
        assert_eq!(Divisor(vec![1, -2, 0]).to_string(), "D0 - 2D1");
    }
}

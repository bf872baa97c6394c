//! Cohomology of line bundles on smooth complete toric surfaces.
//!
//! `h⁰(O(D))` counts the lattice points of `P_D = {m : ⟨m, v_e⟩ ≥ -c_e}`,
//! `h²` follows from Serre duality and `h¹` from Riemann–Roch.

use std::fmt;

use serde::Serialize;

use crate::fan::CompleteFan2D;
use crate::grothendieck::{Divisor, K0Model};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct CohomologyVector {
    pub h0: u64,
    pub h1: u64,
    pub h2: u64,
}

impl CohomologyVector {
    pub const ZERO: CohomologyVector = CohomologyVector {
        h0: 0,
        h1: 0,
        h2: 0,
    };

    pub fn euler_characteristic(&self) -> i64 {
        self.h0 as i64 - self.h1 as i64 + self.h2 as i64
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    pub fn reversed(&self) -> Self {
        CohomologyVector {
            h0: self.h2,
            h1: self.h1,
            h2: self.h0,
        }
    }

    pub fn get(&self, r: usize) -> u64 {
        [self.h0, self.h1, self.h2][r]
    }
}

impl fmt::Display for CohomologyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.h0, self.h1, self.h2)
    }
}

/// Cohomology calculator for one fan; keeps the `K₀` model and the bounding
/// data of polytopes.
#[derive(Debug, Clone)]
pub struct Cohomology {
    model: K0Model,
    /// For each of `(1,0), (-1,0), (0,1), (0,-1)`: indices `(i, i+1)` of
    /// the cone containing it and the coefficients `(α, β)` with
    /// `u = α v_i + β v_{i+1}`.
    bounds: [(usize, usize, i64, i64); 4],
}

impl Cohomology {
    pub fn new(fan: &CompleteFan2D) -> Self {
        let n = fan.len();
        let dirs = [(1, 0), (-1, 0), (0, 1), (0, -1)];
        let bounds = dirs.map(|u: (i64, i64)| {
            (0..n)
                .find_map(|i| {
                    let (v, w) = (fan.ray(i).as_pair(), fan.ray(fan.next(i)).as_pair());
                    let alpha = u.0 * w.1 - u.1 * w.0;
                    let beta = v.0 * u.1 - v.1 * u.0;
                    (alpha >= 0 && beta >= 0).then_some((i, fan.next(i), alpha, beta))
                })
                .expect("complete fan covers the plane")
        });
        Cohomology {
            model: K0Model::new(fan),
            bounds,
        }
    }

    pub fn fan(&self) -> &CompleteFan2D {
        self.model.fan()
    }

    pub fn model(&self) -> &K0Model {
        &self.model
    }

    /// Number of lattice points of `P_D`.
    pub fn h0(&self, d: &Divisor) -> u64 {
        let c = d.coefficients();
        let fan = self.fan();
        // ⟨m, u⟩ ≥ -(α c_i + β c_j) for each coordinate direction u
        let lower = |k: usize| {
            let (i, j, a, b) = self.bounds[k];
            -(a * c[i] + b * c[j])
        };
        let (x_lo, x_hi) = (lower(0), -lower(1));
        let (y_lo, y_hi) = (lower(2), -lower(3));
        if x_lo > x_hi || y_lo > y_hi {
            return 0;
        }
        let mut count = 0u64;
        for x in x_lo..=x_hi {
            let (mut lo, mut hi) = (y_lo, y_hi);
            for (e, v) in fan.rays().iter().enumerate() {
                // v.x x + v.y y ≥ -c_e
                let rest = -c[e] - v.x * x;
                match v.y.signum() {
                    1 => lo = lo.max(div_ceil(rest, v.y)),
                    -1 => hi = hi.min(div_floor(rest, v.y)),
                    _ => {
                        if rest > 0 {
                            hi = lo - 1;
                        }
                    }
                }
                if lo > hi {
                    break;
                }
            }
            if lo <= hi {
                count += (hi - lo + 1) as u64;
            }
        }
        count
    }

    pub fn line_bundle(&self, d: &Divisor) -> CohomologyVector {
        let h0 = self.h0(d);
        let dual = Divisor(d.coefficients().iter().map(|c| -1 - c).collect());
        let h2 = self.h0(&dual);
        let chi = self.model.line_bundle_class(d).chi;
        let h1 = h0 as i64 + h2 as i64 - chi;
        assert!(
            h1 >= 0,
            "negative h1 for {d}: h0 = {h0}, h2 = {h2}, chi = {chi}"
        );
        CohomologyVector {
            h0,
            h1: h1 as u64,
            h2,
        }
    }

    /// `Ext^r(O(L1), O(L2)) = H^r(O(L2 - L1))`.
    pub fn ext(&self, l1: &Divisor, l2: &Divisor) -> CohomologyVector {
        self.line_bundle(&(l2 - l1))
    }
}

fn div_floor(a: i64, b: i64) -> i64 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -div_floor(-a, b)
}

pub fn line_bundle_cohomology(fan: &CompleteFan2D, d: &Divisor) -> CohomologyVector {
    Cohomology::new(fan).line_bundle(d)
}

pub fn ext_line_bundles(fan: &CompleteFan2D, l1: &Divisor, l2: &Divisor) -> CohomologyVector {
    Cohomology::new(fan).ext(l1, l2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cv(h0: u64, h1: u64, h2: u64) -> CohomologyVector {
        CohomologyVector { h0, h1, h2 }
    }

    #[test]
    fn projective_plane() {
        let p2 = CompleteFan2D::projective_plane();
        let h = Cohomology::new(&p2);
        assert_eq!(h.line_bundle(&Divisor(vec![0, 0, 0])), cv(1, 0, 0));
        assert_eq!(h.line_bundle(&Divisor(vec![1, 0, 0])), cv(3, 0, 0));
        assert_eq!(h.line_bundle(&Divisor(vec![-1, -1, -1])), cv(0, 0, 1));
        assert_eq!(h.line_bundle(&Divisor(vec![0, 2, 0])), cv(6, 0, 0));
        assert_eq!(
            h.ext(&Divisor(vec![1, 0, 0]), &Divisor(vec![0, 0, 0])),
            CohomologyVector::ZERO
        );
    }

    #[test]
    fn hirzebruch_has_h1() {
        // O(-2 fibre) on F_0: h1 = 1 from the P1 factor
        let sq = CompleteFan2D::square();
        assert_eq!(
            line_bundle_cohomology(&sq, &Divisor(vec![-2, 0, 0, 0])),
            cv(0, 1, 0)
        );
        // O(section + fibre) type twist on F_2 with nonzero h1
        let f2 = CompleteFan2D::hirzebruch(2);
        let v = line_bundle_cohomology(&f2, &Divisor(vec![0, -1, 0, 2]));
        assert_eq!(
            v.euler_characteristic(),
            K0Model::new(&f2)
                .line_bundle_class(&Divisor(vec![0, -1, 0, 2]))
                .chi
        );
    }

    #[test]
    fn rounding() {
        assert_eq!(div_floor(-3, 2), -2);
        assert_eq!(div_floor(3, -2), -2);
        assert_eq!(div_ceil(-3, 2), -1);
        assert_eq!(div_ceil(3, 2), 2);
        assert_eq!(div_floor(4, 2), 2);
    }
}

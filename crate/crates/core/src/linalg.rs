//! Exact integer linear algebra on small dense matrices.
//!
//! Everything here works on `Vec<Vec<i64>>` row-major matrices and uses
//! `i128` internally. The matrices that show up in this crate have at most a
//! few dozen rows, so nothing is tuned for size.

#![allow(clippy::needless_range_loop)]

use num_rational::Ratio;

pub type IntMatrix = Vec<Vec<i64>>;

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

fn gcd128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Determinant of the 2×2 matrix with columns `u`, `v`.
#[inline]
pub fn det2(u: (i64, i64), v: (i64, i64)) -> i64 {
    u.0 * v.1 - u.1 * v.0
}

/// Nonzero invariant factors of an integer matrix, in divisibility order.
///
/// The matrix is diagonalised by unimodular row and column operations and the
/// diagonal is then normalised so that each entry divides the next. The
/// number of returned factors is the rank.
pub fn smith_invariants(m: &[Vec<i64>]) -> Vec<i64> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut diag = Vec::new();
    let mut top = 0;
    while top < rows.min(cols) {
        // smallest nonzero entry of the remaining block becomes the pivot
        let mut pivot: Option<(usize, usize)> = None;
        for i in top..rows {
            for j in top..cols {
                if a[i][j] != 0 && pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(top, pi);
        for row in a.iter_mut() {
            row.swap(top, pj);
        }
        loop {
            let p = a[top][top];
            let mut clean = true;
            for i in top + 1..rows {
                let q = a[i][top] / p;
                if q != 0 {
                    for j in top..cols {
                        a[i][j] -= q * a[top][j];
                    }
                }
                if a[i][top] != 0 {
                    clean = false;
                }
            }
            for j in top + 1..cols {
                let q = a[top][j] / p;
                if q != 0 {
                    for row in a.iter_mut().skip(top) {
                        row[j] -= q * row[top];
                    }
                }
                if a[top][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
            // a remainder survived; move the smallest one into the pivot slot
            let mut best = (top, top);
            for i in top..rows {
                if a[i][top] != 0 && a[i][top].abs() < a[best.0][best.1].abs() {
                    best = (i, top);
                }
            }
            for j in top..cols {
                if a[top][j] != 0 && a[top][j].abs() < a[best.0][best.1].abs() {
                    best = (top, j);
                }
            }
            a.swap(top, best.0);
            for row in a.iter_mut() {
                row.swap(top, best.1);
            }
        }
        diag.push(a[top][top].abs());
        top += 1;
    }
    // diagonal -> invariant factors
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = gcd128(diag[i], diag[j]);
            let l = diag[i] / g * diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag.into_iter().map(|d| d as i64).collect()
}

/// Rank over Q.
pub fn rank(m: &[Vec<i64>]) -> usize {
    smith_invariants(m).len()
}

/// True when the rows are linearly independent and span a saturated
/// sublattice, i.e. they can be completed to a Z-basis of `Z^cols`.
pub fn extends_to_basis(rows: &[Vec<i64>]) -> bool {
    let inv = smith_invariants(rows);
    inv.len() == rows.len() && inv.iter().all(|&d| d == 1)
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    assert!(
        m.iter().all(|r| r.len() == n),
        "determinant of a non-square matrix"
    );
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Signature `(positive, negative, zero)` of a symmetric integer matrix,
/// computed by congruence diagonalisation over Q.
pub fn signature(m: &[Vec<i64>]) -> (usize, usize, usize) {
    let n = m.len();
    let mut a: Vec<Vec<Ratio<i128>>> = m
        .iter()
        .map(|r| r.iter().map(|&x| Ratio::from_integer(x as i128)).collect())
        .collect();
    let zero = Ratio::from_integer(0);
    let (mut pos, mut neg, mut nul) = (0, 0, 0);
    for k in 0..n {
        if a[k][k] == zero {
            // bring a nonzero diagonal entry into place, or create one
            if let Some(j) = (k + 1..n).find(|&j| a[j][j] != zero) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| a[k][j] != zero) {
                // row_k += row_j, col_k += col_j
                for c in 0..n {
                    let v = a[j][c];
                    a[k][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j];
                    a[r][k] += v;
                }
            }
        }
        let p = a[k][k];
        if p == zero {
            nul += 1;
            continue;
        }
        if p > zero {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            let f = a[i][k] / p;
            if f != zero {
                for j in k..n {
                    let v = a[k][j];
                    a[i][j] -= f * v;
                }
                for r in k..n {
                    let v = a[r][k];
                    a[r][i] -= f * v;
                }
            }
        }
    }
    (pos, neg, nul)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_factors_of_small_matrices() {
        assert_eq!(
            smith_invariants(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]),
            vec![2, 6, 12]
        );
        assert_eq!(
            smith_invariants(&[vec![1, 0, -1, 0], vec![0, 1, 2, -1]]),
            vec![1, 1]
        );
        assert_eq!(
            smith_invariants(&[vec![0, 0], vec![0, 0]]),
            Vec::<i64>::new()
        );
        assert_eq!(smith_invariants(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        assert_eq!(determinant(&m), 4);
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(determinant(&[vec![1, 2], vec![2, 4]]), 0);
    }

    #[test]
    fn signature_of_hyperbolic_plane() {
        assert_eq!(signature(&[vec![0, 1], vec![1, 0]]), (1, 1, 0));
        assert_eq!(signature(&[vec![0, 1], vec![1, -2]]), (1, 1, 0));
        assert_eq!(
            signature(&[vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, -1]]),
            (1, 2, 0)
        );
        assert_eq!(signature(&[vec![0, 0], vec![0, 0]]), (0, 0, 2));
    }

    #[test]
    fn basis_extension() {
        assert!(extends_to_basis(&[vec![1, 0, 0], vec![0, 1, 0]]));
        assert!(!extends_to_basis(&[vec![2, 0, 0]]));
        assert!(!extends_to_basis(&[vec![1, 1], vec![2, 2]]));
    }
}

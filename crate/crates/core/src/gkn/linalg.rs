//! Fraction-free (Bareiss) elimination over the integers.
//!
//! Rational rows are scaled by the lcm of their denominators first; the
//! scale factors are undone for the determinant and do not affect rank.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{denominator_lcm, Rational};

/// Integer rows plus the product of the per-row scale factors.
fn clear_denominators(m: &[Vec<Rational>]) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale = BigInt::one();
    let rows = m
        .iter()
        .map(|row| {
            let l = denominator_lcm(row);
            let out = row
                .iter()
                .map(|v| v.numer() * (&l / v.denom()))
                .collect();
            scale *= l;
            out
        })
        .collect();
    (rows, scale)
}

struct Elimination {
    rank: usize,
    /// Last pivot, i.e. the determinant of the leading `rank × rank` minor
    /// after the applied row swaps.
    last_pivot: BigInt,
    swaps: usize,
    /// Columns in which a pivot was found.
    pivot_cols: Vec<usize>,
}

fn bareiss(a: &mut [Vec<BigInt>]) -> Elimination {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut swaps = 0;
    let mut pivot_cols = Vec::new();
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        // smallest nonzero pivot keeps intermediate sizes down
        let pivot = (r..nrows)
            .filter(|&i| !a[i][col].is_zero())
            .min_by_key(|&i| a[i][col].bits());
        let Some(p) = pivot else { continue };
        if p != r {
            a.swap(p, r);
            swaps += 1;
        }
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pv = pivot_row[col].clone();
        for row in bottom.iter_mut() {
            let lead = std::mem::take(&mut row[col]);
            if lead.is_zero() {
                // entries still need the rescale by pv / prev
                for j in col + 1..ncols {
                    if !row[j].is_zero() {
                        row[j] = &row[j] * &pv / &prev;
                    }
                }
                continue;
            }
            for j in col + 1..ncols {
                let v = &pv * &row[j] - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = pv;
        pivot_cols.push(col);
        r += 1;
    }
    Elimination { rank: r, last_pivot: prev, swaps, pivot_cols }
}

/// Exact rank of a rectangular rational matrix.
pub fn rank_exact(m: &[Vec<Rational>]) -> usize {
    let (mut a, _) = clear_denominators(m);
    bareiss(&mut a).rank
}

/// Exact determinant of a square rational matrix.
pub fn det_exact(m: &[Vec<Rational>]) -> Result<Rational> {
    let n = m.len();
    if let Some(bad) = m.iter().find(|row| row.len() != n) {
        return Err(Error::NotSquare { rows: n, cols: bad.len() });
    }
    if n == 0 {
        return Ok(Rational::one());
    }
    let (mut a, scale) = clear_denominators(m);
    let e = bareiss(&mut a);
    if e.rank < n {
        return Ok(Rational::zero());
    }
    let mut det = Rational::new(e.last_pivot, scale);
    if e.swaps % 2 == 1 {
        det = -det;
    }
    Ok(det)
}

/// Indices of the columns carrying pivots in row-echelon form; useful to
/// report which conditions are redundant.
pub fn pivot_columns(m: &[Vec<Rational>]) -> Vec<usize> {
    let (mut a, _) = clear_denominators(m);
    bareiss(&mut a).pivot_cols
}

/// Smallest and largest nonzero absolute entry, as approximate base-10
/// exponents. `None` for an all-zero matrix.
pub fn magnitude_range(m: &[Vec<Rational>]) -> Option<(f64, f64)> {
    let logs: Vec<f64> = m
        .iter()
        .flatten()
        .filter_map(Rational::log10_abs)
        .collect();
    if logs.is_empty() {
        return None;
    }
    let lo = logs.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Some((lo, hi))
}

/// Bit length of the largest numerator after clearing row denominators.
pub fn max_entry_bits(m: &[Vec<Rational>]) -> u64 {
    let (a, _) = clear_denominators(m);
    a.iter().flatten().map(|v| v.abs().bits()).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| Rational::from(v)).collect())
            .collect()
    }

    // Laplace expansion; independent of elimination.
    fn det_cofactor(m: &[Vec<Rational>]) -> Rational {
        let n = m.len();
        if n == 0 {
            return Rational::one();
        }
        if n == 1 {
            return m[0][0].clone();
        }
        (0..n)
            .map(|c| {
                let minor: Vec<Vec<Rational>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != c)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let t = &m[0][c] * det_cofactor(&minor);
                if c % 2 == 0 {
                    t
                } else {
                    -t
                }
            })
            .sum()
    }

    // Plain Gauss-Jordan over the rationals; independent of Bareiss.
    fn rank_gauss(m: &[Vec<Rational>]) -> usize {
        let mut a = m.to_vec();
        let rows = a.len();
        let cols = a.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(p, r);
            for i in 0..rows {
                if i != r && !a[i][c].is_zero() {
                    let f = &a[i][c] / &a[r][c];
                    for j in 0..cols {
                        let d = &f * &a[r][j];
                        a[i][j] -= &d;
                    }
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn b3_determinant() {
        let b3 = mat(&[&[8, 0, 288], &[0, 104, 0], &[104, 0, 504]]);
        assert_eq!(det_exact(&b3).unwrap(), Rational::from(-2_695_680));
        assert_eq!(rank_exact(&b3), 3);
    }

    #[test]
    fn degenerate_cases() {
        assert_eq!(det_exact(&mat(&[&[0]])).unwrap(), Rational::zero());
        assert_eq!(rank_exact(&mat(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]])), 0);
        assert_eq!(rank_exact(&[]), 0);
        assert!(matches!(
            det_exact(&mat(&[&[1, 2]])),
            Err(Error::NotSquare { .. })
        ));
        // skipped columns in a rank-deficient rectangular matrix
        let m = mat(&[&[0, 1, 2, 3], &[0, 2, 4, 7], &[0, 3, 6, 10]]);
        assert_eq!(rank_exact(&m), 2);
        assert_eq!(pivot_columns(&m), vec![1, 3]);
    }

    #[test]
    fn fractional_entries() {
        let m = vec![
            vec![Rational::new(1, 2), Rational::new(1, 3)],
            vec![Rational::new(1, 4), Rational::new(1, 6)],
        ];
        assert_eq!(rank_exact(&m), 1);
        assert_eq!(det_exact(&m).unwrap(), Rational::zero());
        let m = vec![
            vec![Rational::new(1, 2), Rational::new(1, 3)],
            vec![Rational::new(1, 5), Rational::new(7, 6)],
        ];
        assert_eq!(det_exact(&m).unwrap(), Rational::new(7, 12) - Rational::new(1, 15));
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<Rational>>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(
                prop::collection::vec((-3i64..4, 1i64..4).prop_map(|(p, q)| Rational::new(p, q)), c),
                r,
            )
        })
    }

    proptest! {
        #[test]
        fn rank_matches_gauss_jordan(m in small_matrix()) {
            prop_assert_eq!(rank_exact(&m), rank_gauss(&m));
        }

        #[test]
        fn det_matches_cofactor_expansion(n in 1usize..6, seed in prop::collection::vec((-4i64..5, 1i64..3), 36)) {
            let m: Vec<Vec<Rational>> = (0..n)
                .map(|i| (0..n).map(|j| { let (p, q) = seed[i * 6 + j]; Rational::new(p, q) }).collect())
                .collect();
            prop_assert_eq!(det_exact(&m).unwrap(), det_cofactor(&m));
        }
    }
}

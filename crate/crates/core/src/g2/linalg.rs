//! Small dense linear algebra over the rationals.

use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

/// Row echelon form in place; returns the pivot columns.
fn echelon(m: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in 0..cols {
                    let delta = &factor * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub(crate) fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m = rows.to_vec();
    echelon(&mut m).len()
}

/// Basis of `{x : rows · x = 0}`.
pub(crate) fn nullspace(rows: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut m = rows.to_vec();
    let pivots = echelon(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = alloc::vec![BigRational::zero(); cols];
            x[f] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -m[r][f].clone();
            }
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
            .collect()
    }

    #[test]
    fn determinant_oracle() {
        // cofactor expansion by hand: 2(3·2 - 4·5) - (-1)(1·2 - 4·0) = -28 + 2
        let m = q(&[&[2, -1, 0], &[1, 3, 4], &[0, 5, 2]]);
        assert_eq!(determinant(m), BigRational::from_integer(BigInt::from(-26)));
        assert!(determinant(q(&[&[1, 2], &[2, 4]])).is_zero());
    }

    #[test]
    fn nullspace_is_annihilated() {
        let m = q(&[&[1, 2, 3, 4], &[0, 1, 1, 1]]);
        let ns = nullspace(&m, 4);
        assert_eq!(ns.len(), 2);
        for x in &ns {
            for row in &m {
                let s = row.iter().zip(x).map(|(a, b)| a * b).fold(BigRational::zero(), |a, b| a + b);
                assert!(s.is_zero());
            }
        }
        assert_eq!(rank(&m), 2);
    }
}

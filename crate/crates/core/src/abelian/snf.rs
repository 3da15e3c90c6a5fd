use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntegerMatrix;

/// `u * m * v == s`, with `s` diagonal and its nonzero entries forming a
/// divisibility chain. The inverses of `u` and `v` are carried along.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub s: IntegerMatrix,
    pub u: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub v: IntegerMatrix,
    pub v_inv: IntegerMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries, positive and ascending under divisibility.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        nonzero_diagonal(&self.s)
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn nonzero_diagonal(s: &IntegerMatrix) -> Vec<BigInt> {
    (0..s.rows().min(s.cols()))
        .map(|i| s[(i, i)].clone())
        .take_while(|d| !d.is_zero())
        .collect()
}

struct Transforms {
    u: IntegerMatrix,
    u_inv: IntegerMatrix,
    v: IntegerMatrix,
    v_inv: IntegerMatrix,
}

// Every elementary operation on the working matrix is mirrored here:
// a row op applied to `u`, its inverse as a column op on `u_inv`, and
// dually for columns.
impl Transforms {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.u.add_row_multiple(dst, src, f);
        self.u_inv.add_col_multiple(src, dst, &-f);
    }

    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.v.add_col_multiple(dst, src, f);
        self.v_inv.add_row_multiple(src, dst, &-f);
    }

    fn negate_row(&mut self, i: usize) {
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

/// Smith normal form with transforms, always pivoting on an entry of least
/// absolute value in the remaining block.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithDecomposition {
    let mut t = Transforms {
        u: IntegerMatrix::identity(m.rows()),
        u_inv: IntegerMatrix::identity(m.rows()),
        v: IntegerMatrix::identity(m.cols()),
        v_inv: IntegerMatrix::identity(m.cols()),
    };
    let mut s = m.clone();
    reduce(&mut s, Some(&mut t));
    SmithDecomposition {
        s,
        u: t.u,
        u_inv: t.u_inv,
        v: t.v,
        v_inv: t.v_inv,
    }
}

/// Invariant factors only (no transforms), for the homology hot path.
pub fn invariant_factors(m: &IntegerMatrix) -> Vec<BigInt> {
    let mut s = m.clone();
    reduce(&mut s, None);
    nonzero_diagonal(&s)
}

fn min_pivot(s: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let x = &s[(i, j)];
            if x.is_zero() {
                continue;
            }
            if x.is_one() || (-x).is_one() {
                return Some((i, j));
            }
            match best {
                Some((bi, bj)) if s[(bi, bj)].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn reduce(s: &mut IntegerMatrix, mut t: Option<&mut Transforms>) {
    let limit = s.rows().min(s.cols());
    for k in 0..limit {
        let Some((pi, pj)) = min_pivot(s, k) else {
            break;
        };
        s.swap_rows(k, pi);
        s.swap_cols(k, pj);
        if let Some(t) = t.as_deref_mut() {
            t.swap_rows(k, pi);
            t.swap_cols(k, pj);
        }
        loop {
            let mut dirty = false;
            for i in k + 1..s.rows() {
                if s[(i, k)].is_zero() {
                    continue;
                }
                let q = -s[(i, k)].div_floor(&s[(k, k)]);
                s.add_row_multiple(i, k, &q);
                if let Some(t) = t.as_deref_mut() {
                    t.add_row(i, k, &q);
                }
                if !s[(i, k)].is_zero() {
                    dirty = true;
                }
            }
            for j in k + 1..s.cols() {
                if s[(k, j)].is_zero() {
                    continue;
                }
                let q = -s[(k, j)].div_floor(&s[(k, k)]);
                s.add_col_multiple(j, k, &q);
                if let Some(t) = t.as_deref_mut() {
                    t.add_col(j, k, &q);
                }
                if !s[(k, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a remainder is now smaller than the pivot; move it in
                let (pi, pj) = min_pivot_in_cross(s, k);
                s.swap_rows(k, pi);
                s.swap_cols(k, pj);
                if let Some(t) = t.as_deref_mut() {
                    t.swap_rows(k, pi);
                    t.swap_cols(k, pj);
                }
                continue;
            }
            // row k and column k are clear; enforce divisibility
            let p = s[(k, k)].clone();
            let offender = (k + 1..s.rows()).find(|&i| {
                (k + 1..s.cols()).any(|j| !s[(i, j)].is_multiple_of(&p))
            });
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row_multiple(k, i, &one);
                    if let Some(t) = t.as_deref_mut() {
                        t.add_row(k, i, &one);
                    }
                }
                None => break,
            }
        }
        if s[(k, k)].is_negative() {
            s.negate_row(k);
            if let Some(t) = t.as_deref_mut() {
                t.negate_row(k);
            }
        }
    }
}

fn min_pivot_in_cross(s: &IntegerMatrix, k: usize) -> (usize, usize) {
    let mut best = (k, k);
    let mut best_abs = s[(k, k)].abs();
    for i in k + 1..s.rows() {
        let a = s[(i, k)].abs();
        if !a.is_zero() && a < best_abs {
            best = (i, k);
            best_abs = a;
        }
    }
    for j in k + 1..s.cols() {
        let a = s[(k, j)].abs();
        if !a.is_zero() && a < best_abs {
            best = (k, j);
            best_abs = a;
        }
    }
    best
}

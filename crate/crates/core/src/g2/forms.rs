use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::linalg::determinant;
use super::octonion::Vector7;

/// Constant-coefficient exterior form on `R^7`. Index sets are bitmasks,
/// bit `i` standing for `e^{i+1}`; only increasing index sets are stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form {
    degree: usize,
    coefficients: BTreeMap<u8, BigRational>,
}

pub type ThreeForm = Form;
pub type FourForm = Form;

fn indices(mask: u8) -> Vec<usize> {
    (0..7).filter(|i| mask & (1 << i) != 0).collect()
}

/// Parity of the shuffle putting `a` before `b` into increasing order.
fn shuffle_is_odd(a: u8, b: u8) -> bool {
    let mut inversions = 0u32;
    for i in indices(a) {
        inversions += (b & ((1u8 << i) - 1)).count_ones();
    }
    inversions % 2 == 1
}

impl Form {
    pub fn zero(degree: usize) -> Self {
        Form {
            degree,
            coefficients: BTreeMap::new(),
        }
    }

    /// Builds from 1-based increasing index lists, e.g. `(&[1, 2, 3], 1)`.
    pub fn from_terms(degree: usize, terms: &[(&[usize], i64)]) -> Self {
        let mut f = Form::zero(degree);
        for (idx, c) in terms {
            assert_eq!(idx.len(), degree, "term {idx:?} has the wrong degree");
            assert!(idx.windows(2).all(|w| w[0] < w[1]), "indices {idx:?} must increase");
            let mask = idx.iter().fold(0u8, |m, &i| m | (1 << (i - 1)));
            f.add_term(mask, BigRational::from_integer(BigInt::from(*c)));
        }
        f
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn add_term(&mut self, mask: u8, c: BigRational) {
        let entry = self.coefficients.entry(mask).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coefficients.remove(&mask);
        }
    }

    /// Coefficient of `e^{i1 … ik}` for 1-based indices in any order.
    pub fn coefficient(&self, idx: &[usize]) -> BigRational {
        let mut sorted = idx.to_vec();
        let mut odd = false;
        for i in 0..sorted.len() {
            for j in 0..sorted.len() - 1 - i {
                if sorted[j] > sorted[j + 1] {
                    sorted.swap(j, j + 1);
                    odd = !odd;
                }
            }
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return BigRational::zero();
        }
        let mask = sorted.iter().fold(0u8, |m, &i| m | (1 << (i - 1)));
        let c = self.coefficients.get(&mask).cloned().unwrap_or_else(BigRational::zero);
        if odd {
            -c
        } else {
            c
        }
    }

    /// Nonzero terms as (1-based increasing indices, coefficient).
    pub fn terms(&self) -> Vec<(Vec<usize>, BigRational)> {
        self.coefficients
            .iter()
            .map(|(m, c)| (indices(*m).into_iter().map(|i| i + 1).collect(), c.clone()))
            .collect()
    }

    pub fn wedge(&self, other: &Form) -> Form {
        let mut out = Form::zero(self.degree + other.degree);
        for (a, ca) in &self.coefficients {
            for (b, cb) in &other.coefficients {
                if a & b != 0 {
                    continue;
                }
                let c = ca * cb;
                out.add_term(a | b, if shuffle_is_odd(*a, *b) { -c } else { c });
            }
        }
        out
    }

    /// Contraction `i_u` into the first slot.
    pub fn interior(&self, u: &Vector7) -> Form {
        let mut out = Form::zero(self.degree.saturating_sub(1));
        for (mask, c) in &self.coefficients {
            for (position, i) in indices(*mask).into_iter().enumerate() {
                if u.0[i].is_zero() {
                    continue;
                }
                let term = c * &u.0[i];
                out.add_term(mask & !(1 << i), if position % 2 == 1 { -term } else { term });
            }
        }
        out
    }

    /// Hodge star for the Euclidean metric and the orientation `e^{1…7}`.
    pub fn hodge_star(&self) -> Form {
        let mut out = Form::zero(7 - self.degree);
        for (mask, c) in &self.coefficients {
            let complement = !mask & 0x7f;
            out.add_term(complement, if shuffle_is_odd(*mask, complement) { -c.clone() } else { c.clone() });
        }
        out
    }

    /// `α(v_1, …, v_k)` as a sum of minors.
    pub fn evaluate(&self, vectors: &[Vector7]) -> BigRational {
        assert_eq!(vectors.len(), self.degree, "form of degree {} takes {} vectors", self.degree, self.degree);
        let mut total = BigRational::zero();
        for (mask, c) in &self.coefficients {
            let idx = indices(*mask);
            let minor: Vec<Vec<BigRational>> = vectors.iter().map(|v| idx.iter().map(|&i| v.0[i].clone()).collect()).collect();
            total += c * determinant(minor);
        }
        total
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0");
        }
        for (n, (mask, c)) in self.coefficients.iter().enumerate() {
            let name: String = indices(*mask).iter().map(|i| char::from(b'1' + *i as u8)).collect();
            let sign = if c.is_negative() { "-" } else if n > 0 { "+" } else { "" };
            if c.abs().is_one() {
                write!(f, "{sign}e^{name}")?;
            } else {
                write!(f, "{sign}{}e^{name}", c.abs())?;
            }
        }
        Ok(())
    }
}

/// `e^{123} + e^{145} + e^{167} + e^{246} - e^{257} - e^{347} - e^{356}`.
pub fn phi0() -> ThreeForm {
    Form::from_terms(
        3,
        &[
            (&[1, 2, 3], 1),
            (&[1, 4, 5], 1),
            (&[1, 6, 7], 1),
            (&[2, 4, 6], 1),
            (&[2, 5, 7], -1),
            (&[3, 4, 7], -1),
            (&[3, 5, 6], -1),
        ],
    )
}

/// `e^{4567} + e^{2367} + e^{2345} + e^{1357} - e^{1346} - e^{1256} - e^{1247}`.
pub fn star_phi0() -> FourForm {
    Form::from_terms(
        4,
        &[
            (&[4, 5, 6, 7], 1),
            (&[2, 3, 6, 7], 1),
            (&[2, 3, 4, 5], 1),
            (&[1, 3, 5, 7], 1),
            (&[1, 3, 4, 6], -1),
            (&[1, 2, 5, 6], -1),
            (&[1, 2, 4, 7], -1),
        ],
    )
}

/// The 3-form `(u, v, w) ↦ ⟨u × v, w⟩` read off from octonion products.
pub fn phi_from_cross() -> ThreeForm {
    let mut f = Form::zero(3);
    for mask in 0u8..0x80 {
        if mask.count_ones() != 3 {
            continue;
        }
        let idx = indices(mask);
        let (u, v, w) = (Vector7::e(idx[0] + 1), Vector7::e(idx[1] + 1), Vector7::e(idx[2] + 1));
        f.add_term(mask, u.cross(&v).dot(&w));
    }
    f
}

/// The 4-form `(u, v, w, z) ↦ ⟨χ(u, v, w), z⟩` with `χ` from cross products.
pub fn star_phi_from_cross() -> FourForm {
    let mut f = Form::zero(4);
    for mask in 0u8..0x80 {
        if mask.count_ones() != 4 {
            continue;
        }
        let idx = indices(mask);
        let e: Vec<Vector7> = idx.iter().map(|i| Vector7::e(i + 1)).collect();
        f.add_term(mask, super::chi_by_cross(&e[0], &e[1], &e[2]).dot(&e[3]));
    }
    f
}

/// `i_u φ ∧ i_v φ ∧ φ` as a multiple of `e^{1…7}`.
pub fn metric_density(phi: &ThreeForm, u: &Vector7, v: &Vector7) -> BigRational {
    phi.interior(u).wedge(&phi.interior(v)).wedge(phi).coefficient(&[1, 2, 3, 4, 5, 6, 7])
}

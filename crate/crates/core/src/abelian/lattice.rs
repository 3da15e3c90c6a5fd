//! Sublattices of `Z^n` and subquotients of finitely generated groups,
//! everything reduced to Smith normal form.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::snf::{smith_normal_form, SmithDecomposition};
use super::{AbelianError, FGAbelianGroup, IntegerMatrix};

/// Columns `d_i e_i`, one per torsion generator.
pub(crate) fn relation_matrix(g: &FGAbelianGroup) -> IntegerMatrix {
    let n = g.generator_count();
    let t = g.invariant_factors().len();
    let mut r = IntegerMatrix::zeros(n, t);
    for (i, d) in g.invariant_factors().iter().enumerate() {
        r[(i, i)] = d.clone();
    }
    r
}

/// A sublattice of `Z^ambient` with an explicit basis.
#[derive(Clone, Debug)]
pub(crate) struct Lattice {
    ambient: usize,
    // SNF of some generating matrix; basis vector i is s_i times column i of u_inv
    snf: SmithDecomposition,
    rank: usize,
}

impl Lattice {
    pub(crate) fn spanned_by(generators: &IntegerMatrix) -> Self {
        let snf = smith_normal_form(generators);
        let rank = snf.rank();
        Lattice {
            ambient: generators.rows(),
            snf,
            rank,
        }
    }

    #[cfg(test)]
    pub(crate) fn rank(&self) -> usize {
        self.rank
    }

    /// Coordinates of `v` in this lattice's basis, `None` if `v` is outside.
    pub(crate) fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        debug_assert_eq!(v.len(), self.ambient);
        let w = self.snf.u.mul_vec(v);
        let mut c = Vec::with_capacity(self.rank);
        for (i, wi) in w.iter().enumerate() {
            if i < self.rank {
                let s = &self.snf.s[(i, i)];
                let (q, r) = wi.div_rem(s);
                if !r.is_zero() {
                    return None;
                }
                c.push(q);
            } else if !wi.is_zero() {
                return None;
            }
        }
        Some(c)
    }

    pub(crate) fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    /// `self / span(sub)`; every column of `sub` must lie in `self`.
    pub(crate) fn quotient_by(&self, sub: &IntegerMatrix) -> Result<FGAbelianGroup, AbelianError> {
        let mut coords = Vec::with_capacity(sub.cols());
        for j in 0..sub.cols() {
            let c = self
                .coordinates(&sub.column(j))
                .ok_or(AbelianError::NotASubgroup)?;
            coords.push(c);
        }
        let m = IntegerMatrix::from_columns(self.rank, &coords);
        Ok(FGAbelianGroup::cokernel(&m))
    }
}

/// `{ x in Z^cols : m x in span(rel) }`, as a lattice.
pub(crate) fn preimage_lattice(m: &IntegerMatrix, rel: &IntegerMatrix) -> Lattice {
    let n = m.cols();
    let stacked = m.hconcat(rel);
    let snf = smith_normal_form(&stacked);
    let r = snf.rank();
    let total = stacked.cols();
    let mut gens = IntegerMatrix::zeros(n, total - r);
    for (k, j) in (r..total).enumerate() {
        for i in 0..n {
            gens[(i, k)] = snf.v[(i, j)].clone();
        }
    }
    Lattice::spanned_by(&gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_coordinates_round_trip() {
        let gens = IntegerMatrix::from_rows(&[[2, 4], [0, 6]]);
        let l = Lattice::spanned_by(&gens);
        assert_eq!(l.rank(), 2);
        assert!(l.contains(&[BigInt::from(6), BigInt::from(6)]));
        assert!(!l.contains(&[BigInt::from(1), BigInt::from(0)]));
        assert!(!l.contains(&[BigInt::from(0), BigInt::from(3)]));
    }

    #[test]
    fn preimage_of_torsion_relation() {
        // x in Z with 2x = 0 mod 4 is 2Z
        let m = IntegerMatrix::from_rows(&[[2]]);
        let rel = IntegerMatrix::from_rows(&[[4]]);
        let l = preimage_lattice(&m, &rel);
        assert!(l.contains(&[BigInt::from(2)]));
        assert!(!l.contains(&[BigInt::from(1)]));
    }
}

use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::forms::phi0;
use super::linalg::{determinant, nullspace, rank};
use super::octonion::Vector7;
use super::{chi_by_cross, G2Error};

/// An oriented 3- or 4-dimensional subspace of `R^7`, given by a spanning
/// list of rational vectors. Orientation is the order of the list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plane {
    basis: Vec<Vector7>,
}

fn rows(vectors: &[Vector7]) -> Vec<Vec<BigRational>> {
    vectors.iter().map(|v| v.0.to_vec()).collect()
}

impl Plane {
    pub fn new(basis: Vec<Vector7>) -> Result<Self, G2Error> {
        let k = basis.len();
        if !(3..=4).contains(&k) {
            return Err(G2Error::UnsupportedDimension(k));
        }
        let found = rank(&rows(&basis));
        if found != k {
            return Err(G2Error::RankDeficient { expected: k, found });
        }
        Ok(Plane { basis })
    }

    /// `span(e_a, e_b, …)` from 1-based indices.
    pub fn coordinate(indices: &[usize]) -> Result<Self, G2Error> {
        Plane::new(indices.iter().map(|&k| Vector7::e(k)).collect())
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector7] {
        &self.basis
    }

    pub fn gram_determinant(&self) -> BigRational {
        determinant(
            self.basis
                .iter()
                .map(|a| self.basis.iter().map(|b| a.dot(b)).collect())
                .collect(),
        )
    }

    /// Whether both planes span the same subspace, ignoring orientation.
    pub fn same_subspace(&self, other: &Plane) -> bool {
        let mut all = rows(&self.basis);
        all.extend(rows(&other.basis));
        self.dimension() == other.dimension() && rank(&all) == self.dimension()
    }

    pub fn reversed(&self) -> Plane {
        let mut basis = self.basis.clone();
        basis.swap(0, 1);
        Plane { basis }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlaneClass {
    AssociativePositive,
    AssociativeNegative,
    HarveyLawson,
    /// Neither; `phi_squared` is `Φ²` in `(0, 1)` and `positive` its sign.
    Generic { phi_squared: BigRational, positive: bool },
}

/// `Φ² = φ₀(b)² / det Gram(b)` for a spanning triple `b`.
pub fn phi_squared(plane: &Plane) -> Result<BigRational, G2Error> {
    if plane.dimension() != 3 {
        return Err(G2Error::UnsupportedDimension(plane.dimension()));
    }
    let value = phi0().evaluate(plane.basis());
    Ok(&value * &value / plane.gram_determinant())
}

pub fn classify_plane3(plane: &Plane) -> Result<PlaneClass, G2Error> {
    if plane.dimension() != 3 {
        return Err(G2Error::UnsupportedDimension(plane.dimension()));
    }
    let b = plane.basis();
    let value = phi0().evaluate(b);
    if value.is_zero() {
        return Ok(PlaneClass::HarveyLawson);
    }
    if chi_by_cross(&b[0], &b[1], &b[2]).is_zero() {
        return Ok(if value.is_positive() {
            PlaneClass::AssociativePositive
        } else {
            PlaneClass::AssociativeNegative
        });
    }
    Ok(PlaneClass::Generic {
        phi_squared: &value * &value / plane.gram_determinant(),
        positive: value.is_positive(),
    })
}

/// Whether `φ₀` vanishes on every triple from the basis of a 4-plane.
pub fn coassociative_check(plane: &Plane) -> Result<bool, G2Error> {
    if plane.dimension() != 4 {
        return Err(G2Error::UnsupportedDimension(plane.dimension()));
    }
    let phi = phi0();
    let b = plane.basis();
    let triples = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
    Ok(triples
        .iter()
        .all(|t| phi.evaluate(&[b[t[0]].clone(), b[t[1]].clone(), b[t[2]].clone()]).is_zero()))
}

/// Exact orthogonal complement.
pub fn perp(plane: &Plane) -> Result<Plane, G2Error> {
    let basis = nullspace(&rows(plane.basis()), 7)
        .into_iter()
        .map(|v| Vector7(core::array::from_fn(|i| v[i].clone())))
        .collect();
    Plane::new(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_input() {
        let u = Vector7::from_integers([1, 2, 0, 0, 0, 0, 0]);
        let v = Vector7::from_integers([2, 4, 0, 0, 0, 0, 0]);
        assert_eq!(
            Plane::new(alloc::vec![u, v, Vector7::e(3)]),
            Err(G2Error::RankDeficient { expected: 3, found: 2 })
        );
        assert_eq!(Plane::coordinate(&[1, 2]), Err(G2Error::UnsupportedDimension(2)));
    }

    #[test]
    fn coordinate_classes() {
        assert_eq!(classify_plane3(&Plane::coordinate(&[1, 2, 3]).unwrap()).unwrap(), PlaneClass::AssociativePositive);
        assert_eq!(classify_plane3(&Plane::coordinate(&[2, 1, 3]).unwrap()).unwrap(), PlaneClass::AssociativeNegative);
        assert_eq!(classify_plane3(&Plane::coordinate(&[1, 2, 4]).unwrap()).unwrap(), PlaneClass::HarveyLawson);
    }

    #[test]
    fn generic_plane_between_the_extremes() {
        // span(e1, e2, e3 + e4): φ₀ = 1, Gram determinant 2
        let p = Plane::new(alloc::vec![
            Vector7::e(1),
            Vector7::e(2),
            Vector7::from_integers([0, 0, 1, 1, 0, 0, 0]),
        ])
        .unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(
            classify_plane3(&p).unwrap(),
            PlaneClass::Generic {
                phi_squared: half.clone(),
                positive: true
            }
        );
        assert_eq!(phi_squared(&p).unwrap(), half);
    }

    #[test]
    fn coassociative_examples() {
        assert!(coassociative_check(&Plane::coordinate(&[4, 5, 6, 7]).unwrap()).unwrap());
        assert!(!coassociative_check(&Plane::coordinate(&[1, 2, 3, 4]).unwrap()).unwrap());
        assert!(coassociative_check(&Plane::coordinate(&[1, 2, 3]).unwrap()).is_err());
    }

    #[test]
    fn perp_of_coordinate_plane() {
        let l = Plane::coordinate(&[1, 2, 3]).unwrap();
        let s = perp(&l).unwrap();
        assert!(s.same_subspace(&Plane::coordinate(&[4, 5, 6, 7]).unwrap()));
        assert!(perp(&s).unwrap().same_subspace(&l));
    }
}

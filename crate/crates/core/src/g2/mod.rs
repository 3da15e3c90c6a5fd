//! Octonions, the associative calibration `φ₀` on `R^7`, and the geometry of
//! associative, coassociative and Harvey–Lawson planes.

mod flow;
mod forms;
mod linalg;
mod octonion;
mod planes;

use num_rational::BigRational;

pub use flow::{flow_from_frame, flow_to_critical, orthonormalize, phi_of_frame, FlowDirection, FlowOutcome, FlowSettings, Frame};
pub use forms::{metric_density, phi0, phi_from_cross, star_phi0, star_phi_from_cross, Form, FourForm, ThreeForm};
pub use octonion::{Octonion, Vector7, IMAGINARY_SIGNS};
pub use planes::{classify_plane3, coassociative_check, perp, phi_squared, Plane, PlaneClass};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum G2Error {
    #[error("spanning vectors have rank {found}, expected {expected}")]
    RankDeficient { expected: usize, found: usize },
    #[error("planes of dimension {0} are not supported")]
    UnsupportedDimension(usize),
    #[error("flow stopped after {iterations} iterations at Φ = {phi}")]
    NoConvergence { iterations: usize, phi: f64 },
}

/// `χ(u, v, w) = -u × (v × w) - ⟨u, v⟩ w + ⟨u, w⟩ v`.
pub fn chi_by_cross(u: &Vector7, v: &Vector7, w: &Vector7) -> Vector7 {
    let a = -&u.cross(&v.cross(w));
    let b = w.scale(&u.dot(v));
    let c = v.scale(&u.dot(w));
    &(&a - &b) + &c
}

/// `χ` through `⟨χ(u, v, w), z⟩ = ∗φ₀(u, v, w, z)`.
pub fn chi_by_star(u: &Vector7, v: &Vector7, w: &Vector7) -> Vector7 {
    let star = star_phi0();
    Vector7(core::array::from_fn(|i| {
        star.evaluate(&[u.clone(), v.clone(), w.clone(), Vector7::e(i + 1)])
    }))
}

/// Both sides of `φ₀(u, v, w)² + |χ(u, v, w)|² = |u ∧ v ∧ w|²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CalibrationIdentity {
    pub phi_squared: BigRational,
    pub chi_squared: BigRational,
    pub volume_squared: BigRational,
}

impl CalibrationIdentity {
    pub fn holds(&self) -> bool {
        &self.phi_squared + &self.chi_squared == self.volume_squared
    }
}

pub fn calibration_identity_check(u: &Vector7, v: &Vector7, w: &Vector7) -> CalibrationIdentity {
    let phi = phi0().evaluate(&[u.clone(), v.clone(), w.clone()]);
    let vectors = [u, v, w];
    let gram: alloc::vec::Vec<alloc::vec::Vec<BigRational>> =
        vectors.iter().map(|a| vectors.iter().map(|b| a.dot(b)).collect()).collect();
    CalibrationIdentity {
        phi_squared: &phi * &phi,
        chi_squared: chi_by_cross(u, v, w).norm_squared(),
        volume_squared: linalg::determinant(gram),
    }
}

/// The arithmetic condition `⟨p₁(νX), [X]⟩ ≠ ±e[X]` for a Harvey–Lawson pair.
pub fn hl_pair_criterion(p1_normal: i64, euler: i64) -> bool {
    p1_normal != euler && p1_normal != -euler
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hl_examples() {
        assert!(hl_pair_criterion(0, 2));
        assert!(!hl_pair_criterion(0, 0));
        assert!(!hl_pair_criterion(-4, 4));
        for g in 0..4i64 {
            for h in 0..4i64 {
                let euler = (2 - 2 * g) * (2 - 2 * h);
                assert_eq!(hl_pair_criterion(0, euler), g != 1 && h != 1, "g={g} h={h}");
            }
        }
    }

    #[test]
    fn chi_of_coordinate_triples() {
        assert!(chi_by_cross(&Vector7::e(1), &Vector7::e(2), &Vector7::e(3)).is_zero());
        let c = chi_by_cross(&Vector7::e(1), &Vector7::e(2), &Vector7::e(4));
        assert_eq!(c.norm_squared(), BigRational::from_integer(1.into()));
        let u = Vector7::from_integers([1, 2, 0, -1, 0, 3, 1]);
        assert!(chi_by_cross(&u, &u, &Vector7::e(5)).is_zero());
    }
}

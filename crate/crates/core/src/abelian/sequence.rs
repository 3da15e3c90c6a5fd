use alloc::vec::Vec;

use num_traits::One;

use super::hom::hom_homology;
use super::snf::invariant_factors;
use super::{AbelianError, FGAbelianGroup, GroupHom, IntegerMatrix};

/// `ker(d_out) / im(d_in)` for free chain groups, where `d_in: Z^a -> Z^n`
/// and `d_out: Z^n -> Z^b`.
pub fn homology_at(d_in: &IntegerMatrix, d_out: &IntegerMatrix) -> Result<FGAbelianGroup, AbelianError> {
    if d_in.rows() != d_out.cols() {
        return Err(AbelianError::ShapeMismatch {
            left: (d_out.rows(), d_out.cols()),
            right: (d_in.rows(), d_in.cols()),
        });
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(AbelianError::NonzeroComposite);
    }
    let n = d_in.rows();
    let out_rank = invariant_factors(d_out).len();
    let f = invariant_factors(d_in);
    // ker(d_out) is a direct summand, so the torsion of Z^n/im(d_in) is the
    // torsion of the homology
    let rank = n - out_rank - f.len();
    let torsion = f.into_iter().filter(|d| !d.is_one()).collect();
    FGAbelianGroup::new(rank, torsion)
}

/// Integral cohomology from integral homology: `H^n = F_n ⊕ T_{n-1}`.
pub fn uct_cohomology(homology: &[FGAbelianGroup]) -> Vec<FGAbelianGroup> {
    (0..homology.len())
        .map(|n| {
            let free = homology[n].free_part();
            match n.checked_sub(1) {
                Some(m) => free.direct_sum(&homology[m].torsion_part()),
                None => free,
            }
        })
        .collect()
}

/// Cohomology with `Z/p` coefficients, as dimensions.
pub fn uct_mod_p_cohomology(homology: &[FGAbelianGroup], p: u64) -> Vec<usize> {
    (0..homology.len())
        .map(|n| {
            let hom = homology[n].mod_p_rank(p);
            let ext = n.checked_sub(1).map_or(0, |m| homology[m].factors_divisible_by(p));
            hom + ext
        })
        .collect()
}

/// Homology with `Z/p` coefficients, as dimensions.
pub fn uct_mod_p_homology(homology: &[FGAbelianGroup], p: u64) -> Vec<usize> {
    (0..homology.len())
        .map(|n| {
            let tensor = homology[n].mod_p_rank(p);
            let tor = n.checked_sub(1).map_or(0, |m| homology[m].factors_divisible_by(p));
            tensor + tor
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DualityCheck {
    Pass,
    /// `free` tells whether the free parts or the torsion parts disagreed.
    Fail { degree: usize, partner: usize, free: bool },
}

impl DualityCheck {
    pub fn passed(&self) -> bool {
        matches!(self, DualityCheck::Pass)
    }
}

/// Poincaré duality for a closed orientable `dim`-manifold:
/// `F_k ≅ F_{dim-k}` and `T_k ≅ T_{dim-k-1}`. Missing degrees count as 0.
pub fn poincare_duality_check(
    homology: &[FGAbelianGroup],
    dim: usize,
    orientable: bool,
) -> Result<DualityCheck, AbelianError> {
    if !orientable {
        return Err(AbelianError::NonOrientable);
    }
    let zero = FGAbelianGroup::zero();
    let at = |k: usize| homology.get(k).unwrap_or(&zero);
    if homology.len() > dim + 1 && homology[dim + 1..].iter().any(|g| !g.is_zero()) {
        return Ok(DualityCheck::Fail {
            degree: dim + 1,
            partner: dim + 1,
            free: true,
        });
    }
    for k in 0..=dim {
        if at(k).rank() != at(dim - k).rank() {
            return Ok(DualityCheck::Fail {
                degree: k,
                partner: dim - k,
                free: true,
            });
        }
        let partner_torsion = match (dim - k).checked_sub(1) {
            Some(m) => at(m).torsion_part(),
            None => FGAbelianGroup::zero(),
        };
        if at(k).torsion_part() != partner_torsion {
            return Ok(DualityCheck::Fail {
                degree: k,
                partner: (dim - k).saturating_sub(1),
                free: false,
            });
        }
    }
    Ok(DualityCheck::Pass)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    /// Index into the group list of the first interior node where
    /// image and kernel differ.
    FailsAt(usize),
}

/// Checks `G_0 -> G_1 -> … -> G_n` where `maps[i]: groups[i] -> groups[i+1]`,
/// at every interior node.
pub fn exact_sequence_check(groups: &[FGAbelianGroup], maps: &[GroupHom]) -> Result<Exactness, AbelianError> {
    if maps.len() + 1 != groups.len() {
        return Err(AbelianError::SequenceLength {
            groups: groups.len(),
            maps: maps.len(),
        });
    }
    for (i, m) in maps.iter().enumerate() {
        if m.domain() != &groups[i] || m.codomain() != &groups[i + 1] {
            return Err(AbelianError::NotComposable);
        }
    }
    for node in 1..groups.len().saturating_sub(1) {
        let incoming = &maps[node - 1];
        let outgoing = &maps[node];
        if !outgoing.after(incoming)?.is_zero() {
            return Ok(Exactness::FailsAt(node));
        }
        if !hom_homology(&groups[node], Some(incoming), Some(outgoing))?.is_zero() {
            return Ok(Exactness::FailsAt(node));
        }
    }
    Ok(Exactness::Exact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn g(s: &str) -> FGAbelianGroup {
        s.parse().unwrap()
    }

    fn table(s: &str) -> Vec<FGAbelianGroup> {
        s.split(',').map(g).collect()
    }

    #[test]
    fn rp3_degree_one() {
        let d1 = IntegerMatrix::zeros(1, 1);
        let d2 = IntegerMatrix::from_rows(&[[2]]);
        assert_eq!(homology_at(&d2, &d1).unwrap(), g("Z2"));
    }

    #[test]
    fn no_relations() {
        let d_in = IntegerMatrix::zeros(2, 0);
        let d_out = IntegerMatrix::zeros(0, 2);
        assert_eq!(homology_at(&d_in, &d_out).unwrap(), g("Z^2"));
    }

    #[test]
    fn quotient_read_off_diagonal() {
        let d_in = IntegerMatrix::from_rows(&[[2, 0], [0, 4]]);
        let d_out = IntegerMatrix::zeros(0, 2);
        assert_eq!(homology_at(&d_in, &d_out).unwrap(), g("Z2+Z4"));
    }

    #[test]
    fn malformed_complex_rejected() {
        let d_in = IntegerMatrix::from_rows(&[[1]]);
        let d_out = IntegerMatrix::from_rows(&[[1]]);
        assert_eq!(homology_at(&d_in, &d_out), Err(AbelianError::NonzeroComposite));
    }

    #[test]
    fn uct_examples() {
        assert_eq!(uct_cohomology(&table("Z,0,Z")), table("Z,0,Z"));
        assert_eq!(uct_cohomology(&table("Z,Z2,0,Z")), table("Z,0,Z2,Z"));
    }

    #[test]
    fn duality_examples() {
        assert!(poincare_duality_check(&table("Z,0,0,0,Z"), 4, true).unwrap().passed());
        assert_eq!(
            poincare_duality_check(&table("Z,0,0"), 2, true).unwrap(),
            DualityCheck::Fail {
                degree: 0,
                partner: 2,
                free: true
            }
        );
        assert!(poincare_duality_check(&table("Z"), 0, false).is_err());
    }

    #[test]
    fn short_exact_sequences() {
        let groups = table("0,Z,Z,Z2,0");
        let maps = |k: i64| {
            vec![
                GroupHom::zero(g("0"), g("Z")),
                GroupHom::scalar(g("Z"), k),
                GroupHom::new(g("Z"), g("Z2"), IntegerMatrix::from_rows(&[[1]])).unwrap(),
                GroupHom::zero(g("Z2"), g("0")),
            ]
        };
        assert_eq!(exact_sequence_check(&groups, &maps(2)).unwrap(), Exactness::Exact);
        assert_eq!(exact_sequence_check(&groups, &maps(0)).unwrap(), Exactness::FailsAt(1));
    }
}

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::abelian::{FGAbelianGroup, IntegerMatrix};

use super::page::BigradedPage;

/// Torsion order above which iterated extensions are not enumerated.
pub const EXTENSION_ORDER_CAP: u64 = 64;

/// Cap on the number of extension classes tried for a single step.
const CLASS_CAP: u64 = 1 << 14;

/// Every middle group `G` of a short exact sequence `0 -> sub -> G -> quotient -> 0`.
///
/// The free part of the quotient splits off. For a torsion generator of order
/// `c` the lift `e` satisfies `c·e = x` with `x` ranging over `sub / c·sub`.
/// Returns `None` when the number of classes exceeds the internal cap.
pub fn extension_middles(sub: &FGAbelianGroup, quotient: &FGAbelianGroup) -> Option<BTreeSet<FGAbelianGroup>> {
    let mut out = BTreeSet::new();
    let free_quotient = FGAbelianGroup::free(quotient.rank());
    let orders: Vec<BigInt> = quotient.invariant_factors().to_vec();
    if orders.is_empty() {
        out.insert(sub.direct_sum(&free_quotient));
        return Some(out);
    }
    let sub_gens = sub.generator_count();
    // residue ranges, slot = (torsion generator of quotient, generator of sub)
    let mut ranges: Vec<BigInt> = Vec::new();
    for c in &orders {
        for j in 0..sub_gens {
            ranges.push(match sub.generator_order(j) {
                Some(a) => a.gcd(c),
                None => c.clone(),
            });
        }
    }
    let classes = ranges.iter().fold(BigInt::one(), |acc, r| acc * r);
    if classes > BigInt::from(CLASS_CAP) {
        return None;
    }
    let m = orders.len();
    let mut odometer: Vec<BigInt> = alloc::vec![BigInt::zero(); ranges.len()];
    loop {
        // columns: relations of sub, then c_i e_i - x_i
        let rows = sub_gens + m;
        let sub_torsion = sub.invariant_factors().len();
        let mut rel = IntegerMatrix::zeros(rows, sub_torsion + m);
        for (j, a) in sub.invariant_factors().iter().enumerate() {
            rel[(j, j)] = a.clone();
        }
        for (i, c) in orders.iter().enumerate() {
            let col = sub_torsion + i;
            rel[(sub_gens + i, col)] = c.clone();
            for j in 0..sub_gens {
                rel[(j, col)] = -odometer[i * sub_gens + j].clone();
            }
        }
        out.insert(FGAbelianGroup::cokernel(&rel).direct_sum(&free_quotient));
        let mut carried = true;
        for slot in (0..odometer.len()).rev() {
            odometer[slot] += 1;
            if odometer[slot] < ranges[slot] {
                carried = false;
                break;
            }
            odometer[slot] = BigInt::zero();
        }
        if carried {
            break;
        }
    }
    Some(out)
}

/// Groups admitting a filtration with the given successive quotients, lowest
/// filtration first. `None` when the torsion involved exceeds
/// [`EXTENSION_ORDER_CAP`] or a step has too many classes.
pub fn iterated_extensions(layers: &[FGAbelianGroup]) -> Option<BTreeSet<FGAbelianGroup>> {
    let nonzero: Vec<&FGAbelianGroup> = layers.iter().filter(|g| !g.is_zero()).collect();
    if nonzero.len() <= 1 {
        let only = nonzero.first().map_or_else(FGAbelianGroup::zero, |g| (*g).clone());
        return Some(BTreeSet::from([only]));
    }
    let torsion: BigInt = layers.iter().map(FGAbelianGroup::torsion_order).product();
    if torsion > BigInt::from(EXTENSION_ORDER_CAP) {
        return None;
    }
    let mut current: BTreeSet<FGAbelianGroup> = BTreeSet::new();
    current.insert(FGAbelianGroup::zero());
    for layer in layers.iter().filter(|g| !g.is_zero()) {
        let mut next = BTreeSet::new();
        for sub in &current {
            next.extend(extension_middles(sub, layer)?);
        }
        current = next;
    }
    Some(current)
}

/// Conditions every iterated extension satisfies: ranks add up, and the
/// torsion order divides the product of the layers' torsion orders.
pub fn extension_necessary(layers: &[FGAbelianGroup], total: &FGAbelianGroup) -> bool {
    let rank: usize = layers.iter().map(FGAbelianGroup::rank).sum();
    let torsion: BigInt = layers.iter().map(FGAbelianGroup::torsion_order).product();
    rank == total.rank() && torsion.is_multiple_of(&total.torsion_order())
}

/// Outcome of comparing one diagonal of `E^∞` with a known group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagonalVerdict {
    Consistent,
    Inconsistent,
    /// Too large to enumerate; only the necessary conditions were checked,
    /// and they hold.
    NecessaryOnly,
}

/// Whether `total` admits a filtration with the given quotients.
pub fn diagonal_verdict(layers: &[FGAbelianGroup], total: &FGAbelianGroup) -> DiagonalVerdict {
    match iterated_extensions(layers) {
        Some(set) if set.contains(total) => DiagonalVerdict::Consistent,
        Some(_) => DiagonalVerdict::Inconsistent,
        None if extension_necessary(layers, total) => DiagonalVerdict::NecessaryOnly,
        None => DiagonalVerdict::Inconsistent,
    }
}

/// Checks every total degree `n` of a limit page against `total[n]`; degrees
/// beyond the table must have a zero diagonal.
pub fn infinity_consistency(limit: &BigradedPage, total: &[FGAbelianGroup]) -> Vec<DiagonalVerdict> {
    let top = limit.max_total_degree().max(total.len().saturating_sub(1));
    (0..=top)
        .map(|n| {
            let target = total.get(n).cloned().unwrap_or_default();
            diagonal_verdict(&limit.diagonal(n), &target)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FGAbelianGroup {
        s.parse().unwrap()
    }

    fn set(items: &[&str]) -> BTreeSet<FGAbelianGroup> {
        items.iter().map(|s| g(s)).collect()
    }

    #[test]
    fn z2_by_z2() {
        assert_eq!(extension_middles(&g("Z2"), &g("Z2")).unwrap(), set(&["Z4", "Z2^2"]));
    }

    #[test]
    fn z_by_z2() {
        // 0 -> Z -> G -> Z2 -> 0
        assert_eq!(extension_middles(&g("Z"), &g("Z2")).unwrap(), set(&["Z", "Z+Z2"]));
    }

    #[test]
    fn free_quotient_splits() {
        assert_eq!(extension_middles(&g("Z2"), &g("Z")).unwrap(), set(&["Z+Z2"]));
    }

    #[test]
    fn coprime_orders_split() {
        assert_eq!(extension_middles(&g("Z3"), &g("Z2")).unwrap(), set(&["Z6"]));
    }

    #[test]
    fn iterated_three_layers() {
        let got = iterated_extensions(&[g("Z2"), g("0"), g("Z2"), g("Z2")]).unwrap();
        assert_eq!(got, set(&["Z2^3", "Z2+Z4", "Z8"]));
    }

    #[test]
    fn too_large_for_one_copy() {
        // Z2^2 cannot sit inside a filtration of Z2
        assert_eq!(diagonal_verdict(&[g("Z2^2")], &g("Z2")), DiagonalVerdict::Inconsistent);
        assert_eq!(diagonal_verdict(&[g("Z2"), g("Z2^2")], &g("Z2")), DiagonalVerdict::Inconsistent);
    }

    #[test]
    fn cap_falls_back_to_necessary_conditions() {
        let layers = [g("Z8"), g("Z8"), g("Z2")];
        assert!(iterated_extensions(&layers).is_none());
        assert_eq!(diagonal_verdict(&layers, &g("Z128")), DiagonalVerdict::NecessaryOnly);
        assert_eq!(diagonal_verdict(&layers, &g("Z3")), DiagonalVerdict::Inconsistent);
    }

    #[test]
    fn order_oracle_on_random_pairs() {
        // |G| = |A||C| for finite layers
        for (a, c) in [("Z2", "Z4"), ("Z6", "Z2^2"), ("Z4", "Z4"), ("Z3", "Z9")] {
            for m in extension_middles(&g(a), &g(c)).unwrap() {
                assert_eq!(m.torsion_order(), g(a).torsion_order() * g(c).torsion_order());
            }
        }
        assert_eq!(
            extension_middles(&g("Z4"), &g("Z4")).unwrap(),
            set(&["Z4^2", "Z2+Z8", "Z16"])
        );
    }
}

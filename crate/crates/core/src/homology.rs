//! Homology tables computed from chain complexes.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::abelian::{homology_at, invariant_factors, AbelianError, FGAbelianGroup};
use crate::cells::ChainComplex;

/// Integral homology of a named space, indexed by degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyTable {
    pub space_name: String,
    pub groups: Vec<FGAbelianGroup>,
}

impl HomologyTable {
    pub fn new(space_name: impl Into<String>, groups: Vec<FGAbelianGroup>) -> Self {
        HomologyTable {
            space_name: space_name.into(),
            groups,
        }
    }

    /// Group in degree `n`, zero outside the table.
    pub fn group(&self, n: usize) -> FGAbelianGroup {
        self.groups.get(n).cloned().unwrap_or_default()
    }

    pub fn top_dim(&self) -> usize {
        self.groups.len().saturating_sub(1)
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.groups.iter().map(FGAbelianGroup::rank).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .enumerate()
            .map(|(n, g)| if n % 2 == 0 { g.rank() as i64 } else { -(g.rank() as i64) })
            .sum()
    }

    /// `(Z, 0, Z2, …)` style rendering.
    pub fn notation(&self) -> String {
        let parts: Vec<String> = self.groups.iter().map(FGAbelianGroup::notation).collect();
        let mut s = String::from("(");
        s.push_str(&parts.join(", "));
        s.push(')');
        s
    }
}

pub fn compute_homology(name: &str, c: &ChainComplex) -> Result<HomologyTable, AbelianError> {
    let groups = (0..=c.top_dim())
        .map(|n| homology_at(&c.incoming(n), c.boundary(n)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(HomologyTable::new(name, groups))
}

/// Betti numbers as polynomial coefficients, constant term first.
pub fn poincare_polynomial(t: &HomologyTable) -> Vec<usize> {
    t.betti_numbers()
}

/// Dimensions of homology with `Z/2` coefficients, from the complex with
/// its entries reduced mod 2. Over a field the rank of a matrix is the
/// number of invariant factors that stay units, here the odd ones.
pub fn mod2_homology(c: &ChainComplex) -> Vec<usize> {
    let reduced = c.reduce_mod(2);
    let two = BigInt::from(2);
    let rank2 = |n: usize| -> usize {
        if n > c.top_dim() {
            return 0;
        }
        invariant_factors(reduced.boundary(n))
            .iter()
            .filter(|d| !d.is_multiple_of(&two))
            .count()
    };
    (0..=c.top_dim())
        .map(|n| c.rank(n) - rank2(n) - rank2(n + 1))
        .collect()
}

/// One disagreeing degree between two tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeDiff {
    pub degree: usize,
    pub computed: FGAbelianGroup,
    pub expected: FGAbelianGroup,
}

/// Structural comparison degree by degree; missing degrees count as zero.
pub fn compare_tables(computed: &HomologyTable, expected: &HomologyTable) -> Vec<DegreeDiff> {
    let len = computed.groups.len().max(expected.groups.len());
    (0..len)
        .filter_map(|n| {
            let (c, e) = (computed.group(n), expected.group(n));
            (c != e).then_some(DegreeDiff {
                degree: n,
                computed: c,
                expected: e,
            })
        })
        .collect()
}

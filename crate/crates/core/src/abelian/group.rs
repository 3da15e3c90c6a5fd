use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::snf::invariant_factors;
use super::{AbelianError, IntegerMatrix};

/// A finitely generated abelian group `Z^rank ⊕ Z/d1 ⊕ … ⊕ Z/dt` with
/// `1 < d1 | d2 | … | dt`.
///
/// Canonical generators are ordered torsion first (in the order of the
/// factors), then the free generators. Elements are coordinate vectors in
/// that basis; torsion coordinates are reduced into `0..d`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FGAbelianGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl FGAbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FGAbelianGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: u64) -> Self {
        Self::from_cyclic_orders(0, &[BigInt::from(order)]).expect("nonzero order")
    }

    /// Validating constructor for data already in invariant-factor form.
    pub fn new(rank: usize, torsion: Vec<BigInt>) -> Result<Self, AbelianError> {
        for (i, d) in torsion.iter().enumerate() {
            if *d < BigInt::from(2) {
                return Err(AbelianError::BadInvariantFactor(d.clone()));
            }
            if i > 0 && !d.is_multiple_of(&torsion[i - 1]) {
                return Err(AbelianError::DivisibilityChain(torsion[i - 1].clone(), d.clone()));
            }
        }
        Ok(FGAbelianGroup { rank, torsion })
    }

    /// Normalizes an arbitrary direct sum of cyclic groups. Orders of 0 are
    /// rejected (use `rank` for free summands); orders of 1 vanish.
    pub fn from_cyclic_orders(rank: usize, orders: &[BigInt]) -> Result<Self, AbelianError> {
        if let Some(z) = orders.iter().find(|o| o.is_zero()) {
            return Err(AbelianError::BadInvariantFactor(z.clone()));
        }
        let diag: Vec<BigInt> = orders.iter().map(|o| o.abs()).collect();
        let n = diag.len();
        let m = IntegerMatrix::diagonal(n, n, &diag);
        let torsion = invariant_factors(&m)
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        Ok(FGAbelianGroup { rank, torsion })
    }

    /// Cokernel of an integer matrix `Z^cols → Z^rows`.
    pub fn cokernel(m: &IntegerMatrix) -> Self {
        let f = invariant_factors(m);
        let rank = m.rows() - f.len();
        FGAbelianGroup {
            rank,
            torsion: f.into_iter().filter(|d| !d.is_one()).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn is_cyclic(&self) -> bool {
        self.rank + self.torsion.len() <= 1
    }

    /// Number of canonical generators.
    pub fn generator_count(&self) -> usize {
        self.torsion.len() + self.rank
    }

    /// Order of the i-th canonical generator, `None` for free generators.
    pub fn generator_order(&self, i: usize) -> Option<&BigInt> {
        self.torsion.get(i)
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion_order())
    }

    pub fn free_part(&self) -> Self {
        Self::free(self.rank)
    }

    pub fn torsion_part(&self) -> Self {
        FGAbelianGroup {
            rank: 0,
            torsion: self.torsion.clone(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut orders = self.torsion.clone();
        orders.extend(other.torsion.iter().cloned());
        Self::from_cyclic_orders(self.rank + other.rank, &orders).expect("valid factors")
    }

    /// Number of invariant factors divisible by `p`; for `p = 2` this is the
    /// count of even factors.
    pub fn factors_divisible_by(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        self.torsion.iter().filter(|d| d.is_multiple_of(&p)).count()
    }

    /// Dimension of `self ⊗ Z/p` for prime `p`.
    pub fn mod_p_rank(&self, p: u64) -> usize {
        self.rank + self.factors_divisible_by(p)
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut orders = Vec::new();
        for a in &self.torsion {
            for b in &other.torsion {
                orders.push(a.gcd(b));
            }
        }
        for _ in 0..self.rank {
            orders.extend(other.torsion.iter().cloned());
        }
        for _ in 0..other.rank {
            orders.extend(self.torsion.iter().cloned());
        }
        Self::from_cyclic_orders(self.rank * other.rank, &orders).expect("valid factors")
    }

    /// `Tor(self, other)`.
    pub fn tor(&self, other: &Self) -> Self {
        let mut orders = Vec::new();
        for a in &self.torsion {
            for b in &other.torsion {
                orders.push(a.gcd(b));
            }
        }
        Self::from_cyclic_orders(0, &orders).expect("valid factors")
    }

    /// `Ext(self, Z)`, which is the torsion subgroup.
    pub fn ext_z(&self) -> Self {
        self.torsion_part()
    }

    /// `Ext(self, Z/n)`.
    pub fn ext_cyclic(&self, n: u64) -> Self {
        let n = BigInt::from(n);
        let orders: Vec<BigInt> = self.torsion.iter().map(|d| d.gcd(&n)).collect();
        Self::from_cyclic_orders(0, &orders).expect("valid factors")
    }

    /// Reduces a coordinate vector into canonical representatives.
    pub fn normalize_element(&self, x: &mut [BigInt]) {
        for (xi, d) in x.iter_mut().zip(&self.torsion) {
            *xi = xi.mod_floor(d);
        }
    }

    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        x.iter().enumerate().all(|(i, xi)| match self.torsion.get(i) {
            Some(d) => xi.is_multiple_of(d),
            None => xi.is_zero(),
        })
    }

    /// Compact notation such as `Z^2+Z2+Z4`, with `0` for the trivial group.
    pub fn notation(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        if self.is_zero() {
            s.push('0');
            return s;
        }
        let mut first = true;
        if self.rank > 0 {
            if self.rank == 1 {
                s.push('Z');
            } else {
                let _ = write!(s, "Z^{}", self.rank);
            }
            first = false;
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|e| *e == d).count();
            if !first {
                s.push('+');
            }
            first = false;
            let _ = write!(s, "Z{d}");
            if run > 1 {
                let _ = write!(s, "^{run}");
            }
            i += run;
        }
        s
    }

    /// Torsion factors as machine integers, when they fit.
    pub fn torsion_u64(&self) -> Option<Vec<u64>> {
        self.torsion.iter().map(|d| d.to_u64()).collect()
    }
}

impl fmt::Debug for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.notation())
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.notation())
    }
}

/// Parses the compact notation produced by [`FGAbelianGroup::notation`],
/// e.g. `0`, `Z`, `Z^2`, `Z2`, `Z2^2+Z4`, `Z+Z2`.
impl core::str::FromStr for FGAbelianGroup {
    type Err = AbelianError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut rank = 0usize;
        let mut orders = Vec::new();
        for part in s.split('+') {
            let part = part.trim();
            let bad = || AbelianError::Parse(String::from(part));
            let body = part.strip_prefix('Z').ok_or_else(bad)?;
            let (base, exp) = match body.split_once('^') {
                Some((b, e)) => (b, e.parse::<usize>().map_err(|_| bad())?),
                None => (body, 1),
            };
            if base.is_empty() {
                rank += exp;
            } else {
                let d: BigInt = base.parse().map_err(|_| bad())?;
                if d < BigInt::from(2) {
                    return Err(bad());
                }
                for _ in 0..exp {
                    orders.push(d.clone());
                }
            }
        }
        Self::from_cyclic_orders(rank, &orders)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn g(s: &str) -> FGAbelianGroup {
        s.parse().unwrap()
    }

    #[test]
    fn cyclic_orders_normalize_to_invariant_factors() {
        let orders = [BigInt::from(2), BigInt::from(3), BigInt::from(4)];
        let grp = FGAbelianGroup::from_cyclic_orders(1, &orders).unwrap();
        assert_eq!(grp.invariant_factors(), &[BigInt::from(2), BigInt::from(12)]);
        assert_eq!(grp.rank(), 1);
    }

    #[test]
    fn notation_round_trips() {
        for s in ["0", "Z", "Z^2", "Z2", "Z2^2", "Z^3+Z2+Z4", "Z6"] {
            assert_eq!(g(s).notation(), s);
        }
        assert_eq!(g("Z2+Z3"), g("Z6"));
    }

    #[test]
    fn rejects_bad_chain() {
        assert!(FGAbelianGroup::new(0, vec![BigInt::from(4), BigInt::from(6)]).is_err());
        assert!(FGAbelianGroup::new(0, vec![BigInt::from(1)]).is_err());
    }

    #[test]
    fn tensor_and_tor_small_cases() {
        assert_eq!(g("Z4").tensor(&g("Z6")), g("Z2"));
        assert_eq!(g("Z^2").tensor(&g("Z2")), g("Z2^2"));
        assert_eq!(g("Z2^2").tensor(&g("Z2")), g("Z2^2"));
        assert_eq!(g("Z4").tor(&g("Z2")), g("Z2"));
        assert_eq!(g("Z").tor(&g("Z2")), g("0"));
    }
}

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::lattice::{preimage_lattice, relation_matrix, Lattice};
use super::{AbelianError, FGAbelianGroup, IntegerMatrix};

/// A homomorphism between canonical groups. Column `j` of the matrix is the
/// image of the j-th domain generator in codomain coordinates, reduced.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupHom {
    domain: FGAbelianGroup,
    codomain: FGAbelianGroup,
    matrix: IntegerMatrix,
}

impl core::fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{} -> {} {:?}", self.domain, self.codomain, self.matrix)
    }
}

impl GroupHom {
    pub fn new(
        domain: FGAbelianGroup,
        codomain: FGAbelianGroup,
        matrix: IntegerMatrix,
    ) -> Result<Self, AbelianError> {
        if matrix.rows() != codomain.generator_count() || matrix.cols() != domain.generator_count() {
            return Err(AbelianError::ShapeMismatch {
                left: (codomain.generator_count(), domain.generator_count()),
                right: (matrix.rows(), matrix.cols()),
            });
        }
        let mut matrix = matrix;
        for j in 0..matrix.cols() {
            let mut col = matrix.column(j);
            if let Some(n) = domain.generator_order(j) {
                let scaled: Vec<BigInt> = col.iter().map(|x| x * n).collect();
                if !codomain.is_zero_element(&scaled) {
                    return Err(AbelianError::NotWellDefined { generator: j });
                }
            }
            codomain.normalize_element(&mut col);
            for (i, x) in col.into_iter().enumerate() {
                matrix[(i, j)] = x;
            }
        }
        Ok(GroupHom {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn zero(domain: FGAbelianGroup, codomain: FGAbelianGroup) -> Self {
        let matrix = IntegerMatrix::zeros(codomain.generator_count(), domain.generator_count());
        GroupHom {
            domain,
            codomain,
            matrix,
        }
    }

    pub fn identity(g: FGAbelianGroup) -> Self {
        let n = g.generator_count();
        GroupHom {
            domain: g.clone(),
            codomain: g,
            matrix: IntegerMatrix::identity(n),
        }
    }

    /// Multiplication by an integer on a group.
    pub fn scalar(g: FGAbelianGroup, k: i64) -> Self {
        let n = g.generator_count();
        let mut m = IntegerMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::from(k);
        }
        Self::new(g.clone(), g, m).expect("scalar maps are well defined")
    }

    pub fn domain(&self) -> &FGAbelianGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FGAbelianGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut y = self.matrix.mul_vec(x);
        self.codomain.normalize_element(&mut y);
        y
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &GroupHom) -> Result<GroupHom, AbelianError> {
        if first.codomain != self.domain {
            return Err(AbelianError::NotComposable);
        }
        let m = self.matrix.mul(&first.matrix)?;
        GroupHom::new(first.domain.clone(), self.codomain.clone(), m)
    }

    /// Kernel as a sublattice of the domain's coordinate space.
    pub(crate) fn kernel_lattice(&self) -> Lattice {
        preimage_lattice(&self.matrix, &relation_matrix(&self.codomain))
    }

    /// Image plus codomain relations, as generator columns.
    pub(crate) fn image_generators(&self) -> IntegerMatrix {
        self.matrix.hconcat(&relation_matrix(&self.codomain))
    }

    pub fn kernel(&self) -> FGAbelianGroup {
        self.kernel_lattice()
            .quotient_by(&relation_matrix(&self.domain))
            .expect("domain relations lie in the kernel")
    }

    pub fn image(&self) -> FGAbelianGroup {
        Lattice::spanned_by(&self.image_generators())
            .quotient_by(&relation_matrix(&self.codomain))
            .expect("relations lie in the image lattice")
    }

    pub fn cokernel(&self) -> FGAbelianGroup {
        FGAbelianGroup::cokernel(&self.image_generators())
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_zero()
    }
}

/// `ker(outgoing) / im(incoming)` at a group, with either map optional.
pub fn hom_homology(
    middle: &FGAbelianGroup,
    incoming: Option<&GroupHom>,
    outgoing: Option<&GroupHom>,
) -> Result<FGAbelianGroup, AbelianError> {
    if let Some(h) = incoming {
        if h.codomain() != middle {
            return Err(AbelianError::NotComposable);
        }
    }
    if let Some(h) = outgoing {
        if h.domain() != middle {
            return Err(AbelianError::NotComposable);
        }
    }
    if let (Some(a), Some(b)) = (incoming, outgoing) {
        if !b.after(a)?.is_zero() {
            return Err(AbelianError::NonzeroComposite);
        }
    }
    let kernel = match outgoing {
        Some(f) => f.kernel_lattice(),
        None => Lattice::spanned_by(&IntegerMatrix::identity(middle.generator_count())),
    };
    let sub = match incoming {
        Some(g) => g.image_generators(),
        None => relation_matrix(middle),
    };
    kernel.quotient_by(&sub)
}

/// Allowed values for the (codomain j, domain i) matrix entry.
fn entry_values(
    domain_order: Option<&BigInt>,
    codomain_order: Option<&BigInt>,
    free_bound: Option<u64>,
) -> Result<Vec<BigInt>, AbelianError> {
    match (domain_order, codomain_order) {
        (_, Some(b)) => {
            // x in Z/b with a*x = 0; for a free domain generator any x
            let step = match domain_order {
                Some(a) => b / a.gcd(b),
                None => BigInt::one(),
            };
            let mut out = Vec::new();
            let mut x = BigInt::zero();
            while &x < b {
                out.push(x.clone());
                x += &step;
            }
            Ok(out)
        }
        (Some(_), None) => Ok(vec![BigInt::zero()]),
        (None, None) => {
            let bound = free_bound.ok_or(AbelianError::UnboundedHomSearch)?;
            let mut out = vec![BigInt::zero()];
            for k in 1..=bound {
                out.push(BigInt::from(k));
                out.push(-BigInt::from(k));
            }
            Ok(out)
        }
    }
}

/// Number of homomorphisms `A -> B` within the bound, without listing them.
pub fn count_homs(
    a: &FGAbelianGroup,
    b: &FGAbelianGroup,
    free_bound: Option<u64>,
) -> Result<BigInt, AbelianError> {
    let mut total = BigInt::one();
    for i in 0..a.generator_count() {
        for j in 0..b.generator_count() {
            let n = entry_values(a.generator_order(i), b.generator_order(j), free_bound)?.len();
            total *= n;
        }
    }
    Ok(total)
}

/// Streams every homomorphism `A -> B` (complete within `free_bound` on
/// free-to-free entries) in a fixed odometer order.
pub struct HomIter {
    domain: FGAbelianGroup,
    codomain: FGAbelianGroup,
    values: Vec<Vec<BigInt>>,
    odometer: Vec<usize>,
    done: bool,
}

impl Iterator for HomIter {
    type Item = GroupHom;

    fn next(&mut self) -> Option<GroupHom> {
        if self.done {
            return None;
        }
        let rows = self.codomain.generator_count();
        let cols = self.domain.generator_count();
        let mut m = IntegerMatrix::zeros(rows, cols);
        for (slot, &k) in self.odometer.iter().enumerate() {
            m[(slot % rows, slot / rows)] = self.values[slot][k].clone();
        }
        // advance, last slot fastest
        self.done = true;
        for slot in (0..self.odometer.len()).rev() {
            self.odometer[slot] += 1;
            if self.odometer[slot] < self.values[slot].len() {
                self.done = false;
                break;
            }
            self.odometer[slot] = 0;
        }
        Some(GroupHom {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: m,
        })
    }
}

pub fn hom_iter(
    a: &FGAbelianGroup,
    b: &FGAbelianGroup,
    free_bound: Option<u64>,
) -> Result<HomIter, AbelianError> {
    let rows = b.generator_count();
    let cols = a.generator_count();
    let mut values = Vec::with_capacity(rows * cols);
    // slot = col * rows + row
    for i in 0..cols {
        for j in 0..rows {
            values.push(entry_values(a.generator_order(i), b.generator_order(j), free_bound)?);
        }
    }
    Ok(HomIter {
        domain: a.clone(),
        codomain: b.clone(),
        odometer: vec![0; values.len()],
        values,
        done: false,
    })
}

/// All homomorphisms `A -> B`; free-to-free entries range over
/// `-free_bound..=free_bound`, and omitting the bound is an error there.
pub fn enumerate_homs(
    a: &FGAbelianGroup,
    b: &FGAbelianGroup,
    free_bound: Option<u64>,
) -> Result<Vec<GroupHom>, AbelianError> {
    Ok(hom_iter(a, b, free_bound)?.collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FGAbelianGroup {
        s.parse().unwrap()
    }

    #[test]
    fn small_hom_counts() {
        assert_eq!(enumerate_homs(&g("Z2"), &g("Z2"), None).unwrap().len(), 2);
        assert_eq!(enumerate_homs(&g("Z4"), &g("Z2^2"), None).unwrap().len(), 4);
        let to_free = enumerate_homs(&g("Z2"), &g("Z"), None).unwrap();
        assert_eq!(to_free.len(), 1);
        assert!(to_free[0].is_zero());
    }

    #[test]
    fn free_to_free_needs_bound() {
        assert!(enumerate_homs(&g("Z"), &g("Z"), None).is_err());
        assert_eq!(enumerate_homs(&g("Z"), &g("Z"), Some(2)).unwrap().len(), 5);
    }

    #[test]
    fn ill_defined_map_rejected() {
        let m = IntegerMatrix::from_rows(&[[1]]);
        assert!(GroupHom::new(g("Z2"), g("Z"), m.clone()).is_err());
        assert!(GroupHom::new(g("Z2"), g("Z4"), m).is_err());
        let ok = IntegerMatrix::from_rows(&[[2]]);
        assert!(GroupHom::new(g("Z2"), g("Z4"), ok).is_ok());
    }

    #[test]
    fn kernel_image_cokernel_of_doubling() {
        let two = GroupHom::scalar(g("Z"), 2);
        assert!(two.kernel().is_zero());
        assert_eq!(two.cokernel(), g("Z2"));
        assert_eq!(two.image(), g("Z"));
        let z4 = GroupHom::scalar(g("Z4"), 2);
        assert_eq!(z4.kernel(), g("Z2"));
        assert_eq!(z4.image(), g("Z2"));
        assert_eq!(z4.cokernel(), g("Z2"));
    }

    #[test]
    fn homology_of_three_term_sequence() {
        // Z --2--> Z4 --1--> Z2 : ker = 2Z4, im = 2Z4
        let a = GroupHom::new(g("Z"), g("Z4"), IntegerMatrix::from_rows(&[[2]])).unwrap();
        let b = GroupHom::new(g("Z4"), g("Z2"), IntegerMatrix::from_rows(&[[1]])).unwrap();
        assert!(hom_homology(&g("Z4"), Some(&a), Some(&b)).unwrap().is_zero());
        assert_eq!(hom_homology(&g("Z4"), None, Some(&b)).unwrap(), g("Z2"));
        assert_eq!(hom_homology(&g("Z4"), Some(&a), None).unwrap(), g("Z2"));
    }
}

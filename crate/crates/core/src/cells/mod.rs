//! Cellular chain complexes: spheres, projective spaces, Grassmannians via
//! Schubert cells, Stiefel manifolds and products.

mod schubert;
mod stiefel;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::abelian::{AbelianError, IntegerMatrix};

pub use schubert::{
    grassmann_complex, oriented_double_cover, oriented_grassmann_complex, OrientationCharacter,
    SchubertModel, SchubertSymbol,
};
pub use stiefel::stiefel_complex;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CellError {
    #[error("dimension must be at least 1, got {0}")]
    BadDimension(usize),
    #[error("need 1 <= k < n, got k={k}, n={n}")]
    BadPlaneDimension { k: usize, n: usize },
    #[error("boundary in degree {degree} has shape {found:?}, expected {expected:?}")]
    BoundaryShape {
        degree: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("boundary squares to a nonzero map at degree {0}")]
    BoundarySquare(usize),
    #[error("degree {degree} has {ranks} cells but {labels} labels")]
    LabelCount { degree: usize, ranks: usize, labels: usize },
    #[error("orientation character is trivial, the double cover would be disconnected")]
    TrivialCharacter,
    #[error("orientation character does not fit the base complex")]
    CharacterMismatch,
    #[error(transparent)]
    Matrix(#[from] AbelianError),
}

/// Free chain complex `C_top -> … -> C_0` with integer boundary matrices.
///
/// `boundary(n)` maps `C_n -> C_{n-1}` and has shape `ranks[n-1] x ranks[n]`;
/// `boundary(0)` is the empty map to the zero module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<IntegerMatrix>,
    labels: Vec<Vec<String>>,
}

impl ChainComplex {
    /// Validates shapes, label counts and `∂∂ = 0`.
    pub fn new(
        ranks: Vec<usize>,
        mut boundaries: Vec<IntegerMatrix>,
        labels: Vec<Vec<String>>,
    ) -> Result<Self, CellError> {
        // accept boundaries either with or without the degree-0 map
        if boundaries.len() + 1 == ranks.len() {
            boundaries.insert(0, IntegerMatrix::zeros(0, ranks.first().copied().unwrap_or(0)));
        }
        if boundaries.len() != ranks.len() {
            return Err(CellError::BoundaryShape {
                degree: boundaries.len(),
                expected: (ranks.len(), 0),
                found: (boundaries.len(), 0),
            });
        }
        for n in 0..ranks.len() {
            let expected = (if n == 0 { 0 } else { ranks[n - 1] }, ranks[n]);
            let d = &boundaries[n];
            if (d.rows(), d.cols()) != expected {
                return Err(CellError::BoundaryShape {
                    degree: n,
                    expected,
                    found: (d.rows(), d.cols()),
                });
            }
        }
        if labels.len() != ranks.len() {
            return Err(CellError::LabelCount {
                degree: labels.len(),
                ranks: ranks.len(),
                labels: labels.len(),
            });
        }
        for (n, l) in labels.iter().enumerate() {
            if l.len() != ranks[n] {
                return Err(CellError::LabelCount {
                    degree: n,
                    ranks: ranks[n],
                    labels: l.len(),
                });
            }
        }
        for n in 2..ranks.len() {
            if !boundaries[n - 1].mul(&boundaries[n])?.is_zero() {
                return Err(CellError::BoundarySquare(n));
            }
        }
        Ok(ChainComplex {
            ranks,
            boundaries,
            labels,
        })
    }

    /// Top degree; the complex of a point has top degree 0.
    pub fn top_dim(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    pub fn boundary(&self, n: usize) -> &IntegerMatrix {
        &self.boundaries[n]
    }

    /// `∂_{n+1}`, or the empty map above the top degree.
    pub fn incoming(&self, n: usize) -> IntegerMatrix {
        match self.boundaries.get(n + 1) {
            Some(d) => d.clone(),
            None => IntegerMatrix::zeros(self.rank(n), 0),
        }
    }

    pub fn labels(&self, n: usize) -> &[String] {
        &self.labels[n]
    }

    pub fn all_labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    /// Boundary matrices from degree 1 up.
    pub fn positive_boundaries(&self) -> &[IntegerMatrix] {
        &self.boundaries[1.min(self.boundaries.len())..]
    }

    /// Re-checks `∂∂ = 0`; construction already guarantees it.
    pub fn boundary_squares_to_zero(&self) -> bool {
        (2..self.ranks.len()).all(|n| {
            self.boundaries[n - 1]
                .mul(&self.boundaries[n])
                .map(|m| m.is_zero())
                .unwrap_or(false)
        })
    }

    /// Entries reduced into `0..modulus`.
    pub fn reduce_mod(&self, modulus: u64) -> ChainComplex {
        let m = BigInt::from(modulus);
        ChainComplex {
            ranks: self.ranks.clone(),
            boundaries: self.boundaries.iter().map(|d| d.reduce_mod(&m)).collect(),
            labels: self.labels.clone(),
        }
    }
}

fn zero_boundaries(ranks: &[usize]) -> Vec<IntegerMatrix> {
    (0..ranks.len())
        .map(|n| IntegerMatrix::zeros(if n == 0 { 0 } else { ranks[n - 1] }, ranks[n]))
        .collect()
}

pub fn point_complex() -> ChainComplex {
    ChainComplex::new(vec![1], zero_boundaries(&[1]), vec![vec![String::from("pt")]])
        .expect("valid point complex")
}

/// One 0-cell and one n-cell.
pub fn sphere_complex(n: usize) -> Result<ChainComplex, CellError> {
    if n == 0 {
        return Err(CellError::BadDimension(n));
    }
    let mut ranks = vec![0; n + 1];
    ranks[0] = 1;
    ranks[n] = 1;
    let labels = (0..=n)
        .map(|d| if ranks[d] == 1 { vec![format!("e{d}")] } else { Vec::new() })
        .collect();
    ChainComplex::new(ranks.clone(), zero_boundaries(&ranks), labels)
}

/// One cell per degree, `∂e_k = 2e_{k-1}` for even `k` and 0 for odd `k`.
pub fn rp_complex(n: usize) -> Result<ChainComplex, CellError> {
    if n == 0 {
        return Err(CellError::BadDimension(n));
    }
    let ranks = vec![1; n + 1];
    let mut boundaries = zero_boundaries(&ranks);
    for k in (2..=n).step_by(2) {
        boundaries[k][(0, 0)] = BigInt::from(2);
    }
    let labels = (0..=n).map(|d| vec![format!("e{d}")]).collect();
    ChainComplex::new(ranks, boundaries, labels)
}

/// Tensor product complex with `∂(a⊗b) = ∂a⊗b + (-1)^|a| a⊗∂b`.
/// Cells in degree n are ordered by the degree of the left factor, then
/// left index, then right index.
pub fn product_complex(a: &ChainComplex, b: &ChainComplex) -> ChainComplex {
    let top = a.top_dim() + b.top_dim();
    // (p, i, j) -> position within degree p+q
    let mut index: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); top + 1];
    let mut labels: Vec<Vec<String>> = vec![Vec::new(); top + 1];
    for n in 0..=top {
        for p in 0..=n.min(a.top_dim()) {
            let q = n - p;
            if q > b.top_dim() {
                continue;
            }
            for i in 0..a.rank(p) {
                for j in 0..b.rank(q) {
                    index[n].push((p, i, j));
                    labels[n].push(format!("{}x{}", a.labels(p)[i], b.labels(q)[j]));
                }
            }
        }
    }
    let ranks: Vec<usize> = index.iter().map(Vec::len).collect();
    let mut boundaries = zero_boundaries(&ranks);
    for n in 1..=top {
        let position = |p: usize, i: usize, j: usize| {
            index[n - 1]
                .iter()
                .position(|&c| c == (p, i, j))
                .expect("boundary cell exists")
        };
        for (col, &(p, i, j)) in index[n].iter().enumerate() {
            let q = n - p;
            if p > 0 {
                let da = a.boundary(p);
                for r in 0..da.rows() {
                    let c = &da[(r, i)];
                    if *c != BigInt::from(0) {
                        let row = position(p - 1, r, j);
                        boundaries[n][(row, col)] += c;
                    }
                }
            }
            if q > 0 {
                let db = b.boundary(q);
                let sign = if p % 2 == 0 { 1 } else { -1 };
                for r in 0..db.rows() {
                    let c = &db[(r, j)];
                    if *c != BigInt::from(0) {
                        let row = position(p, i, r);
                        boundaries[n][(row, col)] += c * sign;
                    }
                }
            }
        }
    }
    ChainComplex::new(ranks, boundaries, labels).expect("Leibniz rule preserves dd = 0")
}

/// `SO(3)` modelled as `RP^3`.
pub fn so3_complex() -> ChainComplex {
    rp_complex(3).expect("n = 3 is valid")
}

/// `SO(4)` modelled as `S^3 x RP^3`.
pub fn so4_complex() -> ChainComplex {
    product_complex(&sphere_complex(3).expect("n = 3 is valid"), &so3_complex())
}

/// Alternating sum of cell counts.
pub fn euler_characteristic(c: &ChainComplex) -> i64 {
    c.ranks()
        .iter()
        .enumerate()
        .map(|(n, &r)| if n % 2 == 0 { r as i64 } else { -(r as i64) })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_input() {
        assert!(sphere_complex(0).is_err());
        assert!(rp_complex(0).is_err());
        let bad = ChainComplex::new(
            vec![1, 1, 1],
            vec![IntegerMatrix::from_rows(&[[1]]), IntegerMatrix::from_rows(&[[1]])],
            vec![vec![String::new()]; 3],
        );
        assert_eq!(bad, Err(CellError::BoundarySquare(2)));
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(euler_characteristic(&sphere_complex(4).unwrap()), 2);
        assert_eq!(euler_characteristic(&so3_complex()), 0);
        assert_eq!(euler_characteristic(&so4_complex()), 0);
    }

    #[test]
    fn product_with_point_is_identity() {
        let x = rp_complex(4).unwrap();
        let p = product_complex(&x, &point_complex());
        assert_eq!(p.ranks(), x.ranks());
        for n in 0..=x.top_dim() {
            assert_eq!(p.boundary(n), x.boundary(n));
        }
    }
}

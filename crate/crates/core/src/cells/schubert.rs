use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{zero_boundaries, CellError, ChainComplex};
use crate::abelian::IntegerMatrix;

/// Schubert cell of `G_k(R^n)`: a weakly increasing sequence
/// `a_1 <= … <= a_k` with entries in `0..=n-k`; its dimension is the sum.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SchubertSymbol {
    k: usize,
    n: usize,
    jumps: Vec<usize>,
}

impl SchubertSymbol {
    pub fn new(k: usize, n: usize, jumps: Vec<usize>) -> Result<Self, CellError> {
        let ok = jumps.len() == k
            && jumps.windows(2).all(|w| w[0] <= w[1])
            && jumps.iter().all(|&a| a <= n - k);
        if !ok || k == 0 || k >= n {
            return Err(CellError::BadPlaneDimension { k, n });
        }
        Ok(SchubertSymbol { k, n, jumps })
    }

    pub fn jumps(&self) -> &[usize] {
        &self.jumps
    }

    pub fn dimension(&self) -> usize {
        self.jumps.iter().sum()
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self.jumps.iter().map(|a| format!("{a}")).collect();
        format!("({})", parts.join(","))
    }

    /// Every symbol for `G_k(R^n)`, lexicographic.
    pub fn all(k: usize, n: usize) -> Vec<SchubertSymbol> {
        fn rec(k: usize, max: usize, lo: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if prefix.len() == k {
                out.push(prefix.clone());
                return;
            }
            for a in lo..=max {
                prefix.push(a);
                rec(k, max, a, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(k, n - k, 0, &mut Vec::new(), &mut out);
        out.into_iter().map(|jumps| SchubertSymbol { k, n, jumps }).collect()
    }

    /// Codimension-one faces with their incidence data `(face, ε, δ)`.
    ///
    /// Removing a box from row `j` (1-based) is allowed when the sequence
    /// stays weakly increasing. On the oriented double cover the face
    /// appears in the same sheet with coefficient `ε` and in the other
    /// sheet with coefficient `ε·δ`, where `ε = (-1)^(a_1+…+a_{j-1})` and
    /// `δ = (-1)^(a_j + k - j)`.
    fn faces(&self) -> Vec<(SchubertSymbol, i64, i64)> {
        let mut out = Vec::new();
        for j in 0..self.k {
            let lo = if j > 0 { self.jumps[j - 1] } else { 0 };
            if self.jumps[j] == 0 || self.jumps[j] - 1 < lo {
                continue;
            }
            let mut face = self.jumps.clone();
            face[j] -= 1;
            let prefix: usize = self.jumps[..j].iter().sum();
            let eps = if prefix.is_multiple_of(2) { 1 } else { -1 };
            let delta = if (self.jumps[j] + self.k - (j + 1)).is_multiple_of(2) { 1 } else { -1 };
            out.push((
                SchubertSymbol {
                    k: self.k,
                    n: self.n,
                    jumps: face,
                },
                eps,
                delta,
            ));
        }
        out
    }
}

/// How boundaries lift to the two sheets of the orientation double cover.
///
/// For each degree, `same[n]` and `cross[n]` are the boundary components
/// landing in the same and in the opposite sheet; the base boundary is their
/// sum. A 1-cell carries the nontrivial element exactly when some lift of it
/// crosses sheets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientationCharacter {
    same: Vec<IntegerMatrix>,
    cross: Vec<IntegerMatrix>,
}

impl OrientationCharacter {
    pub fn new(same: Vec<IntegerMatrix>, cross: Vec<IntegerMatrix>) -> Self {
        OrientationCharacter { same, cross }
    }

    /// Value on each 1-cell: `true` for the nontrivial element.
    pub fn on_one_cells(&self) -> Vec<bool> {
        match self.cross.get(1) {
            Some(c) => (0..c.cols()).map(|j| (0..c.rows()).any(|i| !c[(i, j)].is_zero())).collect(),
            None => Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        !self.on_one_cells().into_iter().any(|v| v)
    }

    /// Same-sheet plus cross-sheet must reproduce the base boundaries.
    fn fits(&self, base: &ChainComplex) -> bool {
        self.same.len() == base.ranks().len()
            && self.cross.len() == base.ranks().len()
            && (0..base.ranks().len()).all(|n| {
                let (s, c, d) = (&self.same[n], &self.cross[n], base.boundary(n));
                s.rows() == d.rows()
                    && s.cols() == d.cols()
                    && c.rows() == d.rows()
                    && c.cols() == d.cols()
                    && s.entries().iter().zip(c.entries()).zip(d.entries()).all(|((a, b), e)| a + b == *e)
            })
    }
}

/// Cell structure of `G_k(R^n)` together with its orientation character.
#[derive(Clone, Debug)]
pub struct SchubertModel {
    k: usize,
    n: usize,
    cells: Vec<Vec<SchubertSymbol>>,
    character: OrientationCharacter,
    complex: ChainComplex,
}

impl SchubertModel {
    pub fn new(k: usize, n: usize) -> Result<Self, CellError> {
        if k == 0 || k >= n {
            return Err(CellError::BadPlaneDimension { k, n });
        }
        let top = k * (n - k);
        let mut cells: Vec<Vec<SchubertSymbol>> = vec![Vec::new(); top + 1];
        for s in SchubertSymbol::all(k, n) {
            let d = s.dimension();
            cells[d].push(s);
        }
        let ranks: Vec<usize> = cells.iter().map(Vec::len).collect();
        let mut same = zero_boundaries(&ranks);
        let mut cross = zero_boundaries(&ranks);
        for d in 1..=top {
            for (col, cell) in cells[d].iter().enumerate() {
                for (face, eps, delta) in cell.faces() {
                    let row = cells[d - 1]
                        .iter()
                        .position(|c| *c == face)
                        .expect("face is a Schubert symbol");
                    same[d][(row, col)] += BigInt::from(eps);
                    cross[d][(row, col)] += BigInt::from(eps * delta);
                }
            }
        }
        let boundaries: Vec<IntegerMatrix> = same
            .iter()
            .zip(&cross)
            .map(|(s, c)| {
                let entries = s.entries().iter().zip(c.entries()).map(|(a, b)| a + b).collect();
                IntegerMatrix::from_entries(s.rows(), s.cols(), entries).expect("same shape")
            })
            .collect();
        let labels = cells
            .iter()
            .map(|cs| cs.iter().map(SchubertSymbol::label).collect())
            .collect();
        let complex = ChainComplex::new(ranks, boundaries, labels)?;
        Ok(SchubertModel {
            k,
            n,
            cells,
            character: OrientationCharacter::new(same, cross),
            complex,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cells(&self, d: usize) -> &[SchubertSymbol] {
        &self.cells[d]
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn orientation_character(&self) -> &OrientationCharacter {
        &self.character
    }
}

/// Unoriented Grassmannian `G_k(R^n)`.
pub fn grassmann_complex(k: usize, n: usize) -> Result<ChainComplex, CellError> {
    Ok(SchubertModel::new(k, n)?.complex)
}

/// Oriented Grassmannian `G_k^+(R^n)`.
pub fn oriented_grassmann_complex(k: usize, n: usize) -> Result<ChainComplex, CellError> {
    let model = SchubertModel::new(k, n)?;
    oriented_double_cover(&model.complex, &model.character)
}

/// Two cells `(σ,+)`, `(σ,-)` per base cell `σ`, at positions `2i` and `2i+1`.
pub fn oriented_double_cover(base: &ChainComplex, w1: &OrientationCharacter) -> Result<ChainComplex, CellError> {
    if !w1.fits(base) {
        return Err(CellError::CharacterMismatch);
    }
    if w1.is_trivial() {
        return Err(CellError::TrivialCharacter);
    }
    let ranks: Vec<usize> = base.ranks().iter().map(|r| 2 * r).collect();
    let mut boundaries = zero_boundaries(&ranks);
    for d in 1..ranks.len() {
        let (same, cross) = (&w1.same[d], &w1.cross[d]);
        for j in 0..same.cols() {
            for i in 0..same.rows() {
                for sheet in 0..2 {
                    let col = 2 * j + sheet;
                    boundaries[d][(2 * i + sheet, col)] += &same[(i, j)];
                    boundaries[d][(2 * i + 1 - sheet, col)] += &cross[(i, j)];
                }
            }
        }
    }
    let labels = base
        .all_labels()
        .iter()
        .map(|ls| {
            ls.iter()
                .flat_map(|l| [format!("{l}+"), format!("{l}-")])
                .collect()
        })
        .collect();
    ChainComplex::new(ranks, boundaries, labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::rp_complex;

    #[test]
    fn symbol_validation() {
        assert!(SchubertSymbol::new(2, 4, vec![1, 2]).is_ok());
        assert!(SchubertSymbol::new(2, 4, vec![2, 1]).is_err());
        assert!(SchubertSymbol::new(2, 4, vec![0, 3]).is_err());
    }

    #[test]
    fn projective_space_case() {
        for n in 2..7 {
            let g = grassmann_complex(1, n).unwrap();
            let rp = rp_complex(n - 1).unwrap();
            assert_eq!(g.ranks(), rp.ranks());
            for d in 0..n {
                assert_eq!(g.boundary(d), rp.boundary(d));
            }
        }
    }

    #[test]
    fn incidences_are_even() {
        let g = grassmann_complex(3, 7).unwrap();
        for d in 0..=g.top_dim() {
            assert!(g
                .boundary(d)
                .entries()
                .iter()
                .all(|x| x % BigInt::from(2) == BigInt::zero()));
        }
    }

    #[test]
    fn trivial_character_rejected() {
        let base = rp_complex(2).unwrap();
        let ranks = base.ranks().to_vec();
        let same = (0..3).map(|d| base.boundary(d).clone()).collect();
        let cross = zero_boundaries(&ranks);
        let w1 = OrientationCharacter::new(same, cross);
        assert!(w1.is_trivial());
        assert_eq!(oriented_double_cover(&base, &w1), Err(CellError::TrivialCharacter));
    }

    #[test]
    fn grassmann_character_is_nontrivial() {
        let m = SchubertModel::new(3, 7).unwrap();
        assert_eq!(m.orientation_character().on_one_cells(), vec![true]);
    }
}

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{zero_boundaries, CellError, ChainComplex};

/// Cells of `V_k(R^n)` are products `e^{i_1}…e^{i_m}` over subsets of
/// `{n-k, …, n-1}`, in degree `i_1 + … + i_m`. A single index has
/// `∂e^i = 2e^{i-1}` for even `i` and 0 for odd `i`; the boundary of a
/// product follows the Leibniz rule, dropping terms that repeat an index or
/// fall below `n-k`.
pub fn stiefel_complex(k: usize, n: usize) -> Result<ChainComplex, CellError> {
    if k == 0 || k >= n {
        return Err(CellError::BadPlaneDimension { k, n });
    }
    let low = n - k;
    let indices: Vec<usize> = (low..n).collect();
    let top: usize = indices.iter().sum();
    let mut cells: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top + 1];
    for mask in 0u32..(1 << k) {
        let subset: Vec<usize> = (0..k).filter(|b| mask & (1 << b) != 0).map(|b| indices[b]).collect();
        cells[subset.iter().sum::<usize>()].push(subset);
    }
    for cs in &mut cells {
        cs.sort();
    }
    let ranks: Vec<usize> = cells.iter().map(Vec::len).collect();
    let mut boundaries = zero_boundaries(&ranks);
    for d in 1..=top {
        for (col, cell) in cells[d].iter().enumerate() {
            let mut prefix = 0usize;
            for (j, &i) in cell.iter().enumerate() {
                let odd_prefix = prefix % 2 == 1;
                prefix += i;
                if i % 2 == 1 || i == low || (j > 0 && cell[j - 1] == i - 1) {
                    continue;
                }
                let mut face = cell.clone();
                face[j] = i - 1;
                let row = cells[d - 1]
                    .iter()
                    .position(|c| *c == face)
                    .expect("face is a cell");
                let coeff = if odd_prefix { -2 } else { 2 };
                boundaries[d][(row, col)] += BigInt::from(coeff);
            }
        }
    }
    let labels = cells
        .iter()
        .map(|cs| cs.iter().map(|c| label(c)).collect())
        .collect();
    ChainComplex::new(ranks, boundaries, labels)
}

fn label(subset: &[usize]) -> String {
    if subset.is_empty() {
        return String::from("e[]");
    }
    let parts: Vec<String> = subset.iter().map(|i| format!("{i}")).collect();
    format!("e[{}]", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::euler_characteristic;

    #[test]
    fn sphere_case() {
        let v = stiefel_complex(1, 7).unwrap();
        assert_eq!(v.ranks(), &[1, 0, 0, 0, 0, 0, 1]);
        assert!(v.boundary(6).is_zero());
    }

    #[test]
    fn top_degree_and_cell_count() {
        let v = stiefel_complex(3, 7).unwrap();
        assert_eq!(v.top_dim(), 4 + 5 + 6);
        assert_eq!(v.ranks().iter().sum::<usize>(), 8);
        assert_eq!(euler_characteristic(&v), 0);
    }

    #[test]
    fn bad_arguments() {
        assert!(stiefel_complex(0, 3).is_err());
        assert!(stiefel_complex(3, 3).is_err());
    }
}

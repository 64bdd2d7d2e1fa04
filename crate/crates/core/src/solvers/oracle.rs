//! Brute-force reference solver: sweeps every column mask.
//!
//! Distinctness is checked by hashing the restricted rows, independently of
//! the sort-based check the solvers use.

use std::collections::HashSet;

use crate::error::{DvError, Result};
use crate::exec::{self, Execution};
use crate::matrix::{Matrix, Solution, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_rows: usize,
    pub max_cols: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_rows: 10,
            max_cols: 16,
        }
    }
}

fn mask_distinguishes(m: &Matrix, mask: u64) -> bool {
    let cols: Vec<usize> = (0..m.d()).filter(|&c| mask >> c & 1 == 1).collect();
    let mut seen: HashSet<Vec<Symbol>> = HashSet::with_capacity(m.n());
    (0..m.n()).all(|i| seen.insert(cols.iter().map(|&c| m.entry0(i, c)).collect()))
}

fn mask_columns(mask: u64) -> Vec<usize> {
    (0..64).filter(|&c| mask >> c & 1 == 1).map(|c| c + 1).collect()
}

pub fn minimum_solution_oracle(m: &Matrix) -> Result<Solution> {
    minimum_solution_oracle_with(m, OracleLimits::default(), Execution::default())
}

/// Exhaustive minimum distinguishing set; ties broken lexicographically.
pub fn minimum_solution_oracle_with(m: &Matrix, limits: OracleLimits, exec: Execution) -> Result<Solution> {
    if m.n() > limits.max_rows || m.d() > limits.max_cols || m.d() >= 40 {
        return Err(DvError::Refused(format!(
            "{}x{} matrix exceeds oracle limits of {} rows and {} columns",
            m.n(),
            m.d(),
            limits.max_rows,
            limits.max_cols
        )));
    }
    let total = 1usize << m.d();
    let valid = exec::map_indexed(exec, total, |mask| mask_distinguishes(m, mask as u64));
    let best = (0..total as u64)
        .filter(|&mask| valid[mask as usize])
        .map(|mask| (mask.count_ones(), mask_columns(mask)))
        .min()
        .expect("the full column set distinguishes distinct rows");
    Solution::new(best.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn known_minima() {
        let two = Matrix::new(vec![vec![0, 1, 0], vec![1, 1, 1]]).unwrap();
        assert_eq!(minimum_solution_oracle(&two).unwrap().columns(), &[1]);
        assert_eq!(minimum_solution_oracle(&fixtures::sunflower_7x10()).unwrap().len(), 6);
        assert_eq!(minimum_solution_oracle(&fixtures::matching_10x11()).unwrap().len(), 5);
        assert!(minimum_solution_oracle(&Matrix::new(vec![vec![]]).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn refuses_large_inputs() {
        let wide = Matrix::new(vec![vec![0; 17], vec![1; 17]]).unwrap();
        assert!(matches!(minimum_solution_oracle(&wide), Err(DvError::Refused(_))));
        let limits = OracleLimits {
            max_rows: 2,
            max_cols: 17,
        };
        assert_eq!(minimum_solution_oracle_with(&wide, limits, Execution::Sequential).unwrap().len(), 1);
    }

    #[test]
    fn sequential_matches_parallel() {
        let m = fixtures::hitting_set_matrix_6x6();
        let a = minimum_solution_oracle_with(&m, OracleLimits::default(), Execution::Sequential).unwrap();
        let b = minimum_solution_oracle_with(&m, OracleLimits::default(), Execution::Parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.columns(), &[1, 3]);
    }
}

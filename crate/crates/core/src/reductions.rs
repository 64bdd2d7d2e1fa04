//! Answer-preserving data reduction rules.
//!
//! Every rule returns a fresh matrix together with the original (1-based)
//! indices of the columns it deleted, so reports can refer to the input.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::bitset::BitSet;
use crate::error::{DvError, Result};
use crate::matrix::{Instance, Matrix, Symbol};

/// What a rule did to its input.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RuleReport {
    /// Columns (1-based, input numbering) that were complemented.
    pub complemented: Vec<usize>,
    /// Columns (1-based, input numbering) that were deleted.
    pub deleted: Vec<usize>,
    /// `kept[j]` is the input column that became output column `j + 1`.
    pub kept: Vec<usize>,
}

fn keep_columns(m: &Matrix, keep: &[usize]) -> Matrix {
    Matrix::from_grid(m.select_columns0(keep)).expect("deleting the reported columns keeps rows distinct")
}

fn report_for(d: usize, keep: &[usize], complemented: Vec<usize>) -> RuleReport {
    let kept_set: BTreeSet<usize> = keep.iter().copied().collect();
    RuleReport {
        complemented,
        deleted: (0..d).filter(|c| !kept_set.contains(c)).map(|c| c + 1).collect(),
        kept: keep.iter().map(|c| c + 1).collect(),
    }
}

/// Makes some row the null vector and deletes repeated columns, keeping the
/// lowest index. The pivot is the first all-zero row if there is one,
/// otherwise row 1, whose 1-columns get complemented. Yields
/// `d' <= min(d, 2^n)`.
pub fn preprocess_binary(m: &Matrix) -> Result<(Matrix, RuleReport)> {
    let bits = m.require_bits()?;
    let (n, d) = (m.n(), m.d());
    let pivot = bits.iter().position(BitSet::is_empty).unwrap_or(0);
    let complemented: Vec<usize> = bits[pivot].to_vec();
    let flip: BitSet = BitSet::from_indices(d, complemented.iter().copied());
    let column = |j: usize| -> Vec<Symbol> {
        let f = flip.contains(j) as Symbol;
        (0..n).map(|i| m.entry0(i, j) ^ f).collect()
    };
    let mut first_seen: BTreeMap<Vec<Symbol>, usize> = BTreeMap::new();
    let mut keep = Vec::new();
    for j in 0..d {
        if let std::collections::btree_map::Entry::Vacant(e) = first_seen.entry(column(j)) {
            e.insert(j);
            keep.push(j);
        }
    }
    let rows = (0..n)
        .map(|i| keep.iter().map(|&j| m.entry0(i, j) ^ flip.contains(j) as Symbol).collect())
        .collect();
    let out = Matrix::new(rows)?;
    let report = report_for(d, &keep, complemented.iter().map(|c| c + 1).collect());
    Ok((out, report))
}

/// Whether column `j` (0-based) exactly distinguishes a single row from all
/// the others, which agree among themselves.
fn exactly_distinguishes_one_row(m: &Matrix, j: usize) -> bool {
    let n = m.n();
    if n == 1 {
        return true;
    }
    let mut counts: HashMap<Symbol, usize> = HashMap::new();
    for i in 0..n {
        *counts.entry(m.entry0(i, j)).or_insert(0) += 1;
    }
    counts.len() == 2 && counts.values().any(|&c| c == 1)
}

fn is_inessential0(m: &Matrix, j: usize) -> bool {
    if !exactly_distinguishes_one_row(m, j) {
        return false;
    }
    let mut rest = BitSet::full(m.d());
    rest.remove(j);
    m.distinguishes0(&rest)
}

/// Columns (1-based) that single out one row from all the others and whose
/// removal keeps every row distinct.
pub fn find_inessential_columns(m: &Matrix) -> BTreeSet<usize> {
    (0..m.d()).filter(|&j| is_inessential0(m, j)).map(|j| j + 1).collect()
}

/// Deletes inessential columns one at a time, smallest index first,
/// re-evaluating after every deletion until none is left. Binary input only.
pub fn apply_rule_inessential(m: &Matrix) -> Result<(Matrix, RuleReport)> {
    m.require_bits()?;
    let mut current = m.clone();
    let mut keep: Vec<usize> = (0..m.d()).collect();
    while let Some(j) = (0..current.d()).find(|&j| is_inessential0(&current, j)) {
        keep.remove(j);
        let local: Vec<usize> = (0..current.d()).filter(|&c| c != j).collect();
        current = keep_columns(&current, &local);
    }
    Ok((current, report_for(m.d(), &keep, Vec::new())))
}

/// Column `a` partitions the rows at least as finely as column `b`.
fn refines(a: &[Symbol], b: &[Symbol]) -> bool {
    let mut map: HashMap<Symbol, Symbol> = HashMap::new();
    a.iter().zip(b).all(|(&x, &y)| *map.entry(x).or_insert(y) == y)
}

/// Deletes every column whose row partition is refined by another column's.
/// Among columns with equal partitions the smallest index survives. The
/// surviving columns are pairwise incomparable.
pub fn dominance_reduce(m: &Matrix) -> (Matrix, RuleReport) {
    let cols: Vec<Vec<Symbol>> = (0..m.d()).map(|j| m.column0(j)).collect();
    let mut survivors: Vec<usize> = Vec::new();
    for j in 0..m.d() {
        if survivors.iter().any(|&s| refines(&cols[s], &cols[j])) {
            continue;
        }
        survivors.retain(|&s| !refines(&cols[j], &cols[s]));
        survivors.push(j);
    }
    survivors.sort_unstable();
    (keep_columns(m, &survivors), report_for(m.d(), &survivors, Vec::new()))
}

/// `ceil(log_|Σ| n)`: fewer retained columns cannot separate `n` rows.
pub fn budget_lower_bound(m: &Matrix) -> Result<usize> {
    let n = m.n() as u128;
    if n <= 1 {
        return Ok(0);
    }
    let sigma = m.sigma_size() as u128;
    if sigma < 2 {
        return Err(DvError::domain("a single-symbol alphabet cannot separate rows"));
    }
    let (mut e, mut reach) = (0usize, 1u128);
    while reach < n {
        reach = reach.saturating_mul(sigma);
        e += 1;
    }
    Ok(e)
}

/// `base^exp`, saturating at `u128::MAX`.
pub(crate) fn saturating_pow(base: u128, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
        if acc == u128::MAX {
            break;
        }
    }
    acc
}

/// Result of a kernelization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kernel {
    Reduced(Instance),
    /// The input is a no-instance.
    DefiniteNo,
}

impl Kernel {
    /// The reduced instance, or the canonical no-instance (two rows that
    /// differ in one column, budget 0).
    pub fn into_instance(self) -> Instance {
        match self {
            Kernel::Reduced(inst) => inst,
            Kernel::DefiniteNo => trivial_no_instance(),
        }
    }

    pub fn is_definite_no(&self) -> bool {
        matches!(self, Kernel::DefiniteNo)
    }
}

pub fn trivial_no_instance() -> Instance {
    Instance::new(Matrix::new(vec![vec![0], vec![1]]).expect("distinct"), 0)
}

/// Kernel for the combined parameter (alphabet size, k): reject when
/// `n > |Σ|^k`, otherwise apply [`dominance_reduce`].
pub fn kernelize_sigma_k(inst: &Instance) -> Kernel {
    let m = &inst.matrix;
    let sigma = m.sigma_size() as u128;
    if m.n() as u128 > saturating_pow(sigma, inst.k()) {
        return Kernel::DefiniteNo;
    }
    let (reduced, _) = dominance_reduce(m);
    Kernel::Reduced(Instance::new(reduced, inst.k()))
}

/// Whether `d` columns respect the antichain bound `d <= |Σ|^n / |Σ|!`.
pub fn within_antichain_bound(d: usize, n: usize, sigma: usize) -> bool {
    let factorial = (1..=sigma as u128).fold(1u128, |acc, x| acc.saturating_mul(x));
    (d as u128).saturating_mul(factorial) <= saturating_pow(sigma as u128, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn mat(rows: &[&[u32]]) -> Matrix {
        Matrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn preprocess_fixed_point() {
        // the null row is the pivot; repeated core and petal columns go
        let (out, rep) = preprocess_binary(&fixtures::sunflower_7x10()).unwrap();
        assert!(rep.complemented.is_empty());
        assert_eq!(rep.deleted, vec![2, 8, 9, 10]);
        assert_eq!(out.d(), 6);
        let (same, _) = preprocess_binary(&fixtures::matching_10x11()).unwrap();
        assert_eq!(same, fixtures::matching_10x11());
        let no_null = mat(&[&[1, 0, 1], &[0, 1, 1]]);
        let (out, rep) = preprocess_binary(&no_null).unwrap();
        assert_eq!(rep.complemented, vec![1, 3]);
        assert!(out.bit_rows().unwrap()[0].is_empty());
        let null_first = mat(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 1], &[0, 0, 1]]);
        let (same, rep) = preprocess_binary(&null_first).unwrap();
        assert_eq!(same, null_first);
        assert!(rep.deleted.is_empty() && rep.complemented.is_empty());
    }

    #[test]
    fn preprocess_small_example() {
        let m = mat(&[&[1, 1, 0], &[1, 0, 0]]);
        let (out, rep) = preprocess_binary(&m).unwrap();
        assert_eq!(rep.complemented, vec![1, 2]);
        // columns become (0,0), (0,1), (0,0): the third duplicates the first
        assert_eq!(rep.deleted, vec![3]);
        assert_eq!(out.rows(), vec![vec![0, 0], vec![0, 1]]);
        assert!(out.d() <= 3);
        assert!(preprocess_binary(&mat(&[&[2]])).is_err());
    }

    #[test]
    fn inessential_detection() {
        // columns 1-2 separate all four rows; column 3 singles out row 3
        let m = mat(&[&[0, 0, 0], &[0, 1, 0], &[1, 0, 1], &[1, 1, 0]]);
        assert_eq!(find_inessential_columns(&m), BTreeSet::from([3]));
        let (out, rep) = apply_rule_inessential(&m).unwrap();
        assert_eq!(rep.deleted, vec![3]);
        assert_eq!(out.d(), 2);
        assert!(find_inessential_columns(&mat(&[&[0], &[1]])).is_empty());
    }

    #[test]
    fn rule_inessential_fixed_point_and_binary_only() {
        let m = fixtures::matching_10x11();
        assert!(find_inessential_columns(&m).is_empty());
        assert_eq!(apply_rule_inessential(&m).unwrap().0, m);
        assert!(apply_rule_inessential(&fixtures::hitting_set_matrix_6x6()).is_err());
    }

    #[test]
    fn dominance_examples() {
        let dup = mat(&[&[0, 0, 1], &[1, 1, 0], &[2, 2, 1]]);
        let (out, rep) = dominance_reduce(&dup);
        assert_eq!(rep.deleted, vec![2, 3]);
        assert_eq!(out.d(), 1);
        let constant = mat(&[&[5, 0], &[5, 1]]);
        assert_eq!(dominance_reduce(&constant).1.deleted, vec![1]);
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(budget_lower_bound(&mat(&[&[0, 1]])).unwrap(), 0);
        let eight = Matrix::new((0..8u32).map(|i| vec![i & 1, (i >> 1) & 1, (i >> 2) & 1]).collect()).unwrap();
        assert_eq!(budget_lower_bound(&eight).unwrap(), 3);
        let ten = Matrix::new((0..10u32).map(|i| vec![i % 3, i / 3]).collect()).unwrap();
        assert_eq!(ten.sigma_size(), 4);
        let ten3 = Matrix::new((0..10u32).map(|i| vec![i % 3, (i / 3) % 3, i / 9]).collect()).unwrap();
        assert_eq!(ten3.sigma_size(), 3);
        assert_eq!(budget_lower_bound(&ten3).unwrap(), 3);
    }

    #[test]
    fn sigma_k_kernel() {
        let three = mat(&[&[0, 0], &[0, 1], &[1, 0]]);
        assert!(kernelize_sigma_k(&Instance::new(three.clone(), 1)).is_definite_no());
        match kernelize_sigma_k(&Instance::new(three, 2)) {
            Kernel::Reduced(inst) => assert!(within_antichain_bound(inst.matrix.d(), 3, 2)),
            Kernel::DefiniteNo => panic!("n = 3 <= 2^2"),
        }
        assert!(within_antichain_bound(4, 3, 2));
        assert!(!within_antichain_bound(5, 3, 2));
        let no = Kernel::DefiniteNo.into_instance();
        assert_eq!((no.matrix.n(), no.k()), (2, 0));
    }
}

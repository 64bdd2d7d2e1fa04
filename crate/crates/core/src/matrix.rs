//! Matrices with distinct rows, distance arithmetic, restriction and
//! solution checking.
//!
//! Public indices (rows, columns, solution entries) are 1-based. Internally
//! everything is stored 0-based; helpers ending in `0` take 0-based indices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{DvError, Result};
use crate::exec::{self, Execution};
use crate::sunflower::SetFamily;

pub type Symbol = u32;

/// An `n × d` grid that may contain repeated rows, e.g. the restriction of
/// a [`Matrix`] to a column subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    n: usize,
    d: usize,
    entries: Vec<Symbol>,
}

impl Grid {
    pub fn from_rows(rows: Vec<Vec<Symbol>>) -> Result<Grid> {
        let d = rows.first().map_or(0, Vec::len);
        if let Some(i) = rows.iter().position(|r| r.len() != d) {
            return Err(DvError::Parse {
                line: i + 1,
                message: format!("ragged row: expected {d} entries, found {}", rows[i].len()),
            });
        }
        Ok(Grid {
            n: rows.len(),
            d,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn row(&self, i: usize) -> &[Symbol] {
        &self.entries[i * self.d..(i + 1) * self.d]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Symbol]> {
        (0..self.n).map(move |i| self.row(i))
    }

    /// 0-based index of the first row equal to an earlier one.
    pub fn first_duplicate_row(&self) -> Option<usize> {
        let mut seen: BTreeMap<&[Symbol], usize> = BTreeMap::new();
        (0..self.n).find(|&i| seen.insert(self.row(i), i).is_some())
    }

    pub fn has_distinct_rows(&self) -> bool {
        self.first_duplicate_row().is_none()
    }
}

/// A matrix over non-negative integer symbols whose rows are pairwise
/// distinct. Binary matrices additionally keep each row as a packed bit set.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    grid: Grid,
    alphabet: Vec<Symbol>,
    packed: Option<Vec<BitSet>>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.n(), self.d())?;
        for r in self.grid.rows() {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn new(rows: Vec<Vec<Symbol>>) -> Result<Matrix> {
        Matrix::from_grid(Grid::from_rows(rows)?)
    }

    pub fn from_grid(grid: Grid) -> Result<Matrix> {
        if grid.n == 0 {
            return Err(DvError::Contract {
                line: None,
                message: "matrix has no rows".into(),
            });
        }
        if let Some(i) = grid.first_duplicate_row() {
            return Err(DvError::Contract {
                line: Some(i + 1),
                message: "duplicate rows".into(),
            });
        }
        let alphabet: Vec<Symbol> = grid
            .entries
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let packed = grid.entries.iter().all(|&s| s <= 1).then(|| {
            (0..grid.n)
                .map(|i| {
                    let row = grid.row(i);
                    BitSet::from_indices(grid.d, (0..grid.d).filter(|&j| row[j] == 1))
                })
                .collect()
        });
        Ok(Matrix {
            grid,
            alphabet,
            packed,
        })
    }

    /// Builds a binary matrix from packed rows over `d` columns.
    pub fn from_bit_rows(d: usize, rows: &[BitSet]) -> Result<Matrix> {
        let rows = rows
            .iter()
            .map(|r| (0..d).map(|j| r.contains(j) as Symbol).collect())
            .collect();
        Matrix::new(rows)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.grid.n
    }

    #[inline]
    pub fn d(&self) -> usize {
        self.grid.d
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Row `i` (0-based).
    #[inline]
    pub fn row0(&self, i: usize) -> &[Symbol] {
        self.grid.row(i)
    }

    /// Entry at row `i`, column `j` (both 0-based).
    #[inline]
    pub fn entry0(&self, i: usize, j: usize) -> Symbol {
        self.grid.entries[i * self.grid.d + j]
    }

    pub fn column0(&self, j: usize) -> Vec<Symbol> {
        (0..self.n()).map(|i| self.entry0(i, j)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<Symbol>> {
        self.grid.rows().map(<[Symbol]>::to_vec).collect()
    }

    pub fn alphabet(&self) -> &[Symbol] {
        &self.alphabet
    }

    pub fn sigma_size(&self) -> usize {
        self.alphabet.len()
    }

    /// True when every entry is 0 or 1.
    pub fn is_binary(&self) -> bool {
        self.packed.is_some()
    }

    /// Packed rows (0-based column bits) of a binary matrix.
    pub fn bit_rows(&self) -> Option<&[BitSet]> {
        self.packed.as_deref()
    }

    pub(crate) fn require_bits(&self) -> Result<&[BitSet]> {
        self.bit_rows()
            .ok_or_else(|| DvError::domain("operation requires a binary (0/1) matrix"))
    }

    /// Relabels a matrix with at most two symbols onto {0, 1}, mapping the
    /// smaller symbol to 0. Hamming distances are unchanged.
    pub fn to_binary(&self) -> Option<Matrix> {
        if self.is_binary() {
            return Some(self.clone());
        }
        if self.sigma_size() > 2 {
            return None;
        }
        let zero = self.alphabet[0];
        let rows = self
            .grid
            .rows()
            .map(|r| r.iter().map(|&s| (s != zero) as Symbol).collect())
            .collect();
        Matrix::new(rows).ok()
    }

    /// Set of 0-based columns where rows `i` and `j` (0-based) differ.
    pub fn diff_bits0(&self, i: usize, j: usize) -> BitSet {
        if let Some(bits) = &self.packed {
            return bits[i].symmetric_difference(&bits[j]);
        }
        let (a, b) = (self.row0(i), self.row0(j));
        BitSet::from_indices(self.d(), (0..self.d()).filter(|&c| a[c] != b[c]))
    }

    pub fn hamming0(&self, i: usize, j: usize) -> usize {
        if let Some(bits) = &self.packed {
            return bits[i].symmetric_difference_len(&bits[j]);
        }
        hamming_unchecked(self.row0(i), self.row0(j))
    }

    /// Set of columns where rows `i` and `j` differ (1-based in and out).
    pub fn difference_set(&self, i: usize, j: usize) -> Result<BTreeSet<usize>> {
        let (i0, j0) = (self.check_row(i)?, self.check_row(j)?);
        if i0 == j0 {
            return Err(DvError::domain("difference set needs two distinct rows"));
        }
        Ok(self.diff_bits0(i0, j0).iter().map(|c| c + 1).collect())
    }

    fn check_row(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.n() {
            return Err(DvError::domain(format!("row index {i} outside 1..={}", self.n())));
        }
        Ok(i - 1)
    }

    fn check_column(&self, j: usize) -> Result<usize> {
        if j == 0 || j > self.d() {
            return Err(DvError::domain(format!("column index {j} outside 1..={}", self.d())));
        }
        Ok(j - 1)
    }

    /// True iff the rows restricted to the 0-based columns in `cols` are
    /// pairwise distinct. Sorts the restricted rows and compares neighbours.
    pub fn distinguishes0(&self, cols: &BitSet) -> bool {
        if self.n() <= 1 {
            return true;
        }
        if let Some(bits) = &self.packed {
            let words = cols.words();
            if words.len() == 1 {
                let mask = words[0];
                let mut keys: Vec<u64> = bits.iter().map(|r| r.words()[0] & mask).collect();
                keys.sort_unstable();
                return keys.windows(2).all(|w| w[0] != w[1]);
            }
            let mut keys: Vec<Vec<u64>> = bits
                .iter()
                .map(|r| r.words().iter().zip(words).map(|(a, b)| a & b).collect())
                .collect();
            keys.sort_unstable();
            return keys.windows(2).all(|w| w[0] != w[1]);
        }
        let idx: Vec<usize> = cols.to_vec();
        let mut order: Vec<usize> = (0..self.n()).collect();
        let key = |r: usize| idx.iter().map(move |&c| self.entry0(r, c));
        order.sort_unstable_by(|&a, &b| key(a).cmp(key(b)));
        order.windows(2).all(|w| key(w[0]).ne(key(w[1])))
    }

    /// Copy of the matrix keeping only the 0-based columns in `keep`, in
    /// ascending order.
    pub fn select_columns0(&self, keep: &[usize]) -> Grid {
        let rows = self
            .grid
            .rows()
            .map(|r| keep.iter().map(|&c| r[c]).collect())
            .collect();
        Grid::from_rows(rows).expect("rectangular by construction")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.grid.rows() {
            let line: Vec<String> = r.iter().map(Symbol::to_string).collect();
            writeln!(f, "{}", line.join(","))?;
        }
        Ok(())
    }
}

/// A Distinct Vectors instance: a matrix and a budget `k` of retained
/// columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub matrix: Matrix,
    k: usize,
}

impl Instance {
    /// Budgets above `d` are clamped to `d`; the answer is unchanged since
    /// no solution needs more than `d` columns.
    pub fn new(matrix: Matrix, k: usize) -> Instance {
        let k = k.min(matrix.d());
        Instance { matrix, k }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of discarded columns, `d - k`.
    pub fn t(&self) -> usize {
        self.matrix.d() - self.k
    }
}

/// A set of retained columns, stored as ascending 1-based indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Solution {
    columns: Vec<usize>,
}

impl Solution {
    /// Sorts and deduplicates; rejects index 0.
    pub fn new<I: IntoIterator<Item = usize>>(cols: I) -> Result<Solution> {
        let set: BTreeSet<usize> = cols.into_iter().collect();
        if set.contains(&0) {
            return Err(DvError::domain("column indices are 1-based"));
        }
        Ok(Solution {
            columns: set.into_iter().collect(),
        })
    }

    pub fn empty() -> Solution {
        Solution::default()
    }

    pub fn from_bits0(bits: &BitSet) -> Solution {
        Solution {
            columns: bits.iter().map(|c| c + 1).collect(),
        }
    }

    pub fn columns(&self) -> &[usize] {
        &self.columns
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// 0-based bit set over `d` columns; fails on out-of-range indices.
    pub fn to_bits0(&self, d: usize) -> Result<BitSet> {
        if let Some(&c) = self.columns.iter().find(|&&c| c > d) {
            return Err(DvError::domain(format!("column index {c} outside 1..={d}")));
        }
        Ok(BitSet::from_indices(d, self.columns.iter().map(|c| c - 1)))
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.columns.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Minimum and maximum pairwise row Hamming distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceProfile {
    pub min: usize,
    pub max: usize,
}

impl fmt::Display for DistanceProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h={}, H={}", self.min, self.max)
    }
}

fn require_binary_row(row: &[Symbol]) -> Result<()> {
    if row.iter().any(|&s| s > 1) {
        return Err(DvError::domain("weight is defined for binary rows only"));
    }
    Ok(())
}

/// Number of 1-entries of a binary row.
pub fn weight(row: &[Symbol]) -> Result<usize> {
    require_binary_row(row)?;
    Ok(row.iter().filter(|&&s| s == 1).count())
}

fn hamming_unchecked(x: &[Symbol], y: &[Symbol]) -> usize {
    x.iter().zip(y).filter(|(a, b)| a != b).count()
}

/// Number of positions where `x` and `y` differ.
pub fn hamming(x: &[Symbol], y: &[Symbol]) -> Result<usize> {
    if x.len() != y.len() {
        return Err(DvError::domain(format!(
            "rows of different length ({} vs {})",
            x.len(),
            y.len()
        )));
    }
    Ok(hamming_unchecked(x, y))
}

pub fn distance_profile(m: &Matrix) -> Result<DistanceProfile> {
    distance_profile_with(m, Execution::default())
}

/// Minimum and maximum over all `n(n-1)/2` row pairs.
pub fn distance_profile_with(m: &Matrix, exec: Execution) -> Result<DistanceProfile> {
    let n = m.n();
    if n < 2 {
        return Err(DvError::domain("distance profile needs at least two rows"));
    }
    let per_row = exec::map_indexed(exec, n - 1, |i| {
        ((i + 1)..n)
            .map(|j| m.hamming0(i, j))
            .fold((usize::MAX, 0), |(lo, hi), x| (lo.min(x), hi.max(x)))
    });
    let (min, max) = per_row
        .into_iter()
        .fold((usize::MAX, 0), |(lo, hi), (a, b)| (lo.min(a), hi.max(b)));
    Ok(DistanceProfile { min, max })
}

/// The rows of `m` restricted to the columns of `k`, in ascending column order.
pub fn restrict(m: &Matrix, k: &Solution) -> Result<Grid> {
    k.to_bits0(m.d())?;
    let keep: Vec<usize> = k.columns().iter().map(|c| c - 1).collect();
    Ok(m.select_columns0(&keep))
}

/// Whether the columns of `k` keep all rows of `m` pairwise distinct.
pub fn is_distinguishing(m: &Matrix, k: &Solution) -> Result<bool> {
    let bits = k.to_bits0(m.d())?;
    Ok(m.distinguishes0(&bits))
}

/// Family of 1-sets `{ W_i : i in rows }` of a binary matrix (1-based rows
/// and columns), in the order the rows are given. Equal sets collapse.
pub fn column_system(m: &Matrix, rows: &[usize]) -> Result<SetFamily> {
    let bits = m.require_bits()?;
    let mut sets = Vec::with_capacity(rows.len());
    for &i in rows {
        let i0 = m.check_row(i)?;
        sets.push(bits[i0].iter().map(|c| c + 1).collect::<BTreeSet<usize>>());
    }
    Ok(SetFamily::new(sets))
}

/// Groups the 1-based row indices by their symbol in column `j`. Blocks are
/// ordered by symbol.
pub fn column_partition(m: &Matrix, j: usize) -> Result<Vec<Vec<usize>>> {
    let j0 = m.check_column(j)?;
    let mut blocks: BTreeMap<Symbol, Vec<usize>> = BTreeMap::new();
    for i in 0..m.n() {
        blocks.entry(m.entry0(i, j0)).or_default().push(i + 1);
    }
    Ok(blocks.into_values().collect())
}

//! Hitting Set bridge: reductions in both directions, the factor-H greedy
//! approximation and the sunflower kernel for H-Hitting Set.

use std::collections::{BTreeMap, BTreeSet};

use crate::bitset::BitSet;
use crate::error::{DvError, Result};
use crate::exec::{self, Execution};
use crate::matrix::{Instance, Matrix, Solution, Symbol};
use crate::reductions::{saturating_pow, Kernel};

/// A universe `{1..=universe_size}`, a collection of subsets and a budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HittingSetInstance {
    universe_size: usize,
    sets: Vec<Vec<usize>>,
    pub k: usize,
}

impl HittingSetInstance {
    /// Elements are 1-based; each set is sorted and deduplicated. Empty sets
    /// are representable but make the instance unsolvable.
    pub fn new(universe_size: usize, sets: Vec<Vec<usize>>, k: usize) -> Result<HittingSetInstance> {
        let mut clean = Vec::with_capacity(sets.len());
        for s in sets {
            let s: BTreeSet<usize> = s.into_iter().collect();
            if let Some(&e) = s.iter().find(|&&e| e == 0 || e > universe_size) {
                return Err(DvError::domain(format!("element {e} outside 1..={universe_size}")));
            }
            clean.push(s.into_iter().collect());
        }
        Ok(HittingSetInstance {
            universe_size,
            sets: clean,
            k,
        })
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    /// Largest set cardinality (0 for an empty collection).
    pub fn max_card(&self) -> usize {
        self.sets.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_hitting_set(&self, candidate: &BTreeSet<usize>) -> bool {
        self.sets.iter().all(|s| s.iter().any(|e| candidate.contains(e)))
    }
}

pub fn dv_to_hitting_set(inst: &Instance) -> HittingSetInstance {
    dv_to_hitting_set_with(inst, Execution::default())
}

/// Universe = columns, one set per row pair holding the columns where the
/// pair differs. Repeated sets are collapsed (first occurrence kept, pairs in
/// lexicographic order).
pub fn dv_to_hitting_set_with(inst: &Instance, exec: Execution) -> HittingSetInstance {
    let m = &inst.matrix;
    let n = m.n();
    let per_row: Vec<Vec<Vec<usize>>> = exec::map_indexed(exec, n.saturating_sub(1), |i| {
        ((i + 1)..n)
            .map(|j| m.diff_bits0(i, j).iter().map(|c| c + 1).collect())
            .collect()
    });
    let mut seen = BTreeSet::new();
    let mut sets = Vec::new();
    for s in per_row.into_iter().flatten() {
        if seen.insert(s.clone()) {
            sets.push(s);
        }
    }
    HittingSetInstance {
        universe_size: m.d(),
        sets,
        k: inst.k(),
    }
}

/// Row `i` carries symbol `i` on the elements of set `i` and 0 elsewhere;
/// a final null row is appended. Hitting sets are exactly the column sets
/// that keep the rows distinct.
pub fn hitting_set_to_dv(hs: &HittingSetInstance) -> Result<Instance> {
    if let Some(i) = hs.sets.iter().position(Vec::is_empty) {
        return Err(DvError::domain(format!("set {} is empty and cannot be hit", i + 1)));
    }
    let d = hs.universe_size;
    let mut rows: Vec<Vec<Symbol>> = hs
        .sets
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let mut row = vec![0; d];
            for &e in s {
                row[e - 1] = (i + 1) as Symbol;
            }
            row
        })
        .collect();
    rows.push(vec![0; d]);
    Ok(Instance::new(Matrix::new(rows)?, hs.k))
}

/// Walks the row pairs in lexicographic order and, whenever a pair is not
/// yet told apart, adds its whole difference set. The added sets are
/// pairwise disjoint, so the result is at most `H` times the optimum.
pub fn greedy_factor_h(inst: &Instance) -> Solution {
    let m = &inst.matrix;
    let mut chosen = BitSet::new(m.d());
    for i in 0..m.n() {
        for j in (i + 1)..m.n() {
            let diff = m.diff_bits0(i, j);
            if diff.is_disjoint(&chosen) {
                chosen.union_with(&diff);
            }
        }
    }
    Solution::from_bits0(&chosen)
}

/// `H! · H^(H+1) · (k+1)^H`, saturating.
pub fn kernel_size_bound(h: usize, k: usize) -> u128 {
    let fact = (1..=h as u128).fold(1u128, |a, x| a.saturating_mul(x));
    fact.saturating_mul(saturating_pow(h as u128, h + 1))
        .saturating_mul(saturating_pow(k as u128 + 1, h))
}

/// Searches `sets` (tagged with their position) for a sunflower with
/// `petals` members: a maximal disjoint subfamily if it is large enough,
/// otherwise recurse on the sets through the most frequent element of its
/// union. Always succeeds once `|sets| > s! · (petals-1)^s` for sets of size
/// at most `s`.
fn find_sunflower(sets: &[(usize, BTreeSet<usize>)], petals: usize) -> Option<(BTreeSet<usize>, Vec<usize>)> {
    if sets.len() < petals {
        return None;
    }
    let mut used = BTreeSet::new();
    let mut disjoint = Vec::new();
    for (idx, s) in sets {
        if s.is_disjoint(&used) {
            disjoint.push(*idx);
            used.extend(s.iter().copied());
            if disjoint.len() == petals {
                return Some((BTreeSet::new(), disjoint));
            }
        }
    }
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for (_, s) in sets {
        for x in s.intersection(&used) {
            *counts.entry(*x).or_insert(0) += 1;
        }
    }
    let (&pivot, &count) = counts.iter().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))?;
    if count < petals {
        return None;
    }
    let sub: Vec<(usize, BTreeSet<usize>)> = sets
        .iter()
        .filter(|(_, s)| s.contains(&pivot))
        .map(|(idx, s)| {
            let mut t = s.clone();
            t.remove(&pivot);
            (*idx, t)
        })
        .collect();
    let (mut core, members) = find_sunflower(&sub, petals)?;
    core.insert(pivot);
    Some((core, members))
}

/// Outcome of the H-Hitting Set kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HsKernel {
    /// `None` when the input is a no-instance.
    pub instance: Option<HittingSetInstance>,
    /// `renaming[e - 1]` is the input element behind output element `e`.
    pub renaming: Vec<usize>,
    /// Maximum set size of the input.
    pub h: usize,
    pub bound: u128,
    /// Whether the output set and universe counts are within `bound`.
    pub within_bound: bool,
    /// Number of sunflower replacements performed.
    pub replacements: usize,
}

/// Sunflower kernel: while some `k+1` sets form a sunflower, replace them by
/// their core (an empty core means no hitting set of size `k` exists). The
/// universe is then trimmed to the elements still in use, keeping order.
pub fn hs_kernelize(hs: &HittingSetInstance) -> HsKernel {
    let h = hs.max_card();
    let bound = kernel_size_bound(h, hs.k);
    let no = |replacements| HsKernel {
        instance: None,
        renaming: Vec::new(),
        h,
        bound,
        within_bound: true,
        replacements,
    };
    if hs.sets.iter().any(Vec::is_empty) {
        return no(0);
    }
    let mut family: Vec<BTreeSet<usize>> = Vec::new();
    for s in &hs.sets {
        let s: BTreeSet<usize> = s.iter().copied().collect();
        if !family.contains(&s) {
            family.push(s);
        }
    }
    let mut replacements = 0;
    loop {
        let tagged: Vec<(usize, BTreeSet<usize>)> = family.iter().cloned().enumerate().collect();
        let Some((core, members)) = find_sunflower(&tagged, hs.k + 1) else {
            break;
        };
        if core.is_empty() {
            return no(replacements);
        }
        let members: BTreeSet<usize> = members.into_iter().collect();
        let mut next: Vec<BTreeSet<usize>> = family
            .into_iter()
            .enumerate()
            .filter(|(i, _)| !members.contains(i))
            .map(|(_, s)| s)
            .collect();
        if !next.contains(&core) {
            next.push(core);
        }
        family = next;
        replacements += 1;
    }
    let renaming: Vec<usize> = family.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let index: BTreeMap<usize, usize> = renaming.iter().enumerate().map(|(i, &e)| (e, i + 1)).collect();
    let sets: Vec<Vec<usize>> = family
        .iter()
        .map(|s| s.iter().map(|e| index[e]).collect())
        .collect();
    let within_bound = (sets.len() as u128) <= bound && (renaming.len() as u128) <= bound;
    HsKernel {
        instance: Some(HittingSetInstance {
            universe_size: renaming.len(),
            sets,
            k: hs.k,
        }),
        renaming,
        h,
        bound,
        within_bound,
        replacements,
    }
}

/// Outcome of the (H, k) kernel for Distinct Vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HkKernel {
    pub kernel: Kernel,
    /// `columns[j]` is the input column (1-based) behind output column `j + 1`.
    pub columns: Vec<usize>,
    /// Maximum pairwise distance of the input.
    pub h: usize,
    pub bound: u128,
    pub sets: usize,
    pub universe: usize,
    pub within_bound: bool,
}

/// Distinct Vectors → H-Hitting Set → sunflower kernel → back to Distinct
/// Vectors. Every output row differs from the null row in at most `H`
/// columns, so the output profile has maximum at most `2H`.
pub fn kernelize_h_k(inst: &Instance) -> Result<HkKernel> {
    if inst.matrix.n() < 2 {
        return Err(DvError::domain("kernel needs at least two rows"));
    }
    let hs = dv_to_hitting_set(inst);
    let hk = hs_kernelize(&hs);
    let (kernel, sets, universe) = match &hk.instance {
        None => (Kernel::DefiniteNo, 0, 0),
        Some(reduced) => (
            Kernel::Reduced(hitting_set_to_dv(reduced)?),
            reduced.sets.len(),
            reduced.universe_size,
        ),
    };
    Ok(HkKernel {
        kernel,
        columns: hk.renaming,
        h: hk.h,
        bound: hk.bound,
        sets,
        universe,
        within_bound: hk.within_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::matrix::{distance_profile, is_distinguishing};

    #[test]
    fn g_formula() {
        assert_eq!(kernel_size_bound(2, 1), 64);
        assert_eq!(kernel_size_bound(1, 3), 4);
        assert_eq!(kernel_size_bound(3, 0), 6 * 81);
    }

    #[test]
    fn two_rows_give_one_set() {
        let m = Matrix::new(vec![vec![0, 1, 1], vec![0, 0, 1]]).unwrap();
        let hs = dv_to_hitting_set(&Instance::new(m, 1));
        assert_eq!(hs.sets(), &[vec![2]]);
        assert_eq!(hs.universe_size(), 3);
    }

    #[test]
    fn fixture_image() {
        let inst = hitting_set_to_dv(&fixtures::hitting_set_6_5()).unwrap();
        assert_eq!(inst.matrix, fixtures::hitting_set_matrix_6x6());
        assert_eq!(inst.k(), 2);
        assert!(is_distinguishing(&inst.matrix, &Solution::new([3, 5]).unwrap()).unwrap());
        assert!(fixtures::hitting_set_6_5().is_hitting_set(&BTreeSet::from([3, 5])));
    }

    #[test]
    fn single_set_image_and_empty_set() {
        let hs = HittingSetInstance::new(1, vec![vec![1]], 1).unwrap();
        assert_eq!(hitting_set_to_dv(&hs).unwrap().matrix.rows(), vec![vec![1], vec![0]]);
        let bad = HittingSetInstance::new(2, vec![vec![1], vec![]], 1).unwrap();
        assert!(hitting_set_to_dv(&bad).is_err());
        assert!(HittingSetInstance::new(2, vec![vec![3]], 1).is_err());
    }

    #[test]
    fn greedy_two_rows_and_chain() {
        let m = Matrix::new(vec![vec![0, 0, 0], vec![1, 1, 0]]).unwrap();
        assert_eq!(greedy_factor_h(&Instance::new(m, 1)).columns(), &[1, 2]);
        // the first pair's difference set already separates everything
        let chain = Matrix::new(vec![vec![0, 0], vec![1, 1], vec![2, 2]]).unwrap();
        assert_eq!(greedy_factor_h(&Instance::new(chain, 2)).columns(), &[1, 2]);
        let sol = greedy_factor_h(&Instance::new(fixtures::sunflower_7x10(), 10));
        assert!(is_distinguishing(&fixtures::sunflower_7x10(), &sol).unwrap());
    }

    #[test]
    fn disjoint_singletons_exceed_budget() {
        let k = 3;
        let hs = HittingSetInstance::new(k + 2, (1..=k + 2).map(|e| vec![e]).collect(), k).unwrap();
        assert!(hs_kernelize(&hs).instance.is_none());
    }

    #[test]
    fn small_instance_is_fixed_point() {
        let hs = HittingSetInstance::new(5, vec![vec![2, 3], vec![3, 5]], 2).unwrap();
        let out = hs_kernelize(&hs);
        let inst = out.instance.unwrap();
        assert_eq!(out.renaming, vec![2, 3, 5]);
        assert_eq!(inst.sets(), &[vec![1, 2], vec![2, 3]]);
        assert!(out.within_bound);
        assert_eq!(out.replacements, 0);
    }

    #[test]
    fn sunflower_replaced_by_core() {
        // {1,2},{1,3},{1,4} with k = 2: three petals around core {1}
        let hs = HittingSetInstance::new(5, vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![5]], 2).unwrap();
        let out = hs_kernelize(&hs);
        let inst = out.instance.unwrap();
        assert_eq!(out.renaming, vec![1, 5]);
        assert_eq!(inst.sets().len(), 2);
        assert_eq!(out.replacements, 1);
    }

    #[test]
    fn h_k_pipeline_profile() {
        let inst = Instance::new(fixtures::sunflower_7x10(), 6);
        let h = distance_profile(&inst.matrix).unwrap().max;
        let out = kernelize_h_k(&inst).unwrap();
        let Kernel::Reduced(k) = &out.kernel else { panic!("yes-instance") };
        if k.matrix.n() >= 2 {
            assert!(distance_profile(&k.matrix).unwrap().max <= 2 * h);
        }
        assert!(out.within_bound);
    }
}

//! Exhaustive search over column subsets in order of size.

use crate::bitset::BitSet;
use crate::exec::{self, Execution};
use crate::matrix::{Instance, Matrix, Solution};
use crate::reductions::budget_lower_bound;

const BATCH: usize = 4096;

/// Advances `combo` to the next `combo.len()`-subset of `0..d` in
/// lexicographic order. Returns false after the last one.
pub(crate) fn next_combination(combo: &mut [usize], d: usize) -> bool {
    let s = combo.len();
    let Some(i) = (0..s).rev().find(|&i| combo[i] < d - s + i) else {
        return false;
    };
    combo[i] += 1;
    for j in (i + 1)..s {
        combo[j] = combo[j - 1] + 1;
    }
    true
}

/// Outcome of a search together with the number of subsets it tested.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub solution: Option<Solution>,
    pub candidates: u64,
}

/// Smallest lexicographic `s`-subset of `0..d` that distinguishes `m`,
/// plus the number of subsets tested up to it (or all of them).
fn first_of_size(m: &Matrix, s: usize, exec: Execution) -> (Option<BitSet>, u64) {
    let d = m.d();
    let mut combo: Vec<usize> = (0..s).collect();
    let mut tested = 0u64;
    let mut more = true;
    while more {
        let mut batch = Vec::with_capacity(BATCH);
        while more && batch.len() < BATCH {
            batch.push(combo.clone());
            more = next_combination(&mut combo, d);
        }
        let hit = exec::find_map_first(exec, batch.len(), |i| {
            let bits = BitSet::from_indices(d, batch[i].iter().copied());
            m.distinguishes0(&bits).then_some((i, bits))
        });
        match hit {
            Some((i, bits)) => return (Some(bits), tested + i as u64 + 1),
            None => tested += batch.len() as u64,
        }
    }
    (None, tested)
}

pub fn solve_exact_subsets(inst: &Instance) -> Option<Solution> {
    exact_subsets_search(inst, Execution::default()).solution
}

/// Tries subset sizes from `⌈log_|Σ| n⌉` up to `k`; within a size, subsets
/// in lexicographic order. The first hit is the lexicographically smallest
/// minimum solution regardless of the execution strategy.
pub fn exact_subsets_search(inst: &Instance, exec: Execution) -> SearchResult {
    let m = &inst.matrix;
    if m.n() <= 1 {
        return SearchResult {
            solution: Some(Solution::empty()),
            candidates: 1,
        };
    }
    let lb = budget_lower_bound(m).unwrap_or(1);
    let mut candidates = 0;
    for s in lb..=inst.k() {
        let (hit, tested) = first_of_size(m, s, exec);
        candidates += tested;
        if let Some(bits) = hit {
            return SearchResult {
                solution: Some(Solution::from_bits0(&bits)),
                candidates,
            };
        }
    }
    SearchResult {
        solution: None,
        candidates,
    }
}

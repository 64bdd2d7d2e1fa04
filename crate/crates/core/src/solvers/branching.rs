//! Bounded search tree over difference sets.
//!
//! Some column of `D_ij` must be kept for every row pair, so a node picks an
//! undistinguished pair and branches on the columns of its difference set.
//! Later siblings exclude the columns tried by earlier ones, so no subset is
//! visited twice. Budgets are tried in increasing order, hence the first
//! solution found is a minimum one.

use std::collections::HashMap;

use crate::bitset::BitSet;
use crate::matrix::{Instance, Matrix, Solution, Symbol};
use crate::reductions::budget_lower_bound;

/// Row pairs (0-based) that agree on every column of `chosen`.
fn undistinguished_pairs(m: &Matrix, chosen: &BitSet) -> Vec<(usize, usize)> {
    let cols = chosen.to_vec();
    let mut groups: HashMap<Vec<Symbol>, Vec<usize>> = HashMap::new();
    for i in 0..m.n() {
        let key = cols.iter().map(|&c| m.entry0(i, c)).collect();
        groups.entry(key).or_default().push(i);
    }
    let mut pairs = Vec::new();
    for rows in groups.values().filter(|g| g.len() > 1) {
        for (a, &i) in rows.iter().enumerate() {
            pairs.extend(rows[a + 1..].iter().map(|&j| (i, j)));
        }
    }
    pairs.sort_unstable();
    pairs
}

struct Search<'a> {
    m: &'a Matrix,
    nodes: u64,
}

impl Search<'_> {
    fn run(&mut self, chosen: &mut BitSet, excluded: &mut BitSet, budget: usize) -> bool {
        self.nodes += 1;
        let pairs = undistinguished_pairs(self.m, chosen);
        if pairs.is_empty() {
            return true;
        }
        if budget == 0 {
            return false;
        }
        // branch on the pair with the fewest admissible columns
        let mut best: Option<BitSet> = None;
        for &(i, j) in &pairs {
            let avail = self.m.diff_bits0(i, j).difference(excluded);
            if avail.is_empty() {
                return false;
            }
            if best.as_ref().is_none_or(|b| avail.len() < b.len()) {
                best = Some(avail);
            }
        }
        let branch = best.expect("at least one pair");
        let mut tried = Vec::new();
        let mut found = false;
        for c in &branch {
            chosen.insert(c);
            if self.run(chosen, excluded, budget - 1) {
                found = true;
                break;
            }
            chosen.remove(c);
            excluded.insert(c);
            tried.push(c);
        }
        for c in tried {
            excluded.remove(c);
        }
        found
    }
}

/// Minimum solution of size at most `k`, or `None`, together with the
/// number of search nodes visited.
pub fn branching_search(inst: &Instance) -> (Option<Solution>, u64) {
    let m = &inst.matrix;
    if m.n() <= 1 {
        return (Some(Solution::empty()), 1);
    }
    let lb = budget_lower_bound(m).unwrap_or(1);
    let mut search = Search { m, nodes: 0 };
    for budget in lb..=inst.k() {
        let mut chosen = BitSet::new(m.d());
        let mut excluded = BitSet::new(m.d());
        if search.run(&mut chosen, &mut excluded, budget) {
            return (Some(Solution::from_bits0(&chosen)), search.nodes);
        }
    }
    (None, search.nodes)
}

pub fn solve_exact_branching(inst: &Instance) -> Option<Solution> {
    branching_search(inst).0
}

//! Instance constructions with prescribed distance profiles.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{DvError, Result};
use crate::matrix::{distance_profile, Instance, Matrix, Symbol};

/// Name of the pseudo-random generator behind every seeded generator.
/// Output for a given seed is stable as long as this identifier is.
pub const RNG_ALGORITHM: &str = "ChaCha8Rng (rand_chacha 0.3)";

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Simple undirected graph on vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Edges keep their given order and orientation; self-loops, repeated
    /// edges and out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Graph> {
        let mut seen = BTreeSet::new();
        for &(u, v) in &edges {
            if u == 0 || v == 0 || u > n || v > n {
                return Err(DvError::domain(format!("edge {u}-{v} outside 1..={n}")));
            }
            if u == v {
                return Err(DvError::domain(format!("self-loop at vertex {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(DvError::domain(format!("repeated edge {u}-{v}")));
            }
        }
        Ok(Graph { n, edges })
    }

    /// Each of the `n(n-1)/2` possible edges is present with probability `p`.
    pub fn random(n: usize, p: f64, seed: u64) -> Graph {
        let mut r = rng(seed);
        let mut edges = Vec::new();
        for u in 1..=n {
            for v in (u + 1)..=n {
                if r.gen_bool(p.clamp(0.0, 1.0)) {
                    edges.push((u, v));
                }
            }
        }
        Graph { n, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// 0-based neighbourhood bit masks; `n` must not exceed 64.
    fn neighbour_masks(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.n];
        for &(u, v) in &self.edges {
            adj[u - 1] |= 1 << (v - 1);
            adj[v - 1] |= 1 << (u - 1);
        }
        adj
    }

    fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }
}

/// Largest vertex set whose members are pairwise at distance at least 3
/// (no shared edge, no common neighbour). Exhaustive branch and bound;
/// graphs are limited to 64 vertices.
pub fn max_distance3_independent_set(g: &Graph) -> Result<BTreeSet<usize>> {
    let n = g.vertex_count();
    if n > 64 {
        return Err(DvError::Refused(format!("{n} vertices exceed the 64-vertex search limit")));
    }
    let adj = g.neighbour_masks();
    // conflict[v]: vertices within distance 2 of v, v excluded
    let conflict: Vec<u64> = (0..n)
        .map(|v| {
            let mut m = adj[v];
            for u in 0..n {
                if adj[v] >> u & 1 == 1 {
                    m |= adj[u];
                }
            }
            m & !(1u64 << v)
        })
        .collect();
    fn search(v: usize, n: usize, allowed: u64, chosen: u64, conflict: &[u64], best: &mut u64) {
        if chosen.count_ones() + (allowed >> v).count_ones() <= best.count_ones() {
            return;
        }
        if v == n {
            *best = chosen;
            return;
        }
        if allowed >> v & 1 == 1 {
            search(v + 1, n, allowed & !conflict[v], chosen | 1 << v, conflict, best);
        }
        search(v + 1, n, allowed & !(1u64 << v), chosen, conflict, best);
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = 0u64;
    if n > 0 {
        search(0, n, all, 0, &conflict, &mut best);
    }
    Ok((0..n).filter(|&v| best >> v & 1 == 1).map(|v| v + 1).collect())
}

/// Edge-incidence rows followed by a null row, with budget `n - k`. No
/// preconditions are checked.
pub fn incidence_instance(g: &Graph, k: usize) -> Result<Instance> {
    let n = g.vertex_count();
    let mut rows: Vec<Vec<Symbol>> = g
        .edges()
        .iter()
        .map(|&(u, v)| (1..=n).map(|j| (j == u || j == v) as Symbol).collect())
        .collect();
    rows.push(vec![0; n]);
    Ok(Instance::new(Matrix::new(rows)?, n.saturating_sub(k)))
}

/// Why a graph falls outside the reduction's assumptions, if it does.
pub fn d3is_precondition_violation(g: &Graph) -> Option<String> {
    if let Some(v) = (1..=g.vertex_count()).find(|&v| g.degree(v) == 0) {
        return Some(format!("vertex {v} is isolated"));
    }
    if g.edges().len() < 4 {
        return Some(format!("only {} edges, at least 4 needed", g.edges().len()));
    }
    let disjoint_pair = g.edges().iter().enumerate().any(|(i, &(a, b))| {
        g.edges()[i + 1..].iter().any(|&(c, d)| a != c && a != d && b != c && b != d)
    });
    if !disjoint_pair {
        return Some("no two edges are disjoint".into());
    }
    None
}

/// Reduction from Distance-3 Independent Set: the graph has such a set of
/// size `k` iff the incidence instance (budget `n - k`) is a yes-instance.
/// The output profile is exactly (2, 4). Graphs violating the reduction's
/// assumptions are refused; the refusal message carries the direct answer.
pub fn from_graph_d3is(g: &Graph, k: usize) -> Result<Instance> {
    if let Some(reason) = d3is_precondition_violation(g) {
        let verdict = match max_distance3_independent_set(g) {
            Ok(best) if best.len() >= k => "yes",
            Ok(_) => "no",
            Err(_) => "unknown",
        };
        return Err(DvError::Refused(format!("{reason}; direct answer: {verdict}")));
    }
    incidence_instance(g, k)
}

/// Checks the padding precondition: last row null, every other row of
/// weight 2, and row 1 at distance 4 from some row.
fn check_padding_seed(inst: &Instance) -> Result<()> {
    let m = &inst.matrix;
    let bits = m.require_bits()?;
    let n = m.n();
    if n < 3 || !bits[n - 1].is_empty() {
        return Err(DvError::domain("padding needs at least three rows and a null last row"));
    }
    if let Some(i) = (0..n - 1).find(|&i| bits[i].len() != 2) {
        return Err(DvError::domain(format!("row {} does not have weight 2", i + 1)));
    }
    if !(1..n - 1).any(|j| m.hamming0(0, j) == 4) {
        return Err(DvError::domain("row 1 has no row at distance 4"));
    }
    Ok(())
}

/// Profile (2,4) → (1, 4+b), budget `k + 1`: every row gains a zero, `b`
/// copies of the indicator column of row 1 are appended, then a new row that
/// differs from the null row only in a final indicator column.
pub fn pad_case1(inst: &Instance, b: usize) -> Result<Instance> {
    check_padding_seed(inst)?;
    let m = &inst.matrix;
    let n = m.n();
    let mut rows: Vec<Vec<Symbol>> = (0..n)
        .map(|i| {
            let mut r = m.row0(i).to_vec();
            r.extend(std::iter::repeat_n((i == 0) as Symbol, b));
            r.push(0);
            r
        })
        .collect();
    let mut extra = vec![0; m.d() + b];
    extra.push(1);
    rows.push(extra);
    Ok(Instance::new(Matrix::new(rows)?, inst.k() + 1))
}

/// Profile (2,4) → (2+a, 4+2⌈a/2⌉+b), same budget. Appends ⌈a/2⌉ copies of
/// the indicator column of every non-null row (rows in order, copies
/// adjacent), ⌊a/2⌋ copies of the indicator of all non-null rows and `b`
/// copies of the indicator of row 1. Each added column singles out one row.
pub fn pad_case2(inst: &Instance, a: usize, b: usize) -> Result<Instance> {
    check_padding_seed(inst)?;
    let m = &inst.matrix;
    let n = m.n();
    let mut extra_cols: Vec<Vec<Symbol>> = Vec::new();
    for i in 0..n - 1 {
        for _ in 0..a.div_ceil(2) {
            extra_cols.push((0..n).map(|r| (r == i) as Symbol).collect());
        }
    }
    for _ in 0..a / 2 {
        extra_cols.push((0..n).map(|r| (r < n - 1) as Symbol).collect());
    }
    for _ in 0..b {
        extra_cols.push((0..n).map(|r| (r == 0) as Symbol).collect());
    }
    let rows = (0..n)
        .map(|i| {
            let mut r = m.row0(i).to_vec();
            r.extend(extra_cols.iter().map(|c| c[i]));
            r
        })
        .collect();
    Ok(Instance::new(Matrix::new(rows)?, inst.k()))
}

/// Binary matrix whose non-null rows form a sunflower with `core_size` core
/// columns and the given petal sizes (one row per petal, in order), followed
/// by a null row. Columns are the core block then the petal blocks, shuffled
/// by a seeded permutation.
pub fn gen_sunflower(petal_sizes: &[usize], core_size: usize, seed: u64) -> Result<Matrix> {
    let empty = petal_sizes.iter().filter(|&&s| s == 0).count();
    if empty > 1 {
        return Err(DvError::domain("at most one petal may be empty"));
    }
    if empty == 1 && core_size == 0 {
        return Err(DvError::domain("an empty petal around an empty core equals the null row"));
    }
    let d = core_size + petal_sizes.iter().sum::<usize>();
    let mut perm: Vec<usize> = (0..d).collect();
    perm.shuffle(&mut rng(seed));
    let mut rows: Vec<Vec<Symbol>> = Vec::with_capacity(petal_sizes.len() + 1);
    let mut next = core_size;
    for &size in petal_sizes {
        let mut row = vec![0; d];
        for c in (0..core_size).chain(next..next + size) {
            row[perm[c]] = 1;
        }
        next += size;
        rows.push(row);
    }
    rows.push(vec![0; d]);
    Matrix::new(rows)
}

/// Seeded sampler for binary `n × d` matrices with profile exactly
/// `(alpha, beta)`. Each attempt grows the matrix row by row, drawing
/// candidates at distance `alpha..=beta` from a random earlier row and
/// keeping the first one compatible with all rows so far; the finished
/// matrix is accepted only if its profile matches. `None` once `attempts`
/// are used up.
pub fn gen_random_profile(
    n: usize,
    d: usize,
    alpha: usize,
    beta: usize,
    seed: u64,
    attempts: usize,
) -> Result<Option<Matrix>> {
    if n < 2 || alpha == 0 || alpha > beta || beta > d {
        return Err(DvError::domain(format!(
            "need n >= 2 and 1 <= alpha <= beta <= d, got n={n}, d={d}, alpha={alpha}, beta={beta}"
        )));
    }
    let mut r = rng(seed);
    let dist = |x: &[Symbol], y: &[Symbol]| x.iter().zip(y).filter(|(a, b)| a != b).count();
    for _ in 0..attempts {
        let mut rows: Vec<Vec<Symbol>> = vec![(0..d).map(|_| r.gen_range(0..2)).collect()];
        'grow: while rows.len() < n {
            for _ in 0..64 {
                let base = &rows[r.gen_range(0..rows.len())];
                let flips = r.gen_range(alpha..=beta);
                let mut cand = base.clone();
                for c in rand::seq::index::sample(&mut r, d, flips) {
                    cand[c] ^= 1;
                }
                if rows.iter().all(|row| (alpha..=beta).contains(&dist(row, &cand))) {
                    rows.push(cand);
                    continue 'grow;
                }
            }
            break;
        }
        if rows.len() < n {
            continue;
        }
        let m = Matrix::new(rows)?;
        let p = distance_profile(&m)?;
        if p.min == alpha && p.max == beta {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

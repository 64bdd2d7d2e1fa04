//! Brute-force reference answers written independently of the library.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use dv_core::Matrix;

pub fn rows_of(m: &Matrix) -> Vec<Vec<u32>> {
    m.rows()
}

fn distinct_under(rows: &[Vec<u32>], mask: u32) -> bool {
    let mut seen = HashSet::new();
    rows.iter().all(|r| {
        let key: Vec<u32> = r.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &s)| s).collect();
        seen.insert(key)
    })
}

/// Masks over `d` bits with exactly `size` ones, in increasing order
/// (Gosper's hack).
fn masks_of_size(d: usize, size: usize) -> impl Iterator<Item = u32> {
    let limit = 1u64 << d;
    let first = (1u64 << size) - 1;
    std::iter::successors((first < limit).then_some(first), move |&m| {
        if m == 0 {
            return None;
        }
        let c = m & m.wrapping_neg();
        let r = m + c;
        let next = (((r ^ m) >> 2) / c) | r;
        (next < limit).then_some(next)
    })
    .map(|m| m as u32)
}

/// Smallest number of columns keeping `rows` pairwise distinct.
pub fn min_dv(rows: &[Vec<u32>]) -> usize {
    let d = rows.first().map_or(0, Vec::len);
    assert!(d <= 24, "brute force limited to 24 columns");
    (0..=d)
        .find(|&size| masks_of_size(d, size).any(|mask| distinct_under(rows, mask)))
        .expect("full column set")
}

pub fn min_dv_of(m: &Matrix) -> usize {
    min_dv(&m.rows())
}

/// Whether the 1-based `columns` keep `rows` distinct.
pub fn separates(rows: &[Vec<u32>], columns: &[usize]) -> bool {
    let mask = columns.iter().fold(0u32, |acc, &c| acc | 1 << (c - 1));
    distinct_under(rows, mask)
}

/// Minimum and maximum pairwise Hamming distance.
pub fn profile(rows: &[Vec<u32>]) -> (usize, usize) {
    let mut lo = usize::MAX;
    let mut hi = 0;
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let dist = rows[i].iter().zip(&rows[j]).filter(|(a, b)| a != b).count();
            lo = lo.min(dist);
            hi = hi.max(dist);
        }
    }
    (lo, hi)
}

/// Smallest hitting set of `sets` (elements 1-based, universe `1..=u`).
/// `None` when some set is empty.
pub fn min_hitting_set(u: usize, sets: &[Vec<usize>]) -> Option<usize> {
    if sets.iter().any(Vec::is_empty) {
        return None;
    }
    let masks: Vec<u32> = sets.iter().map(|s| s.iter().fold(0, |acc, &e| acc | 1 << (e - 1))).collect();
    (0u32..1 << u)
        .filter(|&h| masks.iter().all(|&s| s & h != 0))
        .map(|h| h.count_ones() as usize)
        .min()
}

fn all_distances(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u - 1].push(v - 1);
        adj[v - 1].push(u - 1);
    }
    (0..n)
        .map(|s| {
            let mut dist = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        queue.push_back(y);
                    }
                }
            }
            dist
        })
        .collect()
}

/// Largest vertex set with all pairwise graph distances at least 3.
pub fn max_d3is(n: usize, edges: &[(usize, usize)]) -> usize {
    let dist = all_distances(n, edges);
    (0u32..1 << n)
        .filter(|&s| {
            (0..n).all(|i| s >> i & 1 == 0 || (i + 1..n).all(|j| s >> j & 1 == 0 || dist[i][j] >= 3))
        })
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// The complexity rule stated directly: polynomial iff `H <= 2*ceil(h/2) + 1`.
pub fn polynomial_by_rule(h: usize, big_h: usize) -> bool {
    big_h <= 2 * h.div_ceil(2) + 1
}

//! Left-saturating bipartite matching by augmenting paths.

use std::collections::BTreeMap;

/// A matching covering every vertex of `left`, as `(left, right)` pairs in
/// the order of `left`, or `None` if Hall's condition fails. Edges whose
/// endpoints are not in `left × right` are ignored; neighbours are tried in
/// edge order.
pub fn hall_matching(left: &[usize], right: &[usize], edges: &[(usize, usize)]) -> Option<Vec<(usize, usize)>> {
    let li: BTreeMap<usize, usize> = left.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let ri: BTreeMap<usize, usize> = right.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); left.len()];
    for (u, v) in edges {
        if let (Some(&a), Some(&b)) = (li.get(u), ri.get(v)) {
            if !adj[a].contains(&b) {
                adj[a].push(b);
            }
        }
    }
    let mut owner: Vec<Option<usize>> = vec![None; right.len()];

    fn augment(a: usize, adj: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
        for &b in &adj[a] {
            if seen[b] {
                continue;
            }
            seen[b] = true;
            if owner[b].is_none_or(|other| augment(other, adj, owner, seen)) {
                owner[b] = Some(a);
                return true;
            }
        }
        false
    }

    for a in 0..left.len() {
        let mut seen = vec![false; right.len()];
        if !augment(a, &adj, &mut owner, &mut seen) {
            return None;
        }
    }
    let mut mate = vec![0; left.len()];
    for (b, o) in owner.iter().enumerate() {
        if let Some(a) = o {
            mate[*a] = b;
        }
    }
    Some(left.iter().zip(mate).map(|(&u, b)| (u, right[b])).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_disjoint_edges() {
        assert_eq!(hall_matching(&[1, 2], &[3, 4], &[(1, 3), (2, 4)]), Some(vec![(1, 3), (2, 4)]));
    }

    #[test]
    fn star_violates_hall() {
        assert_eq!(hall_matching(&[1, 2, 3], &[4], &[(1, 4), (2, 4), (3, 4)]), None);
    }

    #[test]
    fn needs_augmenting_path() {
        let m = hall_matching(&[1, 2], &[3, 4], &[(1, 3), (1, 4), (2, 3)]).unwrap();
        assert_eq!(m, vec![(1, 4), (2, 3)]);
    }

    #[test]
    fn empty_left_side() {
        assert_eq!(hall_matching(&[], &[1], &[]), Some(vec![]));
    }
}

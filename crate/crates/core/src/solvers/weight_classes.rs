//! Rows of a binary matrix grouped by weight, and the intersection
//! properties that a homogeneous distance profile forces on them.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{DvError, Result};
use crate::matrix::{column_system, distance_profile, Matrix};
use crate::sunflower::{deza_threshold, null_row, SetFamily};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightClassAnalysis {
    /// Weight → 1-based indices of the non-null rows of that weight.
    pub classes: BTreeMap<usize, Vec<usize>>,
    /// Weight → number of rows of that weight.
    pub counts: BTreeMap<usize, usize>,
    /// Weight → union of the 1-sets of its rows (1-based columns).
    pub unions: BTreeMap<usize, BTreeSet<usize>>,
    /// Size threshold above which a uniform class is a sunflower, for the
    /// regime of the matrix's profile (if it is polynomial).
    pub threshold_c: Option<usize>,
    /// 1-based index of the null row, if present.
    pub null_row: Option<usize>,
    #[serde(skip)]
    systems: BTreeMap<usize, SetFamily>,
}

impl WeightClassAnalysis {
    /// The set family `{W_i : w(row i) = weight}`.
    pub fn system(&self, weight: usize) -> Option<&SetFamily> {
        self.systems.get(&weight)
    }

    pub fn count(&self, weight: usize) -> usize {
        self.counts.get(&weight).copied().unwrap_or(0)
    }

    pub fn rows(&self, weight: usize) -> &[usize] {
        self.classes.get(&weight).map_or(&[], Vec::as_slice)
    }

    pub fn union_of(&self, weight: usize) -> BTreeSet<usize> {
        self.unions.get(&weight).cloned().unwrap_or_default()
    }
}

/// Allowed `|W_i ∩ W_j|` for rows of weights `wi <= wj`, given the profile
/// `(alpha, beta)` and a null row.
fn allowed_intersections(alpha: usize, beta: usize, wi: usize, wj: usize) -> BTreeSet<usize> {
    // Δ(i,j) = wi + wj − 2|W_ij| must lie in [alpha, beta]
    (0..=wi.min(wj))
        .filter(|x| {
            let dist = wi + wj - 2 * x;
            (alpha..=beta).contains(&dist)
        })
        .collect()
}

fn threshold_for(alpha: usize, beta: usize) -> Option<usize> {
    if beta <= alpha + 1 {
        Some(deza_threshold(alpha + 1))
    } else if alpha % 2 == 1 && beta == alpha + 2 {
        Some(deza_threshold(alpha + 2))
    } else {
        None
    }
}

/// Groups non-null rows by weight. When a null row is present and the
/// profile is polynomial, checks that every pair of rows meets in the number
/// of columns its weights allow (for instance `⌊α/2⌋` within weight `α`).
pub fn analyze_weight_classes(m: &Matrix) -> Result<WeightClassAnalysis> {
    let bits = m.require_bits()?;
    let null = null_row(m);
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, r) in bits.iter().enumerate() {
        if !r.is_empty() {
            classes.entry(r.len()).or_default().push(i + 1);
        }
    }
    let counts = classes.iter().map(|(&w, v)| (w, v.len())).collect();
    let mut systems = BTreeMap::new();
    let mut unions = BTreeMap::new();
    for (&w, rows) in &classes {
        let fam = column_system(m, rows)?;
        unions.insert(w, fam.union());
        systems.insert(w, fam);
    }
    let mut threshold_c = None;
    if null.is_some() && m.n() >= 2 {
        let p = distance_profile(m)?;
        threshold_c = threshold_for(p.min, p.max);
        if threshold_c.is_some() {
            let rows: Vec<usize> = classes.values().flatten().map(|i| i - 1).collect();
            for (a, &i) in rows.iter().enumerate() {
                for &j in &rows[a + 1..] {
                    let (wi, wj) = (bits[i].len(), bits[j].len());
                    let (lo, hi) = (wi.min(wj), wi.max(wj));
                    let got = bits[i].intersection_len(&bits[j]);
                    let allowed = allowed_intersections(p.min, p.max, lo, hi);
                    if !allowed.contains(&got) {
                        return Err(DvError::Contract {
                            line: None,
                            message: format!(
                                "intersection property for weights ({lo},{hi}) violated: rows {} and {} share {got} columns, expected one of {:?}",
                                i + 1,
                                j + 1,
                                allowed
                            ),
                        });
                    }
                }
            }
        }
    }
    Ok(WeightClassAnalysis {
        classes,
        counts,
        unions,
        threshold_c,
        null_row: null.map(|i| i + 1),
        systems,
    })
}

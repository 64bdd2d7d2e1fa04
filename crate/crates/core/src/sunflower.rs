//! Weak and strong Δ-systems (sunflowers) over column-index sets.

use std::collections::BTreeSet;

use crate::error::{DvError, Result};
use crate::matrix::{column_system, Matrix, Solution};

/// A family of pairwise distinct finite sets. Order of first occurrence is
/// kept; repeated sets collapse.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SetFamily {
    sets: Vec<BTreeSet<usize>>,
}

impl SetFamily {
    pub fn new(sets: Vec<BTreeSet<usize>>) -> SetFamily {
        let mut out: Vec<BTreeSet<usize>> = Vec::with_capacity(sets.len());
        for s in sets {
            if !out.contains(&s) {
                out.push(s);
            }
        }
        SetFamily { sets: out }
    }

    pub fn sets(&self) -> &[BTreeSet<usize>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// `Some(s)` when every set has exactly `s` elements.
    pub fn uniform_size(&self) -> Option<usize> {
        let s = self.sets.first()?.len();
        self.sets.iter().all(|x| x.len() == s).then_some(s)
    }

    pub fn union(&self) -> BTreeSet<usize> {
        self.sets.iter().flatten().copied().collect()
    }
}

/// A family whose pairwise intersections all equal the same core.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sunflower {
    family: SetFamily,
    core: BTreeSet<usize>,
    petals: Vec<BTreeSet<usize>>,
}

impl Sunflower {
    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    pub fn core(&self) -> &BTreeSet<usize> {
        &self.core
    }

    /// `petals()[i]` is `family().sets()[i]` minus the core.
    pub fn petals(&self) -> &[BTreeSet<usize>] {
        &self.petals
    }

    /// Common intersection size, `|core|`.
    pub fn lambda(&self) -> usize {
        self.core.len()
    }
}

fn require_pair(f: &SetFamily) -> Result<()> {
    if f.len() < 2 {
        return Err(DvError::domain(
            "intersection structure needs a family of at least two sets",
        ));
    }
    Ok(())
}

/// Common pairwise intersection size, if there is one.
pub fn weak_delta_lambda(f: &SetFamily) -> Result<Option<usize>> {
    require_pair(f)?;
    let sets = f.sets();
    let lambda = sets[0].intersection(&sets[1]).count();
    for i in 0..sets.len() {
        for j in (i + 1)..sets.len() {
            if sets[i].intersection(&sets[j]).count() != lambda {
                return Ok(None);
            }
        }
    }
    Ok(Some(lambda))
}

/// Recognises a sunflower. The candidate core is the intersection of the
/// first two sets; it is then checked that every set contains it and that
/// no element outside it occurs twice.
pub fn sunflower_core(f: &SetFamily) -> Result<Option<Sunflower>> {
    require_pair(f)?;
    let sets = f.sets();
    let core: BTreeSet<usize> = sets[0].intersection(&sets[1]).copied().collect();
    let mut seen = BTreeSet::new();
    for s in sets {
        if !core.is_subset(s) {
            return Ok(None);
        }
        for x in s.difference(&core) {
            if !seen.insert(*x) {
                return Ok(None);
            }
        }
    }
    let petals = sets.iter().map(|s| s - &core).collect();
    Ok(Some(Sunflower {
        family: f.clone(),
        core,
        petals,
    }))
}

/// Size from which an `s`-uniform weak Δ-system is necessarily a sunflower:
/// `s² − s + 2`.
pub fn deza_threshold(s: usize) -> usize {
    s * s - s + 2
}

/// Index (0-based) of the all-zero row of a binary matrix, if any.
pub(crate) fn null_row(m: &Matrix) -> Option<usize> {
    m.bit_rows()?.iter().position(|r| r.is_empty())
}

/// Minimum solution of a binary matrix with a null row whose non-null rows
/// form a sunflower: the smallest column of every non-empty petal, plus the
/// smallest core column when one petal is empty. Its size is the number of
/// non-null rows.
pub fn solve_sunflower(m: &Matrix) -> Result<Solution> {
    let bits = m.require_bits()?;
    let null = null_row(m).ok_or_else(|| DvError::domain("matrix has no all-zero row"))?;
    let others: Vec<usize> = (1..=m.n()).filter(|&i| i != null + 1).collect();
    match others.len() {
        0 => return Ok(Solution::empty()),
        1 => {
            let c = bits[others[0] - 1].first().expect("non-null row");
            return Solution::new([c + 1]);
        }
        _ => {}
    }
    let family = column_system(m, &others)?;
    let flower = sunflower_core(&family)?
        .ok_or_else(|| DvError::domain("non-null rows do not form a sunflower"))?;
    Ok(sunflower_solution(&flower))
}

pub(crate) fn sunflower_solution(flower: &Sunflower) -> Solution {
    let mut cols: BTreeSet<usize> = BTreeSet::new();
    let mut empty_petal = false;
    for p in flower.petals() {
        match p.first() {
            Some(&c) => {
                cols.insert(c);
            }
            None => empty_petal = true,
        }
    }
    if empty_petal {
        if let Some(&c) = flower.core().first() {
            cols.insert(c);
        }
    }
    Solution::new(cols).expect("1-based columns")
}

/// For a sunflower and a set `x` meeting every member in at least `lambda`
/// elements: once the family has more members than `x` has elements, `x`
/// must meet the core in at least `lambda` elements (so `lambda <= |core|`).
/// Returns whether that conclusion holds; with `|family| <= |x|` nothing is
/// claimed and the result is `true`.
pub fn sunflower_intersection_check(f: &Sunflower, x: &BTreeSet<usize>, lambda: usize) -> Result<bool> {
    let consistent = f
        .family
        .sets()
        .iter()
        .zip(&f.petals)
        .all(|(s, p)| p.is_disjoint(&f.core) && &(p | &f.core) == s);
    if !consistent {
        return Err(DvError::domain("sunflower petals do not match its family"));
    }
    if lambda == 0 || f.family.len() <= x.len() {
        return Ok(true);
    }
    Ok(lambda <= f.core.len() && x.intersection(&f.core).count() >= lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::matrix::is_distinguishing;

    fn fam(sets: &[&[usize]]) -> SetFamily {
        SetFamily::new(sets.iter().map(|s| s.iter().copied().collect()).collect())
    }

    #[test]
    fn weak_delta_examples() {
        assert_eq!(weak_delta_lambda(&fam(&[&[1, 2], &[3, 4], &[5, 6]])).unwrap(), Some(0));
        assert_eq!(weak_delta_lambda(&fam(&[&[1, 5], &[6, 7]])).unwrap(), Some(0));
        assert_eq!(weak_delta_lambda(&fam(&[&[1, 2], &[2, 3], &[1, 3]])).unwrap(), Some(1));
        assert_eq!(weak_delta_lambda(&fam(&[&[1, 2], &[2, 3], &[4, 5]])).unwrap(), None);
        assert!(weak_delta_lambda(&fam(&[&[1]])).is_err());
    }

    #[test]
    fn sunflower_examples() {
        assert!(sunflower_core(&fam(&[&[1, 2], &[2, 3], &[1, 3]])).unwrap().is_none());
        let disjoint = sunflower_core(&fam(&[&[1, 2], &[3], &[4, 5]])).unwrap().unwrap();
        assert!(disjoint.core().is_empty());
        assert_eq!(disjoint.petals(), disjoint.family().sets());
        assert!(sunflower_core(&fam(&[&[1]])).is_err());
    }

    #[test]
    fn sunflower_fixture_core_and_petals() {
        let m = fixtures::sunflower_7x10();
        let fam = column_system(&m, &[1, 2, 3, 4, 5, 6]).unwrap();
        let f = sunflower_core(&fam).unwrap().unwrap();
        assert_eq!(f.core(), &BTreeSet::from([1, 2]));
        let expected: Vec<BTreeSet<usize>> = vec![
            BTreeSet::from([4, 9]),
            BTreeSet::from([7]),
            BTreeSet::from([3, 10]),
            BTreeSet::from([6, 8]),
            BTreeSet::from([5]),
            BTreeSet::new(),
        ];
        assert_eq!(f.petals(), expected.as_slice());
        assert_eq!(f.lambda(), 2);
    }

    #[test]
    fn deza_values() {
        assert_eq!(deza_threshold(1), 2);
        assert_eq!(deza_threshold(2), 4);
        assert_eq!(deza_threshold(5), 22);
    }

    #[test]
    fn solve_sunflower_fixture() {
        let m = fixtures::sunflower_7x10();
        let sol = solve_sunflower(&m).unwrap();
        assert_eq!(sol.len(), 6);
        assert_eq!(sol.columns(), &[1, 3, 4, 5, 6, 7]);
        assert!(is_distinguishing(&m, &sol).unwrap());
    }

    #[test]
    fn solve_sunflower_singleton_petals() {
        // rows e_1..e_4 plus the null row
        let mut rows: Vec<Vec<u32>> = (0..4).map(|i| (0..4).map(|j| (i == j) as u32).collect()).collect();
        rows.push(vec![0; 4]);
        let m = Matrix::new(rows).unwrap();
        assert_eq!(solve_sunflower(&m).unwrap().len(), 4);
    }

    #[test]
    fn solve_sunflower_rejects_non_sunflower() {
        let m = Matrix::new(vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1], vec![0, 0, 0]]).unwrap();
        assert!(matches!(solve_sunflower(&m), Err(DvError::Domain(_))));
        let no_null = Matrix::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert!(solve_sunflower(&no_null).is_err());
    }

    #[test]
    fn intersection_check() {
        let pairs = fam(&[&[1, 2], &[3, 4], &[5, 6], &[7, 8], &[9, 10]]);
        let f = sunflower_core(&pairs).unwrap().unwrap();
        assert!(!sunflower_intersection_check(&f, &BTreeSet::from([1, 3, 5]), 1).unwrap());
        assert!(sunflower_intersection_check(&f, &BTreeSet::from([1, 3, 5]), 0).unwrap());
        let m = fixtures::sunflower_7x10();
        let flower = sunflower_core(&column_system(&m, &[1, 2, 3, 4, 5, 6]).unwrap()).unwrap().unwrap();
        assert!(sunflower_intersection_check(&flower, &BTreeSet::from([1]), 1).unwrap());
    }
}

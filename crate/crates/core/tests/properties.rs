//! Property tests for the documented invariants, checked against the
//! brute-force references in `common`.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use dv_core::generators::{self, Graph};
use dv_core::hitting_set::{dv_to_hitting_set, greedy_factor_h, hitting_set_to_dv, hs_kernelize, HittingSetInstance};
use dv_core::io;
use dv_core::matrix::{distance_profile_with, hamming, is_distinguishing, restrict, weight};
use dv_core::reductions::{apply_rule_inessential, dominance_reduce, find_inessential_columns, preprocess_binary};
use dv_core::solvers::{
    classify, exact_subsets_search, minimum_solution_oracle_with, solve, solve_exact_branching, solve_exact_subsets,
    solve_poly_homogeneous, OracleLimits, PolyPath,
};
use dv_core::sunflower::{solve_sunflower, sunflower_core, SetFamily};
use dv_core::{distance_profile, DistanceProfile, Execution, Instance, Matrix, RegimeTag, Solution, Strategy as SolveStrategy};

use common::{max_d3is, min_dv, min_dv_of, min_hitting_set, polynomial_by_rule, profile, separates};

fn dedupe(rows: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = Vec::new();
    for r in rows {
        if !out.contains(&r) {
            out.push(r);
        }
    }
    out
}

/// Matrices with distinct rows; duplicates drawn by the generator are
/// dropped, so `n` is an upper bound.
fn matrix(n: std::ops::RangeInclusive<usize>, d: std::ops::RangeInclusive<usize>, sigma: u32) -> impl Strategy<Value = Matrix> {
    (n, d).prop_flat_map(move |(n, d)| {
        proptest::collection::vec(proptest::collection::vec(0..sigma, d), n)
            .prop_map(|rows| Matrix::new(dedupe(rows)).unwrap())
    })
}

fn binary_rows(d: usize) -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(0u32..2, d)
}

fn column_set(d: usize) -> impl Strategy<Value = Solution> {
    proptest::collection::btree_set(1..=d.max(1), 0..=d).prop_map(move |s| Solution::new(s.into_iter().filter(|&c| c <= d)).unwrap())
}

fn distances(rows: &[Vec<u32>]) -> Vec<usize> {
    let mut out = Vec::new();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            out.push(rows[i].iter().zip(&rows[j]).filter(|(a, b)| a != b).count());
        }
    }
    out
}

fn refines(a: &[u32], b: &[u32]) -> bool {
    let n = a.len();
    (0..n).all(|i| (0..n).all(|j| a[i] != a[j] || b[i] == b[j]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hamming_is_a_metric(x in binary_rows(8), y in binary_rows(8), z in binary_rows(8)) {
        let xy = hamming(&x, &y).unwrap();
        prop_assert_eq!(xy, hamming(&y, &x).unwrap());
        prop_assert!(hamming(&x, &z).unwrap() <= xy + hamming(&y, &z).unwrap());
    }

    #[test]
    fn hamming_from_weights(x in binary_rows(10), y in binary_rows(10)) {
        let common = x.iter().zip(&y).filter(|&(&a, &b)| a == 1 && b == 1).count();
        prop_assert_eq!(hamming(&x, &y).unwrap(), weight(&x).unwrap() + weight(&y).unwrap() - 2 * common);
    }

    #[test]
    fn distinguishing_is_monotone(m in matrix(2..=7, 1..=8, 3), extra in column_set(8)) {
        let d = m.d();
        let base = dv_core::solvers::minimum_solution_oracle(&m).unwrap();
        prop_assert!(is_distinguishing(&m, &base).unwrap());
        let superset = Solution::new(base.columns().iter().copied().chain(extra.columns().iter().copied().filter(|&c| c <= d))).unwrap();
        prop_assert!(is_distinguishing(&m, &superset).unwrap());
    }

    #[test]
    fn restriction_never_increases_distances(m in matrix(2..=7, 1..=8, 3), cols in column_set(8)) {
        prop_assume!(m.n() >= 2);
        let cols = Solution::new(cols.columns().iter().copied().filter(|&c| c <= m.d())).unwrap();
        let p = distance_profile(&m).unwrap();
        prop_assert!(p.min <= p.max);
        let full = distances(&m.rows());
        let sub: Vec<Vec<u32>> = restrict(&m, &cols).unwrap().rows().map(<[u32]>::to_vec).collect();
        for (a, b) in distances(&sub).iter().zip(&full) {
            prop_assert!(a <= b);
        }
    }

    #[test]
    fn matrix_file_round_trip(m in matrix(1..=6, 0..=6, 4), tag in any::<u64>()) {
        let path = std::env::temp_dir().join(format!("dv-prop-{}-{tag}.dvm", std::process::id()));
        io::save_matrix(&m, &path).unwrap();
        let back = io::load_matrix(&path).unwrap();
        std::fs::remove_file(&path).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn rules_preserve_answers(m in matrix(2..=8, 1..=10, 3)) {
        let before = min_dv_of(&m);
        let (dom, _) = dominance_reduce(&m);
        prop_assert_eq!(min_dv_of(&dom), before);
        prop_assert_eq!(&dominance_reduce(&dom).0, &dom);
        let cols: Vec<Vec<u32>> = (0..dom.d()).map(|j| dom.column0(j)).collect();
        for a in 0..cols.len() {
            for b in 0..cols.len() {
                prop_assert!(a == b || !refines(&cols[a], &cols[b]), "column {} refines {}", a + 1, b + 1);
            }
        }
        if m.is_binary() {
            let (pre, rep) = preprocess_binary(&m).unwrap();
            prop_assert_eq!(min_dv_of(&pre), before);
            prop_assert_eq!(&preprocess_binary(&pre).unwrap().0, &pre);
            prop_assert_eq!(pre.rows().iter().filter(|r| r.iter().all(|&s| s == 0)).count(), 1);
            let pcols: BTreeSet<Vec<u32>> = (0..pre.d()).map(|j| pre.column0(j)).collect();
            prop_assert_eq!(pcols.len(), pre.d());
            prop_assert!(pre.d() <= m.d().min(1 << m.n()));
            prop_assert_eq!(rep.kept.len() + rep.deleted.len(), m.d());
            let (ess, _) = apply_rule_inessential(&m).unwrap();
            prop_assert_eq!(min_dv_of(&ess), before);
            prop_assert!(find_inessential_columns(&ess).is_empty());
            prop_assert_eq!(&apply_rule_inessential(&ess).unwrap().0, &ess);
        }
    }

    #[test]
    fn sunflower_reconstruction(sets in proptest::collection::vec(proptest::collection::btree_set(1usize..12, 0..5), 2..7)) {
        let family = SetFamily::new(sets);
        prop_assume!(family.len() >= 2);
        if let Some(f) = sunflower_core(&family).unwrap() {
            for (set, petal) in family.sets().iter().zip(f.petals()) {
                let rebuilt: BTreeSet<usize> = f.core().union(petal).copied().collect();
                prop_assert_eq!(&rebuilt, set);
                prop_assert!(petal.is_disjoint(f.core()));
            }
            for i in 0..f.petals().len() {
                for j in i + 1..f.petals().len() {
                    prop_assert!(f.petals()[i].is_disjoint(&f.petals()[j]));
                }
            }
        }
    }

    #[test]
    fn sunflower_solution_is_minimum(petals in proptest::collection::vec(0usize..3, 1..=8), core in 0usize..3, seed in any::<u64>()) {
        prop_assume!(petals.iter().filter(|&&p| p == 0).count() <= 1);
        prop_assume!(core > 0 || !petals.contains(&0));
        let m = generators::gen_sunflower(&petals, core, seed).unwrap();
        prop_assume!(m.d() <= 16);
        let sol = solve_sunflower(&m).unwrap();
        prop_assert!(separates(&m.rows(), sol.columns()));
        prop_assert_eq!(sol.len(), m.n() - 1);
        prop_assert_eq!(min_dv_of(&m), m.n() - 1);
    }

    #[test]
    fn classification_is_total(h in 1usize..40, gap in 0usize..40, sigma in 1usize..5) {
        let big_h = h + gap;
        let r = classify(DistanceProfile { min: h, max: big_h }, sigma);
        let want = if sigma > 2 {
            RegimeTag::UnknownNonBinary
        } else if polynomial_by_rule(h, big_h) {
            RegimeTag::PolynomialBinary
        } else {
            RegimeTag::NPCompleteBinary
        };
        prop_assert_eq!(r.tag, want);
        let np_by_cells = if h % 2 == 0 { big_h >= h + 2 } else { big_h >= h + 3 };
        if sigma <= 2 {
            prop_assert_eq!(r.tag == RegimeTag::NPCompleteBinary, np_by_cells);
        }
    }

    #[test]
    fn poly_solver_matches_oracle(n in 3usize..=9, d in 3usize..=12, alpha in 1usize..=6, odd_gap in any::<bool>(), step in 0usize..=1, seed in any::<u64>()) {
        let (alpha, beta) = if odd_gap { (alpha | 1, (alpha | 1) + 2) } else { (alpha, alpha + step) };
        prop_assume!(beta <= d);
        let Some(m) = generators::gen_random_profile(n, d, alpha, beta, seed, 30).unwrap() else {
            return Ok(());
        };
        let want = min_dv_of(&m);
        for k in [want.saturating_sub(1), want, d] {
            let out = solve_poly_homogeneous(&Instance::new(m.clone(), k)).unwrap();
            match out.solution {
                Some(s) => {
                    prop_assert!(k >= want);
                    prop_assert_eq!(s.len(), want);
                    prop_assert!(separates(&m.rows(), s.columns()));
                }
                None => prop_assert!(k < want),
            }
            if out.report.path == PolyPath::Matching {
                let a = out.report.profile.unwrap().min;
                let count = |w: usize| out.report.class_sizes.get(&w).copied().unwrap_or(0);
                prop_assert_eq!(count(a + 1), count(a + 2) + a / 2);
            }
        }
    }

    #[test]
    fn strategies_agree(m in matrix(2..=8, 1..=9, 3), k in 0usize..10) {
        let inst = Instance::new(m.clone(), k);
        let want = min_dv_of(&m);
        let exact = solve_exact_subsets(&inst);
        let branch = solve_exact_branching(&inst);
        prop_assert_eq!(exact.as_ref().map(Solution::len), branch.as_ref().map(Solution::len));
        prop_assert_eq!(exact.is_some(), want <= inst.k());
        for strategy in [SolveStrategy::Auto, SolveStrategy::Exact, SolveStrategy::Branch] {
            let out = solve(&inst, strategy).unwrap();
            prop_assert_eq!(out.solution.is_some(), want <= inst.k());
            if let Some(s) = out.solution {
                prop_assert!(s.len() <= inst.k());
                prop_assert!(is_distinguishing(&m, &s).unwrap());
                prop_assert_eq!(s.len(), want);
            }
        }
    }

    #[test]
    fn sequential_and_parallel_agree(m in matrix(2..=8, 1..=10, 3), k in 0usize..10) {
        prop_assume!(m.n() >= 2);
        let inst = Instance::new(m.clone(), k);
        prop_assert_eq!(
            exact_subsets_search(&inst, Execution::Sequential),
            exact_subsets_search(&inst, Execution::Parallel)
        );
        let limits = OracleLimits::default();
        prop_assert_eq!(
            minimum_solution_oracle_with(&m, limits, Execution::Sequential).unwrap(),
            minimum_solution_oracle_with(&m, limits, Execution::Parallel).unwrap()
        );
        prop_assert_eq!(
            distance_profile_with(&m, Execution::Sequential).unwrap(),
            distance_profile_with(&m, Execution::Parallel).unwrap()
        );
    }

    #[test]
    fn hitting_set_bridge(m in matrix(2..=8, 1..=10, 3)) {
        let image = dv_to_hitting_set(&Instance::new(m.clone(), m.d()));
        let (_, big_h) = profile(&m.rows());
        prop_assert!(image.sets().iter().all(|s| s.len() <= big_h));
        prop_assert_eq!(min_hitting_set(image.universe_size(), image.sets()), Some(min_dv_of(&m)));
        let g = greedy_factor_h(&Instance::new(m.clone(), m.d()));
        prop_assert!(is_distinguishing(&m, &g).unwrap());
        prop_assert!(g.len() <= big_h * min_dv_of(&m));
    }

    #[test]
    fn hitting_set_to_dv_keeps_minimum(u in 1usize..=10, raw in proptest::collection::vec(proptest::collection::btree_set(1usize..=10, 1..=4), 1..=7)) {
        let sets: Vec<Vec<usize>> = raw.into_iter().map(|s| s.into_iter().filter(|&e| e <= u).collect::<Vec<_>>()).filter(|s| !s.is_empty()).collect();
        prop_assume!(!sets.is_empty());
        let hs = HittingSetInstance::new(u, sets.clone(), u).unwrap();
        let image = hitting_set_to_dv(&hs).unwrap();
        prop_assert_eq!(min_dv_of(&image.matrix), min_hitting_set(u, &sets).unwrap());
    }

    #[test]
    fn hs_kernel_preserves_answers(u in 1usize..=9, k in 0usize..=4, raw in proptest::collection::vec(proptest::collection::btree_set(1usize..=9, 1..=3), 1..=12)) {
        let sets: Vec<Vec<usize>> = raw.into_iter().map(|s| s.into_iter().filter(|&e| e <= u).collect::<Vec<_>>()).filter(|s| !s.is_empty()).collect();
        prop_assume!(!sets.is_empty());
        let hs = HittingSetInstance::new(u, sets.clone(), k).unwrap();
        let yes = min_hitting_set(u, &sets).unwrap() <= k;
        let out = hs_kernelize(&hs);
        prop_assert!(out.within_bound);
        match out.instance {
            None => prop_assert!(!yes),
            Some(kernel) => {
                prop_assert!(kernel.sets().len() as u128 <= out.bound);
                prop_assert_eq!(min_hitting_set(kernel.universe_size(), kernel.sets()).unwrap() <= k, yes);
            }
        }
    }

    #[test]
    fn random_profile_postcondition(n in 2usize..=8, d in 2usize..=10, alpha in 1usize..=5, gap in 0usize..=3, seed in any::<u64>()) {
        let beta = alpha + gap;
        prop_assume!(beta <= d);
        let first = generators::gen_random_profile(n, d, alpha, beta, seed, 10).unwrap();
        prop_assert_eq!(&first, &generators::gen_random_profile(n, d, alpha, beta, seed, 10).unwrap());
        if let Some(m) = first {
            prop_assert_eq!(profile(&m.rows()), (alpha, beta));
            prop_assert_eq!(m.n(), n);
        }
    }

    #[test]
    fn hardness_construction_identity(n in 4usize..=7, p in 0.3f64..0.7, seed in any::<u64>()) {
        let g = Graph::random(n, p, seed);
        let best = max_d3is(n, g.edges());
        if let Ok(inst) = generators::from_graph_d3is(&g, best) {
            let rows = inst.matrix.rows();
            prop_assert_eq!(profile(&rows), (2, 4));
            prop_assert_eq!(min_dv(&rows), n - best);
            // padding needs row 1 to have a partner at distance 4
            let dists: Vec<usize> = rows[1..].iter().map(|r| r.iter().zip(&rows[0]).filter(|(x, y)| x != y).count()).collect();
            if !dists.contains(&4) {
                prop_assert!(generators::pad_case1(&inst, 0).is_err());
                return Ok(());
            }
            for a in 0..=2usize {
                for b in 0..=1usize {
                    let padded = generators::pad_case2(&inst, a, b).unwrap();
                    if padded.matrix.d() > 14 {
                        continue;
                    }
                    let prow = padded.matrix.rows();
                    prop_assert_eq!(profile(&prow), (2 + a, 4 + 2 * a.div_ceil(2) + b));
                    prop_assert_eq!(min_dv(&prow), n - best);
                    prop_assert_eq!(padded.k(), inst.k());
                }
                let one = generators::pad_case1(&inst, a).unwrap();
                prop_assert_eq!(profile(&one.matrix.rows()), (1, 4 + a));
                prop_assert_eq!(min_dv(&one.matrix.rows()), n - best + 1);
                prop_assert_eq!(one.k(), inst.k() + 1);
            }
        }
    }
}

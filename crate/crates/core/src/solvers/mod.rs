//! Solvers: regime classification, exact searches, the brute-force oracle
//! and the homogeneous polynomial-time algorithms.

pub mod branching;
pub mod classify;
pub mod dispatch;
pub mod exact;
pub mod matching;
pub mod oracle;
pub mod poly;
pub mod weight_classes;

pub use branching::{branching_search, solve_exact_branching};
pub use classify::{classify, polynomial_ceiling, Regime, RegimeTag};
pub use dispatch::{solve, solve_with, SolveOutcome, SolveReport, SolverPath, Strategy};
pub use exact::{exact_subsets_search, solve_exact_subsets, SearchResult};
pub use matching::hall_matching;
pub use oracle::{minimum_solution_oracle, minimum_solution_oracle_with, OracleLimits};
pub use poly::{reduce_binary, solve_poly_homogeneous, solve_poly_reduced, PolyOutcome, PolyPath, PolyReport, ReducedMatrix};
pub use weight_classes::{analyze_weight_classes, WeightClassAnalysis};

//! Strategy selection.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{DvError, Result};
use crate::exec::Execution;
use crate::matrix::{distance_profile, DistanceProfile, Instance, Solution};
use crate::solvers::branching::branching_search;
use crate::solvers::classify::{classify, Regime};
use crate::solvers::exact::exact_subsets_search;
use crate::solvers::poly::{reduce_binary, solve_poly_homogeneous, solve_poly_reduced, PolyReport};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    #[default]
    Auto,
    Exact,
    Branch,
    Poly,
}

impl FromStr for Strategy {
    type Err = DvError;

    fn from_str(s: &str) -> Result<Strategy> {
        match s {
            "auto" => Ok(Strategy::Auto),
            "exact" => Ok(Strategy::Exact),
            "branch" => Ok(Strategy::Branch),
            "poly" => Ok(Strategy::Poly),
            other => Err(DvError::domain(format!("unknown strategy {other:?}"))),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Auto => "auto",
            Strategy::Exact => "exact",
            Strategy::Branch => "branch",
            Strategy::Poly => "poly",
        })
    }
}

/// Which solver produced the answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverPath {
    Trivial,
    Exact,
    Branching,
    Poly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub strategy: Strategy,
    pub path: SolverPath,
    /// Profile of the input matrix (absent for a single row).
    pub profile: Option<DistanceProfile>,
    /// Regime that drove the choice; for binary input it refers to the
    /// profile after preprocessing and inessential-column removal, or to the
    /// input profile when only that one is polynomial.
    pub regime: Option<Regime>,
    pub poly: Option<PolyReport>,
    /// Subsets tested or search-tree nodes visited.
    pub work: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    pub solution: Option<Solution>,
    pub report: SolveReport,
}

pub fn solve(inst: &Instance, strategy: Strategy) -> Result<SolveOutcome> {
    solve_with(inst, strategy, Execution::default())
}

/// Minimum solution of size at most `k`, or `None`. Every strategy gives
/// the same yes/no answer and the same solution size. `Auto` reduces binary
/// input, classifies the reduced profile and uses the homogeneous solver
/// when it applies, the branching solver otherwise.
pub fn solve_with(inst: &Instance, strategy: Strategy, exec: Execution) -> Result<SolveOutcome> {
    let m = &inst.matrix;
    let profile = if m.n() >= 2 { Some(distance_profile(m)?) } else { None };
    let mut report = SolveReport {
        strategy,
        path: SolverPath::Trivial,
        profile,
        regime: None,
        poly: None,
        work: 0,
    };
    if m.n() <= 1 {
        return Ok(SolveOutcome {
            solution: Some(Solution::empty()),
            report,
        });
    }
    let solution = match strategy {
        Strategy::Exact => {
            let r = exact_subsets_search(inst, exec);
            report.path = SolverPath::Exact;
            report.work = r.candidates;
            r.solution
        }
        Strategy::Branch => {
            let (s, nodes) = branching_search(inst);
            report.path = SolverPath::Branching;
            report.work = nodes;
            s
        }
        Strategy::Poly => {
            let out = solve_poly_homogeneous(inst)?;
            report.path = SolverPath::Poly;
            report.work = out.report.candidates;
            report.poly = Some(out.report);
            out.solution
        }
        Strategy::Auto => {
            let mut poly = None;
            if m.sigma_size() <= 2 {
                let reduced = reduce_binary(m)?;
                if reduced.matrix.n() >= 2 {
                    let mut regime = classify(distance_profile(&reduced.matrix)?, 2);
                    if !regime.is_polynomial() {
                        if let Some(input) = reduced.input_profile.map(|p| classify(p, 2)).filter(Regime::is_polynomial) {
                            regime = input;
                        }
                    }
                    if regime.is_polynomial() {
                        poly = Some(solve_poly_reduced(&reduced, inst.k())?);
                    }
                    report.regime = Some(regime);
                }
            } else {
                report.regime = profile.map(|p| classify(p, m.sigma_size()));
            }
            match poly {
                Some(out) => {
                    report.path = SolverPath::Poly;
                    report.work = out.report.candidates;
                    report.poly = Some(out.report);
                    out.solution
                }
                None => {
                    let (s, nodes) = branching_search(inst);
                    report.path = SolverPath::Branching;
                    report.work = nodes;
                    s
                }
            }
        }
    };
    Ok(SolveOutcome { solution, report })
}

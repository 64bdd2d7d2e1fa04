//! Distinct Vectors: choose at most `k` columns of a matrix so that all rows
//! stay pairwise distinct.
//!
//! The crate bundles the data reduction rules, sunflower machinery, exact and
//! polynomial-time solvers, kernels, the Hitting Set bridge and generators
//! for instances with a prescribed distance profile. Data-parallel loops run
//! on rayon when the `parallel` feature is on (the default); see [`exec`].

pub mod bitset;
pub mod error;
pub mod exec;
pub mod fixtures;
pub mod generators;
pub mod hitting_set;
pub mod io;
pub mod matrix;
pub mod reductions;
pub mod solvers;
pub mod sunflower;

pub use bitset::BitSet;
pub use error::{DvError, Result};
pub use exec::Execution;
pub use hitting_set::HittingSetInstance;
pub use matrix::{distance_profile, is_distinguishing, DistanceProfile, Instance, Matrix, Solution, Symbol};
pub use reductions::Kernel;
pub use solvers::{solve, Regime, RegimeTag, Strategy};

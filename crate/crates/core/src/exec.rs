//! Execution strategy for the data-parallel loops (subset sweeps, pairwise
//! scans, batch evaluation).
//!
//! Results never depend on the strategy: every parallel helper here is
//! order-preserving, so `Parallel` and `Sequential` return identical values.
//! Without the `parallel` feature, `Parallel` silently runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    #[default]
    Parallel,
    Sequential,
}

impl Execution {
    #[inline]
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// First `Some` produced by `f` over `0..len`, in index order.
pub fn find_map_first<T, F>(exec: Execution, len: usize, f: F) -> Option<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..len).into_par_iter().find_map_first(f);
    }
    let _ = exec;
    (0..len).find_map(f)
}

/// `f` applied to each index of `0..len`, collected in index order.
pub fn map_indexed<T, F>(exec: Execution, len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..len).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..len).map(f).collect()
}

/// Applies `f` to each item of `items`, preserving order.
pub fn map_slice<I, T, F>(exec: Execution, items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        for exec in [Execution::Parallel, Execution::Sequential] {
            let first = find_map_first(exec, 10_000, |i| (i % 977 == 976).then_some(i));
            assert_eq!(first, Some(976));
            let squares = map_indexed(exec, 100, |i| i * i);
            assert_eq!(squares[99], 9801);
            assert_eq!(map_slice(exec, &[1, 2, 3], |x| x + 1), vec![2, 3, 4]);
        }
    }
}

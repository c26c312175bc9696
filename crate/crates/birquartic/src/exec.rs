//! Sequential / data-parallel execution of independent work items.
//!
//! The heavy sweeps in this crate (randomized relation checks, descent
//! batches, exhaustive lattice scans) are embarrassingly parallel. With the
//! `parallel` feature (on by default) they fan out over rayon; without it
//! the same entry points run sequentially. Results are collected in input
//! order either way, so output bytes do not depend on the mode.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Execution mode for a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for ExecMode {
    #[cfg(feature = "parallel")]
    fn default() -> Self {
        ExecMode::Parallel
    }

    #[cfg(not(feature = "parallel"))]
    fn default() -> Self {
        ExecMode::Sequential
    }
}

impl ExecMode {
    /// Mode for a requested number of jobs; `Some(1)` forces sequential.
    pub fn for_jobs(jobs: Option<usize>) -> Self {
        match jobs {
            Some(1) => ExecMode::Sequential,
            _ => ExecMode::default(),
        }
    }
}

/// Maps `f` over `items`, preserving order.
pub fn map_items<T, U, F>(mode: ExecMode, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    match mode {
        ExecMode::Sequential => items.into_iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => items.into_par_iter().map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let items: Vec<u64> = (0..100).collect();
        let seq = map_items(ExecMode::Sequential, items.clone(), |x| x * x);
        #[cfg(feature = "parallel")]
        {
            let par = map_items(ExecMode::Parallel, items, |x| x * x);
            assert_eq!(seq, par);
        }
        #[cfg(not(feature = "parallel"))]
        assert_eq!(seq.len(), items.len());
    }
}

//! Execution strategy for the range-splittable loops (counting sweeps,
//! k-sweeps, grid checks).
//!
//! With the `parallel` feature (on by default) [`Strategy::Parallel`] runs on
//! the rayon pool; without it, both strategies run sequentially. All helpers
//! return results in range order, so output never depends on scheduling.

use std::ops::RangeInclusive;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

impl Strategy {
    /// Whether work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Strategy::Parallel
    }
}

/// Sum of `f(i)` over the range.
pub fn sum_range<F>(strategy: Strategy, range: RangeInclusive<u64>, f: F) -> u64
where
    F: Fn(u64) -> u64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        return range.into_par_iter().map(f).sum();
    }
    let _ = strategy;
    range.map(f).sum()
}

/// Elements of the range satisfying `pred`, in increasing order.
pub fn filter_range<F>(strategy: Strategy, range: RangeInclusive<u64>, pred: F) -> Vec<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        return range.into_par_iter().filter(|&i| pred(i)).collect();
    }
    let _ = strategy;
    range.filter(|&i| pred(i)).collect()
}

/// Concatenation of `f(i)` over the range, in range order.
pub fn flat_map_range<T, F>(strategy: Strategy, range: RangeInclusive<u64>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> Vec<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        return range.into_par_iter().flat_map_iter(f).collect();
    }
    let _ = strategy;
    range.flat_map(f).collect()
}

/// `f` applied to every item, order preserved.
pub fn map_slice<T, U, F>(strategy: Strategy, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = strategy;
    items.iter().map(f).collect()
}

/// Splits `1..=x` into contiguous chunks of at most `chunk` elements.
pub fn chunks(x: u64, chunk: u64) -> Vec<RangeInclusive<u64>> {
    let chunk = chunk.max(1);
    let mut out = Vec::new();
    let mut lo = 1;
    while lo <= x {
        let hi = x.min(lo.saturating_add(chunk - 1));
        out.push(lo..=hi);
        lo = hi + 1;
    }
    out
}

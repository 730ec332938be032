//! Data-parallel loop helpers.
//!
//! With the `parallel` feature the helpers run on the current rayon pool;
//! inside a single-thread pool, or without the feature, they take the plain
//! sequential path. Every helper returns results in input order, so callers
//! that only fold integers or fold floats sequentially over the returned
//! vector get identical output for any thread count.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// True when loops will actually be spread over more than one worker.
pub fn is_parallel() -> bool {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads() > 1
    }
    #[cfg(not(feature = "parallel"))]
    {
        false
    }
}

/// Runs `op` with at most `threads` workers. `threads == 0` keeps the
/// ambient pool.
pub fn with_threads<R: Send>(threads: usize, op: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        if threads == 0 {
            return op();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(op),
            Err(_) => op(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        op()
    }
}

/// Order-preserving map over a slice.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

/// Order-preserving map over an index range.
pub fn map_range<R, F>(range: Range<usize>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        return range.into_par_iter().map(f).collect();
    }
    range.map(f).collect()
}

/// Integer sum over an index range; exact, so reduction order is irrelevant.
pub fn sum_range<F>(range: Range<usize>, f: F) -> u64
where
    F: Fn(usize) -> u64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        return range.into_par_iter().map(f).sum();
    }
    range.map(f).sum()
}

/// True if `pred` holds for every index.
pub fn all_range<F>(range: Range<usize>, pred: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        return range.into_par_iter().all(pred);
    }
    range.into_iter().all(pred)
}

/// Neumaier-compensated sum, evaluated in slice order.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let vals = [1.0, 1e-16, 1e-16, -1.0];
        assert_eq!(compensated_sum(vals), 2e-16);
    }

    #[test]
    fn single_thread_pool_matches_default() {
        let a = with_threads(1, || map_range(0..1000, |i| i * i));
        let b = map_range(0..1000, |i| i * i);
        assert_eq!(a, b);
        assert_eq!(with_threads(1, || sum_range(0..100, |i| i as u64)), 4950);
    }
}

//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature the helpers use rayon when asked to; without
//! it every call runs sequentially. Results always come back in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Whether parallel execution is compiled in.
pub const PARALLEL_AVAILABLE: bool = cfg!(feature = "parallel");

/// Maps `f` over `items`, preserving order.
pub fn map<T, R, F>(items: &[T], parallel: bool, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return items.par_iter().map(f).collect();
    }
    let _ = parallel;
    items.iter().map(f).collect()
}

/// The first item (in input order) for which `f` returns `Some`, together
/// with its index. Deterministic even when run in parallel.
pub fn find_first<T, R, F>(items: &[T], parallel: bool, f: F) -> Option<(usize, R)>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return items
            .par_iter()
            .enumerate()
            .find_map_first(|(i, x)| f(x).map(|r| (i, r)));
    }
    let _ = parallel;
    items.iter().enumerate().find_map(|(i, x)| f(x).map(|r| (i, r)))
}

/// Runs `op` on a pool of `jobs` threads (or inline when `jobs <= 1` or the
/// feature is off).
pub fn with_threads<R: Send>(jobs: usize, op: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    if jobs > 1 {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            return pool.install(op);
        }
    }
    let _ = jobs;
    op()
}

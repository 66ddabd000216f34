//! Data-parallel map over an index range, with a sequential fallback.
//!
//! Everything embarrassingly parallel in this crate (Monte Carlo replicas,
//! kernel-table sweeps, grid scans) funnels through [`indexed_map`]. With the
//! default `parallel` feature the work is dispatched through rayon; without it
//! the same closure runs on a plain iterator, which keeps the crate usable on
//! targets where a thread pool is unwelcome. Results are returned in index
//! order either way, so callers see identical output from both paths.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `0..n`, collecting results in index order.
pub fn indexed_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Sequential version of [`indexed_map`], available regardless of features.
///
/// Exists so benchmarks can compare the two paths in one build.
pub fn indexed_map_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree() {
        let a = indexed_map(100, |i| i * i);
        let b = indexed_map_seq(100, |i| i * i);
        assert_eq!(a, b);
    }
}

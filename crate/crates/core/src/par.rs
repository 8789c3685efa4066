//! Data-parallel sweeps over index ranges.
//!
//! With the `parallel` feature (on by default) big sweeps fan out over
//! rayon; without it everything runs sequentially through the same API.
//! The `_seq` variants are always sequential so benchmarks can compare
//! the two paths in a single build.

/// Below this many items the parallel path falls back to sequential.
pub const PAR_THRESHOLD: usize = 1 << 10;

/// Map a function over `0..n` sequentially.
pub fn map_indices_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

/// Map a function over `0..n`, in parallel when worthwhile.
#[cfg(feature = "parallel")]
pub fn map_indices<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    if n >= PAR_THRESHOLD {
        (0..n).into_par_iter().map(f).collect()
    } else {
        map_indices_seq(n, f)
    }
}

#[cfg(not(feature = "parallel"))]
pub fn map_indices<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    map_indices_seq(n, f)
}

/// `true` iff every index in `0..n` satisfies the predicate.
#[cfg(feature = "parallel")]
pub fn all_indices<F>(n: usize, f: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    use rayon::prelude::*;
    if n >= PAR_THRESHOLD {
        (0..n).into_par_iter().all(f)
    } else {
        (0..n).all(f)
    }
}

#[cfg(not(feature = "parallel"))]
pub fn all_indices<F>(n: usize, f: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    (0..n).all(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree() {
        let n = PAR_THRESHOLD + 17;
        let f = |k: usize| k.wrapping_mul(2654435761) % 1009;
        assert_eq!(map_indices(n, f), map_indices_seq(n, f));
        assert!(all_indices(n, |k| f(k) < 1009));
        assert!(!all_indices(n, |k| k < n - 1));
    }
}

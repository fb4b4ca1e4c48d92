//! Order-preserving data-parallel map used by every sweep in the crate.
//!
//! With the `parallel` feature (default) work fans out over the rayon
//! global pool; without it, or when [`Parallelism::Sequential`] is asked
//! for, items are processed in order on the calling thread. Results always
//! come back in input order so reports are byte-identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Parallelism {
    Sequential,
    #[default]
    Parallel,
}

impl Parallelism {
    /// `Parallel` when the crate was built with rayon, `Sequential` otherwise.
    pub fn available() -> Self {
        if cfg!(feature = "parallel") {
            Parallelism::Parallel
        } else {
            Parallelism::Sequential
        }
    }
}

pub fn map_ordered<T, R, F>(items: Vec<T>, mode: Parallelism, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        Parallelism::Parallel => items.into_par_iter().map(f).collect(),
        _ => items.into_iter().map(f).collect(),
    }
}

/// Like [`map_ordered`] but stops at the first error (in input order).
pub fn try_map_ordered<T, R, E, F>(items: Vec<T>, mode: Parallelism, f: F) -> Result<Vec<R>, E>
where
    T: Send,
    R: Send,
    E: Send,
    F: Fn(T) -> Result<R, E> + Sync + Send,
{
    map_ordered(items, mode, f).into_iter().collect()
}

/// Sizes the global worker pool. Returns false if the pool was already
/// initialised or the crate has no parallel backend.
pub fn configure_workers(threads: usize) -> bool {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .is_ok()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree_and_keep_order() {
        let items: Vec<i64> = (0..500).collect();
        let seq = map_ordered(items.clone(), Parallelism::Sequential, |x| x * x - 3);
        let par = map_ordered(items, Parallelism::Parallel, |x| x * x - 3);
        assert_eq!(seq, par);
        assert_eq!(seq[10], 97);
    }

    #[test]
    fn first_error_wins() {
        let r: Result<Vec<i64>, i64> =
            try_map_ordered((0..100).collect(), Parallelism::Parallel, |x| {
                if x % 30 == 29 {
                    Err(x)
                } else {
                    Ok(x)
                }
            });
        assert_eq!(r, Err(29));
    }
}

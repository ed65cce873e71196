//! Data-parallel helpers. With the `parallel` feature (on by default) the
//! heavy sweeps run on rayon; without it every [`Exec`] falls back to a
//! plain sequential loop. Results are always returned in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Execution strategy for the enumeration and certificate sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// `true` when this strategy will actually use worker threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Ordered map over a slice.
pub fn map_slice<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Ordered flat-map over `0..len` split into fixed-size chunks. Each chunk
/// produces a vector; the chunk vectors are concatenated in chunk order.
pub fn flat_map_chunks<R, F>(exec: Exec, len: u64, chunk: u64, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(std::ops::Range<u64>) -> Vec<R> + Sync + Send,
{
    let chunk = chunk.max(1);
    let count = len.div_ceil(chunk);
    let range_of = |i: u64| (i * chunk)..((i + 1) * chunk).min(len);

    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        let parts: Vec<Vec<R>> = (0..count).into_par_iter().map(|i| f(range_of(i))).collect();
        return parts.into_iter().flatten().collect();
    }
    let _ = exec;
    (0..count).flat_map(|i| f(range_of(i))).collect()
}

//! Row-partitioned execution of field updates.
//!
//! Every kernel in this crate writes disjoint output chunks (one grid row, or
//! one row of cells times all velocity nodes) and reads shared immutable
//! input. Results are therefore bitwise identical for [`Execution::Sequential`]
//! and [`Execution::Parallel`] and for any worker count.
//!
//! Without the `parallel` feature both variants run on the calling thread.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this build can actually run work on several threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Configure the global worker pool. Only meaningful with the `parallel`
/// feature; a second call after the pool exists is reported as an error.
pub fn init_thread_pool(threads: usize) -> Result<(), String> {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| e.to_string())
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        Ok(())
    }
}

/// Calls `f(chunk_index, chunk)` for every `chunk_len` slice of `data`.
pub(crate) fn for_each_chunk<T, F>(exec: Execution, data: &mut [T], chunk_len: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        data.par_chunks_mut(chunk_len)
            .enumerate()
            .for_each(|(r, c)| f(r, c));
        return;
    }
    let _ = exec;
    data.chunks_mut(chunk_len)
        .enumerate()
        .for_each(|(r, c)| f(r, c));
}

/// Like [`for_each_chunk`] over two equally shaped buffers at once.
pub(crate) fn for_each_chunk2<T, F>(exec: Execution, a: &mut [T], b: &mut [T], chunk_len: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T], &mut [T]) + Sync + Send,
{
    debug_assert_eq!(a.len(), b.len());
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        a.par_chunks_mut(chunk_len)
            .zip(b.par_chunks_mut(chunk_len))
            .enumerate()
            .for_each(|(r, (x, y))| f(r, x, y));
        return;
    }
    let _ = exec;
    a.chunks_mut(chunk_len)
        .zip(b.chunks_mut(chunk_len))
        .enumerate()
        .for_each(|(r, (x, y))| f(r, x, y));
}

/// Like [`for_each_chunk`] over three equally shaped buffers at once.
pub(crate) fn for_each_chunk3<T, F>(
    exec: Execution,
    a: &mut [T],
    b: &mut [T],
    c: &mut [T],
    chunk_len: usize,
    f: F,
) where
    T: Send,
    F: Fn(usize, &mut [T], &mut [T], &mut [T]) + Sync + Send,
{
    debug_assert!(a.len() == b.len() && b.len() == c.len());
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        a.par_chunks_mut(chunk_len)
            .zip(b.par_chunks_mut(chunk_len))
            .zip(c.par_chunks_mut(chunk_len))
            .enumerate()
            .for_each(|(r, ((x, y), z))| f(r, x, y, z));
        return;
    }
    let _ = exec;
    a.chunks_mut(chunk_len)
        .zip(b.chunks_mut(chunk_len))
        .zip(c.chunks_mut(chunk_len))
        .enumerate()
        .for_each(|(r, ((x, y), z))| f(r, x, y, z));
}

/// Maps `0..n` through `f` and collects in index order.
pub(crate) fn map_collect<R, F>(exec: Execution, n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

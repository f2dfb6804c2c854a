//! Execution-mode plumbing: data-parallel map with a sequential fallback.
//!
//! Batch work in this crate (catalog rows, curvature samples, per-component
//! criterion dispatch) is embarrassingly parallel over immutable inputs.
//! [`map_collect`] routes such work through rayon when compiled with the
//! `parallel` feature (the default) and [`ExecMode::Parallel`] is requested;
//! otherwise it runs a plain sequential loop.  Results always come back in
//! input order, so callers are deterministic regardless of mode.

/// How a batch should be executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExecMode {
    /// Use rayon's thread pool (falls back to sequential without the
    /// `parallel` feature).
    #[default]
    Parallel,
    /// Run in the calling thread, in input order.
    Sequential,
}

/// Applies `f` to every element of `items`, preserving input order.
#[cfg(feature = "parallel")]
pub fn map_collect<T, U, F>(mode: ExecMode, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    match mode {
        ExecMode::Parallel => items.into_par_iter().map(f).collect(),
        ExecMode::Sequential => items.into_iter().map(f).collect(),
    }
}

/// Applies `f` to every element of `items`, preserving input order.
#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, U, F>(_mode: ExecMode, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    items.into_iter().map(f).collect()
}

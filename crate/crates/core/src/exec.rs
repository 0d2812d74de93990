//! Pluggable execution of independent work items.
//!
//! Searches split into independent subproblems and sweeps into independent
//! parameter points. An [`Executor`] maps a function over those items and
//! must return results in input order; all merging is done by the caller
//! in that order, so every executor yields identical output.

use alloc::vec::Vec;

pub trait Executor: Sync {
    /// Applies `f` to every item (with its index) and returns the results in order.
    fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(usize, &T) -> R + Sync;
}

/// Runs everything on the calling thread.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(usize, &T) -> R + Sync,
    {
        items.iter().enumerate().map(|(i, t)| f(i, t)).collect()
    }
}

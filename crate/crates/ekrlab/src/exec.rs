//! Thread-pool executor.

use ekrlab_core::exec::Executor;
use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuildError, ThreadPoolBuilder};

/// Runs work items on a dedicated pool of `workers` threads.
pub struct Pool {
    pool: ThreadPool,
}

impl Pool {
    pub fn new(workers: usize) -> Result<Self, ThreadPoolBuildError> {
        let pool = ThreadPoolBuilder::new().num_threads(workers.max(1)).build()?;
        Ok(Pool { pool })
    }

    pub fn workers(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl Executor for Pool {
    fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(usize, &T) -> R + Sync,
    {
        // `collect` on an indexed parallel iterator keeps input order.
        self.pool
            .install(|| items.par_iter().enumerate().map(|(i, t)| f(i, t)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_order() {
        let pool = Pool::new(4).unwrap();
        let items: Vec<u64> = (0..1000).collect();
        let out = pool.map(&items, |i, &x| (i as u64) * 1000 + x);
        assert_eq!(out, (0..1000).map(|x| x * 1001).collect::<Vec<_>>());
    }
}

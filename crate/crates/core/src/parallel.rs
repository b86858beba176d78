//! Worker-count handling. All fan-out goes through [`Workers::map`], which
//! preserves input order so results never depend on the worker count.

use std::num::NonZeroUsize;

use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Workers(NonZeroUsize);

impl Workers {
    pub fn new(n: usize) -> Self {
        Workers(NonZeroUsize::new(n).unwrap_or(NonZeroUsize::MIN))
    }

    pub fn single() -> Self {
        Workers(NonZeroUsize::MIN)
    }

    pub fn available() -> Self {
        Workers(std::thread::available_parallelism().unwrap_or(NonZeroUsize::MIN))
    }

    pub fn get(self) -> usize {
        self.0.get()
    }

    /// Order-preserving parallel map.
    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        if self.get() == 1 || items.len() < 2 {
            return items.iter().map(f).collect();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(self.get()).build() {
            Ok(pool) => pool.install(|| items.par_iter().map(f).collect()),
            Err(_) => items.iter().map(f).collect(),
        }
    }
}

impl Default for Workers {
    fn default() -> Self {
        Workers::available()
    }
}

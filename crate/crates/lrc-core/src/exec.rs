//! Pluggable executor for the embarrassingly parallel loops.
//!
//! The core crate never spawns threads. Callers hand in an [`Exec`]; results are
//! always returned in index order and reduced sequentially by the caller, so the
//! output does not depend on how the work was scheduled.

use alloc::vec::Vec;

pub trait Exec: Sync {
    fn map<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl Exec for Sequential {
    fn map<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..n).map(f).collect()
    }
}

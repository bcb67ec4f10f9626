//! Rayon-backed executor. Results come back in index order, so every reduction
//! done by the core crate sees the same sequence regardless of thread count.

use lrc_core::exec::Exec;
use rayon::prelude::*;

use crate::error::{AppError, AppResult};

pub struct RayonExec {
    pool: rayon::ThreadPool,
}

impl RayonExec {
    pub fn new(threads: usize) -> AppResult<Self> {
        if threads == 0 {
            return Err(AppError::Usage("thread count must be at least 1".into()));
        }
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| AppError::Pool(e.to_string()))?;
        Ok(RayonExec { pool })
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl Exec for RayonExec {
    fn map<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        self.pool.install(|| (0..n).into_par_iter().map(f).collect())
    }
}

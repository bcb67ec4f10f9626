//! IO, configuration, parallel execution and the command line around `lrc-core`.

pub mod cli;
pub mod config;
pub mod criteria;
pub mod error;
pub mod format;
pub mod omega;
pub mod parallel;
pub mod report;

pub use error::{AppError, AppResult};

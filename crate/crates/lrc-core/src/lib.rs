//! Exact series algebra for the local/relative correspondence between local ℙ²
//! and the pair (ℙ², E), with E a smooth cubic.
//!
//! Everything here is exact rational arithmetic over `alloc`; file formats,
//! threads and the command line live in the companion `lrc` crate.

#![cfg_attr(not(test), no_std)]
extern crate alloc;

pub mod combinat;
pub mod elliptic;
pub mod error;
pub mod exec;
pub mod hae;
pub mod linalg;
pub mod locrel;
pub mod mirror;
pub mod ns;
pub mod quasimod;
pub mod rat;
pub mod series;
pub mod zpoly;

pub use error::{Error, Result};
pub use rat::Rat;
pub use series::{RatSeries, Var, EXACT};

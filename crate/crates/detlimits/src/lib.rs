//! Determinantal point processes from symmetric Schur measures and random
//! plane partitions: correlation kernels, local limit kernels, exact samplers
//! and law-of-large-numbers experiments.

pub mod cli;
pub mod combinatorics;
pub mod contour;
pub mod dpp;
pub mod error;
pub mod kernels;
pub mod lln;
pub mod specialfn;

pub use error::{Error, Result};

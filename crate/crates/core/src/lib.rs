//! Exact arithmetic for L-series of Anderson t-motives.

pub mod error;
pub mod completion;
pub mod ff;
pub mod lseries;
pub mod model;
pub mod motive;

pub use error::{Error, Result};

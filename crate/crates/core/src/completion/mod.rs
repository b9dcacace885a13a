//! Completions of `F_q(t)` at finite and infinite places, truncated to a fixed precision.

pub mod laurent;
pub mod local;
pub mod ntt;
pub mod place;

pub use laurent::{Laurent, LaurentValuation};
pub use local::{cartier_local, LocalElement, LocalRing, LocalThetaPoly, Valuation};
pub use place::Place;

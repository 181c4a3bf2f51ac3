//! Exact graded local cohomology over `QQ` and `QQ[t]`.

pub mod arith;
pub mod error;
pub mod groebner;
pub mod homology;
pub mod localcoh;
pub mod duality;
pub mod basechange;

pub use error::{Error, Result};

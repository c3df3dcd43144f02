//! Weil decorations of reflexive sheaves on toric varieties.

pub mod arith;
pub mod decorations;
pub mod divisors;
pub mod error;
pub mod gb;
pub mod hm;
pub mod linalg;
pub mod random;
pub mod toric;

pub use error::{Error, Result};

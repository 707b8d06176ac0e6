//! Exact computation with modules and algebras over the semifield F∞.

pub mod congruence;
pub mod constructions;
pub mod error;
pub mod fixtures;
pub mod poly;
pub mod primes;
pub mod scalars;
pub mod structures;
pub mod textio;

pub use error::{Error, Result, Witness};

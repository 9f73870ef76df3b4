pub mod arith;
pub mod error;

pub use error::{Error, Result};
pub mod field;
pub mod global;
pub mod lattice;
pub mod local_universality;
pub mod localfield;
pub mod potential;
pub mod report;
pub mod suite;

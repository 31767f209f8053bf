pub mod algebra;
pub mod dirac;
pub mod error;
pub mod fermion;
pub mod hardcore;
pub mod params;
pub mod report;
pub mod scalar;
pub mod sweep;

pub use error::{Error, Result};

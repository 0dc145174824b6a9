//! Exact invariants of Legendrian knots in R^3.

pub mod algebra;
pub mod dga;
pub mod diagram;
pub mod error;
pub mod repcat;
pub mod reps;
pub mod rulings;
pub mod satellite;

pub use error::{Error, Result};

//! Colored HOMFLY polynomials of algebraic links and Hilbert schemes of plane-curve
//! singularities, computed exactly and checked against each other.

pub mod coefficients;
pub mod error;
pub mod hilbert;
pub mod identities;
pub mod links;
pub mod skein;
pub mod symmetric;

pub use error::{Error, Result};

//! Exact construction and certification of two families of smooth toroidal
//! compactifications of complex ball quotients birational to bielliptic
//! surfaces.

pub mod cli;
pub mod constructions;
pub mod error;
pub mod field;
pub mod homology;
pub mod lattice;
pub mod surface;
pub mod torus;

pub use error::{Error, Result};
pub use field::{EisensteinNumber, Rational};

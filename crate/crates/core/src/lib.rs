//! Generalized Kneser hypergraphs, their chromatic numbers and the exact
//! geometry behind the Tverberg-type lower bounds.
//!
//! Simplices are bitmasks over labels `1..=64`; complexes are stored by their
//! facets. All geometry is exact over `BigRational`.

pub mod chromatic;
pub mod complex;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod kneser;
pub mod simplex;

pub use complex::SimplicialComplex;
pub use error::{Error, Result};
pub use kneser::Hypergraph;
pub use simplex::Simplex;

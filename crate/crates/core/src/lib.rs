//! Cluster algebras of skew-symmetric exchange matrices together with their
//! categorification by representations of type-A quivers.
//!
//! Vertices are 1-based everywhere in the public API.

pub mod barcode;
pub mod character;
pub mod laurent;
pub mod linalg;
pub mod mgs;
pub mod quiver;
pub mod repmod;
pub mod seed;
pub mod silting;
pub mod stability;

pub use laurent::{Exponents, LaurentError, LaurentPoly, RenderMode};
pub use quiver::{ExchangeMatrix, Quiver, QuiverError};

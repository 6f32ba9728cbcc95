//! Exact rational polyhedral computation.
//!
//! Everything is exact: scalars are arbitrary-precision rationals, and the
//! algorithms (double description vertex enumeration, Fourier–Motzkin
//! projection, two-phase simplex with Bland's rule, redundancy removal)
//! never round. On top of the geometric kernel sit extended-formulation
//! checks, the visit-time tour polytope, affine bridges between variable
//! blocks, and the `verify-paper` claim suite driven by the CLI.

pub mod bridge;
pub mod checks;
pub mod cli;
pub mod ef;
pub mod error;
pub mod fixtures;
pub mod fm;
pub mod gen;
pub mod matrix;
pub mod poly;
pub mod rat;
pub mod simplex;
pub mod textio;
pub mod tsp;

pub use error::{Error, Result};
pub use rat::Rat;

//! Exact incidence algebras `FI(X, R)` of finite posets, Jordan isomorphisms
//! between them and finite-dimensional algebras, and the decomposition of a
//! Jordan isomorphism into the near-sum of a homomorphism and an
//! anti-homomorphism.
//!
//! All arithmetic is exact: arbitrary-precision integers, rationals, and
//! integers modulo `n`. Nothing here uses floating point.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod io;
pub mod jordan;
pub mod linmap;
pub mod matrix;
pub mod poset;
pub mod random;
pub mod report;
pub mod ring;

pub use error::{Error, Result};

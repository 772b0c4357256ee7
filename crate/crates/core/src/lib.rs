//! Exact and numerical verification of the degree-scaled ("strange")
//! orthogonality of hydrogenic Laguerre functions, the uniqueness of that
//! scaling, the Laguerre/Meixner change of basis, and the difference operator
//! whose eigenfunctions are the resulting Meixner functions.
//!
//! Identities that hold exactly are checked in [`exact::Rational`]
//! arithmetic; Gauss-Laguerre quadrature and truncated sums serve as
//! independent floating oracles.

pub mod error;
pub mod exact;
pub mod integrate;
pub mod meixner_basis;
pub mod meixner_operator;
pub mod radial;
pub mod report;
pub mod specfun;
pub mod suites;
pub mod tables;
pub mod uniqueness;

pub use error::{Error, Result};
pub use exact::{Rational, RationalPoly};

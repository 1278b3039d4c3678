//! Exact computation of the Boros-Moll polynomials together with the
//! combinatorial machinery behind the positivity of their coefficients:
//! reluctant functions, Meixner (bi-)endofunctions, colored permutations,
//! the Foata bijection and its three-color extension, and the weighted
//! enumerations on both sides of the reduction from the double sum to the
//! single sum.
//!
//! Everything except [`boros_moll::integral_residual`] runs in exact
//! rational arithmetic.

pub mod bijections;
pub mod boros_moll;
mod error;
pub mod exactnum;
pub mod quadrature;
pub mod structures;
pub mod weights;

pub use error::{Error, Result};
pub use exactnum::{Poly, Rational};

//! Skew-symmetric linking forms on finite abelian groups, the complexes of
//! hyperbolic summands they carry, and low-degree bordism of Z/k-manifolds.
//!
//! Everything is exact: values of forms live in Q/Z as reduced fractions and
//! all lattice work goes through integer Smith normal form.

pub mod arith;
pub mod bordism;
mod error;
pub mod linkcomplex;
pub mod linking;
pub mod scomplex;
pub mod verify;

pub use error::{Error, Result};

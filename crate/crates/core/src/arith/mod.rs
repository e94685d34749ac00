//! Exact arithmetic: Q/Z values, finite abelian groups, integer Smith normal form.

mod group;
mod matrix;
mod primes;
mod qz;
mod snf;

pub use group::{
    hom_kernel, Congruence, Elements, FinAbGroup, GroupElement, GroupHom, SubgroupBasis,
    DEFAULT_ENUMERATION_CAP,
};
pub use matrix::{extended_gcd, hermite_rows, IntMatrix};
pub use primes::factorize;
pub use qz::QZValue;
pub use snf::{smith_normal_form, smith_normal_form_with, SnfOptions, SnfResult};

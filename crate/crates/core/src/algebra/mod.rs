//! Finite groups and cyclotomic scalars.

pub mod cyclotomic;
pub mod group;

pub use cyclotomic::{cyclotomic_polynomial, ratio, Cyclotomic, CyclotomicError};
pub use group::{group_from_spec, FiniteGroup, GroupError};

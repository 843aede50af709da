//! Coefficient fields and univariate polynomial kernels.

pub mod bpoly;
pub mod field;
pub mod fpfactor;
pub mod upoly;

pub use bpoly::BPoly;
pub use field::{Field, Fp, Ring, Rationals};

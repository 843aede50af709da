//! Dynamic evaluation over bivariate triangular sets.

pub mod d5poly;
pub mod driver;
pub mod linalg;
pub mod primitive;
pub mod triset;

pub use driver::branch;
pub use triset::{El, Halt, TriSet, D5};

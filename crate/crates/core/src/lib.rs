//! Rational Puiseux expansions, analytic factorization and genus of plane curves
//! over F_p and Q, computed with divide-and-conquer Newton-Puiseux and dynamic
//! evaluation over triangular sets.

pub mod algebra;
pub mod anfact;
pub mod cli;
pub mod ctx;
pub mod desing;
pub mod dynev;
pub mod error;
pub mod lifting;
pub mod oracle;
pub mod parse;
pub mod polygon;
pub mod polyring;
pub mod puiseux;
pub mod report;
pub mod trace;

pub use error::{Error, Result};

pub mod asymptotics;
pub mod cli;
pub mod curve;
pub mod error;
pub mod fixtures;
pub mod oracle;
pub mod percolation;
pub mod poly;
pub mod resolution;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};
pub use poly::{parse_rational, BivarPoly, ExactRational, Term, UniPoly};

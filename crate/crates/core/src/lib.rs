//! Exact local and global standard bases, ideal operations, and Lê–Greuel type
//! formulas for Euler characteristics of Milnor fibers and Milnor numbers.
//!
//! Everything is computed over the rationals. Local rings `O_{X,0}` are modelled
//! by polynomial rings with a local monomial order, so that polynomials with a
//! nonzero constant term are units.

pub mod error;
pub mod ideal;
pub mod legreuel;
pub mod parser;
pub mod ring;
pub mod script;
pub mod stdbasis;

pub use error::{Error, Result};

//! Exact coefficients, monomials, monomial orders, polynomials and polynomial matrices.

mod coeff;
pub mod gcd;
mod matrix;
mod monomial;
mod order;
mod poly;

pub use coeff::Coefficient;
pub use matrix::{jacobian, subsets, PolyMatrix};
pub use monomial::ExponentVector;
pub use order::{Block, MonomialOrder, OrderKind};
pub use poly::{Polynomial, Ring, RingSpec, Term};
pub(crate) use poly::same_ring;

//! Sparse exact multivariate polynomials over a [`Field`](crate::field::Field).

mod io;
mod monomial;
mod order;
mod polynomial;

pub use io::{cas_export, cas_export_ideals, CasDialect};
pub use monomial::{monomials_of_degree, Monomial, MAX_EXPONENT};
pub use order::{MonomialOrder, OrderKind};
pub use polynomial::{product, PolyRing, Polynomial, RingRef};

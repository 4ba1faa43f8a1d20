//! Exact coefficient field, the polynomial ring, and the linear algebra the
//! rest of the crate is built on.

mod gauss;
mod linalg;
mod monomial;
mod poly;
mod weierstrass;

pub use gauss::{rational_sqrt, GaussRational, Rational};
pub use linalg::{Matrix, Rref, Solution};
pub use monomial::{compositions, monomial_count, zzbar_monomials, Monomial, Var};
pub use poly::Poly;
pub use weierstrass::weierstrass_divide;

pub(crate) use gauss::rat_to_f64;

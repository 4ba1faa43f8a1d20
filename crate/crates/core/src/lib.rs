//! Exact algebra for codimension-two CR singular manifolds `w = rho(z, zb)`
//! in complex space: CR functions, their holomorphic extensions, and the
//! classification of the quadrics where extension fails.

pub mod algebra;
pub mod classify;
pub mod error;
pub mod extend;
pub mod formal;
pub mod manifold;
pub mod odecrit;
pub mod polyio;
pub mod verify;

pub use algebra::{GaussRational, Matrix, Monomial, Poly, Rational, Var};
pub use error::{Error, Result};
pub use manifold::{CRField, CrCheck, Manifold, Quadric};
pub use polyio::{format_poly, format_poly_with, format_vector, load_manifold, parse_poly, ManifoldSpec};

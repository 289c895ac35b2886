//! Principalization of polynomial ideals on affine toroidal charts in
//! characteristic zero, by logarithmic order reduction with Kummer blowups.
//!
//! The polynomial layer is generic over any exact [`exact_algebra::Field`];
//! the engine itself runs over arbitrary precision rationals, exposed as
//! the [`Rational`] and [`Poly`] aliases.

pub mod cli_io;
pub mod error;
pub mod exact_algebra;
pub mod kummer_blowup;
pub mod log_calculus;
pub mod monoid_lattice;
pub mod resolution_engine;
pub mod toroidal_chart;

pub use error::{Error, Result};

/// Arbitrary precision rational numbers.
pub type Rational = num_rational::BigRational;

/// Polynomials with rational coefficients.
pub type Poly = exact_algebra::Polynomial<Rational>;

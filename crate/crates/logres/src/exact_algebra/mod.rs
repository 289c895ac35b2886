//! Exact rational arithmetic, sparse polynomials, Gröbner bases and ideal
//! operations over a fixed variable set.

pub mod groebner;
pub mod ideal;
pub mod parse;
pub mod polynomial;

pub use groebner::{groebner_basis, reduce, MonomialOrder};
pub use ideal::{
    exact_division, ideal_colon, ideal_contains, ideal_power, ideal_product, ideal_sum, saturate_by_element,
    IdealPresentation, Ring,
};
pub use parse::{format_rational, parse_polynomial, parse_rational};
pub use polynomial::{degrevlex, Exponents, Field, Polynomial, Term};

/// Formal partial derivative with respect to the variable `var`.
pub fn partial_derivative<F: Field>(f: &Polynomial<F>, var: usize) -> Polynomial<F> {
    f.partial(var)
}

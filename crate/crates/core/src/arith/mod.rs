//! Exact arithmetic over ℚ: monomials, sparse polynomials, rational functions
//! and the expression parser.

mod monomial;
mod parse;
mod poly;
mod ratfunc;

pub use monomial::Monomial;
pub use parse::{Expr, Ring};
pub use poly::{q, Polynomial, Q};
pub use ratfunc::{GradedFraction, RationalFunction};

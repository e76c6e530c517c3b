//! Rationals, univariate polynomials and rational functions in `t`.

mod factor;
mod field;
mod modp;
mod parse;
mod poly;
mod quadratic;
mod ratfun;

use num_bigint::BigInt;

pub use factor::{factor, factor_squarefree, squarefree_decomposition, FACTOR_DEGREE_CAP};
pub use field::Field;
pub use parse::{parse_poly, parse_ratfun, parse_section};
pub use poly::Polynomial;
pub use quadratic::QuadraticElement;
pub use ratfun::RationalFunction;

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

//! Exact arithmetic substrate: rationals, polynomials, Laurent expansions
//! and fraction-free linear solving.

pub mod binomial;
pub mod laurent;
pub mod linear;
pub mod poly;
pub mod rational;

pub use binomial::binomial;
pub use laurent::{laurent_expand, LaurentSeries};
pub use linear::{det_integer, det_rational, solve_linear_exact, LinearSystem};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use poly::Poly;
pub use rational::{format_rational, parse_rational, rat, ratio};

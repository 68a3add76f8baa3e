//! Exact computation of Frobenius roots, generalized test ideals, F-pure
//! thresholds and F-jumping coefficients of principal ideals in
//! `F_p[x_1, …, x_n]`, together with residual checks for the divided-power
//! operator identities that relate them to the Jacobian ideal.

pub mod arith;
pub mod diffop;
pub mod error;
pub mod frobenius;
pub mod groebner;
pub mod jumping;
pub mod parse;
pub mod poly;

pub use arith::{Limits, Natural, Prime, Rational};
pub use error::{Error, Resource, Result};
pub use groebner::{Colength, Ideal};
pub use parse::{parse_polynomial, parse_polynomial_list, render_polynomial};
pub use poly::{
    Coefficients, FpPoly, FpRing, Integers, Monomial, MonomialOrder, PolyRing, Polynomial, PrimeField, ZPoly, ZRing,
};

//! Exact arithmetic substrate: big rationals, elements of a quadratic
//! extension `Q(sqrt d)`, dense univariate polynomials and truncated power
//! series whose coefficients live in the extension.

mod poly;
mod quad;
mod rational;
mod series;

pub use num_bigint::BigInt;
pub use poly::{poly_derivative, poly_eval_quad, RatPoly};
pub use quad::{quad_div, quad_mul, QuadExt};
pub use rational::{binomial, factorial, is_rational_square, parse_rational, rat, Rational};
pub use series::{
    series_add, series_cos, series_div, series_exp, series_mul, series_sin, PowerSeries,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("discriminant mismatch: {left} vs {right}")]
    DiscriminantMismatch {
        left: Box<Rational>,
        right: Box<Rational>,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("element {0} has zero norm and is not invertible")]
    ZeroNorm(String),
    #[error("power series constant term {0} is not invertible")]
    NonInvertibleConstant(String),
    #[error("invalid rational literal {0:?}")]
    ParseRational(String),
}

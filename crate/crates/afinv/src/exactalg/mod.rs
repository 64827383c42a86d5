//! Exact integer, rational, polynomial, matrix and real-algebraic arithmetic.
//!
//! Nothing in this module makes a decision from a floating-point value.
//! Floats appear only in the numeric root finder used to propose
//! factorization candidates, and every candidate is confirmed by exact
//! division before it is accepted.

pub mod algreal;
pub mod factor;
pub mod int;
pub mod matrix;
pub mod numfield;
pub mod poly;
pub mod strser;

pub use algreal::{isolate_positive_root, AlgebraicReal};
pub use factor::{factor_over_z, Factorization, DEFAULT_DEGREE_BOUND};
pub use int::{
    big, ceil_div, divisors, gcd_all, in_localization, ipow, is_localized_unit, lcm, parse_rat,
    prime_support, rat, rat_int, rat_to_string, rpow, strip_primes, valuation, Int, Rat,
};
pub use matrix::{IntMatrix, Matrix, RatMatrix};
pub use numfield::{FieldElem, NumberField};
pub use poly::{Degree, IntPoly, Poly, RatPoly};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division does not produce integral coefficients")]
    NonIntegralDivision,
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial degree {degree} exceeds the factorization bound {bound}")]
    DegreeBoundExceeded { degree: usize, bound: usize },
    #[error("polynomial has no root in the unit interval")]
    NoRootInUnitInterval,
    #[error("numeric root precision is insufficient to factor this polynomial")]
    PrecisionInsufficient,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("modulus must be at least 2")]
    BadModulus,
}

pub type ExactResult<T> = Result<T, ExactError>;

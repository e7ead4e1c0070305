//! Exact scalars and sparse exact linear algebra over the rationals.

mod matrix;
mod param_poly;
mod rational;

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

pub use matrix::{kernel_basis, solve_in_span, RatMatrix, Subspace};
pub use param_poly::ParamPoly;
pub use rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{msg}")]
pub struct ParseError {
    msg: String,
}

impl ParseError {
    pub fn new(msg: impl Into<String>) -> Self {
        ParseError { msg: msg.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Coefficient ring used by module actions: exact rationals, or polynomials
/// in formal parameters when an identity must hold for every parameter value.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + Send
    + Sync
    + 'static
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(r: &Rational) -> Self;

    fn scale(&self, r: &Rational) -> Self;

    /// Number of monomials needed to write the value (0 for zero).
    fn term_count(&self) -> usize {
        usize::from(!self.is_zero())
    }
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
}

impl Scalar for ParamPoly {
    fn from_rational(r: &Rational) -> Self {
        ParamPoly::constant(r.clone())
    }

    fn scale(&self, r: &Rational) -> Self {
        ParamPoly::scale(self, r)
    }

    fn term_count(&self) -> usize {
        self.num_terms()
    }
}

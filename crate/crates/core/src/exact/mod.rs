//! Exact scalars, dense univariate polynomials and rational functions.
//!
//! Every other module is built on the small [`Ring`] abstraction defined
//! here. All rings in this crate are commutative algebras over the
//! rationals, so each ring knows how to embed a [`Rational`].

use std::fmt;

use thiserror::Error;

mod poly;
mod ratfunc;
mod rational;

pub use poly::{shifted_product, Poly, ShiftKind};
pub use ratfunc::{limit_form, RationalFunction};
pub use rational::{
    binomial, factorial, fmt_rational, int, parse_rational, pochhammer, rat, Rational,
};

/// Variable tag carried by every [`Poly`].
///
/// Tags are compared at runtime; mixing polynomials in different variables
/// is a structural error rather than a type error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// Rescaled squared Dirac symbol, `y = (n / 2J) D^2`.
    Y,
    /// Spectral parameter.
    Lambda,
    /// Defining function of the boundary (series variable).
    R,
    /// The Dirac symbol.
    D,
    /// Curvature parameter `c = 2J / n`.
    C,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Var::Y => "y",
            Var::Lambda => "λ",
            Var::R => "r",
            Var::D => "D",
            Var::C => "c",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("variable mismatch: {left} vs {right}")]
    VariableMismatch { left: Var, right: Var },
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole of order {order} at {at}")]
    Pole { at: Rational, order: usize },
    #[error("inexact division")]
    InexactDivision,
}

/// Commutative ring with unit that contains the rationals.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(q: &Rational) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// `self * q` for a rational scalar.
    fn scale(&self, q: &Rational) -> Self {
        self.mul(&Self::from_rational(q))
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

//! Exact scalars: rationals and rational functions in the deformation
//! parameter `t`.
//!
//! Everything downstream is generic over [`Scalar`], so the same polynomial,
//! bracket and rewriting code runs over ℚ (limits, deformations) and over
//! ℚ(t) (parametrized families).

mod interp;
mod ratfunc;
mod upoly;

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

pub use interp::lagrange_interpolate;
pub use ratfunc::RatFunc;
pub use upoly::UniPoly;

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

/// Builds the rational `n / d`. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// How a coefficient is rendered inside a polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffRepr {
    /// The sign is printed by the surrounding sum.
    pub negative: bool,
    /// Text of the absolute value (or of the whole value when `negative` is false
    /// and the value is a compound expression).
    pub text: String,
    /// True when `text` can be followed by `*monomial` without parentheses.
    pub atomic: bool,
}

/// A field element usable as a polynomial coefficient.
pub trait Scalar:
    Clone
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    fn from_rational(r: Rational) -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn try_inv(&self) -> Option<Self>;

    /// The value as a rational when it does not depend on `t`.
    fn as_rational(&self) -> Option<Rational>;

    fn repr(&self) -> CoeffRepr;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(int(n))
    }
}

impl Scalar for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }

    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn repr(&self) -> CoeffRepr {
        CoeffRepr {
            negative: self.is_negative(),
            text: self.abs().to_string(),
            atomic: true,
        }
    }
}

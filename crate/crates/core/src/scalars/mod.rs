//! Exact scalars: rationals, the coefficient field Q(r2, r3), time scalars
//! built from `(1+kt)^a e^(bt)` monomials, and exponent-parameterized scalars
//! used by the ansatz solver.

mod field;
mod param;
mod time;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use field::FieldElem;
pub use param::{Affine, ParamScalar};
pub use time::TimeScalar;

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p`, `p/q` (optionally with a leading `+`).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidNumber(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = num.strip_prefix('+').unwrap_or(num);
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

pub(crate) fn rational_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// Renders a rational as `p` or `p/q`.
pub(crate) struct RatDisplay<'a>(pub &'a Rational);

impl fmt::Display for RatDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Same as [`RatDisplay`] but parenthesized when the value is a fraction or
/// negative, for use as an exponent.
pub(crate) struct ExpDisplay<'a>(pub &'a Rational);

impl fmt::Display for ExpDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() && !self.0.is_negative() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "({})", RatDisplay(self.0))
        }
    }
}

/// Coefficient ring for differential forms.
///
/// Implemented by [`FieldElem`] (static forms), [`TimeScalar`] (forms along a
/// flow) and [`ParamScalar`] (forms whose exponents are still unknown).
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn from_field(c: FieldElem) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn scaled(&self, c: &FieldElem) -> Self;
    /// Inverse of a single monomial; `None` for sums and zero.
    fn inverse_monomial(&self) -> Option<Self>;

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }

    fn one() -> Self {
        Self::from_field(FieldElem::one())
    }
}

impl Coeff for FieldElem {
    fn zero() -> Self {
        FieldElem::zero()
    }
    fn is_zero(&self) -> bool {
        FieldElem::is_zero(self)
    }
    fn from_field(c: FieldElem) -> Self {
        c
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scaled(&self, c: &FieldElem) -> Self {
        self * c
    }
    fn inverse_monomial(&self) -> Option<Self> {
        self.inverse().ok()
    }
}

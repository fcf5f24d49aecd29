use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{int, rational_to_f64, RatDisplay, Rational};
use crate::error::{Error, Result};

/// Element `a + b*r2 + c*r3 + d*r6` of Q(sqrt2, sqrt3).
///
/// The basis is indexed by a two-bit mask: bit 0 is sqrt2, bit 1 is sqrt3, so
/// `basis[i] * basis[j] = basis[i ^ j] * (2 if both have bit 0) * (3 if both have bit 1)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct FieldElem {
    parts: [Rational; 4],
}

const SURD_NAMES: [&str; 4] = ["", "r2", "r3", "r6"];

impl FieldElem {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Self { parts: [a, b, c, d] }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn rational(q: Rational) -> Self {
        Self::new(q, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(int(n))
    }

    pub fn sqrt2() -> Self {
        Self::new(Rational::zero(), Rational::one(), Rational::zero(), Rational::zero())
    }

    pub fn sqrt3() -> Self {
        Self::new(Rational::zero(), Rational::zero(), Rational::one(), Rational::zero())
    }

    pub fn sqrt6() -> Self {
        Self::new(Rational::zero(), Rational::zero(), Rational::zero(), Rational::one())
    }

    /// Components in the basis `1, r2, r3, r6`.
    pub fn parts(&self) -> &[Rational; 4] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.parts[0].is_one() && self.parts[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.parts[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.parts[0])
    }

    /// Image under the automorphism flipping the sign of the surds selected by `mask`.
    fn conjugate(&self, mask: usize) -> Self {
        let mut out = self.clone();
        for (i, p) in out.parts.iter_mut().enumerate() {
            if (i & mask).count_ones() % 2 == 1 {
                *p = -p.clone();
            }
        }
        out
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let others = self.conjugate(1) * self.conjugate(2) * self.conjugate(3);
        let norm = self * &others;
        debug_assert!(norm.is_rational());
        let n = norm.parts[0].clone();
        Ok(others.scale_rational(&n.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        Self { parts: std::array::from_fn(|i| &self.parts[i] * q) }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc * self)
    }

    pub fn to_f64(&self) -> f64 {
        let roots = [1.0, 2f64.sqrt(), 3f64.sqrt(), 6f64.sqrt()];
        self.parts.iter().zip(roots).map(|(p, r)| rational_to_f64(p) * r).sum()
    }

    fn nonzero_parts(&self) -> usize {
        self.parts.iter().filter(|p| !p.is_zero()).count()
    }

    /// True when the rendered value needs parentheses inside a product.
    pub fn is_compound(&self) -> bool {
        self.nonzero_parts() > 1
    }

    /// Renders as a factor: wrapped in parentheses when it has several parts.
    pub fn factor_string(&self) -> String {
        if self.is_compound() {
            format!("({self})")
        } else {
            self.to_string()
        }
    }

    /// Sign of a single-component value, used to pull a leading minus out of
    /// rendered sums. Compound values report `+`.
    pub(crate) fn leading_negative(&self) -> bool {
        !self.is_compound() && self.parts.iter().any(|p| p.is_negative())
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, p) in self.parts.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let neg = p.is_negative();
            let mag = p.abs();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            if i == 0 {
                write!(f, "{}", RatDisplay(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}", RatDisplay(&mag))?;
                }
                write!(f, "{}", SURD_NAMES[i])?;
            }
            first = false;
        }
        Ok(())
    }
}

impl Add<&FieldElem> for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        FieldElem { parts: std::array::from_fn(|i| &self.parts[i] + &rhs.parts[i]) }
    }
}

impl Sub<&FieldElem> for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        FieldElem { parts: std::array::from_fn(|i| &self.parts[i] - &rhs.parts[i]) }
    }
}

impl Mul<&FieldElem> for &FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        let mut out = FieldElem::zero();
        for (i, a) in self.parts.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.parts.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let common = i & j;
                let mut factor = a * b;
                if common & 1 != 0 {
                    factor *= int(2);
                }
                if common & 2 != 0 {
                    factor *= int(3);
                }
                out.parts[i ^ j] += factor;
            }
        }
        out
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem { parts: std::array::from_fn(|i| -self.parts[i].clone()) }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem { (&self).$m(&rhs) }
        }
        impl $tr<&FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: &FieldElem) -> FieldElem { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

impl From<Rational> for FieldElem {
    fn from(q: Rational) -> Self {
        Self::rational(q)
    }
}

impl From<i64> for FieldElem {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn defining_relations() {
        assert_eq!(FieldElem::sqrt2() * FieldElem::sqrt2(), FieldElem::integer(2));
        assert_eq!(FieldElem::sqrt2() * FieldElem::sqrt3(), FieldElem::sqrt6());
        assert_eq!(FieldElem::sqrt6() * FieldElem::sqrt6(), FieldElem::integer(6));
        assert_eq!(FieldElem::sqrt3() * FieldElem::sqrt6(), FieldElem::sqrt2().scale_rational(&int(3)));
    }

    #[test]
    fn inverse_of_one_plus_sqrt2() {
        let x = FieldElem::one() + FieldElem::sqrt2();
        let expected = FieldElem::sqrt2() - FieldElem::one();
        // (1 + r2)(r2 - 1) = 2 - 1 = 1
        assert!((x.clone() * expected.clone()).is_one());
        assert_eq!(x.inverse().unwrap(), expected);
    }

    #[test]
    fn inverse_of_mixed_element() {
        let x = FieldElem::new(rat(1, 2), int(-3), rat(2, 7), int(5));
        assert!((x.inverse().unwrap() * x).is_one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(FieldElem::zero().inverse(), Err(Error::DivisionByZero)));
        assert!(FieldElem::one().checked_div(&FieldElem::zero()).is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(FieldElem::new(int(-2), int(2), int(0), int(0)).to_string(), "-2+2r2");
        assert_eq!(FieldElem::sqrt2().scale_rational(&rat(1, 2)).to_string(), "1/2r2");
        assert_eq!((-FieldElem::sqrt3()).to_string(), "-r3");
        assert_eq!(FieldElem::rational(rat(-3, 2)).to_string(), "-3/2");
    }
}

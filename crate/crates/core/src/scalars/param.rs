use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Coeff, FieldElem, RatDisplay, Rational};

/// Affine form `c + l1*a1 + ... + ln*an` in the unknown exponents `a1..an`.
///
/// Trailing zero coefficients are trimmed so equal forms compare equal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Affine {
    constant: Rational,
    linear: Vec<Rational>,
}

impl Affine {
    pub fn new(constant: Rational, linear: Vec<Rational>) -> Self {
        let mut out = Self { constant, linear };
        out.trim();
        out
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(c, Vec::new())
    }

    /// The variable `a_{index+1}`.
    pub fn var(index: usize) -> Self {
        let mut linear = vec![Rational::zero(); index + 1];
        linear[index] = Rational::one();
        Self::new(Rational::zero(), linear)
    }

    fn trim(&mut self) {
        while self.linear.last().is_some_and(Zero::is_zero) {
            self.linear.pop();
        }
    }

    pub fn constant_term(&self) -> &Rational {
        &self.constant
    }

    /// Coefficient of `a_{index+1}`.
    pub fn coeff(&self, index: usize) -> Rational {
        self.linear.get(index).cloned().unwrap_or_else(Rational::zero)
    }

    /// Number of variables with possibly nonzero coefficient.
    pub fn span(&self) -> usize {
        self.linear.len()
    }

    pub fn is_constant(&self) -> bool {
        self.linear.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.linear.is_empty() && self.constant.is_zero()
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::new(&self.constant * q, self.linear.iter().map(|c| c * q).collect())
    }

    pub fn eval(&self, values: &[Rational]) -> Rational {
        self.linear
            .iter()
            .enumerate()
            .fold(self.constant.clone(), |acc, (i, c)| acc + c * &values[i])
    }

    /// Replaces each variable `a_i` by `subs(i)`.
    pub fn substitute(&self, subs: impl Fn(usize) -> Affine) -> Affine {
        let mut out = Affine::constant(self.constant.clone());
        for (i, c) in self.linear.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &subs(i).scale(c);
            }
        }
        out
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let n = self.linear.len().max(other.linear.len());
        let z = Rational::zero();
        let linear = (0..n)
            .map(|i| op(self.linear.get(i).unwrap_or(&z), other.linear.get(i).unwrap_or(&z)))
            .collect();
        Self::new(op(&self.constant, &other.constant), linear)
    }
}

impl Add for &Affine {
    type Output = Affine;
    fn add(self, rhs: &Affine) -> Affine {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Affine {
    type Output = Affine;
    fn sub(self, rhs: &Affine) -> Affine {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &Affine {
    type Output = Affine;
    fn neg(self) -> Affine {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.linear.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            if mag.is_one() {
                write!(f, "{sign}a{}", i + 1)?;
            } else {
                write!(f, "{sign}{}a{}", RatDisplay(&mag), i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "{}", RatDisplay(&self.constant))
        } else if !self.constant.is_zero() {
            let sign = if self.constant.is_negative() { "-" } else { "+" };
            write!(f, "{sign}{}", RatDisplay(&self.constant.abs()))
        } else {
            Ok(())
        }
    }
}

/// Finite sum `sum c * (1+kt)^E` where each exponent `E` is an [`Affine`]
/// form in unknown exponents and `k` stays symbolic.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ParamScalar {
    terms: BTreeMap<Affine, FieldElem>,
}

impl ParamScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: FieldElem, exponent: Affine) -> Self {
        let mut out = Self::zero();
        out.insert(exponent, c);
        out
    }

    pub fn constant(c: FieldElem) -> Self {
        Self::monomial(c, Affine::default())
    }

    /// `(1+kt)^exponent`.
    pub fn power(exponent: Affine) -> Self {
        Self::monomial(FieldElem::one(), exponent)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Affine, &FieldElem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, exponent: Affine, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exponent.clone()).or_insert_with(FieldElem::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    /// Rewrites every exponent and merges terms that become equal.
    pub fn map_exponents(&self, f: impl Fn(&Affine) -> Affine) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.insert(f(e), c.clone());
        }
        out
    }
}

impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mut c = c.clone();
            if i > 0 {
                if c.leading_negative() {
                    write!(f, " - ")?;
                    c = -c;
                } else {
                    write!(f, " + ")?;
                }
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            let power = format!("(1+k*t)^({e})");
            if c.is_one() {
                write!(f, "{power}")?;
            } else if (-&c).is_one() {
                write!(f, "-{power}")?;
            } else {
                write!(f, "{}*{power}", c.factor_string())?;
            }
        }
        Ok(())
    }
}

impl Coeff for ParamScalar {
    fn zero() -> Self {
        ParamScalar::zero()
    }
    fn is_zero(&self) -> bool {
        ParamScalar::is_zero(self)
    }
    fn from_field(c: FieldElem) -> Self {
        ParamScalar::constant(c)
    }
    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }
    fn negated(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
    fn times(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, a) in &self.terms {
            for (eb, b) in &other.terms {
                out.insert(ea + eb, a * b);
            }
        }
        out
    }
    fn scaled(&self, c: &FieldElem) -> Self {
        let mut out = Self::zero();
        for (e, a) in &self.terms {
            out.insert(e.clone(), a * c);
        }
        out
    }
    fn inverse_monomial(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        Some(Self::monomial(c.inverse().ok()?, -e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat};

    #[test]
    fn affine_arithmetic_trims() {
        let a = Affine::var(4);
        let b = &a - &Affine::var(4);
        assert!(b.is_zero());
        assert_eq!(b, Affine::default());
        let e = &Affine::var(0).scale(&int(-4)) + &Affine::var(4).scale(&int(2));
        assert_eq!(e.to_string(), "-4a1+2a5");
        assert_eq!(Affine::new(rat(-1, 2), vec![int(1)]).to_string(), "a1-1/2");
    }

    #[test]
    fn substitution() {
        // a2 -> -a1
        let e = &Affine::var(0) + &Affine::var(1);
        let s = e.substitute(|i| if i == 1 { -&Affine::var(0) } else { Affine::var(i) });
        assert!(s.is_zero());
    }

    #[test]
    fn products_add_exponents() {
        let p = ParamScalar::power(Affine::var(0));
        let q = ParamScalar::power(-&Affine::var(0));
        assert_eq!(p.times(&q), ParamScalar::constant(FieldElem::one()));
        assert_eq!(p.inverse_monomial().unwrap(), q);
    }

    #[test]
    fn merging_after_substitution() {
        let a = ParamScalar::monomial(FieldElem::integer(2), Affine::var(0));
        let b = ParamScalar::monomial(FieldElem::integer(-2), Affine::var(1));
        let sum = a.plus(&b);
        assert_eq!(sum.len(), 2);
        let merged = sum.map_exponents(|e| e.substitute(|_| Affine::var(0)));
        assert!(merged.is_zero());
    }

    #[test]
    fn rendering() {
        let p = ParamScalar::monomial(FieldElem::integer(-4), Affine::var(4).scale(&int(2)));
        assert_eq!(p.to_string(), "-4*(1+k*t)^(2a5)");
    }
}

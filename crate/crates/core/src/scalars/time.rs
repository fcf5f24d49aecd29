use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{rational_to_f64, Coeff, ExpDisplay, FieldElem, RatDisplay, Rational};
use crate::error::{Error, Result};

/// Monomial key: `(1+kt)^pow * e^(rate*t)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
struct Key {
    pow: Rational,
    rate: Rational,
}

/// Finite sum of monomials `c * (1+kt)^a * e^(bt)` over a fixed ring parameter `k`.
///
/// Elements without any `(1+kt)` factor (constants and pure exponentials) lie in
/// every ring and combine freely with any `k`. Two elements that both carry
/// `(1+kt)` powers with different `k` cannot be combined.
#[derive(Clone, Debug)]
pub struct TimeScalar {
    k: Rational,
    terms: BTreeMap<Key, FieldElem>,
}

impl TimeScalar {
    pub fn zero() -> Self {
        Self { k: Rational::zero(), terms: BTreeMap::new() }
    }

    pub fn constant(c: FieldElem) -> Self {
        Self::monomial(c, Rational::zero(), Rational::zero(), Rational::zero())
    }

    /// `c * (1+kt)^pow * e^(rate*t)`.
    pub fn monomial(c: FieldElem, k: Rational, pow: Rational, rate: Rational) -> Self {
        let mut out = Self { k, terms: BTreeMap::new() };
        out.insert(Key { pow, rate }, c);
        out
    }

    /// `(1+kt)^pow`.
    pub fn power(k: Rational, pow: Rational) -> Self {
        Self::monomial(FieldElem::one(), k, pow, Rational::zero())
    }

    /// `e^(rate*t)`.
    pub fn exp(rate: Rational) -> Self {
        Self::monomial(FieldElem::one(), Rational::zero(), Rational::zero(), rate)
    }

    pub fn k(&self) -> &Rational {
        &self.k
    }

    /// True when no monomial carries a `(1+kt)` factor.
    pub fn is_ring_neutral(&self) -> bool {
        self.terms.keys().all(|key| key.pow.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Constant value, if the scalar has no time dependence.
    pub fn as_constant(&self) -> Option<FieldElem> {
        match self.terms.len() {
            0 => Some(FieldElem::zero()),
            1 => {
                let (key, c) = self.terms.iter().next().unwrap();
                (key.pow.is_zero() && key.rate.is_zero()).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Iterates `(coefficient, pow, rate)` in key order.
    pub fn monomials(&self) -> impl Iterator<Item = (&FieldElem, &Rational, &Rational)> {
        self.terms.iter().map(|(key, c)| (c, &key.pow, &key.rate))
    }

    fn insert(&mut self, mut key: Key, c: FieldElem) {
        if self.k.is_zero() {
            key.pow = Rational::zero();
        }
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_insert_with(FieldElem::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn ring_with(&self, other: &Self) -> Result<Rational> {
        if self.k == other.k || other.is_ring_neutral() {
            Ok(self.k.clone())
        } else if self.is_ring_neutral() {
            Ok(other.k.clone())
        } else {
            Err(Error::RingMismatch { left: self.k.to_string(), right: other.k.to_string() })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let k = self.ring_with(other)?;
        let mut out = Self { k, terms: self.terms.clone() };
        for (key, c) in &other.terms {
            out.insert(key.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let k = self.ring_with(other)?;
        let mut out = Self { k, terms: BTreeMap::new() };
        for (ka, a) in &self.terms {
            for (kb, b) in &other.terms {
                let key = Key { pow: &ka.pow + &kb.pow, rate: &ka.rate + &kb.rate };
                out.insert(key, a * b);
            }
        }
        Ok(out)
    }

    fn neg_ref(&self) -> Self {
        Self {
            k: self.k.clone(),
            terms: self.terms.iter().map(|(key, c)| (key.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        let mut out = Self { k: self.k.clone(), terms: BTreeMap::new() };
        for (key, a) in &self.terms {
            out.insert(key.clone(), a * c);
        }
        out
    }

    /// Exact time derivative, termwise:
    /// `d/dt (1+kt)^a e^(bt) = (a k (1+kt)^(a-1) + b (1+kt)^a) e^(bt)`.
    pub fn ddt(&self) -> Self {
        let mut out = Self { k: self.k.clone(), terms: BTreeMap::new() };
        for (key, c) in &self.terms {
            if !key.pow.is_zero() {
                let factor = &key.pow * &self.k;
                let lowered = Key { pow: &key.pow - Rational::one(), rate: key.rate.clone() };
                out.insert(lowered, c.scale_rational(&factor));
            }
            if !key.rate.is_zero() {
                out.insert(key.clone(), c.scale_rational(&key.rate));
            }
        }
        out
    }

    /// Inverse of a single monomial.
    pub fn inverse(&self) -> Result<Self> {
        let (key, c) = match (self.terms.len(), self.terms.iter().next()) {
            (1, Some(entry)) => entry,
            _ => return Err(Error::NotInvertible(self.to_string())),
        };
        Ok(Self::monomial(c.inverse()?, self.k.clone(), -key.pow.clone(), -key.rate.clone()))
    }

    /// Floating-point value at `t`, for diagnostics only.
    pub fn eval(&self, t: &Rational) -> Result<f64> {
        let base = Rational::one() + &self.k * t;
        if !base.is_positive() {
            return Err(Error::Domain(format!("1+kt = {} is not positive at t = {}", base, t)));
        }
        let b = rational_to_f64(&base);
        let tf = rational_to_f64(t);
        Ok(self
            .terms
            .iter()
            .map(|(key, c)| c.to_f64() * b.powf(rational_to_f64(&key.pow)) * (rational_to_f64(&key.rate) * tf).exp())
            .sum())
    }

    /// Value at `t = 0`, which every monomial admits.
    pub fn at_zero(&self) -> FieldElem {
        self.terms.values().fold(FieldElem::zero(), |acc, c| acc + c)
    }

    fn write_monomial(&self, f: &mut fmt::Formatter<'_>, key: &Key, c: &FieldElem) -> fmt::Result {
        let mut factors = Vec::new();
        if !key.pow.is_zero() {
            let sign = if self.k.is_negative() { "-" } else { "+" };
            factors.push(format!("(1{}{}*t)^{}", sign, RatDisplay(&self.k.abs()), ExpDisplay(&key.pow)));
        }
        if !key.rate.is_zero() {
            factors.push(format!("exp({}*t)", RatDisplay(&key.rate)));
        }
        if factors.is_empty() {
            write!(f, "{}", c)
        } else if c.is_one() {
            write!(f, "{}", factors.join("*"))
        } else if (-c).is_one() {
            write!(f, "-{}", factors.join("*"))
        } else {
            write!(f, "{}*{}", c.factor_string(), factors.join("*"))
        }
    }
}

impl PartialEq for TimeScalar {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (self.k == other.k || self.is_ring_neutral())
    }
}

impl fmt::Display for TimeScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (key, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                if c.leading_negative() {
                    write!(f, " - ")?;
                    self.write_monomial(f, key, &-c)?;
                    continue;
                }
                write!(f, " + ")?;
            }
            self.write_monomial(f, key, c)?;
        }
        Ok(())
    }
}

impl Coeff for TimeScalar {
    fn zero() -> Self {
        TimeScalar::zero()
    }
    fn is_zero(&self) -> bool {
        TimeScalar::is_zero(self)
    }
    fn from_field(c: FieldElem) -> Self {
        TimeScalar::constant(c)
    }
    fn plus(&self, other: &Self) -> Self {
        self.checked_add(other).expect("time scalars from different rings")
    }
    fn negated(&self) -> Self {
        self.neg_ref()
    }
    fn times(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("time scalars from different rings")
    }
    fn scaled(&self, c: &FieldElem) -> Self {
        self.scale(c)
    }
    fn inverse_monomial(&self) -> Option<Self> {
        self.inverse().ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat};

    fn pw(k: i64, a: Rational) -> TimeScalar {
        TimeScalar::power(int(k), a)
    }

    #[test]
    fn exponent_addition_and_cancellation() {
        let k = 5;
        let half = pw(k, rat(1, 2));
        assert_eq!(half.checked_mul(&half).unwrap(), pw(k, int(1)));
        let sixth = pw(k, rat(1, 6));
        let inv = pw(k, rat(-1, 6));
        assert_eq!(sixth.checked_mul(&inv).unwrap(), TimeScalar::constant(FieldElem::one()));
        let e = TimeScalar::exp(int(-2)).checked_mul(&TimeScalar::exp(int(2))).unwrap();
        assert_eq!(e, TimeScalar::constant(FieldElem::one()));
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = pw(2, rat(1, 2));
        let b = pw(3, rat(1, 2));
        assert!(matches!(a.checked_add(&b), Err(Error::RingMismatch { .. })));
        assert!(a.checked_mul(&b).is_err());
        // constants belong to every ring
        assert!(a.checked_mul(&TimeScalar::constant(FieldElem::integer(4))).is_ok());
    }

    #[test]
    fn power_rule() {
        // d/dt (1+kt)^(1/2) = (k/2)(1+kt)^(-1/2)
        let k = 7;
        let d = pw(k, rat(1, 2)).ddt();
        let expected = TimeScalar::monomial(FieldElem::rational(rat(7, 2)), int(k), rat(-1, 2), int(0));
        assert_eq!(d, expected);
        // d/dt c e^(-2t) = -2c e^(-2t)
        let c = FieldElem::integer(3);
        let f = TimeScalar::monomial(c.clone(), int(0), int(0), int(-2));
        assert_eq!(f.ddt(), f.scale(&FieldElem::integer(-2)));
    }

    #[test]
    fn chain_rule_with_negative_k() {
        // d/dt (1-6t)^(3/2) = -9 (1-6t)^(1/2)
        let f = pw(-6, rat(3, 2));
        let expected = TimeScalar::monomial(FieldElem::integer(-9), int(-6), rat(1, 2), int(0));
        assert_eq!(f.ddt(), expected);
        // finite-difference cross-check at t = 0
        let h = 1e-6;
        let fd = ((1.0f64 - 6.0 * h).powf(1.5) - (1.0f64 + 6.0 * h).powf(1.5)) / (2.0 * h);
        assert!((fd - f.ddt().eval(&int(0)).unwrap()).abs() < 1e-6);
    }

    #[test]
    fn evaluation() {
        let f = pw(-6, rat(3, 2));
        assert_eq!(f.eval(&int(0)).unwrap(), 1.0);
        let v = f.eval(&rat(1, 12)).unwrap();
        assert!((v - 0.5f64.powf(1.5)).abs() < 1e-15);
        assert_eq!(TimeScalar::exp(int(-2)).eval(&int(0)).unwrap(), 1.0);
        assert!(matches!(f.eval(&rat(1, 6)), Err(Error::Domain(_))));
    }

    #[test]
    fn zero_k_collapses_powers() {
        let f = TimeScalar::power(int(0), rat(1, 2));
        assert_eq!(f, TimeScalar::constant(FieldElem::one()));
    }

    #[test]
    fn rendering() {
        let f = TimeScalar::monomial(FieldElem::integer(-9), int(-6), rat(1, 2), int(0));
        assert_eq!(f.to_string(), "-9*(1-6*t)^(1/2)");
        let g = TimeScalar::monomial(FieldElem::integer(2), int(0), int(0), int(-2));
        assert_eq!(g.to_string(), "2*exp(-2*t)");
    }
}

//! Alternating forms on an orthonormal coframe of dimension at most 7.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{Coeff, FieldElem, TimeScalar};

pub const MAX_DIM: usize = 7;

/// Strictly increasing index tuple `I ⊂ {1..7}` stored as a bit set
/// (bit `i-1` for index `i`). Ordered lexicographically as a tuple.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Idx(u8);

impl Idx {
    pub const EMPTY: Idx = Idx(0);

    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut bits = 0u8;
        for &i in indices {
            if !(1..=MAX_DIM).contains(&i) {
                return Err(Error::DimensionMismatch(format!("index {i} out of range 1..=7")));
            }
            if bits & (1 << (i - 1)) != 0 {
                return Err(Error::InvalidArgument(format!("repeated index {i}")));
            }
            bits |= 1 << (i - 1);
        }
        Ok(Idx(bits))
    }

    pub fn from_bits(bits: u8) -> Self {
        assert!(bits < 1 << MAX_DIM, "index set {bits:#b} exceeds dimension 7");
        Idx(bits)
    }

    pub fn single(i: usize) -> Self {
        debug_assert!((1..=MAX_DIM).contains(&i));
        Idx(1 << (i - 1))
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << (i - 1)) != 0
    }

    /// Indices in increasing order, 1-based.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        (1..=MAX_DIM).filter(move |&i| self.contains(i))
    }

    pub fn complement(self, dim: usize) -> Self {
        Idx(!self.0 & ((1u16 << dim) - 1) as u8)
    }

    pub fn max_index(self) -> usize {
        8 - self.0.leading_zeros() as usize
    }

    /// Sign of `x^I ∧ x^J` relative to `x^{I∪J}`, or `None` if they overlap.
    pub fn wedge_sign(self, other: Idx) -> Option<i32> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let inversions: u32 = other.indices().map(|j| (self.0 >> j).count_ones()).sum();
        Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
    }
}

impl Ord for Idx {
    fn cmp(&self, other: &Self) -> Ordering {
        self.indices().cmp(other.indices())
    }
}

impl PartialOrd for Idx {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Idx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in self.indices() {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

/// All index tuples of the given degree in `{1..dim}`, lexicographic.
pub fn basis(dim: usize, degree: usize) -> Vec<Idx> {
    let mut out: Vec<Idx> = (0u16..(1 << dim))
        .map(|b| Idx(b as u8))
        .filter(|i| i.degree() == degree)
        .collect();
    out.sort();
    out
}

/// Homogeneous `degree`-form on a `dim`-dimensional coframe.
#[derive(Clone, PartialEq, Debug)]
pub struct KForm<C> {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Idx, C>,
}

pub type StaticForm = KForm<FieldElem>;
pub type TimeForm = KForm<TimeScalar>;

impl<C: Coeff> KForm<C> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(dim <= MAX_DIM && degree <= dim, "degree {degree} form in dimension {dim}");
        Self { dim, degree, terms: BTreeMap::new() }
    }

    pub fn scalar(dim: usize, c: C) -> Self {
        let mut out = Self::zero(dim, 0);
        out.add_term(Idx::EMPTY, c);
        out
    }

    /// `c x^I` for `I` given as 1-based indices in any order; the sign of
    /// the sorting permutation is applied.
    pub fn monomial(dim: usize, indices: &[usize], c: C) -> Self {
        let mut out = Self::scalar(dim, c);
        for &i in indices {
            assert!((1..=dim).contains(&i), "index {i} out of range for dimension {dim}");
            out = out.wedge(&Self::monomial_idx(dim, Idx::single(i), C::one()));
        }
        out
    }

    pub fn monomial_idx(dim: usize, idx: Idx, c: C) -> Self {
        assert!(idx.max_index() <= dim);
        let mut out = Self::zero(dim, idx.degree());
        out.add_term(idx, c);
        out
    }

    /// Builds a form from `(indices, coefficient)` pairs with sorted indices.
    pub fn from_terms(dim: usize, degree: usize, terms: impl IntoIterator<Item = (Idx, C)>) -> Self {
        let mut out = Self::zero(dim, degree);
        for (idx, c) in terms {
            assert_eq!(idx.degree(), degree);
            assert!(idx.max_index() <= dim);
            out.add_term(idx, c);
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Idx, &C)> {
        self.terms.iter()
    }

    pub fn get(&self, idx: Idx) -> C {
        self.terms.get(&idx).cloned().unwrap_or_else(C::zero)
    }

    pub(crate) fn add_term(&mut self, idx: Idx, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&idx) {
            Some(slot) => {
                let sum = slot.plus(&c);
                if sum.is_zero() {
                    self.terms.remove(&idx);
                } else {
                    *slot = sum;
                }
            }
            None => {
                self.terms.insert(idx, c);
            }
        }
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim || self.degree != other.degree {
            return Err(Error::DimensionMismatch(format!(
                "cannot add a {}-form in dimension {} to a {}-form in dimension {}",
                other.degree, other.dim, self.degree, self.dim
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.add_term(*idx, c.clone());
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.negated())
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|a| a.times(c))
    }

    pub fn scale_field(&self, c: &FieldElem) -> Self {
        self.map(|a| a.scaled(c))
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map(&self, f: impl Fn(&C) -> C) -> Self {
        Self::from_terms(self.dim, self.degree, self.terms.iter().map(|(i, c)| (*i, f(c))))
    }

    /// Applies `f` to every `(index, coefficient)` pair.
    pub fn map_indexed(&self, f: impl Fn(Idx, &C) -> C) -> Self {
        Self::from_terms(self.dim, self.degree, self.terms.iter().map(|(i, c)| (*i, f(*i, c))))
    }

    pub fn convert<D: Coeff>(&self, f: impl Fn(&C) -> D) -> KForm<D> {
        KForm::from_terms(self.dim, self.degree, self.terms.iter().map(|(i, c)| (*i, f(c))))
    }

    pub fn checked_wedge(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "wedge of forms in dimensions {} and {}",
                self.dim, other.dim
            )));
        }
        let degree = self.degree + other.degree;
        if degree > self.dim {
            return Ok(Self::zero(self.dim, self.dim));
        }
        let mut out = Self::zero(self.dim, degree);
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                if let Some(sign) = i.wedge_sign(*j) {
                    let c = a.times(b);
                    out.add_term(Idx(i.0 | j.0), if sign < 0 { c.negated() } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Wedge product; panics on dimension mismatch. A product of degree
    /// above the dimension is returned as the zero top form.
    pub fn wedge(&self, other: &Self) -> Self {
        self.checked_wedge(other).unwrap_or_else(|e| panic!("{e}"))
    }

    /// Contraction with the frame vector dual to `x^v`.
    pub fn contract(&self, v: usize) -> Result<Self> {
        if !(1..=self.dim).contains(&v) {
            return Err(Error::DimensionMismatch(format!("vector index {v} out of range 1..={}", self.dim)));
        }
        if self.degree == 0 {
            return Err(Error::InvalidArgument("cannot contract a 0-form".into()));
        }
        let mut out = Self::zero(self.dim, self.degree - 1);
        for (idx, c) in &self.terms {
            if idx.contains(v) {
                let pos = (idx.0 & ((1u8 << (v - 1)) - 1)).count_ones();
                let rest = Idx(idx.0 & !(1 << (v - 1)));
                out.add_term(rest, if pos.is_multiple_of(2) { c.clone() } else { c.negated() });
            }
        }
        Ok(out)
    }

    /// Hodge star of the unit metric on the orthonormal frame with
    /// orientation `x^{1..n}`.
    pub fn hodge_unit(&self) -> Self {
        let mut out = Self::zero(self.dim, self.dim - self.degree);
        for (idx, c) in &self.terms {
            let comp = idx.complement(self.dim);
            let sign = idx.wedge_sign(comp).expect("disjoint");
            out.add_term(comp, if sign < 0 { c.negated() } else { c.clone() });
        }
        out
    }

    /// Hodge star for the static frame `h^i` made orthonormal by
    /// `x^i = f_i h^i`: convert to the `x`-frame, apply the unit star, and
    /// convert back.
    pub fn hodge(&self, scaling: &FrameScaling<C>) -> Result<Self> {
        scaling.check_dim(self.dim)?;
        scaling.to_static(&scaling.from_static(self).hodge_unit())
    }

    /// Codifferential factor: `δ = sign * ⋆ d ⋆` on `degree`-forms.
    pub fn codifferential_sign(dim: usize, degree: usize) -> i32 {
        if (dim * (degree + 1) + 1).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Same form viewed in a higher dimension (new indices appended).
    pub fn embed(&self, dim: usize) -> Self {
        assert!(dim >= self.dim);
        Self { dim, degree: self.degree, terms: self.terms.clone() }
    }

    /// Same form in a lower dimension; fails if an index is too large.
    pub fn restrict(&self, dim: usize) -> Result<Self> {
        if let Some(idx) = self.terms.keys().find(|i| i.max_index() > dim) {
            return Err(Error::DimensionMismatch(format!("x^{{{idx}}} does not live in dimension {dim}")));
        }
        Ok(Self { dim, degree: self.degree, terms: self.terms.clone() })
    }

    /// Splits a form as `base + fiber ∧ x^dim` with both parts free of `x^dim`.
    pub fn split_last(&self) -> (Self, Self) {
        let top = self.dim;
        let mut base = Self::zero(self.dim, self.degree);
        let mut fiber = Self::zero(self.dim, self.degree.saturating_sub(1));
        for (idx, c) in &self.terms {
            if idx.contains(top) {
                fiber.add_term(Idx(idx.0 & !(1 << (top - 1))), c.clone());
            } else {
                base.add_term(*idx, c.clone());
            }
        }
        (base, fiber)
    }

    /// `self ∧ x^dim`.
    pub fn wedge_last(&self) -> Self {
        self.wedge(&Self::monomial_idx(self.dim, Idx::single(self.dim), C::one()))
    }

    /// Coefficients in the lexicographic basis of this degree.
    pub fn to_vector(&self) -> Vec<C> {
        basis(self.dim, self.degree).into_iter().map(|i| self.get(i)).collect()
    }

    pub fn from_vector(dim: usize, degree: usize, v: &[C]) -> Self {
        Self::from_terms(dim, degree, basis(dim, degree).into_iter().zip(v.iter().cloned()))
    }

    /// Top-degree coefficient relative to `x^{1..n}`.
    pub fn top_coefficient(&self) -> C {
        self.get(Idx(((1u16 << self.dim) - 1) as u8))
    }

    pub fn render(&self, letter: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (idx, c)) in self.terms.iter().enumerate() {
            let s = c.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) if !is_compound(rest) => (true, rest.to_string()),
                _ => (false, s.clone()),
            };
            let body = if is_compound(&body) { format!("({body})") } else { body };
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let basis = if idx.degree() == 0 { String::new() } else { format!("{letter}^{{{idx}}}") };
            match (body.as_str(), basis.is_empty()) {
                ("1", false) => out.push_str(&basis),
                (_, true) => out.push_str(&body),
                _ => {
                    out.push_str(&body);
                    out.push(' ');
                    out.push_str(&basis);
                }
            }
        }
        out
    }
}

/// True when a rendered scalar has a top-level `+` or `-` after its first
/// character, so it must be parenthesized as a factor.
fn is_compound(s: &str) -> bool {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && i > 0 => return true,
            _ => {}
        }
    }
    false
}

impl<C: Coeff> fmt::Display for KForm<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

impl KForm<TimeScalar> {
    /// Time derivative of a form written in the moving frame `x^i = f_i h^i`:
    /// coefficients are differentiated and each `x^I` picks up
    /// `sum_{i in I} f_i'/f_i`.
    pub fn ddt(&self, scaling: &FrameScaling<TimeScalar>) -> Result<Self> {
        scaling.check_dim(self.dim)?;
        let rates = scaling.log_derivatives()?;
        let mut out = self.map(TimeScalar::ddt);
        for (idx, c) in &self.terms {
            for i in idx.indices() {
                out.add_term(*idx, c.checked_mul(&rates[i - 1])?);
            }
        }
        Ok(out)
    }

    pub fn eval(&self, t: &crate::scalars::Rational) -> Result<Vec<(Idx, f64)>> {
        self.terms.iter().map(|(i, c)| Ok((*i, c.eval(t)?))).collect()
    }
}

/// Frame rescaling `x^i = f_i h^i` with each `f_i` an invertible monomial.
#[derive(Clone, PartialEq, Debug)]
pub struct FrameScaling<C> {
    scales: Vec<C>,
    inverses: Vec<C>,
}

impl<C: Coeff> FrameScaling<C> {
    pub fn new(scales: Vec<C>) -> Result<Self> {
        let inverses = scales
            .iter()
            .map(|s| s.inverse_monomial().ok_or_else(|| Error::NotInvertible(s.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { scales, inverses })
    }

    pub fn unit(dim: usize) -> Self {
        Self { scales: vec![C::one(); dim], inverses: vec![C::one(); dim] }
    }

    pub fn dim(&self) -> usize {
        self.scales.len()
    }

    pub fn scales(&self) -> &[C] {
        &self.scales
    }

    pub fn scale(&self, i: usize) -> &C {
        &self.scales[i - 1]
    }

    pub fn inverse(&self, i: usize) -> &C {
        &self.inverses[i - 1]
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if self.scales.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "scaling has {} factors, form lives in dimension {dim}",
                self.scales.len()
            )));
        }
        Ok(())
    }

    /// `prod_{i in I} f_i`.
    pub fn product(&self, idx: Idx) -> C {
        idx.indices().fold(C::one(), |acc, i| acc.times(&self.scales[i - 1]))
    }

    pub fn inverse_product(&self, idx: Idx) -> C {
        idx.indices().fold(C::one(), |acc, i| acc.times(&self.inverses[i - 1]))
    }

    /// Rewrites an `h`-frame form in the `x`-frame (`h^I = x^I / f_I`).
    pub fn from_static(&self, form: &KForm<C>) -> KForm<C> {
        form.map_indexed(|idx, c| c.times(&self.inverse_product(idx)))
    }

    /// Rewrites an `x`-frame form in the `h`-frame (`x^I = f_I h^I`).
    pub fn to_static(&self, form: &KForm<C>) -> Result<KForm<C>> {
        self.check_dim(form.dim)?;
        Ok(form.map_indexed(|idx, c| c.times(&self.product(idx))))
    }
}

impl FrameScaling<TimeScalar> {
    /// `f_i'/f_i` for each factor.
    pub fn log_derivatives(&self) -> Result<Vec<TimeScalar>> {
        self.scales.iter().zip(&self.inverses).map(|(f, inv)| f.ddt().checked_mul(inv)).collect()
    }

    /// True when `f_i(0) = 1` for the first `n` factors.
    pub fn is_normalized(&self, n: usize) -> bool {
        self.scales.iter().take(n).all(|f| f.at_zero().is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat, Rational};

    fn m(dim: usize, idx: &[usize], c: i64) -> StaticForm {
        KForm::monomial(dim, idx, FieldElem::integer(c))
    }

    fn adapted() -> (StaticForm, StaticForm, StaticForm) {
        let omega = m(6, &[1, 2], 1).add(&m(6, &[3, 4], 1)).add(&m(6, &[5, 6], 1));
        let psip = m(6, &[1, 3, 5], 1).sub(&m(6, &[1, 4, 6], 1)).sub(&m(6, &[2, 3, 6], 1)).sub(&m(6, &[2, 4, 5], 1));
        let psim = m(6, &[2, 4, 6], -1).add(&m(6, &[2, 3, 5], 1)).add(&m(6, &[1, 4, 5], 1)).add(&m(6, &[1, 3, 6], 1));
        (omega, psip, psim)
    }

    /// Sign of the permutation sorting `seq`, by explicit inversion count.
    fn perm_sign(seq: &[usize]) -> i64 {
        let mut inv = 0;
        for a in 0..seq.len() {
            for b in a + 1..seq.len() {
                if seq[a] > seq[b] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 { 1 } else { -1 }
    }

    #[test]
    fn lexicographic_order() {
        let a = Idx::from_indices(&[1, 5]).unwrap();
        let b = Idx::from_indices(&[2, 3]).unwrap();
        assert!(a < b);
        let names: Vec<String> = basis(4, 2).iter().map(|i| i.to_string()).collect();
        assert_eq!(names, ["12", "13", "14", "23", "24", "34"]);
    }

    #[test]
    fn wedge_sign_oracle() {
        assert_eq!(perm_sign(&[1, 3, 5, 2, 4, 6]), -1);
        assert_eq!(m(6, &[1, 3, 5], 1).wedge(&m(6, &[2, 4, 6], 1)), m(6, &[1, 2, 3, 4, 5, 6], -1));
        assert!(m(6, &[1, 2], 1).wedge(&m(6, &[1, 3], 1)).is_zero());
        // exhaustive on disjoint pairs of small tuples
        for i in basis(5, 2) {
            for j in basis(5, 2) {
                let seq: Vec<usize> = i.indices().chain(j.indices()).collect();
                let got = KForm::monomial_idx(5, i, FieldElem::one()).wedge(&KForm::monomial_idx(5, j, FieldElem::one()));
                if i.bits() & j.bits() != 0 {
                    assert!(got.is_zero());
                } else {
                    assert_eq!(got, m(5, &seq, 1));
                    let mut sorted = seq.clone();
                    sorted.sort();
                    assert_eq!(got.get(Idx::from_indices(&sorted).unwrap()), FieldElem::integer(perm_sign(&seq)));
                }
            }
        }
    }

    #[test]
    fn adapted_forms() {
        let (omega, psip, psim) = adapted();
        // brute-force the 16 term products of psi+ ∧ psi-
        let mut total = 0i64;
        for (i, a) in psip.terms() {
            for (j, b) in psim.terms() {
                if i.bits() & j.bits() == 0 {
                    let seq: Vec<usize> = i.indices().chain(j.indices()).collect();
                    let ca = a.as_rational().unwrap().to_integer();
                    let cb = b.as_rational().unwrap().to_integer();
                    total += perm_sign(&seq) * i64::try_from(ca * cb).unwrap();
                }
            }
        }
        assert_eq!(total, 4);
        assert_eq!(psip.wedge(&psim), m(6, &[1, 2, 3, 4, 5, 6], 4));
        let half_sq = omega.wedge(&omega).scale_field(&FieldElem::rational(rat(1, 2)));
        assert_eq!(half_sq, m(6, &[1, 2, 3, 4], 1).add(&m(6, &[1, 2, 5, 6], 1)).add(&m(6, &[3, 4, 5, 6], 1)));
        assert_eq!(omega.hodge_unit(), half_sq);
        assert_eq!(psip.hodge_unit(), psim);
    }

    #[test]
    fn contraction_signs() {
        assert_eq!(m(6, &[1, 2], 1).contract(1).unwrap(), m(6, &[2], 1));
        assert_eq!(m(6, &[1, 2], 1).contract(2).unwrap(), m(6, &[1], -1));
        let (_, psip, _) = adapted();
        // termwise: x135 -> -x15 (position 1), -x236 -> +x26 (position 1)
        assert_eq!(psip.contract(3).unwrap(), m(6, &[1, 5], -1).add(&m(6, &[2, 6], 1)));
        assert!(KForm::scalar(6, FieldElem::one()).contract(1).is_err());
        assert!(m(6, &[1], 1).contract(7).is_err());
    }

    #[test]
    fn hodge_examples() {
        assert_eq!(m(6, &[1, 2], 1).hodge_unit(), m(6, &[3, 4, 5, 6], 1));
        assert_eq!(m(7, &[1, 2, 3, 4, 5, 6], 1).hodge_unit(), m(7, &[7], 1));
        for deg in 0..=7 {
            for idx in basis(7, deg) {
                let x = KForm::monomial_idx(7, idx, FieldElem::one());
                assert_eq!(x.hodge_unit().hodge_unit(), x);
            }
        }
    }

    #[test]
    fn scaled_hodge() {
        // h-frame with x^1 = 2h^1, x^2 = 3h^2 in dim 2: *h^1 = f2/f1 h^2
        let s = FrameScaling::new(vec![FieldElem::integer(2), FieldElem::integer(3)]).unwrap();
        let h1 = m(2, &[1], 1);
        assert_eq!(h1.hodge(&s).unwrap(), KForm::monomial(2, &[2], FieldElem::rational(rat(3, 2))));
    }

    #[test]
    fn ddt_of_frames() {
        let k = int(5);
        let alphas = [rat(1, 2), rat(1, 3), int(0), int(0), int(-1), int(2)];
        let scales = alphas.iter().map(|a| TimeScalar::power(k.clone(), a.clone())).collect();
        let s = FrameScaling::new(scales).unwrap();
        let (omega, psip, _) = adapted();
        let omega_t: TimeForm = omega.convert(|c| TimeScalar::constant(c.clone()));
        let d = omega_t.ddt(&s).unwrap();
        for (p, idx) in [(0usize, [1usize, 2]), (1, [3, 4]), (2, [5, 6])] {
            let sum = &alphas[2 * p] + &alphas[2 * p + 1];
            let expected = TimeScalar::monomial(FieldElem::rational(&sum * &k), k.clone(), int(-1), int(0));
            assert_eq!(d.get(Idx::from_indices(&idx).unwrap()), expected);
        }
        // equal factors F: d/dt psi+ = 3 F'/F psi+
        let f = TimeScalar::power(k.clone(), rat(1, 2));
        let s = FrameScaling::new(vec![f.clone(); 6]).unwrap();
        let psi_t: TimeForm = psip.convert(|c| TimeScalar::constant(c.clone()));
        let rate = f.ddt().checked_mul(&f.inverse().unwrap()).unwrap();
        assert_eq!(psi_t.ddt(&s).unwrap(), psi_t.scale(&rate).scale_field(&FieldElem::integer(3)));
        // static frame
        let s0 = FrameScaling::<TimeScalar>::unit(6);
        assert!(omega_t.ddt(&s0).unwrap().is_zero());
    }

    #[test]
    fn ddt_matches_static_differentiation() {
        let k = int(-3);
        let alphas: Vec<Rational> = vec![rat(1, 6), rat(-1, 6), rat(1, 2), int(1), int(0), rat(2, 3)];
        let s = FrameScaling::new(alphas.iter().map(|a| TimeScalar::power(k.clone(), a.clone())).collect()).unwrap();
        let (_, psip, _) = adapted();
        let x_form: TimeForm = psip.convert(|c| TimeScalar::constant(c.clone()));
        let via_frame = s.to_static(&x_form.ddt(&s).unwrap()).unwrap();
        let via_static = s.to_static(&x_form).unwrap().map(TimeScalar::ddt);
        assert_eq!(via_frame, via_static);
    }

    #[test]
    fn rendering() {
        let f = m(6, &[1, 2, 5], 2).add(&m(6, &[3, 4, 5], -2));
        assert_eq!(f.to_string(), "2 x^{125} - 2 x^{345}");
        let g = KForm::monomial(6, &[1, 3], FieldElem::new(int(-2), int(2), int(0), int(0)));
        assert_eq!(g.render("h"), "(-2+2r2) h^{13}");
        assert_eq!(m(6, &[1], -1).to_string(), "-x^{1}");
    }
}

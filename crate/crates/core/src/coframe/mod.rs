//! Lie-algebra coframes given by structure equations `dh^i = sum c^i_jk h^jk`.

mod catalog;
mod parse;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use catalog::{catalog, catalog_names, find, lookup, CatalogEntry, Family};
pub use parse::parse_structure_equations;

use crate::error::{Error, Result};
use crate::exterior::{basis, FrameScaling, Idx, KForm, StaticForm};
use crate::scalars::{Coeff, FieldElem, Rational};

/// Invariant coframe `h^1..h^n` with exact structure constants.
#[derive(Clone, PartialEq, Debug)]
pub struct Coframe {
    name: String,
    d_table: Vec<StaticForm>,
    params: Vec<(String, Rational)>,
}

impl Coframe {
    pub fn new(name: impl Into<String>, d_table: Vec<StaticForm>) -> Result<Self> {
        let dim = d_table.len();
        if !(1..=6).contains(&dim) {
            return Err(Error::DimensionMismatch(format!("coframes have 1 to 6 generators, got {dim}")));
        }
        for (i, dh) in d_table.iter().enumerate() {
            if dh.dim() != dim || dh.degree() != 2 {
                return Err(Error::DimensionMismatch(format!(
                    "dh^{} must be a 2-form in dimension {dim}",
                    i + 1
                )));
            }
        }
        Ok(Self { name: name.into(), d_table, params: Vec::new() })
    }

    pub fn with_params(mut self, params: Vec<(String, Rational)>) -> Self {
        self.params = params;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.d_table.len()
    }

    pub fn params(&self) -> &[(String, Rational)] {
        &self.params
    }

    /// `dh^i`, 1-based.
    pub fn dh(&self, i: usize) -> &StaticForm {
        &self.d_table[i - 1]
    }

    pub fn d_table(&self) -> &[StaticForm] {
        &self.d_table
    }

    pub fn is_abelian(&self) -> bool {
        self.d_table.iter().all(KForm::is_zero)
    }

    /// Same algebra with every structure constant multiplied by `lambda`
    /// (the coframe `lambda^{-1} h^i`).
    pub fn scaled(&self, lambda: &FieldElem) -> Self {
        Self {
            name: self.name.clone(),
            d_table: self.d_table.iter().map(|f| f.scale_field(lambda)).collect(),
            params: self.params.clone(),
        }
    }

    /// Exterior derivative on static `h`-frame forms.
    pub fn d(&self, form: &StaticForm) -> StaticForm {
        Structure::unit(self, form.dim()).d(form)
    }

    /// Jacobi check: `d(dh^i) = 0` for every generator.
    pub fn validate(&self) -> ValidationReport {
        let s = Structure::unit(self, self.dim());
        let residuals: Vec<StaticForm> = self.d_table.iter().map(|dh| s.d(dh)).collect();
        let failures = residuals
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_zero())
            .map(|(i, r)| GeneratorResidual { generator: i + 1, d_squared: r.render("h") })
            .collect();
        ValidationReport { algebra: self.name.clone(), passes: residuals.iter().all(KForm::is_zero), failures }
    }

    /// Salamon notation, e.g. `(0,0,-h14,-h13,h25,-h26)`; parses back to the
    /// same coframe.
    pub fn render(&self) -> String {
        let entries: Vec<String> = self.d_table.iter().map(render_entry).collect();
        format!("({})", entries.join(","))
    }
}

fn render_entry(form: &StaticForm) -> String {
    if form.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (n, (idx, c)) in form.terms().enumerate() {
        let (neg, mag) = if c.leading_negative() { (true, -c) } else { (false, c.clone()) };
        if neg {
            out.push('-');
        } else if n > 0 {
            out.push('+');
        }
        if !mag.is_one() {
            out.push_str(&mag.factor_string());
        }
        out.push('h');
        out.push_str(&idx.to_string());
    }
    out
}

impl fmt::Display for Coframe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.name, self.render())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorResidual {
    pub generator: usize,
    pub d_squared: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub algebra: String,
    pub passes: bool,
    pub failures: Vec<GeneratorResidual>,
}

/// Exterior derivative on a (possibly rescaled, possibly warped) orthonormal
/// frame `x^i = f_i h^i`, with coefficients in `C`.
///
/// `dx^i = sum c^i_jk f_i/(f_j f_k) x^jk` for base indices; any extra index
/// (the fiber direction `x^7 = f ds`) is closed. Coefficients depend on time
/// only, so `d` is `C`-linear.
#[derive(Clone, Debug)]
pub struct Structure<C> {
    dim: usize,
    dx: Vec<KForm<C>>,
    d_basis: Vec<KForm<C>>,
}

impl<C: Coeff> Structure<C> {
    /// Builds the structure on `dim >= frame.dim()` with the first
    /// `frame.dim()` frame factors taken from `scaling`.
    pub fn new(frame: &Coframe, scaling: &FrameScaling<C>, dim: usize) -> Result<Self> {
        let n = frame.dim();
        if dim < n || scaling.dim() < n {
            return Err(Error::DimensionMismatch(format!(
                "structure of {} in dimension {dim} with {} scale factors",
                frame.name,
                scaling.dim()
            )));
        }
        let mut dx = Vec::with_capacity(dim);
        for i in 1..=dim {
            if i > n {
                dx.push(KForm::zero(dim, 2));
                continue;
            }
            let form = frame.dh(i).embed(dim).convert(|c| C::from_field(c.clone()));
            let fi = scaling.scale(i).clone();
            dx.push(form.map_indexed(|idx, c| {
                let ratio = idx.indices().fold(fi.clone(), |acc, j| acc.times(scaling.inverse(j)));
                c.times(&ratio)
            }));
        }
        Ok(Self::from_dx(dim, dx))
    }

    /// Unscaled structure (`x^i = h^i`).
    pub fn unit(frame: &Coframe, dim: usize) -> Self {
        Self::new(frame, &FrameScaling::unit(frame.dim()), dim).expect("unit scaling matches the frame")
    }

    fn from_dx(dim: usize, dx: Vec<KForm<C>>) -> Self {
        let mut d_basis = vec![KForm::zero(dim, 1); 1 << dim];
        for bits in 0u16..(1 << dim) {
            d_basis[bits as usize] = d_monomial(dim, &dx, Idx::from_bits(bits as u8));
        }
        Self { dim, dx, d_basis }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `dx^i`, 1-based.
    pub fn dx(&self, i: usize) -> &KForm<C> {
        &self.dx[i - 1]
    }

    pub fn d(&self, form: &KForm<C>) -> KForm<C> {
        assert_eq!(form.dim(), self.dim, "form dimension does not match the structure");
        let mut out = KForm::zero(self.dim, (form.degree() + 1).min(self.dim));
        if form.degree() == self.dim {
            return out;
        }
        for (idx, c) in form.terms() {
            for (j, b) in self.d_basis[idx.bits() as usize].terms() {
                out.add_term(*j, c.times(b));
            }
        }
        out
    }
}

/// Leibniz expansion `d(x^{i1..ik}) = sum_p (-1)^(p-1) x^{..} ∧ dx^{ip} ∧ x^{..}`.
fn d_monomial<C: Coeff>(dim: usize, dx: &[KForm<C>], idx: Idx) -> KForm<C> {
    let k = idx.degree();
    let mut out = KForm::zero(dim, (k + 1).min(dim));
    if k == dim {
        return out;
    }
    let indices: Vec<usize> = idx.indices().collect();
    for (p, &i) in indices.iter().enumerate() {
        let before = Idx::from_indices(&indices[..p]).unwrap();
        let after = Idx::from_indices(&indices[p + 1..]).unwrap();
        for (jk, c) in dx[i - 1].terms() {
            let Some(s1) = before.wedge_sign(*jk) else { continue };
            let mid = Idx::from_bits(before.bits() | jk.bits());
            let Some(s2) = mid.wedge_sign(after) else { continue };
            let sign = s1 * s2 * if p % 2 == 0 { 1 } else { -1 };
            let target = Idx::from_bits(mid.bits() | after.bits());
            out.add_term(target, if sign < 0 { c.negated() } else { c.clone() });
        }
    }
    out
}

/// All basis monomials of every degree in dimension `dim`.
pub fn all_monomials(dim: usize) -> Vec<Idx> {
    (0..=dim).flat_map(|k| basis(dim, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, TimeScalar};

    fn h(idx: &[usize], c: i64) -> StaticForm {
        KForm::monomial(6, idx, FieldElem::integer(c))
    }

    #[test]
    fn leibniz_on_h3() {
        let h3 = lookup("h3", None).unwrap();
        let omega = h(&[1, 2], 1).add(&h(&[3, 4], 1)).add(&h(&[5, 6], 1));
        assert_eq!(h3.d(&omega), h(&[1, 2, 5], 2).add(&h(&[3, 4, 5], -2)));
        assert!(h3.d(&h(&[1, 2], 1)).is_zero());
    }

    #[test]
    fn jacobi_failure_is_reported() {
        let bad = parse_structure_equations("(0,h34,0,h56,0,0)", 6).unwrap();
        let report = bad.validate();
        assert!(!report.passes);
        assert_eq!(report.failures.len(), 1);
        assert_eq!(report.failures[0].generator, 2);
        assert_eq!(report.failures[0].d_squared, "-h^{356}");
        assert!(parse_structure_equations("(0,0,h12,0,0,0)", 6).unwrap().validate().passes);
    }

    #[test]
    fn time_dependent_structure_constants() {
        // e(1,1)+e(1,1): dx^3 = -(1+kt)^(a3-a1-a4) x^14
        let e = lookup("e11+e11", None).unwrap();
        let k = int(-2);
        let a = [int(1), int(0), int(3), int(5), int(0), int(0)];
        let s = FrameScaling::new(a.iter().map(|x| TimeScalar::power(k.clone(), x.clone())).collect()).unwrap();
        let st = Structure::new(&e, &s, 7).unwrap();
        let expected = TimeScalar::monomial(FieldElem::integer(-1), k, &a[2] - &a[0] - &a[3], int(0));
        assert_eq!(st.dx(3), &KForm::monomial(7, &[1, 4], expected));
        assert!(st.dx(7).is_zero());
    }

    #[test]
    fn d_squared_vanishes_on_all_monomials() {
        for entry in catalog() {
            let frame = entry.build(None).unwrap();
            let s = Structure::unit(&frame, 7);
            for idx in all_monomials(7) {
                let x = KForm::monomial_idx(7, idx, FieldElem::one());
                assert!(s.d(&s.d(&x)).is_zero(), "{} on x^{idx}", frame.name());
            }
        }
    }
}

//! SU(3)-structures in an adapted frame: type decompositions, torsion forms
//! and the class of the structure.
//!
//! The adapted forms are
//! `ω = x12 + x34 + x56`, `ψ+ = x135 - x146 - x236 - x245`,
//! `ψ- = x136 + x145 + x235 - x246`. Type spaces are cut out by wedge
//! conditions only; no almost-complex structure acts on forms here.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::coframe::{Coframe, Structure};
use crate::error::{Error, Result};
use crate::exterior::{basis, FrameScaling, KForm, StaticForm};
use crate::linalg::{inverse, nullspace, Matrix};
use crate::scalars::{rat, Coeff, FieldElem, Rational};

fn m(indices: &[usize], c: i64) -> StaticForm {
    KForm::monomial(6, indices, FieldElem::integer(c))
}

pub fn omega() -> StaticForm {
    m(&[1, 2], 1).add(&m(&[3, 4], 1)).add(&m(&[5, 6], 1))
}

pub fn psi_plus() -> StaticForm {
    m(&[1, 3, 5], 1).sub(&m(&[1, 4, 6], 1)).sub(&m(&[2, 3, 6], 1)).sub(&m(&[2, 4, 5], 1))
}

pub fn psi_minus() -> StaticForm {
    m(&[1, 3, 6], 1).add(&m(&[1, 4, 5], 1)).add(&m(&[2, 3, 5], 1)).sub(&m(&[2, 4, 6], 1))
}

fn lift<C: Coeff>(f: &StaticForm) -> KForm<C> {
    f.convert(|c| C::from_field(c.clone()))
}

fn to_rational_vector(f: &StaticForm) -> Vec<Rational> {
    f.to_vector().iter().map(|c| c.as_rational().expect("rational basis form").clone()).collect()
}

fn from_rational_vector(degree: usize, v: &[Rational]) -> StaticForm {
    let coeffs: Vec<FieldElem> = v.iter().map(|q| FieldElem::rational(q.clone())).collect();
    KForm::from_vector(6, degree, &coeffs)
}

/// Nullspace of the linear map `x -> (x ∧ w)_{w in conditions}` on `degree`-forms.
fn wedge_kernel(degree: usize, conditions: &[StaticForm]) -> Vec<StaticForm> {
    let cols: Vec<StaticForm> = basis(6, degree).into_iter().map(|i| KForm::monomial_idx(6, i, FieldElem::one())).collect();
    let mut rows: Matrix<Rational> = Vec::new();
    for w in conditions {
        let images: Vec<Vec<Rational>> = cols.iter().map(|c| to_rational_vector(&c.wedge(w))).collect();
        for r in 0..images[0].len() {
            rows.push(images.iter().map(|img| img[r].clone()).collect());
        }
    }
    nullspace(&rows, cols.len()).iter().map(|v| from_rational_vector(degree, v)).collect()
}

/// Columns are the given forms; returns the inverse of that square matrix.
fn inverse_of_columns(forms: &[StaticForm]) -> Matrix<Rational> {
    let vecs: Vec<Vec<Rational>> = forms.iter().map(to_rational_vector).collect();
    let n = vecs.len();
    assert_eq!(n, vecs[0].len(), "basis must be square");
    let mat: Matrix<Rational> = (0..n).map(|r| (0..n).map(|c| vecs[c][r].clone()).collect()).collect();
    inverse(&mat).expect("type basis is a basis")
}

/// Constant bases of the SU(3)-irreducible pieces and the inverse change of
/// basis matrices used for exact decomposition.
pub struct TypeBases {
    pub lambda2_6: Vec<StaticForm>,
    pub lambda2_8: Vec<StaticForm>,
    pub lambda3_12: Vec<StaticForm>,
    inv2: Matrix<Rational>,
    inv3: Matrix<Rational>,
    inv4_plus: Matrix<Rational>,
    inv4_minus: Matrix<Rational>,
}

pub fn type_bases() -> &'static TypeBases {
    static BASES: OnceLock<TypeBases> = OnceLock::new();
    BASES.get_or_init(|| {
        let (w, pp, pm) = (omega(), psi_plus(), psi_minus());
        let w2 = w.wedge(&w);
        let x = |i: usize| m(&[i], 1);
        let lambda2_6: Vec<StaticForm> = (1..=6).map(|i| x(i).wedge(&pp).hodge_unit()).collect();
        let lambda2_8 = wedge_kernel(2, &[pp.clone(), w2.clone()]);
        let lambda3_12 = wedge_kernel(3, &[w.clone(), pp.clone(), pm.clone()]);

        let mut cols2 = vec![w.clone()];
        cols2.extend(lambda2_6.iter().cloned());
        cols2.extend(lambda2_8.iter().cloned());
        let mut cols3 = vec![pp.clone(), pm.clone()];
        cols3.extend((1..=6).map(|i| x(i).wedge(&w)));
        cols3.extend(lambda3_12.iter().cloned());
        let cols4 = |psi: &StaticForm| {
            let mut c = vec![w2.clone()];
            c.extend((1..=6).map(|i| x(i).wedge(psi)));
            c.extend(lambda2_8.iter().map(|b| b.wedge(&w).neg()));
            c
        };
        TypeBases {
            inv2: inverse_of_columns(&cols2),
            inv3: inverse_of_columns(&cols3),
            inv4_plus: inverse_of_columns(&cols4(&pp)),
            inv4_minus: inverse_of_columns(&cols4(&pm)),
            lambda2_6,
            lambda2_8,
            lambda3_12,
        }
    })
}

fn apply<C: Coeff>(inv: &Matrix<Rational>, form: &KForm<C>) -> Vec<C> {
    let v = form.to_vector();
    inv.iter()
        .map(|row| {
            row.iter().zip(&v).fold(C::zero(), |acc, (q, c)| {
                if num_traits::Zero::is_zero(q) || c.is_zero() {
                    acc
                } else {
                    acc.plus(&c.scaled(&FieldElem::rational(q.clone())))
                }
            })
        })
        .collect()
}

fn combine<C: Coeff>(coords: &[C], forms: &[StaticForm], degree: usize) -> KForm<C> {
    let mut out = KForm::zero(6, degree);
    for (c, f) in coords.iter().zip(forms) {
        if !c.is_zero() {
            out = out.add(&lift::<C>(f).scale(c));
        }
    }
    out
}

fn one_form<C: Coeff>(coords: &[C]) -> KForm<C> {
    KForm::from_vector(6, 1, coords)
}

/// `σ = part1 ω + part6 + part8`.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition2<C> {
    pub part1: C,
    pub part6: KForm<C>,
    pub part8: KForm<C>,
}

/// `γ = plus ψ+ + minus ψ- + eta ∧ ω + part12`.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition3<C> {
    pub plus: C,
    pub minus: C,
    pub eta: KForm<C>,
    pub part12: KForm<C>,
}

pub fn decompose2<C: Coeff>(sigma: &KForm<C>) -> Result<Decomposition2<C>> {
    check_form(sigma, 2)?;
    let b = type_bases();
    let c = apply(&b.inv2, sigma);
    Ok(Decomposition2 {
        part1: c[0].clone(),
        part6: combine(&c[1..7], &b.lambda2_6, 2),
        part8: combine(&c[7..15], &b.lambda2_8, 2),
    })
}

pub fn decompose3<C: Coeff>(gamma: &KForm<C>) -> Result<Decomposition3<C>> {
    check_form(gamma, 3)?;
    let b = type_bases();
    let c = apply(&b.inv3, gamma);
    Ok(Decomposition3 {
        plus: c[0].clone(),
        minus: c[1].clone(),
        eta: one_form(&c[2..8]),
        part12: combine(&c[8..20], &b.lambda3_12, 3),
    })
}

fn check_form<C: Coeff>(f: &KForm<C>, degree: usize) -> Result<()> {
    if f.dim() != 6 || f.degree() != degree {
        return Err(Error::DimensionMismatch(format!(
            "expected a {degree}-form in dimension 6, got a {}-form in dimension {}",
            f.degree(),
            f.dim()
        )));
    }
    Ok(())
}

/// `σ ∧ ψ+ = 0` and `σ ∧ ω² = 0`.
pub fn in_lambda2_8<C: Coeff>(sigma: &KForm<C>) -> bool {
    let w = lift::<C>(&omega());
    sigma.wedge(&lift(&psi_plus())).is_zero() && sigma.wedge(&w.wedge(&w)).is_zero()
}

/// `γ ∧ ω = 0` and `γ ∧ ψ± = 0`.
pub fn in_lambda3_12<C: Coeff>(gamma: &KForm<C>) -> bool {
    gamma.wedge(&lift(&omega())).is_zero()
        && gamma.wedge(&lift(&psi_plus())).is_zero()
        && gamma.wedge(&lift(&psi_minus())).is_zero()
}

/// SU(3)-structure given by the adapted forms on the orthonormal frame
/// `x^i = f_i h^i` of a coframe.
#[derive(Clone, Debug)]
pub struct Su3Structure<C> {
    name: String,
    structure: Structure<C>,
    pub omega: KForm<C>,
    pub psi_plus: KForm<C>,
    pub psi_minus: KForm<C>,
}

impl<C: Coeff> Su3Structure<C> {
    pub fn new(frame: &Coframe, scaling: &FrameScaling<C>) -> Result<Self> {
        if frame.dim() != 6 {
            return Err(Error::DimensionMismatch(format!("{} is not 6-dimensional", frame.name())));
        }
        let s = Self {
            name: frame.name().to_string(),
            structure: Structure::new(frame, scaling, 6)?,
            omega: lift(&omega()),
            psi_plus: lift(&psi_plus()),
            psi_minus: lift(&psi_minus()),
        };
        s.check_compatibility()?;
        Ok(s)
    }

    pub fn unit(frame: &Coframe) -> Result<Self> {
        Self::new(frame, &FrameScaling::unit(6))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn structure(&self) -> &Structure<C> {
        &self.structure
    }

    pub fn d(&self, form: &KForm<C>) -> KForm<C> {
        self.structure.d(form)
    }

    /// `ω ∧ ψ± = 0`, `ψ+ ∧ ψ- = (2/3) ω³ ≠ 0`, `⋆ψ+ = ψ-`.
    pub fn check_compatibility(&self) -> Result<()> {
        let w3 = self.omega.wedge(&self.omega).wedge(&self.omega);
        let fail = |what: &str| Err(Error::Structural(format!("{}: {what}", self.name)));
        if !self.omega.wedge(&self.psi_plus).is_zero() || !self.omega.wedge(&self.psi_minus).is_zero() {
            return fail("ω ∧ ψ± ≠ 0");
        }
        if w3.is_zero() {
            return fail("ω³ = 0");
        }
        if self.psi_plus.wedge(&self.psi_minus) != w3.scale_field(&FieldElem::rational(rat(2, 3))) {
            return fail("ψ+ ∧ ψ- ≠ (2/3) ω³");
        }
        if self.psi_plus.hodge_unit() != self.psi_minus {
            return fail("⋆ψ+ ≠ ψ-");
        }
        Ok(())
    }

    /// Torsion forms, each determined by one exact solve and cross-checked.
    pub fn torsion(&self) -> Result<Su3Torsion<C>> {
        let b = type_bases();
        let dw = self.d(&self.omega);
        let dpp = self.d(&self.psi_plus);
        let dpm = self.d(&self.psi_minus);

        let d3 = decompose3(&dw)?;
        let two_thirds = FieldElem::rational(rat(2, 3));
        let sigma0 = d3.plus.scaled(&-&two_thirds);
        let pi0 = d3.minus.scaled(&two_thirds);

        let cp = apply(&b.inv4_plus, &dpp);
        let cm = apply(&b.inv4_minus, &dpm);
        let pi1 = one_form(&cp[1..7]);
        let tor = Su3Torsion {
            sigma0: sigma0.clone(),
            pi0: pi0.clone(),
            pi1: pi1.clone(),
            nu1: d3.eta,
            pi2: combine(&cp[7..15], &b.lambda2_8, 2),
            sigma2: combine(&cm[7..15], &b.lambda2_8, 2),
            nu3: d3.part12,
        };
        let inconsistent = |what: &str| Err(Error::Structural(format!("{}: {what} disagrees between equations", self.name)));
        if cp[0] != pi0 {
            return inconsistent("π0");
        }
        if cm[0] != sigma0 {
            return inconsistent("σ0");
        }
        if one_form(&cm[1..7]) != pi1 {
            return inconsistent("π1");
        }
        let (rw, rp, rm) = tor.reconstruct(self);
        if rw != dw || rp != dpp || rm != dpm {
            return Err(Error::Structural(format!("{}: torsion does not reproduce dω, dψ±", self.name)));
        }
        Ok(tor)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Su3Torsion<C> {
    pub sigma0: C,
    pub pi0: C,
    pub pi1: KForm<C>,
    pub nu1: KForm<C>,
    pub pi2: KForm<C>,
    pub sigma2: KForm<C>,
    pub nu3: KForm<C>,
}

impl<C: Coeff> Su3Torsion<C> {
    pub fn zero() -> Self {
        Self {
            sigma0: C::zero(),
            pi0: C::zero(),
            pi1: KForm::zero(6, 1),
            nu1: KForm::zero(6, 1),
            pi2: KForm::zero(6, 2),
            sigma2: KForm::zero(6, 2),
            nu3: KForm::zero(6, 3),
        }
    }

    /// Right-hand sides of the structure equations for `dω`, `dψ+`, `dψ-`.
    pub fn reconstruct(&self, s: &Su3Structure<C>) -> (KForm<C>, KForm<C>, KForm<C>) {
        let three_halves = FieldElem::rational(rat(3, 2));
        let w2 = s.omega.wedge(&s.omega);
        let dw = s
            .psi_plus
            .scale(&self.sigma0.scaled(&-&three_halves))
            .add(&s.psi_minus.scale(&self.pi0.scaled(&three_halves)))
            .add(&self.nu1.wedge(&s.omega))
            .add(&self.nu3);
        let dpp = w2.scale(&self.pi0).add(&self.pi1.wedge(&s.psi_plus)).sub(&self.pi2.wedge(&s.omega));
        let dpm = w2.scale(&self.sigma0).add(&self.pi1.wedge(&s.psi_minus)).sub(&self.sigma2.wedge(&s.omega));
        (dw, dpp, dpm)
    }

    /// Names of the non-vanishing torsion forms, in a fixed order.
    pub fn nonzero(&self) -> Vec<&'static str> {
        let flags = [
            ("sigma0", !self.sigma0.is_zero()),
            ("pi0", !self.pi0.is_zero()),
            ("pi1", !self.pi1.is_zero()),
            ("nu1", !self.nu1.is_zero()),
            ("pi2", !self.pi2.is_zero()),
            ("sigma2", !self.sigma2.is_zero()),
            ("nu3", !self.nu3.is_zero()),
        ];
        flags.iter().filter(|(_, nz)| *nz).map(|(n, _)| *n).collect()
    }

    pub fn classify(&self) -> Su3Class {
        classify_su3(self)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Su3Class {
    CalabiYau,
    NearlyKahler,
    SymplecticHalfFlat,
    Balanced,
    Other,
}

impl fmt::Display for Su3Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Su3Class::CalabiYau => "Calabi-Yau",
            Su3Class::NearlyKahler => "nearly Kahler",
            Su3Class::SymplecticHalfFlat => "symplectic half-flat",
            Su3Class::Balanced => "balanced",
            Su3Class::Other => "other",
        })
    }
}

/// Class by the pattern of non-vanishing torsion forms.
pub fn classify_su3<C: Coeff>(tor: &Su3Torsion<C>) -> Su3Class {
    match tor.nonzero().as_slice() {
        [] => Su3Class::CalabiYau,
        ["sigma0"] => Su3Class::NearlyKahler,
        ["sigma2"] => Su3Class::SymplecticHalfFlat,
        ["nu3"] => Su3Class::Balanced,
        _ => Su3Class::Other,
    }
}

/// Bilinear form `B(X, Y) vol = -3 (ι_X ω) ∧ (ι_Y ψ+) ∧ ψ+` on the frame.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricDiagnostic {
    pub matrix: Vec<Vec<FieldElem>>,
    /// Common diagonal value when the form is a multiple of the identity.
    pub constant: Option<FieldElem>,
}

pub fn metric_diagnostic() -> MetricDiagnostic {
    let (w, pp) = (omega(), psi_plus());
    let minus3 = FieldElem::integer(-3);
    let matrix: Vec<Vec<FieldElem>> = (1..=6)
        .map(|i| {
            (1..=6)
                .map(|j| {
                    let ix = w.contract(i).expect("degree 2");
                    let iy = pp.contract(j).expect("degree 3");
                    ix.wedge(&iy).wedge(&pp).scale_field(&minus3).top_coefficient()
                })
                .collect()
        })
        .collect();
    MetricDiagnostic { constant: scalar_multiple_of_identity(&matrix), matrix }
}

pub(crate) fn scalar_multiple_of_identity(matrix: &[Vec<FieldElem>]) -> Option<FieldElem> {
    let c = matrix[0][0].clone();
    let ok = matrix.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, v)| if i == j { *v == c } else { v.is_zero() })
    });
    ok.then_some(c)
}

/// Serializable torsion report with exact string rendering.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Su3Report {
    pub algebra: String,
    pub sigma0: String,
    pub pi0: String,
    pub pi1: String,
    pub nu1: String,
    pub pi2: String,
    pub sigma2: String,
    pub nu3: String,
    pub class: Su3Class,
    pub nonzero: Vec<String>,
}

impl Su3Report {
    pub fn new<C: Coeff>(algebra: &str, tor: &Su3Torsion<C>) -> Self {
        Self {
            algebra: algebra.to_string(),
            sigma0: tor.sigma0.to_string(),
            pi0: tor.pi0.to_string(),
            pi1: tor.pi1.to_string(),
            nu1: tor.nu1.to_string(),
            pi2: tor.pi2.to_string(),
            sigma2: tor.sigma2.to_string(),
            nu3: tor.nu3.to_string(),
            class: tor.classify(),
            nonzero: tor.nonzero().into_iter().map(String::from).collect(),
        }
    }
}

/// Torsion of the adapted structure on a static coframe.
pub fn static_torsion(frame: &Coframe) -> Result<Su3Torsion<FieldElem>> {
    Su3Structure::<FieldElem>::unit(frame)?.torsion()
}

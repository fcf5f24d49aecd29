//! Hodge Laplacian on the warped 7-frame and the Laplacian coflow
//! `∂t ⋆φ = -Δ ⋆φ` for families of potential type
//! `x^i = (1+kt)^{α_i} h^i`, `f = c (1+kt)^β` (or `c e^{kt}`).
//!
//! Families are always taken with orientation `(α, β) = (0, 1)`, i.e.
//! `φ = f ω∧ds - ψ-`.

mod solver;
mod tables;

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use solver::{solve_potential_ansatz, SolutionFamily, SolveReport, SolvedAnsatz};
pub use tables::{expected_rows, render_column, reproduce_tables, ExpectedRow, TableReport, TableRow, Which};

use crate::coframe::{lookup, Coframe, Family, Structure};
use crate::error::{Error, Result};
use crate::exterior::{FrameScaling, KForm, TimeForm};
use crate::g2warp::{warped_class_conditions, G2Class, WarpedG2Structure};
use crate::scalars::{int, rat, Coeff, FieldElem, RatDisplay, Rational, TimeScalar};
use crate::su3::{classify_su3, Su3Class, Su3Structure};

/// `Δ = dδ + δd` with `δ = ±⋆d⋆` on the orthonormal frame of `s`.
pub fn hodge_laplacian<C: Coeff>(s: &Structure<C>, a: &KForm<C>) -> KForm<C> {
    let n = s.dim();
    let delta = |f: &KForm<C>| {
        let r = s.d(&f.hodge_unit()).hodge_unit();
        if KForm::<C>::codifferential_sign(n, f.degree()) < 0 {
            r.neg()
        } else {
            r
        }
    };
    let mut out = KForm::zero(n, a.degree());
    if a.degree() > 0 {
        out = out.add(&s.d(&delta(a)));
    }
    if a.degree() < n {
        out = out.add(&delta(&s.d(a)));
    }
    out
}

pub fn laplacian7<C: Coeff>(a: &KForm<C>, w: &WarpedG2Structure<C>) -> KForm<C> {
    hodge_laplacian(w.structure(), a)
}

/// `Δ⋆φ = ⋆Δφ`.
pub fn star_commutes<C: Coeff>(w: &WarpedG2Structure<C>) -> bool {
    laplacian7(w.star_phi(), w) == laplacian7(w.phi(), w).hodge_unit()
}

/// `Δφ = -d(ασ2 + βπ2)` for closed warped structures, checked against the
/// Hodge Laplacian.
pub fn laplacian_closed_formula<C: Coeff>(w: &WarpedG2Structure<C>) -> Result<KForm<C>> {
    let tor = w.base().torsion()?;
    if !warped_class_conditions(&tor, w.alpha(), w.beta()).admits(G2Class::Closed) {
        return Err(Error::Precondition(format!("{}: φ is not closed", w.name())));
    }
    let sum2 = tor.sigma2.scale_field(w.alpha()).add(&tor.pi2.scale_field(w.beta()));
    let out = w.base().d(&sum2).neg().embed(7);
    if out != laplacian7(w.phi(), w) {
        return Err(Error::Structural(format!("{}: closed Laplacian formula disagrees with Δφ", w.name())));
    }
    Ok(out)
}

/// `Δ⋆φ` for coclosed warped structures with constant warp, from the SU(3)
/// torsion of the base, checked against the Hodge Laplacian.
pub fn laplacian_coclosed_formula<C: Coeff>(w: &WarpedG2Structure<C>) -> Result<KForm<C>> {
    let out = coclosed_formula_unchecked(w)?;
    if out != laplacian7(w.star_phi(), w) {
        return Err(Error::Structural(format!("{}: coclosed Laplacian formula disagrees with Δ⋆φ", w.name())));
    }
    Ok(out)
}

fn coclosed_formula_unchecked<C: Coeff>(w: &WarpedG2Structure<C>) -> Result<KForm<C>> {
    let tor = w.base().torsion()?;
    if !warped_class_conditions(&tor, w.alpha(), w.beta()).admits(G2Class::Coclosed) {
        return Err(Error::Precondition(format!("{}: φ is not coclosed", w.name())));
    }
    let (a, b) = (w.alpha(), w.beta());
    let base = w.base();
    let big_a = tor.pi0.scaled(a).minus(&tor.sigma0.scaled(b));
    let diff2 = tor.pi2.scale_field(a).sub(&tor.sigma2.scale_field(b));
    let three_halves = FieldElem::rational(rat(3, 2));
    let w2 = base.omega.wedge(&base.omega);
    let horizontal = w2
        .scale(&big_a.times(&big_a))
        .sub(&diff2.wedge(&base.omega).scale(&big_a))
        .scale_field(&three_halves)
        .sub(&base.d(&tor.nu3.hodge_unit()));
    let three = FieldElem::integer(3);
    let vertical = base
        .psi_plus
        .scale(&tor.sigma0.scaled(&-&three))
        .add(&base.psi_minus.scale(&tor.pi0.scaled(&three)))
        .add(&tor.nu3.scale_field(&FieldElem::integer(2)))
        .scale(&big_a)
        .add(&base.d(&diff2));
    Ok(horizontal.embed(7).add(&vertical.embed(7).wedge_last()))
}

/// The closed-flow system `f'ω + f∂tω = 0`, `α∂tψ+ - β∂tψ- = -d(ασ2 + βπ2)`
/// for a closed warped structure, rendered.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosedFlowSystem {
    pub algebra: String,
    pub equations: Vec<String>,
}

pub fn assemble_flow_system_closed<C: Coeff>(w: &WarpedG2Structure<C>) -> Result<ClosedFlowSystem> {
    let rhs = laplacian_closed_formula(w)?.restrict(6)?;
    let (a, b) = (w.alpha(), w.beta());
    let mut psi = String::new();
    if !a.is_zero() {
        psi.push_str(&format!("{} ∂t ψ+", coefficient(a)));
    }
    if !b.is_zero() {
        let neg = !b.leading_negative();
        let mag = if neg { b.clone() } else { -b };
        if psi.is_empty() {
            psi.push_str(if neg { "-" } else { "" });
        } else {
            psi.push_str(if neg { " - " } else { " + " });
        }
        psi.push_str(&format!("{}∂t ψ-", coefficient(&mag).trim_start()));
    }
    Ok(ClosedFlowSystem {
        algebra: w.name().to_string(),
        equations: vec!["f' ω + f ∂t ω = 0".to_string(), format!("{} = {}", psi.trim(), rhs)],
    })
}

fn coefficient(c: &FieldElem) -> String {
    if c.is_one() {
        String::new()
    } else {
        format!("{} ", c.factor_string())
    }
}

/// Time dependence of the warp.
#[derive(Clone, Debug, PartialEq)]
pub enum Warp {
    /// `f = c (1+kt)^β`.
    Power { beta: Rational },
    /// `f = c e^{kt}`.
    Exponential,
}

/// Open interval `(lower, upper)`; `None` is infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

impl Interval {
    pub fn contains(&self, t: &Rational) -> bool {
        self.lower.as_ref().is_none_or(|l| t > l) && self.upper.as_ref().is_none_or(|u| t < u)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |b: &Option<Rational>, inf: &str| match b {
            Some(q) => RatDisplay(q).to_string(),
            None => inf.to_string(),
        };
        write!(f, "({}, {})", show(&self.lower, "-inf"), show(&self.upper, "inf"))
    }
}

/// A family `x^i = (1+kt)^{α_i} h^i` with warp `f(t)` on a coframe.
#[derive(Clone, Debug, PartialEq)]
pub struct FlowSolution {
    pub frame: Coframe,
    pub class: Family,
    pub alphas: Vec<Rational>,
    pub warp: Warp,
    pub c: FieldElem,
    /// Rate of the `(1+kt)` factors; for an exponential warp also its rate.
    pub k: Rational,
}

impl FlowSolution {
    pub fn algebra(&self) -> &str {
        self.frame.name()
    }

    /// `f_1..f_6`.
    pub fn scaling(&self) -> FrameScaling<TimeScalar> {
        FrameScaling::new(self.alphas.iter().map(|a| TimeScalar::power(self.k.clone(), a.clone())).collect())
            .expect("powers are invertible")
    }

    pub fn warp_scalar(&self) -> TimeScalar {
        match &self.warp {
            Warp::Power { beta } => TimeScalar::monomial(self.c.clone(), self.k.clone(), beta.clone(), int(0)),
            Warp::Exponential => TimeScalar::monomial(self.c.clone(), int(0), int(0), self.k.clone()),
        }
    }

    /// The warped structure with orientation `(0, 1)`.
    pub fn structure(&self) -> Result<WarpedG2Structure<TimeScalar>> {
        WarpedG2Structure::new(&self.frame, &self.scaling(), self.warp_scalar(), FieldElem::zero(), FieldElem::one())
    }

    /// Times with `1 + kt > 0` wherever a `(1+kt)` factor is present.
    pub fn validity(&self) -> Interval {
        let has_power = self.alphas.iter().any(|a| !a.is_zero())
            || matches!(&self.warp, Warp::Power { beta } if !beta.is_zero());
        let all = Interval { lower: None, upper: None };
        if !has_power || self.k.is_zero() {
            return all;
        }
        let edge = -self.k.recip();
        if self.k.is_negative() {
            Interval { lower: None, upper: Some(edge) }
        } else {
            Interval { lower: Some(edge), upper: None }
        }
    }

    /// Same family with one parameter shifted: `alpha1`..`alpha6`, `beta`
    /// (power warps), or `k`.
    pub fn perturbed(&self, name: &str, delta: &Rational) -> Result<Self> {
        let mut out = self.clone();
        let n = name.trim().to_ascii_lowercase();
        if let Some(i) = n.strip_prefix("alpha").and_then(|s| s.parse::<usize>().ok()) {
            if !(1..=6).contains(&i) {
                return Err(Error::InvalidArgument(format!("no parameter {name}")));
            }
            out.alphas[i - 1] += delta;
            return Ok(out);
        }
        match (n.as_str(), &mut out.warp) {
            ("k", _) => out.k += delta,
            ("beta", Warp::Power { beta }) => *beta += delta,
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "no parameter {name}; expected alpha1..alpha6, beta or k"
                )))
            }
        }
        Ok(out)
    }

    /// Parameter names accepted by [`FlowSolution::perturbed`].
    pub fn parameter_names(&self) -> Vec<String> {
        let mut names: Vec<String> = (1..=6).map(|i| format!("alpha{i}")).collect();
        if matches!(self.warp, Warp::Power { .. }) {
            names.push("beta".into());
        }
        names.push("k".into());
        names
    }

    pub fn warp_string(&self) -> String {
        self.warp_scalar().to_string()
    }

    /// The warp with `c` left symbolic, e.g. `c*(1-3t)^(1/6)` or `c*exp(-2t)`.
    pub fn warp_formula(&self) -> String {
        let kt = |k: &Rational| {
            let mag = k.abs();
            let sign = if k.is_negative() { "-" } else { "+" };
            if mag.is_one() {
                format!("{sign}t")
            } else if mag.is_integer() {
                format!("{sign}{mag}t")
            } else {
                format!("{sign}({})t", RatDisplay(&mag))
            }
        };
        match &self.warp {
            Warp::Exponential if self.k.is_zero() => "c".into(),
            Warp::Exponential => format!("c*exp({})", kt(&self.k).trim_start_matches('+')),
            Warp::Power { beta } if beta.is_zero() || self.k.is_zero() => "c".into(),
            Warp::Power { beta } => format!("c*(1{})^({})", kt(&self.k), RatDisplay(beta)),
        }
    }
}

/// Residual of the coflow along a family.
#[derive(Clone, Debug, PartialEq)]
pub struct CoflowResidual {
    /// `∂t⋆φ + Δ⋆φ` on the 7-frame.
    pub frame: TimeForm,
    /// The two reduced equations, when the family stays coclosed.
    pub reduced: Option<ReducedSystem>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReducedSystem {
    /// `∂tω² + 3σ0²ω² - 3σ0σ2∧ω - 2d⋆ν3`.
    pub eq1: TimeForm,
    /// `(f'/f)ψ+ + ∂tψ+ + 3σ0²ψ+ - 2σ0ν3 - dσ2`.
    pub eq2: TimeForm,
    /// `½ eq1 + eq2∧x7` and `∂t⋆φ` plus the torsion formula for `Δ⋆φ` both
    /// equal the frame residual.
    pub agrees: bool,
}

impl CoflowResidual {
    pub fn is_zero(&self) -> bool {
        self.frame.is_zero() && self.reduced.as_ref().is_none_or(|r| r.agrees && r.eq1.is_zero() && r.eq2.is_zero())
    }

    pub fn paths_agree(&self) -> bool {
        self.reduced.as_ref().is_none_or(|r| r.agrees)
    }

    /// Floating-point values of the nonzero frame components at `t`.
    pub fn sample(&self, t: &Rational) -> Result<Vec<(String, f64)>> {
        Ok(self.frame.eval(t)?.into_iter().map(|(i, v)| (format!("x^{{{i}}}"), v)).collect())
    }
}

pub fn coflow_residual(sol: &FlowSolution) -> Result<CoflowResidual> {
    let w = sol.structure()?;
    let star = w.star_phi();
    let dt = star.ddt(w.scaling())?;
    let frame = dt.add(&laplacian7(star, &w));

    let base = w.base();
    let tor = base.torsion()?;
    let conds = warped_class_conditions(&tor, w.alpha(), w.beta());
    let reduced = if conds.admits(G2Class::Coclosed) {
        let s6 = sol.scaling();
        let three = FieldElem::integer(3);
        let s0 = &tor.sigma0;
        let s0sq = s0.times(s0);
        let w2 = base.omega.wedge(&base.omega);
        let eq1 = w2
            .ddt(&s6)?
            .add(&w2.scale(&s0sq.scaled(&three)))
            .sub(&tor.sigma2.wedge(&base.omega).scale(&s0.scaled(&three)))
            .sub(&base.d(&tor.nu3.hodge_unit()).scale_field(&FieldElem::integer(2)));
        let f = sol.warp_scalar();
        let log_f = f.ddt().checked_mul(&f.inverse()?)?;
        let eq2 = base
            .psi_plus
            .scale(&log_f)
            .add(&base.psi_plus.ddt(&s6)?)
            .add(&base.psi_plus.scale(&s0sq.scaled(&three)))
            .sub(&tor.nu3.scale(&s0.scaled(&FieldElem::integer(2))))
            .sub(&base.d(&tor.sigma2));
        let assembled = eq1.scale_field(&FieldElem::rational(rat(1, 2))).embed(7).add(&eq2.embed(7).wedge_last());
        let via_formula = dt.add(&coclosed_formula_unchecked(&w)?);
        let agrees = assembled == frame && via_formula == frame;
        Some(ReducedSystem { eq1, eq2, agrees })
    } else {
        None
    };
    Ok(CoflowResidual { frame, reduced })
}

/// Checks that the base stays in its class for all `t`, that
/// `ψ+∧ψ- = (2/3)ω³` holds in the `h`-frame, and for nearly Kähler
/// families that `σ0(t) = σ0(0)/f_1(t)`.
pub fn check_class_preservation(sol: &FlowSolution) -> Result<bool> {
    let scaling = sol.scaling();
    let s = Su3Structure::new(&sol.frame, &scaling)?;
    let tor = s.torsion()?;
    let expected = match sol.class {
        Family::NearlyKahler => Su3Class::NearlyKahler,
        Family::SymplecticHalfFlat => Su3Class::SymplecticHalfFlat,
        Family::Balanced => Su3Class::Balanced,
    };
    if classify_su3(&tor) != expected {
        return Ok(false);
    }
    let to_h = |f: &TimeForm| scaling.to_static(f);
    let (w, pp, pm) = (to_h(&s.omega)?, to_h(&s.psi_plus)?, to_h(&s.psi_minus)?);
    if pp.wedge(&pm) != w.wedge(&w).wedge(&w).scale_field(&FieldElem::rational(rat(2, 3))) {
        return Ok(false);
    }
    if sol.class == Family::NearlyKahler {
        let sigma0 = tor.sigma0.at_zero();
        let f1_inv = scaling.inverse(1).clone();
        if tor.sigma0 != f1_inv.scale(&sigma0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `dσ2(t)` for half-flat families, `d⋆ν3(t)` for balanced ones and `σ0(t)`
/// (as a 0-form) for nearly Kähler ones.
pub fn torsion_column_along(sol: &FlowSolution) -> Result<TimeForm> {
    let s = Su3Structure::new(&sol.frame, &sol.scaling())?;
    let tor = s.torsion()?;
    Ok(match sol.class {
        Family::SymplecticHalfFlat => s.d(&tor.sigma2),
        Family::Balanced => s.d(&tor.nu3.hodge_unit()),
        Family::NearlyKahler => KForm::scalar(6, tor.sigma0),
    })
}

/// Nearly Kähler family on `S3 x S3` with `σ0` prescribed: every frame
/// factor is `F = (1 + kt)^{1/2}`, `f = c F`, `k = -3σ0²/2`.
pub fn nk_solution(sigma0: &FieldElem, c: &FieldElem) -> Result<FlowSolution> {
    if sigma0.is_zero() {
        return Err(Error::InvalidArgument("σ0 = 0 is the stationary Calabi-Yau case".into()));
    }
    if c.is_zero() {
        return Err(Error::InvalidArgument("the warp constant c must be nonzero".into()));
    }
    let sq = sigma0 * sigma0;
    let Some(sq) = sq.as_rational() else {
        return Err(Error::InvalidArgument(format!("σ0² must be rational, got {sq}")));
    };
    // the catalog frame has σ0 = -2; scaling structure constants by λ scales σ0 by λ
    let lambda = sigma0 * &FieldElem::rational(rat(-1, 2));
    let frame = lookup("su2+su2", None)?.scaled(&lambda);
    let half = rat(1, 2);
    Ok(FlowSolution {
        frame,
        class: Family::NearlyKahler,
        alphas: vec![half.clone(); 6],
        warp: Warp::Power { beta: half },
        c: c.clone(),
        k: sq * rat(-3, 2),
    })
}

/// The exponential family on `e(1,1)+e(1,1)`: all `α_i = 0`, `f = c e^{-2t}`.
pub fn e11_solution(c: &FieldElem) -> Result<FlowSolution> {
    Ok(FlowSolution {
        frame: lookup("e11+e11", None)?,
        class: Family::SymplecticHalfFlat,
        alphas: vec![int(0); 6],
        warp: Warp::Exponential,
        c: c.clone(),
        k: int(-2),
    })
}

/// Machine-readable solution with its verification outcome.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub algebra: String,
    pub class: Family,
    pub alphas: Vec<String>,
    pub warp: String,
    pub beta_or_rate: String,
    pub k: String,
    pub c: String,
    pub validity: String,
    pub residual_zero: bool,
    pub class_preserved: bool,
    pub torsion_column: String,
    /// Nonzero residual components, rendered.
    pub residual: Vec<String>,
}

impl SolutionRecord {
    pub fn new(sol: &FlowSolution, torsion_column: String) -> Result<Self> {
        let res = coflow_residual(sol)?;
        let residual = res.frame.terms().map(|(i, c)| format!("x^{{{i}}}: {c}")).collect();
        Ok(Self {
            algebra: sol.algebra().to_string(),
            class: sol.class,
            alphas: sol.alphas.iter().map(|a| RatDisplay(a).to_string()).collect(),
            warp: sol.warp_formula(),
            beta_or_rate: match &sol.warp {
                Warp::Power { beta } => RatDisplay(beta).to_string(),
                Warp::Exponential => RatDisplay(&sol.k).to_string(),
            },
            k: RatDisplay(&sol.k).to_string(),
            c: sol.c.to_string(),
            validity: sol.validity().to_string(),
            residual_zero: res.is_zero(),
            class_preserved: check_class_preservation(sol)?,
            torsion_column,
            residual,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coframe::{catalog, parse_structure_equations};
    use crate::g2warp::static_warped;
    use crate::su3;

    #[test]
    fn laplacian_of_torsion_free_is_zero() {
        let w = static_warped(&parse_structure_equations("(0,0,0,0,0,0)", 6).unwrap(), FieldElem::one(), int(1), int(0)).unwrap();
        assert!(laplacian7(w.phi(), &w).is_zero());
        assert!(laplacian_closed_formula(&w).unwrap().is_zero());
        assert!(laplacian_coclosed_formula(&w).unwrap().is_zero());
    }

    #[test]
    fn nearly_kahler_coclosed_laplacian() {
        let w = static_warped(&lookup("su2+su2", None).unwrap(), FieldElem::one(), int(0), int(1)).unwrap();
        let om = su3::omega().embed(7);
        let expected = om.wedge(&om).scale_field(&FieldElem::integer(6)).add(&su3::psi_plus().embed(7).wedge_last().scale_field(&FieldElem::integer(12)));
        assert_eq!(laplacian_coclosed_formula(&w).unwrap(), expected);
    }

    #[test]
    fn balanced_coclosed_laplacian() {
        let frame = lookup("h3", None).unwrap();
        let w = static_warped(&frame, FieldElem::one(), int(0), int(1)).unwrap();
        let nu3 = su3::static_torsion(&frame).unwrap().nu3;
        assert_eq!(laplacian_coclosed_formula(&w).unwrap(), frame.d(&nu3.hodge_unit()).neg().embed(7));
    }

    #[test]
    fn laplacian_commutes_with_star() {
        for e in catalog() {
            let frame = e.build(None).unwrap();
            for (a, b) in [(int(1), int(0)), (int(0), int(1)), (rat(3, 5), rat(4, 5))] {
                let w = static_warped(&frame, FieldElem::integer(2), a, b).unwrap();
                assert!(star_commutes(&w), "{}", e.id);
            }
        }
    }

    #[test]
    fn closed_formula_on_half_flat_bases() {
        for e in catalog().iter().filter(|e| e.family == Family::SymplecticHalfFlat) {
            let w = static_warped(&e.build(None).unwrap(), FieldElem::one(), int(1), int(0)).unwrap();
            assert!(w.d(w.phi()).is_zero());
            laplacian_closed_formula(&w).unwrap();
            let sys = assemble_flow_system_closed(&w).unwrap();
            assert_eq!(sys.equations.len(), 2);
            assert!(sys.equations[1].starts_with("∂t ψ+ = "), "{}", sys.equations[1]);
        }
        let nk = static_warped(&lookup("su2+su2", None).unwrap(), FieldElem::one(), int(1), int(0)).unwrap();
        assert!(matches!(laplacian_closed_formula(&nk), Err(Error::Precondition(_))));
        assert!(assemble_flow_system_closed(&nk).is_err());
    }

    #[test]
    fn coclosed_guard() {
        let w = static_warped(&lookup("e11+e11", None).unwrap(), FieldElem::one(), int(1), int(0)).unwrap();
        assert!(matches!(laplacian_coclosed_formula(&w), Err(Error::Precondition(_))));
    }

    #[test]
    fn nk_family() {
        let sol = nk_solution(&FieldElem::integer(-2), &FieldElem::one()).unwrap();
        assert_eq!(sol.k, int(-6));
        assert_eq!(sol.validity().to_string(), "(-inf, 1/6)");
        let w = sol.structure().unwrap();
        let p = TimeScalar::power(int(-6), rat(3, 2));
        let om = su3::omega().embed(7).convert(|c| TimeScalar::constant(c.clone()));
        let pm = su3::psi_minus().embed(7).convert(|c| TimeScalar::constant(c.clone()));
        let ds = KForm::monomial(7, &[7], TimeScalar::constant(FieldElem::one()));
        assert_eq!(w.phi_static(), om.wedge(&ds).sub(&pm).scale(&p));
        let res = coflow_residual(&sol).unwrap();
        assert!(res.is_zero() && res.reduced.is_some());
        assert!(check_class_preservation(&sol).unwrap());
        let generic = nk_solution(&FieldElem::one(), &FieldElem::integer(3)).unwrap();
        assert_eq!(generic.k, rat(-3, 2));
        assert_eq!(generic.validity().to_string(), "(-inf, 2/3)");
        assert!(coflow_residual(&generic).unwrap().is_zero());
        assert!(nk_solution(&FieldElem::zero(), &FieldElem::one()).is_err());
    }

    #[test]
    fn exponential_family() {
        let sol = e11_solution(&FieldElem::integer(5)).unwrap();
        assert_eq!(sol.validity().to_string(), "(-inf, inf)");
        assert_eq!(sol.warp_string(), "5*exp(-2*t)");
        assert!(coflow_residual(&sol).unwrap().is_zero());
        let wrong = FlowSolution { k: int(2), ..sol.clone() };
        assert!(!coflow_residual(&wrong).unwrap().is_zero());
        let bumped = sol.perturbed("alpha3", &rat(1, 100)).unwrap();
        assert!(!coflow_residual(&bumped).unwrap().is_zero());
        assert!(sol.perturbed("beta", &rat(1, 100)).is_err());
    }

    #[test]
    fn residual_detects_wrong_constant() {
        let sol = nk_solution(&FieldElem::integer(-2), &FieldElem::one()).unwrap();
        let bad = sol.perturbed("k", &rat(1, 100)).unwrap();
        assert!(!coflow_residual(&bad).unwrap().is_zero());
    }

    #[test]
    fn warp_formulas() {
        let nk = nk_solution(&FieldElem::integer(-2), &FieldElem::one()).unwrap();
        assert_eq!(nk.warp_formula(), "c*(1-6t)^(1/2)");
        assert_eq!(e11_solution(&FieldElem::one()).unwrap().warp_formula(), "c*exp(-2t)");
        let slow = nk_solution(&FieldElem::one(), &FieldElem::one()).unwrap();
        assert_eq!(slow.warp_formula(), "c*(1-(3/2)t)^(1/2)");
        assert_eq!(slow.validity().to_string(), "(-inf, 2/3)");
    }

    #[test]
    fn nearly_kahler_column_decays() {
        let nk = nk_solution(&FieldElem::integer(-2), &FieldElem::one()).unwrap();
        let col = torsion_column_along(&nk).unwrap();
        let want = TimeScalar::monomial(FieldElem::integer(-2), int(-6), rat(-1, 2), int(0));
        assert_eq!(col, KForm::scalar(6, want));
    }
}

//! Warped G2-structures `φ = f ω∧ds + (α ψ+ - β ψ-)` on `M6 x_f S1`.
//!
//! Everything is computed on the orthonormal 7-frame `(x^1..x^6, x^7 = f ds)`,
//! where `φ = ω∧x^7 + α ψ+ - β ψ-` has constant coefficients. The warp
//! factor only reappears when converting back to the `(h, ds)` frame or when
//! differentiating in time. `f` is constant on the base, so `d x^7 = 0`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coframe::{Coframe, Structure};
use crate::error::{Error, Result};
use crate::exterior::{FrameScaling, Idx, KForm};
use crate::scalars::{rat, Coeff, FieldElem, Rational};
use crate::su3::{self, scalar_multiple_of_identity, Su3Structure, Su3Torsion};

fn q(n: i64, d: i64) -> FieldElem {
    FieldElem::rational(rat(n, d))
}

/// Checks `α² + β² = 1`.
pub fn check_orientation(alpha: &FieldElem, beta: &FieldElem) -> Result<()> {
    if (alpha * alpha) + (beta * beta) != FieldElem::one() {
        return Err(Error::InvalidArgument(format!("(α, β) = ({alpha}, {beta}) is not on the unit circle")));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct WarpedG2Structure<C> {
    base: Su3Structure<C>,
    structure: Structure<C>,
    scaling: FrameScaling<C>,
    alpha: FieldElem,
    beta: FieldElem,
    phi: KForm<C>,
    star_phi: KForm<C>,
}

impl<C: Coeff> WarpedG2Structure<C> {
    /// `base_scaling` gives `f_1..f_6` (`x^i = f_i h^i`), `warp` gives `f`.
    pub fn new(frame: &Coframe, base_scaling: &FrameScaling<C>, warp: C, alpha: FieldElem, beta: FieldElem) -> Result<Self> {
        check_orientation(&alpha, &beta)?;
        let base = Su3Structure::new(frame, base_scaling)?;
        let structure = Structure::new(frame, base_scaling, 7)?;
        let mut scales = base_scaling.scales().to_vec();
        scales.push(warp);
        let scaling = FrameScaling::new(scales)?;
        let (phi, star_phi) = build_phi(&base, &alpha, &beta)?;
        Ok(Self { base, structure, scaling, alpha, beta, phi, star_phi })
    }

    /// Unscaled base frame with a constant warp.
    pub fn constant(frame: &Coframe, warp: FieldElem, alpha: FieldElem, beta: FieldElem) -> Result<Self> {
        Self::new(frame, &FrameScaling::unit(6), C::from_field(warp), alpha, beta)
    }

    pub fn base(&self) -> &Su3Structure<C> {
        &self.base
    }

    pub fn structure(&self) -> &Structure<C> {
        &self.structure
    }

    /// The 7 factors `(f_1..f_6, f)`.
    pub fn scaling(&self) -> &FrameScaling<C> {
        &self.scaling
    }

    pub fn warp(&self) -> &C {
        self.scaling.scale(7)
    }

    pub fn alpha(&self) -> &FieldElem {
        &self.alpha
    }

    pub fn beta(&self) -> &FieldElem {
        &self.beta
    }

    pub fn name(&self) -> &str {
        self.base.name()
    }

    pub fn phi(&self) -> &KForm<C> {
        &self.phi
    }

    pub fn star_phi(&self) -> &KForm<C> {
        &self.star_phi
    }

    pub fn d(&self, form: &KForm<C>) -> KForm<C> {
        self.structure.d(form)
    }

    /// `φ` in the `(h^1..h^6, ds)` frame.
    pub fn phi_static(&self) -> KForm<C> {
        self.scaling.to_static(&self.phi).expect("7-dimensional")
    }

    pub fn star_phi_static(&self) -> KForm<C> {
        self.scaling.to_static(&self.star_phi).expect("7-dimensional")
    }
}

/// `φ = ω∧x^7 + α ψ+ - β ψ-` and `⋆φ`, the latter by the 7-dimensional star
/// and checked against `½ω² + (α ψ- + β ψ+)∧x^7`.
pub fn build_phi<C: Coeff>(base: &Su3Structure<C>, alpha: &FieldElem, beta: &FieldElem) -> Result<(KForm<C>, KForm<C>)> {
    let w = base.omega.embed(7);
    let pp = base.psi_plus.embed(7);
    let pm = base.psi_minus.embed(7);
    let phi = w.wedge_last().add(&pp.scale_field(alpha)).sub(&pm.scale_field(beta));
    let star = phi.hodge_unit();
    let closed_form = w
        .wedge(&w)
        .scale_field(&q(1, 2))
        .add(&pm.scale_field(alpha).add(&pp.scale_field(beta)).wedge_last());
    if star != closed_form {
        return Err(Error::Structural(format!("{}: ⋆φ differs from ½ω² + (αψ- + βψ+)∧x7", base.name())));
    }
    Ok((phi, star))
}

#[derive(Clone, Debug, PartialEq)]
pub struct G2Torsion<C> {
    pub tau0: C,
    pub tau1: KForm<C>,
    pub tau2: KForm<C>,
    pub tau3: KForm<C>,
}

impl<C: Coeff> G2Torsion<C> {
    pub fn nonzero(&self) -> Vec<&'static str> {
        let flags = [
            ("tau0", !self.tau0.is_zero()),
            ("tau1", !self.tau1.is_zero()),
            ("tau2", !self.tau2.is_zero()),
            ("tau3", !self.tau3.is_zero()),
        ];
        flags.iter().filter(|(_, nz)| *nz).map(|(n, _)| *n).collect()
    }

    pub fn vanishing(&self) -> [bool; 4] {
        [self.tau0.is_zero(), self.tau1.is_zero(), self.tau2.is_zero(), self.tau3.is_zero()]
    }

    pub fn classify(&self) -> G2Class {
        classify_g2(self)
    }

    /// `dφ = τ0 ⋆φ + 3 τ1∧φ + ⋆τ3` and `d⋆φ = 4 τ1∧⋆φ + τ2∧φ`.
    pub fn reconstruct(&self, phi: &KForm<C>, star_phi: &KForm<C>) -> (KForm<C>, KForm<C>) {
        let dphi = star_phi
            .scale(&self.tau0)
            .add(&self.tau1.wedge(phi).scale_field(&FieldElem::integer(3)))
            .add(&self.tau3.hodge_unit());
        let dstar = self.tau1.wedge(star_phi).scale_field(&FieldElem::integer(4)).add(&self.tau2.wedge(phi));
        (dphi, dstar)
    }

    /// `τ2∧φ = -⋆τ2`, `τ3∧φ = 0`, `τ3∧⋆φ = 0`.
    pub fn in_type_spaces(&self, phi: &KForm<C>, star_phi: &KForm<C>) -> bool {
        self.tau2.wedge(phi) == self.tau2.hodge_unit().neg()
            && self.tau3.wedge(phi).is_zero()
            && self.tau3.wedge(star_phi).is_zero()
    }
}

/// Torsion from `dφ` and `d⋆φ` by the standard extraction formulas.
pub fn g2_torsion_direct<C: Coeff>(w: &WarpedG2Structure<C>) -> Result<G2Torsion<C>> {
    let (phi, star) = (&w.phi, &w.star_phi);
    let dphi = w.d(phi);
    let dstar = w.d(star);
    let star_dphi = dphi.hodge_unit();
    let tau0 = dphi.wedge(phi).hodge_unit().scale_field(&q(1, 7)).get(Idx::EMPTY);
    let tau1 = star_dphi.wedge(phi).hodge_unit().scale_field(&q(-1, 12));
    let tau2 = dstar.hodge_unit().neg().add(&tau1.wedge(star).hodge_unit().scale_field(&FieldElem::integer(4)));
    let tau3 = star_dphi
        .sub(&phi.scale(&tau0))
        .sub(&tau1.wedge(phi).hodge_unit().scale_field(&FieldElem::integer(3)));
    let tor = G2Torsion { tau0, tau1, tau2, tau3 };
    let (rphi, rstar) = tor.reconstruct(phi, star);
    if rphi != dphi || rstar != dstar {
        return Err(Error::Structural(format!("{}: G2 torsion does not reproduce dφ, d⋆φ", w.name())));
    }
    if !tor.in_type_spaces(phi, star) {
        return Err(Error::Structural(format!("{}: τ2 or τ3 outside its type space", w.name())));
    }
    Ok(tor)
}

/// `η1 = π1 + ν1`, `η2 = π1 - 2ν1`, `η3 = -π1 + ν1` (the `d f` terms vanish).
pub fn eta_forms<C: Coeff>(tor: &Su3Torsion<C>) -> [KForm<C>; 3] {
    let two = FieldElem::integer(2);
    [
        tor.pi1.add(&tor.nu1),
        tor.pi1.sub(&tor.nu1.scale_field(&two)),
        tor.nu1.sub(&tor.pi1),
    ]
}

/// Torsion of the warped structure written in terms of the SU(3) torsion of
/// the base.
pub fn g2_torsion_warped<C: Coeff>(tor: &Su3Torsion<C>, w: &WarpedG2Structure<C>) -> G2Torsion<C> {
    let (a, b) = (&w.alpha, &w.beta);
    let base = &w.base;
    let [eta1, eta2, eta3] = eta_forms(tor);
    let e7 = |f: &KForm<C>| f.embed(7);
    let big_a = tor.pi0.scaled(a).minus(&tor.sigma0.scaled(b));
    let sum0 = tor.sigma0.scaled(a).plus(&tor.pi0.scaled(b));
    let sum2 = tor.sigma2.scale_field(a).add(&tor.pi2.scale_field(b));
    let diff2 = tor.pi2.scale_field(a).sub(&tor.sigma2.scale_field(b));
    let w2 = base.omega.wedge(&base.omega);
    let psi_a = base.psi_plus.scale_field(a).sub(&base.psi_minus.scale_field(b));
    let psi_b = base.psi_minus.scale_field(a).add(&base.psi_plus.scale_field(b));

    let tau0 = big_a.scaled(&q(12, 7));
    let tau1 = KForm::monomial(7, &[7], sum0.scaled(&q(1, 2))).add(&e7(&eta1.scale_field(&q(1, 6))));
    let tau2 = e7(&sum2)
        .neg()
        .add(&e7(&eta2.wedge(&w2).hodge_unit().scale_field(&q(1, 3))).wedge_last())
        .sub(&e7(&eta2.wedge(&psi_b).hodge_unit().scale_field(&q(1, 3))));
    let fiber = base
        .omega
        .scale(&big_a.scaled(&q(2, 7)))
        .sub(&eta3.wedge(&psi_a).hodge_unit().scale_field(&q(1, 2)))
        .add(&diff2);
    let tau3 = e7(&fiber)
        .wedge_last()
        .sub(&e7(&eta3.wedge(&base.omega).hodge_unit().scale_field(&q(1, 2))))
        .sub(&e7(&psi_a.scale(&big_a.scaled(&q(3, 14)))))
        .sub(&e7(&tor.nu3.hodge_unit()));
    G2Torsion { tau0, tau1, tau2, tau3 }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum G2Class {
    Parallel,
    NearlyParallel,
    Closed,
    CoclosedPureType,
    LocallyConformalParallel,
    Coclosed,
    Other,
}

impl fmt::Display for G2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            G2Class::Parallel => "parallel",
            G2Class::NearlyParallel => "nearly parallel",
            G2Class::Closed => "closed",
            G2Class::CoclosedPureType => "coclosed of pure type",
            G2Class::LocallyConformalParallel => "locally conformal parallel",
            G2Class::Coclosed => "coclosed",
            G2Class::Other => "other",
        })
    }
}

impl G2Class {
    /// Torsion forms that vanish on every structure of the class.
    pub fn vanishing(self) -> [bool; 4] {
        match self {
            G2Class::Parallel => [true; 4],
            G2Class::NearlyParallel => [false, true, true, true],
            G2Class::Closed => [true, true, false, true],
            G2Class::CoclosedPureType => [true, true, true, false],
            G2Class::LocallyConformalParallel => [true, false, true, true],
            G2Class::Coclosed => [false, true, true, false],
            G2Class::Other => [false; 4],
        }
    }
}

pub fn classify_g2<C: Coeff>(tor: &G2Torsion<C>) -> G2Class {
    match tor.nonzero().as_slice() {
        [] => G2Class::Parallel,
        ["tau0"] => G2Class::NearlyParallel,
        ["tau2"] => G2Class::Closed,
        ["tau3"] => G2Class::CoclosedPureType,
        ["tau1"] => G2Class::LocallyConformalParallel,
        ["tau0", "tau3"] => G2Class::Coclosed,
        _ => G2Class::Other,
    }
}

/// The nine vanishing conditions on the base torsion that decide which
/// `τ_i` of the warped structure vanish (constant warp).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WarpedConditions {
    /// `(label, holds)`, in the order i..ix.
    pub conditions: Vec<(String, bool)>,
    /// `τ0..τ3` vanish, as predicted by the conditions.
    pub tau_vanish: [bool; 4],
}

impl WarpedConditions {
    pub fn holds(&self, n: usize) -> bool {
        self.conditions[n - 1].1
    }

    /// Agreement with torsion computed on the 7-frame.
    pub fn agrees_with<C: Coeff>(&self, tor: &G2Torsion<C>) -> bool {
        self.tau_vanish == tor.vanishing()
    }

    /// True when every torsion form the class requires to vanish does.
    pub fn admits(&self, class: G2Class) -> bool {
        class.vanishing().iter().zip(&self.tau_vanish).all(|(need, has)| !need || *has)
    }
}

pub fn warped_class_conditions<C: Coeff>(tor: &Su3Torsion<C>, alpha: &FieldElem, beta: &FieldElem) -> WarpedConditions {
    let [eta1, eta2, eta3] = eta_forms(tor);
    let a_pi0_b_sigma0 = tor.pi0.scaled(alpha).minus(&tor.sigma0.scaled(beta)).is_zero();
    let list = [
        ("(i) απ0 - βσ0 = 0", a_pi0_b_sigma0),
        ("(ii) ασ0 + βπ0 = 0", tor.sigma0.scaled(alpha).plus(&tor.pi0.scaled(beta)).is_zero()),
        ("(iii) η1 = 0", eta1.is_zero()),
        ("(iv) η2 = 0", eta2.is_zero()),
        ("(v) ασ2 + βπ2 = 0", tor.sigma2.scale_field(alpha).add(&tor.pi2.scale_field(beta)).is_zero()),
        ("(vi) απ0 - βσ0 = 0", a_pi0_b_sigma0),
        ("(vii) η3 = 0", eta3.is_zero()),
        ("(viii) απ2 - βσ2 = 0", tor.pi2.scale_field(alpha).sub(&tor.sigma2.scale_field(beta)).is_zero()),
        ("(ix) ν3 = 0", tor.nu3.is_zero()),
    ];
    let h: Vec<bool> = list.iter().map(|(_, b)| *b).collect();
    WarpedConditions {
        tau_vanish: [h[0], h[1] && h[2], h[3] && h[4], h[5] && h[6] && h[7] && h[8]],
        conditions: list.iter().map(|(l, b)| (l.to_string(), *b)).collect(),
    }
}

/// `B(X, Y) vol = (1/6) (ι_X φ)∧(ι_Y φ)∧φ` on the 7-frame for constant `φ`.
pub fn metric_diagnostic(alpha: &FieldElem, beta: &FieldElem) -> Result<su3::MetricDiagnostic> {
    check_orientation(alpha, beta)?;
    let w = su3::omega().embed(7);
    let phi = w.wedge_last().add(&su3::psi_plus().embed(7).scale_field(alpha)).sub(&su3::psi_minus().embed(7).scale_field(beta));
    let matrix: Vec<Vec<FieldElem>> = (1..=7)
        .map(|i| {
            (1..=7)
                .map(|j| {
                    let ix = phi.contract(i).expect("3-form");
                    let iy = phi.contract(j).expect("3-form");
                    ix.wedge(&iy).wedge(&phi).scale_field(&q(1, 6)).top_coefficient()
                })
                .collect()
        })
        .collect();
    Ok(su3::MetricDiagnostic { constant: scalar_multiple_of_identity(&matrix), matrix })
}

/// Both star identities relating the warped 7-dimensional star to the base
/// star, `⋆7 η = f ⋆6 η ∧ ds` and `⋆7(η∧ds) = (-1)^k f^{-1} ⋆6 η`, checked on
/// every monomial of every degree in the `(h, ds)` frame.
pub fn check_star_identities<C: Coeff>(base_scaling: &FrameScaling<C>, warp: &C) -> Result<bool> {
    let mut scales = base_scaling.scales().to_vec();
    scales.push(warp.clone());
    let s7 = FrameScaling::new(scales)?;
    let f_inv = warp.inverse_monomial().ok_or_else(|| Error::NotInvertible(warp.to_string()))?;
    for k in 0..=6 {
        for idx in crate::exterior::basis(6, k) {
            let eta = KForm::monomial_idx(6, idx, C::one());
            let star6 = eta.hodge(base_scaling)?.embed(7);
            let lhs1 = eta.embed(7).hodge(&s7)?;
            if lhs1 != star6.scale(warp).wedge_last() {
                return Ok(false);
            }
            let lhs2 = eta.embed(7).wedge_last().hodge(&s7)?;
            let sign = if k % 2 == 0 { C::one() } else { C::one().negated() };
            if lhs2 != star6.scale(&f_inv.times(&sign)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Serializable G2 torsion report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct G2Report {
    pub algebra: String,
    pub alpha: String,
    pub beta: String,
    pub tau0: String,
    pub tau1: String,
    pub tau2: String,
    pub tau3: String,
    pub g2_class: G2Class,
    pub paths_agree: bool,
}

/// Direct and SU(3)-based torsion of a warped structure, with the report.
pub fn analyze<C: Coeff>(w: &WarpedG2Structure<C>) -> Result<(G2Torsion<C>, G2Report)> {
    let direct = g2_torsion_direct(w)?;
    let warped = g2_torsion_warped(&w.base.torsion()?, w);
    let report = G2Report {
        algebra: w.name().to_string(),
        alpha: w.alpha.to_string(),
        beta: w.beta.to_string(),
        tau0: direct.tau0.to_string(),
        tau1: direct.tau1.to_string(),
        tau2: direct.tau2.to_string(),
        tau3: direct.tau3.to_string(),
        g2_class: direct.classify(),
        paths_agree: direct == warped,
    };
    Ok((direct, report))
}

/// Static warped structure on an unscaled base.
pub fn static_warped(frame: &Coframe, warp: FieldElem, alpha: Rational, beta: Rational) -> Result<WarpedG2Structure<FieldElem>> {
    WarpedG2Structure::constant(frame, warp, FieldElem::rational(alpha), FieldElem::rational(beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coframe::{catalog, lookup, parse_structure_equations};
    use crate::exterior::StaticForm;
    use crate::scalars::{int, TimeScalar};

    fn orientations() -> Vec<(Rational, Rational)> {
        vec![(int(1), int(0)), (int(0), int(1)), (rat(3, 5), rat(4, 5))]
    }

    fn abelian() -> Coframe {
        parse_structure_equations("(0,0,0,0,0,0)", 6).unwrap()
    }

    fn h7(idx: &[usize], c: FieldElem) -> StaticForm {
        KForm::monomial(7, idx, c)
    }

    #[test]
    fn phi_on_abelian_base() {
        let w = static_warped(&abelian(), FieldElem::one(), int(1), int(0)).unwrap();
        let expected = su3::omega().embed(7).wedge_last().add(&su3::psi_plus().embed(7));
        assert_eq!(w.phi(), &expected);
        let t = g2_torsion_direct(&w).unwrap();
        assert_eq!(t.classify(), G2Class::Parallel);
    }

    #[test]
    fn phi_on_nearly_kahler_base_in_ds_frame() {
        let c = FieldElem::integer(3);
        let w = static_warped(&lookup("su2+su2", None).unwrap(), c.clone(), int(0), int(1)).unwrap();
        let om = su3::omega().embed(7);
        let phi = om.wedge(&h7(&[7], c.clone())).sub(&su3::psi_minus().embed(7));
        assert_eq!(w.phi_static(), phi);
        let star = om.wedge(&om).scale_field(&q(1, 2)).add(&su3::psi_plus().embed(7).wedge(&h7(&[7], c)));
        assert_eq!(w.star_phi_static(), star);
    }

    #[test]
    fn nearly_kahler_torsion() {
        let w = static_warped(&lookup("su2+su2", None).unwrap(), FieldElem::integer(2), int(0), int(1)).unwrap();
        let t = g2_torsion_direct(&w).unwrap();
        assert_eq!(t.tau0, q(24, 7));
        assert!(t.tau1.is_zero() && t.tau2.is_zero() && !t.tau3.is_zero());
        assert_eq!(t.classify(), G2Class::Coclosed);
    }

    #[test]
    fn balanced_h3_torsion() {
        let frame = lookup("h3", None).unwrap();
        let w = static_warped(&frame, FieldElem::one(), int(0), int(1)).unwrap();
        let t = g2_torsion_direct(&w).unwrap();
        let nu3 = su3::static_torsion(&frame).unwrap().nu3;
        assert!(t.tau0.is_zero() && t.tau1.is_zero() && t.tau2.is_zero());
        assert_eq!(t.tau3, nu3.hodge_unit().neg().embed(7));
        assert_eq!(t.classify(), G2Class::CoclosedPureType);
    }

    #[test]
    fn warped_formulas_agree_with_direct() {
        for e in catalog() {
            let frame = e.build(None).unwrap();
            for (a, b) in orientations() {
                let w = static_warped(&frame, FieldElem::integer(5), a, b).unwrap();
                let (direct, report) = analyze(&w).unwrap();
                assert!(report.paths_agree, "{} {:?}", e.id, (w.alpha(), w.beta()));
                let conds = warped_class_conditions(&w.base().torsion().unwrap(), w.alpha(), w.beta());
                assert!(conds.agrees_with(&direct), "{}", e.id);
                if direct.tau3.is_zero() {
                    assert!(direct.tau0.is_zero());
                }
            }
        }
    }

    #[test]
    fn warped_formulas_on_time_dependent_frame() {
        let k = int(-2);
        let alphas = [rat(1, 3), rat(-1, 2), int(1), rat(2, 5), int(0), rat(-3, 4)];
        let scaling = FrameScaling::new(alphas.iter().map(|a| TimeScalar::power(k.clone(), a.clone())).collect()).unwrap();
        let warp = TimeScalar::monomial(FieldElem::integer(2), k.clone(), rat(1, 7), int(0));
        for name in ["g6,54", "h2", "su2+su2"] {
            let w = WarpedG2Structure::new(&lookup(name, None).unwrap(), &scaling, warp.clone(), q(3, 5), q(-4, 5)).unwrap();
            let (_, report) = analyze(&w).unwrap();
            assert!(report.paths_agree, "{name}");
        }
    }

    #[test]
    fn shf_base_with_zero_one_is_coclosed() {
        let frame = lookup("e11+e11", None).unwrap();
        let tor = su3::static_torsion(&frame).unwrap();
        let c = warped_class_conditions(&tor, &FieldElem::zero(), &FieldElem::one());
        assert!(c.admits(G2Class::Coclosed));
        let c = warped_class_conditions(&tor, &FieldElem::one(), &FieldElem::zero());
        assert!(!c.tau_vanish[2]);
    }

    #[test]
    fn nk_base_with_one_zero_is_not_coclosed() {
        let tor = su3::static_torsion(&lookup("su2+su2", None).unwrap()).unwrap();
        let c = warped_class_conditions(&tor, &FieldElem::one(), &FieldElem::zero());
        assert!(c.holds(6));
        assert!(!c.holds(2));
        assert!(!c.admits(G2Class::Coclosed));
    }

    #[test]
    fn classification_patterns() {
        let mut t = G2Torsion::<FieldElem> {
            tau0: FieldElem::zero(),
            tau1: KForm::zero(7, 1),
            tau2: KForm::zero(7, 2),
            tau3: KForm::zero(7, 3),
        };
        assert_eq!(classify_g2(&t), G2Class::Parallel);
        t.tau0 = FieldElem::one();
        assert_eq!(classify_g2(&t), G2Class::NearlyParallel);
        t.tau3 = h7(&[1, 2, 7], FieldElem::one());
        assert_eq!(classify_g2(&t), G2Class::Coclosed);
        t.tau1 = h7(&[1], FieldElem::one());
        assert_eq!(classify_g2(&t), G2Class::Other);
    }

    #[test]
    fn metric_is_identity() {
        for (a, b) in orientations() {
            let d = metric_diagnostic(&FieldElem::rational(a), &FieldElem::rational(b)).unwrap();
            assert_eq!(d.constant, Some(FieldElem::one()));
        }
        assert!(metric_diagnostic(&FieldElem::one(), &FieldElem::one()).is_err());
    }

    #[test]
    fn star_identities() {
        let s = FrameScaling::new(vec![2, 1, 3, 1, 1, 5].into_iter().map(FieldElem::integer).collect()).unwrap();
        assert!(check_star_identities(&s, &FieldElem::integer(7)).unwrap());
        let k = int(1);
        let ts = FrameScaling::new((0..6).map(|i| TimeScalar::power(k.clone(), rat(i, 3))).collect()).unwrap();
        assert!(check_star_identities(&ts, &TimeScalar::power(k, rat(1, 2))).unwrap());
    }

    #[test]
    fn rejects_off_circle_orientation() {
        assert!(static_warped(&abelian(), FieldElem::one(), int(1), int(1)).is_err());
    }
}

//! Potential-type ansatz `x^i = (1+kt)^{α_i} h^i`, `f = c(1+kt)^β` for the
//! coflow on symplectic half-flat and balanced bases.
//!
//! The residual on the 7-frame is a finite sum of powers `(1+kt)^{E}` with
//! `E` affine in the `α_i`. Each component vanishes identically only if its
//! powers split into blocks of equal exponent whose coefficients cancel,
//! except for a block of exponent `-1` that balances the time derivative
//! `c_I k (sum α_i + β) (1+kt)^{-1}`. The search enumerates these splittings;
//! every branch adds a linear equation on the `α_i`, so its depth is at most
//! six. On each leaf the remaining equations are linear in
//! `(k, kβ, k α_free)`.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{coflow_residual, check_class_preservation, FlowSolution, Warp};
use crate::coframe::{Coframe, Family, Structure};
use crate::error::{Error, Result};
use crate::exterior::{FrameScaling, Idx, KForm};
use crate::linalg::{rref_with_order, solve, Matrix};
use crate::scalars::{int, Affine, Coeff, FieldElem, ParamScalar, Rational};
use crate::su3::{self, classify_su3, decompose3, Su3Class, Su3Structure};

const NVARS: usize = 6;

/// Linear equations on `α_1..α_6` in reduced row echelon form, pivoting on
/// the highest index so that low-index exponents stay free.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub(crate) struct Constraints {
    /// `[l_1..l_6 | r]` meaning `sum l_i α_i = r`.
    rows: Vec<Vec<Rational>>,
}

impl Constraints {
    fn row_affine(row: &[Rational]) -> Affine {
        Affine::new(-row[NVARS].clone(), row[..NVARS].to_vec())
    }

    fn pivot(row: &[Rational]) -> usize {
        (0..NVARS).rev().find(|&i| !row[i].is_zero()).expect("nonzero row")
    }

    pub(crate) fn reduce(&self, e: &Affine) -> Affine {
        let mut out = e.clone();
        for row in &self.rows {
            let p = Self::pivot(row);
            let c = out.coeff(p);
            if !c.is_zero() {
                out = &out - &Self::row_affine(row).scale(&c);
            }
        }
        out
    }

    /// Adds `e = 0`; `None` when inconsistent.
    pub(crate) fn add(&self, e: &Affine) -> Option<Self> {
        let r = self.reduce(e);
        if r.is_zero() {
            return Some(self.clone());
        }
        if r.is_constant() {
            return None;
        }
        let mut rows = self.rows.clone();
        let mut row: Vec<Rational> = (0..NVARS).map(|i| r.coeff(i)).collect();
        row.push(-r.constant_term().clone());
        rows.push(row);
        let order: Vec<usize> = (0..NVARS).rev().collect();
        rref_with_order(&mut rows, &order);
        rows.sort_by_key(|r| std::cmp::Reverse(Self::pivot(r)));
        Some(Self { rows })
    }

    fn free_vars(&self) -> Vec<usize> {
        let pivots: Vec<usize> = self.rows.iter().map(|r| Self::pivot(r)).collect();
        (0..NVARS).filter(|i| !pivots.contains(i)).collect()
    }

    fn alpha(&self, i: usize) -> Affine {
        self.reduce(&Affine::var(i))
    }
}

/// One component of a vanishing condition.
#[derive(Clone, Debug)]
struct Component {
    terms: ParamScalar,
    /// `(c_I, α indices in I, 7 ∈ I)` for residual components.
    dt: Option<(FieldElem, Vec<usize>, bool)>,
}

fn minus_one() -> Affine {
    Affine::constant(int(-1))
}

fn without(p: &ParamScalar, e: &Affine) -> ParamScalar {
    p.terms()
        .filter(|(x, _)| *x != e)
        .fold(ParamScalar::zero(), |acc, (x, c)| acc.plus(&ParamScalar::monomial(c.clone(), x.clone())))
}

/// All ways the component can vanish given `cons`: the extended constraints
/// and the sum of coefficients assigned to exponent `-1`.
fn split_component(terms: &ParamScalar, cons: &Constraints, has_dt: bool) -> Vec<(Constraints, FieldElem)> {
    let mut out = Vec::new();
    split_rec(terms, cons, FieldElem::zero(), has_dt, &mut out);
    out.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.to_string().cmp(&b.1.to_string())));
    out.dedup();
    out
}

fn split_rec(terms: &ParamScalar, cons: &Constraints, special: FieldElem, has_dt: bool, out: &mut Vec<(Constraints, FieldElem)>) {
    let rem = terms.map_exponents(|e| cons.reduce(e));
    let Some((e, d)) = rem.terms().next().map(|(e, d)| (e.clone(), d.clone())) else {
        out.push((cons.clone(), special));
        return;
    };
    if has_dt {
        if e == minus_one() {
            split_rec(&without(&rem, &e), cons, &special + &d, has_dt, out);
            return;
        }
        if !e.is_constant() {
            if let Some(c2) = cons.add(&(&e - &minus_one())) {
                split_rec(&without(&rem, &e), &c2, &special + &d, has_dt, out);
            }
        }
    }
    for (e2, _) in rem.terms().skip(1) {
        if let Some(c2) = cons.add(&(&e - e2)) {
            split_rec(&rem, &c2, special.clone(), has_dt, out);
        }
    }
}

/// A family of solutions: the points `(k, kβ, k α_free)` satisfying a linear
/// system, with the remaining `α_i` fixed by linear constraints.
#[derive(Clone, Debug)]
pub struct SolutionFamily {
    pub frame: Coframe,
    pub class: Family,
    cons: Constraints,
    equations: Matrix<FieldElem>,
    rhs: Vec<FieldElem>,
    particular: Vec<FieldElem>,
    directions: Vec<Vec<FieldElem>>,
    /// Exponent constraints after class preservation, for rendering.
    class_cons: Constraints,
}

impl SolutionFamily {
    pub fn dimension(&self) -> usize {
        self.directions.len()
    }

    /// Exponent equations as text, e.g. `a6 = -a5`.
    pub fn constraints(&self) -> Vec<String> {
        (0..NVARS)
            .rev()
            .filter_map(|i| {
                let r = self.cons.alpha(i);
                (r != Affine::var(i)).then(|| format!("a{} = {}", i + 1, r))
            })
            .collect()
    }

    /// Whether `(α, β, k)` lies in the family.
    pub fn contains(&self, alphas: &[Rational], beta: &Rational, k: &Rational) -> bool {
        if (0..NVARS).any(|i| self.cons.alpha(i).eval(alphas) != alphas[i]) {
            return false;
        }
        let free = self.cons.free_vars();
        let mut x = vec![FieldElem::rational(k.clone()), FieldElem::rational(k * beta)];
        x.extend(free.iter().map(|&j| FieldElem::rational(k * &alphas[j])));
        self.equations.iter().zip(&self.rhs).all(|(row, r)| {
            let lhs = row.iter().zip(&x).fold(FieldElem::zero(), |acc, (a, b)| &acc + &(a * b));
            lhs == *r
        })
    }

    /// Points `particular + direction_j` with rational entries and `k ≠ 0`.
    pub fn sample_points(&self) -> Vec<FlowSolution> {
        let mut candidates = vec![self.particular.clone()];
        for d in &self.directions {
            candidates.push(self.particular.iter().zip(d).map(|(a, b)| a + b).collect());
        }
        candidates.iter().filter_map(|x| point_to_solution(&self.frame, self.class, &self.cons, x)).collect()
    }

    pub fn torsion_column(&self) -> KForm<ParamScalar> {
        torsion_column(&self.frame, self.class, &self.class_cons)
    }
}

/// A single solution together with the torsion data of its table column.
#[derive(Clone, Debug)]
pub struct SolvedAnsatz {
    pub solution: FlowSolution,
    pub column: KForm<ParamScalar>,
}

#[derive(Clone, Debug, Default)]
pub struct SolveReport {
    pub solutions: Vec<SolvedAnsatz>,
    pub families: Vec<SolutionFamily>,
    /// Stationary branches (`k = 0`) and other non-solutions, described.
    pub diagnostics: Vec<String>,
}

fn point_to_solution(frame: &Coframe, class: Family, cons: &Constraints, x: &[FieldElem]) -> Option<FlowSolution> {
    let vals: Option<Vec<Rational>> = x.iter().map(|v| v.as_rational().cloned()).collect();
    let vals = vals?;
    let k = vals[0].clone();
    if k.is_zero() {
        return None;
    }
    let beta = &vals[1] / &k;
    let free = cons.free_vars();
    let mut free_vals = vec![Rational::zero(); NVARS];
    for (n, &j) in free.iter().enumerate() {
        free_vals[j] = &vals[2 + n] / &k;
    }
    let alphas = (0..NVARS).map(|i| cons.alpha(i).eval(&free_vals)).collect();
    Some(FlowSolution { frame: frame.clone(), class, alphas, warp: Warp::Power { beta }, c: FieldElem::one(), k })
}

fn param_scaling() -> FrameScaling<ParamScalar> {
    FrameScaling::new((0..NVARS).map(|i| ParamScalar::power(Affine::var(i))).collect()).expect("powers are invertible")
}

fn lift(f: &KForm<FieldElem>) -> KForm<ParamScalar> {
    f.convert(|c| ParamScalar::constant(c.clone()))
}

fn class_constraints(class: Family) -> Constraints {
    let mut cons = Constraints::default();
    for (i, j) in [(0, 1), (2, 3), (4, 5)] {
        let e = match class {
            Family::SymplecticHalfFlat => &Affine::var(j) + &Affine::var(i),
            _ => &Affine::var(j) - &Affine::var(i),
        };
        cons = cons.add(&e).expect("independent");
    }
    cons
}

/// Components whose vanishing keeps the base in its class for all `t`.
fn preservation_components(s: &Su3Structure<ParamScalar>, class: Family) -> Result<Vec<Component>> {
    let forms: Vec<KForm<ParamScalar>> = match class {
        Family::SymplecticHalfFlat => vec![s.d(&s.omega), s.d(&s.psi_plus)],
        Family::Balanced => vec![s.d(&s.psi_plus), s.d(&s.psi_minus), decompose3(&s.d(&s.omega))?.eta],
        Family::NearlyKahler => unreachable!("nearly Kahler families are not solved by the ansatz"),
    };
    Ok(forms
        .iter()
        .flat_map(|f| f.terms().map(|(_, c)| Component { terms: c.clone(), dt: None }).collect::<Vec<_>>())
        .collect())
}

/// Components of `∂t⋆φ + Δ⋆φ` for `(α, β) = (0, 1)`.
fn residual_components(frame: &Coframe) -> Result<Vec<Component>> {
    let st = Structure::new(frame, &param_scaling(), 7)?;
    let om = lift(&su3::omega()).embed(7);
    let star = om
        .wedge(&om)
        .scale_field(&FieldElem::rational(Rational::new(1.into(), 2.into())))
        .add(&lift(&su3::psi_plus()).embed(7).wedge_last());
    let lap = super::hodge_laplacian(&st, &star);
    let mut indices: Vec<Idx> = lap.terms().map(|(i, _)| *i).chain(star.terms().map(|(i, _)| *i)).collect();
    indices.sort();
    indices.dedup();
    Ok(indices
        .into_iter()
        .map(|idx| {
            let c = star.get(idx);
            let dt = (!c.is_zero()).then(|| {
                let coeff = c.terms().next().expect("constant").1.clone();
                (coeff, idx.indices().filter(|&i| i <= NVARS).map(|i| i - 1).collect(), idx.contains(7))
            });
            Component { terms: lap.get(idx), dt }
        })
        .collect())
}

/// `dσ2(t)` (half-flat) or `d⋆ν3(t)` (balanced) with exponents reduced by
/// `cons`.
pub(crate) fn torsion_column(frame: &Coframe, class: Family, cons: &Constraints) -> KForm<ParamScalar> {
    let s = Su3Structure::new(frame, &param_scaling()).expect("6-dimensional frame");
    let tor = s.torsion().expect("torsion of an adapted frame");
    let form = match class {
        Family::Balanced => s.d(&tor.nu3.hodge_unit()),
        _ => s.d(&tor.sigma2),
    };
    form.map(|c| c.map_exponents(|e| cons.reduce(e)))
}

#[derive(Clone, Debug)]
struct State {
    cons: Constraints,
    class_cons: Constraints,
    specials: BTreeMap<usize, FieldElem>,
}

fn state_key(s: &State) -> String {
    let sp: Vec<String> = s.specials.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    format!("{:?}|{:?}|{}", s.cons, s.class_cons, sp.join(","))
}

/// Solves the ansatz on a half-flat or balanced base; every returned
/// solution has been verified with the exact residual.
pub fn solve_potential_ansatz(frame: &Coframe, class: Family) -> Result<SolveReport> {
    let expected = match class {
        Family::SymplecticHalfFlat => Su3Class::SymplecticHalfFlat,
        Family::Balanced => Su3Class::Balanced,
        Family::NearlyKahler => {
            return Err(Error::InvalidArgument("nearly Kahler families have a closed form; use the nk case".into()))
        }
    };
    let found = classify_su3(&su3::static_torsion(frame)?);
    if found != expected {
        return Err(Error::ClassMismatch {
            algebra: frame.name().to_string(),
            expected: expected.to_string(),
            found: found.to_string(),
        });
    }

    let s = Su3Structure::new(frame, &param_scaling())?;
    let preserve = preservation_components(&s, class)?;
    let mut residual = residual_components(frame)?;
    residual.sort_by_key(|c| c.terms.len());

    let start = class_constraints(class);
    let mut states = vec![State { cons: start.clone(), class_cons: start, specials: BTreeMap::new() }];
    let n_preserve = preserve.len();
    for (n, comp) in preserve.iter().chain(residual.iter()).enumerate() {
        let mut next: BTreeMap<String, State> = BTreeMap::new();
        for st in &states {
            for (cons, special) in split_component(&comp.terms, &st.cons, comp.dt.is_some()) {
                let mut s2 = State { cons, class_cons: st.class_cons.clone(), specials: st.specials.clone() };
                if n < n_preserve {
                    s2.class_cons = s2.cons.clone();
                } else {
                    s2.specials.insert(n, special);
                }
                next.insert(state_key(&s2), s2);
            }
        }
        states = next.into_values().collect();
        if states.is_empty() {
            break;
        }
    }

    let mut report = SolveReport::default();
    for st in &states {
        leaf(frame, class, st, &preserve, &residual, &mut report)?;
    }
    exponential_branch(frame, class, &mut report)?;
    report.solutions.sort_by_key(|s| sort_key(&s.solution));
    report.solutions.dedup_by(|a, b| a.solution == b.solution);
    Ok(report)
}

fn sort_key(s: &FlowSolution) -> String {
    format!("{:?}{:?}{:?}", s.k, s.warp, s.alphas)
}

fn leaf(frame: &Coframe, class: Family, st: &State, preserve: &[Component], residual: &[Component], report: &mut SolveReport) -> Result<()> {
    let free = st.cons.free_vars();
    let alphas: Vec<Affine> = (0..NVARS).map(|i| st.cons.alpha(i)).collect();
    let cols = 2 + free.len();
    let mut m: Matrix<FieldElem> = Vec::new();
    let mut rhs = Vec::new();
    for (n, comp) in residual.iter().enumerate() {
        let Some((c, idx, warp)) = &comp.dt else { continue };
        let mut row = vec![FieldElem::zero(); cols];
        let k_coeff = idx.iter().fold(Rational::zero(), |acc, &i| acc + alphas[i].constant_term());
        row[0] = c * &FieldElem::rational(k_coeff);
        if *warp {
            row[1] = c.clone();
        }
        for (p, &j) in free.iter().enumerate() {
            let w: Rational = idx.iter().fold(Rational::zero(), |acc, &i| acc + alphas[i].coeff(j));
            row[2 + p] = c * &FieldElem::rational(w);
        }
        m.push(row);
        let sp = st.specials.get(&(n + preserve.len())).cloned().unwrap_or_else(FieldElem::zero);
        rhs.push(-sp);
    }
    let Some((x, null)) = solve(&m, &rhs, cols) else { return Ok(()) };
    if !null.is_empty() {
        let fam = SolutionFamily {
            frame: frame.clone(),
            class,
            cons: st.cons.clone(),
            equations: m,
            rhs,
            particular: x,
            directions: null,
            class_cons: st.class_cons.clone(),
        };
        report.families.push(fam);
        return Ok(());
    }
    if x[0].is_zero() {
        report.diagnostics.push(format!("{}: stationary branch with k = 0", frame.name()));
        return Ok(());
    }
    let Some(sol) = point_to_solution(frame, class, &st.cons, &x) else {
        report.diagnostics.push(format!("{}: irrational exponents {:?}", frame.name(), x.iter().map(ToString::to_string).collect::<Vec<_>>()));
        return Ok(());
    };
    if !coflow_residual(&sol)?.is_zero() || !check_class_preservation(&sol)? {
        report.diagnostics.push(format!("{}: candidate with k = {} failed verification", frame.name(), sol.k));
        return Ok(());
    }
    report.solutions.push(SolvedAnsatz { column: torsion_column(frame, class, &st.class_cons), solution: sol });
    Ok(())
}

/// All `α_i = 0` and `f = c e^{rt}`: `Δ⋆φ + r (⋆φ)_fiber = 0`.
fn exponential_branch(frame: &Coframe, class: Family, report: &mut SolveReport) -> Result<()> {
    let st = Structure::unit(frame, 7);
    let om = su3::omega().embed(7);
    let half = FieldElem::rational(Rational::new(1.into(), 2.into()));
    let fiber = su3::psi_plus().embed(7).wedge_last();
    let star = om.wedge(&om).scale_field(&half).add(&fiber);
    let lap = super::hodge_laplacian(&st, &star);
    if lap.is_zero() {
        return Ok(());
    }
    let (idx, c) = fiber.terms().next().expect("nonzero");
    let rate = -&(lap.get(*idx).checked_div(c)?);
    if lap.add(&fiber.scale_field(&rate)).is_zero() {
        let Some(r) = rate.as_rational() else { return Ok(()) };
        let sol = FlowSolution {
            frame: frame.clone(),
            class,
            alphas: vec![Rational::zero(); NVARS],
            warp: Warp::Exponential,
            c: FieldElem::one(),
            k: r.clone(),
        };
        if coflow_residual(&sol)?.is_zero() && check_class_preservation(&sol)? {
            let zero = (0..NVARS).fold(Constraints::default(), |c, i| c.add(&Affine::var(i)).expect("independent"));
            report.solutions.push(SolvedAnsatz { column: torsion_column(frame, class, &zero), solution: sol });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coframe::lookup;
    use crate::scalars::rat;

    #[test]
    fn constraints_reduce_on_highest_index() {
        let c = class_constraints(Family::SymplecticHalfFlat);
        assert_eq!(c.alpha(1), Affine::var(0).scale(&int(-1)));
        assert_eq!(c.alpha(0), Affine::var(0));
        assert_eq!(c.free_vars(), vec![0, 2, 4]);
        let c2 = c.add(&(&Affine::var(0) - &Affine::constant(rat(1, 6)))).unwrap();
        assert_eq!(c2.alpha(1), Affine::constant(rat(-1, 6)));
        assert!(c2.add(&(&Affine::var(0) - &Affine::constant(int(1)))).is_none());
    }

    #[test]
    fn split_cancels_pairs() {
        let p = ParamScalar::monomial(FieldElem::one(), Affine::var(0)).plus(&ParamScalar::monomial(-FieldElem::one(), Affine::var(1)));
        let out = split_component(&p, &Constraints::default(), false);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].0.alpha(1), Affine::var(0));
        let with_dt = split_component(&p, &Constraints::default(), true);
        // both at -1, or both equal
        assert_eq!(with_dt.len(), 2);
    }

    #[test]
    fn g51_row() {
        let r = solve_potential_ansatz(&lookup("g5,1+R", None).unwrap(), Family::SymplecticHalfFlat).unwrap();
        let sol = &r.solutions[0].solution;
        assert_eq!(sol.k, int(-3));
        assert_eq!(sol.warp, Warp::Power { beta: rat(1, 6) });
    }

    #[test]
    fn class_mismatch_is_reported() {
        let e = solve_potential_ansatz(&lookup("h3", None).unwrap(), Family::SymplecticHalfFlat).unwrap_err();
        assert!(matches!(e, Error::ClassMismatch { .. }));
    }
}

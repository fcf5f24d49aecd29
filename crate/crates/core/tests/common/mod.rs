#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use warpcoflow::coframe::{catalog, Coframe};
use warpcoflow::exterior::{basis, KForm, StaticForm};
use warpcoflow::linalg::rank;
use warpcoflow::scalars::{rat, Coeff, FieldElem, Rational, TimeScalar};
use warpcoflow::su3::type_bases;

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

pub fn field() -> impl Strategy<Value = FieldElem> {
    (small_rational(), small_rational(), small_rational(), small_rational())
        .prop_map(|(a, b, c, d)| FieldElem::new(a, b, c, d))
}

pub fn form(dim: usize, degree: usize) -> impl Strategy<Value = StaticForm> {
    let n = basis(dim, degree).len();
    prop::collection::vec((0..n, field()), 0..5).prop_map(move |terms| {
        let b = basis(dim, degree);
        KForm::from_terms(dim, degree, terms.into_iter().map(|(i, c)| (b[i], c)))
    })
}

pub fn any_form(dim: usize) -> impl Strategy<Value = StaticForm> {
    (0..=dim).prop_flat_map(move |k| form(dim, k))
}

pub fn catalog_frame() -> impl Strategy<Value = Coframe> {
    (0..catalog().len()).prop_map(|i| catalog()[i].build(None).expect("catalog builds"))
}

pub fn time_scalar(k: Rational) -> impl Strategy<Value = TimeScalar> {
    prop::collection::vec((field(), small_rational(), small_rational()), 0..4).prop_map(move |terms| {
        terms.into_iter().fold(TimeScalar::zero(), |acc, (c, pow, rate)| {
            acc.plus(&TimeScalar::monomial(c, k.clone(), pow, rate))
        })
    })
}

fn ensure(ok: bool, what: &str) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

fn sign(n: usize) -> FieldElem {
    FieldElem::integer(if n.is_multiple_of(2) { 1 } else { -1 })
}

pub fn anticommutativity(a: &StaticForm, b: &StaticForm) -> Result<(), TestCaseError> {
    let swapped = b.wedge(a).scale_field(&sign(a.degree() * b.degree()));
    ensure(a.wedge(b) == swapped, "a∧b ≠ (-1)^pq b∧a")
}

pub fn associativity(a: &StaticForm, b: &StaticForm, c: &StaticForm) -> Result<(), TestCaseError> {
    ensure(a.wedge(b).wedge(c) == a.wedge(&b.wedge(c)), "wedge is not associative")
}

pub fn leibniz(frame: &Coframe, a: &StaticForm, b: &StaticForm) -> Result<(), TestCaseError> {
    let lhs = frame.d(&a.wedge(b));
    let rhs = frame.d(a).wedge(b).add(&a.wedge(&frame.d(b)).scale_field(&sign(a.degree())));
    ensure(lhs == rhs, "d(a∧b) ≠ da∧b + (-1)^p a∧db")
}

pub fn d_squared(frame: &Coframe, a: &StaticForm) -> Result<(), TestCaseError> {
    ensure(frame.d(&frame.d(a)).is_zero(), "d² ≠ 0")
}

pub fn star_star(a: &StaticForm) -> Result<(), TestCaseError> {
    let (n, k) = (a.dim(), a.degree());
    ensure(a.hodge_unit().hodge_unit() == a.scale_field(&sign(k * (n - k))), "⋆⋆ ≠ (-1)^{k(n-k)}")
}

pub fn star_symmetric(a: &StaticForm, b: &StaticForm) -> Result<(), TestCaseError> {
    ensure(a.wedge(&b.hodge_unit()) == b.wedge(&a.hodge_unit()), "a∧⋆b ≠ b∧⋆a")
}

pub fn antiderivation(v: usize, a: &StaticForm, b: &StaticForm) -> Result<(), TestCaseError> {
    let total = a.degree() + b.degree();
    if total == 0 || total > a.dim() {
        return Ok(());
    }
    let lhs = a.wedge(b).contract(v).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let ia = a.contract(v);
    let ib = b.contract(v);
    let mut rhs = KForm::zero(a.dim(), total - 1);
    if let Ok(ia) = ia {
        rhs = rhs.add(&ia.wedge(b));
    }
    if let Ok(ib) = ib {
        rhs = rhs.add(&a.wedge(&ib).scale_field(&sign(a.degree())));
    }
    ensure(lhs == rhs, "ι(a∧b) ≠ ιa∧b + (-1)^p a∧ιb")
}

pub fn time_derivation(x: &TimeScalar, y: &TimeScalar) -> Result<(), TestCaseError> {
    let lhs = x.times(y).ddt();
    let rhs = x.ddt().times(y).plus(&x.times(&y.ddt()));
    ensure(lhs == rhs, "(xy)' ≠ x'y + xy'")
}

pub fn field_laws(x: &FieldElem, y: &FieldElem, z: &FieldElem) -> Result<(), TestCaseError> {
    ensure(&(x * y) * z == x * &(y * z), "multiplication not associative")?;
    ensure(x * &(y + z) == &(x * y) + &(x * z), "not distributive")?;
    if !x.is_zero() {
        ensure(&x.inverse().expect("nonzero") * x == FieldElem::one(), "x⁻¹x ≠ 1")?;
    }
    Ok(())
}

/// Ranks of the Λ²_6, Λ²_8 and Λ³_12 bases.
pub fn type_space_ranks() -> [usize; 3] {
    let b = type_bases();
    let r = |forms: &[StaticForm]| rank(&forms.iter().map(|f| f.to_vector()).collect::<Vec<_>>());
    [r(&b.lambda2_6), r(&b.lambda2_8), r(&b.lambda3_12)]
}

/// Runs every property on `cases` random inputs each; returns the failures.
pub fn run_property_suite(cases: u32) -> Vec<String> {
    let mut failures = Vec::new();
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    let mut note = |name: &str, r: Result<(), proptest::test_runner::TestError<_>>| {
        if let Err(e) = r {
            failures.push(format!("{name}: {e}"));
        }
    };
    note("anticommutativity", runner.run(&(any_form(7), any_form(7)), |(a, b)| anticommutativity(&a, &b)).map_err(erase));
    note(
        "associativity",
        runner.run(&(any_form(6), any_form(6), any_form(6)), |(a, b, c)| associativity(&a, &b, &c)).map_err(erase),
    );
    note(
        "leibniz",
        runner.run(&(catalog_frame(), any_form(6), any_form(6)), |(f, a, b)| leibniz(&f, &a, &b)).map_err(erase),
    );
    note("d squared", runner.run(&(catalog_frame(), any_form(6)), |(f, a)| d_squared(&f, &a)).map_err(erase));
    note("star star", runner.run(&prop_oneof![any_form(6), any_form(7)], |a| star_star(&a)).map_err(erase));
    note(
        "star symmetric",
        runner
            .run(&(0usize..=7).prop_flat_map(|k| (form(7, k), form(7, k))), |(a, b)| star_symmetric(&a, &b))
            .map_err(erase),
    );
    note(
        "antiderivation",
        runner.run(&(1usize..=7, any_form(7), any_form(7)), |(v, a, b)| antiderivation(v, &a, &b)).map_err(erase),
    );
    note(
        "time derivation",
        runner
            .run(&(-3i64..=3).prop_flat_map(|k| (time_scalar(rat(k, 1)), time_scalar(rat(k, 1)))), |(x, y)| {
                time_derivation(&x, &y)
            })
            .map_err(erase),
    );
    note("field laws", runner.run(&(field(), field(), field()), |(x, y, z)| field_laws(&x, &y, &z)).map_err(erase));
    if type_space_ranks() != [6, 8, 12] {
        failures.push(format!("type space ranks {:?}", type_space_ranks()));
    }
    failures
}

fn erase<T: std::fmt::Debug>(e: proptest::test_runner::TestError<T>) -> proptest::test_runner::TestError<String> {
    match e {
        proptest::test_runner::TestError::Abort(r) => proptest::test_runner::TestError::Abort(r),
        proptest::test_runner::TestError::Fail(r, v) => proptest::test_runner::TestError::Fail(r, format!("{v:?}")),
    }
}

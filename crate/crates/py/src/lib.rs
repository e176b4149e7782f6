//! Python bindings for `feige-core`.
//!
//! Exact values cross the boundary as `fractions.Fraction` (or `int`). Rational
//! arguments accept `Fraction`, `int`, or a string such as `"5/2"` or `"2.5"`.

use feige_core::exact::{self, Rational};
use feige_core::lemmas::{self, LemmaWitness};
use feige_core::report::{self, VerificationReport};
use feige_core::{beta, mc, minimizer, tail, verify, Error};
use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyString;

fn value_error(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if let Ok(text) = obj.cast::<PyString>() {
        return exact::parse_rational(text.to_str()?).map_err(value_error);
    }
    obj.extract::<Rational>()
}

fn rationals(objs: &Bound<'_, PyAny>) -> PyResult<Vec<Rational>> {
    objs.try_iter()?.map(|item| rational(&item?)).collect()
}

fn iid(n: u32, p: &Bound<'_, PyAny>) -> PyResult<tail::IidTwoPointInstance> {
    tail::IidTwoPointInstance::new(n, rational(p)?).map_err(value_error)
}

fn spec(n: u32, m: u32) -> PyResult<tail::TailSpec> {
    tail::TailSpec::new(n, m).map_err(value_error)
}

#[pyclass(name = "LemmaWitness", module = "feige", frozen)]
struct PyLemmaWitness(LemmaWitness);

#[pymethods]
impl PyLemmaWitness {
    #[getter]
    fn lemma_id(&self) -> String {
        self.0.lemma_id.name()
    }

    #[getter]
    fn n(&self) -> Option<u32> {
        self.0.n
    }

    #[getter]
    fn m(&self) -> Option<u32> {
        self.0.m
    }

    #[getter]
    fn lhs(&self) -> Rational {
        self.0.lhs.clone()
    }

    #[getter]
    fn rhs(&self) -> Rational {
        self.0.rhs.clone()
    }

    #[getter]
    fn holds(&self) -> bool {
        self.0.holds
    }

    fn __repr__(&self) -> String {
        format!(
            "LemmaWitness({}, n={:?}, m={:?}, lhs={}, rhs={}, holds={})",
            self.lemma_id(),
            self.0.n,
            self.0.m,
            self.0.lhs,
            self.0.rhs,
            self.0.holds
        )
    }
}

#[pyclass(name = "VerificationReport", module = "feige", frozen)]
struct PyReport(VerificationReport);

#[pymethods]
impl PyReport {
    #[getter]
    fn suite(&self) -> &str {
        &self.0.suite
    }

    #[getter]
    fn checks_run(&self) -> u64 {
        self.0.checks_run
    }

    #[getter]
    fn failures(&self) -> Vec<PyLemmaWitness> {
        self.0.failures.iter().cloned().map(PyLemmaWitness).collect()
    }

    #[getter]
    fn passed(&self) -> bool {
        self.0.passed()
    }

    fn to_json(&self) -> String {
        report::serialize_report(&self.0)
    }

    fn __repr__(&self) -> String {
        format!(
            "VerificationReport({:?}, checks_run={}, failures={})",
            self.0.suite,
            self.0.checks_run,
            self.0.failures.len()
        )
    }
}

#[pyclass(name = "BreakpointValue", module = "feige", frozen, get_all)]
struct PyBreakpointValue {
    n: u32,
    m: u32,
    p_star: Rational,
    value: Rational,
    unnormalized: BigInt,
}

#[pyclass(name = "MinResult", module = "feige", frozen, get_all)]
struct PyMinResult {
    n: u32,
    argmin_p: Rational,
    min_value: Rational,
    certified_above_1_over_e: bool,
    e_terms_used: u32,
}

#[pyclass(name = "McEstimate", module = "feige", frozen, get_all)]
struct PyMcEstimate {
    p_hat: f64,
    std_error: f64,
    ci95_low: f64,
    ci95_high: f64,
    trials: u64,
    seed: u64,
    hits: u64,
}

#[pyclass(name = "SweepRecord", module = "feige", frozen, get_all)]
struct PySweepRecord {
    p: Rational,
    f_value: Rational,
    p_float: f64,
    f_float: f64,
    is_breakpoint: bool,
}

#[pyfunction]
fn binomial(n: u32, k: i64) -> BigInt {
    exact::binomial(n, k)
}

/// Returns `(lower, upper)` with `lower < e < upper`.
#[pyfunction]
fn e_bracket(terms: u32) -> PyResult<(Rational, Rational)> {
    let b = exact::e_bracket(terms).map_err(value_error)?;
    Ok((b.lower, b.upper))
}

#[pyfunction]
fn tail_cutoff(n: u32, p: &Bound<'_, PyAny>) -> PyResult<u32> {
    tail::tail_cutoff(n, &rational(p)?).map_err(value_error)
}

#[pyfunction]
fn partial_tail(n: u32, m: u32, p: &Bound<'_, PyAny>) -> PyResult<Rational> {
    tail::partial_tail(spec(n, m)?, &rational(p)?).map_err(value_error)
}

#[pyfunction]
fn f_of_p(n: u32, p: &Bound<'_, PyAny>) -> PyResult<Rational> {
    Ok(tail::f_of_p(&iid(n, p)?))
}

#[pyfunction]
fn tail_derivative(n: u32, m: u32, p: &Bound<'_, PyAny>) -> PyResult<Rational> {
    tail::tail_derivative(spec(n, m)?, &rational(p)?).map_err(value_error)
}

#[pyfunction]
fn breakpoints(n: u32) -> Vec<Rational> {
    tail::breakpoints(n)
}

#[pyfunction]
fn brute_force_iid(n: u32, p: &Bound<'_, PyAny>) -> PyResult<Rational> {
    Ok(tail::brute_force_iid(&iid(n, p)?))
}

#[pyfunction]
fn exact_heterogeneous(xs: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let inst = tail::HeterogeneousInstance::new(rationals(xs)?).map_err(value_error)?;
    tail::exact_heterogeneous(&inst).map_err(value_error)
}

#[pyfunction]
fn h_value(n: u32, m: u32) -> PyResult<PyBreakpointValue> {
    let v = minimizer::h_value(n, m).map_err(value_error)?;
    Ok(PyBreakpointValue {
        n: v.n,
        m: v.m,
        p_star: v.p_star,
        value: v.value,
        unnormalized: v.unnormalized,
    })
}

#[pyfunction]
fn h_floor(n: u32) -> PyResult<Rational> {
    if n == 0 {
        return Err(value_error(Error::EmptyN));
    }
    Ok(minimizer::h_floor(n))
}

#[pyfunction]
#[pyo3(signature = (n, e_terms = minimizer::DEFAULT_E_TERMS))]
fn global_min(py: Python<'_>, n: u32, e_terms: u32) -> PyResult<PyMinResult> {
    if n == 0 {
        return Err(value_error(Error::EmptyN));
    }
    let r = py.detach(|| minimizer::global_min_with_terms(n, e_terms));
    Ok(PyMinResult {
        n: r.n,
        argmin_p: r.argmin_p,
        min_value: r.min_value,
        certified_above_1_over_e: r.certified_above_1_over_e,
        e_terms_used: r.e_terms_used,
    })
}

#[pyfunction]
fn certify_above_1_over_e(n: u32, terms: u32) -> bool {
    minimizer::certify_above_1_over_e(n, terms)
}

#[pyfunction]
fn floor_monotone_check(n_max: u32) -> PyReport {
    PyReport(minimizer::floor_monotone_check(n_max))
}

#[pyfunction]
fn incomplete_beta(z: &Bound<'_, PyAny>, a: u32, b: u32) -> PyResult<Rational> {
    let params = beta::BetaParams::new(rational(z)?, a, b).map_err(value_error)?;
    Ok(beta::incomplete_beta(&params))
}

#[pyfunction]
fn h_via_beta(n: u32, m: u32) -> PyResult<Rational> {
    beta::h_via_beta(n, m).map_err(value_error)
}

#[pyfunction]
fn d_value(n: u32, m: u32) -> PyResult<Rational> {
    lemmas::d_value(n, m).map_err(value_error)
}

#[pyfunction]
fn symmetry_check(n: u32) -> PyReport {
    PyReport(lemmas::symmetry_check(n))
}

/// `-1`, `0` or `1` as `w(a)` is below, equal to, or above `w(b)`.
#[pyfunction]
fn w_compare(a: u32, b: u32) -> i8 {
    lemmas::w_compare(a, b) as i8
}

#[pyfunction]
fn g_argmax(n: u32, m: u32) -> PyResult<Rational> {
    lemmas::g_argmax(n, m).map_err(value_error)
}

#[pyfunction]
fn rectangle_bound_check(n: u32, m: u32) -> PyResult<PyLemmaWitness> {
    lemmas::rectangle_bound_check(n, m).map(PyLemmaWitness).map_err(value_error)
}

#[pyfunction]
fn case1_check(n: u32, m: u32) -> PyResult<PyLemmaWitness> {
    lemmas::case1_check(n, m).map(PyLemmaWitness).map_err(value_error)
}

#[pyfunction]
fn case2_check(n: u32, m: u32) -> PyResult<PyLemmaWitness> {
    lemmas::case2_check(n, m).map(PyLemmaWitness).map_err(value_error)
}

#[pyfunction]
fn case_boundary_chain_check(m: u32) -> PyResult<PyLemmaWitness> {
    lemmas::case_boundary_chain_check(m).map(PyLemmaWitness).map_err(value_error)
}

#[pyfunction]
fn b_value(m: u32) -> PyResult<Rational> {
    if m == 0 {
        return Err(PyValueError::new_err("b(m) needs m >= 1"));
    }
    Ok(lemmas::b_value(m))
}

#[pyfunction]
fn b_monotone_check(m_max: u32) -> PyReport {
    PyReport(lemmas::b_monotone_check(m_max))
}

#[pyfunction]
#[pyo3(signature = (xs, trials = mc::DEFAULT_TRIALS, seed = 0, workers = 1))]
fn simulate(py: Python<'_>, xs: &Bound<'_, PyAny>, trials: u64, seed: u64, workers: usize) -> PyResult<PyMcEstimate> {
    let inst = tail::HeterogeneousInstance::new(rationals(xs)?).map_err(value_error)?;
    let cfg = mc::McConfig { trials, seed, workers };
    let e = py.detach(|| mc::simulate(&inst, &cfg)).map_err(value_error)?;
    Ok(PyMcEstimate {
        p_hat: e.p_hat,
        std_error: e.std_error,
        ci95_low: e.ci95_low,
        ci95_high: e.ci95_high,
        trials: e.trials,
        seed: e.seed,
        hits: e.hits,
    })
}

#[pyfunction]
fn sweep(py: Python<'_>, n: u32, points: u32) -> PyResult<Vec<PySweepRecord>> {
    let records = py.detach(|| report::sweep(n, points)).map_err(value_error)?;
    Ok(records
        .into_iter()
        .map(|r| PySweepRecord {
            p: r.p,
            f_value: r.f_value,
            p_float: r.p_float,
            f_float: r.f_float,
            is_breakpoint: r.is_breakpoint,
        })
        .collect())
}

/// Runs the verification battery and returns the JSON bundle.
#[pyfunction]
#[pyo3(signature = (n_max, self_test_fault = false))]
fn run_verify(py: Python<'_>, n_max: u32, self_test_fault: bool) -> PyResult<String> {
    if n_max < 2 {
        return Err(PyValueError::new_err("n_max must be at least 2"));
    }
    let bundle = py.detach(|| verify::run_battery(n_max, self_test_fault));
    Ok(report::serialize_bundle(&bundle))
}

#[pymodule]
fn feige(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLemmaWitness>()?;
    m.add_class::<PyReport>()?;
    m.add_class::<PyBreakpointValue>()?;
    m.add_class::<PyMinResult>()?;
    m.add_class::<PyMcEstimate>()?;
    m.add_class::<PySweepRecord>()?;
    m.add_function(wrap_pyfunction!(binomial, m)?)?;
    m.add_function(wrap_pyfunction!(e_bracket, m)?)?;
    m.add_function(wrap_pyfunction!(tail_cutoff, m)?)?;
    m.add_function(wrap_pyfunction!(partial_tail, m)?)?;
    m.add_function(wrap_pyfunction!(f_of_p, m)?)?;
    m.add_function(wrap_pyfunction!(tail_derivative, m)?)?;
    m.add_function(wrap_pyfunction!(breakpoints, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_iid, m)?)?;
    m.add_function(wrap_pyfunction!(exact_heterogeneous, m)?)?;
    m.add_function(wrap_pyfunction!(h_value, m)?)?;
    m.add_function(wrap_pyfunction!(h_floor, m)?)?;
    m.add_function(wrap_pyfunction!(global_min, m)?)?;
    m.add_function(wrap_pyfunction!(certify_above_1_over_e, m)?)?;
    m.add_function(wrap_pyfunction!(floor_monotone_check, m)?)?;
    m.add_function(wrap_pyfunction!(incomplete_beta, m)?)?;
    m.add_function(wrap_pyfunction!(h_via_beta, m)?)?;
    m.add_function(wrap_pyfunction!(d_value, m)?)?;
    m.add_function(wrap_pyfunction!(symmetry_check, m)?)?;
    m.add_function(wrap_pyfunction!(w_compare, m)?)?;
    m.add_function(wrap_pyfunction!(g_argmax, m)?)?;
    m.add_function(wrap_pyfunction!(rectangle_bound_check, m)?)?;
    m.add_function(wrap_pyfunction!(case1_check, m)?)?;
    m.add_function(wrap_pyfunction!(case2_check, m)?)?;
    m.add_function(wrap_pyfunction!(case_boundary_chain_check, m)?)?;
    m.add_function(wrap_pyfunction!(b_value, m)?)?;
    m.add_function(wrap_pyfunction!(b_monotone_check, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    Ok(())
}

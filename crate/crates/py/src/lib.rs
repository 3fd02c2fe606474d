//! Python bindings. Big integers cross as Python `int`, enclosures as
//! `fractions.Fraction`, and composite reports as plain dicts.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use serde::Serialize;

use pelltrib::contfrac::{expand_terms, expand_until_q_exceeds};
use pelltrib::factor::{sqfree_decompose, FactoringEffort};
use pelltrib::pell::{self, FundamentalSolution, PellSign};
use pelltrib::realnum::parse_decimal;
use pelltrib::reduction::{exclusion_statement, reduce_homogeneous, reduce_with_fallback};
use pelltrib::search::{self, ReductionBase, SearchConfig};
use pelltrib::tribonacci::{BinetConstants, TribCache};
use pelltrib::{CertifiedReal, Error, PrecisionPolicy};

create_exception!(pelltrib, PelltribError, PyException);
create_exception!(pelltrib, InsufficientPrecisionError, PelltribError);
create_exception!(pelltrib, ReductionFailedError, PelltribError);
create_exception!(pelltrib, DiscrepancyError, PelltribError);

fn py_err(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::InvalidInput(_) | Error::Domain { .. } => PyValueError::new_err(msg),
        Error::InsufficientPrecision { .. } => InsufficientPrecisionError::new_err(msg),
        Error::ReductionFailed { .. } => ReductionFailedError::new_err(msg),
        Error::Discrepancy(_) => DiscrepancyError::new_err(msg),
        Error::ExpansionTooShort(_) => PelltribError::new_err(msg),
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for pelltrib::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

fn sign(epsilon: i32) -> PyResult<PellSign> {
    PellSign::from_i32(epsilon).py()
}

fn policy(bits: u32, max_bits: u32) -> PyResult<PrecisionPolicy> {
    PrecisionPolicy::new(bits, max_bits, 2).py()
}

fn fraction<'py>(py: Python<'py>, q: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((q.numer().clone(), q.denom().clone()))
}

/// Round-trips a serializable report through JSON into Python objects.
fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PelltribError::new_err(e.to_string()))?;
    py.import("json")?.getattr("loads")?.call1((text,))
}

/// A real number with a certified enclosure that refines on demand.
#[pyclass(name = "Real", module = "pelltrib", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyReal {
    inner: CertifiedReal,
}

impl From<CertifiedReal> for PyReal {
    fn from(inner: CertifiedReal) -> Self {
        PyReal { inner }
    }
}

#[pymethods]
impl PyReal {
    /// From an int or a decimal string such as `"2.4"`, `"1e16"` or `"3/7"`.
    #[new]
    fn new(value: &Bound<'_, PyAny>) -> PyResult<Self> {
        if let Ok(n) = value.extract::<BigInt>() {
            return Ok(CertifiedReal::from_int(n).into());
        }
        let s: String = value.extract()?;
        Ok(CertifiedReal::from_rational(parse_decimal(&s).py()?).into())
    }

    fn sqrt(&self) -> PyResult<Self> {
        self.inner.sqrt().py().map(Into::into)
    }

    fn log(&self) -> PyResult<Self> {
        self.inner.log().py().map(Into::into)
    }

    fn exp(&self) -> Self {
        self.inner.exp().into()
    }

    fn __add__(&self, other: &Self) -> Self {
        self.inner.add(&other.inner).into()
    }

    fn __sub__(&self, other: &Self) -> Self {
        self.inner.sub(&other.inner).into()
    }

    fn __mul__(&self, other: &Self) -> Self {
        self.inner.mul(&other.inner).into()
    }

    fn __truediv__(&self, other: &Self) -> PyResult<Self> {
        self.inner.div(&other.inner).py().map(Into::into)
    }

    fn __neg__(&self) -> Self {
        self.inner.neg().into()
    }

    /// `(lower, upper)` after refining the radius below `2^-bits`.
    fn enclosure<'py>(&self, py: Python<'py>, bits: u32) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
        let r = self.inner.refine_bits(bits).py()?;
        Ok((fraction(py, &r.lower())?, fraction(py, &r.upper())?))
    }

    /// Certified `<`; raises if the two cannot be separated.
    fn less_than(&self, other: &Self) -> PyResult<bool> {
        self.inner.lt(&other.inner).py()
    }

    fn floor(&self) -> PyResult<BigInt> {
        self.inner.floor().py()
    }

    fn to_decimal(&self, digits: u32) -> PyResult<String> {
        self.inner.to_decimal(digits).py()
    }

    fn __float__(&self) -> f64 {
        self.inner.to_f64()
    }

    fn __repr__(&self) -> PyResult<String> {
        Ok(format!("Real({})", self.inner.to_decimal(20).py()?))
    }
}

/// The fundamental solution `(X1, Y1)` of `X^2 - dY^2 = epsilon`.
#[pyclass(name = "PellSolution", module = "pelltrib", frozen)]
struct PyPellSolution {
    inner: FundamentalSolution,
}

#[pymethods]
impl PyPellSolution {
    #[getter]
    fn d(&self) -> BigUint {
        self.inner.d.clone()
    }

    #[getter]
    fn x1(&self) -> BigUint {
        self.inner.x1.clone()
    }

    #[getter]
    fn y1(&self) -> BigUint {
        self.inner.y1.clone()
    }

    #[getter]
    fn epsilon(&self) -> i32 {
        self.inner.epsilon.value()
    }

    #[getter]
    fn delta(&self) -> PyReal {
        self.inner.delta.clone().into()
    }

    fn x(&self, n: u64) -> BigUint {
        pell::x_coordinate(&self.inner, n)
    }

    fn y(&self, n: u64) -> BigUint {
        pell::y_coordinate(&self.inner, n)
    }

    fn __repr__(&self) -> String {
        format!(
            "PellSolution(d={}, x1={}, y1={}, epsilon={})",
            self.inner.d,
            self.inner.x1,
            self.inner.y1,
            self.inner.epsilon.value()
        )
    }
}

/// `T_m` with `T_0 = 0, T_1 = T_2 = 1`.
#[pyfunction]
fn trib(m: usize) -> BigUint {
    pelltrib::tribonacci::trib(m)
}

/// `[T_0, ..., T_max]`.
#[pyfunction]
fn trib_range(max: usize) -> Vec<BigUint> {
    TribCache::new(max).values().to_vec()
}

/// Decimal strings for `alpha`, `a`, `chi` and the other Binet constants.
#[pyfunction]
#[pyo3(signature = (digits = 30, bits = 192, max_bits = 8192))]
fn constants(digits: u32, bits: u32, max_bits: u32) -> PyResult<Vec<(String, String)>> {
    let k = BinetConstants::new(policy(bits, max_bits)?).py()?;
    k.check_brackets().py()?;
    Ok(k.to_decimal_map(digits).py()?.into_iter().map(|(n, v)| (n.to_string(), v)).collect())
}

#[pyfunction]
#[pyo3(signature = (d, bits = 192, max_bits = 8192))]
fn fundamental(d: BigUint, bits: u32, max_bits: u32) -> PyResult<PyPellSolution> {
    let inner = pell::fundamental(&d, policy(bits, max_bits)?).py()?;
    Ok(PyPellSolution { inner })
}

/// `P^+_n(x)` for `epsilon = 1`, `P^-_n(x)` for `epsilon = -1`.
#[pyfunction]
fn p_poly(epsilon: i32, n: u64, x: BigUint) -> PyResult<BigInt> {
    Ok(match sign(epsilon)? {
        PellSign::Plus => BigInt::from(pell::p_plus(n, &x)),
        PellSign::Minus => pell::p_minus(n, &x),
    })
}

/// `n = d * y^2`; returns `(d, y, complete)`.
#[pyfunction]
#[pyo3(signature = (n, trial_limit = None, rho_iterations = None))]
fn sqfree(n: BigUint, trial_limit: Option<u32>, rho_iterations: Option<u64>) -> PyResult<(BigUint, BigUint, bool)> {
    if n == BigUint::from(0u32) {
        return Err(PyValueError::new_err("n must be positive"));
    }
    let mut effort = FactoringEffort::default();
    if let Some(t) = trial_limit {
        effort.trial_limit = t;
    }
    if let Some(r) = rho_iterations {
        effort.rho_iterations = r;
    }
    let dec = sqfree_decompose(&n, effort);
    Ok((dec.d, dec.y, dec.complete))
}

/// Partial quotients and convergents `(p, q)`.
type Expansion = (Vec<BigInt>, Vec<(BigInt, BigInt)>);

/// Partial quotients and convergents `(p, q)` of `x`, either a fixed number
/// of terms or until some `q` exceeds `q_above`.
#[pyfunction]
#[pyo3(signature = (x, terms = 20, q_above = None))]
fn continued_fraction(x: &PyReal, terms: usize, q_above: Option<BigInt>) -> PyResult<Expansion> {
    let cf = match q_above {
        Some(q) => expand_until_q_exceeds(&x.inner, &q),
        None => expand_terms(&x.inner, terms),
    }
    .py()?;
    let conv = cf.convergents().iter().map(|c| (c.p.clone(), c.q.clone())).collect();
    Ok((cf.quotients().to_vec(), conv))
}

/// `log(X1 + sqrt(X1^2 - epsilon)) / log(alpha)`.
#[pyfunction]
#[pyo3(signature = (x1, epsilon, bits = 192, max_bits = 8192))]
fn kappa(x1: BigUint, epsilon: i32, bits: u32, max_bits: u32) -> PyResult<PyReal> {
    let p = policy(bits, max_bits)?;
    let delta = pell::delta_from_x1(&x1, sign(epsilon)?, p).py()?;
    let k = BinetConstants::new(p).py()?;
    delta.log().and_then(|l| l.div(&k.log_alpha)).py().map(Into::into)
}

/// Baker-Davenport reduction for `delta = X1 + sqrt(X1^2 - epsilon)`.
/// `method` is `"auto"`, `"standard"` or `"homogeneous"`.
#[pyfunction]
#[pyo3(signature = (x1, epsilon, m_bound = "1e16", a = "14.8", b = "2.4", method = "auto", convergent_budget = 8))]
#[allow(clippy::too_many_arguments)]
fn reduce<'py>(
    py: Python<'py>,
    x1: BigUint,
    epsilon: i32,
    m_bound: &str,
    a: &str,
    b: &str,
    method: &str,
    convergent_budget: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let m = parse_decimal(m_bound).py()?;
    if !m.is_integer() || m <= BigRational::from_integer(0.into()) {
        return Err(PyValueError::new_err(format!("m_bound must be a positive integer, got '{m_bound}'")));
    }
    let config = SearchConfig {
        m_reduction: m.to_integer().to_biguint().expect("positive"),
        a: a.to_string(),
        b: ReductionBase::parse(b).py()?,
        convergent_budget,
        ..SearchConfig::default()
    };
    config.validate().py()?;
    let consts = BinetConstants::new(config.policy).py()?;
    let delta = pell::delta_from_x1(&x1, sign(epsilon)?, config.policy).py()?;
    let instance = config.reduction_instance(&consts, &delta).py()?;
    let outcome = match method {
        "auto" => reduce_with_fallback(&instance, convergent_budget),
        "standard" => pelltrib::reduction::reduce(&instance, convergent_budget),
        "homogeneous" => reduce_homogeneous(&instance),
        _ => return Err(PyValueError::new_err(format!("unknown method '{method}'"))),
    }
    .py()?;
    let out = to_py(py, &outcome)?;
    let dict = out.cast::<PyDict>()?;
    dict.set_item("claim", exclusion_statement(&outcome, &instance).text)?;
    Ok(out)
}

fn search_config(m1_max: u64, n1_max: u64, m2_check_max: u64, b: &str, jobs: usize) -> PyResult<SearchConfig> {
    let config = SearchConfig {
        m1_max,
        n1_max,
        m2_check_max,
        b: ReductionBase::parse(b).py()?,
        jobs,
        ..SearchConfig::default()
    };
    config.validate().py()?;
    Ok(config)
}

/// Every `P^eps_n1(X) = T_m1` with `2 <= n1 < m1`, as `(epsilon, n1, m1, X)`.
#[pyfunction]
#[pyo3(signature = (m1_max = 100, n1_max = 69))]
fn solve_small(m1_max: u64, n1_max: u64) -> PyResult<Vec<(i32, u64, u64, BigUint)>> {
    let config = search_config(m1_max, n1_max, 100, "2.4", 1)?;
    Ok(search::solve_small(&config)
        .into_iter()
        .map(|s| (s.epsilon.value(), s.n1, s.m1, s.x1))
        .collect())
}

/// Runs every stage and returns the full report as a dict. The GIL is
/// released while the sweep runs.
#[pyfunction]
#[pyo3(signature = (m1_max = 100, n1_max = 69, m2_check_max = 100, b = "2.4", jobs = 1))]
fn verify_theorem<'py>(
    py: Python<'py>,
    m1_max: u64,
    n1_max: u64,
    m2_check_max: u64,
    b: &str,
    jobs: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let config = search_config(m1_max, n1_max, m2_check_max, b, jobs)?;
    let report = py.detach(|| search::verify_theorem(&config)).py()?;
    to_py(py, &report)
}

#[pymodule]
#[pyo3(name = "pelltrib")]
fn pelltrib_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("PelltribError", py.get_type::<PelltribError>())?;
    m.add("InsufficientPrecisionError", py.get_type::<InsufficientPrecisionError>())?;
    m.add("ReductionFailedError", py.get_type::<ReductionFailedError>())?;
    m.add("DiscrepancyError", py.get_type::<DiscrepancyError>())?;
    m.add_class::<PyReal>()?;
    m.add_class::<PyPellSolution>()?;
    m.add_function(wrap_pyfunction!(trib, m)?)?;
    m.add_function(wrap_pyfunction!(trib_range, m)?)?;
    m.add_function(wrap_pyfunction!(constants, m)?)?;
    m.add_function(wrap_pyfunction!(fundamental, m)?)?;
    m.add_function(wrap_pyfunction!(p_poly, m)?)?;
    m.add_function(wrap_pyfunction!(sqfree, m)?)?;
    m.add_function(wrap_pyfunction!(continued_fraction, m)?)?;
    m.add_function(wrap_pyfunction!(kappa, m)?)?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(solve_small, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem, m)?)?;
    Ok(())
}

//! Python bindings. Rationals cross the boundary as strings (`"3/4"`); any
//! Python object whose `str()` parses as a rational is accepted on input,
//! so `int` and `fractions.Fraction` work directly. Structured results are
//! returned as plain dicts decoded from the JSON reports.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use serde::Serialize;

use polyproc::analysis::{self, cross_check};
use polyproc::arith::rat::{format_rat, parse_rat};
use polyproc::arith::{Rat, RatMatrix, RatVector};
use polyproc::cone::{Cone, PolarSign, Subspace};
use polyproc::decomp::decompose;
use polyproc::error::Error;
use polyproc::process::{Process, Strategy};
use polyproc::reach::{self, default_budget};
use polyproc::spectral::{SpectrumInterval, SpectrumOracle};
use polyproc::sysio::{emit_system, example_system, parse_system_str, ConstrainedLinearSystem};

fn err(e: Error) -> PyErr {
    match e {
        Error::InvariantViolation(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn rat_of(obj: &Bound<'_, PyAny>) -> PyResult<Rat> {
    let s: String = obj.str()?.extract()?;
    parse_rat(&s).map_err(err)
}

fn vec_of(obj: &Bound<'_, PyAny>) -> PyResult<RatVector> {
    obj.try_iter()?.map(|x| rat_of(&x?)).collect()
}

fn rows_of(obj: &Bound<'_, PyAny>) -> PyResult<Vec<RatVector>> {
    obj.try_iter()?.map(|r| vec_of(&r?)).collect()
}

fn matrix_of(obj: &Bound<'_, PyAny>, cols: Option<usize>) -> PyResult<RatMatrix> {
    let rows = rows_of(obj)?;
    let c = cols.or_else(|| rows.first().map(|r| r.len())).unwrap_or(0);
    RatMatrix::from_rows(&rows, c).map_err(err)
}

fn strings(rows: &[RatVector]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(format_rat).collect()).collect()
}

fn to_py<'py, T: Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn sign_of(s: &str) -> PyResult<PolarSign> {
    match s {
        "negative" | "-" => Ok(PolarSign::Negative),
        "positive" | "+" => Ok(PolarSign::Positive),
        _ => Err(PyValueError::new_err(format!("unknown polar sign `{s}`"))),
    }
}

/// Polyhedral convex cone with both generator and constraint descriptions.
#[pyclass(name = "Cone", module = "polyproc_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyCone {
    inner: Cone,
}

#[pymethods]
impl PyCone {
    /// `cone(rays) + span(lineality)`.
    #[staticmethod]
    #[pyo3(signature = (dim, rays, lineality = None))]
    fn from_generators(dim: usize, rays: &Bound<'_, PyAny>, lineality: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        let lin = match lineality {
            Some(l) => rows_of(l)?,
            None => vec![],
        };
        Ok(Self {
            inner: Cone::from_generators(dim, &rows_of(rays)?, &lin).map_err(err)?,
        })
    }

    /// `{x : ineq·x ≤ 0, eq·x = 0}`.
    #[staticmethod]
    #[pyo3(signature = (dim, ineq, eq = None))]
    fn from_constraints(dim: usize, ineq: &Bound<'_, PyAny>, eq: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        let eq = match eq {
            Some(e) => rows_of(e)?,
            None => vec![],
        };
        Ok(Self {
            inner: Cone::from_constraints(dim, &rows_of(ineq)?, &eq).map_err(err)?,
        })
    }

    #[staticmethod]
    fn zero(dim: usize) -> Self {
        Self { inner: Cone::zero(dim) }
    }

    #[staticmethod]
    fn full(dim: usize) -> Self {
        Self { inner: Cone::full(dim) }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner: Cone = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(Self { inner })
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).unwrap()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn rays(&self) -> Vec<Vec<String>> {
        strings(self.inner.rays())
    }

    #[getter]
    fn lineality(&self) -> Vec<Vec<String>> {
        strings(self.inner.lineality())
    }

    #[getter]
    fn inequalities(&self) -> Vec<Vec<String>> {
        strings(self.inner.inequalities())
    }

    #[getter]
    fn equalities(&self) -> Vec<Vec<String>> {
        strings(self.inner.equalities())
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn is_subspace(&self) -> bool {
        self.inner.is_subspace()
    }

    fn contains_vector(&self, v: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(self.inner.contains_vector(&vec_of(v)?))
    }

    /// `other ⊆ self`.
    fn contains(&self, other: &PyCone) -> bool {
        self.inner.contains(&other.inner)
    }

    #[pyo3(signature = (sign = "negative"))]
    fn polar(&self, sign: &str) -> PyResult<Self> {
        Ok(Self {
            inner: self.inner.polar(sign_of(sign)?),
        })
    }

    fn negate(&self) -> Self {
        Self {
            inner: self.inner.negate(),
        }
    }

    fn sum(&self, other: &PyCone) -> PyResult<Self> {
        Ok(Self {
            inner: self.inner.sum(&other.inner).map_err(err)?,
        })
    }

    fn intersect(&self, other: &PyCone) -> PyResult<Self> {
        Ok(Self {
            inner: self.inner.intersect(&other.inner).map_err(err)?,
        })
    }

    fn __eq__(&self, other: &PyCone) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "Cone(dim={}, rays={:?}, lineality={:?})",
            self.inner.dim(),
            self.rays(),
            self.lineality()
        )
    }
}

/// Convex process `H : Rⁿ ⇉ Rⁿ` given by its graph cone in `R²ⁿ`.
#[pyclass(name = "Process", module = "polyproc_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyProcess {
    inner: Process,
}

fn wrap(p: Process) -> PyProcess {
    PyProcess { inner: p }
}

fn exclusion_of(n: usize, e: Option<&Bound<'_, PyAny>>) -> PyResult<Subspace> {
    match e {
        None => Ok(Subspace::zero(n)),
        Some(b) => Subspace::new(n, &rows_of(b)?).map_err(err),
    }
}

#[pymethods]
impl PyProcess {
    #[new]
    fn new(n: usize, graph: &PyCone) -> PyResult<Self> {
        Ok(wrap(Process::new(n, graph.inner.clone()).map_err(err)?))
    }

    #[staticmethod]
    fn from_matrix(a: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(wrap(Process::from_matrix(&matrix_of(a, None)?).map_err(err)?))
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        wrap(Process::identity(n))
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn graph(&self) -> PyCone {
        PyCone {
            inner: self.inner.graph().clone(),
        }
    }

    fn domain(&self) -> PyCone {
        PyCone {
            inner: self.inner.domain(),
        }
    }

    fn image(&self) -> PyCone {
        PyCone {
            inner: self.inner.image(),
        }
    }

    fn kernel(&self) -> PyCone {
        PyCone {
            inner: self.inner.kernel(),
        }
    }

    fn is_strict(&self) -> bool {
        self.inner.is_strict()
    }

    fn is_linear(&self) -> bool {
        self.inner.is_linear()
    }

    fn inverse(&self) -> Self {
        wrap(self.inner.inverse())
    }

    #[pyo3(signature = (sign = "negative"))]
    fn dual(&self, sign: &str) -> PyResult<Self> {
        Ok(wrap(self.inner.dual(sign_of(sign)?)))
    }

    /// `H − λI`.
    fn shift(&self, lam: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(wrap(self.inner.shift(&rat_of(lam)?)))
    }

    /// `self ∘ other`.
    fn compose(&self, other: &PyProcess) -> PyResult<Self> {
        Ok(wrap(self.inner.compose(&other.inner).map_err(err)?))
    }

    fn power(&self, q: usize) -> Self {
        wrap(self.inner.power(q))
    }

    fn image_of(&self, k: &PyCone) -> PyResult<PyCone> {
        Ok(PyCone {
            inner: self.inner.image_of_cone(&k.inner).map_err(err)?,
        })
    }

    fn preimage_of(&self, k: &PyCone) -> PyResult<PyCone> {
        Ok(PyCone {
            inner: self.inner.preimage_of_cone(&k.inner).map_err(err)?,
        })
    }

    /// `which` is `"feasible"`, `"reachable"` or `"null"`; returns
    /// `(cone, determined, q)`.
    #[pyo3(signature = (which, budget = None))]
    fn set(&self, which: &str, budget: Option<usize>) -> PyResult<(PyCone, bool, usize)> {
        let b = budget.unwrap_or_else(|| default_budget(self.inner.n()));
        let r = match which {
            "feasible" => reach::feasible_set(&self.inner, b),
            "reachable" => reach::reachable_set(&self.inner, b),
            "null" => reach::null_controllable_set(&self.inner, b),
            _ => return Err(PyValueError::new_err(format!("unknown set `{which}`"))),
        }
        .map_err(err)?;
        Ok((PyCone { inner: r.cone }, r.determined, r.q))
    }

    fn domain_condition<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &reach::domain_condition(&self.inner).map_err(err)?)
    }

    fn image_condition(&self) -> PyResult<bool> {
        reach::image_condition(&self.inner).map_err(err)
    }

    fn decompose<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &decompose(&self.inner).map_err(err)?)
    }

    /// Decides whether `ker(H − λI) ⊄ W` for some `λ` in `interval`
    /// (e.g. `"[0,inf)"`); `exclusion` is a list of vectors spanning `W`.
    #[pyo3(signature = (interval, exclusion = None))]
    fn spectrum_in<'py>(
        &self,
        py: Python<'py>,
        interval: &str,
        exclusion: Option<&Bound<'_, PyAny>>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let w = exclusion_of(self.inner.n(), exclusion)?;
        let iv: SpectrumInterval = interval.parse().map_err(err)?;
        let ans = SpectrumOracle::new(&self.inner, &w).map_err(err)?.in_interval(&iv).map_err(err)?;
        to_py(py, &ans)
    }

    #[pyo3(signature = (exclusion = None))]
    fn describe_spectrum<'py>(&self, py: Python<'py>, exclusion: Option<&Bound<'_, PyAny>>) -> PyResult<Bound<'py, PyAny>> {
        let w = exclusion_of(self.inner.n(), exclusion)?;
        to_py(py, &SpectrumOracle::new(&self.inner, &w).map_err(err)?.describe())
    }

    #[pyo3(signature = (x0, steps, strategy = "least_norm", seed = 0, within = None))]
    fn simulate<'py>(
        &self,
        py: Python<'py>,
        x0: &Bound<'_, PyAny>,
        steps: usize,
        strategy: &str,
        seed: u64,
        within: Option<&PyCone>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let s: Strategy = strategy.parse().map_err(err)?;
        let sim = self
            .inner
            .simulate(&vec_of(x0)?, steps, s, seed, within.map(|c| &c.inner))
            .map_err(err)?;
        to_py(py, &sim)
    }

    #[pyo3(signature = (budget = None))]
    fn analyze<'py>(&self, py: Python<'py>, budget: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &analysis::analyze(&self.inner, budget).map_err(err)?)
    }

    #[pyo3(signature = (budget = None))]
    fn cross_check<'py>(&self, py: Python<'py>, budget: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &cross_check(&self.inner, budget).map_err(err)?)
    }

    fn __eq__(&self, other: &PyProcess) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Process(n={}, graph={})", self.inner.n(), self.graph().__repr__())
    }
}

/// `x⁺ = Ax + Bu`, `Cx + Du ∈ Y` with `Y = {y : ineq·y ≥ 0, eq·y = 0}`.
#[pyclass(name = "System", module = "polyproc_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySystem {
    inner: ConstrainedLinearSystem,
}

fn overrides_of(params: Option<&Bound<'_, PyDict>>) -> PyResult<Vec<(String, Rat)>> {
    let mut out = vec![];
    if let Some(d) = params {
        for (k, v) in d.iter() {
            out.push((k.extract::<String>()?, rat_of(&v)?));
        }
    }
    Ok(out)
}

#[pymethods]
impl PySystem {
    #[new]
    #[pyo3(signature = (a, b, c, d, ineq = None, eq = None))]
    fn new(
        a: &Bound<'_, PyAny>,
        b: &Bound<'_, PyAny>,
        c: &Bound<'_, PyAny>,
        d: &Bound<'_, PyAny>,
        ineq: Option<&Bound<'_, PyAny>>,
        eq: Option<&Bound<'_, PyAny>>,
    ) -> PyResult<Self> {
        let a = matrix_of(a, None)?;
        let n = a.rows();
        let b = matrix_of(b, None)?;
        let m = b.cols();
        let c = matrix_of(c, Some(n))?;
        let p = c.rows();
        let d = matrix_of(d, Some(m))?;
        let ineq = ineq.map(rows_of).transpose()?.unwrap_or_default();
        let eq = eq.map(rows_of).transpose()?.unwrap_or_default();
        let y = polyproc::sysio::system::cone_from_rows(p, &ineq, &eq).map_err(err)?;
        Ok(Self {
            inner: ConstrainedLinearSystem::new(a, b, c, d, y).map_err(err)?,
        })
    }

    /// Parses the JSON system format; `params` overrides file parameters.
    #[staticmethod]
    #[pyo3(signature = (text, params = None))]
    fn from_json(text: &str, params: Option<&Bound<'_, PyDict>>) -> PyResult<Self> {
        let f = parse_system_str(text, &overrides_of(params)?).map_err(err)?;
        Ok(Self { inner: f.system })
    }

    #[staticmethod]
    #[pyo3(signature = (path, params = None))]
    fn load(path: &str, params: Option<&Bound<'_, PyDict>>) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| PyValueError::new_err(format!("{path}: {e}")))?;
        Self::from_json(&text, params)
    }

    /// The three-state example with constraint parameters `a`, `b`.
    #[staticmethod]
    fn example(a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Self {
            inner: example_system(&rat_of(a)?, &rat_of(b)?),
        })
    }

    fn to_json(&self) -> String {
        emit_system(&self.inner)
    }

    fn build_process(&self) -> PyResult<PyProcess> {
        Ok(wrap(self.inner.build_process().map_err(err)?))
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn p(&self) -> usize {
        self.inner.p()
    }

    fn __eq__(&self, other: &PySystem) -> bool {
        self.inner == other.inner
    }
}

/// Full analysis report of a process as a dict.
#[pyfunction]
#[pyo3(signature = (process, budget = None))]
fn analyze<'py>(py: Python<'py>, process: &PyProcess, budget: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
    process.analyze(py, budget)
}

#[pymodule]
pub fn polyproc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCone>()?;
    m.add_class::<PyProcess>()?;
    m.add_class::<PySystem>()?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    Ok(())
}

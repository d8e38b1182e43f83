//! Python bindings. Structured results come back as plain dicts and lists,
//! using the same field names as the JSON the CLI prints.

use std::time::Duration;

use berge_core::constructions::{self, ConstructionSpec, Family};
use berge_core::engine::{self, EngineOptions};
use berge_core::lemmas::{run_lemma_suite, LemmaGrid};
use berge_core::solver::{self, SearchBudget, SearchOrder, SolveOptions};
use berge_core::thresholds;
use berge_core::verify::{self, Suite, SweepConfig, SweepOptions};
use berge_core::{format, UniformHypergraph};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(value_err)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn from_name<T: DeserializeOwned>(name: &str) -> PyResult<T> {
    serde_json::from_value(serde_json::Value::String(name.replace('-', "_"))).map_err(value_err)
}

/// An r-uniform hypergraph on vertices `0..n`.
#[pyclass(name = "Hypergraph", frozen)]
pub struct PyHypergraph {
    inner: UniformHypergraph,
}

#[pymethods]
impl PyHypergraph {
    #[new]
    fn new(n: usize, r: usize, edges: Vec<Vec<usize>>) -> PyResult<Self> {
        let inner = UniformHypergraph::new(n, r, edges).map_err(value_err)?;
        Ok(Self { inner })
    }

    /// Parse the `.bhg` text format.
    #[staticmethod]
    fn from_bhg(text: &str) -> PyResult<Self> {
        let inner = format::parse(text).map_err(value_err)?;
        Ok(Self { inner })
    }

    fn to_bhg(&self) -> String {
        format::serialize(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn r(&self) -> usize {
        self.inner.r()
    }

    #[getter]
    fn edges(&self) -> Vec<Vec<usize>> {
        self.inner.edges().to_vec()
    }

    fn degrees(&self) -> Vec<usize> {
        (0..self.inner.n()).map(|v| self.inner.degree(v)).collect()
    }

    fn min_degree(&self) -> usize {
        self.inner.min_degree()
    }

    fn __len__(&self) -> usize {
        self.inner.num_edges()
    }

    fn __repr__(&self) -> String {
        format!(
            "Hypergraph(n={}, r={}, edges={})",
            self.inner.n(),
            self.inner.r(),
            self.inner.num_edges()
        )
    }
}

/// Build a named construction: h1..h5, tight_cycle, complete, random_min_degree.
#[pyfunction]
#[pyo3(signature = (family, n, r, k=None, delta=None, min_edges=None, seed=None))]
fn generate(
    family: &str,
    n: usize,
    r: usize,
    k: Option<usize>,
    delta: Option<usize>,
    min_edges: Option<usize>,
    seed: Option<u64>,
) -> PyResult<PyHypergraph> {
    let family: Family = match family {
        "random" => Family::RandomMinDegree,
        other => from_name(other)?,
    };
    let spec = ConstructionSpec {
        family,
        n,
        r,
        k,
        delta,
        min_edges,
        seed,
    };
    let inner = constructions::generate(&spec).map_err(value_err)?;
    Ok(PyHypergraph { inner })
}

/// Degree bound for a Berge cycle of length at least `k` (hamiltonian when `k` is omitted).
#[pyfunction]
#[pyo3(signature = (n, r, k=None))]
fn threshold<'py>(py: Python<'py>, n: u64, r: u64, k: Option<u64>) -> PyResult<Bound<'py, PyAny>> {
    let ans = match k {
        None => thresholds::hamiltonian_threshold(n, r),
        Some(k) => thresholds::circumference_threshold(n, r, k),
    }
    .map_err(value_err)?;
    to_py(py, &ans)
}

#[pyfunction]
fn half_k_threshold<'py>(py: Python<'py>, n: u64, r: u64, k: u64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &thresholds::half_k_threshold(n, r, k).map_err(value_err)?)
}

#[pyfunction]
fn bermond_baseline(r: u64, k: u64) -> PyResult<u64> {
    thresholds::bermond_baseline(r, k).map_err(value_err)
}

fn solve_options(node_limit: Option<u64>, time_limit: Option<f64>, seed: Option<u64>) -> SolveOptions {
    SolveOptions {
        budget: SearchBudget {
            node_limit,
            time_limit: time_limit.map(Duration::from_secs_f64),
        },
        order: seed.map_or(SearchOrder::FailFirst, SearchOrder::Seeded),
        parallel: false,
    }
}

/// Search for a Berge cycle of length exactly `k` (or at least `k`).
#[pyfunction]
#[pyo3(signature = (h, k, at_least=false, node_limit=None, time_limit=None, seed=None))]
fn find_cycle<'py>(
    py: Python<'py>,
    h: &PyHypergraph,
    k: usize,
    at_least: bool,
    node_limit: Option<u64>,
    time_limit: Option<f64>,
    seed: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let opts = solve_options(node_limit, time_limit, seed);
    let out = py.detach(|| {
        if at_least {
            solver::find_cycle_at_least(&h.inner, k, opts)
        } else {
            solver::find_berge_cycle(&h.inner, k, opts)
        }
    });
    to_py(py, &out)
}

#[pyfunction]
#[pyo3(signature = (h, node_limit=None, time_limit=None))]
fn circumference<'py>(
    py: Python<'py>,
    h: &PyHypergraph,
    node_limit: Option<u64>,
    time_limit: Option<f64>,
) -> PyResult<Bound<'py, PyAny>> {
    let opts = solve_options(node_limit, time_limit, None);
    let out = py.detach(|| solver::circumference(&h.inner, opts));
    to_py(py, &out)
}

#[pyfunction]
#[pyo3(signature = (h, node_limit=None, time_limit=None))]
fn longest_path<'py>(
    py: Python<'py>,
    h: &PyHypergraph,
    node_limit: Option<u64>,
    time_limit: Option<f64>,
) -> PyResult<Bound<'py, PyAny>> {
    let opts = solve_options(node_limit, time_limit, None);
    let out = py.detach(|| solver::longest_berge_path(&h.inner, opts));
    to_py(py, &out)
}

/// Run the improvement engine towards a cycle of length `target` (default n).
#[pyfunction]
#[pyo3(signature = (h, target=None, max_steps=None, trace=false))]
fn run_engine<'py>(
    py: Python<'py>,
    h: &PyHypergraph,
    target: Option<usize>,
    max_steps: Option<usize>,
    trace: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let target = target.unwrap_or(h.inner.n());
    let opts = EngineOptions {
        max_steps,
        trace,
        check: true,
    };
    let rep = py.detach(|| engine::run(&h.inner, target, opts));
    to_py(py, &rep)
}

#[pyfunction]
#[pyo3(signature = (independent_s_max=None, separated_s_max=None, q_max=None))]
fn lemma_suite<'py>(
    py: Python<'py>,
    independent_s_max: Option<usize>,
    separated_s_max: Option<usize>,
    q_max: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let d = LemmaGrid::default();
    let grid = LemmaGrid {
        independent_s_max: independent_s_max.unwrap_or(d.independent_s_max),
        separated_s_max: separated_s_max.unwrap_or(d.separated_s_max),
        q_max: q_max.unwrap_or(d.q_max),
    };
    let rep = py.detach(|| run_lemma_suite(grid));
    to_py(py, &rep)
}

/// Run a verification sweep; `config` is the text of a sweep config file.
/// Records are dropped; only the report is returned.
#[pyfunction]
#[pyo3(signature = (config=None, suites=None, seed=None))]
fn verify_sweep<'py>(
    py: Python<'py>,
    config: Option<&str>,
    suites: Option<Vec<String>>,
    seed: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let mut cfg = match config {
        Some(text) => SweepConfig::parse(text).map_err(value_err)?,
        None => SweepConfig::default(),
    };
    if let Some(s) = seed {
        cfg.seed = s;
    }
    let suites = match suites {
        Some(names) => names.iter().map(|s| from_name::<Suite>(s)).collect::<PyResult<_>>()?,
        None => Suite::ALL.to_vec(),
    };
    let opts = SweepOptions {
        suites,
        ..SweepOptions::default()
    };
    let rep = py
        .detach(|| verify::run_sweep(&cfg, &opts, &[], |_| Ok(())))
        .map_err(value_err)?;
    to_py(py, &rep)
}

#[pymodule]
pub fn berge(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyHypergraph>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(threshold, m)?)?;
    m.add_function(wrap_pyfunction!(half_k_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(bermond_baseline, m)?)?;
    m.add_function(wrap_pyfunction!(find_cycle, m)?)?;
    m.add_function(wrap_pyfunction!(circumference, m)?)?;
    m.add_function(wrap_pyfunction!(longest_path, m)?)?;
    m.add_function(wrap_pyfunction!(run_engine, m)?)?;
    m.add_function(wrap_pyfunction!(lemma_suite, m)?)?;
    m.add_function(wrap_pyfunction!(verify_sweep, m)?)?;
    Ok(())
}

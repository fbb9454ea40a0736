//! Python bindings. Graphs cross the boundary as `Graph` objects; results
//! come back as plain dicts and lists.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use hopdom::families::{self, EnumFilters, FamilySpec, Parameter};
use hopdom::graph::{canonical_form, is_isomorphic, parse_graph6};
use hopdom::solver::{Kind, DEFAULT_BUDGET};
use hopdom::verify::{self, EnumSpec, Source};

fn err(e: hopdom::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(x) => match (x.as_i64(), x.as_u64()) {
            (Some(i), _) => i.into_pyobject(py)?.into_any(),
            (None, Some(u)) => u.into_pyobject(py)?.into_any(),
            _ => x.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let items = items.iter().map(|x| to_py(py, x)).collect::<PyResult<Vec<_>>>()?;
            PyList::new(py, items)?.into_any()
        }
        Value::Object(map) => {
            let d = PyDict::new(py);
            for (k, x) in map {
                d.set_item(k, to_py(py, x)?)?;
            }
            d.into_any()
        }
    })
}

fn serialize<'py, T: serde::Serialize>(py: Python<'py>, x: &T) -> PyResult<Bound<'py, PyAny>> {
    let v = serde_json::to_value(x).map_err(|e| PyValueError::new_err(e.to_string()))?;
    to_py(py, &v)
}

/// A simple undirected graph on vertices 0..n.
#[pyclass(name = "Graph", module = "pyhopdom", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyGraph {
    inner: hopdom::Graph,
}

impl From<hopdom::Graph> for PyGraph {
    fn from(inner: hopdom::Graph) -> Self {
        PyGraph { inner }
    }
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges=Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        hopdom::Graph::from_edges(n, &edges).map(Into::into).map_err(err)
    }

    #[staticmethod]
    fn from_graph6(s: &str) -> PyResult<Self> {
        parse_graph6(s).map(Into::into).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn to_graph6(&self) -> String {
        self.inner.to_graph6()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.inner.n() {
            return Err(PyValueError::new_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        self.neighbors(v).map(|n| n.len())
    }

    fn min_degree(&self) -> usize {
        self.inner.min_degree()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn is_triangle_free(&self) -> bool {
        self.inner.is_triangle_free()
    }

    fn girth(&self) -> Option<usize> {
        self.inner.girth()
    }

    fn canonical_form(&self) -> String {
        canonical_form(&self.inner)
    }

    fn is_isomorphic(&self, other: &PyGraph) -> bool {
        is_isomorphic(&self.inner, &other.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __str__(&self) -> String {
        self.inner.to_graph6()
    }

    fn __repr__(&self) -> String {
        format!("Graph.from_graph6({:?})", self.inner.to_graph6())
    }
}

/// Minimum dominating ("dom"), total dominating ("total") or hop
/// dominating ("hop") set.
#[pyfunction]
#[pyo3(signature = (g, kind="hop", budget=DEFAULT_BUDGET))]
fn solve<'py>(py: Python<'py>, g: &PyGraph, kind: &str, budget: u64) -> PyResult<Bound<'py, PyAny>> {
    let kind: Kind = kind.parse().map_err(err)?;
    let r = py.detach(|| hopdom::solve(&g.inner, kind, budget)).map_err(err)?;
    serialize(py, &r)
}

#[pyfunction]
fn two_step_graph(g: &PyGraph) -> PyGraph {
    hopdom::dist2::two_step_graph(&g.inner).into()
}

#[pyfunction]
fn gamma_h_path(n: usize) -> PyResult<usize> {
    hopdom::closed_forms::gamma_h_path(n).map_err(err)
}

#[pyfunction]
fn gamma_h_cycle(n: usize) -> PyResult<usize> {
    hopdom::closed_forms::gamma_h_cycle(n).map_err(err)
}

#[pyfunction]
fn cycle_table<'py>(py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
    serialize(py, &hopdom::closed_forms::cycle_table())
}

/// Build a named graph from a description such as "cycle 8",
/// "amalgam 5 6 7" or "exceptional G9".
#[pyfunction]
fn family(spec: &str) -> PyResult<PyGraph> {
    let words: Vec<&str> = spec.split_whitespace().collect();
    let spec = FamilySpec::from_words(&words).map_err(err)?;
    families::generate(&spec).map(Into::into).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (n, connected=false, triangle_free=false, min_degree=0, girth=None))]
fn enumerate_graphs(
    py: Python<'_>,
    n: usize,
    connected: bool,
    triangle_free: bool,
    min_degree: usize,
    girth: Option<usize>,
) -> PyResult<Vec<PyGraph>> {
    let f = EnumFilters { connected, triangle_free, min_degree, girth_at_least: girth };
    let graphs = py.detach(|| families::enumerate_graphs(n, &f)).map_err(err)?;
    Ok(graphs.into_iter().map(Into::into).collect())
}

#[pyfunction]
#[pyo3(signature = (n_max, parameter="hop", triangle_free=false))]
fn derive_exceptional(py: Python<'_>, n_max: usize, parameter: &str, triangle_free: bool) -> PyResult<Vec<PyGraph>> {
    let parameter: Parameter = parameter.parse().map_err(err)?;
    let f = EnumFilters { triangle_free, ..Default::default() };
    let graphs = py.detach(|| families::derive_exceptional(n_max, parameter, f)).map_err(err)?;
    Ok(graphs.into_iter().map(Into::into).collect())
}

/// Hop dominating set of size at most ⌊2n/5⌋, with the stage that found it.
#[pyfunction]
#[pyo3(signature = (g, budget=DEFAULT_BUDGET))]
fn certify_two_fifths<'py>(py: Python<'py>, g: &PyGraph, budget: u64) -> PyResult<Bound<'py, PyAny>> {
    let c = py.detach(|| hopdom::reductions::certify_two_fifths(&g.inner, budget)).map_err(err)?;
    serialize(py, &c)
}

#[pyfunction]
#[pyo3(signature = (g, suite="ALL", budget=DEFAULT_BUDGET))]
fn check_graph<'py>(py: Python<'py>, g: &PyGraph, suite: &str, budget: u64) -> PyResult<Bound<'py, PyAny>> {
    let suite = verify::parse_suite(suite).map_err(err)?;
    let v = py.detach(|| verify::check_graph(&g.inner, &suite, budget));
    serialize(py, &v)
}

/// Aggregate report over an enumeration spec such as
/// "n=4..8,connected,triangle-free".
#[pyfunction]
#[pyo3(signature = (spec, suite="ALL", budget=DEFAULT_BUDGET))]
fn verify_enumeration<'py>(py: Python<'py>, spec: &str, suite: &str, budget: u64) -> PyResult<Bound<'py, PyAny>> {
    let spec: EnumSpec = spec.parse().map_err(err)?;
    let suite = verify::parse_suite(suite).map_err(err)?;
    let report = py.detach(|| verify::verify_stream(Source::Enumerate(spec), &suite, budget)).map_err(err)?;
    serialize(py, &report)
}

#[pymodule]
fn pyhopdom(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(two_step_graph, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_h_path, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_h_cycle, m)?)?;
    m.add_function(wrap_pyfunction!(cycle_table, m)?)?;
    m.add_function(wrap_pyfunction!(family, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_graphs, m)?)?;
    m.add_function(wrap_pyfunction!(derive_exceptional, m)?)?;
    m.add_function(wrap_pyfunction!(certify_two_fifths, m)?)?;
    m.add_function(wrap_pyfunction!(check_graph, m)?)?;
    m.add_function(wrap_pyfunction!(verify_enumeration, m)?)?;
    m.add("DEFAULT_BUDGET", DEFAULT_BUDGET)?;
    Ok(())
}

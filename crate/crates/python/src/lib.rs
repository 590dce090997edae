//! Python bindings for `vizing_core`.
//!
//! Graphs are wrapped as `vizing.Graph`; results come back as plain dicts
//! and lists. Core errors surface as `ValueError`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use vizing_core::block::{audit_trace, certify_with_retry, default_partitions, verify_observation, Certifier};
use vizing_core::experiments::{
    corollary_sweep as core_sweep, dryer_probability as core_dryer, exhaustive_pairs as core_exhaustive,
    ExperimentConfig, DEFAULT_SEED,
};
use vizing_core::solver::SolverConfig;
use vizing_core::verify::check_pair_with;
use vizing_core::{self as core, VertexSet};

fn err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn solver(budget: Option<u64>) -> SolverConfig {
    budget.map_or_else(SolverConfig::default, |node_budget| SolverConfig { node_budget })
}

/// A simple undirected graph on vertices `0..n`.
#[pyclass(name = "Graph", module = "vizing", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyGraph(core::Graph);

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        core::Graph::from_edges(n, edges).map(PyGraph).map_err(err)
    }

    #[staticmethod]
    fn from_graph6(text: &str) -> PyResult<Self> {
        core::parse_graph6(text).map(PyGraph).map_err(err)
    }

    #[staticmethod]
    fn from_edgelist(text: &str) -> PyResult<Self> {
        core::parse_edgelist(text).map(PyGraph).map_err(err)
    }

    #[staticmethod]
    fn complete(n: usize) -> PyResult<Self> {
        core::Graph::complete(n).map(PyGraph).map_err(err)
    }

    #[staticmethod]
    fn path(n: usize) -> PyResult<Self> {
        core::Graph::path(n).map(PyGraph).map_err(err)
    }

    #[staticmethod]
    fn cycle(n: usize) -> PyResult<Self> {
        core::Graph::cycle(n).map(PyGraph).map_err(err)
    }

    #[staticmethod]
    fn star(leaves: usize) -> PyResult<Self> {
        core::Graph::star(leaves).map(PyGraph).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (n, p, seed = DEFAULT_SEED))]
    fn erdos_renyi(n: usize, p: f64, seed: u64) -> PyResult<Self> {
        core::erdos_renyi(n, p, seed).map(PyGraph).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn __len__(&self) -> usize {
        self.0.n()
    }

    fn edge_count(&self) -> usize {
        self.0.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges().collect()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.0.n() && v < self.0.n() && self.0.has_edge(u, v)
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        self.check(v)?;
        Ok(self.0.degree(v))
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        self.check(v)?;
        Ok(self.0.neighbors(v).collect())
    }

    fn is_dominating(&self, vertices: Vec<usize>) -> PyResult<bool> {
        self.0.is_dominating(&vertices.into_iter().collect()).map_err(err)
    }

    fn to_graph6(&self) -> String {
        core::emit_graph6(&self.0)
    }

    fn to_edgelist(&self) -> String {
        core::emit_edgelist(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={})", self.0.n(), self.0.edge_count())
    }
}

impl PyGraph {
    fn check(&self, v: usize) -> PyResult<()> {
        if v >= self.0.n() {
            return Err(PyValueError::new_err(format!("vertex {v} out of range for n = {}", self.0.n())));
        }
        Ok(())
    }
}

/// `G □ H` with vertex `(u, v)` stored at `u * |H| + v`.
#[pyclass(name = "ProductGraph", module = "vizing", frozen)]
struct PyProduct(core::ProductGraph);

#[pymethods]
impl PyProduct {
    #[getter]
    fn graph(&self) -> PyGraph {
        PyGraph(self.0.graph.clone())
    }

    #[getter]
    fn g_size(&self) -> usize {
        self.0.g_size
    }

    #[getter]
    fn h_size(&self) -> usize {
        self.0.h_size
    }

    fn flat(&self, u: usize, v: usize) -> PyResult<usize> {
        if u >= self.0.g_size || v >= self.0.h_size {
            return Err(PyValueError::new_err(format!("({u}, {v}) out of range")));
        }
        Ok(self.0.flat(u, v))
    }

    fn unflat(&self, x: usize) -> PyResult<(usize, usize)> {
        if x >= self.0.graph.n() {
            return Err(PyValueError::new_err(format!("vertex {x} out of range")));
        }
        Ok(self.0.unflat(x))
    }

    fn __repr__(&self) -> String {
        format!("ProductGraph({} x {})", self.0.g_size, self.0.h_size)
    }
}

fn set_vec(s: &VertexSet) -> Vec<usize> {
    s.to_vec()
}

/// Exact domination number: `{"gamma", "witness", "nodes_explored", "canonical"}`.
#[pyfunction]
#[pyo3(signature = (g, budget = None))]
fn gamma_exact<'py>(py: Python<'py>, g: &PyGraph, budget: Option<u64>) -> PyResult<Bound<'py, PyDict>> {
    let r = core::gamma_exact_with(&g.0, &solver(budget)).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("gamma", r.gamma)?;
    d.set_item("witness", set_vec(&r.witness))?;
    d.set_item("nodes_explored", r.nodes_explored)?;
    d.set_item("canonical", r.canonical)?;
    Ok(d)
}

/// Domination number by exhaustive search (at most 32 vertices).
#[pyfunction]
fn gamma_bruteforce(g: &PyGraph) -> PyResult<usize> {
    core::gamma_bruteforce(&g.0).map(|r| r.gamma).map_err(err)
}

/// All minimum dominating sets in lexicographic order, up to `limit`.
#[pyfunction]
#[pyo3(signature = (g, limit = 1000))]
fn minimum_dominating_sets(g: &PyGraph, limit: usize) -> PyResult<Vec<Vec<usize>>> {
    core::enumerate_minimum_dominating_sets(&g.0, limit)
        .map(|sets| sets.iter().map(set_vec).collect())
        .map_err(err)
}

#[pyfunction]
fn cartesian_product(g: &PyGraph, h: &PyGraph) -> PyResult<PyProduct> {
    core::cartesian_product(&g.0, &h.0).map(PyProduct).map_err(err)
}

/// All three domination numbers and the bound checks.
#[pyfunction]
#[pyo3(signature = (g, h, p = None, budget = None))]
fn check_pair<'py>(
    py: Python<'py>,
    g: &PyGraph,
    h: &PyGraph,
    p: Option<f64>,
    budget: Option<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    let r = check_pair_with(&g.0, &h.0, &solver(budget), p).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("gamma_g", r.gamma_g)?;
    d.set_item("gamma_h", r.gamma_h)?;
    d.set_item("gamma_product", r.gamma_product)?;
    d.set_item("vizing_holds", r.vizing_holds)?;
    d.set_item("suen_tarr_holds", r.suen_tarr_holds)?;
    d.set_item("theorem_condition", r.theorem_condition)?;
    d.set_item("corollary_bound_holds", r.corollary_bound_holds)?;
    Ok(d)
}

/// Runs the re-partitioning certificate on the canonical minimum
/// dominating set (or, with `retry`, on further ones after a diagnostic)
/// and audits it. The full trace is returned as JSON under `"trace"`.
#[pyfunction]
#[pyo3(signature = (g, h, d = None, retry = false, retry_limit = 10_000))]
fn certify<'py>(
    py: Python<'py>,
    g: &PyGraph,
    h: &PyGraph,
    d: Option<Vec<usize>>,
    retry: bool,
    retry_limit: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let (trace, runs) = match (d, retry) {
        (Some(_), true) => return Err(PyValueError::new_err("pass either d or retry, not both")),
        (Some(d), false) => {
            let c = Certifier::new(&g.0, &h.0).map_err(err)?;
            (c.run(&d.into_iter().collect()).map_err(err)?, 1)
        }
        (None, true) => certify_with_retry(&g.0, &h.0, retry_limit).map_err(err)?,
        (None, false) => {
            let c = Certifier::new(&g.0, &h.0).map_err(err)?;
            (c.run(&c.canonical_d().map_err(err)?).map_err(err)?, 1)
        }
    };
    let pg = core::cartesian_product(&g.0, &h.0).map_err(err)?;
    let audit = audit_trace(&trace, &pg, &trace.d);
    let out = PyDict::new(py);
    out.set_item("outcome", trace.outcome.as_str())?;
    out.set_item("certified_count", trace.certified_count)?;
    out.set_item("gamma_product", trace.gamma_product)?;
    out.set_item("d", set_vec(&trace.d))?;
    out.set_item("swapped", trace.swapped)?;
    out.set_item("rounds", trace.rounds.len())?;
    out.set_item("runs", runs)?;
    out.set_item("audit_passed", audit.passed)?;
    out.set_item("audit_failure", audit.failure)?;
    out.set_item("trace", trace.to_json())?;
    Ok(out)
}

/// `(i, j, is_g_cell, is_h_cell)`.
type BlockLabel = (usize, usize, bool, bool);

/// Labels every block of the default partitions for the canonical `D`.
/// Returns `(holds, labels)` with one `(i, j, is_g_cell, is_h_cell)` per block.
#[pyfunction]
fn observation(g: &PyGraph, h: &PyGraph) -> PyResult<(bool, Vec<BlockLabel>)> {
    let c = Certifier::new(&g.0, &h.0).map_err(err)?;
    let (gamma_g, gamma_h, _) = c.gammas();
    let d = c.canonical_d().map_err(err)?;
    let (pgp, php) = default_partitions(&g.0, &h.0, gamma_g, gamma_h).map_err(err)?;
    let report = verify_observation(c.product(), &d, &pgp, &php).map_err(err)?;
    let labels = report.labels.iter().map(|l| (l.i, l.j, l.is_g_cell, l.is_h_cell)).collect();
    Ok((report.holds(), labels))
}

/// Dryer experiment at one `n`; returns the CSV fields as a dict.
#[pyfunction]
#[pyo3(signature = (n, p = 0.5, epsilon = 0.5, trials = 1000, seed = DEFAULT_SEED))]
fn dryer_probability<'py>(
    py: Python<'py>,
    n: usize,
    p: f64,
    epsilon: f64,
    trials: usize,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let r = core_dryer(&ExperimentConfig::dryer(n, p, epsilon, trials, seed)).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("n", r.n)?;
    d.set_item("t", r.t)?;
    d.set_item("trials", r.trials)?;
    d.set_item("successes", r.successes)?;
    d.set_item("phat", r.phat)?;
    d.set_item("wilson_lo", r.wilson_lo)?;
    d.set_item("wilson_hi", r.wilson_hi)?;
    d.set_item("config_hash", r.config_hash)?;
    Ok(d)
}

/// Corollary sweep as CSV text.
#[pyfunction]
#[pyo3(signature = (h_min, h_max, p = 0.5, trials = 200, seed = DEFAULT_SEED, g_cap = 60, product_cap = 64))]
fn corollary_sweep(
    h_min: usize,
    h_max: usize,
    p: f64,
    trials: usize,
    seed: u64,
    g_cap: usize,
    product_cap: usize,
) -> PyResult<String> {
    let mut cfg = ExperimentConfig::corollary(h_min, h_max, p, trials, seed);
    cfg.g_cap = g_cap;
    cfg.product_cap = product_cap;
    core_sweep(&cfg).map(|rows| core::experiments::to_csv(&rows)).map_err(err)
}

/// Exhaustive pair sweep over labeled graphs with at most `max_n` vertices,
/// or over `corpus`. Returns `(csv, summary)`.
#[pyfunction]
#[pyo3(signature = (max_n = 3, corpus = None))]
fn exhaustive_pairs<'py>(
    py: Python<'py>,
    max_n: usize,
    corpus: Option<Vec<PyGraph>>,
) -> PyResult<(String, Bound<'py, PyDict>)> {
    let corpus: Option<Vec<core::Graph>> = corpus.map(|c| c.into_iter().map(|g| g.0).collect());
    let rep = core_exhaustive(max_n, corpus.as_deref()).map_err(err)?;
    let s = &rep.summary;
    let d = PyDict::new(py);
    d.set_item("graphs", s.graphs)?;
    d.set_item("pairs", s.pairs)?;
    d.set_item("skipped_pairs", s.skipped_pairs)?;
    d.set_item("vizing_violations", s.vizing_violations)?;
    d.set_item("suen_tarr_violations", s.suen_tarr_violations)?;
    d.set_item("condition_pairs", s.condition_pairs)?;
    d.set_item("audit_failures", s.audit_failures)?;
    d.set_item("outcomes", s.outcomes.clone())?;
    Ok((core::experiments::to_csv(&rep.rows), d))
}

#[pymodule]
fn vizing(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyProduct>()?;
    m.add_function(wrap_pyfunction!(gamma_exact, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_bruteforce, m)?)?;
    m.add_function(wrap_pyfunction!(minimum_dominating_sets, m)?)?;
    m.add_function(wrap_pyfunction!(cartesian_product, m)?)?;
    m.add_function(wrap_pyfunction!(check_pair, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(observation, m)?)?;
    m.add_function(wrap_pyfunction!(dryer_probability, m)?)?;
    m.add_function(wrap_pyfunction!(corollary_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(exhaustive_pairs, m)?)?;
    m.add("DEFAULT_SEED", DEFAULT_SEED)?;
    Ok(())
}

//! Python bindings: the `qlan` extension module.

use std::collections::BTreeSet;

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use qlan_core::format::{to_dot, GraphDocument};
use qlan_core::oracle::{verify_pipeline, VerificationReport, VerifyOptions};
use qlan_core::scenario::Scenario;
use qlan_core::sweep::compare_scenario;
use qlan_core::trace::trace_to_json;
use qlan_core::{augment, run_pipeline, Case, ErrorKind, InterQlanGraph, Vertex};

create_exception!(qlan, QlanError, PyException, "Invalid input or failed precondition.");
create_exception!(qlan, CapacityError, QlanError, "State-vector capacity exceeded.");

fn py_err(e: qlan_core::Error) -> PyErr {
    match e.kind() {
        ErrorKind::Capacity => CapacityError::new_err(e.to_string()),
        _ => QlanError::new_err(e.to_string()),
    }
}

fn vertex(name: &str) -> PyResult<Vertex> {
    name.parse().map_err(py_err)
}

fn case(name: &str) -> PyResult<Case> {
    name.parse().map_err(py_err)
}

/// Inter-QLAN graph over named vertices ("1.i", "2.j", "s1", "s2").
#[pyclass(name = "Graph", module = "qlan", eq, frozen, from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyGraph {
    inner: InterQlanGraph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n1, n2, edges = Vec::new()))]
    fn new(n1: usize, n2: usize, edges: Vec<(String, String)>) -> PyResult<Self> {
        let mut g = InterQlanGraph::with_clients(n1, n2);
        for (a, b) in edges {
            g.add_edge(vertex(&a)?, vertex(&b)?).map_err(py_err)?;
        }
        g.validate_inter_links().map_err(py_err)?;
        Ok(PyGraph { inner: g })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc = GraphDocument::from_json(text).map_err(py_err)?;
        Ok(PyGraph {
            inner: doc.to_graph().map_err(py_err)?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        Ok(GraphDocument::from_graph(&self.inner).map_err(py_err)?.to_json())
    }

    #[pyo3(signature = (name = "G"))]
    fn to_dot(&self, name: &str) -> String {
        to_dot(&self.inner, name)
    }

    fn vertices(&self) -> Vec<String> {
        self.inner.vertices().map(|v| v.to_string()).collect()
    }

    fn edges(&self) -> Vec<(String, String)> {
        self.inner
            .edges()
            .iter()
            .map(|e| {
                let (a, b) = e.endpoints();
                (a.to_string(), b.to_string())
            })
            .collect()
    }

    fn has_edge(&self, a: &str, b: &str) -> PyResult<bool> {
        Ok(self.inner.has_edge(vertex(a)?, vertex(b)?))
    }

    fn neighbors(&self, v: &str) -> PyResult<Vec<String>> {
        let n = self.inner.neighbors(vertex(v)?).map_err(py_err)?;
        Ok(n.members.iter().map(|u| u.to_string()).collect())
    }

    fn complement_neighborhood(&self, v: &str) -> PyResult<Vec<String>> {
        let n = self.inner.complement_neighborhood(vertex(v)?).map_err(py_err)?;
        Ok(n.members.iter().map(|u| u.to_string()).collect())
    }

    fn local_complement(&self, v: &str) -> PyResult<PyGraph> {
        local_complement(self, v)
    }

    fn complement(&self) -> PyResult<PyGraph> {
        complement_graph(self)
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn __len__(&self) -> usize {
        self.inner.vertex_count()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph({} vertices, {} edges)",
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }
}

/// Outcome of one super-node pipeline run.
#[pyclass(name = "PipelineResult", module = "qlan", frozen)]
pub struct PyPipelineResult {
    #[pyo3(get)]
    graph: PyGraph,
    #[pyo3(get)]
    augmented: PyGraph,
    #[pyo3(get)]
    k0: String,
    #[pyo3(get)]
    measurements: usize,
    #[pyo3(get)]
    trace_json: String,
}

#[pymethods]
impl PyPipelineResult {
    fn __repr__(&self) -> String {
        format!(
            "PipelineResult(k0={}, measurements={}, edges={})",
            self.k0,
            self.measurements,
            self.graph.inner.edge_count()
        )
    }
}

#[pyclass(name = "VerificationReport", module = "qlan", frozen)]
pub struct PyVerificationReport {
    inner: VerificationReport,
}

#[pymethods]
impl PyVerificationReport {
    #[getter]
    fn passed(&self) -> bool {
        self.inner.passed
    }

    #[getter]
    fn qubits(&self) -> usize {
        self.inner.qubits
    }

    #[getter]
    fn min_fidelity(&self) -> f64 {
        self.inner.min_fidelity
    }

    #[getter]
    fn max_fidelity(&self) -> f64 {
        self.inner.max_fidelity
    }

    /// `(outcomes, fidelity)` per branch, e.g. `("+-", 1.0)`.
    #[getter]
    fn branches(&self) -> Vec<(String, f64)> {
        self.inner
            .branches
            .iter()
            .map(|b| (b.outcomes.clone(), b.fidelity))
            .collect()
    }

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.inner).expect("report serializes")
    }

    fn __repr__(&self) -> String {
        format!(
            "VerificationReport(passed={}, branches={}, min_fidelity={})",
            self.inner.passed,
            self.inner.branches.len(),
            self.inner.min_fidelity
        )
    }
}

#[pyfunction]
fn complement_graph(g: &PyGraph) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: g.inner.complement_graph().map_err(py_err)?,
    })
}

#[pyfunction]
fn local_complement(g: &PyGraph, v: &str) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: g.inner.local_complement(vertex(v)?).map_err(py_err)?,
    })
}

fn retained_set(retain: Vec<String>) -> PyResult<BTreeSet<Vertex>> {
    retain.iter().map(|r| vertex(r)).collect()
}

/// Augments `g` with super-nodes and measures them out.
#[pyfunction]
#[pyo3(signature = (g, case = "I", retain = Vec::new(), k0 = None))]
fn run(g: &PyGraph, case: &str, retain: Vec<String>, k0: Option<&str>) -> PyResult<PyPipelineResult> {
    let aug = augment(&g.inner, self::case(case)?, &retained_set(retain)?).map_err(py_err)?;
    let k0 = match k0 {
        Some(name) => vertex(name)?,
        None => aug.default_k0().map_err(py_err)?,
    };
    let result = run_pipeline(&aug, k0).map_err(py_err)?;
    Ok(PyPipelineResult {
        measurements: result.measurement_count(),
        trace_json: trace_to_json(&result.records),
        graph: PyGraph { inner: result.graph },
        augmented: PyGraph {
            inner: aug.graph().clone(),
        },
        k0: k0.to_string(),
    })
}

/// Runs the pipeline and checks every outcome branch against the state-vector oracle.
#[pyfunction]
#[pyo3(signature = (g, case = "I", retain = Vec::new(), k0 = None, corrupt = false))]
fn verify(
    g: &PyGraph,
    case: &str,
    retain: Vec<String>,
    k0: Option<&str>,
    corrupt: bool,
) -> PyResult<PyVerificationReport> {
    let aug = augment(&g.inner, self::case(case)?, &retained_set(retain)?).map_err(py_err)?;
    let k0 = match k0 {
        Some(name) => vertex(name)?,
        None => aug.default_k0().map_err(py_err)?,
    };
    let result = run_pipeline(&aug, k0).map_err(py_err)?;
    let claimed = if corrupt {
        result
            .graph
            .with_edge_toggled(Vertex::q1(1), Vertex::q2(1))
            .map_err(py_err)?
    } else {
        result.graph.clone()
    };
    let options = VerifyOptions {
        branches: None,
        normalize_time: true,
    };
    let inner = verify_pipeline(aug.graph(), &result.records, &claimed, &options).map_err(py_err)?;
    Ok(PyVerificationReport { inner })
}

/// Compares both routing strategies on a scenario given as JSON text or a
/// bundled name; returns the report as JSON text.
#[pyfunction]
fn compare(scenario: &str) -> PyResult<String> {
    let s = if scenario.trim_start().starts_with('{') {
        Scenario::from_json(scenario)
    } else {
        Scenario::bundled(scenario)
    }
    .map_err(py_err)?;
    let report = compare_scenario(&s).map_err(py_err)?;
    Ok(serde_json::to_string_pretty(&report).expect("report serializes"))
}

#[pymodule]
fn qlan(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyPipelineResult>()?;
    m.add_class::<PyVerificationReport>()?;
    m.add_function(wrap_pyfunction!(complement_graph, m)?)?;
    m.add_function(wrap_pyfunction!(local_complement, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add("QlanError", m.py().get_type::<QlanError>())?;
    m.add("CapacityError", m.py().get_type::<CapacityError>())?;
    Ok(())
}

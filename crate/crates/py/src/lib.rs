//! Python bindings: multigraphs, polynomials, Dodgson machinery, splitting
//! verdicts, and the structural toolbox.

use dodgson::kirchhoff::{
    denominator_reduce, dodgson as dodgson_poly, dodgson_matrix_oracle, enumerate_dodgson_specs,
    five_invariant, kirchhoff_det_oracle, kirchhoff_poly, DodgsonSpec, IncidenceFixture,
};
use dodgson::multigraph::{EdgeSet, Multigraph};
use dodgson::polynomial::Polynomial;
use dodgson::splitting;
use dodgson::structure;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn runtime_err(e: impl std::fmt::Display) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

/// An exact undirected multigraph with labeled edges.
#[pyclass(name = "Multigraph", frozen)]
#[derive(Clone)]
struct PyMultigraph {
    inner: Multigraph,
}

#[pymethods]
impl PyMultigraph {
    /// Build from `(label, u, v)` edge triples plus optional isolated
    /// vertices.
    #[new]
    #[pyo3(signature = (edges, vertices = Vec::new()))]
    fn new(edges: Vec<(String, String, String)>, vertices: Vec<String>) -> PyResult<Self> {
        Ok(PyMultigraph {
            inner: Multigraph::new(vertices, edges).map_err(value_err)?,
        })
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn vertices(&self) -> Vec<String> {
        self.inner.vertices().map(|s| s.to_string()).collect()
    }

    fn edges(&self) -> Vec<(String, String, String)> {
        self.inner
            .edge_label_iter()
            .map(|l| {
                let (a, b) = self.inner.endpoints(l).expect("own edge");
                (l.to_string(), a.to_string(), b.to_string())
            })
            .collect()
    }

    fn delete_edge(&self, label: &str) -> PyResult<PyMultigraph> {
        Ok(PyMultigraph {
            inner: self.inner.delete_edge(label).map_err(value_err)?,
        })
    }

    fn contract_edge(&self, label: &str) -> PyResult<PyMultigraph> {
        Ok(PyMultigraph {
            inner: self.inner.contract_edge(label).map_err(value_err)?,
        })
    }

    #[pyo3(signature = (delete, contract))]
    fn take_minor(&self, delete: Vec<String>, contract: Vec<String>) -> PyResult<PyMultigraph> {
        Ok(PyMultigraph {
            inner: self
                .inner
                .take_minor(&EdgeSet::from_labels(delete), &EdgeSet::from_labels(contract))
                .map_err(value_err)?,
        })
    }

    fn loop_number(&self) -> usize {
        self.inner.loop_number()
    }

    fn connected_components(&self) -> Vec<Vec<String>> {
        self.inner.connected_components()
    }

    fn spanning_trees(&self) -> Vec<Vec<String>> {
        self.inner
            .spanning_trees()
            .into_iter()
            .map(|t| t.iter().map(|l| l.to_string()).collect())
            .collect()
    }

    fn canonical_form(&self) -> Vec<u8> {
        self.inner.canonical_form()
    }

    fn is_isomorphic(&self, other: &PyMultigraph) -> bool {
        self.inner.is_isomorphic(&other.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Multigraph(|V|={}, |E|={})",
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }
}

/// Sparse integer polynomial in edge variables, canonical text form.
#[pyclass(name = "Polynomial", frozen)]
#[derive(Clone)]
struct PyPolynomial {
    inner: Polynomial,
}

#[pymethods]
impl PyPolynomial {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<PyPolynomial> {
        Ok(PyPolynomial {
            inner: Polynomial::parse(text).map_err(value_err)?,
        })
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn term_count(&self) -> usize {
        self.inner.term_count()
    }

    fn degree_in(&self, variable: &str) -> u32 {
        self.inner.degree_in(variable)
    }

    fn is_linear_in_every_variable(&self) -> bool {
        self.inner.is_linear_in_every_variable()
    }

    fn variables(&self) -> Vec<String> {
        self.inner.variables().into_iter().collect()
    }

    /// `(content, cofactor)` with the content as canonical text.
    fn monomial_content(&self) -> PyResult<(String, PyPolynomial)> {
        let (m, p) = self.inner.monomial_content().map_err(value_err)?;
        Ok((m.to_string(), PyPolynomial { inner: p }))
    }

    fn perfect_square_root(&self) -> Option<PyPolynomial> {
        self.inner
            .perfect_square_root()
            .map(|p| PyPolynomial { inner: p })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({})", self.inner)
    }

    fn __eq__(&self, other: &PyPolynomial) -> bool {
        self.inner == other.inner
    }
}

fn edge_set(labels: Vec<String>) -> EdgeSet {
    EdgeSet::from_labels(labels)
}

#[pyfunction]
fn builtin(name: &str, n: Option<usize>) -> PyResult<PyMultigraph> {
    Ok(PyMultigraph {
        inner: structure::builtin(name, n).map_err(value_err)?,
    })
}

#[pyfunction]
fn kirchhoff(g: &PyMultigraph) -> PyPolynomial {
    PyPolynomial {
        inner: kirchhoff_poly(&g.inner),
    }
}

#[pyfunction]
fn kirchhoff_determinant_oracle(g: &PyMultigraph) -> PyResult<PyPolynomial> {
    Ok(PyPolynomial {
        inner: kirchhoff_det_oracle(&g.inner).map_err(value_err)?,
    })
}

#[pyfunction]
#[pyo3(signature = (g, i, j, k = Vec::new(), method = "tree"))]
fn dodgson(
    g: &PyMultigraph,
    i: Vec<String>,
    j: Vec<String>,
    k: Vec<String>,
    method: &str,
) -> PyResult<PyPolynomial> {
    let fixture = IncidenceFixture::new(&g.inner);
    let spec = DodgsonSpec::new(edge_set(i), edge_set(j), edge_set(k));
    let poly = match method {
        "tree" => dodgson_poly(&g.inner, &fixture, &spec).map_err(value_err)?,
        "matrix" => dodgson_matrix_oracle(&g.inner, &fixture, &spec).map_err(value_err)?,
        other => return Err(value_err(format!("unknown method `{other}`"))),
    };
    Ok(PyPolynomial { inner: poly })
}

#[pyfunction]
fn five_inv(g: &PyMultigraph, edges: Vec<String>) -> PyResult<PyPolynomial> {
    let tuple: [String; 5] = edges
        .try_into()
        .map_err(|_| value_err("five_inv needs exactly 5 edges"))?;
    Ok(PyPolynomial {
        inner: five_invariant(&g.inner, &tuple).map_err(value_err)?,
    })
}

#[pyfunction]
fn dodgson_specs(config: Vec<String>) -> PyResult<Vec<String>> {
    let specs = enumerate_dodgson_specs(&edge_set(config)).map_err(value_err)?;
    Ok(specs.iter().map(|s| s.to_string()).collect())
}

#[pyfunction]
fn config_splits<'py>(
    py: Python<'py>,
    g: &PyMultigraph,
    config: Vec<String>,
) -> PyResult<Bound<'py, PyDict>> {
    let report = splitting::config_splits(&g.inner, &edge_set(config)).map_err(runtime_err)?;
    let out = PyDict::new(py);
    out.set_item("config", report.config.to_string())?;
    out.set_item("splits", report.splits)?;
    out.set_item("witness", report.witness.as_ref().map(|w| w.to_string()))?;
    out.set_item("shortcut", report.shortcut.map(|t| t.to_string()))?;
    Ok(out)
}

#[pyfunction]
fn graph_splits(g: &PyMultigraph) -> PyResult<bool> {
    splitting::graph_splits(&g.inner).map_err(runtime_err)
}

#[pyfunction]
fn nonsplitting_configs(g: &PyMultigraph) -> PyResult<Vec<Vec<String>>> {
    Ok(splitting::nonsplitting_configs(&g.inner)
        .map_err(runtime_err)?
        .into_iter()
        .map(|c| c.iter().map(|l| l.to_string()).collect())
        .collect())
}

#[pyfunction]
fn delta_y_family_size(g: &PyMultigraph, cap: usize) -> PyResult<usize> {
    Ok(structure::delta_y_family(&g.inner, cap)
        .map_err(runtime_err)?
        .len())
}

#[pyfunction]
fn planar_dual(g: &PyMultigraph) -> PyResult<Option<PyMultigraph>> {
    match structure::is_planar(&g.inner).map_err(runtime_err)? {
        None => Ok(None),
        Some(rs) => Ok(Some(PyMultigraph {
            inner: structure::planar_dual(&g.inner, &rs).map_err(runtime_err)?,
        })),
    }
}

#[pyfunction]
fn is_planar(g: &PyMultigraph) -> PyResult<bool> {
    Ok(structure::is_planar(&g.inner)
        .map_err(runtime_err)?
        .is_some())
}

#[pyfunction]
fn forbidden_minors(g: &PyMultigraph) -> Vec<String> {
    structure::forbidden_minor_scan(&g.inner)
        .iter()
        .map(|t| t.to_string())
        .collect()
}

#[pyfunction]
fn has_minor(g: &PyMultigraph, h: &PyMultigraph) -> bool {
    structure::has_minor(&g.inner, &h.inner)
}

#[pyfunction]
fn primitive_divergent(g: &PyMultigraph) -> bool {
    structure::primitive_divergent(&g.inner).is_primitive_divergent()
}

#[pyfunction]
fn denred(g: &PyMultigraph, order: Vec<String>) -> PyResult<(Vec<(usize, String, String)>, String)> {
    let trace = denominator_reduce(&g.inner, &order).map_err(value_err)?;
    let entries = trace
        .entries
        .iter()
        .map(|e| {
            (
                e.step,
                e.variable.clone().unwrap_or_default(),
                e.poly.to_string(),
            )
        })
        .collect();
    Ok((entries, trace.status.to_string()))
}

#[pymodule]
fn dodgson_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMultigraph>()?;
    m.add_class::<PyPolynomial>()?;
    m.add_function(wrap_pyfunction!(builtin, m)?)?;
    m.add_function(wrap_pyfunction!(kirchhoff, m)?)?;
    m.add_function(wrap_pyfunction!(kirchhoff_determinant_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(dodgson, m)?)?;
    m.add_function(wrap_pyfunction!(five_inv, m)?)?;
    m.add_function(wrap_pyfunction!(dodgson_specs, m)?)?;
    m.add_function(wrap_pyfunction!(config_splits, m)?)?;
    m.add_function(wrap_pyfunction!(graph_splits, m)?)?;
    m.add_function(wrap_pyfunction!(nonsplitting_configs, m)?)?;
    m.add_function(wrap_pyfunction!(delta_y_family_size, m)?)?;
    m.add_function(wrap_pyfunction!(planar_dual, m)?)?;
    m.add_function(wrap_pyfunction!(is_planar, m)?)?;
    m.add_function(wrap_pyfunction!(forbidden_minors, m)?)?;
    m.add_function(wrap_pyfunction!(has_minor, m)?)?;
    m.add_function(wrap_pyfunction!(primitive_divergent, m)?)?;
    m.add_function(wrap_pyfunction!(denred, m)?)?;
    Ok(())
}

//! Python bindings: diagrams, invariants, exchange classes, scripts and the
//! separation pipeline.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use rectlink::distinguish::{distinguish as run_distinguish, SymAssumption};
use rectlink::exchange::{enumerate_class, ClassError, DEFAULT_MEMBER_LIMIT};
use rectlink::flype::generate_flype_sequence;
use rectlink::invariants::all_invariants;
use rectlink::render::{render_ascii, render_svg};
use rectlink::script::{emit_diagram, emit_script, parse_diagram, parse_script, verify_script, KindMask};
use rectlink::{canonicalize, equivalent, GridDiagram};

fn value_err(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Diagram", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq)]
struct PyDiagram(GridDiagram);

#[pymethods]
impl PyDiagram {
    #[new]
    #[pyo3(signature = (black, white, comp=None))]
    fn new(black: Vec<usize>, white: Vec<usize>, comp: Option<Vec<u32>>) -> PyResult<Self> {
        let d = match comp {
            Some(c) => GridDiagram::with_components(black, white, c),
            None => GridDiagram::new(black, white),
        };
        d.map(PyDiagram).map_err(value_err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_diagram(text).map(PyDiagram).map_err(value_err)
    }

    #[getter]
    fn size(&self) -> usize {
        self.0.size()
    }

    #[getter]
    fn black(&self) -> Vec<usize> {
        self.0.black().to_vec()
    }

    #[getter]
    fn white(&self) -> Vec<usize> {
        self.0.white().to_vec()
    }

    #[getter]
    fn components(&self) -> Vec<u32> {
        self.0.components().to_vec()
    }

    fn text(&self) -> String {
        emit_diagram(&self.0)
    }

    fn shift(&self, a: usize, b: usize) -> Self {
        PyDiagram(self.0.shift(a, b))
    }

    fn canonical(&self) -> Self {
        PyDiagram(canonicalize(&self.0).into_diagram())
    }

    fn equivalent(&self, other: &PyDiagram) -> bool {
        equivalent(&self.0, &other.0)
    }

    /// `{"tb+": .., "rot+": .., "tb-": .., "rot-": ..}`
    fn invariants<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (k, v) in ["tb+", "rot+", "tb-", "rot-"].into_iter().zip(all_invariants(&self.0)) {
            d.set_item(k, v)?;
        }
        Ok(d)
    }

    /// Exchange-class size, or `None` past `limit` members.
    #[pyo3(signature = (limit=DEFAULT_MEMBER_LIMIT))]
    fn class_size(&self, limit: usize) -> Option<usize> {
        match enumerate_class(&self.0, limit) {
            Ok(c) => Some(c.members.len()),
            Err(ClassError::LimitExceeded { .. }) => None,
        }
    }

    fn flype_script(&self) -> PyResult<String> {
        generate_flype_sequence(&self.0).map(|s| emit_script(&s)).map_err(value_err)
    }

    fn render_svg(&self) -> PyResult<String> {
        render_svg(&self.0, None).map_err(value_err)
    }

    fn render_ascii(&self) -> String {
        render_ascii(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Diagram(black={:?}, white={:?}, comp={:?})", self.0.black(), self.0.white(), self.0.components())
    }
}

/// Verifies a script; returns `{"steps", "kinds", "endpoint", "sha256"}` or
/// raises `ValueError`.
#[pyfunction]
#[pyo3(signature = (text, mask=None))]
fn verify<'py>(py: Python<'py>, text: &str, mask: Option<&str>) -> PyResult<Bound<'py, PyDict>> {
    let mut s = parse_script(text).map_err(value_err)?;
    if let Some(m) = mask {
        s.allowed_kinds = Some(m.parse::<KindMask>().map_err(value_err)?);
    }
    let cert = verify_script(&s).map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("steps", cert.steps.len())?;
    d.set_item("kinds", cert.steps.iter().map(|st| st.kind.to_string()).collect::<Vec<_>>())?;
    d.set_item("endpoint", PyDiagram(cert.endpoint.diagram().clone()))?;
    d.set_item("sha256", cert.endpoint_hash)?;
    Ok(d)
}

/// Returns `(verdict, report)`; bad evidence raises `ValueError`.
#[pyfunction]
#[pyo3(signature = (first, second, evidence, bridge=None, sym=None, limit=DEFAULT_MEMBER_LIMIT))]
fn distinguish(
    first: &PyDiagram,
    second: &PyDiagram,
    evidence: &str,
    bridge: Option<&str>,
    sym: Option<String>,
    limit: usize,
) -> PyResult<(String, String)> {
    let ev = parse_script(evidence).map_err(value_err)?;
    let br = bridge.map(parse_script).transpose().map_err(value_err)?;
    let sym = sym.map(|citation| SymAssumption { citation });
    let rep = run_distinguish(&first.0, &second.0, &ev, br.as_ref(), sym.as_ref(), limit).map_err(value_err)?;
    Ok((rep.verdict.to_string(), rep.to_string()))
}

#[pymodule]
fn rectlink_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDiagram>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(distinguish, m)?)?;
    Ok(())
}

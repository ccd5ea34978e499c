//! Python bindings: a thin wrapper exposing presentations and the pipeline
//! operations.  Elements, derivations and reports travel as the same JSON
//! documents the command-line tool reads and writes.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use qna_core::center;
use qna_core::deriv;
use qna_core::gy;
use qna_core::ore;
use qna_core::scalars::Scalar;
use qna_core::wire;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn runtime_err(e: impl std::fmt::Display) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

fn to_json<T: serde::Serialize>(v: &T) -> PyResult<String> {
    serde_json::to_string(v).map_err(runtime_err)
}

/// A uniparameter iterated Ore extension with its straightening engine.
#[pyclass(frozen)]
struct Presentation {
    inner: ore::Presentation,
}

impl Presentation {
    fn parse_element(&self, json: &str) -> PyResult<ore::PBWElement> {
        let wire: wire::ElementJson = serde_json::from_str(json).map_err(value_err)?;
        wire::element_from_wire(&wire, self.inner.n_vars()).map_err(value_err)
    }

    fn pipeline(
        &self,
        search_bound: u32,
    ) -> PyResult<(
        gy::Cluster,
        gy::CommutationMatrix,
        center::HypothesisCertificate,
    )> {
        let cluster = gy::compute_y_elements(&self.inner).map_err(runtime_err)?;
        let matrix = gy::commutation_matrix(&self.inner, &cluster).map_err(runtime_err)?;
        let cert = center::verify_hypothesis(&matrix, &cluster.prime_indices(), search_bound);
        Ok((cluster, matrix, cert))
    }
}

#[pymethods]
impl Presentation {
    /// Parse a presentation document (the same JSON the CLI consumes).
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(value_err)?;
        let inner = wire::presentation_from_json_value(&value).map_err(value_err)?;
        Ok(Presentation { inner })
    }

    /// Load a named catalog entry.
    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        let entry = qna_core::catalog::by_name(name).map_err(value_err)?;
        Ok(Presentation {
            inner: entry.presentation,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        to_json(&wire::presentation_to_wire(&self.inner))
    }

    /// Tower length.
    #[getter]
    fn n_vars(&self) -> usize {
        self.inner.n_vars()
    }

    /// Number of indices with vanishing skew derivation.
    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    /// Run the axiom checks; returns the report as JSON.
    #[pyo3(signature = (nilpotency_bound = 16))]
    fn validate(&self, nilpotency_bound: u32) -> PyResult<String> {
        to_json(&wire::validation_to_wire(
            &self.inner.validate(nilpotency_bound),
        ))
    }

    /// Is the presentation valid (central generators allowed)?
    #[pyo3(signature = (nilpotency_bound = 16))]
    fn is_valid(&self, nilpotency_bound: u32) -> bool {
        self.inner.validate(nilpotency_bound).is_valid()
    }

    /// Normal form of the product of two elements given as JSON.
    fn multiply(&self, a: &str, b: &str) -> PyResult<String> {
        let a = self.parse_element(a)?;
        let b = self.parse_element(b)?;
        to_json(&wire::element_to_wire(&self.inner.multiply(&a, &b)))
    }

    /// Commutator `[a, b]` of two elements given as JSON.
    fn commutator(&self, a: &str, b: &str) -> PyResult<String> {
        let a = self.parse_element(a)?;
        let b = self.parse_element(b)?;
        to_json(&wire::element_to_wire(&self.inner.commutator(&a, &b)))
    }

    /// The generator `x_k` (1-based) as an element document.
    fn generator(&self, k: usize) -> PyResult<String> {
        if k == 0 || k > self.inner.n_vars() {
            return Err(value_err(format!("generator index {k} out of range")));
        }
        to_json(&wire::element_to_wire(&self.inner.generator(k - 1)))
    }

    /// The recursive cluster with colouring and predecessor/successor maps.
    fn y_elements(&self) -> PyResult<String> {
        let cluster = gy::compute_y_elements(&self.inner).map_err(runtime_err)?;
        to_json(&wire::cluster_to_wire(&cluster))
    }

    /// Torus/affine center ranks and the kernel basis.
    #[pyo3(signature = (search_bound = 4))]
    fn center(&self, search_bound: u32) -> PyResult<String> {
        let (_, matrix, _) = self.pipeline(search_bound)?;
        let kernel = center::kernel_basis(&matrix);
        let doc = serde_json::json!({
            "format": wire::FORMAT,
            "torus_center_rank": kernel.rank(),
            "affine_center_rank": center::affine_center_rank(&matrix, search_bound),
            "kernel_basis": kernel.vectors,
            "simple_torus": center::is_simple_torus(&matrix),
        });
        Ok(doc.to_string())
    }

    /// The pivot certificate for the torus center.
    #[pyo3(signature = (search_bound = 4))]
    fn hypothesis(&self, search_bound: u32) -> PyResult<String> {
        let (_, _, cert) = self.pipeline(search_bound)?;
        to_json(&wire::hypothesis_to_wire(&cert))
    }

    /// Decompose a derivation document as inner plus homogeneous.
    #[pyo3(signature = (derivation, degree_bound = 8, search_bound = 4))]
    fn decompose(
        &self,
        derivation: &str,
        degree_bound: u32,
        search_bound: u32,
    ) -> PyResult<String> {
        let dwire: wire::DerivationJson = serde_json::from_str(derivation).map_err(value_err)?;
        let d = wire::derivation_from_wire(&dwire, self.inner.n_vars()).map_err(value_err)?;
        let (cluster, _, cert) = self.pipeline(search_bound)?;
        let result = deriv::decompose(&self.inner, &cluster, &cert, &d, degree_bound)
            .map_err(runtime_err)?;
        to_json(&wire::decomposition_to_wire(&result))
    }

    /// The homogeneous basis of the first cohomology group.
    #[pyo3(signature = (search_bound = 4))]
    fn hh1_basis(&self, search_bound: u32) -> PyResult<String> {
        let (_, _, cert) = self.pipeline(search_bound)?;
        let basis = deriv::hh1_basis(&self.inner, &cert).map_err(runtime_err)?;
        let doc = serde_json::json!({
            "format": wire::FORMAT,
            "rank": basis.len(),
            "basis": basis
                .iter()
                .map(|d| serde_json::to_value(wire::derivation_to_wire(d)).unwrap())
                .collect::<Vec<_>>(),
        });
        Ok(doc.to_string())
    }

    /// Does an inner witness of the given degree exist for the derivation?
    #[pyo3(signature = (derivation, degree_bound = 8))]
    fn is_inner_up_to(&self, derivation: &str, degree_bound: u32) -> PyResult<Option<String>> {
        let dwire: wire::DerivationJson = serde_json::from_str(derivation).map_err(value_err)?;
        let d = wire::derivation_from_wire(&dwire, self.inner.n_vars()).map_err(value_err)?;
        let witness = deriv::is_inner_up_to(&self.inner, &d, degree_bound).map_err(runtime_err)?;
        witness
            .map(|x| to_json(&wire::element_to_wire(&x)))
            .transpose()
    }

    /// Does the derivation document satisfy the Leibniz rule on every
    /// defining relation?
    fn validate_derivation(&self, derivation: &str) -> PyResult<bool> {
        let dwire: wire::DerivationJson = serde_json::from_str(derivation).map_err(value_err)?;
        let d = wire::derivation_from_wire(&dwire, self.inner.n_vars()).map_err(value_err)?;
        Ok(deriv::validate_derivation(&self.inner, &d))
    }

    fn __repr__(&self) -> String {
        format!(
            "Presentation(n_vars={}, rank={})",
            self.inner.n_vars(),
            self.inner.rank()
        )
    }
}

/// `q^e` as a scalar document.
#[pyfunction]
fn qpow(e: i64) -> PyResult<String> {
    to_json(&wire::scalar_to_wire(&Scalar::qpow(e)))
}

/// Names of the built-in catalog entries.
#[pyfunction]
fn catalog_names() -> Vec<String> {
    qna_core::catalog::NAMES
        .iter()
        .map(|s| s.to_string())
        .collect()
}

/// Full catalog document (presentation plus expected data) for one entry.
#[pyfunction]
fn catalog_entry(name: &str) -> PyResult<String> {
    let entry = qna_core::catalog::by_name(name).map_err(value_err)?;
    to_json(&wire::catalog_to_wire(&entry))
}

/// Convenience: decomposition status of a decompose result document.
#[pyfunction]
fn decomposition_is_exact(result: &str) -> PyResult<bool> {
    let doc: serde_json::Value = serde_json::from_str(result).map_err(value_err)?;
    Ok(doc["status"] == "exact")
}

#[pymodule]
fn qna_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Presentation>()?;
    m.add_function(wrap_pyfunction!(qpow, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_entry, m)?)?;
    m.add_function(wrap_pyfunction!(decomposition_is_exact, m)?)?;
    Ok(())
}

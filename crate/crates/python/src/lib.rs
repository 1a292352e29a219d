use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use qdistill::distill::{self, EnsembleOptions, DEFAULT_MAX_STEPS};
use qdistill::hs_geometry::geometry_report;
use qdistill::inseparability::{self, ppt_test as core_ppt_test};
use qdistill::qlinalg::ComplexMatrix;
use qdistill::qstate::{self, make_density};

create_exception!(pyqdistill, QdistillError, PyException);

fn err(e: qdistill::Error) -> PyErr {
    QdistillError::new_err(e.to_string())
}

/// Serializes through JSON and hands back plain dicts and lists.
fn to_py<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(name = "DensityMatrix", frozen)]
struct PyDensityMatrix {
    inner: qstate::DensityMatrix,
}

impl From<qstate::DensityMatrix> for PyDensityMatrix {
    fn from(inner: qstate::DensityMatrix) -> Self {
        Self { inner }
    }
}

#[pymethods]
impl PyDensityMatrix {
    /// From a 4x4 nested list of complex numbers; validated, not renormalized.
    #[new]
    fn new(rows: Vec<Vec<Complex64>>) -> PyResult<Self> {
        if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
            return Err(PyValueError::new_err("expected a 4x4 matrix"));
        }
        let entries: Vec<Complex64> = rows.into_iter().flatten().collect();
        let m = ComplexMatrix::from_row_major(4, &entries).map_err(err)?;
        Ok(make_density(m).map_err(err)?.into())
    }

    #[staticmethod]
    fn werner(f: f64) -> PyResult<Self> {
        Ok(qstate::werner_state(f).map_err(err)?.into())
    }

    #[staticmethod]
    fn eq10(c: f64, d: f64, p: f64) -> PyResult<Self> {
        Ok(qstate::eq10_state(c, d, p).map_err(err)?.into())
    }

    #[staticmethod]
    #[pyo3(signature = (seed, terms = 2))]
    fn random_mixed(seed: u64, terms: usize) -> PyResult<Self> {
        Ok(qstate::random_mixed(seed, terms).map_err(err)?.into())
    }

    #[staticmethod]
    #[pyo3(signature = (seed, terms = 2))]
    fn random_separable(seed: u64, terms: usize) -> PyResult<Self> {
        Ok(qstate::random_separable(seed, terms).map_err(err)?.into())
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(qstate::parse_state_file(text).map_err(err)?.into())
    }

    fn to_json(&self) -> String {
        qstate::write_state_file(&self.inner)
    }

    fn matrix(&self) -> Vec<Vec<Complex64>> {
        (0..4).map(|i| self.inner.matrix().row(i).to_vec()).collect()
    }

    fn singlet_fraction(&self) -> f64 {
        qstate::singlet_fraction(&self.inner).f
    }

    fn distance(&self, other: &PyDensityMatrix) -> f64 {
        self.inner.distance(&other.inner)
    }

    fn __repr__(&self) -> String {
        format!("DensityMatrix(singlet_fraction={:.6})", self.singlet_fraction())
    }
}

/// (min partial-transpose eigenvalue, inseparable)
#[pyfunction]
fn ppt_test(rho: &PyDensityMatrix) -> (f64, bool) {
    let v = core_ppt_test(&rho.inner);
    (v.min_eigenvalue, v.inseparable)
}

#[pyfunction]
fn singlet_fraction(rho: &PyDensityMatrix) -> f64 {
    rho.singlet_fraction()
}

/// Derived filter, its pass probability and the filtered state.
#[pyfunction]
fn derive_filter<'py>(py: Python<'py>, rho: &PyDensityMatrix) -> PyResult<(Bound<'py, PyAny>, f64, PyDensityMatrix)> {
    let d = inseparability::derive_filter(&rho.inner).map_err(err)?;
    let (state, p) = distill::filter_ensemble(&d.rotated, &d.filter).map_err(err)?;
    let record = inseparability::verdict_record(&rho.inner);
    Ok((to_py(py, &record)?, p, state.into()))
}

#[pyfunction]
fn geometry<'py>(py: Python<'py>, rho: &PyDensityMatrix) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &geometry_report(&rho.inner))
}

#[pyfunction]
fn twirl_werner(rho: &PyDensityMatrix) -> PyDensityMatrix {
    distill::twirl_werner(&rho.inner).into()
}

/// (kept state, new singlet fraction, success probability)
#[pyfunction]
fn bbpssw_step(rho: &PyDensityMatrix) -> PyResult<(PyDensityMatrix, f64, f64)> {
    let s = distill::bbpssw_step(&rho.inner).map_err(err)?;
    Ok((s.state.into(), s.f_new, s.p_success))
}

#[pyfunction]
fn bbpssw_recurrence(f: f64) -> (f64, f64) {
    distill::bbpssw_recurrence(f)
}

/// Full pipeline report; `outcome` tells whether the target was reached.
#[pyfunction]
#[pyo3(signature = (rho, f_target, max_steps = DEFAULT_MAX_STEPS))]
fn distill_report<'py>(
    py: Python<'py>,
    rho: &PyDensityMatrix,
    f_target: f64,
    max_steps: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let report = distill::pipeline_report(&rho.inner, f_target, max_steps).map_err(err)?;
    to_py(py, &report)
}

#[pyfunction]
#[pyo3(signature = (rho, n_pairs, f_target, seed, max_steps = DEFAULT_MAX_STEPS, workers = 0))]
fn simulate<'py>(
    py: Python<'py>,
    rho: &PyDensityMatrix,
    n_pairs: usize,
    f_target: f64,
    seed: u64,
    max_steps: usize,
    workers: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let opts = EnsembleOptions { n_pairs, f_target, max_steps, seed, workers };
    let run = py.detach(|| distill::simulate_ensemble_with(&rho.inner, &opts)).map_err(err)?;
    to_py(py, &run)
}

#[pyfunction]
fn estimate_state(rho: &PyDensityMatrix, shots: u64, seed: u64) -> PyResult<PyDensityMatrix> {
    Ok(distill::estimate_state(&rho.inner, shots, seed).map_err(err)?.into())
}

#[pymodule]
fn pyqdistill(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("QdistillError", m.py().get_type::<QdistillError>())?;
    m.add_class::<PyDensityMatrix>()?;
    m.add_function(wrap_pyfunction!(ppt_test, m)?)?;
    m.add_function(wrap_pyfunction!(singlet_fraction, m)?)?;
    m.add_function(wrap_pyfunction!(derive_filter, m)?)?;
    m.add_function(wrap_pyfunction!(geometry, m)?)?;
    m.add_function(wrap_pyfunction!(twirl_werner, m)?)?;
    m.add_function(wrap_pyfunction!(bbpssw_step, m)?)?;
    m.add_function(wrap_pyfunction!(bbpssw_recurrence, m)?)?;
    m.add_function(wrap_pyfunction!(distill_report, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_state, m)?)?;
    Ok(())
}

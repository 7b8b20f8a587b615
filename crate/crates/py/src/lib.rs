//! Python bindings. Structured results come back as plain dicts and lists.

use std::path::PathBuf;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use conecorr::cli::{self, Overrides};
use conecorr::correspondence::{
    check_sublinearity, corollary1_check, corr_norm, dist_to_identity, hat_extension, lsc_probe, usc_probe,
    CorrespondenceDoc, ProbeParams,
};
use conecorr::geometry::{self, NormSpec};
use conecorr::semigroup::{self, FamilyDoc};
use conecorr::{
    CompactSet, Cone, LinearCorrespondence, Point, SemigroupFamily, SetMap, SublinearCorrespondence,
};

fn err(e: conecorr::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn point(x: Vec<f64>) -> PyResult<Point> {
    Point::new(x).map_err(err)
}

fn norm(name: &str) -> PyResult<NormSpec> {
    NormSpec::from_name(name).map_err(err)
}

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

#[pyclass(name = "Cone", frozen, from_py_object)]
#[derive(Clone)]
struct PyCone(Cone);

#[pymethods]
impl PyCone {
    #[new]
    fn new(basis: Vec<Vec<f64>>) -> PyResult<Self> {
        let basis = basis.into_iter().map(point).collect::<PyResult<Vec<_>>>()?;
        Ok(Self(Cone::new(basis).map_err(err)?))
    }

    #[staticmethod]
    fn standard(n: usize) -> Self {
        Self(Cone::standard(n))
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn coords(&self, x: Vec<f64>) -> PyResult<Vec<f64>> {
        Ok(self.0.coords(&point(x)?).map_err(err)?.0)
    }

    fn contains(&self, x: Vec<f64>) -> PyResult<bool> {
        Ok(self.0.contains(&point(x)?))
    }
}

#[pyclass(name = "CompactSet", frozen, from_py_object)]
#[derive(Clone)]
struct PyCompactSet(CompactSet);

#[pymethods]
impl PyCompactSet {
    #[new]
    #[pyo3(signature = (points, convex = false))]
    fn new(points: Vec<Vec<f64>>, convex: bool) -> PyResult<Self> {
        let points = points.into_iter().map(point).collect::<PyResult<Vec<_>>>()?;
        Ok(Self(CompactSet::new(points, convex).map_err(err)?))
    }

    #[getter]
    fn points(&self) -> Vec<Vec<f64>> {
        self.0.points().iter().map(|p| p.coords().to_vec()).collect()
    }

    #[getter]
    fn convex(&self) -> bool {
        self.0.is_convex()
    }

    fn minkowski(&self, other: &PyCompactSet) -> PyResult<Self> {
        Ok(Self(geometry::minkowski_sum(&self.0, &other.0).map_err(err)?))
    }

    fn scale(&self, factor: f64) -> Self {
        Self(geometry::scale(factor, &self.0))
    }

    #[pyo3(signature = (other, norm = "euclidean"))]
    fn hausdorff(&self, other: &PyCompactSet, norm: &str) -> PyResult<f64> {
        geometry::hausdorff(&self.0, &other.0, &self::norm(norm)?).map_err(err)
    }

    #[pyo3(signature = (other, norm = "euclidean"))]
    fn excess(&self, other: &PyCompactSet, norm: &str) -> PyResult<f64> {
        geometry::directed_excess(&self.0, &other.0, &self::norm(norm)?).map_err(err)
    }

    fn __repr__(&self) -> String {
        let kind = if self.0.is_convex() { "hull" } else { "finite" };
        let pts: Vec<String> = self.0.points().iter().map(|p| p.to_string()).collect();
        format!("CompactSet({kind} {{{}}})", pts.join(", "))
    }
}

#[pyclass(name = "Correspondence", frozen, from_py_object)]
#[derive(Clone)]
struct PyCorrespondence(SublinearCorrespondence);

#[pymethods]
impl PyCorrespondence {
    /// A linear correspondence given by its basis images.
    #[staticmethod]
    fn linear(cone: &PyCone, images: Vec<PyCompactSet>) -> PyResult<Self> {
        let images: Vec<CompactSet> = images.into_iter().map(|s| s.0).collect();
        let endo = images.iter().all(|s| s.dim() == cone.0.dim() && s.points().iter().all(|p| cone.0.contains(p)));
        let phi = if endo {
            LinearCorrespondence::endomorphism(cone.0.clone(), images)
        } else {
            LinearCorrespondence::new(cone.0.clone(), images)
        }
        .map_err(err)?;
        Ok(Self(SublinearCorrespondence::from_linear(phi)))
    }

    #[staticmethod]
    fn interval_scalar(cone: &PyCone, lo: f64, hi: f64) -> PyResult<Self> {
        Ok(Self(SublinearCorrespondence::interval_scalar(cone.0.clone(), lo, hi).map_err(err)?))
    }

    #[staticmethod]
    fn paper_example() -> Self {
        Self(SublinearCorrespondence::paper_example())
    }

    /// Builds from a correspondence document such as `{"kind": "paper-example"}`.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc: CorrespondenceDoc = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(Self(doc.build().map_err(err)?))
    }

    #[getter]
    fn rule(&self) -> String {
        self.0.rule().name().to_string()
    }

    fn eval(&self, x: Vec<f64>) -> PyResult<PyCompactSet> {
        Ok(PyCompactSet(self.0.eval(&point(x)?).map_err(err)?))
    }

    fn hat(&self) -> PyResult<Self> {
        Ok(Self(SublinearCorrespondence::from_linear(hat_extension(&self.0).map_err(err)?)))
    }

    #[pyo3(signature = (norm = "euclidean", resolution = 200))]
    fn norm(&self, norm: &str, resolution: usize) -> PyResult<f64> {
        Ok(corr_norm(&self.0, &self::norm(norm)?, resolution).map_err(err)?.value)
    }

    #[pyo3(signature = (norm = "euclidean", resolution = 200))]
    fn dist_to_identity(&self, norm: &str, resolution: usize) -> PyResult<f64> {
        Ok(dist_to_identity(&self.0, &self::norm(norm)?, resolution).map_err(err)?.value)
    }

    #[pyo3(signature = (norm = "euclidean", resolution = 200, tol = 1e-6))]
    fn corollary1(&self, py: Python<'_>, norm: &str, resolution: usize, tol: f64) -> PyResult<Py<PyAny>> {
        to_py(py, &corollary1_check(&self.0, &self::norm(norm)?, resolution, tol).map_err(err)?)
    }

    #[pyo3(signature = (x, eps))]
    fn usc_probe(&self, py: Python<'_>, x: Vec<f64>, eps: f64) -> PyResult<Py<PyAny>> {
        to_py(py, &usc_probe(&self.0, &point(x)?, eps, &ProbeParams::default()).map_err(err)?)
    }

    #[pyo3(signature = (x, eps))]
    fn lsc_probe(&self, py: Python<'_>, x: Vec<f64>, eps: f64) -> PyResult<Py<PyAny>> {
        to_py(py, &lsc_probe(&self.0, &point(x)?, eps, &ProbeParams::default()).map_err(err)?)
    }

    #[pyo3(signature = (samples = 100, seed = 0))]
    fn check_sublinearity(&self, py: Python<'_>, samples: usize, seed: u64) -> PyResult<Py<PyAny>> {
        to_py(py, &check_sublinearity(&self.0, samples, seed).map_err(err)?)
    }
}

#[pyclass(name = "Family", frozen, from_py_object)]
#[derive(Clone)]
struct PyFamily(SemigroupFamily);

#[pymethods]
impl PyFamily {
    #[staticmethod]
    #[pyo3(signature = (a, b, cone = None))]
    fn interval_scalar(a: f64, b: f64, cone: Option<&PyCone>) -> PyResult<Self> {
        let cone = cone.map_or_else(|| Cone::standard(1), |c| c.0.clone());
        Ok(Self(SemigroupFamily::interval_scalar(cone, a, b).map_err(err)?))
    }

    /// Builds from a family document such as `{"family": "interval-scalar", "a": 0.5, "b": 1}`.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc: FamilyDoc = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(Self(doc.build().map_err(err)?))
    }

    #[getter]
    fn name(&self) -> String {
        self.0.name()
    }

    fn at(&self, t: f64) -> PyResult<PyCorrespondence> {
        Ok(PyCorrespondence(self.0.at(t).map_err(err)?))
    }

    fn eval(&self, t: f64, x: Vec<f64>) -> PyResult<PyCompactSet> {
        Ok(PyCompactSet(self.0.eval(t, &point(x)?).map_err(err)?))
    }

    #[pyo3(signature = (ts, norm = "euclidean", resolution = 200))]
    fn growth_fit(&self, py: Python<'_>, ts: Vec<f64>, norm: &str, resolution: usize) -> PyResult<Py<PyAny>> {
        to_py(py, &semigroup::growth_fit(&self.0, &ts, &self::norm(norm)?, resolution).map_err(err)?)
    }

    #[pyo3(signature = (ts, xs, norm = "euclidean"))]
    fn semigroup_defect(&self, py: Python<'_>, ts: Vec<f64>, xs: Vec<Vec<f64>>, norm: &str) -> PyResult<Py<PyAny>> {
        let xs = xs.into_iter().map(point).collect::<PyResult<Vec<_>>>()?;
        to_py(py, &semigroup::semigroup_defect(&self.0, &ts, &xs, &self::norm(norm)?).map_err(err)?)
    }

    #[pyo3(signature = (w, x, deltas, samples = 16, norm = "euclidean"))]
    fn continuity_modulus(
        &self,
        py: Python<'_>,
        w: f64,
        x: Vec<f64>,
        deltas: Vec<f64>,
        samples: usize,
        norm: &str,
    ) -> PyResult<Py<PyAny>> {
        let rows = semigroup::continuity_modulus(&self.0, w, &point(x)?, &deltas, samples, &self::norm(norm)?)
            .map_err(err)?;
        to_py(py, &rows)
    }
}

#[pyfunction]
fn convex_hull(points: Vec<Vec<f64>>) -> PyResult<PyCompactSet> {
    let points = points.into_iter().map(point).collect::<PyResult<Vec<_>>>()?;
    Ok(PyCompactSet(geometry::convex_hull(points).map_err(err)?))
}

#[pyfunction]
fn list_builtins(py: Python<'_>) -> PyResult<Py<PyAny>> {
    to_py(py, &cli::list_builtins())
}

/// Runs a config file and returns the report; `out` overrides the output directory.
#[pyfunction]
#[pyo3(signature = (config, out = None))]
fn run_config(py: Python<'_>, config: PathBuf, out: Option<PathBuf>) -> PyResult<Py<PyAny>> {
    let (report, _) = cli::run(&config, &Overrides { out, ..Default::default() })
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    to_py(py, &report)
}

#[pymodule]
#[pyo3(name = "conecorr")]
fn conecorr_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", conecorr::VERSION)?;
    m.add_class::<PyCone>()?;
    m.add_class::<PyCompactSet>()?;
    m.add_class::<PyCorrespondence>()?;
    m.add_class::<PyFamily>()?;
    m.add_function(wrap_pyfunction!(convex_hull, m)?)?;
    m.add_function(wrap_pyfunction!(list_builtins, m)?)?;
    m.add_function(wrap_pyfunction!(run_config, m)?)?;
    Ok(())
}

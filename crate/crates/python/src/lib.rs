//! Python bindings for `k3sig`.

use std::path::PathBuf;

use k3sig::ade::{cartan_matrix, form_signature, plumbing_form};
use k3sig::bsy::{bsy_check as check_diagram, novikov_assembly, sigma_k3 as sigma};
use k3sig::catalog::{self, load_catalog, verify_row};
use k3sig::search;
use k3sig::wps;
use num_rational::BigRational;
use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, x: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((x.to_string(),))
}

fn class_terms<'py>(py: Python<'py>, c: &k3sig::FormalClass) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    for (g, x) in c.terms() {
        d.set_item(g.to_string(), fraction(py, x)?)?;
    }
    Ok(d)
}

/// An ADE Dynkin type such as `A_3`, `D_4` or `E_8`.
#[pyclass(name = "AdeType", module = "k3sig_py", frozen, eq, ord, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct PyAdeType(k3sig::AdeType);

#[pymethods]
impl PyAdeType {
    #[new]
    fn new(token: &str) -> PyResult<Self> {
        token.parse().map(Self).map_err(value_error)
    }

    #[getter]
    fn kind(&self) -> String {
        format!("{:?}", self.0.kind())
    }

    #[getter]
    fn rank(&self) -> u32 {
        self.0.rank()
    }

    fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        cartan_matrix(self.0).rows()
    }

    /// Plumbing form with every Euler number equal to `euler`.
    #[pyo3(signature = (euler = -2))]
    fn plumbing_form(&self, euler: i64) -> PyResult<Vec<Vec<i64>>> {
        let n = self.0.dynkin_graph().vertex_count();
        let g = self
            .0
            .dynkin_graph()
            .with_euler_weights(vec![euler; n])
            .map_err(value_error)?;
        Ok(plumbing_form(&g).rows())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("AdeType('{}')", self.0)
    }
}

/// A multiset of du Val singularity types.
#[pyclass(name = "Basket", module = "k3sig_py", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyBasket(k3sig::Basket);

#[pymethods]
impl PyBasket {
    #[new]
    #[pyo3(signature = (tokens = ""))]
    fn new(tokens: &str) -> PyResult<Self> {
        k3sig::Basket::parse_tokens(tokens).map(Self).map_err(value_error)
    }

    #[getter]
    fn total_d(&self) -> u64 {
        self.0.total_d()
    }

    #[getter]
    fn point_count(&self) -> usize {
        self.0.point_count()
    }

    /// `(type, multiplicity)` pairs.
    fn items(&self) -> Vec<(PyAdeType, usize)> {
        self.0.entries().map(|(t, m)| (PyAdeType(t), m)).collect()
    }

    fn tokens(&self) -> String {
        self.0.to_tokens()
    }

    #[pyo3(signature = (q = 0))]
    fn sigma(&self, q: u8) -> PyResult<i64> {
        sigma(&self.0, q).map_err(value_error)
    }

    /// Signature bookkeeping of the resolution, tubes and complement.
    fn novikov<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let n = novikov_assembly(&self.0).map_err(value_error)?;
        let d = PyDict::new(py);
        d.set_item("resolution", n.sigma_resolution)?;
        d.set_item("tubes", n.tube_signatures.clone())?;
        d.set_item("complement", n.sigma_complement)?;
        d.set_item("cones", n.cone_signatures.clone())?;
        d.set_item("surface", n.surface_signature())?;
        Ok(d)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Basket('{}')", self.0.to_tokens())
    }
}

/// `(positives, negatives, zeros)` of a symmetric integer matrix.
#[pyfunction]
fn signature(rows: Vec<Vec<i64>>) -> PyResult<(usize, usize, usize)> {
    let q = k3sig::SymIntForm::new(rows).map_err(value_error)?;
    let s = form_signature(&q);
    Ok((s.positives, s.negatives, s.zeros))
}

fn family(weights: [u64; 4], degree: Option<u64>) -> PyResult<k3sig::HypersurfaceFamily> {
    let degree = degree.unwrap_or_else(|| weights.iter().sum());
    k3sig::HypersurfaceFamily::new(weights, degree).map_err(value_error)
}

#[pyfunction]
fn well_formed(weights: [u64; 4]) -> PyResult<bool> {
    k3sig::Weights::new(weights)
        .map(|w| wps::well_formed(&w))
        .map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (weights, degree = None))]
fn quasismooth(weights: [u64; 4], degree: Option<u64>) -> PyResult<bool> {
    Ok(wps::quasismooth(&family(weights, degree)?))
}

/// Basket of a general member of `X_d ⊂ P(weights)`; `d` defaults to the
/// sum of the weights.
#[pyfunction]
#[pyo3(signature = (weights, degree = None))]
fn basket(weights: [u64; 4], degree: Option<u64>) -> PyResult<PyBasket> {
    wps::basket(&family(weights, degree)?)
        .map(PyBasket)
        .map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (tokens = "", q = 0))]
fn sigma_k3(tokens: &str, q: u8) -> PyResult<i64> {
    let b = k3sig::Basket::parse_tokens(tokens).map_err(value_error)?;
    sigma(&b, q).map_err(value_error)
}

/// Compares the Hodge and topological L-classes of a 3-fold covered by
/// `F × E` with degree `degree`.
#[pyfunction]
#[pyo3(signature = (q, basket = "", degree = 1))]
fn bsy_check<'py>(py: Python<'py>, q: u8, basket: &str, degree: u32) -> PyResult<Bound<'py, PyDict>> {
    let b = k3sig::Basket::parse_tokens(basket).map_err(value_error)?;
    let diagram = if q == 1 {
        k3sig::KawamataDiagram::with_k3_fiber(b, degree)
    } else if b.is_empty() {
        k3sig::KawamataDiagram::for_irregularity(q, degree)
    } else {
        return Err(PyValueError::new_err("a basket only applies to q = 1"));
    };
    let report = diagram.and_then(|k| check_diagram(&k)).map_err(value_error)?;
    let d = PyDict::new(py);
    d.set_item("q", report.irregularity)?;
    d.set_item("degree", report.cover_degree)?;
    d.set_item("hodge", class_terms(py, &report.hodge_route)?)?;
    d.set_item("topological", class_terms(py, &report.topological_route)?)?;
    d.set_item("closed_form", class_terms(py, &report.closed_form)?)?;
    d.set_item("text", report.closed_form.to_string())?;
    d.set_item("equal", report.equal)?;
    Ok(d)
}

fn row_dict<'py>(py: Python<'py>, r: &catalog::CatalogRow) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("name", &r.name)?;
    d.set_item("weights", r.weights.clone())?;
    d.set_item("degrees", r.degrees.clone())?;
    d.set_item("basket", PyBasket(r.basket.clone()))?;
    d.set_item("sigma", r.sigma)?;
    Ok(d)
}

fn read_catalog(path: Option<PathBuf>) -> PyResult<Vec<catalog::CatalogRow>> {
    let text = match path {
        Some(p) => std::fs::read_to_string(&p).map_err(|e| PyOSError::new_err(format!("{}: {e}", p.display())))?,
        None => catalog::EMBEDDED_CATALOG.to_string(),
    };
    load_catalog(&text).map_err(value_error)
}

/// Catalog rows, from `path` or the embedded table.
#[pyfunction]
#[pyo3(signature = (path = None))]
fn load_table<'py>(py: Python<'py>, path: Option<PathBuf>) -> PyResult<Bound<'py, PyList>> {
    let rows = read_catalog(path)?;
    let items = rows.iter().map(|r| row_dict(py, r)).collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

/// `(name, passed, report)` for every catalog row.
#[pyfunction]
#[pyo3(signature = (path = None))]
fn verify_table(path: Option<PathBuf>) -> PyResult<Vec<(String, bool, String)>> {
    Ok(read_catalog(path)?
        .iter()
        .map(|r| {
            let report = verify_row(r);
            (report.name.clone(), report.passed(), report.to_string())
        })
        .collect())
}

fn families<'py>(py: Python<'py>, fams: &[search::K3Family]) -> PyResult<Bound<'py, PyList>> {
    let items = fams
        .iter()
        .map(|f| row_dict(py, &f.to_row()))
        .collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

/// K3 hypersurfaces with all weights at most `max_weight`.
#[pyfunction]
#[pyo3(signature = (max_weight = search::DEFAULT_MAX_WEIGHT, jobs = 1, target = None))]
fn search_hypersurfaces<'py>(
    py: Python<'py>,
    max_weight: u64,
    jobs: usize,
    target: Option<i64>,
) -> PyResult<Bound<'py, PyList>> {
    let found = py.detach(|| match target {
        Some(t) => search::find_signature(t, max_weight, jobs),
        None => search::enumerate_k3_hypersurfaces(max_weight, jobs),
    });
    families(py, &found)
}

/// `(bound, checked_up_to, families)` once the family count stops growing.
#[pyfunction]
#[pyo3(signature = (start = search::DEFAULT_MAX_WEIGHT, jobs = 1))]
fn stabilize<'py>(py: Python<'py>, start: u64, jobs: usize) -> PyResult<(u64, u64, Bound<'py, PyList>)> {
    let s = py.detach(|| search::stabilize(start, search::STABILIZE_STEP, jobs));
    Ok((s.max_weight, s.checked_up_to, families(py, &s.families)?))
}

/// `(basket, sigma)` for every basket with total rank at most the bound.
#[pyfunction]
fn enumerate_baskets(max_total_d: u64) -> Vec<(PyBasket, i64)> {
    search::enumerate_baskets(max_total_d)
        .into_iter()
        .map(|(b, s)| (PyBasket(b), s))
        .collect()
}

#[pymodule]
fn k3sig_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAdeType>()?;
    m.add_class::<PyBasket>()?;
    m.add_function(wrap_pyfunction!(signature, m)?)?;
    m.add_function(wrap_pyfunction!(well_formed, m)?)?;
    m.add_function(wrap_pyfunction!(quasismooth, m)?)?;
    m.add_function(wrap_pyfunction!(basket, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_k3, m)?)?;
    m.add_function(wrap_pyfunction!(bsy_check, m)?)?;
    m.add_function(wrap_pyfunction!(load_table, m)?)?;
    m.add_function(wrap_pyfunction!(verify_table, m)?)?;
    m.add_function(wrap_pyfunction!(search_hypersurfaces, m)?)?;
    m.add_function(wrap_pyfunction!(stabilize, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_baskets, m)?)?;
    Ok(())
}

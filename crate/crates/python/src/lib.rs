//! Python bindings for `kroncoeff`.
//!
//! Partition arguments accept a `Partition`, a sequence of ints, or the
//! `"p1,p2,..."` text form. Results are Python ints of arbitrary size.

use num_bigint::{BigInt, BigUint};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use kroncoeff::contingency::{count_tables as count_tables_rs, Marginals};
use kroncoeff::hooks::{self, OrderMode};
use kroncoeff::kron::{self as kr, AutoConfig, Method, ReductionOutcome};
use kroncoeff::{characters, lr, verify, Error, Partition};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::InvariantViolation(_) | Error::LimitExceeded(_) | Error::Io(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// An integer partition with weakly decreasing positive parts.
#[pyclass(
    name = "Partition",
    module = "pykroncoeff",
    frozen,
    eq,
    hash,
    skip_from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPartition {
    inner: Partition,
}

#[pymethods]
impl PyPartition {
    #[new]
    #[pyo3(signature = (parts = Vec::new()))]
    fn new(parts: Vec<usize>) -> PyResult<Self> {
        Partition::new(parts)
            .map(|inner| PyPartition { inner })
            .map_err(to_py)
    }

    /// Parses `"p1,p2,..."`; the empty string is the empty partition.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse()
            .map(|inner| PyPartition { inner })
            .map_err(to_py)
    }

    #[getter]
    fn parts(&self) -> Vec<usize> {
        self.inner.parts().to_vec()
    }

    fn size(&self) -> usize {
        self.inner.size()
    }

    fn length(&self) -> usize {
        self.inner.length()
    }

    fn conjugate(&self) -> Self {
        PyPartition {
            inner: self.inner.conjugate(),
        }
    }

    fn __len__(&self) -> usize {
        self.inner.length()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Partition({:?})", self.inner.parts())
    }
}

struct PartArg(Partition);

impl<'a, 'py> FromPyObject<'a, 'py> for PartArg {
    type Error = PyErr;

    fn extract(obj: Borrowed<'a, 'py, PyAny>) -> PyResult<Self> {
        if let Ok(p) = obj.cast::<PyPartition>() {
            return Ok(PartArg(p.get().inner.clone()));
        }
        if let Ok(text) = obj.extract::<String>() {
            return text.parse().map(PartArg).map_err(to_py);
        }
        let parts: Vec<usize> = obj.extract()?;
        Partition::new(parts).map(PartArg).map_err(to_py)
    }
}

/// A tableau with barred (`"3b"`) and unbarred entries.
#[pyclass(
    name = "BarredTableau",
    module = "pykroncoeff",
    frozen,
    eq,
    skip_from_py_object
)]
#[derive(Clone, PartialEq)]
struct PyBarredTableau {
    inner: hooks::BarredTableau,
}

fn mode(natural: bool) -> OrderMode {
    if natural {
        OrderMode::Natural
    } else {
        OrderMode::SmallBarred
    }
}

#[pymethods]
impl PyBarredTableau {
    /// Parses rows separated by `/`, e.g. `"1b 1 2 / 2"`.
    #[new]
    #[pyo3(signature = (text, natural = false))]
    fn new(text: &str, natural: bool) -> PyResult<Self> {
        hooks::BarredTableau::parse(text, mode(natural))
            .map(|inner| PyBarredTableau { inner })
            .map_err(to_py)
    }

    #[getter]
    fn natural(&self) -> bool {
        self.inner.mode() == OrderMode::Natural
    }

    fn shape(&self) -> PyPartition {
        PyPartition {
            inner: self.inner.shape(),
        }
    }

    fn content(&self) -> Vec<usize> {
        self.inner.content()
    }

    fn barred_count(&self) -> usize {
        self.inner.barred_count()
    }

    fn is_valid(&self) -> bool {
        self.inner.is_valid()
    }

    fn reading_word(&self) -> PyResult<Vec<usize>> {
        self.inner.reading_word().map_err(to_py)
    }

    fn switch(&self) -> PyResult<Self> {
        self.inner
            .switch()
            .map(|inner| PyBarredTableau { inner })
            .map_err(to_py)
    }

    fn switch_naive(&self) -> PyResult<Self> {
        self.inner
            .switch_naive()
            .map(|inner| PyBarredTableau { inner })
            .map_err(to_py)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "BarredTableau({:?}, natural={})",
            self.inner.to_string(),
            self.natural()
        )
    }
}

fn parse_method(method: &str) -> PyResult<Method> {
    method.parse().map_err(to_py)
}

/// Kronecker coefficient g(lam, mu, nu); method is "auto", "tables" or "oracle".
#[pyfunction]
#[pyo3(signature = (lam, mu, nu, method = "auto"))]
fn kron(py: Python<'_>, lam: PartArg, mu: PartArg, nu: PartArg, method: &str) -> PyResult<BigUint> {
    let method = parse_method(method)?;
    py.detach(|| kr::compute(&lam.0, &mu.0, &nu.0, method))
        .map_err(to_py)
}

/// Like `kron`, also returning a description of the evaluation route.
#[pyfunction]
#[pyo3(signature = (lam, mu, nu, method = "auto"))]
fn kron_traced(
    py: Python<'_>,
    lam: PartArg,
    mu: PartArg,
    nu: PartArg,
    method: &str,
) -> PyResult<(BigUint, String)> {
    let method = parse_method(method)?;
    let eval = py
        .detach(|| kr::compute_traced(&lam.0, &mu.0, &nu.0, method, &AutoConfig::default()))
        .map_err(to_py)?;
    Ok((eval.value, eval.route))
}

/// `(pos, neg)` with `g = pos - neg`, both counts of contingency arrays.
#[pyfunction]
fn gapp(py: Python<'_>, lam: PartArg, mu: PartArg, nu: PartArg) -> PyResult<(BigUint, BigUint)> {
    let pair = py
        .detach(|| kr::gapp_decomposition(&lam.0, &mu.0, &nu.0))
        .map_err(to_py)?;
    Ok((pair.pos, pair.neg))
}

/// Reduces a triple. Returns a dict with `zero` set, and either the row
/// certifying vanishing or the reduced triple with its certificate.
#[pyfunction]
fn reduce<'py>(
    py: Python<'py>,
    lam: PartArg,
    mu: PartArg,
    nu: PartArg,
) -> PyResult<Bound<'py, PyDict>> {
    let outcome = kr::reduce(&lam.0, &mu.0, &nu.0).map_err(to_py)?;
    let d = PyDict::new(py);
    match outcome {
        ReductionOutcome::ProvablyZero { row, t, .. } => {
            d.set_item("zero", true)?;
            d.set_item("row", row)?;
            d.set_item("t", t)?;
        }
        ReductionOutcome::Reduced(r) => {
            d.set_item("zero", false)?;
            d.set_item("t", r.map.t())?;
            d.set_item("ell", r.map.ell())?;
            d.set_item("index_set", r.map.index_set().to_vec())?;
            d.set_item(
                "omega",
                PyPartition {
                    inner: r.map.omega().clone(),
                },
            )?;
            d.set_item(
                "rho",
                PyPartition {
                    inner: r.map.rho().clone(),
                },
            )?;
            d.set_item("lam", PyPartition { inner: r.lambda })?;
            d.set_item("mu", PyPartition { inner: r.mu })?;
            d.set_item("nu", PyPartition { inner: r.nu })?;
        }
    }
    Ok(d)
}

/// Character value chi^lam at cycle type nu.
#[pyfunction]
fn chi(py: Python<'_>, lam: PartArg, nu: PartArg) -> PyResult<BigInt> {
    py.detach(|| characters::chi(&lam.0, &nu.0)).map_err(to_py)
}

/// chi^{(n-k, k)} at cycle type nu by the subset-sum formula.
#[pyfunction]
fn chi_two_row(n: usize, k: usize, nu: PartArg) -> PyResult<BigInt> {
    characters::chi_two_row(n, k, &nu.0).map_err(to_py)
}

/// g(lam, mu, (n-k, 1^k)) by counting barred tableaux.
#[pyfunction]
fn hook_kron(py: Python<'_>, lam: PartArg, mu: PartArg, k: usize) -> PyResult<BigUint> {
    py.detach(|| hooks::count_hook_kron(&lam.0, &mu.0, k))
        .map_err(to_py)
}

/// The tableaux counted by `hook_kron`.
#[pyfunction]
fn hook_tableaux(lam: PartArg, mu: PartArg, k: usize) -> PyResult<Vec<PyBarredTableau>> {
    let (_, accepted) = hooks::hook_kron_traced(&lam.0, &mu.0, k).map_err(to_py)?;
    Ok(accepted
        .into_iter()
        .map(|a| PyBarredTableau { inner: a.tableau })
        .collect())
}

#[pyfunction]
fn is_ballot(word: Vec<usize>) -> bool {
    hooks::is_ballot(&word)
}

/// Littlewood-Richardson coefficient c^lam_{mu,nu}; method is "direct",
/// "reduction" or "embedding".
#[pyfunction]
#[pyo3(signature = (lam, mu, nu, method = "direct"))]
fn lr_coefficient(
    py: Python<'_>,
    lam: PartArg,
    mu: PartArg,
    nu: PartArg,
    method: &str,
) -> PyResult<BigUint> {
    let (l, m, v) = (&lam.0, &mu.0, &nu.0);
    match method {
        "direct" => Ok(lr::lr_coefficient(l, m, v)),
        "reduction" => py.detach(|| lr::lr_via_reduction(l, m, v)).map_err(to_py),
        "embedding" => py
            .detach(|| lr::murnaghan_embedding(l, m, v, lr::embedding_size(l, m, v)))
            .map_err(to_py),
        other => Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    }
}

#[pyfunction]
fn pieri_expand(strip: usize, pi: PartArg) -> Vec<PyPartition> {
    lr::pieri_expand(strip, &pi.0)
        .into_iter()
        .map(|inner| PyPartition { inner })
        .collect()
}

/// Reduced Kronecker coefficient, evaluated at its stable size.
#[pyfunction]
fn reduced_kron(py: Python<'_>, lam: PartArg, mu: PartArg, nu: PartArg) -> PyResult<BigUint> {
    py.detach(|| kr::reduced_kron(&lam.0, &mu.0, &nu.0))
        .map_err(to_py)
}

/// Number of three-way arrays of nonnegative integers with the given
/// marginals; shorter marginals are padded with zeros.
#[pyfunction]
fn count_tables(py: Python<'_>, a: Vec<i64>, b: Vec<i64>, c: Vec<i64>) -> PyResult<BigUint> {
    let len = a.len().max(b.len()).max(c.len());
    let pad = |mut v: Vec<i64>| {
        v.resize(len, 0);
        v
    };
    let m = Marginals::new(pad(a), pad(b), pad(c)).map_err(to_py)?;
    Ok(py.detach(|| count_tables_rs(&m)))
}

/// All partitions of n in decreasing lexicographic order.
#[pyfunction]
#[pyo3(signature = (n, max_length = None, max_part = None))]
fn partitions(n: usize, max_length: Option<usize>, max_part: Option<usize>) -> Vec<PyPartition> {
    kroncoeff::partitions_of(n, max_length, max_part)
        .map(|inner| PyPartition { inner })
        .collect()
}

/// Runs the consistency suites; returns `(name, cases, failure or None)`.
#[pyfunction]
fn run_verify(py: Python<'_>, max_n: usize) -> PyResult<Vec<(String, u64, Option<String>)>> {
    let reports = py.detach(|| verify::run(max_n, |_| {})).map_err(to_py)?;
    Ok(reports
        .into_iter()
        .map(|r| (r.name.to_string(), r.cases, r.failure))
        .collect())
}

#[pymodule]
fn pykroncoeff(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPartition>()?;
    m.add_class::<PyBarredTableau>()?;
    m.add_function(wrap_pyfunction!(kron, m)?)?;
    m.add_function(wrap_pyfunction!(kron_traced, m)?)?;
    m.add_function(wrap_pyfunction!(gapp, m)?)?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(chi, m)?)?;
    m.add_function(wrap_pyfunction!(chi_two_row, m)?)?;
    m.add_function(wrap_pyfunction!(hook_kron, m)?)?;
    m.add_function(wrap_pyfunction!(hook_tableaux, m)?)?;
    m.add_function(wrap_pyfunction!(is_ballot, m)?)?;
    m.add_function(wrap_pyfunction!(lr_coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(pieri_expand, m)?)?;
    m.add_function(wrap_pyfunction!(reduced_kron, m)?)?;
    m.add_function(wrap_pyfunction!(count_tables, m)?)?;
    m.add_function(wrap_pyfunction!(partitions, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    Ok(())
}

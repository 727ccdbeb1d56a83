use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use num_bigint::BigInt;
use pyo3::types::{PyBool, PyBytes, PyDict, PyInt, PyList, PyTuple};

use cmreg::bounds::{big_to_json, ideal_bounds as ideal_bound_values, multiplicity_bounds as multiplicity_values};
use cmreg::format::{parse_file, serialize};
use cmreg::invariants::{hilbert_data, module_invariants, regularity};
use cmreg::verify::{audit, mayr_meyer, random_module, AuditOptions, RandomParams};
use cmreg::{Error, GradedPresentation};

fn err(e: Error) -> PyErr {
    match e {
        Error::Unsupported(_) | Error::NoFiniteColon(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Builds native Python objects. Integers too long for `i64` go through
/// `int.from_bytes`, which has no digit limit.
fn to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    use serde_json::Value;
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => PyBool::new(py, *b).to_owned().into_any(),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.into_any()
            } else if let Ok(big) = n.to_string().parse::<BigInt>() {
                let bytes = PyBytes::new(py, &big.to_signed_bytes_le());
                let kwargs = PyDict::new(py);
                kwargs.set_item("signed", true)?;
                py.get_type::<PyInt>()
                    .call_method("from_bytes", (bytes, "little"), Some(&kwargs))?
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any()
            }
        }
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for x in items {
                list.append(to_py(py, x)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, x) in map {
                dict.set_item(k, to_py(py, x)?)?;
            }
            dict.into_any()
        }
    })
}

/// A finitely presented graded module.
#[pyclass(frozen, name = "Module", module = "pycmreg")]
struct PyModule_ {
    inner: GradedPresentation,
}

#[pymethods]
impl PyModule_ {
    /// Parses the text presentation format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyModule_ {
            inner: parse_file(text).map_err(err)?,
        })
    }

    #[staticmethod]
    #[pyo3(signature = (seed, p_vars=3, n=2, m=3, max_a=1, max_b=3, density=0.7, characteristic=101))]
    #[allow(clippy::too_many_arguments)]
    fn random(
        seed: u64,
        p_vars: usize,
        n: usize,
        m: usize,
        max_a: i64,
        max_b: i64,
        density: f64,
        characteristic: u64,
    ) -> PyResult<Self> {
        let params = RandomParams {
            p_vars,
            characteristic,
            n,
            m,
            max_a,
            max_b,
            density,
        };
        Ok(PyModule_ {
            inner: random_module(seed, &params).map_err(err)?,
        })
    }

    #[staticmethod]
    fn mayr_meyer(level: usize) -> PyResult<Self> {
        Ok(PyModule_ {
            inner: mayr_meyer(level).map_err(err)?,
        })
    }

    fn to_text(&self) -> String {
        serialize(&self.inner)
    }

    #[getter]
    fn row_twists(&self) -> Vec<i64> {
        self.inner.row_twists().to_vec()
    }

    #[getter]
    fn column_degrees(&self) -> Vec<i64> {
        self.inner.column_degrees().to_vec()
    }

    fn regularity(&self, py: Python<'_>) -> PyResult<i64> {
        py.detach(|| regularity(&self.inner)).map_err(err)
    }

    /// `(i, j, b_ij)` triples of the minimal resolution.
    fn betti(&self, py: Python<'_>) -> PyResult<Vec<(usize, i64, usize)>> {
        let inv = py.detach(|| module_invariants(&self.inner)).map_err(err)?;
        Ok(inv.betti.entries().iter().map(|(&(i, j), &v)| (i, j, v)).collect())
    }

    fn hilbert<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let h = py.detach(|| hilbert_data(&self.inner)).map_err(err)?;
        to_py(py, &serde_json::to_value(&h).expect("json"))
    }

    /// Full bound audit as a dict with keys `instance`, `computed`, `bounds`,
    /// `verdicts` and `values`.
    #[pyo3(signature = (big_b=None, max_l=3))]
    fn audit<'py>(&self, py: Python<'py>, big_b: Option<i64>, max_l: usize) -> PyResult<Bound<'py, PyAny>> {
        let opts = AuditOptions {
            big_b,
            max_l,
            ..AuditOptions::default()
        };
        let r = py.detach(|| audit(&self.inner, &opts)).map_err(err)?;
        to_py(py, &r.to_json())
    }

    fn __repr__(&self) -> String {
        format!(
            "Module(n={}, m={}, a={:?}, b={:?})",
            self.inner.n(),
            self.inner.m(),
            self.inner.row_twists(),
            self.inner.column_degrees()
        )
    }
}

/// Ideal-case bounds for `p` variables and generators of degree at most `big_b`.
#[pyfunction]
#[pyo3(signature = (p, big_b, codim=None))]
fn ideal_bounds<'py>(py: Python<'py>, p: usize, big_b: i64, codim: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
    let ib = ideal_bound_values(p, big_b, codim);
    let map: serde_json::Map<String, serde_json::Value> = ib
        .entries()
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.map_or(serde_json::Value::Null, big_to_json)))
        .collect();
    to_py(py, &serde_json::Value::Object(map))
}

/// The three multiplicity forms for generator degrees `a`, relation degrees
/// `b` and codimension `c`.
#[pyfunction]
#[pyo3(signature = (a, b, c, deg_r=1))]
fn multiplicity_bounds<'py>(py: Python<'py>, a: Vec<i64>, b: Vec<i64>, c: usize, deg_r: i64) -> PyResult<Bound<'py, PyAny>> {
    let mut b = b;
    b.sort_unstable_by(|x, y| y.cmp(x));
    let mb = multiplicity_values(&a, &b, c, deg_r).map_err(err)?;
    to_py(py, &serde_json::to_value(&mb).expect("json"))
}

/// Runs the command line with `args` (without the program name); returns
/// `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli<'py>(py: Python<'py>, args: Vec<String>) -> PyResult<Bound<'py, PyTuple>> {
    let (code, out, errs) = py.detach(|| {
        let mut out = Vec::new();
        let mut errs = Vec::new();
        let full = std::iter::once("cmreg".to_string()).chain(args);
        let code = cmreg::cli::run(full, &mut out, &mut errs);
        (code, out, errs)
    });
    PyTuple::new(
        py,
        [
            code.into_pyobject(py)?.into_any(),
            String::from_utf8_lossy(&out).into_pyobject(py)?.into_any(),
            String::from_utf8_lossy(&errs).into_pyobject(py)?.into_any(),
        ],
    )
}

#[pymodule]
fn pycmreg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyModule_>()?;
    m.add_function(wrap_pyfunction!(ideal_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(multiplicity_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}

use std::str::FromStr;

use boltzmann::cayley::{cayley_coefficients, cayley_determinant, closed_form_condition};
use boltzmann::geometry::{caustics, fomenko_graph, singular_orbit_description, verify_caustic_along_orbit};
use boltzmann::kepler::{WallRoot, WallState};
use boltzmann::search::{find_periodic_parameters, verify_poncelet, Slice};
use boltzmann::{Error, QuadExt, Scalar, SystemParams};
use pyo3::create_exception;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

create_exception!(boltzmann_billiard, BoltzmannError, PyValueError);
create_exception!(boltzmann_billiard, NumericError, PyArithmeticError);

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::FieldMismatch(..)
        | Error::DivisionByZero
        | Error::NotASquare
        | Error::ZeroConstantTerm
        | Error::RadicandNotInField
        | Error::AdmissibleSampleNotFound { .. }
        | Error::DegenerateTangencyGeometry(_) => NumericError::new_err(e.to_string()),
        _ => BoltzmannError::new_err(e.to_string()),
    }
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A number given as `"p/q"` text is exact; floats and ints are floating.
#[derive(FromPyObject)]
enum Num {
    Text(String),
    Float(f64),
}

impl Num {
    fn exact(&self) -> Option<QuadExt> {
        match self {
            Num::Text(s) => QuadExt::from_str(s).ok(),
            Num::Float(_) => None,
        }
    }

    fn value(&self) -> PyResult<f64> {
        match self {
            Num::Float(v) => Ok(*v),
            Num::Text(s) => match QuadExt::from_str(s) {
                Ok(q) => Ok(q.to_f64()),
                Err(_) => s.trim().parse().map_err(|_| PyValueError::new_err(format!("not a number: {s}"))),
            },
        }
    }
}

/// Level-set parameters `(E, D)` in floating point.
#[pyclass(name = "Params", frozen, from_py_object)]
#[derive(Clone)]
struct PyParams {
    inner: SystemParams<f64>,
}

#[pymethods]
impl PyParams {
    #[new]
    fn new(energy: Num, second_integral: Num) -> PyResult<Self> {
        Ok(PyParams {
            inner: SystemParams::new(energy.value()?, second_integral.value()?),
        })
    }

    #[getter]
    fn energy(&self) -> f64 {
        *self.inner.energy()
    }

    #[getter]
    fn second_integral(&self) -> f64 {
        *self.inner.second_integral()
    }

    #[getter]
    fn r_squared(&self) -> f64 {
        *self.inner.r_squared()
    }

    #[getter]
    fn r(&self) -> Option<f64> {
        self.inner.r().copied()
    }

    fn is_regular(&self) -> bool {
        self.inner.is_regular()
    }

    fn in_region(&self) -> bool {
        self.inner.in_region()
    }

    /// `(tag, detail)`.
    fn classify(&self) -> (String, String) {
        let c = self.inner.classify();
        (format!("{:?}", c.tag), c.detail.to_string())
    }

    fn __repr__(&self) -> String {
        format!("Params(E={}, D={})", self.inner.energy(), self.inner.second_integral())
    }
}

/// A wall state `(x, A1, A2)`.
#[pyclass(name = "WallState", frozen, from_py_object)]
#[derive(Clone)]
struct PyWallState {
    inner: WallState<f64>,
}

#[pymethods]
impl PyWallState {
    #[new]
    fn new(x: f64, a1: f64, a2: f64) -> Self {
        PyWallState {
            inner: WallState::new(x, a1, a2),
        }
    }

    #[staticmethod]
    #[pyo3(signature = (params, theta, plus = true))]
    fn from_circle_angle(params: &PyParams, theta: f64, plus: bool) -> PyResult<Self> {
        let root = if plus { WallRoot::Plus } else { WallRoot::Minus };
        WallState::from_circle_angle(&params.inner, theta, root)
            .map(|inner| PyWallState { inner })
            .map_err(to_py_err)
    }

    #[getter]
    fn x(&self) -> f64 {
        self.inner.x
    }

    #[getter]
    fn a1(&self) -> f64 {
        self.inner.a1
    }

    #[getter]
    fn a2(&self) -> f64 {
        self.inner.a2
    }

    fn step(&self, params: &PyParams) -> PyResult<Self> {
        self.inner.step(&params.inner).map(|inner| PyWallState { inner }).map_err(to_py_err)
    }

    fn involution_i(&self, params: &PyParams) -> PyResult<Self> {
        self.inner
            .involution_i(&params.inner)
            .map(|inner| PyWallState { inner })
            .map_err(to_py_err)
    }

    fn involution_j(&self, params: &PyParams) -> Self {
        PyWallState {
            inner: self.inner.involution_j(&params.inner),
        }
    }

    /// The start state and `steps` images.
    fn orbit(&self, params: &PyParams, steps: usize) -> PyResult<Vec<Self>> {
        let states = self.inner.orbit(&params.inner, steps).map_err(to_py_err)?;
        Ok(states.into_iter().map(|inner| PyWallState { inner }).collect())
    }

    fn max_residual(&self, params: &PyParams) -> f64 {
        self.inner.max_residual(&params.inner)
    }

    fn second_focus(&self, params: &PyParams) -> (f64, f64) {
        let [a, b] = self.inner.second_focus(&params.inner);
        (a, b)
    }

    fn distance(&self, other: &PyWallState) -> f64 {
        self.inner.distance(&other.inner)
    }

    fn __repr__(&self) -> String {
        format!("WallState(x={}, a1={}, a2={})", self.inner.x, self.inner.a1, self.inner.a2)
    }
}

fn exact_pair(e: &Num, d: &Num) -> Option<SystemParams<QuadExt>> {
    Some(SystemParams::new(e.exact()?, d.exact()?))
}

fn float_pair(e: &Num, d: &Num) -> PyResult<SystemParams<f64>> {
    Ok(SystemParams::new(e.value()?, d.value()?))
}

/// `B_0 .. B_order`. Exact `"p/q"` input returns strings.
#[pyfunction(name = "cayley_coefficients")]
fn cayley_coefficients_py<'py>(py: Python<'py>, energy: Num, second_integral: Num, order: usize) -> PyResult<Bound<'py, PyAny>> {
    match exact_pair(&energy, &second_integral) {
        Some(p) => {
            let b = cayley_coefficients(&p, order).map_err(to_py_err)?;
            to_py(py, &b.iter().map(|v| v.to_string()).collect::<Vec<_>>())
        }
        None => to_py(py, &cayley_coefficients(&float_pair(&energy, &second_integral)?, order).map_err(to_py_err)?),
    }
}

/// The period-`n` determinant; a string for exact input.
#[pyfunction(name = "cayley_determinant")]
fn cayley_determinant_py<'py>(py: Python<'py>, energy: Num, second_integral: Num, n: usize) -> PyResult<Bound<'py, PyAny>> {
    match exact_pair(&energy, &second_integral) {
        Some(p) => to_py(py, &cayley_determinant(&p, n).map_err(to_py_err)?.to_string()),
        None => to_py(py, &cayley_determinant(&float_pair(&energy, &second_integral)?, n).map_err(to_py_err)?),
    }
}

#[pyfunction(name = "closed_form_condition")]
fn closed_form_condition_py<'py>(py: Python<'py>, n: usize, energy: Num, second_integral: Num) -> PyResult<Bound<'py, PyAny>> {
    match exact_pair(&energy, &second_integral) {
        Some(p) => to_py(py, &closed_form_condition(n, &p).map_err(to_py_err)?.to_string()),
        None => to_py(py, &closed_form_condition(n, &float_pair(&energy, &second_integral)?).map_err(to_py_err)?),
    }
}

/// `(plus, minus)` caustics as dicts.
#[pyfunction(name = "caustics")]
fn caustics_py<'py>(py: Python<'py>, params: &PyParams) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &caustics(&params.inner).map_err(to_py_err)?)
}

#[pyfunction(name = "verify_caustic_along_orbit")]
fn verify_caustic_along_orbit_py<'py>(
    py: Python<'py>,
    params: &PyParams,
    start: &PyWallState,
    steps: usize,
) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &verify_caustic_along_orbit(&params.inner, &start.inner, steps).map_err(to_py_err)?)
}

/// Roots of the period-`n` determinant along `E = value` (`fixed="E"`)
/// or `D = value` (`fixed="D"`).
#[pyfunction(name = "find_periodic_parameters")]
fn find_periodic_parameters_py<'py>(
    py: Python<'py>,
    n: usize,
    fixed: &str,
    value: f64,
    lo: f64,
    hi: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let slice = match fixed {
        "E" => Slice::FixedE(value),
        "D" => Slice::FixedD(value),
        other => return Err(PyValueError::new_err(format!("fixed must be \"E\" or \"D\", got {other:?}"))),
    };
    to_py(py, &find_periodic_parameters(n, slice, [lo, hi]).map_err(to_py_err)?)
}

#[pyfunction(name = "verify_poncelet")]
#[pyo3(signature = (params, n, starts = 20, seed = 0))]
fn verify_poncelet_py<'py>(py: Python<'py>, params: &PyParams, n: usize, starts: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &verify_poncelet(&params.inner, n, starts, seed).map_err(to_py_err)?)
}

#[pyfunction(name = "fomenko_graph")]
fn fomenko_graph_py<'py>(py: Python<'py>, energy: f64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &fomenko_graph(energy).map_err(to_py_err)?)
}

#[pyfunction(name = "singular_orbit_description")]
fn singular_orbit_description_py<'py>(py: Python<'py>, energy: Num, second_integral: Num) -> PyResult<Bound<'py, PyAny>> {
    let d = match exact_pair(&energy, &second_integral) {
        Some(p) => singular_orbit_description(&p),
        None => singular_orbit_description(&float_pair(&energy, &second_integral)?),
    };
    to_py(py, &d.map_err(to_py_err)?)
}

#[pymodule]
fn boltzmann_billiard(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyParams>()?;
    m.add_class::<PyWallState>()?;
    m.add("BoltzmannError", m.py().get_type::<BoltzmannError>())?;
    m.add("NumericError", m.py().get_type::<NumericError>())?;
    m.add_function(wrap_pyfunction!(cayley_coefficients_py, m)?)?;
    m.add_function(wrap_pyfunction!(cayley_determinant_py, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_condition_py, m)?)?;
    m.add_function(wrap_pyfunction!(caustics_py, m)?)?;
    m.add_function(wrap_pyfunction!(verify_caustic_along_orbit_py, m)?)?;
    m.add_function(wrap_pyfunction!(find_periodic_parameters_py, m)?)?;
    m.add_function(wrap_pyfunction!(verify_poncelet_py, m)?)?;
    m.add_function(wrap_pyfunction!(fomenko_graph_py, m)?)?;
    m.add_function(wrap_pyfunction!(singular_orbit_description_py, m)?)?;
    Ok(())
}

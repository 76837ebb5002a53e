//! Python bindings: `import pyexpspline`.

use expspline::admissibility::DEFAULT_SCAN_POINTS;
use expspline::fundamental::{DEFAULT_SYMBOL_GRID, DEFAULT_WINDOW};
use expspline::{ComplexValue, Error, QuadratureSpec, SeriesTruncation};
use pyo3::create_exception;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

create_exception!(
    pyexpspline,
    NotAdmissibleError,
    PyValueError,
    "Parameters fail the admissibility test."
);
create_exception!(
    pyexpspline,
    PrecisionError,
    PyArithmeticError,
    "A numerical tolerance could not be met."
);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::NotAdmissible(_) => NotAdmissibleError::new_err(e.to_string()),
        Error::Precision(_) | Error::NearZeroDenominator { .. } | Error::SymbolZero { .. } => {
            PrecisionError::new_err(e.to_string())
        }
        other => PyValueError::new_err(other.to_string()),
    }
}

fn params(a: f64, sigma: f64) -> PyResult<expspline::SplineParams> {
    expspline::SplineParams::new(a, sigma).map_err(to_py)
}

/// σ₀(a), the smallest order allowed by the first admissibility condition.
#[pyfunction]
fn sigma_zero(a: f64) -> PyResult<f64> {
    expspline::sigma_zero(a).map_err(to_py)
}

/// Hurwitz zeta ζ(σ, q) for complex q with Re q ≥ 0.
#[pyfunction]
fn hurwitz_zeta(sigma: f64, q: ComplexValue) -> PyResult<ComplexValue> {
    expspline::hurwitz_zeta(sigma, q, &expspline::ZetaConfig::default()).map_err(to_py)
}

#[pyfunction]
fn find_non_admissible_sigma(a: f64, lo: f64, hi: f64) -> PyResult<f64> {
    expspline::find_non_admissible_sigma(a, (lo, hi)).map_err(to_py)
}

/// h(ξ), the Fourier transform of L.
#[pyfunction]
fn integrand_h(a: f64, sigma: f64, xi: f64) -> PyResult<ComplexValue> {
    expspline::integrand_h(params(a, sigma)?, xi).map_err(to_py)
}

/// L(x) by Fourier inversion.
#[pyfunction]
#[pyo3(signature = (a, sigma, x, periods = 1024, nodes_per_period = 64, tail_tol = 1e-4))]
fn eval_l_fourier(
    py: Python<'_>,
    a: f64,
    sigma: f64,
    x: Vec<f64>,
    periods: usize,
    nodes_per_period: usize,
    tail_tol: f64,
) -> PyResult<Vec<f64>> {
    let p = params(a, sigma)?;
    let quad = QuadratureSpec {
        periods,
        nodes_per_period,
        tail_tol,
    };
    py.detach(|| {
        let inv = expspline::FourierInversion::new(p, quad)?;
        x.iter().map(|&t| inv.eval(t)).collect::<expspline::Result<Vec<f64>>>()
    })
    .map_err(to_py)
}

#[pyclass(name = "AdmissibilityReport", frozen)]
struct PyAdmissibilityReport(expspline::AdmissibilityReport);

#[pymethods]
impl PyAdmissibilityReport {
    #[getter]
    fn admissible(&self) -> bool {
        self.0.admissible
    }
    #[getter]
    fn sigma0(&self) -> f64 {
        self.0.sigma0
    }
    #[getter]
    fn condition1_holds(&self) -> bool {
        self.0.condition1_holds
    }
    #[getter]
    fn condition2_holds(&self) -> bool {
        self.0.condition2_holds
    }
    #[getter]
    fn zeta_star(&self) -> ComplexValue {
        self.0.zeta_star
    }
    #[getter]
    fn lhs_condition2(&self) -> f64 {
        self.0.lhs_condition2
    }
    #[getter]
    fn min_abs_z_scan(&self) -> f64 {
        self.0.min_abs_z_scan
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        format!(
            "AdmissibilityReport(a={}, sigma={}, admissible={})",
            self.0.params.a(),
            self.0.params.sigma(),
            self.0.admissible
        )
    }
}

#[pyfunction]
#[pyo3(signature = (a, sigma, scan_points = DEFAULT_SCAN_POINTS))]
fn check_admissibility(py: Python<'_>, a: f64, sigma: f64, scan_points: usize) -> PyResult<PyAdmissibilityReport> {
    let p = params(a, sigma)?;
    py.detach(|| expspline::check_admissibility(p, scan_points))
        .map(PyAdmissibilityReport)
        .map_err(to_py)
}

/// The exponential B-spline E_a^σ.
#[pyclass(name = "ExpBSpline", frozen)]
struct PyExpBSpline(expspline::ExpBSpline);

#[pymethods]
impl PyExpBSpline {
    #[new]
    fn new(a: f64, sigma: f64) -> PyResult<Self> {
        expspline::ExpBSpline::new(params(a, sigma)?, SeriesTruncation::default())
            .map(Self)
            .map_err(to_py)
    }

    fn __call__(&self, x: f64) -> f64 {
        self.0.eval(x)
    }

    fn eval(&self, x: Vec<f64>) -> Vec<f64> {
        x.iter().map(|&t| self.0.eval(t)).collect()
    }

    /// Ê(ξ).
    fn fourier(&self, xi: f64) -> ComplexValue {
        expspline::fourier_transform(self.0.params(), xi)
    }
}

/// The fundamental spline L_a^σ in its coefficient-series form.
#[pyclass(name = "FundamentalSpline", frozen)]
struct PyFundamentalSpline(expspline::FundamentalSplineModel);

#[pymethods]
impl PyFundamentalSpline {
    #[new]
    #[pyo3(signature = (a, sigma, grid_size = DEFAULT_SYMBOL_GRID, window = DEFAULT_WINDOW.1))]
    fn new(py: Python<'_>, a: f64, sigma: f64, grid_size: usize, window: i64) -> PyResult<Self> {
        let p = params(a, sigma)?;
        py.detach(|| expspline::compute_coefficients(p, grid_size, (-window, window)))
            .map(Self)
            .map_err(to_py)
    }

    #[getter]
    fn a(&self) -> f64 {
        self.0.params().a()
    }

    #[getter]
    fn sigma(&self) -> f64 {
        self.0.params().sigma()
    }

    #[getter]
    fn reliable_range(&self) -> (f64, f64) {
        self.0.reliable_range()
    }

    fn __call__(&self, x: f64) -> PyResult<f64> {
        self.0.eval(x).map_err(to_py)
    }

    fn eval(&self, x: Vec<f64>) -> PyResult<Vec<f64>> {
        x.iter()
            .map(|&t| self.0.eval(t))
            .collect::<expspline::Result<_>>()
            .map_err(to_py)
    }

    fn coefficients(&self) -> Vec<(i64, f64)> {
        self.0.coefficients().collect()
    }

    fn report(&self) -> PyAdmissibilityReport {
        PyAdmissibilityReport(self.0.report().clone())
    }

    /// Σ f(k) L(t − k) over the given integer samples; returns
    /// (values, max_integer_error, flagged points).
    fn reconstruct(
        &self,
        py: Python<'_>,
        samples: Vec<(i64, f64)>,
        grid: Vec<f64>,
    ) -> PyResult<(Vec<f64>, f64, Vec<f64>)> {
        py.detach(|| {
            let case = expspline::ReconstructionCase::new(&self.0, samples, grid)?;
            let rec = expspline::reconstruct(&case)?;
            let values = rec.curve.real_values().map(<[f64]>::to_vec).unwrap_or_default();
            Ok((values, rec.max_integer_error, rec.flagged))
        })
        .map_err(to_py)
    }

    fn __repr__(&self) -> String {
        let (lo, hi) = self.0.window();
        format!(
            "FundamentalSpline(a={}, sigma={}, window=({lo}, {hi}))",
            self.a(),
            self.sigma()
        )
    }
}

#[pymodule]
fn pyexpspline(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("NotAdmissibleError", m.py().get_type::<NotAdmissibleError>())?;
    m.add("PrecisionError", m.py().get_type::<PrecisionError>())?;
    m.add_class::<PyAdmissibilityReport>()?;
    m.add_class::<PyExpBSpline>()?;
    m.add_class::<PyFundamentalSpline>()?;
    m.add_function(wrap_pyfunction!(sigma_zero, m)?)?;
    m.add_function(wrap_pyfunction!(hurwitz_zeta, m)?)?;
    m.add_function(wrap_pyfunction!(find_non_admissible_sigma, m)?)?;
    m.add_function(wrap_pyfunction!(check_admissibility, m)?)?;
    m.add_function(wrap_pyfunction!(integrand_h, m)?)?;
    m.add_function(wrap_pyfunction!(eval_l_fourier, m)?)?;
    Ok(())
}

//! Python bindings: `import whitham_mi`.

use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use whitham_mi::diagrams::{self, CurveKind, Plane, PointClass, StabilityCurve};
use whitham_mi::dispersion::{nondimensionalize, DimensionalParams};
use whitham_mi::floquet::{self, GrowthConfig, Observation};
use whitham_mi::stability::{self, IndexReport};
use whitham_mi::waves::{self, TravelingWave};
use whitham_mi::{Branch, DispersionModel, Family, Verdict};

create_exception!(whitham_mi, NumericalError, PyRuntimeError);

fn to_py(e: whitham_mi::Error) -> PyErr {
    if e.is_numerical() {
        NumericalError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn parse_branch(s: &str) -> PyResult<Branch> {
    match s {
        "plus" | "+" => Ok(Branch::Plus),
        "minus" | "-" => Ok(Branch::Minus),
        _ => Err(PyValueError::new_err(format!("branch must be 'plus' or 'minus', got {s:?}"))),
    }
}

fn parse_plane(s: &str) -> PyResult<Plane> {
    match s {
        "capillary" => Ok(Plane::CapillaryPlane),
        "vorticity" => Ok(Plane::VorticityPlane),
        _ => Err(PyValueError::new_err(format!("plane must be 'capillary' or 'vorticity', got {s:?}"))),
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Stable => "stable",
        Verdict::Unstable => "unstable",
        Verdict::Boundary => "boundary",
        Verdict::Degenerate => "degenerate",
    }
}

/// A nondimensional dispersion model.
#[pyclass(name = "Model", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyModel(DispersionModel);

#[pymethods]
impl PyModel {
    #[staticmethod]
    fn gravity() -> Self {
        PyModel(DispersionModel::gravity())
    }

    #[staticmethod]
    fn capillary(tau: f64) -> PyResult<Self> {
        DispersionModel::capillary(tau).map(PyModel).map_err(to_py)
    }

    #[staticmethod]
    #[pyo3(signature = (varpi, branch = "plus"))]
    fn vorticity(varpi: f64, branch: &str) -> PyResult<Self> {
        DispersionModel::vorticity(varpi, parse_branch(branch)?).map(PyModel).map_err(to_py)
    }

    /// Builds a model from `g`, depth `d`, surface tension `T` or vorticity `gamma`.
    #[staticmethod]
    #[pyo3(signature = (family, g, d, surface_tension = 0.0, gamma = 0.0, branch = "plus"))]
    fn dimensional(family: &str, g: f64, d: f64, surface_tension: f64, gamma: f64, branch: &str) -> PyResult<Self> {
        let family = match family {
            "gravity" => Family::Gravity,
            "capillary" => Family::CapillaryGravity,
            "vorticity" => Family::ConstantVorticity,
            _ => return Err(PyValueError::new_err(format!("unknown family {family:?}"))),
        };
        let p = DimensionalParams { g, d, surface_tension, gamma };
        nondimensionalize(&p, family, parse_branch(branch)?)
            .map(|n| PyModel(n.model))
            .map_err(to_py)
    }

    #[getter]
    fn family(&self) -> &'static str {
        match self.0.family {
            Family::Gravity => "gravity",
            Family::CapillaryGravity => "capillary",
            Family::ConstantVorticity => "vorticity",
        }
    }

    #[getter]
    fn tau(&self) -> f64 {
        self.0.tau
    }

    #[getter]
    fn varpi(&self) -> f64 {
        self.0.varpi
    }

    #[getter]
    fn branch(&self) -> &'static str {
        match self.0.branch {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        }
    }

    #[getter]
    fn m0(&self) -> f64 {
        self.0.m0()
    }

    fn is_degenerate(&self) -> bool {
        self.0.is_degenerate()
    }

    fn symbol(&self, z: f64) -> PyResult<f64> {
        self.0.symbol(z).map_err(to_py)
    }

    #[pyo3(signature = (z, order = 1))]
    fn symbol_deriv(&self, z: f64, order: u8) -> PyResult<f64> {
        self.0.symbol_deriv(z, order).map_err(to_py)
    }

    fn group_velocity(&self, z: f64) -> PyResult<f64> {
        self.0.group_velocity(z).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        match self.0.family {
            Family::Gravity => "Model.gravity()".into(),
            Family::CapillaryGravity => format!("Model.capillary({})", self.0.tau),
            Family::ConstantVorticity => format!("Model.vorticity({}, {:?})", self.0.varpi, self.branch()),
        }
    }
}

/// A periodic traveling wave, as a cosine series.
#[pyclass(name = "Wave", frozen)]
struct PyWave(TravelingWave);

#[pymethods]
impl PyWave {
    #[getter]
    fn model(&self) -> PyModel {
        PyModel(self.0.model)
    }

    #[getter]
    fn k(&self) -> f64 {
        self.0.k
    }

    #[getter]
    fn a(&self) -> f64 {
        self.0.a
    }

    #[getter]
    fn b(&self) -> f64 {
        self.0.b
    }

    #[getter]
    fn c(&self) -> f64 {
        self.0.c
    }

    #[getter]
    fn cosine_coeffs(&self) -> Vec<f64> {
        self.0.cosine_coeffs.clone()
    }

    #[getter]
    fn refined(&self) -> bool {
        self.0.source == waves::WaveSource::Refined
    }

    fn profile(&self, z: f64) -> f64 {
        self.0.profile(z)
    }

    fn residual(&self) -> f64 {
        waves::residual(&self.0)
    }

    fn galilean_shift(&self, v: f64) -> PyResult<PyWave> {
        waves::galilean_shift(&self.0, v).map(PyWave).map_err(to_py)
    }

    #[pyo3(signature = (n_modes = waves::DEFAULT_MODES, tol = 1e-13))]
    fn refine(&self, n_modes: usize, tol: f64) -> PyResult<PyWave> {
        waves::refine_wave(&self.0, n_modes, tol).map(PyWave).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("Wave(k={}, a={}, c={}, modes={})", self.0.k, self.0.a, self.0.c, self.0.modes())
    }
}

fn report_dict<'py>(py: Python<'py>, r: &IndexReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("z", r.z)?;
    d.set_item("delta_bf", r.delta_bf)?;
    d.set_item("delta_mi", r.delta_mi)?;
    d.set_item("factor_group_curvature", r.factor_group_curvature)?;
    d.set_item("factor_longshort", r.factor_longshort)?;
    d.set_item("factor_second_harmonic", r.factor_second_harmonic)?;
    d.set_item("verdict", verdict_name(r.verdict))?;
    d.set_item("mechanism", r.mechanism.map(|m| m.name()))?;
    Ok(d)
}

fn curve_dict<'py>(py: Python<'py>, c: &StabilityCurve) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("mechanism", c.mechanism.name())?;
    d.set_item("annotation", c.mechanism.is_annotation())?;
    d.set_item("points", c.points.clone())?;
    Ok(d)
}

#[pyfunction]
fn delta_bf(model: &PyModel, z: f64) -> PyResult<f64> {
    stability::delta_bf(&model.0, z).map_err(to_py)
}

/// Index and its factors at `z`, as a dict.
#[pyfunction]
fn delta_mi<'py>(py: Python<'py>, model: &PyModel, z: f64) -> PyResult<Bound<'py, PyDict>> {
    let r = stability::delta_mi(&model.0, z).map_err(to_py)?;
    report_dict(py, &r)
}

/// `[(z, mechanism_name), ...]` sorted by `z`.
#[pyfunction]
#[pyo3(signature = (model, z_lo = 0.01, z_hi = 30.0, n_grid = 30000))]
fn critical_wavenumbers(model: &PyModel, z_lo: f64, z_hi: f64, n_grid: usize) -> PyResult<Vec<(f64, &'static str)>> {
    let pts = stability::critical_wavenumbers(&model.0, z_lo, z_hi, n_grid).map_err(to_py)?;
    Ok(pts.into_iter().map(|p| (p.z, p.mechanism.name())).collect())
}

#[pyfunction]
#[pyo3(signature = (model, k, a, b = 0.0))]
fn expansion_wave(model: &PyModel, k: f64, a: f64, b: f64) -> PyResult<PyWave> {
    waves::expansion_wave(&model.0, k, a, b).map(PyWave).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (model, k, a, n_modes = waves::DEFAULT_MODES, tol = 1e-13))]
fn traveling_wave(model: &PyModel, k: f64, a: f64, n_modes: usize, tol: f64) -> PyResult<PyWave> {
    let seed = waves::expansion_wave(&model.0, k, a, 0.0).map_err(to_py)?;
    waves::refine_wave(&seed, n_modes, tol).map(PyWave).map_err(to_py)
}

/// Eigenvalues of the Bloch operator at `xi`, sorted by imaginary part.
#[pyfunction]
#[pyo3(signature = (wave, xi, n_f = 32, r_origin = None))]
fn bloch_spectrum<'py>(
    py: Python<'py>,
    wave: &PyWave,
    xi: f64,
    n_f: usize,
    r_origin: Option<f64>,
) -> PyResult<Bound<'py, PyDict>> {
    let s = py
        .detach(|| floquet::bloch_spectrum(&wave.0, xi, n_f, r_origin))
        .map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("xi", s.xi)?;
    d.set_item("n_f", s.n_f)?;
    d.set_item("eigenvalues", s.eigenvalues.iter().copied().collect::<Vec<Complex64>>())?;
    d.set_item("r_origin", s.r_origin)?;
    d.set_item("max_real_near_origin", s.max_real_near_origin)?;
    Ok(d)
}

/// Compares the index sign with near-origin Floquet growth.
#[pyfunction]
#[pyo3(signature = (model, k, a, xi_list, n_f = 32, g_thresh = 1e-2, delta_margin = 0.05))]
fn mi_growth_check<'py>(
    py: Python<'py>,
    model: &PyModel,
    k: f64,
    a: f64,
    xi_list: Vec<f64>,
    n_f: usize,
    g_thresh: f64,
    delta_margin: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = GrowthConfig { g_thresh, delta_margin, r_origin: None };
    let m = model.0;
    let g = py
        .detach(|| floquet::mi_growth_check(&m, k, a, &xi_list, n_f, &cfg))
        .map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("k", g.k)?;
    d.set_item("a", g.a)?;
    d.set_item("delta_mi", g.delta_mi)?;
    d.set_item("predicted", verdict_name(g.predicted))?;
    d.set_item(
        "observed",
        match g.observed {
            Observation::Stable => "stable",
            Observation::Unstable => "unstable",
            Observation::Indeterminate => "indeterminate",
        },
    )?;
    d.set_item("agree", g.agree)?;
    d.set_item("max_growth", g.max_growth)?;
    d.set_item("growth_by_xi", g.growth_by_xi)?;
    Ok(d)
}

/// Curves of a stability diagram as a list of dicts.
#[pyfunction]
#[pyo3(signature = (plane = "capillary", x_range = None, y_range = None, resolution = (300, 300)))]
fn stability_diagram<'py>(
    py: Python<'py>,
    plane: &str,
    x_range: Option<(f64, f64)>,
    y_range: Option<(f64, f64)>,
    resolution: (usize, usize),
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let curves = match parse_plane(plane)? {
        Plane::CapillaryPlane => {
            let (x, y) = (
                x_range.unwrap_or(diagrams::CAPILLARY_X_RANGE),
                y_range.unwrap_or(diagrams::CAPILLARY_Y_RANGE),
            );
            py.detach(|| diagrams::capillary_diagram(x, y, resolution))
        }
        Plane::VorticityPlane => {
            let (x, y) = (
                x_range.unwrap_or(diagrams::VORTICITY_X_RANGE),
                y_range.unwrap_or(diagrams::VORTICITY_Y_RANGE),
            );
            py.detach(|| diagrams::vorticity_diagram(x, y, resolution))
        }
    }
    .map_err(to_py)?;
    curves.iter().map(|c| curve_dict(py, c)).collect()
}

/// Crossing points of two curves returned by `stability_diagram`.
#[pyfunction]
fn curve_intersections(a: Vec<(f64, f64)>, b: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    let curve = |points| StabilityCurve {
        plane: Plane::CapillaryPlane,
        mechanism: CurveKind::CriticalTension,
        points,
    };
    diagrams::curve_intersections(&curve(a), &curve(b))
}

/// Verdict at a diagram point: `{"tau", "verdict"}` or `{"plus", "minus"}`.
#[pyfunction]
fn classify_point<'py>(py: Python<'py>, plane: &str, x: f64, y: f64) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    match diagrams::classify_point(parse_plane(plane)?, x, y).map_err(to_py)? {
        PointClass::Capillary { tau, verdict } => {
            d.set_item("tau", tau)?;
            d.set_item("verdict", verdict_name(verdict))?;
        }
        PointClass::Vorticity { plus, minus } => {
            d.set_item("plus", verdict_name(plus))?;
            d.set_item("minus", verdict_name(minus))?;
        }
    }
    Ok(d)
}

#[pymodule]
#[pyo3(name = "whitham_mi")]
fn whitham_mi_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("NumericalError", m.py().get_type::<NumericalError>())?;
    m.add_class::<PyModel>()?;
    m.add_class::<PyWave>()?;
    m.add_function(wrap_pyfunction!(delta_bf, m)?)?;
    m.add_function(wrap_pyfunction!(delta_mi, m)?)?;
    m.add_function(wrap_pyfunction!(critical_wavenumbers, m)?)?;
    m.add_function(wrap_pyfunction!(expansion_wave, m)?)?;
    m.add_function(wrap_pyfunction!(traveling_wave, m)?)?;
    m.add_function(wrap_pyfunction!(bloch_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(mi_growth_check, m)?)?;
    m.add_function(wrap_pyfunction!(stability_diagram, m)?)?;
    m.add_function(wrap_pyfunction!(curve_intersections, m)?)?;
    m.add_function(wrap_pyfunction!(classify_point, m)?)?;
    Ok(())
}

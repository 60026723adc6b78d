//! Python bindings: `import optical_bloch`.

use bloch as ob;
use bloch::sweep::{self, GridAxis, Observable};
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: ob::BlochError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn observable(name: &str) -> PyResult<Observable> {
    Observable::parse(name)
        .ok_or_else(|| PyValueError::new_err(format!("unknown observable '{name}' (zeta, chi, log10_zeta, rho11)")))
}

#[pyclass(name = "SystemParams", module = "optical_bloch", frozen, skip_from_py_object)]
struct PySystemParams(ob::SystemParams);

#[pymethods]
impl PySystemParams {
    #[new]
    #[pyo3(signature = (t1, t2, omega = 0.0, delta = 0.0, r3_tilde = 0.0, phi = 0.0))]
    fn new(t1: f64, t2: f64, omega: f64, delta: f64, r3_tilde: f64, phi: f64) -> PyResult<Self> {
        Ok(Self(ob::SystemParams::new(
            ob::RelaxationParams::new(t1, t2).map_err(err)?,
            ob::DriveParams::new(omega, delta, phi).map_err(err)?,
            ob::ThermalParams::new(r3_tilde).map_err(err)?,
        )))
    }

    #[getter]
    fn t1(&self) -> f64 {
        self.0.relaxation.t1
    }
    #[getter]
    fn t2(&self) -> f64 {
        self.0.relaxation.t2
    }
    #[getter]
    fn omega(&self) -> f64 {
        self.0.drive.omega
    }
    #[getter]
    fn delta(&self) -> f64 {
        self.0.drive.delta
    }
    #[getter]
    fn phi(&self) -> f64 {
        self.0.drive.phi
    }
    #[getter]
    fn r3_tilde(&self) -> f64 {
        self.0.thermal.r3_tilde
    }
    #[getter]
    fn gamma1(&self) -> f64 {
        self.0.gamma1()
    }
    #[getter]
    fn gamma2(&self) -> f64 {
        self.0.gamma2()
    }

    fn with_omega(&self, omega: f64) -> PyResult<Self> {
        self.0.with_omega(omega).map(Self).map_err(err)
    }

    fn with_t2(&self, t2: f64) -> PyResult<Self> {
        self.0.with_t2(t2).map(Self).map_err(err)
    }

    fn with_delta(&self, delta: f64) -> PyResult<Self> {
        self.0.with_delta(delta).map(Self).map_err(err)
    }

    fn __repr__(&self) -> String {
        let p = &self.0;
        format!(
            "SystemParams(t1={}, t2={}, omega={}, delta={}, r3_tilde={}, phi={})",
            p.relaxation.t1, p.relaxation.t2, p.drive.omega, p.drive.delta, p.thermal.r3_tilde, p.drive.phi
        )
    }
}

#[pyclass(name = "BlochVector", module = "optical_bloch", frozen, skip_from_py_object)]
struct PyBlochVector(ob::BlochVector);

#[pymethods]
impl PyBlochVector {
    #[new]
    fn new(r1: f64, r2: f64, r3: f64) -> Self {
        Self(ob::BlochVector::new(r1, r2, r3))
    }

    #[staticmethod]
    fn ground() -> Self {
        Self(ob::BlochVector::GROUND)
    }

    #[getter]
    fn r1(&self) -> f64 {
        self.0.r1
    }
    #[getter]
    fn r2(&self) -> f64 {
        self.0.r2
    }
    #[getter]
    fn r3(&self) -> f64 {
        self.0.r3
    }

    fn norm(&self) -> f64 {
        self.0.norm()
    }

    fn purity(&self) -> f64 {
        ob::purity(&self.0)
    }

    fn interference(&self) -> f64 {
        ob::interference(&self.0)
    }

    fn to_density(&self) -> PyResult<PyDensityMatrix> {
        ob::density_from_bloch(&self.0).map(PyDensityMatrix).map_err(err)
    }

    fn to_tuple(&self) -> (f64, f64, f64) {
        (self.0.r1, self.0.r2, self.0.r3)
    }

    fn __repr__(&self) -> String {
        format!("BlochVector({}, {}, {})", self.0.r1, self.0.r2, self.0.r3)
    }
}

#[pyclass(name = "DensityMatrix", module = "optical_bloch", frozen, skip_from_py_object)]
struct PyDensityMatrix(ob::DensityMatrix);

#[pymethods]
impl PyDensityMatrix {
    #[new]
    fn new(rho11: f64, rho22: f64, rho12: Complex64) -> Self {
        Self(ob::DensityMatrix::new(rho11, rho22, rho12))
    }

    #[getter]
    fn rho11(&self) -> f64 {
        self.0.rho11
    }
    #[getter]
    fn rho22(&self) -> f64 {
        self.0.rho22
    }
    #[getter]
    fn rho12(&self) -> Complex64 {
        self.0.rho12
    }
    #[getter]
    fn rho21(&self) -> Complex64 {
        self.0.rho21()
    }

    fn trace(&self) -> f64 {
        self.0.trace()
    }

    fn to_bloch(&self) -> PyResult<PyBlochVector> {
        ob::bloch_from_density(&self.0).map(PyBlochVector).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "DensityMatrix(rho11={}, rho22={}, rho12={})",
            self.0.rho11, self.0.rho22, self.0.rho12
        )
    }
}

/// Closed-form on-resonance trajectory.
#[pyclass(name = "Solution", module = "optical_bloch", frozen, skip_from_py_object)]
struct PySolution(ob::Solution);

#[pymethods]
impl PySolution {
    #[new]
    #[pyo3(signature = (params, initial = None))]
    fn new(params: PyRef<'_, PySystemParams>, initial: Option<PyRef<'_, PyBlochVector>>) -> PyResult<Self> {
        let r0 = initial.map(|r| r.0).unwrap_or(ob::BlochVector::GROUND);
        ob::Solution::new(&params.0, &r0).map(Self).map_err(err)
    }

    fn at(&self, t: f64) -> PyResult<PyBlochVector> {
        self.0.at(t).map(PyBlochVector).map_err(err)
    }

    /// States at each time in `times`.
    fn sample(&self, times: Vec<f64>) -> PyResult<Vec<PyBlochVector>> {
        times
            .iter()
            .map(|&t| self.0.at(t).map(PyBlochVector).map_err(err))
            .collect()
    }

    fn derivative(&self, t: f64) -> PyResult<PyBlochVector> {
        self.0.derivative(t).map(PyBlochVector).map_err(err)
    }

    fn equilibrium(&self) -> PyBlochVector {
        PyBlochVector(self.0.equilibrium())
    }

    #[getter]
    fn regime(&self) -> &'static str {
        self.0.coeffs.regime.as_str()
    }
}

/// Observable on a (time, parameter) grid; `values[iy][ix]`.
#[pyclass(name = "FieldMap", module = "optical_bloch", frozen, skip_from_py_object)]
struct PyFieldMap(sweep::FieldMap);

#[pymethods]
impl PyFieldMap {
    #[getter]
    fn times(&self) -> Vec<f64> {
        self.0.x_axis.values()
    }

    /// Ordinate values (T2 itself for a log-scaled T2 axis).
    #[getter]
    fn ys(&self) -> Vec<f64> {
        self.0.y_axis.values()
    }

    #[getter]
    fn y_label(&self) -> &str {
        &self.0.y_label
    }

    #[getter]
    fn observable(&self) -> &'static str {
        self.0.observable.name()
    }

    #[getter]
    fn values(&self) -> Vec<Vec<f64>> {
        (0..self.0.y_axis.n).map(|iy| self.0.row(iy).to_vec()).collect()
    }

    /// Grayscale levels per cell; 0 is darkest.
    #[pyo3(signature = (levels = 20, v_min = None, v_max = None))]
    fn quantize(&self, levels: u32, v_min: Option<f64>, v_max: Option<f64>) -> PyResult<Vec<Vec<u32>>> {
        let d = self.0.observable.default_quantization();
        let grid = sweep::quantize_grayscale(&self.0, levels, v_min.unwrap_or(d.v_min), v_max.unwrap_or(d.v_max))
            .map_err(err)?;
        Ok(grid.data.chunks(grid.n_x).map(<[u32]>::to_vec).collect())
    }
}

#[pyfunction]
fn evaluate(params: PyRef<'_, PySystemParams>, initial: PyRef<'_, PyBlochVector>, t: f64) -> PyResult<PyBlochVector> {
    let c = ob::solve_coefficients(&params.0, &initial.0).map_err(err)?;
    ob::evaluate(&c, &params.0, &initial.0, t)
        .map(PyBlochVector)
        .map_err(err)
}

/// RK4 trajectory with a step-halving check: `(times, states)`.
#[pyfunction]
#[pyo3(signature = (params, initial, t_max, dt = None, tolerance = 1e-8))]
fn integrate(
    params: PyRef<'_, PySystemParams>,
    initial: PyRef<'_, PyBlochVector>,
    t_max: f64,
    dt: Option<f64>,
    tolerance: f64,
) -> PyResult<(Vec<f64>, Vec<PyBlochVector>)> {
    let cfg = match dt {
        Some(dt) => ob::IntegratorConfig::new(dt, t_max, tolerance),
        None => ob::IntegratorConfig::for_params(&params.0, t_max, tolerance),
    }
    .map_err(err)?;
    let tr = ob::integrate(&params.0, &initial.0, &cfg).map_err(err)?;
    Ok((tr.times, tr.states.into_iter().map(PyBlochVector).collect()))
}

#[pyfunction]
fn equilibrium_state(params: PyRef<'_, PySystemParams>) -> PyResult<(PyBlochVector, PyDensityMatrix)> {
    let (r, rho) = ob::equilibrium_state(&params.0).map_err(err)?;
    Ok((PyBlochVector(r), PyDensityMatrix(rho)))
}

#[pyfunction]
fn steady_state(params: PyRef<'_, PySystemParams>) -> PyResult<PyBlochVector> {
    ob::steady_state(&params.0).map(PyBlochVector).map_err(err)
}

#[pyfunction]
fn classify_regime(params: PyRef<'_, PySystemParams>) -> PyResult<&'static str> {
    ob::classify_regime(&params.0).map(|r| r.as_str()).map_err(err)
}

/// `(omega_r, max_coherence)`.
#[pyfunction]
#[pyo3(signature = (t1, t2, r3_tilde = 1.0))]
fn optimal_rabi(t1: f64, t2: f64, r3_tilde: f64) -> PyResult<(f64, f64)> {
    let relax = ob::RelaxationParams::new(t1, t2).map_err(err)?;
    let o = ob::optimal_rabi(&relax, r3_tilde);
    Ok((o.omega_r, o.max_coherence))
}

#[pyfunction]
fn thermal_population_difference(x: f64) -> PyResult<f64> {
    ob::thermal_population_difference(x).map_err(err)
}

#[pyfunction]
fn purity_excited_initial(params: PyRef<'_, PySystemParams>, t: f64) -> PyResult<f64> {
    ob::purity_excited_initial(&params.0, t).map_err(err)
}

#[pyfunction]
fn validate_physicality<'py>(py: Python<'py>, t1: f64, t2: f64, r3_tilde: f64) -> PyResult<Bound<'py, PyDict>> {
    let r = ob::PhysicalityReport::check(t1, t2, r3_tilde);
    let d = PyDict::new(py);
    d.set_item("physical", r.is_physical())?;
    d.set_item("positive_times", r.positive_times)?;
    d.set_item("complete_positivity", r.complete_positivity)?;
    d.set_item("thermal_in_range", r.thermal_in_range)?;
    d.set_item("on_boundary", r.on_boundary())?;
    d.set_item("violations", r.violations)?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (params, omega_min, omega_max, n_omega, t_max, n_t, observable = "zeta", initial = None))]
#[allow(clippy::too_many_arguments)]
fn sweep_omega_time(
    params: PyRef<'_, PySystemParams>,
    omega_min: f64,
    omega_max: f64,
    n_omega: usize,
    t_max: f64,
    n_t: usize,
    observable: &str,
    initial: Option<PyRef<'_, PyBlochVector>>,
) -> PyResult<PyFieldMap> {
    let obs = self::observable(observable)?;
    let r0 = initial.map(|r| r.0).unwrap_or(ob::BlochVector::GROUND);
    let y = GridAxis::linear(omega_min, omega_max, n_omega).map_err(err)?;
    let x = GridAxis::linear(0.0, t_max, n_t).map_err(err)?;
    sweep::sweep_omega_time(&params.0, &y, &x, obs, &r0)
        .map(PyFieldMap)
        .map_err(err)
}

/// Bounds are log10 exponents of T2.
#[pyfunction]
#[pyo3(signature = (params, log_t2_min, log_t2_max, n_t2, t_max, n_t, observable = "log10_zeta", initial = None))]
#[allow(clippy::too_many_arguments)]
fn sweep_log_t2_time(
    params: PyRef<'_, PySystemParams>,
    log_t2_min: f64,
    log_t2_max: f64,
    n_t2: usize,
    t_max: f64,
    n_t: usize,
    observable: &str,
    initial: Option<PyRef<'_, PyBlochVector>>,
) -> PyResult<PyFieldMap> {
    let obs = self::observable(observable)?;
    let r0 = initial.map(|r| r.0).unwrap_or(ob::BlochVector::GROUND);
    let y = GridAxis::log10(log_t2_min, log_t2_max, n_t2).map_err(err)?;
    let x = GridAxis::linear(0.0, t_max, n_t).map_err(err)?;
    sweep::sweep_log_t2_time(&params.0, &y, &x, obs, &r0)
        .map(PyFieldMap)
        .map_err(err)
}

/// Revival intervals of ζ as `(start, end, persists)` tuples.
#[pyfunction]
#[pyo3(signature = (params, t_max, samples = 20001, threshold = sweep::DEFAULT_REVIVAL_THRESHOLD, initial = None))]
fn detect_revivals(
    params: PyRef<'_, PySystemParams>,
    t_max: f64,
    samples: usize,
    threshold: f64,
    initial: Option<PyRef<'_, PyBlochVector>>,
) -> PyResult<Vec<(f64, f64, bool)>> {
    let r0 = initial.map(|r| r.0).unwrap_or(ob::BlochVector::GROUND);
    let s = ob::Solution::new(&params.0, &r0).map_err(err)?;
    let axis = GridAxis::linear(0.0, t_max, samples).map_err(err)?;
    let report = sweep::detect_revivals_analytic(&s, Observable::Zeta, &axis, threshold).map_err(err)?;
    Ok(report.intervals.iter().map(|i| (i.start, i.end, i.persists)).collect())
}

#[pyfunction]
fn figure_presets() -> Vec<&'static str> {
    sweep::FIGURE_PRESETS.iter().map(|p| p.name).collect()
}

/// Map of a map-type figure preset on an `n_t × n_y` grid.
#[pyfunction]
#[pyo3(signature = (name, n_t = sweep::DEFAULT_GRID, n_y = sweep::DEFAULT_GRID))]
fn render_figure(name: &str, n_t: usize, n_y: usize) -> PyResult<PyFieldMap> {
    let preset = sweep::figure_preset(name).ok_or_else(|| PyValueError::new_err(format!("unknown figure '{name}'")))?;
    preset.render_map(n_t, n_y, None, None).map(PyFieldMap).map_err(err)
}

#[pymodule]
fn optical_bloch(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PySystemParams>()?;
    m.add_class::<PyBlochVector>()?;
    m.add_class::<PyDensityMatrix>()?;
    m.add_class::<PySolution>()?;
    m.add_class::<PyFieldMap>()?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(integrate, m)?)?;
    m.add_function(wrap_pyfunction!(equilibrium_state, m)?)?;
    m.add_function(wrap_pyfunction!(steady_state, m)?)?;
    m.add_function(wrap_pyfunction!(classify_regime, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_rabi, m)?)?;
    m.add_function(wrap_pyfunction!(thermal_population_difference, m)?)?;
    m.add_function(wrap_pyfunction!(purity_excited_initial, m)?)?;
    m.add_function(wrap_pyfunction!(validate_physicality, m)?)?;
    m.add_function(wrap_pyfunction!(sweep_omega_time, m)?)?;
    m.add_function(wrap_pyfunction!(sweep_log_t2_time, m)?)?;
    m.add_function(wrap_pyfunction!(detect_revivals, m)?)?;
    m.add_function(wrap_pyfunction!(figure_presets, m)?)?;
    m.add_function(wrap_pyfunction!(render_figure, m)?)?;
    Ok(())
}

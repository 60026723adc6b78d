//! Parameter × time maps and time series of coherence observables.
//!
//! Rows of a [`FieldMap`] are independent and are evaluated in parallel;
//! results are assembled by row index, so the output does not depend on the
//! number of workers.

mod presets;
mod quantize;
mod revival;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::Solution;
use crate::error::{BlochError, Result};
use crate::measures::{interference, purity};
use crate::numeric::{default_dt, integrate_to_times_checked};
use crate::params::SystemParams;
use crate::state::BlochVector;

pub use presets::{figure_preset, FigureLayout, FigurePreset, VariedParam, FIGURE_PRESETS};
pub use quantize::{quantize_grayscale, LevelGrid, Quantization};
pub use revival::{
    detect_revivals, detect_revivals_analytic, detect_revivals_by, RevivalInterval, RevivalReport,
    DEFAULT_REVIVAL_THRESHOLD,
};

/// Default number of samples along each map axis.
pub const DEFAULT_GRID: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisScale {
    Linear,
    Log10,
}

/// Evenly spaced samples in the axis' own scale. For [`AxisScale::Log10`]
/// the bounds are exponents and [`GridAxis::value`] returns `10^coordinate`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridAxis {
    pub kind: AxisScale,
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

impl GridAxis {
    pub fn new(kind: AxisScale, min: f64, max: f64, n: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(BlochError::AxisBounds(format!(
                "need finite min < max, got [{min}, {max}]"
            )));
        }
        if n < 2 {
            return Err(BlochError::AxisBounds(format!("need at least 2 samples, got {n}")));
        }
        Ok(Self { kind, min, max, n })
    }

    pub fn linear(min: f64, max: f64, n: usize) -> Result<Self> {
        Self::new(AxisScale::Linear, min, max, n)
    }

    pub fn log10(min_exp: f64, max_exp: f64, n: usize) -> Result<Self> {
        Self::new(AxisScale::Log10, min_exp, max_exp, n)
    }

    pub fn step(&self) -> f64 {
        (self.max - self.min) / (self.n - 1) as f64
    }

    pub fn coordinate(&self, i: usize) -> f64 {
        if i + 1 == self.n {
            self.max
        } else {
            self.min + (self.max - self.min) * i as f64 / (self.n - 1) as f64
        }
    }

    pub fn value(&self, i: usize) -> f64 {
        match self.kind {
            AxisScale::Linear => self.coordinate(i),
            AxisScale::Log10 => 10f64.powf(self.coordinate(i)),
        }
    }

    pub fn coordinates(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.coordinate(i)).collect()
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.value(i)).collect()
    }
}

/// Scalar observable of the Bloch state plotted on a map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Observable {
    Zeta,
    Chi,
    Log10Zeta,
    Rho11,
}

impl Observable {
    pub fn measure(&self, r: &BlochVector) -> f64 {
        match self {
            Self::Zeta => interference(r),
            Self::Chi => purity(r),
            Self::Log10Zeta => interference(r).log10(),
            Self::Rho11 => 0.5 * (1.0 + r.r3),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Zeta => "zeta",
            Self::Chi => "chi",
            Self::Log10Zeta => "log10_zeta",
            Self::Rho11 => "rho11",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "zeta" => Some(Self::Zeta),
            "chi" => Some(Self::Chi),
            "log10_zeta" | "log10-zeta" => Some(Self::Log10Zeta),
            "rho11" => Some(Self::Rho11),
            _ => None,
        }
    }

    /// Grayscale bounds used by the figures: darkest at 0.20 for `ζ`, at 1
    /// for `χ`, and at `ζ = 0.30` (lightest `ζ = 0.0003`) on log scale.
    pub fn default_quantization(&self) -> Quantization {
        match self {
            Self::Zeta => Quantization {
                levels: 20,
                v_min: 0.0,
                v_max: 0.20,
            },
            Self::Chi => Quantization {
                levels: 20,
                v_min: 0.5,
                v_max: 1.0,
            },
            Self::Log10Zeta => Quantization {
                levels: 20,
                v_min: 0.0003f64.log10(),
                v_max: 0.30f64.log10(),
            },
            Self::Rho11 => Quantization {
                levels: 20,
                v_min: 0.0,
                v_max: 1.0,
            },
        }
    }
}

/// `values[iy * x_axis.n + ix]` holds the observable at
/// `(x_axis.value(ix), y_axis.value(iy))`. The x axis is time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldMap {
    pub x_axis: GridAxis,
    pub y_axis: GridAxis,
    pub y_label: String,
    pub observable: Observable,
    pub params: SystemParams,
    pub initial: BlochVector,
    pub values: Vec<f64>,
}

impl FieldMap {
    pub fn get(&self, iy: usize, ix: usize) -> f64 {
        self.values[iy * self.x_axis.n + ix]
    }

    pub fn row(&self, iy: usize) -> &[f64] {
        let n = self.x_axis.n;
        &self.values[iy * n..(iy + 1) * n]
    }

    /// Dimensions match the axes and `χ`/`ζ` values lie in their physical
    /// ranges within `eps`.
    pub fn check_invariants(&self, eps: f64) -> bool {
        if self.values.len() != self.x_axis.n * self.y_axis.n {
            return false;
        }
        let range = match self.observable {
            Observable::Chi => (0.5 - eps, 1.0 + eps),
            Observable::Zeta => (-eps, 0.25 + eps),
            Observable::Rho11 => (-eps, 1.0 + eps),
            Observable::Log10Zeta => (f64::NEG_INFINITY, 0.25f64.log10() + eps),
        };
        self.values.iter().all(|v| *v >= range.0 && *v <= range.1)
    }
}

/// Runs `f` on a dedicated pool of `workers` threads.
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

fn map_row(
    p: &SystemParams,
    r0: &BlochVector,
    times: &[f64],
    observable: Observable,
    backend: Backend,
) -> Result<Vec<f64>> {
    Ok(trajectory(p, r0, times, backend)?
        .iter()
        .map(|r| observable.measure(r))
        .collect())
}

fn assemble(rows: Vec<Vec<f64>>) -> Vec<f64> {
    rows.into_iter().flatten().collect()
}

/// Map over (time, Ω) from the closed-form solution.
pub fn sweep_omega_time(
    base: &SystemParams,
    omega_axis: &GridAxis,
    time_axis: &GridAxis,
    observable: Observable,
    r0: &BlochVector,
) -> Result<FieldMap> {
    sweep_omega_time_with(base, omega_axis, time_axis, observable, r0, Backend::Analytic)
}

/// [`sweep_omega_time`] with a choice of backend.
pub fn sweep_omega_time_with(
    base: &SystemParams,
    omega_axis: &GridAxis,
    time_axis: &GridAxis,
    observable: Observable,
    r0: &BlochVector,
    backend: Backend,
) -> Result<FieldMap> {
    if backend == Backend::Analytic {
        base.require_resonance()?;
    }
    let times = time_axis.values();
    let rows = omega_axis
        .values()
        .into_par_iter()
        .map(|omega| map_row(&base.with_omega(omega)?, r0, &times, observable, backend))
        .collect::<Result<Vec<_>>>()?;
    Ok(FieldMap {
        x_axis: *time_axis,
        y_axis: *omega_axis,
        y_label: "omega".into(),
        observable,
        params: *base,
        initial: *r0,
        values: assemble(rows),
    })
}

/// Map over (time, T2) from the closed-form solution. The T2 axis may not
/// extend past `T1/2`.
pub fn sweep_log_t2_time(
    base: &SystemParams,
    log_t2_axis: &GridAxis,
    time_axis: &GridAxis,
    observable: Observable,
    r0: &BlochVector,
) -> Result<FieldMap> {
    sweep_log_t2_time_with(base, log_t2_axis, time_axis, observable, r0, Backend::Analytic)
}

/// [`sweep_log_t2_time`] with a choice of backend.
pub fn sweep_log_t2_time_with(
    base: &SystemParams,
    log_t2_axis: &GridAxis,
    time_axis: &GridAxis,
    observable: Observable,
    r0: &BlochVector,
    backend: Backend,
) -> Result<FieldMap> {
    if backend == Backend::Analytic {
        base.require_resonance()?;
    }
    let cap = base.relaxation.t1 / 2.0;
    let top = log_t2_axis.value(log_t2_axis.n - 1);
    if top > cap * (1.0 + 1e-12) {
        return Err(BlochError::AxisBounds(format!(
            "T2 axis reaches {top}, beyond the positivity limit T1/2 = {cap}"
        )));
    }
    let times = time_axis.values();
    let rows = log_t2_axis
        .values()
        .into_par_iter()
        .map(|t2| map_row(&base.with_t2(t2.min(cap))?, r0, &times, observable, backend))
        .collect::<Result<Vec<_>>>()?;
    Ok(FieldMap {
        x_axis: *time_axis,
        y_axis: *log_t2_axis,
        y_label: match log_t2_axis.kind {
            AxisScale::Log10 => "log10_t2".into(),
            AxisScale::Linear => "t2".into(),
        },
        observable,
        params: *base,
        initial: *r0,
        values: assemble(rows),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesColumn {
    R1,
    R2,
    R3,
    Rho11,
    Rho22,
    Chi,
    Zeta,
}

impl SeriesColumn {
    pub const ALL: [SeriesColumn; 7] = [
        Self::R1,
        Self::R2,
        Self::R3,
        Self::Rho11,
        Self::Rho22,
        Self::Chi,
        Self::Zeta,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Self::R1 => "R1",
            Self::R2 => "R2",
            Self::R3 => "R3",
            Self::Rho11 => "rho11",
            Self::Rho22 => "rho22",
            Self::Chi => "chi",
            Self::Zeta => "zeta",
        }
    }

    pub fn value(&self, r: &BlochVector) -> f64 {
        match self {
            Self::R1 => r.r1,
            Self::R2 => r.r2,
            Self::R3 => r.r3,
            Self::Rho11 => 0.5 * (1.0 + r.r3),
            Self::Rho22 => 0.5 * (1.0 - r.r3),
            Self::Chi => purity(r),
            Self::Zeta => interference(r),
        }
    }
}

/// Settings of the RK4 backend for time series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumericOptions {
    /// Largest RK4 step; defaults to [`default_dt`].
    pub max_step: Option<f64>,
    pub convergence_factor: usize,
    pub tolerance: f64,
}

impl Default for NumericOptions {
    fn default() -> Self {
        Self {
            max_step: None,
            convergence_factor: 2,
            tolerance: 1e-8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "backend")]
pub enum Backend {
    Analytic,
    Numeric(NumericOptions),
}

impl Backend {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Analytic => "analytic",
            Self::Numeric(_) => "numeric",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    pub times: Vec<f64>,
    pub states: Vec<BlochVector>,
    pub columns: Vec<SeriesColumn>,
    /// One vector per entry of `columns`.
    pub values: Vec<Vec<f64>>,
}

impl TimeSeries {
    pub fn column(&self, c: SeriesColumn) -> Option<&[f64]> {
        self.columns
            .iter()
            .position(|x| *x == c)
            .map(|i| self.values[i].as_slice())
    }
}

fn trajectory(p: &SystemParams, r0: &BlochVector, times: &[f64], backend: Backend) -> Result<Vec<BlochVector>> {
    if times[0] < 0.0 {
        return Err(BlochError::NegativeTime(times[0]));
    }
    match backend {
        Backend::Analytic => {
            let s = Solution::new(p, r0)?;
            times.iter().map(|&t| s.at(t)).collect()
        }
        Backend::Numeric(opts) => {
            p.check()?;
            let mut grid = times.to_vec();
            let prepended = grid[0] > 0.0;
            if prepended {
                grid.insert(0, 0.0);
            }
            let step = opts.max_step.unwrap_or_else(|| default_dt(p));
            let mut states = integrate_to_times_checked(p, r0, &grid, step, opts.convergence_factor, opts.tolerance)?;
            if prepended {
                states.remove(0);
            }
            Ok(states)
        }
    }
}

/// Observables sampled along one trajectory. The analytic backend needs
/// `Δ = 0`; the numeric backend handles any detuning.
pub fn time_series(
    p: &SystemParams,
    r0: &BlochVector,
    time_axis: &GridAxis,
    columns: &[SeriesColumn],
    backend: Backend,
) -> Result<TimeSeries> {
    let times = time_axis.values();
    let states = trajectory(p, r0, &times, backend)?;
    let values = columns
        .iter()
        .map(|c| states.iter().map(|r| c.value(r)).collect())
        .collect();
    Ok(TimeSeries {
        times,
        states,
        columns: columns.to_vec(),
        values,
    })
}

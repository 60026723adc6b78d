//! Built-in parameter sets for the standard coherence figures.
//!
//! Parameters are the published ones; axis ranges were chosen to show every
//! regime transition and can be overridden at render time.

use super::{
    sweep_log_t2_time_with, sweep_omega_time_with, time_series, Backend, FieldMap, GridAxis, Observable, SeriesColumn,
    TimeSeries,
};
use crate::error::{BlochError, Result};
use crate::params::SystemParams;
use crate::state::BlochVector;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VariedParam {
    Omega,
    T2,
}

impl VariedParam {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Omega => "omega",
            Self::T2 => "t2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FigureLayout {
    /// Observable over (time, Ω).
    OmegaMap {
        observable: Observable,
        omega_min: f64,
        omega_max: f64,
    },
    /// Observable over (time, log10 T2); the upper bound is `log10(T1/2)`.
    LogT2Map { observable: Observable, log_t2_min: f64 },
    /// Time series of `columns`, one curve per value of the varied parameter.
    Series {
        columns: &'static [SeriesColumn],
        varied: VariedParam,
        values: &'static [f64],
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigurePreset {
    pub name: &'static str,
    pub description: &'static str,
    pub t1: f64,
    /// Ignored by [`FigureLayout::LogT2Map`] and by series varying T2.
    pub t2: f64,
    /// Ignored by [`FigureLayout::OmegaMap`] and by series varying Ω.
    pub omega: f64,
    pub r3_tilde: f64,
    pub t_max: f64,
    pub layout: FigureLayout,
}

const fn omega_map(
    name: &'static str,
    description: &'static str,
    observable: Observable,
    r3_tilde: f64,
) -> FigurePreset {
    FigurePreset {
        name,
        description,
        t1: 1.5,
        t2: 0.5,
        omega: 0.0,
        r3_tilde,
        t_max: 4.0,
        layout: FigureLayout::OmegaMap {
            observable,
            omega_min: 0.0,
            omega_max: 6.0,
        },
    }
}

const fn log_t2_map(name: &'static str, description: &'static str, observable: Observable, t1: f64) -> FigurePreset {
    FigurePreset {
        name,
        description,
        t1,
        t2: t1 / 2.0,
        omega: 1.0,
        r3_tilde: 0.0,
        t_max: 4.0,
        layout: FigureLayout::LogT2Map {
            observable,
            log_t2_min: -2.0,
        },
    }
}

const RHO11: &[SeriesColumn] = &[SeriesColumn::Rho11];
const CHI_ZETA_RHO11: &[SeriesColumn] = &[SeriesColumn::Chi, SeriesColumn::Zeta, SeriesColumn::Rho11];

pub const FIGURE_PRESETS: &[FigurePreset] = &[
    omega_map(
        "fig1a",
        "zeta over (t, Omega), T1=1.5, T2=0.5, R3~=0",
        Observable::Zeta,
        0.0,
    ),
    omega_map(
        "fig1b",
        "chi over (t, Omega), T1=1.5, T2=0.5, R3~=0",
        Observable::Chi,
        0.0,
    ),
    log_t2_map(
        "fig2a",
        "log10 zeta over (t, log10 T2), T1=2.5, Omega=1, R3~=0",
        Observable::Log10Zeta,
        2.5,
    ),
    log_t2_map(
        "fig2b",
        "chi over (t, log10 T2), T1=2.5, Omega=1, R3~=0",
        Observable::Chi,
        2.5,
    ),
    log_t2_map(
        "fig3",
        "log10 zeta over (t, log10 T2), T1=1e4, Omega=1, R3~=0",
        Observable::Log10Zeta,
        1e4,
    ),
    FigurePreset {
        name: "fig4a",
        description: "rho11(t) for Omega in {0.2, 1, 5}, T1=2.5, T2=0.5",
        t1: 2.5,
        t2: 0.5,
        omega: 0.0,
        r3_tilde: 0.0,
        t_max: 10.0,
        layout: FigureLayout::Series {
            columns: RHO11,
            varied: VariedParam::Omega,
            values: &[0.2, 1.0, 5.0],
        },
    },
    FigurePreset {
        name: "fig4b",
        description: "rho11(t) for Omega in {0.2, 1, 5}, T1=1e4, T2=0.5",
        t1: 1e4,
        t2: 0.5,
        omega: 0.0,
        r3_tilde: 0.0,
        t_max: 10.0,
        layout: FigureLayout::Series {
            columns: RHO11,
            varied: VariedParam::Omega,
            values: &[0.2, 1.0, 5.0],
        },
    },
    FigurePreset {
        name: "fig4c",
        description: "rho11(t) for T2 in {0.05, 0.5, 5}, T1=1e4, Omega=1",
        t1: 1e4,
        t2: 0.5,
        omega: 1.0,
        r3_tilde: 0.0,
        t_max: 10.0,
        layout: FigureLayout::Series {
            columns: RHO11,
            varied: VariedParam::T2,
            values: &[0.05, 0.5, 5.0],
        },
    },
    omega_map(
        "fig5a",
        "zeta over (t, Omega), T1=1.5, T2=0.5, R3~=1",
        Observable::Zeta,
        1.0,
    ),
    omega_map(
        "fig5b",
        "chi over (t, Omega), T1=1.5, T2=0.5, R3~=1",
        Observable::Chi,
        1.0,
    ),
    FigurePreset {
        name: "fig6",
        description: "chi, zeta, rho11 for Omega in {0.5, 1.15, 4}, T1=1.5, T2=0.5, R3~=1",
        t1: 1.5,
        t2: 0.5,
        omega: 0.0,
        r3_tilde: 1.0,
        t_max: 10.0,
        layout: FigureLayout::Series {
            columns: CHI_ZETA_RHO11,
            varied: VariedParam::Omega,
            values: &[0.5, 1.15, 4.0],
        },
    },
];

pub fn figure_preset(name: &str) -> Option<&'static FigurePreset> {
    FIGURE_PRESETS.iter().find(|p| p.name == name)
}

impl FigurePreset {
    pub fn base_params(&self) -> Result<SystemParams> {
        SystemParams::on_resonance(self.t1, self.t2, self.omega, self.r3_tilde)
    }

    pub fn initial(&self) -> BlochVector {
        BlochVector::GROUND
    }

    pub fn is_map(&self) -> bool {
        !matches!(self.layout, FigureLayout::Series { .. })
    }

    /// Default ordinate range of a map preset.
    pub fn y_range(&self) -> Option<(f64, f64)> {
        match self.layout {
            FigureLayout::OmegaMap {
                omega_min, omega_max, ..
            } => Some((omega_min, omega_max)),
            FigureLayout::LogT2Map { log_t2_min, .. } => Some((log_t2_min, (self.t1 / 2.0).log10())),
            FigureLayout::Series { .. } => None,
        }
    }

    pub fn observable(&self) -> Option<Observable> {
        match self.layout {
            FigureLayout::OmegaMap { observable, .. } | FigureLayout::LogT2Map { observable, .. } => Some(observable),
            FigureLayout::Series { .. } => None,
        }
    }

    /// Renders a map preset on an `n_x × n_y` grid (x = time).
    pub fn render_map(
        &self,
        n_x: usize,
        n_y: usize,
        y_range: Option<(f64, f64)>,
        t_max: Option<f64>,
    ) -> Result<FieldMap> {
        self.render_map_with(n_x, n_y, y_range, t_max, Backend::Analytic)
    }

    pub fn render_map_with(
        &self,
        n_x: usize,
        n_y: usize,
        y_range: Option<(f64, f64)>,
        t_max: Option<f64>,
        backend: Backend,
    ) -> Result<FieldMap> {
        let (y_min, y_max) = y_range
            .or_else(|| self.y_range())
            .ok_or_else(|| BlochError::Domain(format!("{} is a time-series preset", self.name)))?;
        let time_axis = GridAxis::linear(0.0, t_max.unwrap_or(self.t_max), n_x)?;
        let base = self.base_params()?;
        match self.layout {
            FigureLayout::OmegaMap { observable, .. } => {
                let axis = GridAxis::linear(y_min, y_max, n_y)?;
                sweep_omega_time_with(&base, &axis, &time_axis, observable, &self.initial(), backend)
            }
            FigureLayout::LogT2Map { observable, .. } => {
                let axis = GridAxis::log10(y_min, y_max, n_y)?;
                sweep_log_t2_time_with(&base, &axis, &time_axis, observable, &self.initial(), backend)
            }
            FigureLayout::Series { .. } => unreachable!(),
        }
    }

    /// Renders a series preset: one `(varied value, series)` per curve.
    pub fn render_series(&self, samples: usize, t_max: Option<f64>) -> Result<Vec<(f64, TimeSeries)>> {
        self.render_series_with(samples, t_max, Backend::Analytic)
    }

    pub fn render_series_with(
        &self,
        samples: usize,
        t_max: Option<f64>,
        backend: Backend,
    ) -> Result<Vec<(f64, TimeSeries)>> {
        let FigureLayout::Series {
            columns,
            varied,
            values,
        } = self.layout
        else {
            return Err(BlochError::Domain(format!("{} is a map preset", self.name)));
        };
        let axis = GridAxis::linear(0.0, t_max.unwrap_or(self.t_max), samples)?;
        let base = self.base_params()?;
        values
            .iter()
            .map(|&v| {
                let p = match varied {
                    VariedParam::Omega => base.with_omega(v)?,
                    VariedParam::T2 => base.with_t2(v)?,
                };
                Ok((v, time_series(&p, &self.initial(), &axis, columns, backend)?))
            })
            .collect()
    }
}

//! Direct numerical integration of the Bloch equations (any detuning) and
//! the steady-state linear solve. Independent of the closed form; used as
//! its oracle.

use serde::{Deserialize, Serialize};

use crate::error::{BlochError, Result};
use crate::params::SystemParams;
use crate::state::BlochVector;

/// Right-hand side of the Bloch equations:
///
/// ```text
/// dR1/dt = −Γ2 R1 + Δ R2 − Ω R3
/// dR2/dt = −Δ R1 − Γ2 R2
/// dR3/dt =  Ω R1 − Γ1 (R3 − R̃3)
/// ```
pub fn bloch_rhs(p: &SystemParams, r: &BlochVector) -> BlochVector {
    let (g1, g2, omega, delta) = (p.gamma1(), p.gamma2(), p.omega(), p.delta());
    BlochVector::new(
        -g2 * r.r1 + delta * r.r2 - omega * r.r3,
        -delta * r.r1 - g2 * r.r2,
        omega * r.r1 - g1 * (r.r3 - p.r3_tilde()),
    )
}

/// One classical fourth-order Runge–Kutta step of size `h`.
pub fn rk4_step(p: &SystemParams, r: &BlochVector, h: f64) -> BlochVector {
    let k1 = bloch_rhs(p, r);
    let k2 = bloch_rhs(p, &(*r + k1 * (0.5 * h)));
    let k3 = bloch_rhs(p, &(*r + k2 * (0.5 * h)));
    let k4 = bloch_rhs(p, &(*r + k3 * h));
    *r + (k1 + (k2 + k3) * 2.0 + k4) * (h / 6.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegratorConfig {
    pub dt: f64,
    pub t_max: f64,
    /// The self-check re-integrates with step `dt / convergence_factor`.
    pub convergence_factor: usize,
    /// Largest allowed deviation between the two runs at shared samples.
    pub tolerance: f64,
}

impl IntegratorConfig {
    pub fn new(dt: f64, t_max: f64, tolerance: f64) -> Result<Self> {
        let cfg = Self {
            dt,
            t_max,
            convergence_factor: 2,
            tolerance,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Step of `min(T1, T2, 1/max(Ω, |Δ|, 1)) / 100`.
    pub fn for_params(p: &SystemParams, t_max: f64, tolerance: f64) -> Result<Self> {
        Self::new(default_dt(p).min(t_max.max(f64::MIN_POSITIVE)), t_max, tolerance)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(BlochError::InvalidParams(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if !(self.t_max.is_finite() && self.t_max >= 0.0) {
            return Err(BlochError::InvalidParams(format!(
                "t_max must be non-negative, got {}",
                self.t_max
            )));
        }
        if self.t_max > 0.0 && self.dt > self.t_max {
            return Err(BlochError::InvalidParams(format!(
                "dt = {} exceeds t_max = {}",
                self.dt, self.t_max
            )));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(BlochError::InvalidParams("tolerance must be positive".into()));
        }
        if self.convergence_factor < 2 {
            return Err(BlochError::InvalidParams(
                "convergence factor must be at least 2".into(),
            ));
        }
        Ok(())
    }
}

pub fn default_dt(p: &SystemParams) -> f64 {
    let fastest = p.omega().max(p.delta().abs()).max(1.0);
    p.relaxation.t1.min(p.relaxation.t2).min(1.0 / fastest) / 100.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<BlochVector>,
    pub params: SystemParams,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<&BlochVector> {
        self.states.last()
    }

    /// Largest componentwise deviation between two trajectories sampled on
    /// the same grid.
    pub fn max_deviation(&self, other: &Trajectory) -> f64 {
        self.states
            .iter()
            .zip(&other.states)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }
}

/// Sample times `0, dt, 2dt, …`, ending exactly at `t_max`.
pub fn uniform_grid(dt: f64, t_max: f64) -> Vec<f64> {
    if t_max == 0.0 {
        return vec![0.0];
    }
    let n = (t_max / dt - 1e-9).ceil().max(1.0) as usize;
    let mut times: Vec<f64> = (0..n).map(|k| k as f64 * dt).collect();
    times.push(t_max);
    times
}

/// Integrates from `times[0] = 0` through every requested time, splitting
/// each interval into equal RK4 steps no longer than `max_step`.
pub fn integrate_to_times(
    p: &SystemParams,
    r0: &BlochVector,
    times: &[f64],
    max_step: f64,
) -> Result<Vec<BlochVector>> {
    if times.is_empty() {
        return Ok(Vec::new());
    }
    if times[0] != 0.0 {
        return Err(BlochError::InvalidParams("sample times must start at 0".into()));
    }
    if max_step.is_nan() || max_step <= 0.0 {
        return Err(BlochError::InvalidParams("step must be positive".into()));
    }
    let mut states = Vec::with_capacity(times.len());
    let mut r = *r0;
    states.push(r);
    for w in times.windows(2) {
        let span = w[1] - w[0];
        if span.is_nan() || span <= 0.0 {
            return Err(BlochError::InvalidParams(
                "sample times must be strictly increasing".into(),
            ));
        }
        let steps = (span / max_step - 1e-9).ceil().max(1.0) as usize;
        let h = span / steps as f64;
        for _ in 0..steps {
            r = rk4_step(p, &r, h);
        }
        states.push(r);
    }
    Ok(states)
}

/// Fixed-step integration without the refinement check.
pub fn integrate_unchecked(p: &SystemParams, r0: &BlochVector, dt: f64, t_max: f64) -> Result<Trajectory> {
    let times = uniform_grid(dt, t_max);
    let states = integrate_to_times(p, r0, &times, dt)?;
    Ok(Trajectory {
        times,
        states,
        params: *p,
    })
}

/// Samples at `times` with steps of at most `max_step`, then repeats with
/// `max_step / factor` and fails if the two runs differ by more than
/// `tolerance` anywhere. Returns the coarse run.
pub fn integrate_to_times_checked(
    p: &SystemParams,
    r0: &BlochVector,
    times: &[f64],
    max_step: f64,
    factor: usize,
    tolerance: f64,
) -> Result<Vec<BlochVector>> {
    let coarse = integrate_to_times(p, r0, times, max_step)?;
    let fine = integrate_to_times(p, r0, times, max_step / factor as f64)?;
    let max_diff = coarse
        .iter()
        .zip(&fine)
        .map(|(a, b)| a.max_abs_diff(b))
        .fold(0.0, f64::max);
    if max_diff.is_nan() || max_diff > tolerance {
        return Err(BlochError::NonConvergence { max_diff, tolerance });
    }
    Ok(coarse)
}

/// RK4 trajectory on the grid `k·dt`, validated against a run with the
/// step divided by `cfg.convergence_factor`.
pub fn integrate(p: &SystemParams, r0: &BlochVector, cfg: &IntegratorConfig) -> Result<Trajectory> {
    cfg.validate()?;
    let times = uniform_grid(cfg.dt, cfg.t_max);
    let states = integrate_to_times_checked(p, r0, &times, cfg.dt, cfg.convergence_factor, cfg.tolerance)?;
    Ok(Trajectory {
        times,
        states,
        params: *p,
    })
}

/// Solves `bloch_rhs(p, R) = 0` by Gaussian elimination with partial
/// pivoting.
pub fn steady_state(p: &SystemParams) -> Result<BlochVector> {
    p.check()?;
    let (g1, g2, omega, delta) = (p.gamma1(), p.gamma2(), p.omega(), p.delta());
    let mut a = [[-g2, delta, -omega], [-delta, -g2, 0.0], [omega, 0.0, -g1]];
    let mut b = [0.0, 0.0, -g1 * p.r3_tilde()];
    let x = solve3(&mut a, &mut b)?;
    Ok(BlochVector::from(x))
}

fn solve3(a: &mut [[f64; 3]; 3], b: &mut [f64; 3]) -> Result<[f64; 3]> {
    let scale = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return Err(BlochError::Singular);
    }
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap_or(col);
        if a[pivot][col].abs() <= f64::EPSILON * scale {
            return Err(BlochError::Singular);
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..3 {
            let f = a[row][col] / a[col][col];
            let pivot_row = a[col];
            for (dst, src) in a[row].iter_mut().zip(pivot_row).skip(col) {
                *dst -= f * src;
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let tail: f64 = (row + 1..3).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    Ok(x)
}

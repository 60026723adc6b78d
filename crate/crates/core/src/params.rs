//! System parameters: relaxation times, drive field and thermal target.
//!
//! All quantities are dimensionless; times share one arbitrary unit and
//! rates are its inverse.

use serde::{Deserialize, Serialize};

use crate::error::{BlochError, Result};
use crate::measures::thermal_population_difference;

/// Phenomenological relaxation times.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelaxationParams {
    /// Population relaxation time.
    pub t1: f64,
    /// Decoherence time.
    pub t2: f64,
}

impl RelaxationParams {
    pub fn new(t1: f64, t2: f64) -> Result<Self> {
        for (name, v) in [("T1", t1), ("T2", t2)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(BlochError::InvalidParams(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(Self { t1, t2 })
    }

    #[inline]
    pub fn gamma1(&self) -> f64 {
        1.0 / self.t1
    }

    #[inline]
    pub fn gamma2(&self) -> f64 {
        1.0 / self.t2
    }

    /// True iff `2 T1 >= T2`, the complete-positivity condition of the
    /// Markovian Bloch equation.
    pub fn is_physical(&self) -> bool {
        2.0 * self.t1 >= self.t2
    }
}

/// Continuous-wave drive in the rotating frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DriveParams {
    /// Rabi frequency, `>= 0`.
    pub omega: f64,
    /// Detuning of the field from the transition.
    pub delta: f64,
    /// Field phase in radians. Only enters the lab-frame phase of the
    /// equilibrium coherence.
    pub phi: f64,
}

impl DriveParams {
    pub fn new(omega: f64, delta: f64, phi: f64) -> Result<Self> {
        if !(omega.is_finite() && omega >= 0.0) {
            return Err(BlochError::InvalidParams(format!(
                "Rabi frequency must be finite and non-negative, got {omega}"
            )));
        }
        if !delta.is_finite() || !phi.is_finite() {
            return Err(BlochError::InvalidParams("detuning and phase must be finite".into()));
        }
        Ok(Self { omega, delta, phi })
    }

    pub fn on_resonance(omega: f64) -> Result<Self> {
        Self::new(omega, 0.0, 0.0)
    }
}

/// Asymptotic field-free population difference `R̃3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermalParams {
    pub r3_tilde: f64,
}

impl ThermalParams {
    pub fn new(r3_tilde: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&r3_tilde) {
            return Err(BlochError::InvalidParams(format!(
                "thermal population difference must lie in [0, 1], got {r3_tilde}"
            )));
        }
        Ok(Self { r3_tilde })
    }

    /// Builds the thermal target from `x = ħω21 / k_B T` (`x = +inf` is zero
    /// temperature).
    pub fn from_temperature_ratio(x: f64) -> Result<Self> {
        Self::new(thermal_population_difference(x)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    pub relaxation: RelaxationParams,
    pub drive: DriveParams,
    pub thermal: ThermalParams,
}

impl SystemParams {
    pub fn new(relaxation: RelaxationParams, drive: DriveParams, thermal: ThermalParams) -> Self {
        Self {
            relaxation,
            drive,
            thermal,
        }
    }

    /// Shorthand for the on-resonance (`Δ = 0`, `φ = 0`) system used by the
    /// closed-form solution.
    pub fn on_resonance(t1: f64, t2: f64, omega: f64, r3_tilde: f64) -> Result<Self> {
        Ok(Self {
            relaxation: RelaxationParams::new(t1, t2)?,
            drive: DriveParams::on_resonance(omega)?,
            thermal: ThermalParams::new(r3_tilde)?,
        })
    }

    pub fn with_omega(mut self, omega: f64) -> Result<Self> {
        self.drive = DriveParams::new(omega, self.drive.delta, self.drive.phi)?;
        Ok(self)
    }

    pub fn with_t2(mut self, t2: f64) -> Result<Self> {
        self.relaxation = RelaxationParams::new(self.relaxation.t1, t2)?;
        Ok(self)
    }

    pub fn with_delta(mut self, delta: f64) -> Result<Self> {
        self.drive = DriveParams::new(self.drive.omega, delta, self.drive.phi)?;
        Ok(self)
    }

    #[inline]
    pub fn gamma1(&self) -> f64 {
        self.relaxation.gamma1()
    }

    #[inline]
    pub fn gamma2(&self) -> f64 {
        self.relaxation.gamma2()
    }

    #[inline]
    pub fn omega(&self) -> f64 {
        self.drive.omega
    }

    #[inline]
    pub fn delta(&self) -> f64 {
        self.drive.delta
    }

    #[inline]
    pub fn r3_tilde(&self) -> f64 {
        self.thermal.r3_tilde
    }

    /// Re-checks the component invariants; the fields are public, so values
    /// built by hand may violate them.
    pub fn check(&self) -> Result<()> {
        RelaxationParams::new(self.relaxation.t1, self.relaxation.t2)?;
        DriveParams::new(self.drive.omega, self.drive.delta, self.drive.phi)?;
        ThermalParams::new(self.thermal.r3_tilde)?;
        Ok(())
    }

    pub(crate) fn require_resonance(&self) -> Result<()> {
        if self.drive.delta != 0.0 {
            return Err(BlochError::OffResonance(self.drive.delta));
        }
        Ok(())
    }
}

//! Coherence measures, the thermal population difference and parameter
//! physicality checks.

use serde::{Deserialize, Serialize};

use crate::error::{BlochError, Result};
use crate::params::SystemParams;
use crate::state::BlochVector;

/// Purity `χ = Tr ρ² = 1/2 + |R|²/2`.
pub fn purity(r: &BlochVector) -> f64 {
    0.5 + 0.5 * r.norm_sq()
}

/// Interference contribution `ζ = |ρ12|² = (R1² + R2²)/4`.
pub fn interference(r: &BlochVector) -> f64 {
    0.25 * (r.r1 * r.r1 + r.r2 * r.r2)
}

/// Equilibrium population difference `(1 − e^{−x}) / (1 + e^{−x})` for
/// `x = ħω21 / k_B T`. `x = +inf` (zero temperature) gives 1.
pub fn thermal_population_difference(x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(BlochError::Domain(format!(
            "temperature ratio must be non-negative, got {x} (equilibrium inversion is not modelled)"
        )));
    }
    let e = (-x).exp();
    Ok(-(-x).exp_m1() / (1.0 + e))
}

/// Outcome of [`validate_physicality`]. Violations are reported, not
/// raised: the equations stay well defined outside the physical region.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhysicalityReport {
    pub t1: f64,
    pub t2: f64,
    pub r3_tilde: f64,
    pub positive_times: bool,
    pub complete_positivity: bool,
    pub thermal_in_range: bool,
    pub violations: Vec<String>,
}

impl PhysicalityReport {
    pub fn check(t1: f64, t2: f64, r3_tilde: f64) -> Self {
        let mut violations = Vec::new();
        let positive_times = t1 > 0.0 && t2 > 0.0 && t1.is_finite() && t2.is_finite();
        if !positive_times {
            violations.push(format!("T1 and T2 must be positive (T1 = {t1}, T2 = {t2})"));
        }
        let complete_positivity = 2.0 * t1 >= t2;
        if !complete_positivity {
            violations.push(format!("2T1 >= T2 violated (2T1 = {}, T2 = {t2})", 2.0 * t1));
        }
        let thermal_in_range = (0.0..=1.0).contains(&r3_tilde);
        if !thermal_in_range {
            violations.push(format!("R3_tilde = {r3_tilde} outside [0, 1]"));
        }
        Self {
            t1,
            t2,
            r3_tilde,
            positive_times,
            complete_positivity,
            thermal_in_range,
            violations,
        }
    }

    pub fn is_physical(&self) -> bool {
        self.violations.is_empty()
    }

    /// True when `2 T1 == T2` exactly.
    pub fn on_boundary(&self) -> bool {
        2.0 * self.t1 == self.t2
    }
}

pub fn validate_physicality(p: &SystemParams) -> PhysicalityReport {
    PhysicalityReport::check(p.relaxation.t1, p.relaxation.t2, p.thermal.r3_tilde)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{DriveParams, RelaxationParams, ThermalParams};

    #[test]
    fn purity_examples() {
        assert_eq!(purity(&BlochVector::GROUND), 1.0);
        assert_eq!(purity(&BlochVector::ZERO), 0.5);
        let r = BlochVector::new(-2.0 / 7.0, 0.0, 4.0 / 7.0);
        assert!((purity(&r) - 0.704082).abs() < 1e-6);
    }

    #[test]
    fn interference_examples() {
        assert_eq!(interference(&BlochVector::GROUND), 0.0);
        assert_eq!(interference(&BlochVector::new(0.0, 1.0, 0.0)), 0.25);
        let r = BlochVector::new(-2.0 / 7.0, 0.0, 4.0 / 7.0);
        assert!((interference(&r) - 1.0 / 49.0).abs() < 1e-15);
        assert!((interference(&r) - 0.020408).abs() < 1e-6);
    }

    #[test]
    fn thermal_limits() {
        assert_eq!(thermal_population_difference(f64::INFINITY).unwrap(), 1.0);
        assert_eq!(thermal_population_difference(0.0).unwrap(), 0.0);
        assert!((thermal_population_difference(3f64.ln()).unwrap() - 0.5).abs() < 1e-15);
        assert!(thermal_population_difference(-0.1).is_err());
        assert!(thermal_population_difference(f64::NAN).is_err());
    }

    fn params(t1: f64, t2: f64) -> SystemParams {
        SystemParams::new(
            RelaxationParams::new(t1, t2).unwrap(),
            DriveParams::on_resonance(1.0).unwrap(),
            ThermalParams::new(0.0).unwrap(),
        )
    }

    #[test]
    fn physicality_reports() {
        let fig1 = validate_physicality(&params(1.5, 0.5));
        assert!(fig1.is_physical());

        let boundary = validate_physicality(&params(2.5, 5.0));
        assert!(boundary.is_physical());
        assert!(boundary.on_boundary());

        let bad = validate_physicality(&params(1.0, 3.0));
        assert!(!bad.complete_positivity);
        assert!(bad.violations[0].contains("2T1 >= T2 violated"));
    }

    #[test]
    fn raw_values_flagged() {
        let r = PhysicalityReport::check(-1.0, 0.5, 1.5);
        assert!(!r.positive_times);
        assert!(!r.thermal_in_range);
        assert!(!r.complete_positivity);
        assert_eq!(r.violations.len(), 3);
    }
}

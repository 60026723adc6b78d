//! Driven, damped optical Bloch equations for a two-level system in a
//! Markovian bath.
//!
//! - [`analytic`]: closed-form on-resonance solution in all damping regimes,
//!   equilibrium state and optimal drive.
//! - [`numeric`]: RK4 integration (any detuning) and steady-state solve,
//!   independent of the closed form.
//! - [`sweep`]: parameter × time maps, time series, revival detection and
//!   grayscale quantization, with built-in figure presets.

pub mod analytic;
pub mod error;
pub mod measures;
pub mod numeric;
pub mod params;
pub mod state;
pub mod sweep;

pub use analytic::{
    classify_regime, equilibrium_relation_residual, equilibrium_state, evaluate, optimal_rabi, purity_excited_initial,
    solve_coefficients, DampingRegime, OptimalDrive, Solution, SolutionCoefficients,
};
pub use error::{BlochError, Result};
pub use measures::{interference, purity, thermal_population_difference, validate_physicality, PhysicalityReport};
pub use numeric::{bloch_rhs, integrate, steady_state, IntegratorConfig, Trajectory};
pub use params::{DriveParams, RelaxationParams, SystemParams, ThermalParams};
pub use state::{bloch_from_density, density_from_bloch, BlochVector, DensityMatrix, DEFAULT_EPS};

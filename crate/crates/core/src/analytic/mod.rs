//! Closed-form on-resonance solution of the optical Bloch equations.
//!
//! Sign convention (rotating frame, `Δ = 0`):
//!
//! ```text
//! dR1/dt = −Γ2 R1 − Ω R3
//! dR2/dt = −Γ2 R2
//! dR3/dt = +Ω R1 − Γ1 (R3 − R̃3)
//! ```
//!
//! `R2` decays on its own. `R1` and `R3` share the characteristic roots
//! `s± = −α ± β` with `α = (Γ1 + Γ2)/2` and `β² = ((Γ2 − Γ1)² − 4Ω²)/4`, and
//! are written as
//!
//! ```text
//! R_i(t) = D_i + e^{−αt} [ P_i C(βt) + M_i t S(βt) ]
//! ```
//!
//! with `C = cosh`, `S = sinhc` (see [`damped`]). `P_i = B_i + C_i` and
//! `M_i = β (C_i − B_i)` stay finite as `β → 0`, so the same expression
//! covers the overdamped, critical and underdamped regimes. The individual
//! partial-fraction amplitudes `B_i`, `C_i` are available from
//! [`SolutionCoefficients::partial_fractions`] away from critical damping.

pub mod damped;

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{BlochError, Result};
use crate::measures::purity;
use crate::params::{RelaxationParams, SystemParams};
use crate::state::{BlochVector, DensityMatrix};

pub use damped::{DampedPair, PairValues};

/// Relative tolerance on `2Ω = |Γ2 − Γ1|` for the critical regime.
pub const DEFAULT_REGIME_TOLERANCE: f64 = 1e-9;

/// Below `SMALL_FIELD_RATIO · max(Γ1, Γ2)` the field-free solution is used.
pub const SMALL_FIELD_RATIO: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DampingRegime {
    /// `2Ω < |Γ2 − Γ1|`: two real decay rates `α ± β`.
    Overdamped,
    /// `2Ω = |Γ2 − Γ1|`: degenerate roots, linear-in-time prefactors.
    Critical,
    /// `2Ω > |Γ2 − Γ1|`: damped oscillation at `|β|`.
    Underdamped,
}

impl DampingRegime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Overdamped => "overdamped",
            Self::Critical => "critical",
            Self::Underdamped => "underdamped",
        }
    }
}

pub fn classify_regime(p: &SystemParams) -> Result<DampingRegime> {
    classify_regime_with(p, DEFAULT_REGIME_TOLERANCE)
}

pub fn classify_regime_with(p: &SystemParams, tolerance: f64) -> Result<DampingRegime> {
    p.require_resonance()?;
    Ok(regime_of(p.gamma1(), p.gamma2(), p.omega(), tolerance))
}

fn regime_of(gamma1: f64, gamma2: f64, omega: f64, tolerance: f64) -> DampingRegime {
    let split = (gamma2 - gamma1).abs();
    let two_omega = 2.0 * omega;
    if two_omega < split * (1.0 - tolerance) {
        DampingRegime::Overdamped
    } else if two_omega > split * (1.0 + tolerance) {
        DampingRegime::Underdamped
    } else {
        DampingRegime::Critical
    }
}

/// Partial-fraction amplitudes multiplying `e^{s₋t}` (`B`) and `e^{s₊t}`
/// (`C`). Complex in the underdamped regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialFractions {
    pub b1: Complex64,
    pub c1: Complex64,
    pub b3: Complex64,
    pub c3: Complex64,
}

/// Coefficients of the closed-form solution for one `(params, R0)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolutionCoefficients {
    pub regime: DampingRegime,
    /// Field-free branch (`Ω` negligible against the relaxation rates).
    pub decoupled: bool,
    pub alpha: f64,
    /// `((Γ2 − Γ1)² − 4Ω²)/4`; forced to exactly 0 in the critical regime.
    pub beta_sq: f64,
    /// `s₊ s₋ = Γ1 Γ2 + Ω²`.
    pub root_product: f64,
    pub s_plus: Complex64,
    pub s_minus: Complex64,
    pub d1: f64,
    pub d3: f64,
    pub p1: f64,
    pub p3: f64,
    pub m1: f64,
    pub m3: f64,
    pub lambda: f64,
}

pub fn solve_coefficients(p: &SystemParams, r0: &BlochVector) -> Result<SolutionCoefficients> {
    p.check()?;
    p.require_resonance()?;
    let (g1, g2, omega, r3t) = (p.gamma1(), p.gamma2(), p.omega(), p.r3_tilde());

    let regime = regime_of(g1, g2, omega, DEFAULT_REGIME_TOLERANCE);
    let decoupled = omega < SMALL_FIELD_RATIO * g1.max(g2);

    let alpha = 0.5 * (g1 + g2);
    let half_split = 0.5 * (g2 - g1).abs();
    let beta_sq = match regime {
        DampingRegime::Critical => 0.0,
        _ => (half_split - omega) * (half_split + omega),
    };
    let root_product = g1 * g2 + omega * omega;
    let beta = Complex64::new(beta_sq, 0.0).sqrt();
    let s_plus = -alpha + beta;
    let s_minus = -alpha - beta;

    let d3 = g1 * g2 * r3t / root_product;
    let d1 = -g1 * omega * r3t / root_product;
    let p3 = r0.r3 - d3;
    let p1 = r0.r1 - d1;
    let lambda = omega * r0.r1 + g2 * r0.r3 + g1 * r3t;
    // M_i = R_i'(0) + α P_i
    let m3 = lambda - alpha * (r0.r3 + d3);
    let m1 = -g2 * r0.r1 - omega * r0.r3 + alpha * p1;

    Ok(SolutionCoefficients {
        regime,
        decoupled,
        alpha,
        beta_sq,
        root_product,
        s_plus,
        s_minus,
        d1,
        d3,
        p1,
        p3,
        m1,
        m3,
        lambda,
    })
}

impl SolutionCoefficients {
    pub fn pair(&self) -> DampedPair {
        DampedPair {
            alpha: self.alpha,
            beta_sq: self.beta_sq,
            root_product: self.root_product,
        }
    }

    /// `|β|`: oscillation frequency when underdamped, spread of the decay
    /// rates when overdamped.
    pub fn beta_abs(&self) -> f64 {
        self.beta_sq.abs().sqrt()
    }

    /// Raw `B`/`C` amplitudes. `None` at critical damping, where they
    /// diverge, and on the field-free branch, where `B1`/`C1` would divide
    /// by `Ω`.
    pub fn partial_fractions(&self, p: &SystemParams, r0: &BlochVector) -> Option<PartialFractions> {
        if self.regime == DampingRegime::Critical || self.decoupled {
            return None;
        }
        let (g1, g2, omega) = (p.gamma1(), p.gamma2(), p.omega());
        let source = g1 * g2 * p.r3_tilde();
        let residue = |s: Complex64, other: Complex64| (s * s * r0.r3 + s * self.lambda + source) / (s * (s - other));
        let b3 = residue(self.s_minus, self.s_plus);
        let c3 = residue(self.s_plus, self.s_minus);
        Some(PartialFractions {
            b3,
            c3,
            b1: (self.s_minus + g1) * b3 / omega,
            c1: (self.s_plus + g1) * c3 / omega,
        })
    }
}

/// Evaluates the closed-form state at `t`. `c` must come from
/// [`solve_coefficients`] with the same `p` and `r0`.
pub fn evaluate(c: &SolutionCoefficients, p: &SystemParams, r0: &BlochVector, t: f64) -> Result<BlochVector> {
    if t.is_nan() || t < 0.0 {
        return Err(BlochError::NegativeTime(t));
    }
    if t == 0.0 {
        return Ok(*r0);
    }
    let r2 = r0.r2 * (-p.gamma2() * t).exp();
    if c.decoupled {
        let r3t = p.r3_tilde();
        return Ok(BlochVector::new(
            r0.r1 * (-p.gamma2() * t).exp(),
            r2,
            r3t + (r0.r3 - r3t) * (-p.gamma1() * t).exp(),
        ));
    }
    let v = c.pair().eval(t);
    Ok(BlochVector::new(
        c.d1 + c.p1 * v.c + c.m1 * v.s,
        r2,
        c.d3 + c.p3 * v.c + c.m3 * v.s,
    ))
}

/// Closed-form trajectory bundled with its inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Solution {
    pub params: SystemParams,
    pub initial: BlochVector,
    pub coeffs: SolutionCoefficients,
}

impl Solution {
    pub fn new(params: &SystemParams, initial: &BlochVector) -> Result<Self> {
        Ok(Self {
            params: *params,
            initial: *initial,
            coeffs: solve_coefficients(params, initial)?,
        })
    }

    pub fn at(&self, t: f64) -> Result<BlochVector> {
        evaluate(&self.coeffs, &self.params, &self.initial, t)
    }

    /// Time derivative of the closed form, differentiated analytically.
    pub fn derivative(&self, t: f64) -> Result<BlochVector> {
        if t.is_nan() || t < 0.0 {
            return Err(BlochError::NegativeTime(t));
        }
        let (g1, g2) = (self.params.gamma1(), self.params.gamma2());
        let r0 = &self.initial;
        let dr2 = -g2 * r0.r2 * (-g2 * t).exp();
        let c = &self.coeffs;
        if c.decoupled {
            let r3t = self.params.r3_tilde();
            return Ok(BlochVector::new(
                -g2 * r0.r1 * (-g2 * t).exp(),
                dr2,
                -g1 * (r0.r3 - r3t) * (-g1 * t).exp(),
            ));
        }
        let v = c.pair().eval(t);
        // c' = −α c + β² s,  s' = c − α s
        let dc = -c.alpha * v.c + c.beta_sq * v.s;
        let ds = v.c - c.alpha * v.s;
        Ok(BlochVector::new(c.p1 * dc + c.m1 * ds, dr2, c.p3 * dc + c.m3 * ds))
    }

    pub fn equilibrium(&self) -> BlochVector {
        BlochVector::new(self.coeffs.d1, 0.0, self.coeffs.d3)
    }
}

/// Asymptotic state. The Bloch vector is in the rotating frame; the density
/// matrix carries the lab-frame phase `e^{i(2φ − π/2)}` on `ρ12`, so it
/// equals `density_from_bloch` of the vector only for `φ = 0`.
pub fn equilibrium_state(p: &SystemParams) -> Result<(BlochVector, DensityMatrix)> {
    p.check()?;
    p.require_resonance()?;
    let (g1, g2, omega, r3t) = (p.gamma1(), p.gamma2(), p.omega(), p.r3_tilde());
    let denom = g1 * g2 + omega * omega;
    let bloch = BlochVector::new(-g1 * omega * r3t / denom, 0.0, g1 * g2 * r3t / denom);
    Ok((bloch, equilibrium_density(p)))
}

fn equilibrium_density(p: &SystemParams) -> DensityMatrix {
    let (t1, t2) = (p.relaxation.t1, p.relaxation.t2);
    let (omega, phi, r3t) = (p.omega(), p.drive.phi, p.r3_tilde());
    let k = 1.0 + t1 * t2 * omega * omega;
    let phase = Complex64::from_polar(1.0, 2.0 * phi - FRAC_PI_2);
    DensityMatrix {
        rho11: 0.5 * (1.0 + r3t / k),
        rho22: 0.5 * (1.0 - r3t / k),
        rho12: phase * (0.5 * t2 * omega / k * r3t),
    }
}

/// `|ρ12 + ½ T2 Ω e^{i(2φ + π/2)} (ρ11 − ρ22)|` at equilibrium. Detuning is
/// ignored.
pub fn equilibrium_relation_residual(p: &SystemParams) -> f64 {
    let rho = equilibrium_density(p);
    let phase = Complex64::from_polar(1.0, 2.0 * p.drive.phi + FRAC_PI_2);
    let rhs = phase * (0.5 * p.relaxation.t2 * p.omega() * (rho.rho11 - rho.rho22));
    (rho.rho12 + rhs).norm()
}

/// `|ρ12^eq|` as a function of the drive strength.
pub fn equilibrium_coherence(relax: &RelaxationParams, omega: f64, r3_tilde: f64) -> f64 {
    let (t1, t2) = (relax.t1, relax.t2);
    0.5 * t2 * omega * r3_tilde / (1.0 + t1 * t2 * omega * omega)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimalDrive {
    /// `Ω_r = 1/√(T1 T2)`
    pub omega_r: f64,
    /// `|ρ12^eq|(Ω_r) = √(T2/T1) R̃3 / 4`
    pub max_coherence: f64,
}

/// Drive strength maximising the asymptotic coherence, and that maximum.
pub fn optimal_rabi(relax: &RelaxationParams, r3_tilde: f64) -> OptimalDrive {
    let (t1, t2) = (relax.t1, relax.t2);
    OptimalDrive {
        omega_r: 1.0 / (t1 * t2).sqrt(),
        max_coherence: (t2 / t1).sqrt() * r3_tilde / 4.0,
    }
}

/// Purity at time `t` for the initial state `R0 = (0, 0, 1)` with `R̃3 = 0`,
/// from the explicit two-term formula. The underdamped regime uses the
/// trigonometric form directly; other regimes use its continuation through
/// the damped cosh/sinhc pair.
pub fn purity_excited_initial(p: &SystemParams, t: f64) -> Result<f64> {
    p.check()?;
    p.require_resonance()?;
    if p.r3_tilde() != 0.0 {
        return Err(BlochError::Domain(format!(
            "the excited-initial purity formula holds for R3_tilde = 0 only (got {})",
            p.r3_tilde()
        )));
    }
    if t.is_nan() || t < 0.0 {
        return Err(BlochError::NegativeTime(t));
    }
    let c = solve_coefficients(p, &BlochVector::GROUND)?;
    let half_split = 0.5 * (p.gamma2() - p.gamma1());
    if c.regime == DampingRegime::Underdamped && !c.decoupled {
        let beta = c.beta_abs();
        let k = half_split / beta;
        let bt = beta * t;
        let sin = bt.sin();
        let bracket = 1.0 + 2.0 * k * k * sin * sin + k * (2.0 * bt).sin();
        return Ok(0.5 + 0.5 * bracket * (-2.0 * c.alpha * t).exp());
    }
    let v = c.pair().eval(t);
    let omega = p.omega();
    let norm_sq = v.c * v.c + 2.0 * half_split * v.c * v.s + (half_split * half_split + omega * omega) * v.s * v.s;
    Ok(0.5 + 0.5 * norm_sq)
}

/// Strong-field limit of [`purity_excited_initial`]: `1/2 + e^{−2αt}/2`.
pub fn purity_strong_field_limit(p: &SystemParams, t: f64) -> f64 {
    0.5 + 0.5 * (-(p.gamma1() + p.gamma2()) * t).exp()
}

/// Purity of the closed-form state; convenience for comparisons.
pub fn purity_at(solution: &Solution, t: f64) -> Result<f64> {
    Ok(purity(&solution.at(t)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn fig1(omega: f64, r3t: f64) -> SystemParams {
        SystemParams::on_resonance(1.5, 0.5, omega, r3t).unwrap()
    }

    #[test]
    fn regime_examples() {
        assert_eq!(classify_regime(&fig1(0.2, 0.0)).unwrap(), DampingRegime::Overdamped);
        assert_eq!(classify_regime(&fig1(2.0 / 3.0, 0.0)).unwrap(), DampingRegime::Critical);
        assert_eq!(classify_regime(&fig1(5.0, 0.0)).unwrap(), DampingRegime::Underdamped);
        let off = fig1(1.0, 0.0).with_delta(0.5).unwrap();
        assert!(matches!(classify_regime(&off), Err(BlochError::OffResonance(_))));
    }

    #[test]
    fn coefficient_examples() {
        let c = solve_coefficients(&fig1(1.0, 1.0), &BlochVector::GROUND).unwrap();
        assert_relative_eq!(c.d3, 4.0 / 7.0, epsilon = 1e-15);
        assert_relative_eq!(c.d1, -2.0 / 7.0, epsilon = 1e-15);
        assert!((c.d3 - 0.571429).abs() < 1e-6);
        assert!((c.d1 + 0.285714).abs() < 1e-6);
        assert_relative_eq!(c.beta_sq, -5.0 / 9.0, epsilon = 1e-15);
        assert!((c.beta_abs() - 0.745356).abs() < 1e-6);
        assert_relative_eq!(c.alpha, 4.0 / 3.0, epsilon = 1e-15);
        assert_relative_eq!((c.s_plus * c.s_minus).re, 4.0 / 3.0 + 1.0, epsilon = 1e-14);
        assert!((c.s_plus * c.s_minus).im.abs() < 1e-15);
    }

    #[test]
    fn field_free_coefficients() {
        let p = fig1(0.0, 0.7);
        let c = solve_coefficients(&p, &BlochVector::new(0.3, 0.2, -0.4)).unwrap();
        assert!(c.decoupled);
        assert_eq!(c.d3, 0.7);
        assert_eq!(c.d1, 0.0);
        assert!(c.partial_fractions(&p, &BlochVector::ZERO).is_none());
    }

    #[test]
    fn evaluate_at_zero_returns_initial() {
        let r0 = BlochVector::new(0.3, -0.5, 0.6);
        for omega in [0.0, 0.1, 2.0 / 3.0, 1.0, 5.0] {
            let p = fig1(omega, 0.5);
            let s = Solution::new(&p, &r0).unwrap();
            assert_eq!(s.at(0.0).unwrap(), r0);
        }
    }

    #[test]
    fn r2_decays_alone() {
        let p = SystemParams::on_resonance(1.5, 0.5, 3.0, 1.0).unwrap();
        let s = Solution::new(&p, &BlochVector::new(0.0, 1.0, 0.0)).unwrap();
        assert!((s.at(0.5).unwrap().r2 - 0.367879).abs() < 1e-6);
        assert_eq!(s.at(0.5).unwrap().r2, (-1.0f64).exp());
    }

    #[test]
    fn infinite_temperature_loses_everything() {
        let s = Solution::new(&fig1(1.0, 0.0), &BlochVector::GROUND).unwrap();
        let late = s.at(100.0).unwrap();
        assert!(late.norm() < 1e-40);
        assert!((purity(&late) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn negative_time_rejected() {
        let s = Solution::new(&fig1(1.0, 0.0), &BlochVector::GROUND).unwrap();
        assert_eq!(s.at(-1.0), Err(BlochError::NegativeTime(-1.0)));
        assert!(s.at(f64::NAN).is_err());
    }

    #[test]
    fn stable_amplitudes_match_partial_fractions() {
        let r0 = BlochVector::new(0.2, 0.1, 0.7);
        for omega in [0.1, 0.5, 1.0, 5.0] {
            let p = fig1(omega, 0.6);
            let c = solve_coefficients(&p, &r0).unwrap();
            let pf = c.partial_fractions(&p, &r0).unwrap();
            let beta = Complex64::new(c.beta_sq, 0.0).sqrt();
            let p3 = pf.b3 + pf.c3;
            let p1 = pf.b1 + pf.c1;
            let m3 = beta * (pf.c3 - pf.b3);
            let m1 = beta * (pf.c1 - pf.b1);
            for (stable, raw) in [(c.p3, p3), (c.p1, p1), (c.m3, m3), (c.m1, m1)] {
                assert!((stable - raw.re).abs() < 1e-12, "omega {omega}: {stable} vs {raw}");
                assert!(raw.im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn partial_fraction_route_matches_stable_route() {
        let r0 = BlochVector::new(-0.1, 0.0, 0.9);
        for omega in [0.2, 1.0, 4.0] {
            let p = fig1(omega, 1.0);
            let s = Solution::new(&p, &r0).unwrap();
            let pf = s.coeffs.partial_fractions(&p, &r0).unwrap();
            for i in 0..50 {
                let t = i as f64 * 0.2;
                let em = (s.coeffs.s_minus * t).exp();
                let ep = (s.coeffs.s_plus * t).exp();
                let r3 = s.coeffs.d3 + (pf.b3 * em + pf.c3 * ep).re;
                let r1 = s.coeffs.d1 + (pf.b1 * em + pf.c1 * ep).re;
                let r = s.at(t).unwrap();
                assert!((r.r3 - r3).abs() < 1e-12);
                assert!((r.r1 - r1).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn equilibrium_examples() {
        let (r, rho) = equilibrium_state(&fig1(0.0, 0.8)).unwrap();
        assert_eq!(rho.rho12.norm(), 0.0);
        assert_eq!(r.r3, 0.8);

        let (r, rho) = equilibrium_state(&fig1(1.0, 1.0)).unwrap();
        assert!((rho.rho12.im + 0.142857).abs() < 1e-6);
        assert!(rho.rho12.re.abs() < 1e-16);
        assert!((rho.rho11 - 0.785714).abs() < 1e-6);
        assert!(rho.rho11 >= rho.rho22);
        assert_relative_eq!(r.r1, -2.0 / 7.0, epsilon = 1e-15);

        let p = SystemParams::on_resonance(1e12, 0.5, 1.0, 1.0).unwrap();
        let (_, rho) = equilibrium_state(&p).unwrap();
        assert!(rho.rho12.norm() < 1e-11);
    }

    #[test]
    fn phase_only_rotates_coherence() {
        let mut p = fig1(1.0, 1.0);
        let (_, a) = equilibrium_state(&p).unwrap();
        p.drive.phi = 0.7;
        let (_, b) = equilibrium_state(&p).unwrap();
        assert_relative_eq!(a.rho12.norm(), b.rho12.norm(), epsilon = 1e-16);
        assert_eq!(a.rho11, b.rho11);
        assert!((b.rho12.arg() - (1.4 - FRAC_PI_2)).abs() < 1e-12);
    }

    #[test]
    fn relation_residual_examples() {
        assert_eq!(equilibrium_relation_residual(&fig1(0.0, 1.0)), 0.0);
        assert!(equilibrium_relation_residual(&fig1(1.0, 1.0)) <= 1e-12);
    }

    #[test]
    fn optimal_rabi_examples() {
        let relax = RelaxationParams::new(1.5, 0.5).unwrap();
        let opt = optimal_rabi(&relax, 1.0);
        assert!((opt.omega_r - 1.1547).abs() < 1e-4);
        assert!((opt.max_coherence - 0.144338).abs() < 1e-6);
        assert_relative_eq!(
            equilibrium_coherence(&relax, opt.omega_r, 1.0),
            opt.max_coherence,
            epsilon = 1e-15
        );

        let sym = RelaxationParams::new(2.0, 2.0).unwrap();
        assert_eq!(optimal_rabi(&sym, 0.6).max_coherence, 0.15);
    }

    #[test]
    fn coherence_rises_then_falls_around_optimum() {
        let relax = RelaxationParams::new(1.5, 0.5).unwrap();
        let opt = optimal_rabi(&relax, 1.0);
        let f = |w: f64| equilibrium_coherence(&relax, w, 1.0);
        let below: Vec<f64> = (1..100).map(|i| opt.omega_r * i as f64 / 100.0).collect();
        assert!(below.windows(2).all(|w| f(w[0]) < f(w[1])));
        let above: Vec<f64> = (100..400).map(|i| opt.omega_r * i as f64 / 100.0).collect();
        assert!(above.windows(2).all(|w| f(w[0]) > f(w[1])));
    }

    #[test]
    fn excited_purity_examples() {
        assert_eq!(purity_excited_initial(&fig1(5.0, 0.0), 0.0).unwrap(), 1.0);
        assert!((purity_excited_initial(&fig1(5.0, 0.0), 60.0).unwrap() - 0.5).abs() < 1e-15);

        let p = fig1(5.0, 0.0);
        let s = Solution::new(&p, &BlochVector::GROUND).unwrap();
        let direct = purity_at(&s, 1.0).unwrap();
        assert!((purity_excited_initial(&p, 1.0).unwrap() - direct).abs() < 1e-12);

        assert!(purity_excited_initial(&fig1(5.0, 0.5), 1.0).is_err());
        assert!(purity_excited_initial(&fig1(5.0, 0.0).with_delta(1.0).unwrap(), 1.0).is_err());
    }

    #[test]
    fn excited_purity_other_regimes() {
        for omega in [0.0, 0.2, 2.0 / 3.0] {
            let p = fig1(omega, 0.0);
            let s = Solution::new(&p, &BlochVector::GROUND).unwrap();
            for i in 0..40 {
                let t = i as f64 * 0.125;
                let a = purity_excited_initial(&p, t).unwrap();
                assert!((a - purity_at(&s, t).unwrap()).abs() < 1e-13, "omega {omega} t {t}");
            }
        }
    }
}

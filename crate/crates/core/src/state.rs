//! Bloch vector and 2×2 density matrix representations of the two-level state.
//!
//! The change of variables is
//!
//! ```text
//! R1 = 2 Im ρ12,   R2 = 2 Re ρ12,   R3 = ρ11 − ρ22
//! ```
//!
//! with `ρ11 + ρ22 = 1` implied by trace preservation.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{BlochError, Result};

/// Numerical slack on state invariants.
pub const DEFAULT_EPS: f64 = 1e-12;

/// State `(R1, R2, R3)` in the frame rotating with the field.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct BlochVector {
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
}

impl BlochVector {
    pub const ZERO: Self = Self {
        r1: 0.0,
        r2: 0.0,
        r3: 0.0,
    };
    /// All population in level |1⟩.
    pub const GROUND: Self = Self {
        r1: 0.0,
        r2: 0.0,
        r3: 1.0,
    };

    pub const fn new(r1: f64, r2: f64, r3: f64) -> Self {
        Self { r1, r2, r3 }
    }

    pub fn norm_sq(&self) -> f64 {
        self.r1 * self.r1 + self.r2 * self.r2 + self.r3 * self.r3
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_physical(&self, eps: f64) -> bool {
        self.norm() <= 1.0 + eps
    }

    /// Largest componentwise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.r1 - other.r1)
            .abs()
            .max((self.r2 - other.r2).abs())
            .max((self.r3 - other.r3).abs())
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.r1, self.r2, self.r3]
    }
}

impl From<[f64; 3]> for BlochVector {
    fn from(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }
}

impl Add for BlochVector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.r1 + rhs.r1, self.r2 + rhs.r2, self.r3 + rhs.r3)
    }
}

impl Sub for BlochVector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.r1 - rhs.r1, self.r2 - rhs.r2, self.r3 - rhs.r3)
    }
}

impl Mul<f64> for BlochVector {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        Self::new(self.r1 * k, self.r2 * k, self.r3 * k)
    }
}

/// Reduced density matrix of the two-level system. `ρ21 = conj(ρ12)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityMatrix {
    pub rho11: f64,
    pub rho22: f64,
    pub rho12: Complex64,
}

impl DensityMatrix {
    pub fn new(rho11: f64, rho22: f64, rho12: Complex64) -> Self {
        Self { rho11, rho22, rho12 }
    }

    pub fn rho21(&self) -> Complex64 {
        self.rho12.conj()
    }

    pub fn trace(&self) -> f64 {
        self.rho11 + self.rho22
    }

    /// Checks unit trace, populations in `[0, 1]` and positive
    /// semidefiniteness, each with slack `eps`.
    pub fn validate(&self, eps: f64) -> Result<()> {
        let (a, b) = (self.rho11, self.rho22);
        if !(a.is_finite() && b.is_finite() && self.rho12.re.is_finite() && self.rho12.im.is_finite()) {
            return Err(BlochError::InvalidDensity("non-finite entry".into()));
        }
        if (self.trace() - 1.0).abs() > eps {
            return Err(BlochError::InvalidDensity(format!("trace is {}", self.trace())));
        }
        if a < -eps || a > 1.0 + eps || b < -eps || b > 1.0 + eps {
            return Err(BlochError::InvalidDensity(format!(
                "populations ({a}, {b}) outside [0, 1]"
            )));
        }
        if self.rho12.norm_sqr() > a * b + eps {
            return Err(BlochError::InvalidDensity(format!(
                "|rho12|^2 = {} exceeds rho11*rho22 = {}",
                self.rho12.norm_sqr(),
                a * b
            )));
        }
        Ok(())
    }
}

/// `R = (2 Im ρ12, 2 Re ρ12, ρ11 − ρ22)`; fails if `rho` is not a valid
/// density matrix within [`DEFAULT_EPS`].
pub fn bloch_from_density(rho: &DensityMatrix) -> Result<BlochVector> {
    bloch_from_density_eps(rho, DEFAULT_EPS)
}

pub fn bloch_from_density_eps(rho: &DensityMatrix, eps: f64) -> Result<BlochVector> {
    rho.validate(eps)?;
    Ok(BlochVector::new(
        2.0 * rho.rho12.im,
        2.0 * rho.rho12.re,
        rho.rho11 - rho.rho22,
    ))
}

/// Inverse of [`bloch_from_density`].
pub fn density_from_bloch(r: &BlochVector) -> Result<DensityMatrix> {
    density_from_bloch_eps(r, DEFAULT_EPS)
}

pub fn density_from_bloch_eps(r: &BlochVector, eps: f64) -> Result<DensityMatrix> {
    if !r.is_physical(eps) || !r.norm().is_finite() {
        return Err(BlochError::Unphysical { norm: r.norm(), eps });
    }
    Ok(density_from_bloch_unchecked(r))
}

/// Inverse transform without the `|R| <= 1` check. Used for reporting
/// trajectories of unphysical parameter sets.
pub fn density_from_bloch_unchecked(r: &BlochVector) -> DensityMatrix {
    DensityMatrix {
        rho11: 0.5 * (1.0 + r.r3),
        rho22: 0.5 * (1.0 - r.r3),
        rho12: Complex64::new(0.5 * r.r2, 0.5 * r.r1),
    }
}

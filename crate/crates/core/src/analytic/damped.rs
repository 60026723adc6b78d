//! Damped cosh / sinhc pair shared by every damping regime.
//!
//! For roots `s± = −α ± β` of `s² + 2αs + ω0² = 0` (with `β² = α² − ω0²`
//! of either sign) the homogeneous solutions are spanned by
//!
//! ```text
//! c(t) = e^{−αt} C(βt),         C(x) = cosh x
//! s(t) = e^{−αt} t S(βt),       S(x) = sinh(x) / x
//! ```
//!
//! which turn into `cos` / `sin(|x|)/|x|` for `β² < 0` and into `1` / `1`
//! at `β = 0`. Both are entire functions of `β² t²`, so they are evaluated
//! by power series near zero and in exponential form elsewhere.

/// Below this `|β t|`, `C` and `S` come from their Taylor series.
pub const SERIES_THRESHOLD: f64 = 1e-4;

/// Parameters of the characteristic polynomial `s² + 2αs + ω0²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampedPair {
    pub alpha: f64,
    /// `α² − ω0²`; sign selects the regime.
    pub beta_sq: f64,
    /// `ω0² = s₊ s₋`, kept separately to avoid cancellation in `α − |β|`.
    pub root_product: f64,
}

/// Values of the pair at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairValues {
    /// `e^{−αt} C(βt)`
    pub c: f64,
    /// `e^{−αt} t S(βt)`
    pub s: f64,
}

/// `C` and `S` series in `y = β² t²` through the `y⁴` term.
pub fn cosh_sinhc_series(y: f64) -> (f64, f64) {
    let c = 1.0 + y * (1.0 / 2.0 + y * (1.0 / 24.0 + y * (1.0 / 720.0 + y / 40320.0)));
    let s = 1.0 + y * (1.0 / 6.0 + y * (1.0 / 120.0 + y * (1.0 / 5040.0 + y / 362880.0)));
    (c, s)
}

impl DampedPair {
    pub fn eval(&self, t: f64) -> PairValues {
        if t == 0.0 {
            return PairValues { c: 1.0, s: 0.0 };
        }
        let b = self.beta_sq.abs().sqrt();
        let bt = b * t;
        if bt < SERIES_THRESHOLD {
            let (c, s) = cosh_sinhc_series(self.beta_sq * t * t);
            let env = (-self.alpha * t).exp();
            return PairValues {
                c: env * c,
                s: env * t * s,
            };
        }
        if self.beta_sq < 0.0 {
            let env = (-self.alpha * t).exp();
            let (sin, cos) = bt.sin_cos();
            PairValues {
                c: env * cos,
                s: env * sin / b,
            }
        } else {
            // slow rate α − β = ω0² / (α + β)
            let slow = self.root_product / (self.alpha + b);
            let e_slow = (-slow * t).exp();
            let e_fast = (-(self.alpha + b) * t).exp();
            PairValues {
                c: 0.5 * (e_slow + e_fast),
                s: -e_slow * (-2.0 * bt).exp_m1() / (2.0 * b),
            }
        }
    }
}

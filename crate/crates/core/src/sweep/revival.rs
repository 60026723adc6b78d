//! Coherence revivals: intervals where an observable climbs back above a
//! threshold after having dropped below it.

use serde::{Deserialize, Serialize};

use super::{GridAxis, Observable};
use crate::analytic::Solution;
use crate::error::{BlochError, Result};

/// `ζ` level treated as "incoherent".
pub const DEFAULT_REVIVAL_THRESHOLD: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RevivalInterval {
    pub start: f64,
    pub end: f64,
    /// Still above threshold at the end of the series.
    pub persists: bool,
}

impl RevivalInterval {
    pub fn duration(&self) -> f64 {
        self.end - self.start
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RevivalReport {
    pub intervals: Vec<RevivalInterval>,
    pub threshold: f64,
    pub observable: Observable,
    pub horizon: f64,
}

impl RevivalReport {
    pub fn transient(&self) -> impl Iterator<Item = &RevivalInterval> {
        self.intervals.iter().filter(|i| !i.persists)
    }

    pub fn persistent(&self) -> Option<&RevivalInterval> {
        self.intervals.iter().find(|i| i.persists)
    }
}

/// Scans `values` sampled at `times`. `crossing(a, b)` locates the threshold
/// crossing inside a bracketing sample pair `[a, b]`.
pub fn detect_revivals_by(
    times: &[f64],
    values: &[f64],
    threshold: f64,
    observable: Observable,
    mut crossing: impl FnMut(f64, f64) -> f64,
) -> Result<RevivalReport> {
    if times.is_empty() || times.len() != values.len() {
        return Err(BlochError::EmptySeries);
    }
    let mut intervals = Vec::new();
    let mut dropped = false;
    let mut open: Option<f64> = None;
    let mut above = values[0] >= threshold;
    for i in 1..times.len() {
        let now = values[i] >= threshold;
        if now == above {
            continue;
        }
        let t = crossing(times[i - 1], times[i]);
        if now {
            if dropped {
                open = Some(t);
            }
        } else if let Some(start) = open.take() {
            intervals.push(RevivalInterval {
                start,
                end: t,
                persists: false,
            });
        } else {
            dropped = true;
        }
        above = now;
    }
    let horizon = *times.last().unwrap_or(&0.0);
    if let Some(start) = open {
        intervals.push(RevivalInterval {
            start,
            end: horizon,
            persists: true,
        });
    }
    Ok(RevivalReport {
        intervals,
        threshold,
        observable,
        horizon,
    })
}

/// Revivals of `ζ` in a sampled `(t, ζ)` table; crossings are linearly
/// interpolated.
pub fn detect_revivals(series: &[(f64, f64)], threshold: f64) -> Result<RevivalReport> {
    let times: Vec<f64> = series.iter().map(|s| s.0).collect();
    let values: Vec<f64> = series.iter().map(|s| s.1).collect();
    let lookup = |t: f64| times.partition_point(|x| *x < t);
    detect_revivals_by(&times, &values, threshold, Observable::Zeta, |a, b| {
        let (i, j) = (lookup(a), lookup(b));
        let (va, vb) = (values[i], values[j]);
        a + (threshold - va) * (b - a) / (vb - va)
    })
}

/// Revivals along a closed-form trajectory, scanned on `time_axis` and
/// refined by bisection to near machine precision.
pub fn detect_revivals_analytic(
    solution: &Solution,
    observable: Observable,
    time_axis: &GridAxis,
    threshold: f64,
) -> Result<RevivalReport> {
    let times = time_axis.values();
    let f = |t: f64| -> Result<f64> { Ok(observable.measure(&solution.at(t)?) - threshold) };
    let values = times
        .iter()
        .map(|&t| Ok(f(t)? + threshold))
        .collect::<Result<Vec<_>>>()?;
    detect_revivals_by(&times, &values, threshold, observable, |mut a, mut b| {
        let fa_above = f(a).map(|v| v >= 0.0).unwrap_or(false);
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            let above = f(mid).map(|v| v >= 0.0).unwrap_or(false);
            if above == fa_above {
                a = mid;
            } else {
                b = mid;
            }
        }
        0.5 * (a + b)
    })
}

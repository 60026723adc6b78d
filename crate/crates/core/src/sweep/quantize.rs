use serde::{Deserialize, Serialize};

use super::FieldMap;
use crate::error::{BlochError, Result};

/// Binning of map values into `levels` shadings. Level 0 is the darkest
/// (values `>= v_max`), level `levels` the lightest (values `<= v_min`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quantization {
    pub levels: u32,
    pub v_min: f64,
    pub v_max: f64,
}

impl Quantization {
    pub fn new(levels: u32, v_min: f64, v_max: f64) -> Result<Self> {
        if levels < 2 {
            return Err(BlochError::Bounds(format!("need at least 2 levels, got {levels}")));
        }
        if !(v_min.is_finite() && v_max.is_finite() && v_min < v_max) {
            return Err(BlochError::Bounds(format!(
                "need finite v_min < v_max, got [{v_min}, {v_max}]"
            )));
        }
        Ok(Self { levels, v_min, v_max })
    }

    pub fn level(&self, v: f64) -> u32 {
        if v.is_nan() || v <= self.v_min {
            return self.levels;
        }
        if v >= self.v_max {
            return 0;
        }
        let bin = ((v - self.v_min) / (self.v_max - self.v_min) * self.levels as f64).floor() as u32;
        self.levels - bin.min(self.levels)
    }

    /// 8-bit gray value of a level: `round(255 k / levels)`, 0 = black.
    pub fn gray(&self, level: u32) -> u8 {
        (255.0 * level as f64 / self.levels as f64).round() as u8
    }

    /// Bin edges `v_min + k (v_max − v_min) / levels`, `k = 0..=levels`.
    pub fn boundaries(&self) -> Vec<f64> {
        let w = self.v_max - self.v_min;
        (0..=self.levels)
            .map(|k| self.v_min + w * k as f64 / self.levels as f64)
            .collect()
    }
}

/// Level indices in the map's row-major layout.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelGrid {
    pub n_x: usize,
    pub n_y: usize,
    pub levels: u32,
    pub data: Vec<u32>,
}

impl LevelGrid {
    pub fn get(&self, iy: usize, ix: usize) -> u32 {
        self.data[iy * self.n_x + ix]
    }
}

pub fn quantize_grayscale(map: &FieldMap, levels: u32, v_min: f64, v_max: f64) -> Result<LevelGrid> {
    let q = Quantization::new(levels, v_min, v_max)?;
    Ok(LevelGrid {
        n_x: map.x_axis.n,
        n_y: map.y_axis.n,
        levels,
        data: map.values.iter().map(|&v| q.level(v)).collect(),
    })
}

//! Shock extraction from grid functions.

use super::GridFunction1D;
use crate::error::{Error, Result};

/// One extracted discontinuity sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShockSample {
    pub time: f64,
    pub position: f64,
    pub left_value: f64,
    pub right_value: f64,
}

impl ShockSample {
    pub fn strength(&self) -> f64 {
        self.left_value - self.right_value
    }
}

/// Find cell interfaces whose downward jump exceeds `threshold` times the
/// maximum amplitude; consecutive flagged interfaces are merged into one
/// locus whose sub-cell position comes from conservation-weighted
/// interpolation across the transition band.
pub fn extract_shocks(g: &GridFunction1D, threshold: f64) -> Result<Vec<ShockSample>> {
    if !(threshold > 0.0) {
        return Err(Error::domain(format!("threshold must be positive, got {threshold}")));
    }
    let amp = g.max_abs();
    if amp == 0.0 {
        return Ok(Vec::new());
    }
    let cut = threshold * amp;
    let n = g.values.len();
    let mut shocks = Vec::new();
    let mut i = 0usize;
    while i + 1 < n {
        if g.values[i] - g.values[i + 1] > cut {
            // Extend the band over consecutive flagged interfaces.
            let start = i;
            let mut end = i;
            while end + 2 < n && g.values[end + 1] - g.values[end + 2] > cut {
                end += 1;
            }
            let left_value = g.values[start];
            let right_value = g.values[end + 1];
            // Transition cells strictly between the outer interfaces.
            let a = g.x_lo + (start as f64 + 1.0) * g.dx;
            let b = g.x_lo + (end as f64 + 1.0) * g.dx;
            let mass: f64 = g.values[start + 1..=end].iter().sum::<f64>() * g.dx;
            let position = if end > start {
                // Sharp-jump equivalent preserving the band integral.
                ((mass + left_value * a - right_value * b) / (left_value - right_value))
                    .clamp(a, b)
            } else {
                a
            };
            debug_assert!(left_value >= right_value, "entropy condition violated");
            shocks.push(ShockSample {
                time: g.time,
                position,
                left_value,
                right_value,
            });
            i = end + 1;
        } else {
            i += 1;
        }
    }
    Ok(shocks)
}

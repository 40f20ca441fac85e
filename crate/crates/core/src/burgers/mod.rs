//! Exact and finite-volume solvers for the effective Burgers model, N-wave
//! profiles, shock extraction, and the N-wave convergence-rate experiment.
//!
//! Convention: the evolution variable is called `t` (it is `s = log v` in the
//! modulated setting) and the space variable `x` (it is `u = t - r` there, so
//! the right shock of the modulated profile lies at negative `u`).

mod diperna;
mod godunov;
mod hopf_lax;
mod modulated;
mod shocks;

pub use diperna::{nwave_convergence_rate, RateFit};
pub use godunov::{godunov_solve, godunov_step, ConvexFlux, GodunovRun};
pub use hopf_lax::{
    lax_oleinik_evaluate, piecewise_linear, shock_position_by_value, InitialData, PolyBump,
};
pub use modulated::{modulated_burgers_run, Level0Method, ModulatedHalt, ModulatedRun};
pub use shocks::{extract_shocks, ShockSample};

use crate::error::{Error, Result};

/// Extent constants of the two-parameter profile family: support is
/// [-q sqrt(t), p sqrt(t)].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileParams {
    pub p: f64,
    pub q: f64,
}

impl ProfileParams {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if !(p > 0.0) || !(q > 0.0) {
            return Err(Error::domain(format!(
                "profile extents must be positive and bounded away from 0, got p={p}, q={q}"
            )));
        }
        Ok(Self { p, q })
    }

    /// The conserved integral of the profile, (p^2 - q^2)/2.
    pub fn integral(&self) -> f64 {
        0.5 * (self.p * self.p - self.q * self.q)
    }
}

/// Uniform cell grid with one value per cell.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction1D {
    pub x_lo: f64,
    pub dx: f64,
    pub values: Vec<f64>,
    pub time: f64,
}

impl GridFunction1D {
    pub fn new(x_lo: f64, dx: f64, values: Vec<f64>, time: f64) -> Result<Self> {
        if !(dx > 0.0) {
            return Err(Error::domain(format!("cell width must be positive, got {dx}")));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("grid values must be finite"));
        }
        Ok(Self { x_lo, dx, values, time })
    }

    pub fn cell_center(&self, i: usize) -> f64 {
        self.x_lo + (i as f64 + 0.5) * self.dx
    }

    pub fn x_hi(&self) -> f64 {
        self.x_lo + self.dx * self.values.len() as f64
    }

    /// Cell-averaged sampling of a function given by its antiderivative,
    /// exact for piecewise-polynomial integrands.
    pub fn from_antiderivative(
        x_lo: f64,
        dx: f64,
        cells: usize,
        time: f64,
        anti: impl Fn(f64) -> f64,
    ) -> Self {
        let values = (0..cells)
            .map(|i| {
                let a = x_lo + i as f64 * dx;
                (anti(a + dx) - anti(a)) / dx
            })
            .collect();
        Self { x_lo, dx, values, time }
    }

    /// Discrete integral (cell sums).
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.dx
    }

    /// Total variation of the cell values.
    pub fn total_variation(&self) -> f64 {
        self.values.windows(2).map(|w| (w[1] - w[0]).abs()).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// L1 distance against another grid function on the same grid.
    pub fn l1_distance(&self, other: &GridFunction1D) -> f64 {
        assert_eq!(self.values.len(), other.values.len());
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>()
            * self.dx
    }
}

/// N-wave profile N(t, x) = x/t on -q sqrt(t) <= x <= p sqrt(t), 0 otherwise.
pub fn nwave(t: f64, x: f64, params: &ProfileParams) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::domain(format!("N-wave needs t > 0, got {t}")));
    }
    let root = t.sqrt();
    if x >= -params.q * root && x <= params.p * root {
        Ok(x / t)
    } else {
        Ok(0.0)
    }
}

/// Antiderivative of the N-wave in x, for exact cell averages.
pub fn nwave_antiderivative(t: f64, x: f64, params: &ProfileParams) -> f64 {
    let root = t.sqrt();
    let (lo, hi) = (-params.q * root, params.p * root);
    if x <= lo {
        0.0
    } else if x >= hi {
        (hi * hi - lo * lo) / (2.0 * t)
    } else {
        (x * x - lo * lo) / (2.0 * t)
    }
}

/// The modulated profile in null variables: u/s on -q sqrt(s) <= u <= p sqrt(s).
pub fn sigma_profile(u: f64, s: f64, params: &ProfileParams) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::domain(format!("profile needs s > 0, got {s}")));
    }
    nwave(s, u, params)
}

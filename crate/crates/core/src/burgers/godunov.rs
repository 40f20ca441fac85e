//! First-order conservative Godunov scheme with exact Riemann fluxes for a
//! convex scalar flux (Burgers u^2/2 by default).

use super::GridFunction1D;
use crate::error::{Error, Result};

/// A convex flux with its sonic point (argmin of f).
#[derive(Clone, Copy)]
pub struct ConvexFlux {
    pub f: fn(f64) -> f64,
    pub df: fn(f64) -> f64,
    pub sonic: f64,
}

impl ConvexFlux {
    pub fn burgers() -> Self {
        Self {
            f: |u| 0.5 * u * u,
            df: |u| u,
            sonic: 0.0,
        }
    }

    /// Exact Godunov interface flux for a convex f.
    fn riemann(&self, ul: f64, ur: f64) -> f64 {
        if ul > ur {
            (self.f)(ul).max((self.f)(ur))
        } else if ul <= self.sonic && self.sonic <= ur {
            (self.f)(self.sonic)
        } else {
            (self.f)(ul).min((self.f)(ur))
        }
    }

    fn max_speed(&self, g: &GridFunction1D) -> f64 {
        g.values
            .iter()
            .fold(0.0f64, |m, &u| m.max((self.df)(u).abs()))
    }
}

/// Result of a Godunov run, with the recorded step count.
#[derive(Debug, Clone)]
pub struct GodunovRun {
    pub state: GridFunction1D,
    pub steps: usize,
}

/// One conservative update by `dt`; errors when `dt` violates the CFL bound.
pub fn godunov_step(g: &mut GridFunction1D, dt: f64, flux: &ConvexFlux) -> Result<()> {
    let speed = flux.max_speed(g);
    if dt * speed > g.dx * (1.0 + 1e-12) {
        return Err(Error::StepSize(format!(
            "CFL violation: dt {} * speed {} exceeds dx {}",
            dt, speed, g.dx
        )));
    }
    let n = g.values.len();
    let lam = dt / g.dx;
    // Zero-extension outside the grid (the grid carries its own margin).
    let mut fluxes = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let ul = if i == 0 { 0.0 } else { g.values[i - 1] };
        let ur = if i == n { 0.0 } else { g.values[i] };
        fluxes.push(flux.riemann(ul, ur));
    }
    for i in 0..n {
        g.values[i] -= lam * (fluxes[i + 1] - fluxes[i]);
    }
    g.time += dt;
    Ok(())
}

/// Evolve grid data to `t_end` under a CFL factor in (0, 0.9].
///
/// The grid margin auto-expands so waves cannot reach the boundary: the
/// support can spread at most by max|f'(u)| (t_end - t0) plus 4 cells.
pub fn godunov_solve(
    u0: &GridFunction1D,
    t_end: f64,
    cfl: f64,
    flux: &ConvexFlux,
) -> Result<GodunovRun> {
    if !(cfl > 0.0 && cfl <= 0.9) {
        return Err(Error::domain(format!("CFL factor must lie in (0, 0.9], got {cfl}")));
    }
    if !(t_end > u0.time) {
        return Err(Error::domain(format!(
            "t_end {} must exceed the initial time {}",
            t_end, u0.time
        )));
    }
    let mut g = u0.clone();
    let speed0 = flux.max_speed(&g);
    let pad = (speed0 * (t_end - u0.time) / g.dx).ceil() as usize + 4;
    let mut values = vec![0.0; pad];
    values.extend_from_slice(&g.values);
    values.extend(std::iter::repeat(0.0).take(pad));
    g = GridFunction1D {
        x_lo: g.x_lo - pad as f64 * g.dx,
        dx: g.dx,
        values,
        time: g.time,
    };

    let mut steps = 0usize;
    while g.time < t_end {
        let speed = flux.max_speed(&g);
        if speed == 0.0 {
            g.time = t_end;
            break;
        }
        let dt = (cfl * g.dx / speed).min(t_end - g.time);
        godunov_step(&mut g, dt, flux)?;
        steps += 1;
        if steps > 50_000_000 {
            return Err(Error::StepSize("Godunov run exceeded the step budget".into()));
        }
    }
    Ok(GodunovRun { state: g, steps })
}

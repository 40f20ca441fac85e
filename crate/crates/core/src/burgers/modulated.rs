//! Modulated two-shock Burgers runs: evolve data near the u/s profile and
//! track the shock positions beta_s and the core slope. This is the Level-0
//! oracle for the front-tracking solver.

use super::{
    extract_shocks, godunov_solve, lax_oleinik_evaluate, shock_position_by_value, ConvexFlux,
    GridFunction1D, InitialData,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub enum Level0Method {
    /// Exact Hopf-Lax evaluation (reference).
    ExactHopfLax,
    /// First-order Godunov on the given resolution.
    Godunov { cells: usize, cfl: f64 },
}

/// A clean halt on loss of the two-shock topology.
#[derive(Debug, Clone)]
pub struct ModulatedHalt {
    pub cause: String,
    pub s: f64,
}

/// One output record of a modulated run.
#[derive(Debug, Clone, Copy)]
pub struct ModulatedSample {
    pub s: f64,
    /// u-position of the left shock (near +p sqrt(s)).
    pub beta_left: f64,
    /// u-position of the right shock (near -q sqrt(s)).
    pub beta_right: f64,
    /// |B| just inside the left / right shock.
    pub amp_left: f64,
    pub amp_right: f64,
    /// Least-squares slope of the core (near 1/s).
    pub core_slope: f64,
}

#[derive(Debug, Clone)]
pub struct ModulatedRun {
    pub samples: Vec<ModulatedSample>,
    pub halt: Option<ModulatedHalt>,
}

impl ModulatedRun {
    /// (s, beta) histories for the limit diagnostics.
    pub fn beta_history(&self, left: bool) -> Vec<(f64, f64)> {
        self.samples
            .iter()
            .map(|r| (r.s, if left { r.beta_left } else { r.beta_right }))
            .collect()
    }

    /// (t, |v|) fluid-amplitude history under the wave-zone map s = log(2t),
    /// |v| = 2 |B| e^{-s}, for the Landau-law check.
    pub fn fluid_amplitude_history(&self, left: bool) -> Vec<(f64, f64)> {
        self.samples
            .iter()
            .map(|r| {
                let t = 0.5 * r.s.exp();
                let amp = if left { r.amp_left } else { r.amp_right };
                (t, 2.0 * amp * (-r.s).exp())
            })
            .collect()
    }
}

fn scan_grid(data: &InitialData, tau: f64, s_now: f64, cells: usize) -> Result<GridFunction1D> {
    let half = 2.0 * s_now.sqrt() + 2.0;
    let dx = 2.0 * half / cells as f64;
    let values = (0..cells)
        .map(|i| {
            let u = -half + (i as f64 + 0.5) * dx;
            if tau == 0.0 {
                Ok(data.value(u))
            } else {
                lax_oleinik_evaluate(data, tau, u)
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    GridFunction1D::new(-half, dx, values, s_now)
}

fn core_slope_of(grid: &GridFunction1D, beta_right: f64, beta_left: f64) -> f64 {
    let gap = beta_left - beta_right;
    let (lo, hi) = (beta_right + 0.2 * gap, beta_left - 0.2 * gap);
    let pts: Vec<(f64, f64)> = (0..grid.values.len())
        .map(|i| (grid.cell_center(i), grid.values[i]))
        .filter(|(u, _)| *u > lo && *u < hi)
        .collect();
    if pts.len() < 3 {
        return f64::NAN;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Evolve two-shock data from s0 to s1, reporting shock positions and core
/// slopes at log-spaced outputs. Halts cleanly on topology change.
pub fn modulated_burgers_run(
    initial: &InitialData,
    s0: f64,
    s1: f64,
    n_outputs: usize,
    method: Level0Method,
) -> Result<ModulatedRun> {
    if !(s0 > 0.0 && s1 > s0) {
        return Err(Error::domain(format!("need 0 < s0 < s1, got [{s0}, {s1}]")));
    }
    if n_outputs < 2 {
        return Err(Error::domain("need at least 2 outputs"));
    }

    // The data must carry exactly two admissible shocks around a linear core.
    let initial_grid = scan_grid(initial, 0.0, s0, 1600)?;
    let initial_shocks = extract_shocks(&initial_grid, 0.2)?;
    if initial_shocks.len() != 2 {
        return Err(Error::Topology(format!(
            "modulated run needs exactly two initial shocks, found {}",
            initial_shocks.len()
        )));
    }

    let cells = 1600usize;
    let mut samples = Vec::with_capacity(n_outputs);
    let mut halt = None;

    // Godunov state evolves incrementally between outputs.
    let mut fv_state = match method {
        Level0Method::Godunov { cells, .. } => {
            let half = 2.0 * s1.sqrt() + 2.0;
            let dx = 2.0 * half / cells as f64;
            let values = (0..cells)
                .map(|i| initial.value(-half + (i as f64 + 0.5) * dx))
                .collect();
            Some(GridFunction1D::new(-half, dx, values, 0.0)?)
        }
        Level0Method::ExactHopfLax => None,
    };

    let log_ratio = (s1 / s0).ln();
    for k in 0..n_outputs {
        let s_now = if k == 0 {
            // The first output sits just past s0 so the evaluator sees t > 0.
            s0 * (log_ratio / (n_outputs as f64 - 1.0) * 1e-3).exp()
        } else {
            s0 * (log_ratio * k as f64 / (n_outputs as f64 - 1.0)).exp()
        };
        let tau = s_now - s0;

        let grid = match (&method, &mut fv_state) {
            (Level0Method::ExactHopfLax, _) => scan_grid(initial, tau, s_now, cells)?,
            (Level0Method::Godunov { cfl, .. }, Some(state)) => {
                if tau > state.time {
                    let run = godunov_solve(state, tau, *cfl, &ConvexFlux::burgers())?;
                    *state = run.state;
                }
                let mut g = state.clone();
                g.time = s_now;
                g
            }
            _ => unreachable!(),
        };

        let shocks = extract_shocks(&grid, 0.15)?;
        if shocks.len() < 2 {
            halt = Some(ModulatedHalt {
                cause: format!("two-shock topology lost ({} shocks found)", shocks.len()),
                s: s_now,
            });
            break;
        }
        let raw_right = shocks.first().unwrap();
        let raw_left = shocks.last().unwrap();
        if raw_left.position - raw_right.position < 4.0 * grid.dx {
            halt = Some(ModulatedHalt {
                cause: "shocks merged".into(),
                s: s_now,
            });
            break;
        }

        // Refine the exact-path loci by bisection on the evaluator.
        let (beta_right, beta_left) = match method {
            Level0Method::ExactHopfLax => {
                let pad = 3.0 * grid.dx;
                let br = shock_position_by_value(
                    initial,
                    tau.max(1e-12),
                    raw_right.position - pad,
                    raw_right.position + pad,
                    1e-10,
                )
                .unwrap_or(raw_right.position);
                let bl = shock_position_by_value(
                    initial,
                    tau.max(1e-12),
                    raw_left.position - pad,
                    raw_left.position + pad,
                    1e-10,
                )
                .unwrap_or(raw_left.position);
                (br, bl)
            }
            Level0Method::Godunov { .. } => (raw_right.position, raw_left.position),
        };

        samples.push(ModulatedSample {
            s: s_now,
            beta_left,
            beta_right,
            amp_left: raw_left.left_value.abs(),
            amp_right: raw_right.right_value.abs(),
            core_slope: core_slope_of(&grid, beta_right, beta_left),
        });
    }

    Ok(ModulatedRun { samples, halt })
}

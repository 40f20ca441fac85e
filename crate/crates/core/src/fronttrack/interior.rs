//! Conservative interior update of one radial region.
//!
//! State per cell: (rho, v) with the potential time derivative recovered from
//! Bernoulli. The system is
//!     d_t rho + r^{-2} d_r(r^2 rho v) = 0,
//!     d_t v + d_r(v^2/2 + w(rho)) = 0,
//! a conservative pair (mass in the r^2 dr measure, v in the dr measure) with
//! wave speeds v -+ c. Interfaces use an HLL flux evaluated in the frame of
//! the (possibly moving) edge; both cells adjacent to an edge consume the
//! same flux number, so mass telescopes exactly.

use super::Cell;
use crate::eos::EquationOfState;
use crate::error::{Error, Result};

/// Boundary condition at a region end.
#[derive(Debug, Clone, Copy)]
pub enum Boundary {
    /// Characteristic outflow (ghost = boundary cell).
    Outflow,
    /// Solid reflection (ghost mirrors the velocity).
    Reflect,
    /// Front edge: a prescribed relative flux pair (mass flux per area and
    /// v-flux, both in the edge frame) and the edge speed.
    FrontFlux { flux: (f64, f64), edge_speed: f64 },
}

/// One radial region as a list of cells plus the motion of its own edges.
#[derive(Debug, Clone)]
pub struct RegionGrid {
    pub cells: Vec<Cell>,
    /// Uniform translation speed of interior edges (null grid rides at 1).
    pub grid_speed: f64,
}

impl RegionGrid {
    pub fn new(cells: Vec<Cell>, grid_speed: f64) -> Self {
        Self { cells, grid_speed }
    }

    pub fn mass(&self) -> f64 {
        self.cells.iter().map(Cell::mass).sum()
    }

    pub fn r_lo(&self) -> f64 {
        self.cells.first().map(|c| c.r_lo).unwrap_or(f64::NAN)
    }

    pub fn r_hi(&self) -> f64 {
        self.cells.last().map(|c| c.r_hi).unwrap_or(f64::NAN)
    }

    /// Linear extrapolation of the potential to radius `r` from the nearest
    /// region end.
    pub fn extrapolate_phi(&self, r: f64) -> f64 {
        let n = self.cells.len();
        assert!(n >= 2, "region too small for extrapolation");
        let (c1, c2) = if (r - self.r_lo()).abs() < (r - self.r_hi()).abs() {
            (&self.cells[0], &self.cells[1])
        } else {
            (&self.cells[n - 2], &self.cells[n - 1])
        };
        let slope = (c2.phi - c1.phi) / (c2.center() - c1.center());
        c1.phi + slope * (r - c1.center())
    }

    /// Minmod-limited linear extrapolation of (rho, v) to radius `r` from
    /// the end of the region nearest to `r`.
    pub fn extrapolate_state(&self, r: f64) -> (f64, f64) {
        let n = self.cells.len();
        assert!(n >= 3, "region too small for extrapolation");
        let from_lo = (r - self.r_lo()).abs() < (r - self.r_hi()).abs();
        let (c0, c1, c2) = if from_lo {
            (&self.cells[0], &self.cells[1], &self.cells[2])
        } else {
            (&self.cells[n - 1], &self.cells[n - 2], &self.cells[n - 3])
        };
        let minmod = |a: f64, b: f64| {
            if a * b <= 0.0 {
                0.0
            } else if a.abs() < b.abs() {
                a
            } else {
                b
            }
        };
        let extra = |f0: f64, f1: f64, f2: f64| {
            let s01 = (f1 - f0) / (c1.center() - c0.center());
            let s12 = (f2 - f1) / (c2.center() - c1.center());
            f0 + minmod(s01, s12) * (r - c0.center())
        };
        (
            extra(c0.rho, c1.rho, c2.rho),
            extra(c0.v, c1.v, c2.v),
        )
    }

    /// Largest stable time step for a CFL factor, in the frame of the grid.
    pub fn cfl_dt(&self, eos: &EquationOfState, cfl: f64) -> Result<f64> {
        let mut dt = f64::INFINITY;
        for c in &self.cells {
            let sound = eos.sound_speed(c.rho)?;
            let speed = (c.v - self.grid_speed).abs() + sound;
            dt = dt.min(cfl * c.width() / speed);
        }
        Ok(dt)
    }
}

/// HLL flux of the (rho, v) system in the frame of an edge moving at `w`.
/// Returns (mass flux per unit area, v flux), both edge-relative.
pub fn hll_flux(
    eos: &EquationOfState,
    left: (f64, f64),
    right: (f64, f64),
    w: f64,
) -> Result<(f64, f64)> {
    let (rl, vl) = left;
    let (rr, vr) = right;
    let cl = eos.sound_speed(rl)?;
    let cr = eos.sound_speed(rr)?;
    let wl = eos.enthalpy(rl)?;
    let wr = eos.enthalpy(rr)?;
    // Davis estimates, shifted into the edge frame.
    let sl = (vl - cl).min(vr - cr) - w;
    let sr = (vl + cl).max(vr + cr) - w;
    let fl = (rl * (vl - w), 0.5 * vl * vl + wl - w * vl);
    let fr = (rr * (vr - w), 0.5 * vr * vr + wr - w * vr);
    if sl >= 0.0 {
        Ok(fl)
    } else if sr <= 0.0 {
        Ok(fr)
    } else {
        let den = sr - sl;
        Ok((
            (sr * fl.0 - sl * fr.0 + sl * sr * (rr - rl)) / den,
            (sr * fl.1 - sl * fr.1 + sl * sr * (vr - vl)) / den,
        ))
    }
}

/// Advance one region by `dt` with the given end conditions. Edges translate
/// at the grid speed except where a `FrontFlux` boundary supplies its own
/// edge speed. Returns the signed mass that entered through (left end,
/// right end), for the conservation ledger.
pub fn interior_step(
    region: &mut RegionGrid,
    eos: &EquationOfState,
    dt: f64,
    left_bc: Boundary,
    right_bc: Boundary,
) -> Result<(f64, f64)> {
    let n = region.cells.len();
    if n < 3 {
        return Err(Error::Topology(format!("region shrank to {n} cells")));
    }
    let w = region.grid_speed;

    // CFL audit in the grid frame.
    for c in &region.cells {
        let speed = (c.v - w).abs() + eos.sound_speed(c.rho)?;
        if dt * speed > c.width() * (1.0 + 1e-9) {
            return Err(Error::StepSize(format!(
                "CFL violation in cell at r = {}: dt {dt} * speed {speed} > width {}",
                c.center(),
                c.width()
            )));
        }
    }

    // Edge fluxes: n+1 edges. Each entry holds (relative mass flux, relative
    // v flux, edge speed, edge radius).
    let mut edges = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let (flux, speed, radius) = if i == 0 {
            let c = &region.cells[0];
            match left_bc {
                Boundary::FrontFlux { flux, edge_speed } => (flux, edge_speed, c.r_lo),
                Boundary::Outflow => (
                    hll_flux(eos, (c.rho, c.v), (c.rho, c.v), w)?,
                    w,
                    c.r_lo,
                ),
                Boundary::Reflect => (
                    hll_flux(eos, (c.rho, -c.v + 2.0 * w), (c.rho, c.v), w)?,
                    w,
                    c.r_lo,
                ),
            }
        } else if i == n {
            let c = &region.cells[n - 1];
            match right_bc {
                Boundary::FrontFlux { flux, edge_speed } => (flux, edge_speed, c.r_hi),
                Boundary::Outflow => (
                    hll_flux(eos, (c.rho, c.v), (c.rho, c.v), w)?,
                    w,
                    c.r_hi,
                ),
                Boundary::Reflect => (
                    hll_flux(eos, (c.rho, c.v), (c.rho, -c.v + 2.0 * w), w)?,
                    w,
                    c.r_hi,
                ),
            }
        } else {
            let a = &region.cells[i - 1];
            let b = &region.cells[i];
            (hll_flux(eos, (a.rho, a.v), (b.rho, b.v), w)?, w, b.r_lo)
        };
        edges.push((flux, speed, radius));
    }

    // Conserved contents before the move.
    let masses: Vec<f64> = region.cells.iter().map(Cell::mass).collect();
    let momenta: Vec<f64> = region.cells.iter().map(|c| c.v * c.width()).collect();

    // Move edges, then update contents with midpoint edge radii.
    let mut new_edges = Vec::with_capacity(n + 1);
    for &(_, speed, radius) in &edges {
        new_edges.push(radius + dt * speed);
    }
    let mut mass_in_left = 0.0;
    let mut mass_in_right = 0.0;
    for i in 0..n {
        let (f_lo, _, r_lo) = edges[i];
        let (f_hi, _, r_hi) = edges[i + 1];
        let rl_mid = 0.5 * (r_lo + new_edges[i]);
        let rh_mid = 0.5 * (r_hi + new_edges[i + 1]);
        let m_lo = dt * rl_mid * rl_mid * f_lo.0;
        let m_hi = dt * rh_mid * rh_mid * f_hi.0;
        let new_mass = masses[i] + m_lo - m_hi;
        let new_mom = momenta[i] + dt * (f_lo.1 - f_hi.1);
        if i == 0 {
            mass_in_left = m_lo;
        }
        if i == n - 1 {
            mass_in_right = -m_hi;
        }
        let c = &mut region.cells[i];
        c.r_lo = new_edges[i];
        c.r_hi = new_edges[i + 1];
        let vol = c.shell_volume();
        let width = c.width();
        if vol <= 0.0 || width <= 0.0 {
            return Err(Error::StepSize(format!(
                "cell inverted at r = {}",
                c.center()
            )));
        }
        c.rho = new_mass / vol;
        c.v = new_mom / width;
        if !(c.rho > 0.0) {
            return Err(Error::Vacuum {
                w: f64::NEG_INFINITY,
                threshold: eos.vacuum_threshold(),
            });
        }
    }
    Ok((mass_in_left, mass_in_right))
}

//! Spherically symmetric shock-front solver: three radial regions evolved by
//! a conservative finite-volume scheme, with two tracked fronts enforcing the
//! restricted Rankine-Hugoniot conditions (mass-flux continuity and potential
//! continuity) and a transport-equation residual monitor for the front
//! positions.
//!
//! The grid is arranged in null fashion: every cell edge translates outward
//! at speed 1 (the wave zone rides the light cone), and the front edges move
//! at the resolved shock speeds, so the pulse stays resolved for arbitrarily
//! long runs. All updates are edge-flux based with shared flux numbers across
//! each edge, so the discrete mass changes only through the outer boundaries.

mod init;
mod interior;
mod rh;
mod run;
mod step;

pub use init::init_from_profile;
pub use interior::{hll_flux, interior_step, Boundary, RegionGrid};
pub use rh::{rh_solve, LaxReport, RhInput, RhSolution};
pub use run::{run, FrontTrackConfig, RunOutput, RunSummary, SeriesRow};
pub use step::{step, FrontMonitor, StepReport};

use crate::eos::EquationOfState;
use crate::geometry::FrontSide;

/// One radial cell: edges, fluid state, and the potential at the center.
#[derive(Debug, Clone, Copy)]
pub struct Cell {
    pub r_lo: f64,
    pub r_hi: f64,
    pub rho: f64,
    pub v: f64,
    pub phi: f64,
}

impl Cell {
    pub fn width(&self) -> f64 {
        self.r_hi - self.r_lo
    }

    pub fn center(&self) -> f64 {
        0.5 * (self.r_lo + self.r_hi)
    }

    /// Shell volume per steradian, (r_hi^3 - r_lo^3)/3.
    pub fn shell_volume(&self) -> f64 {
        (self.r_hi * self.r_hi * self.r_hi - self.r_lo * self.r_lo * self.r_lo) / 3.0
    }

    pub fn mass(&self) -> f64 {
        self.rho * self.shell_volume()
    }
}

/// A tracked front: current radius, resolved speed, the last RH solution
/// traces, and the (s, beta) history.
#[derive(Debug, Clone)]
pub struct FrontHead {
    pub side: FrontSide,
    pub radius: f64,
    pub speed: f64,
    /// Upstream trace (extrapolated interior state on the supersonic side).
    pub upstream: rh::SideTrace,
    /// Downstream boundary state resolved by the jump conditions.
    pub downstream: rh::SideTrace,
    /// Samples (s, beta = t - R).
    pub beta_history: Vec<(f64, f64)>,
}

impl FrontHead {
    /// beta = t - R(t) evaluated now.
    pub fn beta(&self, t: f64) -> f64 {
        t - self.radius
    }

    /// s = log(t + R(t)) on the front.
    pub fn s(&self, t: f64) -> f64 {
        (t + self.radius).ln()
    }
}

/// The full solver state: three region grids, two fronts, and bookkeeping
/// for the conservation monitor.
#[derive(Debug, Clone)]
pub struct SimulationState {
    pub left: RegionGrid,
    pub center: RegionGrid,
    pub right: RegionGrid,
    pub front_left: FrontHead,
    pub front_right: FrontHead,
    pub time: f64,
    pub step_count: u64,
    pub eos: EquationOfState,
    /// Base cell width per region, the remeshing reference.
    pub base_dx: f64,
    /// Total mass at initialization.
    pub mass0: f64,
    /// Accumulated mass through the outer domain boundaries (signed, into
    /// the domain).
    pub boundary_mass_in: f64,
    /// max |Phi| seen at initialization, the [Phi] tolerance scale.
    pub phi_scale: f64,
}

impl SimulationState {
    pub fn total_mass(&self) -> f64 {
        self.left.mass() + self.center.mass() + self.right.mass()
    }

    /// Conservation defect relative to the initial mass: the discrete mass
    /// minus initial mass minus accumulated boundary inflow.
    pub fn mass_defect(&self) -> f64 {
        (self.total_mass() - self.mass0 - self.boundary_mass_in) / self.mass0
    }

    /// Potential jump at a front (downstream minus upstream extrapolation).
    pub fn phi_jump(&self, side: FrontSide) -> f64 {
        let (front, up_region, down_region) = match side {
            FrontSide::Right => (&self.front_right, &self.right, &self.center),
            FrontSide::Left => (&self.front_left, &self.center, &self.left),
        };
        let up = up_region.extrapolate_phi(front.radius);
        let down = down_region.extrapolate_phi(front.radius);
        down - up
    }
}

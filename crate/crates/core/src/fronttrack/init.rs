//! Initial data: the two-shock model profile with an optional compact
//! velocity perturbation.
//!
//! Inside the band between the fronts the velocity is the profile slope
//! v = (r - t0) / (r log(t0 + r)) (the radial gradient of the model potential
//! u^2/(2 r s)); outside both fronts the fluid is exactly at rest. The
//! potential is the antiderivative of v anchored to 0 at the outer boundary,
//! so it vanishes identically in the right region and is continuous across
//! both fronts ([Phi] = 0 exactly at t0).

use super::interior::RegionGrid;
use super::rh::{rh_solve, RhInput, SideTrace};
use super::run::FrontTrackConfig;
use super::{Cell, FrontHead, SimulationState};
use crate::eos::{EquationOfState, PotentialDerivs};
use crate::error::{Error, Result};
use crate::geometry::FrontSide;

/// Solve t0 - r = extent * sqrt(log(t0 + r)) for the front radius (negative
/// extent places the front outside the light cone).
fn front_radius(t0: f64, signed_extent: f64) -> f64 {
    let mut r = t0 - signed_extent * (2.0 * t0).ln().sqrt();
    for _ in 0..60 {
        let next = t0 - signed_extent * (t0 + r).ln().sqrt();
        if (next - r).abs() <= 1e-14 * t0 {
            r = next;
            break;
        }
        r = next;
    }
    r
}

/// Model band velocity.
fn model_velocity(t0: f64, r: f64) -> f64 {
    (r - t0) / (r * (t0 + r).ln())
}

/// Model band time derivative of the potential (leading form, d_t of
/// u^2/(2 r s)).
fn model_a(t0: f64, r: f64) -> f64 {
    let u = t0 - r;
    let s = (t0 + r).ln();
    u / (r * s) - u * u / (2.0 * r * s * s * (t0 + r))
}

/// Compact C^1 bump (1 - y^2)^2 on |y| < 1.
fn bump(y: f64) -> f64 {
    if y.abs() >= 1.0 {
        0.0
    } else {
        let z = 1.0 - y * y;
        z * z
    }
}

/// Build the three-region state from the profile configuration.
pub fn init_from_profile(eos: &EquationOfState, cfg: &FrontTrackConfig) -> Result<SimulationState> {
    cfg.validate()?;
    let t0 = cfg.t0;
    if (2.0 * t0).ln() < 2.0 {
        return Err(Error::domain(format!(
            "t0 = {t0} too small: the profile needs log(2 t0) >= 2"
        )));
    }

    let r_left = front_radius(t0, cfg.p);
    let r_right = front_radius(t0, -cfg.q);
    let band = r_right - r_left;
    if !(band > 0.0) {
        return Err(Error::domain("front seed radii are not ordered".into()));
    }

    // Cell budget: 40% central, 30% per outer region; outer width scales
    // with the band.
    let n_center = (cfg.cells * 2 / 5).max(16);
    let n_outer = ((cfg.cells - n_center) / 2).max(12);
    let base_dx = band / n_center as f64;
    let outer_width = cfg.outer_width_factor * band;

    let amp = cfg.p.max(cfg.q) * (2.0 * t0).ln().sqrt() / (t0 * (2.0 * t0).ln());
    let pert_center = 0.5 * (r_left + r_right);
    let pert_width = 0.2 * band;
    let velocity = |r: f64| -> f64 {
        let mut v = model_velocity(t0, r);
        if cfg.epsilon > 0.0 {
            v += cfg.epsilon * amp * bump((r - pert_center) / pert_width);
        }
        v
    };

    let build_region = |r0: f64, r1: f64, n: usize, in_band: bool| -> Result<Vec<Cell>> {
        let dr = (r1 - r0) / n as f64;
        (0..n)
            .map(|i| {
                let r_lo = r0 + i as f64 * dr;
                let r = r_lo + 0.5 * dr;
                let (a, v) = if in_band {
                    (model_a(t0, r), velocity(r))
                } else {
                    (0.0, 0.0)
                };
                let st = eos.bernoulli_state(PotentialDerivs { a, b: v })?;
                Ok(Cell {
                    r_lo,
                    r_hi: r_lo + dr,
                    rho: st.rho,
                    v,
                    phi: 0.0,
                })
            })
            .collect()
    };

    let mut right = RegionGrid::new(
        build_region(r_right, r_right + outer_width, n_outer, false)?,
        1.0,
    );
    let mut center = RegionGrid::new(build_region(r_left, r_right, n_center, true)?, 1.0);
    let mut left = RegionGrid::new(
        build_region(r_left - outer_width, r_left, n_outer, false)?,
        1.0,
    );

    // Potential: anchored antiderivative of v from the outer boundary in.
    // The right region is exactly at rest, so Phi = 0 there; across the
    // right front Phi is continuous by construction; through the band it is
    // the cumulative Simpson integral of the seeded velocity; the left
    // region takes the constant that continuity dictates.
    for c in &mut right.cells {
        c.phi = 0.0;
    }
    let mut phi_edge = 0.0; // Phi at the right front
    let mut phi_at = |r_hi: f64, r_lo: f64, acc: &mut f64, v_of: &dyn Fn(f64) -> f64| -> f64 {
        // integrate inward over [r_lo, r_hi] with Simpson
        let mid = 0.5 * (r_lo + r_hi);
        *acc -= (r_hi - r_lo) / 6.0 * (v_of(r_lo) + 4.0 * v_of(mid) + v_of(r_hi));
        *acc
    };
    let vfun: &dyn Fn(f64) -> f64 = &velocity;
    let mut prev_edge = r_right;
    for c in center.cells.iter_mut().rev() {
        // phi at the cell center, integrating from the previous edge.
        let at_center = phi_at(prev_edge, c.center(), &mut phi_edge, vfun);
        c.phi = at_center;
        // continue to the lower edge
        phi_at(c.center(), c.r_lo, &mut phi_edge, vfun);
        prev_edge = c.r_lo;
    }
    let phi_left_const = phi_edge;
    for c in &mut left.cells {
        c.phi = phi_left_const;
    }

    let phi_scale = center
        .cells
        .iter()
        .map(|c| c.phi.abs())
        .fold(phi_left_const.abs(), f64::max);

    let mut state = SimulationState {
        mass0: 0.0,
        boundary_mass_in: 0.0,
        phi_scale: phi_scale.max(1e-300),
        time: t0,
        step_count: 0,
        eos: eos.clone(),
        base_dx,
        front_left: FrontHead {
            side: FrontSide::Left,
            radius: r_left,
            speed: 1.0,
            upstream: SideTrace::default(),
            downstream: SideTrace::default(),
            beta_history: Vec::new(),
        },
        front_right: FrontHead {
            side: FrontSide::Right,
            radius: r_right,
            speed: 1.0,
            upstream: SideTrace::default(),
            downstream: SideTrace::default(),
            beta_history: Vec::new(),
        },
        left,
        center,
        right,
    };
    state.mass0 = state.total_mass();

    // Resolve both fronts once so the heads start with consistent speeds and
    // the Lax structure is verified on the seed data.
    let (up_r, _) = state.right.extrapolate_state(r_right);
    let j_plus_c = trace_j_plus(&state.eos, &state.center, r_right)?;
    let sol_r = rh_solve(
        &state.eos,
        &RhInput {
            upstream_rho: up_r,
            upstream_v: 0.0,
            downstream_j_plus: j_plus_c,
            guess_speed: 1.0 + 1e-6,
        },
    )?;
    if !sol_r.lax.holds() {
        return Err(Error::Lax(format!(
            "right front inadmissible on the seed data: {:?}",
            sol_r.lax
        )));
    }
    state.front_right.speed = sol_r.speed;

    let (up_rho_c, up_v_c) = state.center.extrapolate_state(r_left);
    let j_plus_l = trace_j_plus(&state.eos, &state.left, r_left)?;
    let sol_l = rh_solve(
        &state.eos,
        &RhInput {
            upstream_rho: up_rho_c,
            upstream_v: up_v_c,
            downstream_j_plus: j_plus_l,
            guess_speed: 1.0 - 1e-6,
        },
    )?;
    if !sol_l.lax.holds() {
        return Err(Error::Lax(format!(
            "left front inadmissible on the seed data: {:?}",
            sol_l.lax
        )));
    }
    state.front_left.speed = sol_l.speed;

    let s_l = state.front_left.s(t0);
    let s_r = state.front_right.s(t0);
    state.front_left.beta_history.push((s_l, t0 - r_left));
    state.front_right.beta_history.push((s_r, t0 - r_right));
    Ok(state)
}

/// Impinging invariant J+ = v + ell(rho) extrapolated to the front from the
/// downstream region interior.
pub(super) fn trace_j_plus(
    eos: &EquationOfState,
    region: &RegionGrid,
    r: f64,
) -> Result<f64> {
    let (rho, v) = region.extrapolate_state(r);
    Ok(v + eos.riemann_ell(rho.max(1e-12))?)
}

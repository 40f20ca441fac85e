//! The restricted Rankine-Hugoniot solve at a tracked front.
//!
//! Unknowns: the front speed and the downstream boundary state's free
//! Riemann invariant (the emanating one); the impinging invariant
//! J+ = v + ell(rho) is supplied by the downstream interior trace.
//! Equations: mass-flux continuity  rho_u (v_u - speed) = rho_d (v_d - speed)
//! and the tangential potential condition  [d_t Phi] + speed [d_r Phi] = 0,
//! i.e. (a_u - a_d) + speed (v_u - v_d) = 0 with a = -w(rho) - v^2/2.
//!
//! The Lax/determinism structure is checked on the solution: the upstream
//! normal flow must be supersonic and the downstream one subsonic, the
//! discrete shadow of the spacelike-upstream / timelike-downstream causal
//! classification of the fronts.

use crate::eos::EquationOfState;
use crate::error::{Error, Result};

/// Fluid trace on one side of a front, with the potential value for the
/// continuity monitor.
#[derive(Debug, Clone, Copy, Default)]
pub struct SideTrace {
    pub rho: f64,
    pub v: f64,
    /// Bernoulli-consistent time derivative of the potential.
    pub a: f64,
    pub phi: f64,
}

/// Inputs of one front solve.
#[derive(Debug, Clone, Copy)]
pub struct RhInput {
    /// Full upstream state (supersonic side).
    pub upstream_rho: f64,
    pub upstream_v: f64,
    /// Impinging characteristic invariant v + ell(rho) of the downstream
    /// interior.
    pub downstream_j_plus: f64,
    pub guess_speed: f64,
}

/// Lax margins; both must be positive at an admissible front.
#[derive(Debug, Clone, Copy)]
pub struct LaxReport {
    /// |speed - v_up| - c_up.
    pub upstream_margin: f64,
    /// c_down - |speed - v_down|.
    pub downstream_margin: f64,
}

impl LaxReport {
    pub fn holds(&self) -> bool {
        self.upstream_margin > 0.0 && self.downstream_margin > 0.0
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RhSolution {
    pub speed: f64,
    pub downstream_rho: f64,
    pub downstream_v: f64,
    /// Residuals of (mass, tangential-Phi) relative to their scales.
    pub residual: (f64, f64),
    pub iterations: usize,
    pub lax: LaxReport,
}

fn bernoulli_a(eos: &EquationOfState, rho: f64, v: f64) -> Result<f64> {
    Ok(-eos.enthalpy(rho)? - 0.5 * v * v)
}

/// Solve the two jump conditions for (speed, downstream state).
pub fn rh_solve(eos: &EquationOfState, input: &RhInput) -> Result<RhSolution> {
    let (ru, vu) = (input.upstream_rho, input.upstream_v);
    let cu = eos.sound_speed(ru)?;
    let au = bernoulli_a(eos, ru, vu)?;
    let ju = vu + eos.riemann_ell(ru)?;
    let scale_mass = ru * (cu + (vu - input.guess_speed).abs()).max(cu);
    let scale_phi = (cu * cu + input.guess_speed.abs() * (vu.abs() + cu)).max(cu * cu);

    // A front with no jump cannot be resolved.
    if (input.downstream_j_plus - ju).abs() <= 1e-13 * (ju.abs() + cu) {
        return Err(Error::domain(
            "degenerate shock: downstream invariant matches the upstream state ([rho] = 0)",
        ));
    }

    // Unknowns: x = (speed, j_minus).
    let mut speed = input.guess_speed;
    let mut j_minus = vu - eos.riemann_ell(ru)?;
    let mut iterations = 0usize;
    let mut res = (f64::INFINITY, f64::INFINITY);
    let mut state = (ru, vu);
    while iterations < 50 {
        iterations += 1;
        let vd = 0.5 * (input.downstream_j_plus + j_minus);
        let ell_d = 0.5 * (input.downstream_j_plus - j_minus);
        let rd = eos.density_of_riemann_ell(ell_d)?;
        let cd = eos.sound_speed(rd)?;
        let ad = bernoulli_a(eos, rd, vd)?;
        let f1 = ru * (vu - speed) - rd * (vd - speed);
        let f2 = (au - ad) + speed * (vu - vd);
        res = (f1.abs() / scale_mass, f2.abs() / scale_phi);
        state = (rd, vd);
        if res.0 <= 1e-12 && res.1 <= 1e-12 {
            break;
        }
        // Analytic Jacobian: d rho_d / d j_minus = -rho_d/(2 c_d),
        // d v_d / d j_minus = 1/2.
        let drd = -0.5 * rd / cd;
        let j11 = rd - ru; // dF1/dspeed
        let j12 = -(drd * (vd - speed) + 0.5 * rd);
        let j21 = vu - vd; // dF2/dspeed
        // dF2/dj- = -(da_d) where da_d = (-c^2/rho) drd + (-v_d)(1/2),
        // plus speed * (-1/2).
        let j22 = -((-cd * cd / rd) * drd + (-vd) * 0.5) - 0.5 * speed;
        let det = j11 * j22 - j12 * j21;
        if det.abs() < 1e-300 {
            return Err(Error::NewtonDiverged(
                "singular Jacobian in the front solve".into(),
            ));
        }
        let ds = (f1 * j22 - f2 * j12) / det;
        let dj = (j21 * f1 - j11 * f2) / -det;
        speed -= ds;
        j_minus -= dj;
        if !speed.is_finite() || !j_minus.is_finite() {
            return Err(Error::NewtonDiverged("iterate left the real line".into()));
        }
    }
    if res.0 > 1e-10 || res.1 > 1e-10 {
        return Err(Error::NewtonDiverged(format!(
            "front solve stalled after {iterations} iterations, residuals {res:?}"
        )));
    }
    let (rd, vd) = state;
    if (rd - ru).abs() <= 1e-12 * ru {
        return Err(Error::domain(
            "degenerate shock: densities coincide across the front ([rho] = 0)",
        ));
    }
    let cd = eos.sound_speed(rd)?;
    let lax = LaxReport {
        upstream_margin: (speed - vu).abs() - cu,
        downstream_margin: cd - (speed - vd).abs(),
    };
    Ok(RhSolution {
        speed,
        downstream_rho: rd,
        downstream_v: vd,
        residual: res,
        iterations,
        lax,
    })
}

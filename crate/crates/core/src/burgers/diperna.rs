//! The N-wave convergence-rate experiment: evolve compact data with the
//! exact solver, estimate the profile extents from the final-time shock
//! positions, and fit the L1 distance to the N-wave against t in log-log.

use super::{extract_shocks, lax_oleinik_evaluate, nwave, GridFunction1D, InitialData, ProfileParams};
use crate::error::{Error, Result};

/// Result of the rate experiment.
#[derive(Debug, Clone)]
pub struct RateFit {
    /// Fitted exponent of err ~ C t^a.
    pub exponent: f64,
    pub prefactor: f64,
    pub r_squared: f64,
    /// Profile extents estimated from the final-time shock loci.
    pub p_hat: f64,
    pub q_hat: f64,
    /// (t, L1 error) per requested time.
    pub per_time: Vec<(f64, f64)>,
}

fn sample_grid(data: &InitialData, t: f64, x_lo: f64, x_hi: f64, cells: usize) -> Result<GridFunction1D> {
    let dx = (x_hi - x_lo) / cells as f64;
    let values = (0..cells)
        .map(|i| lax_oleinik_evaluate(data, t, x_lo + (i as f64 + 0.5) * dx))
        .collect::<Result<Vec<f64>>>()?;
    GridFunction1D::new(x_lo, dx, values, t)
}

/// Half-width that safely contains the solution support at time t.
fn support_half_width(data: &InitialData, t: f64) -> f64 {
    // The shock extents are bounded through the primitive range.
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..=512 {
        let y = -40.0 + 80.0 * i as f64 / 512.0;
        let u = data.primitive(y);
        lo = lo.min(u);
        hi = hi.max(u);
    }
    1.5 * (2.0 * (hi - lo).max(1e-12)).sqrt() * t.sqrt() + 42.0
}

/// Estimate (p, q) from the outermost extracted shocks at time `t`.
pub fn estimate_profile_extents(
    data: &InitialData,
    t: f64,
    cells: usize,
) -> Result<ProfileParams> {
    let half = support_half_width(data, t);
    let grid = sample_grid(data, t, -half, half, cells)?;
    let shocks = extract_shocks(&grid, 0.2)?;
    if shocks.len() < 2 {
        return Err(Error::Fit(format!(
            "expected two shocks at t = {t}, found {}",
            shocks.len()
        )));
    }
    let left = shocks.first().unwrap().position;
    let right = shocks.last().unwrap().position;
    let root = t.sqrt();
    ProfileParams::new(right / root, -left / root)
        .map_err(|_| Error::Fit(format!("degenerate shock extents at t = {t}: [{left}, {right}]")))
}

/// L1 distance between the entropy solution at `t` and N(t, p, q).
pub fn l1_distance_to_nwave(
    data: &InitialData,
    t: f64,
    params: &ProfileParams,
    cells: usize,
) -> Result<f64> {
    let half = 1.5 * params.p.max(params.q) * t.sqrt() + 2.0;
    let dx = 2.0 * half / cells as f64;
    let mut acc = 0.0;
    for i in 0..cells {
        let x = -half + (i as f64 + 0.5) * dx;
        let sol = lax_oleinik_evaluate(data, t, x)?;
        acc += (sol - nwave(t, x, params)?).abs() * dx;
    }
    Ok(acc)
}

/// Least squares in log-log: fits y = C t^a and returns (C, a, R^2).
pub fn log_log_fit(samples: &[(f64, f64)]) -> Result<(f64, f64, f64)> {
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .filter(|(t, y)| *t > 0.0 && *y > 0.0)
        .map(|&(t, y)| (t.ln(), y.ln()))
        .collect();
    if pts.len() < 3 {
        return Err(Error::Fit(format!(
            "need at least 3 positive samples, have {}",
            pts.len()
        )));
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-300 {
        return Err(Error::Fit("degenerate abscissae".into()));
    }
    let a = (n * sxy - sx * sy) / denom;
    let b = (sy - a * sx) / n;
    let mean_y = sy / n;
    let ss_tot: f64 = pts.iter().map(|p| (p.1 - mean_y) * (p.1 - mean_y)).sum();
    let ss_res: f64 = pts
        .iter()
        .map(|p| {
            let r = p.1 - (a * p.0 + b);
            r * r
        })
        .sum();
    let r2 = if ss_tot > 0.0 { 1.0 - ss_res / ss_tot } else { 1.0 };
    Ok((b.exp(), a, r2))
}

/// Run the convergence-rate experiment over the given times.
pub fn nwave_convergence_rate(
    data: &InitialData,
    times: &[f64],
    cells: usize,
) -> Result<RateFit> {
    if times.len() < 3 {
        return Err(Error::Fit("need at least 3 times".into()));
    }
    for w in times.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::Fit("times must be increasing".into()));
        }
    }
    let t_first = times[0];
    let t_last = *times.last().unwrap();
    if t_last / t_first < 100.0 {
        return Err(Error::Fit(format!(
            "times must span at least two decades, have {}",
            t_last / t_first
        )));
    }
    let params = estimate_profile_extents(data, t_last, cells)?;
    let per_time: Vec<(f64, f64)> = times
        .iter()
        .map(|&t| Ok((t, l1_distance_to_nwave(data, t, &params, cells)?)))
        .collect::<Result<Vec<_>>>()?;
    let (prefactor, exponent, r_squared) = log_log_fit(&per_time)?;
    Ok(RateFit {
        exponent,
        prefactor,
        r_squared,
        p_hat: params.p,
        q_hat: params.q,
        per_time,
    })
}

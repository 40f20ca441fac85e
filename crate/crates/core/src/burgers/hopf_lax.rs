//! Entropy solutions of Burgers' equation by minimization of the Hopf
//! functional G(y) = U0(y) + (x-y)^2 / (2t), where U0 is the primitive of the
//! initial datum.
//!
//! The minimizer set is found by a coarse scan followed by golden-section
//! refinement of every near-minimal basin; at a shock the minimizer jumps and
//! the left-limit value (smallest minimizer) is returned.

use super::{nwave_antiderivative, GridFunction1D, ProfileParams};
use crate::error::{Error, Result};

/// A compactly supported C^1 polynomial bump
/// a (1 - ((x-c)/w)^2)^2 on |x - c| <= w, used to perturb profiles while
/// keeping the primitive in closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyBump {
    pub center: f64,
    pub amplitude: f64,
    pub width: f64,
}

impl PolyBump {
    fn value(&self, x: f64) -> f64 {
        let y = (x - self.center) / self.width;
        if y.abs() >= 1.0 {
            0.0
        } else {
            let z = 1.0 - y * y;
            self.amplitude * z * z
        }
    }

    fn primitive(&self, x: f64) -> f64 {
        // Int (1-y^2)^2 dy = y - 2y^3/3 + y^5/5, anchored to 0 at y = -1.
        let y = ((x - self.center) / self.width).clamp(-1.0, 1.0);
        let poly = y - 2.0 * y.powi(3) / 3.0 + y.powi(5) / 5.0 + 8.0 / 15.0;
        self.amplitude * self.width * poly
    }
}

/// Initial data for the exact solver, carried together with its primitive.
#[derive(Debug, Clone)]
pub enum InitialData {
    /// left for x < 0, right for x >= 0.
    Riemann { left: f64, right: f64 },
    /// -2 a (x/w) exp(-(x/w)^2): a positive-then-negative bump with zero mean.
    GaussianDipole { amplitude: f64, width: f64 },
    /// The exact N-wave at a reference time.
    NWave { t_ref: f64, params: ProfileParams },
    /// A base datum plus compact polynomial bumps.
    Perturbed { base: Box<InitialData>, bumps: Vec<PolyBump> },
    /// Piecewise-constant grid data (primitive is its exact prefix integral).
    Grid(GridFunction1D),
    /// Node-based piecewise-linear data, constant-extended outside the nodes;
    /// the primitive is its exact piecewise-quadratic integral.
    PiecewiseLinear { nodes: Vec<(f64, f64)> },
}

/// Validated piecewise-linear datum.
pub fn piecewise_linear(nodes: Vec<(f64, f64)>) -> Result<InitialData> {
    if nodes.len() < 2 {
        return Err(Error::domain("piecewise-linear data needs at least 2 nodes"));
    }
    for w in nodes.windows(2) {
        if !(w[1].0 > w[0].0) {
            return Err(Error::domain("piecewise-linear nodes must be strictly increasing"));
        }
    }
    if nodes.iter().any(|(x, u)| !x.is_finite() || !u.is_finite()) {
        return Err(Error::domain("piecewise-linear nodes must be finite"));
    }
    Ok(InitialData::PiecewiseLinear { nodes })
}

impl InitialData {
    pub fn value(&self, x: f64) -> f64 {
        match self {
            InitialData::Riemann { left, right } => {
                if x < 0.0 {
                    *left
                } else {
                    *right
                }
            }
            InitialData::GaussianDipole { amplitude, width } => {
                let y = x / width;
                -2.0 * amplitude * y * (-y * y).exp()
            }
            InitialData::NWave { t_ref, params } => {
                let root = t_ref.sqrt();
                if x >= -params.q * root && x <= params.p * root {
                    x / t_ref
                } else {
                    0.0
                }
            }
            InitialData::Perturbed { base, bumps } => {
                base.value(x) + bumps.iter().map(|b| b.value(x)).sum::<f64>()
            }
            InitialData::Grid(g) => {
                if x < g.x_lo || x >= g.x_hi() {
                    0.0
                } else {
                    let i = ((x - g.x_lo) / g.dx) as usize;
                    g.values[i.min(g.values.len() - 1)]
                }
            }
            InitialData::PiecewiseLinear { nodes } => {
                if x <= nodes[0].0 {
                    return nodes[0].1;
                }
                if x >= nodes[nodes.len() - 1].0 {
                    return nodes[nodes.len() - 1].1;
                }
                let k = nodes.partition_point(|&(nx, _)| nx <= x) - 1;
                let (x0, u0) = nodes[k];
                let (x1, u1) = nodes[k + 1];
                u0 + (u1 - u0) * (x - x0) / (x1 - x0)
            }
        }
    }

    /// Primitive U0(y) = Int_{-inf}^{y} u0, with the Riemann case anchored
    /// at 0.
    pub fn primitive(&self, y: f64) -> f64 {
        match self {
            InitialData::Riemann { left, right } => left * y.min(0.0) + right * y.max(0.0),
            InitialData::GaussianDipole { amplitude, width } => {
                let z = y / width;
                amplitude * width * (-z * z).exp()
            }
            InitialData::NWave { t_ref, params } => nwave_antiderivative(*t_ref, y, params),
            InitialData::Perturbed { base, bumps } => {
                base.primitive(y) + bumps.iter().map(|b| b.primitive(y)).sum::<f64>()
            }
            InitialData::Grid(g) => {
                if y <= g.x_lo {
                    return 0.0;
                }
                let n = g.values.len();
                let k = (((y - g.x_lo) / g.dx) as usize).min(n);
                let mut acc = 0.0;
                for v in &g.values[..k] {
                    acc += v * g.dx;
                }
                if k < n {
                    acc += g.values[k] * (y - (g.x_lo + k as f64 * g.dx));
                }
                acc
            }
            InitialData::PiecewiseLinear { nodes } => {
                // Anchored so U0(first node) = 0; exact trapezoid prefix.
                let (x0, u0) = nodes[0];
                if y <= x0 {
                    return u0 * (y - x0);
                }
                let mut acc = 0.0;
                for w in nodes.windows(2) {
                    let (xa, ua) = w[0];
                    let (xb, ub) = w[1];
                    if y >= xb {
                        acc += 0.5 * (ua + ub) * (xb - xa);
                    } else {
                        let um = ua + (ub - ua) * (y - xa) / (xb - xa);
                        acc += 0.5 * (ua + um) * (y - xa);
                        return acc;
                    }
                }
                let (xn, un) = nodes[nodes.len() - 1];
                acc + un * (y - xn)
            }
        }
    }

    /// Interval outside of which the datum vanishes (unbounded for Riemann
    /// data; the Gaussian tail is cut where it is below machine precision).
    fn support(&self) -> (f64, f64) {
        match self {
            InitialData::Riemann { .. } => (-1.0, 1.0),
            InitialData::GaussianDipole { width, .. } => (-7.0 * width, 7.0 * width),
            InitialData::NWave { t_ref, params } => {
                (-params.q * t_ref.sqrt(), params.p * t_ref.sqrt())
            }
            InitialData::Perturbed { base, bumps } => {
                let (mut lo, mut hi) = base.support();
                for b in bumps {
                    lo = lo.min(b.center - b.width);
                    hi = hi.max(b.center + b.width);
                }
                (lo, hi)
            }
            InitialData::Grid(g) => (g.x_lo, g.x_hi()),
            InitialData::PiecewiseLinear { nodes } => (nodes[0].0, nodes[nodes.len() - 1].0),
        }
    }

    /// A characteristic feature width used to size the coarse scan.
    fn feature_width(&self) -> f64 {
        match self {
            InitialData::Riemann { .. } => 1.0,
            InitialData::GaussianDipole { width, .. } => *width,
            InitialData::NWave { t_ref, params } => {
                0.5 * (params.p + params.q) * t_ref.sqrt()
            }
            InitialData::Perturbed { base, bumps } => {
                let bw = bumps.iter().map(|b| b.width).fold(f64::INFINITY, f64::min);
                base.feature_width().min(bw)
            }
            InitialData::Grid(g) => (g.dx * 16.0).max(1e-12),
            InitialData::PiecewiseLinear { nodes } => {
                let (lo, hi) = (nodes[0].0, nodes[nodes.len() - 1].0);
                ((hi - lo) / nodes.len() as f64 * 16.0).max(1e-12)
            }
        }
    }

    fn bounds(&self) -> Result<(f64, f64)> {
        let (lo, hi) = self.support();
        let mut min = 0.0f64;
        let mut max = 0.0f64;
        for i in 0..=2048 {
            let x = lo + (hi - lo) * i as f64 / 2048.0;
            let v = self.value(x);
            if !v.is_finite() {
                return Err(Error::domain("initial datum is not finite"));
            }
            min = min.min(v);
            max = max.max(v);
        }
        if let InitialData::Riemann { left, right } = self {
            if !left.is_finite() || !right.is_finite() {
                return Err(Error::domain("Riemann states must be finite"));
            }
            min = min.min(*left).min(*right);
            max = max.max(*left).max(*right);
        }
        Ok((min, max))
    }
}

fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a) > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Entropy-solution value at (t, x). At a shock the left-limit value is
/// returned (smallest minimizer of the Hopf functional).
pub fn lax_oleinik_evaluate(data: &InitialData, t: f64, x: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("Hopf-Lax needs t > 0, got {t}")));
    }
    if !x.is_finite() {
        return Err(Error::domain("position must be finite"));
    }
    let (min_u, max_u) = data.bounds()?;
    let (slo, shi) = data.support();
    // Minimizers lie where the quadratic can balance the primitive:
    // y in [x - t max(u0), x - t min(u0)], widened by the data support.
    let lo = (x - t * max_u).min(slo) - data.feature_width();
    let hi = (x - t * min_u).max(shi) + data.feature_width();
    let g = |y: f64| data.primitive(y) + (x - y) * (x - y) / (2.0 * t);

    let n = (64.0 * ((hi - lo) / data.feature_width()).ceil())
        .clamp(256.0, 16384.0) as usize;
    let h = (hi - lo) / n as f64;
    let mut best = f64::INFINITY;
    let mut samples = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let y = lo + i as f64 * h;
        let gy = g(y);
        if !gy.is_finite() {
            return Err(Error::domain("Hopf functional is not finite (unbounded primitive)"));
        }
        samples.push(gy);
        if gy < best {
            best = gy;
        }
    }

    // Refine every basin whose sampled depth is close to the global minimum.
    let g_scale = best.abs() + (x - lo).abs().max(x.abs()) + 1.0;
    let basin_tol = 1e-6 * g_scale + 2.0 * h * h / t;
    let mut minimizers: Vec<(f64, f64)> = Vec::new();
    for i in 0..=n {
        let is_local_min = (i == 0 || samples[i] <= samples[i - 1])
            && (i == n || samples[i] <= samples[i + 1]);
        if is_local_min && samples[i] <= best + basin_tol {
            let a = lo + (i.saturating_sub(1)) as f64 * h;
            let b = lo + ((i + 1).min(n)) as f64 * h;
            let y = golden_section(g, a, b, 1e-12 * (1.0 + a.abs().max(b.abs())));
            minimizers.push((y, g(y)));
        }
    }
    let refined_best = minimizers
        .iter()
        .map(|&(_, v)| v)
        .fold(f64::INFINITY, f64::min);
    // Left-limit convention: the smallest minimizer within value tolerance.
    let value_tol = 1e3 * f64::EPSILON * g_scale;
    let y_star = minimizers
        .iter()
        .filter(|&&(_, v)| v <= refined_best + value_tol)
        .map(|&(y, _)| y)
        .fold(f64::INFINITY, f64::min);
    Ok((x - y_star) / t)
}

/// Locate a shock of the entropy solution inside a bracket by bisection on
/// the solution value against a mid-level threshold. Returns the midpoint of
/// the final bracket.
pub fn shock_position_by_value(
    data: &InitialData,
    t: f64,
    mut x_lo: f64,
    mut x_hi: f64,
    tol: f64,
) -> Result<f64> {
    let v_lo = lax_oleinik_evaluate(data, t, x_lo)?;
    let v_hi = lax_oleinik_evaluate(data, t, x_hi)?;
    if v_lo <= v_hi {
        return Err(Error::domain(format!(
            "bracket [{x_lo}, {x_hi}] does not enclose a downward jump"
        )));
    }
    let level = 0.5 * (v_lo + v_hi);
    while x_hi - x_lo > tol {
        let mid = 0.5 * (x_lo + x_hi);
        if lax_oleinik_evaluate(data, t, mid)? > level {
            x_lo = mid;
        } else {
            x_hi = mid;
        }
    }
    Ok(0.5 * (x_lo + x_hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_data_fixed_point() {
        let data = InitialData::Grid(GridFunction1D::new(-1.0, 0.25, vec![0.0; 8], 0.0).unwrap());
        for x in [-3.0, 0.0, 1.7] {
            assert_eq!(lax_oleinik_evaluate(&data, 5.0, x).unwrap(), 0.0);
        }
    }

    #[test]
    fn riemann_shock_and_rarefaction() {
        let shock = InitialData::Riemann { left: 1.0, right: 0.0 };
        assert!((lax_oleinik_evaluate(&shock, 2.0, 0.9).unwrap() - 1.0).abs() < 1e-12);
        assert!(lax_oleinik_evaluate(&shock, 2.0, 1.1).unwrap().abs() < 1e-12);

        let fan = InitialData::Riemann { left: 0.0, right: 1.0 };
        assert!((lax_oleinik_evaluate(&fan, 2.0, 1.0).unwrap() - 0.5).abs() < 1e-10);
    }

    #[test]
    fn riemann_shock_locus_machine_precision() {
        let shock = InitialData::Riemann { left: 1.0, right: 0.0 };
        let pos = shock_position_by_value(&shock, 2.0, 0.5, 1.5, 1e-13).unwrap();
        assert!((pos - 1.0).abs() <= 1e-12, "locus {pos}");
    }

    #[test]
    fn invalid_time_is_domain_error() {
        let shock = InitialData::Riemann { left: 1.0, right: 0.0 };
        assert!(lax_oleinik_evaluate(&shock, 0.0, 0.0).is_err());
        assert!(lax_oleinik_evaluate(&shock, -1.0, 0.0).is_err());
    }

    #[test]
    fn nwave_is_self_similar() {
        let params = ProfileParams::new(1.2, 0.8).unwrap();
        let data = InitialData::NWave { t_ref: 1.0, params };
        // Solution at elapsed time tau matches N(1 + tau, x) away from shocks.
        for tau in [1.0, 7.0, 63.0] {
            let t = 1.0 + tau;
            for frac in [-0.6, -0.2, 0.3, 0.7] {
                let x = frac * t.sqrt();
                let expect = super::super::nwave(t, x, &params).unwrap();
                let got = lax_oleinik_evaluate(&data, tau, x).unwrap();
                assert!(
                    (got - expect).abs() < 1e-9,
                    "tau={tau}, x={x}: {got} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn semigroup_property_exact_reinitialization() {
        // Shock branch: the t1 solution of Riemann (1, 0) is a shifted step,
        // exactly representable as grid data with the jump on a cell edge.
        let (t1, t2) = (2.0, 3.0);
        let shock = InitialData::Riemann { left: 1.0, right: 0.0 };
        let dx = 0.25; // t1/2 = 1.0 lands on an edge of this grid
        let cells = 64;
        let x_lo = -8.0;
        let values: Vec<f64> = (0..cells)
            .map(|i| if x_lo + (i as f64 + 0.5) * dx < t1 / 2.0 { 1.0 } else { 0.0 })
            .collect();
        let regrid = InitialData::Grid(GridFunction1D::new(x_lo, dx, values, t1).unwrap());
        for x in [-1.0, 0.3, 2.0, 2.45, 2.55, 4.0] {
            let direct = lax_oleinik_evaluate(&shock, t1 + t2, x).unwrap();
            let two_step = lax_oleinik_evaluate(&regrid, t2, x).unwrap();
            assert!(
                (direct - two_step).abs() <= 1e-9,
                "shock branch x={x}: {direct} vs {two_step}"
            );
        }

        // Rarefaction branch: the t1 solution of Riemann (0, 1) is exactly
        // piecewise linear.
        let fan = InitialData::Riemann { left: 0.0, right: 1.0 };
        let relin = piecewise_linear(vec![(0.0, 0.0), (t1, 1.0)]).unwrap();
        for x in [-1.0, 0.5, 1.5, 3.0, 6.0] {
            let direct = lax_oleinik_evaluate(&fan, t1 + t2, x).unwrap();
            let two_step = lax_oleinik_evaluate(&relin, t2, x).unwrap();
            assert!(
                (direct - two_step).abs() <= 1e-9,
                "fan branch x={x}: {direct} vs {two_step}"
            );
        }
    }

    #[test]
    fn piecewise_linear_primitive_is_exact() {
        let data = piecewise_linear(vec![(-1.0, 0.0), (0.0, 2.0), (1.0, -1.0)]).unwrap();
        // Trapezoid areas: [-1,0] -> 1.0, [0,1] -> 0.5.
        assert!((data.primitive(0.0) - 1.0).abs() < 1e-15);
        assert!((data.primitive(1.0) - 1.5).abs() < 1e-15);
        // Constant extension on the right with u = -1.
        assert!((data.primitive(3.0) - (1.5 - 2.0)).abs() < 1e-15);
        assert!(piecewise_linear(vec![(0.0, 1.0)]).is_err());
        assert!(piecewise_linear(vec![(0.0, 1.0), (0.0, 2.0)]).is_err());
    }
}

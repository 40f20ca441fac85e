//! The named multiplier vector fields, their closed-form scalar currents for
//! the two model metrics, energy-momentum fluxes, and discrete energy
//! functionals on radial slices.
//!
//! The log weights f(z) = log z (log log z)^alpha and g(z) = (log(1+z))^{1/2}
//! f(log(1+z)) are evaluated on guarded domains (arguments must exceed e so
//! log log stays positive); points below the guard are excluded from sign
//! sweeps.

use crate::error::{Error, Result};
use crate::geometry::{MetricId, NullPoint, UvVector};
use rayon::prelude::*;

/// First derivatives of a scalar field, with the angular gradient carried as
/// a magnitude.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DerivTriple {
    pub du: f64,
    pub dv: f64,
    pub ang: f64,
}

impl DerivTriple {
    pub fn norm_sq(&self) -> f64 {
        self.du * self.du + self.dv * self.dv + self.ang * self.ang
    }

    /// ell^g applied to the field.
    pub fn ell(&self, g: MetricId, pt: &NullPoint) -> f64 {
        match g {
            MetricId::Minkowski => self.dv,
            MetricId::BurgersModel => self.dv + pt.u / (pt.v * pt.s) * self.du,
        }
    }
}

/// One of the multiplier fields, with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Multiplier {
    /// (1+|u|)^mu (d_u + d_v) + r (log r)^nu d_v; used to the right of the
    /// right front.
    XR { mu: f64, nu: f64 },
    /// (s + u/s) d_u + v d_v; the decay multiplier between the fronts.
    XC,
    /// (u/s + alpha_p/(4 sqrt(s))) d_u + v d_v; the top-order multiplier
    /// between the fronts.
    XT { alpha_p: f64 },
    /// u f(u) d_u + v f(v) d_v with f(z) = log z (log log z)^alpha,
    /// 1 < alpha < 3/2; used to the left of the left front.
    XL { alpha: f64 },
    /// (g(r)+1)(d_v - d_u), the Morawetz-type spacelike multiplier.
    XM { alpha: f64 },
    /// d_u + d_v: time translation, whose Minkowski current vanishes.
    TimeTranslation,
}

/// Pointwise coefficients and first partials of a multiplier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiplierCoeffs {
    pub xu: f64,
    pub xv: f64,
    pub du_xu: f64,
    pub dv_xu: f64,
    pub du_xv: f64,
    pub dv_xv: f64,
}

/// f(z) = log z (log log z)^alpha on z > e.
pub fn log_weight(z: f64, alpha: f64) -> Result<f64> {
    if z <= std::f64::consts::E {
        return Err(Error::domain(format!("log weight needs z > e, got {z}")));
    }
    let l = z.ln();
    Ok(l * l.ln().powf(alpha))
}

/// d/dz [z f(z)] = (log z + 1)(log log z)^alpha + alpha (log log z)^(alpha-1).
fn zf_prime(z: f64, alpha: f64) -> f64 {
    let l = z.ln();
    let m = l.ln();
    (l + 1.0) * m.powf(alpha) + alpha * m.powf(alpha - 1.0)
}

/// g(r) = (log(1+r))^{1/2} f(log(1+r)) on log(1+r) > e.
pub fn morawetz_weight(r: f64, alpha: f64) -> Result<f64> {
    let z = (1.0 + r).ln();
    Ok(z.sqrt() * log_weight(z, alpha)?)
}

fn morawetz_weight_prime(r: f64, alpha: f64) -> f64 {
    let z = (1.0 + r).ln();
    let l = z.ln();
    let m = l.ln();
    // d/dz [sqrt(z) L M^alpha] = z^{-1/2} (L/2 + 1) M^alpha + alpha z^{-1/2} M^(alpha-1)
    let dz = (0.5 * l + 1.0) * m.powf(alpha) + alpha * m.powf(alpha - 1.0);
    dz / (z.sqrt() * (1.0 + r))
}

impl Multiplier {
    /// Coefficients and partials at a point. Errors when the point falls
    /// below a log-weight domain guard.
    pub fn coeffs(&self, pt: &NullPoint) -> Result<MultiplierCoeffs> {
        let (u, v) = (pt.u, pt.v);
        match *self {
            Multiplier::TimeTranslation => Ok(MultiplierCoeffs {
                xu: 1.0,
                xv: 1.0,
                du_xu: 0.0,
                dv_xu: 0.0,
                du_xv: 0.0,
                dv_xv: 0.0,
            }),
            Multiplier::XR { mu, nu } => {
                let r = pt.r;
                if r <= 1.0 {
                    return Err(Error::domain(format!("X_R weight needs r > 1, got {r}")));
                }
                let w = (1.0 + u.abs()).powf(mu);
                let wp = mu * (1.0 + u.abs()).powf(mu - 1.0) * u.signum();
                let lr = r.ln();
                let ray = r * lr.powf(nu);
                // d/dr [r (log r)^nu] = (log r)^nu + nu (log r)^(nu-1)
                let ray_dr = lr.powf(nu) + nu * lr.powf(nu - 1.0);
                Ok(MultiplierCoeffs {
                    xu: w,
                    xv: w + ray,
                    du_xu: wp,
                    dv_xu: 0.0,
                    du_xv: wp - 0.5 * ray_dr,
                    dv_xv: 0.5 * ray_dr,
                })
            }
            Multiplier::XC => {
                let s = pt.s;
                Ok(MultiplierCoeffs {
                    xu: s + u / s,
                    xv: v,
                    du_xu: 1.0 / s,
                    dv_xu: (1.0 - u / (s * s)) / v,
                    du_xv: 0.0,
                    dv_xv: 1.0,
                })
            }
            Multiplier::XT { alpha_p } => {
                let s = pt.s;
                Ok(MultiplierCoeffs {
                    xu: u / s + 0.25 * alpha_p / s.sqrt(),
                    xv: v,
                    du_xu: 1.0 / s,
                    dv_xu: (-u / (s * s) - alpha_p / (8.0 * s * s.sqrt())) / v,
                    du_xv: 0.0,
                    dv_xv: 1.0,
                })
            }
            Multiplier::XL { alpha } => {
                let fu = log_weight(u, alpha)?;
                let fv = log_weight(v, alpha)?;
                Ok(MultiplierCoeffs {
                    xu: u * fu,
                    xv: v * fv,
                    du_xu: zf_prime(u, alpha),
                    dv_xu: 0.0,
                    du_xv: 0.0,
                    dv_xv: zf_prime(v, alpha),
                })
            }
            Multiplier::XM { alpha } => {
                let g = morawetz_weight(pt.r, alpha)?;
                let gp = morawetz_weight_prime(pt.r, alpha);
                Ok(MultiplierCoeffs {
                    xu: -(g + 1.0),
                    xv: g + 1.0,
                    du_xu: 0.5 * gp,
                    dv_xu: -0.5 * gp,
                    du_xv: -0.5 * gp,
                    dv_xv: 0.5 * gp,
                })
            }
        }
    }

    pub fn vector(&self, pt: &NullPoint) -> Result<UvVector> {
        let c = self.coeffs(pt)?;
        Ok(UvVector { cu: c.xu, cv: c.xv })
    }

    /// g(X, X), for the causal-character checks.
    pub fn causal_square(&self, g: MetricId, pt: &NullPoint) -> Result<f64> {
        let x = self.vector(pt)?;
        Ok(g.dot(pt, &x, &x))
    }
}

/// Scalar current K_{X,m} for the Minkowski metric:
/// 2 d_vX^u (d_u psi)^2 + 2 d_uX^v (d_v psi)^2
/// + (d_uX^u + d_vX^v - 2 (X^v - X^u)/(v-u)) |ang psi|^2 / 2.
pub fn scalar_current_m(x: &Multiplier, pt: &NullPoint, d: &DerivTriple) -> Result<f64> {
    let c = x.coeffs(pt)?;
    Ok(scalar_current_m_coeffs(&c, pt, d))
}

fn angular_coefficient(c: &MultiplierCoeffs, pt: &NullPoint) -> f64 {
    0.5 * (c.du_xu + c.dv_xv - 2.0 * (c.xv - c.xu) / (pt.v - pt.u))
}

fn scalar_current_m_coeffs(c: &MultiplierCoeffs, pt: &NullPoint, d: &DerivTriple) -> f64 {
    2.0 * c.dv_xu * d.du * d.du
        + 2.0 * c.du_xv * d.dv * d.dv
        + angular_coefficient(c, pt) * d.ang * d.ang
}

/// Scalar current K_{X,m_B} for the Burgers model metric, including the
/// cross term 4 (u/(vs)) d_uX^v d_u psi d_v psi.
pub fn scalar_current_mb(x: &Multiplier, pt: &NullPoint, d: &DerivTriple) -> Result<f64> {
    let c = x.coeffs(pt)?;
    let k = pt.u / (pt.v * pt.s);
    let du2 = 2.0
        * ((c.dv_xu + k * c.du_xu) + k * (c.xv / pt.v - c.dv_xv)
            - (c.xu - k * c.xv) / (pt.v * pt.s));
    Ok(du2 * d.du * d.du
        + 2.0 * c.du_xv * d.dv * d.dv
        + 4.0 * k * c.du_xv * d.du * d.dv
        + angular_coefficient(c, pt) * d.ang * d.ang)
}

/// The (d_u psi)^2 coefficient of K_{X,m_B} in its null-frame form,
/// 2 (ell^{m_B} X^n - X^n/(vs) + (u^2/s^2) d_u(X^ell / v)).
/// Identically zero for X_C.
pub fn mb_du2_coefficient(x: &Multiplier, pt: &NullPoint) -> Result<f64> {
    let c = x.coeffs(pt)?;
    let (u, v, s) = (pt.u, pt.v, pt.s);
    let k = u / (v * s);
    // ell k = -u/(v^2 s); X^n = X^u - k X^v.
    let ell_k = -u / (v * v * s);
    let xn = c.xu - k * c.xv;
    let ell_xn =
        (c.dv_xu + k * c.du_xu) - ell_k * c.xv - k * (c.dv_xv + k * c.du_xv);
    Ok(2.0 * (ell_xn - xn / (v * s) + (u * u) / (s * s) * (c.du_xv / v)))
}

/// Energy-momentum flux Q^g(X, N) for spherically symmetric X, N:
/// X^ell N^ell (ell psi)^2 + X^n N^n (n psi)^2 - g(X,N) |ang psi|^2 / 2.
pub fn energy_momentum_flux(
    g: MetricId,
    x: &Multiplier,
    n: &UvVector,
    d: &DerivTriple,
    pt: &NullPoint,
) -> Result<f64> {
    let xv = x.vector(pt)?;
    Ok(energy_momentum_flux_vec(g, &xv, n, d, pt))
}

/// Same as [`energy_momentum_flux`] for an explicit vector X.
pub fn energy_momentum_flux_vec(
    g: MetricId,
    x: &UvVector,
    n: &UvVector,
    d: &DerivTriple,
    pt: &NullPoint,
) -> f64 {
    let (xn, xl) = g.null_components(pt, x);
    let (nn, nl) = g.null_components(pt, n);
    let ell_psi = d.ell(g, pt);
    let n_psi = d.du;
    let g_xn = -0.5 * (xn * nl + xl * nn);
    xl * nl * ell_psi * ell_psi + xn * nn * n_psi * n_psi - 0.5 * g_xn * d.ang * d.ang
}

/// The bound certified against -K_{X_M,m} in the sign sweep:
/// 2 g'(r) ((d_u psi)^2 + (d_v psi)^2) + ((g(r)+2)/r) |ang psi|^2.
pub fn xm_lower_bound(pt: &NullPoint, d: &DerivTriple, alpha: f64) -> Result<f64> {
    let g = morawetz_weight(pt.r, alpha)?;
    let gp = morawetz_weight_prime(pt.r, alpha);
    Ok(2.0 * gp * (d.du * d.du + d.dv * d.dv) + (g + 2.0) / pt.r * d.ang * d.ang)
}

/// The reference quantity for the X_T sign bound:
/// (v s^{3/2})^{-1} (d_u psi)^2 + |ang psi|^2.
pub fn xt_bound_quantity(pt: &NullPoint, d: &DerivTriple) -> f64 {
    d.du * d.du / (pt.v * pt.s.powf(1.5)) + d.ang * d.ang
}

// ---------------------------------------------------------------------------
// Discrete slice energies
// ---------------------------------------------------------------------------

/// Which region a slice belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionId {
    L,
    C,
    R,
}

/// Energy functional flavor: the top-order weights or the decay weights
/// (these differ only in the central region).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergyKind {
    Top,
    Decay,
}

/// Weight parameters of the slice energies.
#[derive(Debug, Clone, Copy)]
pub struct EnergyParams {
    pub mu: f64,
    pub nu: f64,
    pub alpha: f64,
}

impl Default for EnergyParams {
    fn default() -> Self {
        // mu, nu are free diagnostics parameters here; the proof-valid range
        // ties mu >= max(2 nu, 2 N_C + 3/2) to proof-internal constants.
        Self {
            mu: 6.0,
            nu: 3.0,
            alpha: 1.25,
        }
    }
}

/// Midpoint quadrature of the region's energy integrand over slice samples,
/// with the radial line measure `dr` per sample. Boundary (front) terms are
/// not included. Samples under a log-weight domain guard contribute zero.
pub fn energy_slice(
    region: RegionId,
    kind: EnergyKind,
    samples: &[(NullPoint, DerivTriple)],
    dr: f64,
    params: &EnergyParams,
) -> f64 {
    samples
        .iter()
        .map(|(pt, d)| energy_integrand(region, kind, pt, d, params) * dr)
        .sum()
}

pub fn energy_integrand(
    region: RegionId,
    kind: EnergyKind,
    pt: &NullPoint,
    d: &DerivTriple,
    params: &EnergyParams,
) -> f64 {
    let grad_sq = d.norm_sq();
    let tangential = d.dv * d.dv + d.ang * d.ang;
    match region {
        RegionId::R => {
            let wu = (1.0 + pt.u.abs()).powf(params.mu);
            let ray = if pt.r > 1.0 {
                pt.r * pt.r.ln().powf(params.nu)
            } else {
                0.0
            };
            wu * grad_sq + (1.0 + pt.u.abs().powf(params.mu) + ray) * tangential
        }
        RegionId::C => {
            let ell = d.ell(MetricId::BurgersModel, pt);
            let du_weight = match kind {
                EnergyKind::Top => (1.0 + pt.s).powf(-0.5),
                EnergyKind::Decay => 1.0 + pt.s,
            };
            du_weight * d.du * d.du + (1.0 + pt.v) * (ell * ell + d.ang * d.ang)
        }
        RegionId::L => {
            let fu = log_weight(pt.u, params.alpha).unwrap_or(0.0);
            let fv = log_weight(pt.v, params.alpha).unwrap_or(0.0);
            pt.u * fu * d.du * d.du + pt.v * fv * (d.dv * d.dv + d.ang * d.ang)
        }
    }
}

// ---------------------------------------------------------------------------
// Sign sweeps
// ---------------------------------------------------------------------------

/// One record of a current-sign sweep.
#[derive(Debug, Clone)]
pub struct SweepRecord {
    pub label: String,
    pub u: f64,
    pub v: f64,
    pub minus_k: f64,
    /// Reference bound at the sample (0 when the case has none).
    pub bound: f64,
    /// (-K - bound) / scale, the certified margin.
    pub margin: f64,
}

/// Summary of a sweep: the minimum margin and where it occurred.
#[derive(Debug, Clone)]
pub struct SweepSummary {
    pub label: String,
    pub samples: usize,
    pub min_margin: f64,
    pub argmin: (f64, f64),
}

fn splitmix(state: &mut u64) -> f64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^= z >> 31;
    (z >> 11) as f64 / (1u64 << 53) as f64
}

fn random_triple(seed: u64) -> DerivTriple {
    let mut st = seed;
    DerivTriple {
        du: 2.0 * splitmix(&mut st) - 1.0,
        dv: 2.0 * splitmix(&mut st) - 1.0,
        ang: splitmix(&mut st),
    }
}

/// The sign-sweep cases of the current suite, in a fixed order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepCase {
    /// -K_{X_L, m} >= 0 on the guarded left-region grid.
    XlMinkowski { alpha: f64 },
    /// -K_{X_M, m} >= bound on r > guard.
    XmMinkowski { alpha: f64 },
    /// -K_{X_C, m_B} >= |ang psi|^2 / 4 on |u| <= sqrt(s), v >= e^10.
    XcBurgers,
    /// -K_{X_T, m_B} >= c ((v s^{3/2})^{-1} (d_u psi)^2 + |ang psi|^2).
    XtBurgers { alpha_p: f64, constant: f64 },
}

impl SweepCase {
    pub fn label(&self) -> String {
        match self {
            SweepCase::XlMinkowski { alpha } => format!("XL(alpha={alpha})-m"),
            SweepCase::XmMinkowski { alpha } => format!("XM(alpha={alpha})-m"),
            SweepCase::XcBurgers => "XC-mB".to_string(),
            SweepCase::XtBurgers { alpha_p, constant } => {
                format!("XT(alpha_p={alpha_p},c={constant})-mB")
            }
        }
    }
}

/// Run one sweep case over `n` samples. Points under a domain guard are
/// skipped; the minimum of the normalized margin is returned together with
/// the per-sample records (records are kept only when `keep_records`).
pub fn run_sweep(
    case: SweepCase,
    n: usize,
    seed: u64,
    keep_records: bool,
) -> (SweepSummary, Vec<SweepRecord>) {
    let e = std::f64::consts::E;
    let label = case.label();
    let results: Vec<Option<SweepRecord>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut st = seed ^ (i as u64).wrapping_mul(0x2545_f491_4f6c_dd1d);
            let a = splitmix(&mut st);
            let b = splitmix(&mut st);
            let d = random_triple(st);
            let sample = |pt: NullPoint, mk: f64, bound: f64, x: &Multiplier| {
                let c = x.coeffs(&pt).ok()?;
                let scale = (c.xu.abs() + c.xv.abs()) * d.norm_sq().max(1e-300);
                Some(SweepRecord {
                    label: label.clone(),
                    u: pt.u,
                    v: pt.v,
                    minus_k: mk,
                    bound,
                    margin: (mk - bound) / scale,
                })
            };
            match case {
                SweepCase::XlMinkowski { alpha } => {
                    let v = (3.0 + 7.0 * a).exp();
                    let s = v.ln();
                    let lo = s.sqrt().max(e * 1.0000001);
                    let hi = v / 8.0;
                    if hi <= lo {
                        return None;
                    }
                    let u = lo + (hi - lo) * b;
                    let pt = NullPoint::from_uv(u, v).ok()?;
                    let x = Multiplier::XL { alpha };
                    let mk = -scalar_current_m(&x, &pt, &d).ok()?;
                    sample(pt, mk, 0.0, &x)
                }
                SweepCase::XmMinkowski { alpha } => {
                    let guard = (e.exp() - 1.0) * 1.0000001;
                    let r = guard * (1e6 / guard).powf(a);
                    let pt = NullPoint::from_tr(r + 2.0, r).ok()?;
                    let x = Multiplier::XM { alpha };
                    let mk = -scalar_current_m(&x, &pt, &d).ok()?;
                    let bound = xm_lower_bound(&pt, &d, alpha).ok()?;
                    sample(pt, mk, bound, &x)
                }
                SweepCase::XcBurgers => {
                    let v = (10.0 + 6.0 * a).exp();
                    let s = v.ln();
                    let u = (2.0 * b - 1.0) * s.sqrt();
                    let pt = NullPoint::from_uv(u, v).ok()?;
                    let x = Multiplier::XC;
                    let mk = -scalar_current_mb(&x, &pt, &d).ok()?;
                    let bound = 0.25 * d.ang * d.ang;
                    sample(pt, mk, bound, &x)
                }
                SweepCase::XtBurgers { alpha_p, constant } => {
                    let v = (10.0 + 6.0 * a).exp();
                    let s = v.ln();
                    let u = (2.0 * b - 1.0) * s.sqrt();
                    let pt = NullPoint::from_uv(u, v).ok()?;
                    let x = Multiplier::XT { alpha_p };
                    let mk = -scalar_current_mb(&x, &pt, &d).ok()?;
                    let bound = constant * xt_bound_quantity(&pt, &d);
                    sample(pt, mk, bound, &x)
                }
            }
        })
        .collect();

    let mut records = Vec::new();
    let mut min_margin = f64::INFINITY;
    let mut argmin = (f64::NAN, f64::NAN);
    let mut kept = 0usize;
    for rec in results.into_iter().flatten() {
        kept += 1;
        if rec.margin < min_margin {
            min_margin = rec.margin;
            argmin = (rec.u, rec.v);
        }
        if keep_records {
            records.push(rec);
        }
    }
    (
        SweepSummary {
            label,
            samples: kept,
            min_margin,
            argmin,
        },
        records,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::null_frame;

    fn pt(u: f64, v: f64) -> NullPoint {
        NullPoint::from_uv(u, v).unwrap()
    }

    #[test]
    fn time_translation_current_vanishes() {
        let mut st = 7u64;
        for _ in 0..200 {
            let v = 5.0 + 1e4 * splitmix(&mut st);
            let u = (2.0 * splitmix(&mut st) - 1.0) * 0.4 * v;
            let d = random_triple(st);
            let k = scalar_current_m(&Multiplier::TimeTranslation, &pt(u, v), &d).unwrap();
            assert_eq!(k, 0.0);
        }
    }

    #[test]
    fn coeff_partials_match_central_differences() {
        let cases = [
            (Multiplier::XR { mu: 6.0, nu: 3.0 }, pt(-3.0, 500.0)),
            (Multiplier::XC, pt(2.0, (11f64).exp())),
            (Multiplier::XT { alpha_p: 1.0 }, pt(-2.0, (11f64).exp())),
            (Multiplier::XL { alpha: 1.25 }, pt(20.0, 4000.0)),
            (Multiplier::XM { alpha: 1.25 }, pt(3.0, 4.0e5)),
        ];
        for (x, p) in cases {
            let c = x.coeffs(&p).unwrap();
            let h = 1e-5 * (1.0 + p.v.abs());
            let hu = 1e-6 * (1.0 + p.u.abs());
            let at = |u: f64, v: f64| x.coeffs(&NullPoint::from_uv(u, v).unwrap()).unwrap();
            let du_xu = (at(p.u + hu, p.v).xu - at(p.u - hu, p.v).xu) / (2.0 * hu);
            let dv_xu = (at(p.u, p.v + h).xu - at(p.u, p.v - h).xu) / (2.0 * h);
            let du_xv = (at(p.u + hu, p.v).xv - at(p.u - hu, p.v).xv) / (2.0 * hu);
            let dv_xv = (at(p.u, p.v + h).xv - at(p.u, p.v - h).xv) / (2.0 * h);
            let scale = |a: f64| a.abs().max(1e-9);
            assert!((du_xu - c.du_xu).abs() / scale(c.du_xu) < 1e-6, "{x:?} du_xu");
            assert!((dv_xu - c.dv_xu).abs() / scale(c.dv_xu) < 1e-5, "{x:?} dv_xu");
            assert!((du_xv - c.du_xv).abs() / scale(c.du_xv) < 1e-6, "{x:?} du_xv");
            assert!((dv_xv - c.dv_xv).abs() / scale(c.dv_xv) < 1e-6, "{x:?} dv_xv");
        }
    }

    #[test]
    fn xc_du2_coefficient_vanishes() {
        let mut st = 99u64;
        for _ in 0..1000 {
            let v = (8.0 + 8.0 * splitmix(&mut st)).exp();
            let s = v.ln();
            let u = (2.0 * splitmix(&mut st) - 1.0) * s.sqrt();
            let c = mb_du2_coefficient(&Multiplier::XC, &pt(u, v)).unwrap();
            assert!(c.abs() <= 1e-12, "coefficient {c} at u={u}, v={v}");
        }
    }

    #[test]
    fn mb_current_consistent_with_null_frame_form() {
        // The raw coordinate formula and the null-frame rewriting must agree.
        let mut st = 123u64;
        for _ in 0..300 {
            let v = (6.0 + 8.0 * splitmix(&mut st)).exp();
            let s = v.ln();
            let u = (2.0 * splitmix(&mut st) - 1.0) * s.sqrt();
            let p = pt(u, v);
            let d = random_triple(st);
            for x in [
                Multiplier::XC,
                Multiplier::XT { alpha_p: 1.0 },
                Multiplier::XR { mu: 6.0, nu: 3.0 },
            ] {
                let c = match x.coeffs(&p) {
                    Ok(c) => c,
                    Err(_) => continue,
                };
                let direct = scalar_current_mb(&x, &p, &d).unwrap();
                let k = p.u / (p.v * p.s);
                let rebuilt = mb_du2_coefficient(&x, &p).unwrap() * d.du * d.du
                    + 2.0 * c.du_xv * d.dv * d.dv
                    + 4.0 * k * c.du_xv * d.du * d.dv
                    + angular_coefficient(&c, &p) * d.ang * d.ang;
                let scale = direct.abs().max(1.0);
                assert!(
                    (direct - rebuilt).abs() / scale < 1e-10,
                    "{x:?}: {direct} vs {rebuilt}"
                );
            }
        }
    }

    #[test]
    fn multiplier_causal_squares() {
        let mut st = 5u64;
        for _ in 0..200 {
            let v = (9.0 + 6.0 * splitmix(&mut st)).exp();
            let s = v.ln();
            let u = (2.0 * splitmix(&mut st) - 1.0) * s.sqrt();
            let p = pt(u, v);
            let xc = Multiplier::XC.causal_square(MetricId::BurgersModel, &p).unwrap();
            assert!((xc - (-v * s)).abs() / (v * s) < 1e-12);
            let ap = 1.0;
            let xt = Multiplier::XT { alpha_p: ap }
                .causal_square(MetricId::BurgersModel, &p)
                .unwrap();
            let expect = -0.25 * ap * v / s.sqrt();
            assert!((xt - expect).abs() / expect.abs() < 1e-12);
        }
        // X_L timelike for m on the guarded left region.
        let p = pt(20.0, 4000.0);
        assert!(
            Multiplier::XL { alpha: 1.25 }
                .causal_square(MetricId::Minkowski, &p)
                .unwrap()
                < 0.0
        );
    }

    #[test]
    fn flux_time_translation_examples() {
        let p = pt(3.0, 50.0);
        let dt = UvVector { cu: 1.0, cv: 1.0 };
        let d = DerivTriple { du: 0.7, dv: -0.3, ang: 0.0 };
        let q = energy_momentum_flux_vec(MetricId::Minkowski, &dt, &dt, &d, &p);
        assert!((q - (0.7 * 0.7 + 0.3 * 0.3)).abs() < 1e-15);
        let zero = DerivTriple::default();
        assert_eq!(energy_momentum_flux_vec(MetricId::Minkowski, &dt, &dt, &zero, &p), 0.0);
        let ang = DerivTriple { du: 0.0, dv: 0.0, ang: 0.5 };
        let q = energy_momentum_flux_vec(MetricId::Minkowski, &dt, &dt, &ang, &p);
        assert!((q - 0.5 * 0.25).abs() < 1e-15);
    }

    #[test]
    fn flux_reduces_to_frame_components() {
        // Q(n, n) = (n psi)^2 and Q(ell, ell) = (ell psi)^2 for both metrics.
        let p = pt(1.5, (10f64).exp());
        let d = DerivTriple { du: 0.4, dv: 0.2, ang: 0.3 };
        for g in [MetricId::Minkowski, MetricId::BurgersModel] {
            let (n, ell) = null_frame(g, &p);
            let qn = energy_momentum_flux_vec(g, &n, &n, &d, &p);
            assert!((qn - d.du * d.du).abs() < 1e-14);
            let ql = energy_momentum_flux_vec(g, &ell, &ell, &d, &p);
            let ellpsi = d.ell(g, &p);
            assert!((ql - ellpsi * ellpsi).abs() < 1e-14);
            let qcross = energy_momentum_flux_vec(g, &n, &ell, &d, &p);
            assert!((qcross - 0.25 * d.ang * d.ang).abs() < 1e-14);
        }
    }

    #[test]
    fn sign_sweep_suite_small() {
        for case in [
            SweepCase::XlMinkowski { alpha: 1.1 },
            SweepCase::XlMinkowski { alpha: 1.25 },
            SweepCase::XlMinkowski { alpha: 1.4499 },
            SweepCase::XmMinkowski { alpha: 1.25 },
            SweepCase::XcBurgers,
        ] {
            let (summary, _) = run_sweep(case, 2000, 42, false);
            assert!(summary.samples > 500, "{}: too few usable samples", summary.label);
            assert!(
                summary.min_margin >= -1e-12,
                "{}: min margin {} at {:?}",
                summary.label,
                summary.min_margin,
                summary.argmin
            );
        }
    }

    #[test]
    fn energy_slice_manufactured_weight() {
        // Constant derivatives on a box far from the fronts: the slice energy
        // is the integral of the weight, quadrature-checked under refinement.
        let d = DerivTriple { du: 0.3, dv: -0.2, ang: 0.0 };
        let params = EnergyParams::default();
        let t = 600.0;
        let (r0, r1) = (500.0, 501.0);
        let compute = |cells: usize| {
            let dr = (r1 - r0) / cells as f64;
            let samples: Vec<(NullPoint, DerivTriple)> = (0..cells)
                .map(|i| {
                    let r = r0 + (i as f64 + 0.5) * dr;
                    (NullPoint::from_tr(t, r).unwrap(), d)
                })
                .collect();
            energy_slice(RegionId::R, EnergyKind::Top, &samples, dr, &params)
        };
        let coarse = compute(64);
        let fine = compute(128);
        let finest = compute(256);
        // First-order-or-better convergence under halving.
        let e1 = (coarse - finest).abs();
        let e2 = (fine - finest).abs();
        assert!(e2 <= 0.6 * e1 + 1e-12, "no convergence: {e1} vs {e2}");
        // Independent quadrature of the weight.
        let weight = |r: f64| {
            let p = NullPoint::from_tr(t, r).unwrap();
            energy_integrand(RegionId::R, EnergyKind::Top, &p, &d, &params)
        };
        let oracle = crate::eos::adaptive_simpson(&weight, r0, r1, 1e-12);
        assert!((finest - oracle).abs() / oracle < 1e-4);
    }

    #[test]
    fn energy_slice_zero_state() {
        let samples = vec![(pt(0.5, 100.0), DerivTriple::default())];
        assert_eq!(
            energy_slice(RegionId::C, EnergyKind::Top, &samples, 0.1, &EnergyParams::default()),
            0.0
        );
    }
}

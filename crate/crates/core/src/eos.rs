//! Equation-of-state layer: enthalpy, Bernoulli inversion, potential-form
//! fluxes, and the normalization that puts the sound speed at the reference
//! density to one and the cubic flux coefficient to -1.
//!
//! Densities are dimensionless with reference density 1, so the enthalpy
//! w(rho) = Int_1^rho P'(l)/l dl vanishes at the reference state.

use crate::error::{Error, Result};

/// Pressure law P(rho).
#[derive(Debug, Clone)]
pub enum PressureLaw {
    /// P(rho) = rho^gamma with adiabatic index gamma > 1.
    Polytropic { gamma: f64 },
    /// Monotone-cubic interpolation of (rho, P) samples with hard domain bounds.
    Tabulated(MonotoneCubic),
}

/// An equation of state together with the rescaling bookkeeping.
///
/// `pressure_scale` multiplies the raw law (the time-unit change that makes
/// the sound speed 1 at rho = 1); `potential_scale` is the positive factor of
/// the potential rescaling that pins the cubic flux coefficient to sign(A) * 1.
#[derive(Debug, Clone)]
pub struct EquationOfState {
    law: PressureLaw,
    pressure_scale: f64,
    space_scale: f64,
    time_scale: f64,
    potential_scale: f64,
}

/// Local fluid state derived from the density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoState {
    /// Density (reference 1).
    pub rho: f64,
    /// Enthalpy, w(1) = 0.
    pub w: f64,
    /// Sound speed sqrt(P'(rho)).
    pub c: f64,
    /// Radial velocity.
    pub v: f64,
}

/// First derivatives of the potential in spherical symmetry.
///
/// `a` is the time derivative and `b` the radial derivative; the angular
/// gradient is identically zero. A consistent attached state satisfies the
/// Bernoulli relation w = -a - b^2/2.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PotentialDerivs {
    pub a: f64,
    pub b: f64,
}

impl EquationOfState {
    /// Raw polytropic law P(rho) = rho^gamma, no rescaling applied.
    pub fn polytropic(gamma: f64) -> Result<Self> {
        if !(gamma > 1.0) {
            return Err(Error::domain(format!(
                "polytropic index must satisfy gamma > 1, got {gamma}"
            )));
        }
        Ok(Self {
            law: PressureLaw::Polytropic { gamma },
            pressure_scale: 1.0,
            space_scale: 1.0,
            time_scale: 1.0,
            potential_scale: 1.0,
        })
    }

    /// Tabulated law from strictly increasing density samples.
    pub fn tabulated(rho: Vec<f64>, p: Vec<f64>) -> Result<Self> {
        let interp = MonotoneCubic::new(rho, p)?;
        Ok(Self {
            law: PressureLaw::Tabulated(interp),
            pressure_scale: 1.0,
            space_scale: 1.0,
            time_scale: 1.0,
            potential_scale: 1.0,
        })
    }

    /// Default laboratory EOS: polytropic gamma = 1.4, normalized.
    pub fn default_normalized() -> Self {
        Self::polytropic(1.4)
            .and_then(|e| e.normalize())
            .expect("gamma = 1.4 is a valid convex law")
    }

    pub fn scales(&self) -> (f64, f64, f64) {
        (self.space_scale, self.time_scale, self.potential_scale)
    }

    fn check_density(&self, rho: f64) -> Result<()> {
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(Error::domain(format!("density must be positive, got {rho}")));
        }
        if let PressureLaw::Tabulated(t) = &self.law {
            if rho < t.x_min() || rho > t.x_max() {
                return Err(Error::Extrapolation {
                    rho,
                    lo: t.x_min(),
                    hi: t.x_max(),
                });
            }
        }
        Ok(())
    }

    /// P'(rho), including the pressure rescale.
    pub fn dp(&self, rho: f64) -> Result<f64> {
        self.check_density(rho)?;
        let raw = match &self.law {
            PressureLaw::Polytropic { gamma } => gamma * rho.powf(gamma - 1.0),
            PressureLaw::Tabulated(t) => t.derivative(rho),
        };
        Ok(self.pressure_scale * raw)
    }

    /// P''(rho), including the pressure rescale.
    pub fn d2p(&self, rho: f64) -> Result<f64> {
        self.check_density(rho)?;
        let raw = match &self.law {
            PressureLaw::Polytropic { gamma } => gamma * (gamma - 1.0) * rho.powf(gamma - 2.0),
            PressureLaw::Tabulated(t) => t.second_derivative(rho),
        };
        Ok(self.pressure_scale * raw)
    }

    /// Sound speed sqrt(P'(rho)).
    pub fn sound_speed(&self, rho: f64) -> Result<f64> {
        let dp = self.dp(rho)?;
        if dp <= 0.0 {
            return Err(Error::domain(format!(
                "P'({rho}) = {dp} <= 0 violates strict hyperbolicity"
            )));
        }
        Ok(dp.sqrt())
    }

    /// Enthalpy w(rho) = Int_1^rho P'(l)/l dl.
    ///
    /// Closed form for the polytropic law, adaptive Simpson quadrature with
    /// absolute tolerance 1e-12 for tabulated laws.
    pub fn enthalpy(&self, rho: f64) -> Result<f64> {
        self.check_density(rho)?;
        match &self.law {
            PressureLaw::Polytropic { gamma } => {
                Ok(self.pressure_scale * gamma / (gamma - 1.0) * (rho.powf(gamma - 1.0) - 1.0))
            }
            PressureLaw::Tabulated(t) => {
                let f = |l: f64| self.pressure_scale * t.derivative(l) / l;
                Ok(adaptive_simpson(&f, 1.0, rho, 1e-12))
            }
        }
    }

    /// Enthalpy below which the density map hits vacuum.
    pub fn vacuum_threshold(&self) -> f64 {
        match &self.law {
            PressureLaw::Polytropic { gamma } => -self.pressure_scale * gamma / (gamma - 1.0),
            // Tabulated laws are only defined on their sample range.
            PressureLaw::Tabulated(t) => self.enthalpy(t.x_min()).unwrap_or(f64::NEG_INFINITY),
        }
    }

    /// Inverse of [`enthalpy`](Self::enthalpy).
    pub fn density_of_enthalpy(&self, w: f64) -> Result<f64> {
        match &self.law {
            PressureLaw::Polytropic { gamma } => {
                let base = (gamma - 1.0) / gamma * w / self.pressure_scale + 1.0;
                if base <= 0.0 {
                    return Err(Error::Vacuum {
                        w,
                        threshold: self.vacuum_threshold(),
                    });
                }
                Ok(base.powf(1.0 / (gamma - 1.0)))
            }
            PressureLaw::Tabulated(t) => {
                let (mut lo, mut hi) = (t.x_min(), t.x_max());
                let (wlo, whi) = (self.enthalpy(lo)?, self.enthalpy(hi)?);
                if w < wlo || w > whi {
                    return Err(Error::Extrapolation {
                        rho: f64::NAN,
                        lo: wlo,
                        hi: whi,
                    });
                }
                // Bisection; the map is strictly increasing since P' > 0.
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if self.enthalpy(mid)? < w {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                    if hi - lo < 1e-15 * hi.max(1.0) {
                        break;
                    }
                }
                Ok(0.5 * (lo + hi))
            }
        }
    }

    /// Bernoulli inversion: w = -a - b^2/2, rho = rho(w), c = sqrt(P'(rho)).
    pub fn bernoulli_state(&self, d: PotentialDerivs) -> Result<ThermoState> {
        let w = -d.a - 0.5 * d.b * d.b;
        let rho = self.density_of_enthalpy(w)?;
        let c = self.sound_speed(rho)?;
        Ok(ThermoState { rho, w, c, v: d.b })
    }

    /// Potential-form flux components (H^0, H^r) = (rho(dPhi), rho(dPhi) b).
    pub fn flux_h(&self, d: PotentialDerivs) -> Result<(f64, f64)> {
        let state = self.bernoulli_state(d)?;
        Ok((state.rho, state.rho * d.b))
    }

    /// Cubic flux coefficient A^{uuu} = (rho''(0) - rho'(0)) / 2 evaluated as
    /// (P'(1) - P''(1) - P'(1)^2) / (2 P'(1)^3), times the recorded potential
    /// rescale. Equals -P''(1)/2 in sound-speed-normalized units and exactly
    /// sign(A) after full normalization.
    pub fn cubic_coefficient(&self) -> Result<f64> {
        let dp = self.dp(1.0)?;
        let d2p = self.d2p(1.0)?;
        if dp <= 0.0 {
            return Err(Error::domain(format!("P'(1) = {dp} <= 0")));
        }
        if d2p == 0.0 {
            return Err(Error::DegenerateEos);
        }
        let base = (dp - d2p - dp * dp) / (2.0 * dp * dp * dp);
        Ok(self.potential_scale * base)
    }

    /// Rescale so the sound speed at rho = 1 is one and |A^{uuu}| = 1,
    /// recording the scale factors. Idempotent.
    pub fn normalize(&self) -> Result<Self> {
        let dp = self.dp(1.0)?;
        if dp <= 0.0 {
            return Err(Error::domain(format!("P'(1) = {dp} <= 0")));
        }
        if self.d2p(1.0)? == 0.0 {
            return Err(Error::DegenerateEos);
        }
        let mut out = self.clone();
        out.pressure_scale = self.pressure_scale / dp;
        out.time_scale = self.time_scale * dp.sqrt();
        // Cubic coefficient of the sound-speed-normalized law.
        let dp1 = out.dp(1.0)?;
        let d2p1 = out.d2p(1.0)?;
        let base = (dp1 - d2p1 - dp1 * dp1) / (2.0 * dp1 * dp1 * dp1);
        out.potential_scale = 1.0 / base.abs();
        Ok(out)
    }

    /// Riemann-invariant integral ell(rho) = Int_1^rho c(l)/l dl, so that
    /// v +- ell(rho) are the characteristic invariants of the radial system.
    pub fn riemann_ell(&self, rho: f64) -> Result<f64> {
        self.check_density(rho)?;
        match &self.law {
            PressureLaw::Polytropic { gamma } => {
                let c1 = (self.pressure_scale * gamma).sqrt();
                Ok(c1 * 2.0 / (gamma - 1.0) * (rho.powf(0.5 * (gamma - 1.0)) - 1.0))
            }
            PressureLaw::Tabulated(_) => {
                let f = |l: f64| self.sound_speed(l).unwrap_or(f64::NAN) / l;
                Ok(adaptive_simpson(&f, 1.0, rho, 1e-13))
            }
        }
    }

    /// Inverse of [`riemann_ell`](Self::riemann_ell).
    pub fn density_of_riemann_ell(&self, ell: f64) -> Result<f64> {
        match &self.law {
            PressureLaw::Polytropic { gamma } => {
                let c1 = (self.pressure_scale * gamma).sqrt();
                let base = 0.5 * (gamma - 1.0) * ell / c1 + 1.0;
                if base <= 0.0 {
                    return Err(Error::Vacuum {
                        w: ell,
                        threshold: -2.0 * c1 / (gamma - 1.0),
                    });
                }
                Ok(base.powf(2.0 / (gamma - 1.0)))
            }
            PressureLaw::Tabulated(t) => {
                let (mut lo, mut hi) = (t.x_min(), t.x_max());
                let (elo, ehi) = (self.riemann_ell(lo)?, self.riemann_ell(hi)?);
                if ell < elo || ell > ehi {
                    return Err(Error::Extrapolation { rho: f64::NAN, lo: elo, hi: ehi });
                }
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if self.riemann_ell(mid)? < ell {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                    if hi - lo < 1e-15 * hi.max(1.0) {
                        break;
                    }
                }
                Ok(0.5 * (lo + hi))
            }
        }
    }

    /// The flux component H^u(xi) along the outgoing null direction, with the
    /// recorded potential rescale folded in. Used to cross-check
    /// [`cubic_coefficient`](Self::cubic_coefficient) by finite differences:
    /// A^{uuu} = (d^2/dxi_u^2) H^u(0) / 2.
    pub fn flux_h_u(&self, xi_u: f64, xi_v: f64, xi_ang: f64) -> Result<f64> {
        let s = self.potential_scale;
        let (u, v, ang) = (s * xi_u, s * xi_v, s * xi_ang);
        let w = -(v + u) - 0.5 * (v - u) * (v - u) - 0.5 * ang * ang;
        let rho = self.density_of_enthalpy(w)?;
        Ok(rho * (1.0 - v + u) / s)
    }
}

/// Fritsch-Carlson monotone cubic (PCHIP) interpolant.
#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    x: Vec<f64>,
    y: Vec<f64>,
    /// Nodal derivatives.
    d: Vec<f64>,
}

impl MonotoneCubic {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.len() != y.len() || x.len() < 3 {
            return Err(Error::domain(
                "tabulated EOS needs at least 3 (rho, P) samples of equal length",
            ));
        }
        for i in 1..x.len() {
            if x[i] <= x[i - 1] {
                return Err(Error::domain("tabulated densities must be strictly increasing"));
            }
            if y[i] <= y[i - 1] {
                return Err(Error::domain(
                    "tabulated pressures must be strictly increasing (P' > 0)",
                ));
            }
        }
        let n = x.len();
        let h: Vec<f64> = (0..n - 1).map(|i| x[i + 1] - x[i]).collect();
        let delta: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();
        let mut d = vec![0.0; n];
        d[0] = delta[0];
        d[n - 1] = delta[n - 2];
        for i in 1..n - 1 {
            if delta[i - 1] * delta[i] > 0.0 {
                let w1 = 2.0 * h[i] + h[i - 1];
                let w2 = h[i] + 2.0 * h[i - 1];
                d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
        // Fritsch-Carlson limiting keeps the interpolant monotone.
        for i in 0..n - 1 {
            if delta[i] == 0.0 {
                d[i] = 0.0;
                d[i + 1] = 0.0;
            } else {
                let alpha = d[i] / delta[i];
                let beta = d[i + 1] / delta[i];
                let norm = (alpha * alpha + beta * beta).sqrt();
                if norm > 3.0 {
                    d[i] = 3.0 * alpha / norm * delta[i];
                    d[i + 1] = 3.0 * beta / norm * delta[i];
                }
            }
        }
        Ok(Self { x, y, d })
    }

    pub fn x_min(&self) -> f64 {
        self.x[0]
    }

    pub fn x_max(&self) -> f64 {
        *self.x.last().unwrap()
    }

    fn segment(&self, x: f64) -> usize {
        match self.x.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
            Ok(i) => i.min(self.x.len() - 2),
            Err(i) => i.saturating_sub(1).min(self.x.len() - 2),
        }
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        let i = self.segment(x);
        let h = self.x[i + 1] - self.x[i];
        let t = (x - self.x[i]) / h;
        let (y0, y1, d0, d1) = (self.y[i], self.y[i + 1], self.d[i], self.d[i + 1]);
        let h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
        let h10 = t * (1.0 - t) * (1.0 - t);
        let h01 = t * t * (3.0 - 2.0 * t);
        let h11 = t * t * (t - 1.0);
        h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let i = self.segment(x);
        let h = self.x[i + 1] - self.x[i];
        let t = (x - self.x[i]) / h;
        let (y0, y1, d0, d1) = (self.y[i], self.y[i + 1], self.d[i], self.d[i + 1]);
        let dh00 = 6.0 * t * t - 6.0 * t;
        let dh10 = 3.0 * t * t - 4.0 * t + 1.0;
        let dh01 = -6.0 * t * t + 6.0 * t;
        let dh11 = 3.0 * t * t - 2.0 * t;
        (dh00 * y0 + dh01 * y1) / h + dh10 * d0 + dh11 * d1
    }

    pub fn second_derivative(&self, x: f64) -> f64 {
        let i = self.segment(x);
        let h = self.x[i + 1] - self.x[i];
        let t = (x - self.x[i]) / h;
        let (y0, y1, d0, d1) = (self.y[i], self.y[i + 1], self.d[i], self.d[i + 1]);
        let ddh00 = 12.0 * t - 6.0;
        let ddh10 = 6.0 * t - 4.0;
        let ddh01 = -12.0 * t + 6.0;
        let ddh11 = 6.0 * t - 2.0;
        (ddh00 * y0 + ddh01 * y1) / (h * h) + (ddh10 * d0 + ddh11 * d1) / h
    }
}

/// Adaptive Simpson quadrature with absolute tolerance `tol`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        ((b - a) / 6.0 * (fa + 4.0 * fm + fb), fm)
    }
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        fm: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (left, flm) = simpson(f, a, fa, m, fm);
        let (right, frm) = simpson(f, m, fm, b, fb);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            left + right + (left + right - whole) / 15.0
        } else {
            recurse(f, a, fa, m, fm, left, flm, 0.5 * tol, depth - 1)
                + recurse(f, m, fm, b, fb, right, frm, 0.5 * tol, depth - 1)
        }
    }
    if a == b {
        return 0.0;
    }
    let (fa, fb) = (f(a), f(b));
    let (whole, fm) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, whole, fm, tol, 48)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(gamma: f64) -> EquationOfState {
        EquationOfState::polytropic(gamma).unwrap()
    }

    #[test]
    fn enthalpy_reference_state() {
        assert_eq!(raw(2.0).enthalpy(1.0).unwrap(), 0.0);
    }

    #[test]
    fn enthalpy_polytropic_closed_form() {
        // w = gamma/(gamma-1) (rho^(gamma-1) - 1)
        assert!((raw(2.0).enthalpy(1.5).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn enthalpy_against_quadrature_oracle() {
        let eos = raw(1.4);
        let w = eos.enthalpy(2.0).unwrap();
        let expected = 3.5 * (2f64.powf(0.4) - 1.0);
        assert!((w - expected).abs() < 1e-12);
        // Independent quadrature of Int P'(l)/l dl.
        let f = |l: f64| 1.4 * l.powf(-0.6);
        let q = adaptive_simpson(&f, 1.0, 2.0, 1e-13);
        assert!((w - q).abs() <= 1e-10, "closed form {w} vs quadrature {q}");
    }

    #[test]
    fn enthalpy_rejects_nonpositive_density() {
        assert!(matches!(raw(1.4).enthalpy(0.0), Err(Error::Domain(_))));
        assert!(matches!(raw(1.4).enthalpy(-1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn density_of_enthalpy_inverse() {
        let eos = raw(2.0);
        assert_eq!(eos.density_of_enthalpy(0.0).unwrap(), 1.0);
        assert!((eos.density_of_enthalpy(1.0).unwrap() - 1.5).abs() < 1e-14);
        // Bisection oracle on the enthalpy map.
        let eos = raw(1.4);
        let w = eos.enthalpy(2.0).unwrap();
        let (mut lo, mut hi) = (1.0, 4.0);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if eos.enthalpy(mid).unwrap() < w {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let direct = eos.density_of_enthalpy(w).unwrap();
        assert!((direct - 0.5 * (lo + hi)).abs() < 1e-10);
        assert!((direct - 2.0).abs() < 1e-12);
    }

    #[test]
    fn density_of_enthalpy_vacuum() {
        let eos = raw(2.0);
        // Threshold: (gamma-1)/gamma w + 1 <= 0  =>  w <= -2.
        assert!(matches!(
            eos.density_of_enthalpy(-2.0),
            Err(Error::Vacuum { .. })
        ));
    }

    #[test]
    fn bernoulli_rest_state() {
        let eos = EquationOfState::default_normalized();
        let st = eos.bernoulli_state(PotentialDerivs::default()).unwrap();
        assert_eq!(st.rho, 1.0);
        assert_eq!(st.w, 0.0);
        assert!((st.c - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bernoulli_direct_substitution() {
        let eos = raw(2.0);
        let st = eos
            .bernoulli_state(PotentialDerivs { a: -1.0, b: 0.0 })
            .unwrap();
        assert!((st.w - 1.0).abs() < 1e-15);
        assert!((st.rho - 1.5).abs() < 1e-14);
    }

    #[test]
    fn bernoulli_mixed_derivs() {
        let eos = raw(1.4);
        let st = eos
            .bernoulli_state(PotentialDerivs { a: 0.1, b: 0.2 })
            .unwrap();
        assert!((st.w + 0.12).abs() < 1e-15);
        assert!((st.rho - eos.density_of_enthalpy(-0.12).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn flux_h_values() {
        let eos = raw(2.0);
        assert_eq!(eos.flux_h(PotentialDerivs::default()).unwrap(), (1.0, 0.0));
        let (h0, hr) = eos.flux_h(PotentialDerivs { a: -1.0, b: 0.0 }).unwrap();
        assert!((h0 - 1.5).abs() < 1e-14);
        assert_eq!(hr, 0.0);
        let eos = raw(1.4);
        let (h0, hr) = eos.flux_h(PotentialDerivs { a: 0.0, b: 0.3 }).unwrap();
        let rho = eos.density_of_enthalpy(-0.045).unwrap();
        assert!((h0 - rho).abs() < 1e-15);
        assert!((hr - 0.3 * rho).abs() < 1e-15);
    }

    /// Central second difference of rho(w) at w = 0 as an independent route to
    /// A^{uuu} = (rho''(0) - rho'(0)) / 2 for a sound-speed-normalized law.
    fn cubic_fd_oracle(eos: &EquationOfState) -> f64 {
        let h = 1e-5;
        let r = |w: f64| eos.density_of_enthalpy(w).unwrap();
        let d2 = (r(h) - 2.0 * r(0.0) + r(-h)) / (h * h);
        let d1 = (r(h) - r(-h)) / (2.0 * h);
        0.5 * (d2 - d1)
    }

    #[test]
    fn cubic_coefficient_normalized_laws() {
        // Normalized gamma = 2 law is P = rho^2/2: P''(1) = 1, A = -1/2.
        let eos = raw(2.0);
        let mut scaled = eos.clone();
        scaled.pressure_scale = 0.5;
        assert!((scaled.cubic_coefficient().unwrap() + 0.5).abs() < 1e-15);
        assert!((scaled.cubic_coefficient().unwrap() - cubic_fd_oracle(&scaled)).abs() < 1e-6);
    }

    #[test]
    fn cubic_coefficient_degenerate() {
        // A linear pressure table has P'' = 0.
        let rho: Vec<f64> = (0..9).map(|i| 0.6 + 0.1 * i as f64).collect();
        let p: Vec<f64> = rho.iter().map(|r| 2.0 * r - 1.0).collect();
        let eos = EquationOfState::tabulated(rho, p).unwrap();
        assert!(matches!(eos.cubic_coefficient(), Err(Error::DegenerateEos)));
    }

    #[test]
    fn normalize_sound_speed_and_cubic() {
        let eos = raw(1.4).normalize().unwrap();
        assert!((eos.sound_speed(1.0).unwrap() - 1.0).abs() < 1e-15);
        let eos2 = raw(2.0).normalize().unwrap();
        assert!((eos2.cubic_coefficient().unwrap() + 1.0).abs() < 1e-14);
    }

    #[test]
    fn normalize_idempotent() {
        let once = raw(1.4).normalize().unwrap();
        let twice = once.normalize().unwrap();
        assert_eq!(once.scales(), twice.scales());
        assert_eq!(once.pressure_scale, twice.pressure_scale);
        let already = EquationOfState::default_normalized();
        let again = already.normalize().unwrap();
        assert_eq!(already.scales(), again.scales());
    }

    #[test]
    fn round_trip_100_samples() {
        let eos = EquationOfState::default_normalized();
        for i in 0..100 {
            let rho = 0.5 + 1.5 * i as f64 / 99.0;
            let back = eos.density_of_enthalpy(eos.enthalpy(rho).unwrap()).unwrap();
            assert!((back - rho).abs() <= 1e-12, "rho {rho} -> {back}");
        }
    }

    #[test]
    fn monotone_and_hyperbolic_on_interval() {
        let eos = EquationOfState::default_normalized();
        let mut prev = eos.enthalpy(0.5).unwrap();
        for i in 1..200 {
            let rho = 0.5 + 1.5 * i as f64 / 199.0;
            let w = eos.enthalpy(rho).unwrap();
            assert!(w > prev, "enthalpy not strictly increasing at {rho}");
            assert!(eos.sound_speed(rho).unwrap() > 0.0);
            prev = w;
        }
    }

    #[test]
    fn cubic_matches_flux_fd_oracle() {
        // Central second difference of H^u in xi_u at 0.
        for eos in [raw(2.0).normalize().unwrap(), EquationOfState::default_normalized()] {
            let h = 1e-5;
            let f = |x: f64| eos.flux_h_u(x, 0.0, 0.0).unwrap();
            let d2 = (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h);
            let a = eos.cubic_coefficient().unwrap();
            assert!(
                ((0.5 * d2 - a) / a).abs() < 1e-6,
                "fd {} vs closed form {a}",
                0.5 * d2
            );
        }
    }

    #[test]
    fn riemann_ell_round_trip_and_quadrature() {
        let eos = EquationOfState::default_normalized();
        for i in 0..40 {
            let rho = 0.6 + 1.2 * i as f64 / 39.0;
            let ell = eos.riemann_ell(rho).unwrap();
            let back = eos.density_of_riemann_ell(ell).unwrap();
            assert!((back - rho).abs() < 1e-12);
        }
        // Quadrature oracle of Int c/l dl.
        let f = |l: f64| eos.sound_speed(l).unwrap() / l;
        let q = adaptive_simpson(&f, 1.0, 1.7, 1e-13);
        assert!((eos.riemann_ell(1.7).unwrap() - q).abs() < 1e-10);
    }

    #[test]
    fn tabulated_tracks_polytropic() {
        let gamma = 1.4;
        let rho: Vec<f64> = (0..400).map(|i| 0.4 + 1.8 * i as f64 / 399.0).collect();
        let p: Vec<f64> = rho.iter().map(|r| r.powf(gamma)).collect();
        let tab = EquationOfState::tabulated(rho, p).unwrap();
        let poly = raw(gamma);
        for i in 0..50 {
            let r = 0.6 + 1.2 * i as f64 / 49.0;
            let wt = tab.enthalpy(r).unwrap();
            let wp = poly.enthalpy(r).unwrap();
            assert!((wt - wp).abs() < 2e-6, "rho {r}: {wt} vs {wp}");
        }
        assert!(matches!(
            tab.enthalpy(3.0),
            Err(Error::Extrapolation { .. })
        ));
    }
}

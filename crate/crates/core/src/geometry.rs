//! Null coordinates, the Minkowski and Burgers model metrics, null frames,
//! front normals, causal classification, and outgoing characteristics of the
//! Burgers metric.
//!
//! Conventions: u = t - r, v = t + r, s = log v, so the right (outer) front
//! sits at negative u. Covectors are handled through their (xi_u, xi_v,
//! |xi_ang|) components and vectors through coefficient pairs in the
//! (d_u, d_v) basis, with angular parts carried as scalar magnitudes.

use crate::error::{Error, Result};

/// A spacetime sample in null coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NullPoint {
    pub t: f64,
    pub r: f64,
    pub u: f64,
    pub v: f64,
    pub s: f64,
}

impl NullPoint {
    /// From (t, r) with r > 0 and t + r > 1 (so s > 0).
    pub fn from_tr(t: f64, r: f64) -> Result<Self> {
        if !(r > 0.0) {
            return Err(Error::domain(format!("r must be positive, got {r}")));
        }
        let v = t + r;
        if !(v > 1.0) {
            return Err(Error::domain(format!("t + r must exceed 1, got {v}")));
        }
        Ok(Self {
            t,
            r,
            u: t - r,
            v,
            s: v.ln(),
        })
    }

    /// From (u, v) with v > 1 and v > u.
    pub fn from_uv(u: f64, v: f64) -> Result<Self> {
        if !(v > 1.0) || !(v > u) {
            return Err(Error::domain(format!(
                "null coordinates need v > 1 and v > u, got u={u}, v={v}"
            )));
        }
        Ok(Self {
            t: 0.5 * (u + v),
            r: 0.5 * (v - u),
            u,
            v,
            s: v.ln(),
        })
    }
}

/// Which model metric a computation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricId {
    Minkowski,
    BurgersModel,
}

/// Which tracked front a parameter set describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrontSide {
    Left,
    Right,
}

/// Causal character of a front with respect to a metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CausalClass {
    Spacelike,
    Timelike,
    /// |g(N,N)| within tolerance of zero.
    Null,
}

/// Boundary-defining data of a front at a point: the value B with u = B on
/// the front, its v-derivative, and the angular gradient magnitude (zero in
/// spherical symmetry).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrontParam {
    pub side: FrontSide,
    pub b: f64,
    pub db_dv: f64,
    pub ang_grad_b: f64,
}

impl FrontParam {
    /// The model front B = +sqrt(s) (left) or B = -sqrt(s) (right), scaled by
    /// a positive extent constant.
    pub fn model(side: FrontSide, extent: f64, pt: &NullPoint) -> Self {
        let root = pt.s.sqrt();
        let (b, db_dv) = match side {
            FrontSide::Left => (extent * root, extent / (2.0 * pt.v * root)),
            FrontSide::Right => (-extent * root, -extent / (2.0 * pt.v * root)),
        };
        Self {
            side,
            b,
            db_dv,
            ang_grad_b: 0.0,
        }
    }
}

/// A spherically symmetric vector, by its coefficients on (d_u, d_v).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UvVector {
    pub cu: f64,
    pub cv: f64,
}

impl MetricId {
    /// Inverse metric applied to a covector: g^{-1}(xi, xi).
    ///
    /// m^{-1} = -4 xi_u xi_v + 4 (v-u)^{-2} |xi_ang|^2 and the Burgers model
    /// adds -4 u/(v s) xi_u^2.
    pub fn inverse_quadratic(&self, pt: &NullPoint, xi_u: f64, xi_v: f64, xi_ang: f64) -> f64 {
        let ang = 4.0 / ((pt.v - pt.u) * (pt.v - pt.u)) * xi_ang * xi_ang;
        let base = -4.0 * xi_u * xi_v + ang;
        match self {
            MetricId::Minkowski => base,
            MetricId::BurgersModel => base - 4.0 * pt.u / (pt.v * pt.s) * xi_u * xi_u,
        }
    }

    /// Metric pairing of two spherically symmetric vectors.
    ///
    /// In the (du, dv) block: g_uv = -1/2, g_vv = u/(vs) for the Burgers
    /// model and 0 for Minkowski.
    pub fn dot(&self, pt: &NullPoint, x: &UvVector, y: &UvVector) -> f64 {
        let guv = -0.5;
        let gvv = match self {
            MetricId::Minkowski => 0.0,
            MetricId::BurgersModel => pt.u / (pt.v * pt.s),
        };
        guv * (x.cu * y.cv + x.cv * y.cu) + gvv * x.cv * y.cv
    }

    /// Covector dual of a spherically symmetric vector: (g X)_u, (g X)_v.
    pub fn lower(&self, pt: &NullPoint, x: &UvVector) -> (f64, f64) {
        let gvv = match self {
            MetricId::Minkowski => 0.0,
            MetricId::BurgersModel => pt.u / (pt.v * pt.s),
        };
        (-0.5 * x.cv, -0.5 * x.cu + gvv * x.cv)
    }

    /// Null-frame decomposition coefficients (X^n, X^ell) of a vector.
    ///
    /// X^ell = X^v for both metrics; X^n = X^u for Minkowski and
    /// X^u - (u/(vs)) X^v for the Burgers model.
    pub fn null_components(&self, pt: &NullPoint, x: &UvVector) -> (f64, f64) {
        match self {
            MetricId::Minkowski => (x.cu, x.cv),
            MetricId::BurgersModel => (x.cu - pt.u / (pt.v * pt.s) * x.cv, x.cv),
        }
    }
}

/// The null frame (n, ell^g): n = d_u for both metrics, ell^m = d_v, and
/// ell^{m_B} = d_v + (u/(vs)) d_u. They satisfy g(n, ell^g) = -1/2.
pub fn null_frame(g: MetricId, pt: &NullPoint) -> (UvVector, UvVector) {
    let n = UvVector { cu: 1.0, cv: 0.0 };
    let ell = match g {
        MetricId::Minkowski => UvVector { cu: 0.0, cv: 1.0 },
        MetricId::BurgersModel => UvVector {
            cu: pt.u / (pt.v * pt.s),
            cv: 1.0,
        },
    };
    (n, ell)
}

/// Front normal and its squared g-length.
///
/// N_m = d_v - d_vB d_u (plus an angular term carried only through the
/// length), N_{m_B} = d_v + (2u/(vs) - d_vB) d_u, and
/// g(N, N) = ell^g(B - u) + |ang B|^2/4, which is d_vB + |ang B|^2/4 for m
/// and d_vB - u/(vs) + |ang B|^2/4 for m_B.
pub fn front_normal(g: MetricId, pt: &NullPoint, f: &FrontParam) -> (UvVector, f64) {
    let ang = 0.25 * f.ang_grad_b * f.ang_grad_b;
    match g {
        MetricId::Minkowski => (
            UvVector {
                cu: -f.db_dv,
                cv: 1.0,
            },
            f.db_dv + ang,
        ),
        MetricId::BurgersModel => {
            let k = pt.u / (pt.v * pt.s);
            (
                UvVector {
                    cu: 2.0 * k - f.db_dv,
                    cv: 1.0,
                },
                f.db_dv - k + ang,
            )
        }
    }
}

/// Scale-relative tolerance for causal classification: g(N,N) is O(1/(v s^{1/2}))
/// near the model fronts, so an absolute cutoff would misclassify.
pub fn causal_tolerance(pt: &NullPoint) -> f64 {
    1e-14 / (pt.v * pt.s.sqrt().max(1e-300))
}

/// Classify a front: spacelike iff g(N,N) < -tol (normal timelike),
/// timelike iff g(N,N) > tol, null-flagged otherwise.
pub fn causal_class(g: MetricId, pt: &NullPoint, f: &FrontParam) -> CausalClass {
    let (_, len2) = front_normal(g, pt, f);
    let tol = causal_tolerance(pt);
    if len2 < -tol {
        CausalClass::Spacelike
    } else if len2 > tol {
        CausalClass::Timelike
    } else {
        CausalClass::Null
    }
}

/// Outgoing characteristic of the Burgers metric through (u0, v0): the exact
/// curve is u = K log v with K = u0 / log v0.
pub fn mb_characteristic(v0: f64, u0: f64, v: f64) -> Result<f64> {
    if !(v0 > 1.0) {
        return Err(Error::domain(format!("characteristic needs v0 > 1, got {v0}")));
    }
    if v < v0 {
        return Err(Error::domain(format!("characteristic runs forward: v = {v} < v0 = {v0}")));
    }
    Ok(u0 * v.ln() / v0.ln())
}

/// Right side of the defining ODE du/dv = u / (v log v), exposed for
/// oracle integration.
pub fn mb_characteristic_ode(v: f64, u: f64) -> f64 {
    u / (v * v.ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn to_null_basic() {
        let p = NullPoint::from_tr(1.0, 1.0).unwrap();
        assert_eq!((p.u, p.v), (0.0, 2.0));
        assert!((p.s - 2f64.ln()).abs() < 1e-15);

        let half = (4f64).exp() / 2.0;
        let p = NullPoint::from_tr(half, half).unwrap();
        assert_eq!(p.u, 0.0);
        assert!((p.s - 4.0).abs() < 1e-12);

        let p = NullPoint::from_tr(10.0, 4.0).unwrap();
        assert_eq!((p.u, p.v), (6.0, 14.0));
        assert!((p.s - 14f64.ln()).abs() < 1e-15);

        assert!(NullPoint::from_tr(1.0, -1.0).is_err());
        assert!(NullPoint::from_tr(0.25, 0.25).is_err());
    }

    #[test]
    fn null_frame_coefficients() {
        let pt = NullPoint::from_uv(1.0, 1f64.exp()).unwrap();
        let (n, ell_m) = null_frame(MetricId::Minkowski, &pt);
        assert_eq!((n.cu, n.cv), (1.0, 0.0));
        assert_eq!((ell_m.cu, ell_m.cv), (0.0, 1.0));
        let (_, ell_b) = null_frame(MetricId::BurgersModel, &pt);
        assert!((ell_b.cu - (-1f64).exp()).abs() < 1e-15);
        assert_eq!(ell_b.cv, 1.0);
    }

    #[test]
    fn frame_nullity_and_normalization() {
        // g(n, ell) = -1/2 in closed form; duals are null for g^{-1}.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut rng = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..1000 {
            let v = 10f64 * (1e5f64).powf(rng());
            let s = v.ln();
            let u = (2.0 * rng() - 1.0) * s.sqrt();
            let pt = NullPoint::from_uv(u, v).unwrap();
            for g in [MetricId::Minkowski, MetricId::BurgersModel] {
                let (n, ell) = null_frame(g, &pt);
                assert_eq!(g.dot(&pt, &n, &ell), -0.5);
                for x in [n, ell] {
                    let (xu, xv) = g.lower(&pt, &x);
                    assert!(
                        g.inverse_quadratic(&pt, xu, xv, 0.0).abs() < 1e-14,
                        "null vector dual not null at u={u} v={v}"
                    );
                }
            }
        }
    }

    #[test]
    fn model_front_lengths() {
        let v = (4f64).exp();
        let pt = NullPoint::from_uv(-2.0, v).unwrap();
        let f = FrontParam::model(FrontSide::Right, 1.0, &pt);
        let (_, m_len) = front_normal(MetricId::Minkowski, &pt, &f);
        assert!((m_len + 1.0 / (4.0 * v)).abs() < 1e-18);
        let (_, mb_len) = front_normal(MetricId::BurgersModel, &pt, &f);
        assert!((mb_len - 1.0 / (4.0 * v)).abs() < 1e-18);

        let pt = NullPoint::from_uv(2.0, v).unwrap();
        let f = FrontParam::model(FrontSide::Left, 1.0, &pt);
        let (_, m_len) = front_normal(MetricId::Minkowski, &pt, &f);
        let (_, mb_len) = front_normal(MetricId::BurgersModel, &pt, &f);
        assert!(m_len > 0.0 && mb_len < 0.0);
    }

    #[test]
    fn causality_table() {
        // m: right spacelike / left timelike; m_B: right timelike / left spacelike.
        for i in 0..1000 {
            let s = 3.0 + 9.0 * i as f64 / 999.0;
            let v = s.exp();
            let right_pt = NullPoint::from_uv(-s.sqrt(), v).unwrap();
            let right = FrontParam::model(FrontSide::Right, 1.0, &right_pt);
            assert_eq!(
                causal_class(MetricId::Minkowski, &right_pt, &right),
                CausalClass::Spacelike
            );
            assert_eq!(
                causal_class(MetricId::BurgersModel, &right_pt, &right),
                CausalClass::Timelike
            );
            let left_pt = NullPoint::from_uv(s.sqrt(), v).unwrap();
            let left = FrontParam::model(FrontSide::Left, 1.0, &left_pt);
            assert_eq!(
                causal_class(MetricId::Minkowski, &left_pt, &left),
                CausalClass::Timelike
            );
            assert_eq!(
                causal_class(MetricId::BurgersModel, &left_pt, &left),
                CausalClass::Spacelike
            );
        }
    }

    #[test]
    fn causality_robust_to_scaled_angular_perturbation() {
        for i in 0..200 {
            let s = 3.0 + 9.0 * i as f64 / 199.0;
            let v = s.exp();
            let pt = NullPoint::from_uv(-s.sqrt(), v).unwrap();
            let mut f = FrontParam::model(FrontSide::Right, 1.0, &pt);
            let unperturbed = (
                causal_class(MetricId::Minkowski, &pt, &f),
                causal_class(MetricId::BurgersModel, &pt, &f),
            );
            f.ang_grad_b = 0.5 / (v * s.sqrt()).sqrt();
            let perturbed = (
                causal_class(MetricId::Minkowski, &pt, &f),
                causal_class(MetricId::BurgersModel, &pt, &f),
            );
            assert_eq!(unperturbed, perturbed);
        }
    }

    #[test]
    fn characteristic_closed_form() {
        assert_eq!(mb_characteristic(2.0, 0.0, 100.0).unwrap(), 0.0);
        let e = 1f64.exp();
        assert!((mb_characteristic(e, 1.0, e * e).unwrap() - 2.0).abs() < 1e-14);
        let v0 = (2f64).exp();
        let v1 = (4f64).exp();
        assert!((mb_characteristic(v0, 3.0, v1).unwrap() - 6.0).abs() < 1e-13);
        assert!(mb_characteristic(1.0, 1.0, 2.0).is_err());
    }

    #[test]
    fn characteristic_rk4_invariant() {
        // u / log v should be an invariant of the ODE to 1e-8 relative over a
        // decade in v.
        let v0 = (3f64).exp();
        let u0 = 1.7;
        let mut v = v0;
        let mut u = u0;
        let n = 4000;
        let h = (10.0f64.ln()) / n as f64; // log-spaced steps over one decade
        for _ in 0..n {
            let v_next = v * h.exp();
            let dv = v_next - v;
            let k1 = mb_characteristic_ode(v, u);
            let k2 = mb_characteristic_ode(v + 0.5 * dv, u + 0.5 * dv * k1);
            let k3 = mb_characteristic_ode(v + 0.5 * dv, u + 0.5 * dv * k2);
            let k4 = mb_characteristic_ode(v + dv, u + dv * k3);
            u += dv / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            v = v_next;
        }
        let exact = mb_characteristic(v0, u0, v).unwrap();
        assert!(
            ((u - exact) / exact).abs() <= 1e-8,
            "rk4 {u} vs closed form {exact}"
        );
        assert!(((u / v.ln()) - (u0 / v0.ln())).abs() / (u0 / v0.ln()) < 1e-8);
    }
}

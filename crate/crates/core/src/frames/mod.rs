//! Curves on surfaces and their Frenet and Darboux frames.
//!
//! Every frame operation assumes a unit-speed curve; [`arc_length_reparam`]
//! turns a regular curve into one.

mod catalog;
mod curve;
mod reparam;

use serde::Serialize;
use thiserror::Error;

use crate::numerics::{
    diff, gram_deviation, DerivPath, Jet, NumericsError, Order, TolerancePolicy, Vec3,
};
use crate::surfaces::{unit_normal_of, SurfaceError, SurfaceJet, SurfacePatch};

pub use catalog::{circle, curve_catalog, curve_names, helix, line, polynomial};
pub use curve::{polynomial_jet, ChartJet, ChartJetFn, CoordFn, SurfaceCurve};
pub use reparam::{arc_length_reparam, ArcLengthTable};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FrameError {
    #[error("s = {s} is outside the parameter interval [{lo}, {hi}] of curve `{curve}`")]
    OutOfParameterDomain {
        curve: String,
        s: f64,
        lo: f64,
        hi: f64,
    },
    #[error("curve is not unit speed at s = {s}: |gamma'| = {speed}")]
    NotUnitSpeed { s: f64, speed: f64 },
    #[error(
        "curvature {kappa:e} at s = {s} is below kappa_min; the Frenet frame is undefined here"
    )]
    CurvatureDegenerate { s: f64, kappa: f64 },
    #[error("singular parametrization: |gamma_t| = {speed:e} at t = {t}")]
    SingularParametrization { t: f64, speed: f64 },
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    #[error("invalid parameters for curve `{name}`: {reason}")]
    InvalidCurve { name: String, reason: String },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Step multiplier for third-derivative stencils, which lose precision
/// quickly as the step shrinks.
pub(crate) const THIRD_ORDER_STEP: f64 = 10.0;

/// Everything known about a curve at one parameter value: chart derivatives,
/// the surface jet at the chart point, and the space derivatives of
/// `gamma = phi(u(s), v(s))`.
#[derive(Debug, Clone, Copy)]
pub struct CurvePoint {
    pub s: f64,
    pub chart: ChartJet,
    pub surface: SurfaceJet,
    pub position: Vec3,
    pub d1: Vec3,
    pub d2: Vec3,
    pub d3: Vec3,
    pub path: DerivPath,
}

impl CurvePoint {
    /// `u'` and `v'`.
    pub fn chart_velocity(&self) -> (f64, f64) {
        (self.chart.u.d[1], self.chart.v.d[1])
    }
}

/// `gamma(s) = phi(u(s), v(s))`.
pub fn embed(curve: &SurfaceCurve, patch: &SurfacePatch, s: f64) -> Result<Vec3, FrameError> {
    check_param(curve, s)?;
    let (u, v) = curve.coords(s);
    Ok(patch.eval(u, v)?)
}

fn check_param(curve: &SurfaceCurve, s: f64) -> Result<(), FrameError> {
    let dom = curve.s_domain();
    if dom.contains(s) {
        Ok(())
    } else {
        Err(FrameError::OutOfParameterDomain {
            curve: curve.name().to_string(),
            s,
            lo: dom.lo,
            hi: dom.hi,
        })
    }
}

/// Chain rule for `phi(u(s), v(s))` up to the second derivative.
pub(crate) fn chain_second(j: &SurfaceJet, c: &ChartJet) -> (Vec3, Vec3) {
    let [_, u1, u2, _] = c.u.d;
    let [_, v1, v2, _] = c.v.d;
    let d1 = j.du * u1 + j.dv * v1;
    let d2 =
        j.duu * (u1 * u1) + j.duv * (2.0 * u1 * v1) + j.dvv * (v1 * v1) + j.du * u2 + j.dv * v2;
    (d1, d2)
}

fn chain_third(j: &SurfaceJet, third: &[Vec3; 4], c: &ChartJet) -> Vec3 {
    let [_, u1, u2, u3] = c.u.d;
    let [_, v1, v2, v3] = c.v.d;
    let [uuu, uuv, uvv, vvv] = *third;
    uuu * (u1 * u1 * u1)
        + uuv * (3.0 * u1 * u1 * v1)
        + uvv * (3.0 * u1 * v1 * v1)
        + vvv * (v1 * v1 * v1)
        + j.duu * (3.0 * u1 * u2)
        + j.duv * (3.0 * (u2 * v1 + u1 * v2))
        + j.dvv * (3.0 * v1 * v2)
        + j.du * u3
        + j.dv * v3
}

/// Evaluates the curve and its derivatives at `s`, analytically when both the
/// curve and the patch carry analytic derivatives and by central differences
/// otherwise.
pub fn trace(
    curve: &SurfaceCurve,
    patch: &SurfacePatch,
    s: f64,
    policy: &TolerancePolicy,
) -> Result<CurvePoint, FrameError> {
    check_param(curve, s)?;
    let h = policy.h_fd;
    let dom = curve.s_domain();
    if let (Some(chart), true) = (curve.analytic_jet(s), patch.has_analytic()) {
        let (u, v) = chart.point();
        let surface = patch.local(u, v)?;
        let (d1, d2) = chain_second(&surface, &chart);
        let (d3, path) = match &surface.third {
            Some(third) => (chain_third(&surface, third, &chart), DerivPath::Analytic),
            None => {
                let second = |t: f64| {
                    let c = curve.analytic_jet(t).expect("analytic curve");
                    let (tu, tv) = c.point();
                    patch
                        .local(tu, tv)
                        .map(|j| chain_second(&j, &c).1)
                        .unwrap_or(Vec3::new(f64::NAN, f64::NAN, f64::NAN))
                };
                (diff(second, s, Order::First, h, dom)?, DerivPath::Numeric)
            }
        };
        return Ok(CurvePoint {
            s,
            chart,
            position: surface.point,
            surface,
            d1,
            d2,
            d3,
            path,
        });
    }

    // numeric route: stencils on the chart coordinates and on the embedding
    let chart = match curve.analytic_jet(s) {
        Some(c) => c,
        None => {
            let u_of = |t: f64| {
                let (u, v) = curve.coords(t);
                Vec3::new(u, v, 0.0)
            };
            let c0 = u_of(s);
            let c1 = diff(u_of, s, Order::First, h, dom)?;
            let c2 = diff(u_of, s, Order::Second, h, dom)?;
            let c3 = diff(u_of, s, Order::Third, h * THIRD_ORDER_STEP, dom)?;
            ChartJet::new(
                Jet::new([c0.x, c1.x, c2.x, c3.x]),
                Jet::new([c0.y, c1.y, c2.y, c3.y]),
            )
        }
    };
    let (u, v) = chart.point();
    let surface = patch.local(u, v)?;
    let gamma = |t: f64| {
        let (tu, tv) = curve.coords(t);
        patch
            .eval(tu, tv)
            .unwrap_or(Vec3::new(f64::NAN, f64::NAN, f64::NAN))
    };
    let d1 = diff(gamma, s, Order::First, h, dom)?;
    let d2 = diff(gamma, s, Order::Second, h, dom)?;
    let d3 = diff(gamma, s, Order::Third, h * THIRD_ORDER_STEP, dom)?;
    for d in [d1, d2, d3] {
        if !d.is_finite() {
            // a stencil point left the patch domain
            return Err(SurfaceError::OutOfDomain {
                patch: patch.name().to_string(),
                u,
                v,
            }
            .into());
        }
    }
    Ok(CurvePoint {
        s,
        chart,
        position: surface.point,
        surface,
        d1,
        d2,
        d3,
        path: DerivPath::Numeric,
    })
}

/// Whether [`trace`] takes the analytic route for this curve and patch.
pub fn is_analytic(curve: &SurfaceCurve, patch: &SurfacePatch) -> bool {
    curve.has_analytic() && patch.has_analytic()
}

/// `n` samples of the curve's parameter interval, clipped so that every
/// stencil used by [`trace`] stays inside it.
pub fn sample_grid(
    curve: &SurfaceCurve,
    patch: &SurfacePatch,
    n: usize,
    policy: &TolerancePolicy,
) -> Vec<f64> {
    let margin = if is_analytic(curve, patch) {
        0.0
    } else {
        2.0 * THIRD_ORDER_STEP * policy.h_fd * 1.01
    };
    curve.s_domain().shrink(margin).samples(n)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnitSpeedReport {
    pub max_deviation: f64,
    pub at: f64,
    pub tol: f64,
    pub pass: bool,
}

/// `max | |gamma'(s)| - 1 |` over `grid`.
pub fn unit_speed_check(
    curve: &SurfaceCurve,
    patch: &SurfacePatch,
    grid: &[f64],
    tol: f64,
    policy: &TolerancePolicy,
) -> Result<UnitSpeedReport, FrameError> {
    let mut report = UnitSpeedReport {
        max_deviation: 0.0,
        at: f64::NAN,
        tol,
        pass: false,
    };
    for &s in grid {
        let dev = (trace(curve, patch, s, policy)?.d1.norm() - 1.0).abs();
        if dev >= report.max_deviation || report.at.is_nan() {
            report.max_deviation = dev;
            report.at = s;
        }
    }
    report.pass = report.max_deviation <= tol;
    Ok(report)
}

fn require_unit_speed(p: &CurvePoint, policy: &TolerancePolicy) -> Result<(), FrameError> {
    let speed = p.d1.norm();
    if (speed - 1.0).abs() > policy.tol_fd {
        return Err(FrameError::NotUnitSpeed { s: p.s, speed });
    }
    Ok(())
}

/// Frenet apparatus `{T, N, B}`, curvature and torsion of a unit-speed curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrenetFrame {
    pub s: f64,
    pub t: Vec3,
    pub n: Vec3,
    pub b: Vec3,
    pub kappa: f64,
    pub tau: f64,
    pub path: DerivPath,
}

impl FrenetFrame {
    pub fn gram_deviation(&self) -> f64 {
        gram_deviation(&[self.t, self.n, self.b])
    }
}

/// `T = gamma'`, `N = gamma'' / kappa`, `B = T x N`, `kappa = |gamma''|` and
/// `tau = -B' . N`, the latter evaluated as `(gamma' x gamma'') . gamma''' / kappa^2`.
pub fn frenet_at(p: &CurvePoint, policy: &TolerancePolicy) -> Result<FrenetFrame, FrameError> {
    require_unit_speed(p, policy)?;
    let kappa = p.d2.norm();
    if !(kappa >= policy.kappa_min) {
        return Err(FrameError::CurvatureDegenerate { s: p.s, kappa });
    }
    let t = p.d1;
    let n = p.d2 / kappa;
    let b = t.cross(n);
    let tau = t.cross(p.d2).dot(p.d3) / (kappa * kappa);
    Ok(FrenetFrame {
        s: p.s,
        t,
        n,
        b,
        kappa,
        tau,
        path: p.path,
    })
}

pub fn frenet(
    curve: &SurfaceCurve,
    patch: &SurfacePatch,
    s: f64,
    policy: &TolerancePolicy,
) -> Result<FrenetFrame, FrameError> {
    frenet_at(&trace(curve, patch, s, policy)?, policy)
}

/// Darboux frame `{T, P, U}` with normal and geodesic curvature.
///
/// `theta` is the angle of the rotation taking `{N, B}` to `{P, U}`:
/// `P = cos(theta) N + sin(theta) B`, `U = -sin(theta) N + cos(theta) B`.
/// With `k_n = gamma'' . U` this gives `k_g = kappa cos(theta)` and
/// `k_n = -kappa sin(theta)`. It is `None` where the Frenet frame is undefined.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DarbouxFrame {
    pub s: f64,
    pub t: Vec3,
    pub p: Vec3,
    pub u: Vec3,
    pub k_n: f64,
    pub k_g: f64,
    pub kappa: f64,
    pub theta: Option<f64>,
    /// `|P - U x T|` entrywise, with `P` evaluated from the chart expression.
    pub p_cross_deviation: f64,
    pub path: DerivPath,
}

impl DarbouxFrame {
    pub fn gram_deviation(&self) -> f64 {
        gram_deviation(&[self.t, self.p, self.u])
    }

    /// `(sin theta, cos theta)` of the N-to-P rotation, or `None` when `kappa`
    /// is below `kappa_min`.
    pub fn rotation(&self) -> Option<(f64, f64)> {
        self.theta
            .map(|_| (-self.k_n / self.kappa, self.k_g / self.kappa))
    }
}

/// Chart expression of `P = U x T` for `T = u' phi_u + v' phi_v`.
pub fn chart_conormal(j: &SurfaceJet, du: f64, dv: f64) -> Vec3 {
    let ff = j.first_form();
    (j.dv * (ff.e * du) + (j.dv * dv - j.du * du) * ff.f - j.du * (ff.g * dv)) / ff.det().sqrt()
}

pub fn darboux_at(
    p: &CurvePoint,
    patch: &SurfacePatch,
    policy: &TolerancePolicy,
) -> Result<DarbouxFrame, FrameError> {
    require_unit_speed(p, policy)?;
    let j = &p.surface;
    let det = j.first_form().det();
    let (cu, cv) = p.chart.point();
    let u = unit_normal_of(j)
        .filter(|_| det >= policy.reg_min)
        .ok_or_else(|| SurfaceError::Degenerate {
            patch: patch.name().to_string(),
            u: cu,
            v: cv,
            det,
        })?;
    let (du, dv) = p.chart_velocity();
    let t = j.du * du + j.dv * dv;
    let pv = chart_conormal(j, du, dv);
    let k_n = p.d2.dot(u);
    let k_g = p.d2.dot(pv);
    let kappa = p.d2.norm();
    let theta = (kappa >= policy.kappa_min).then(|| (-k_n).atan2(k_g));
    Ok(DarbouxFrame {
        s: p.s,
        t,
        p: pv,
        u,
        k_n,
        k_g,
        kappa,
        theta,
        p_cross_deviation: pv.max_abs_diff(u.cross(t)),
        path: p.path,
    })
}

pub fn darboux(
    curve: &SurfaceCurve,
    patch: &SurfacePatch,
    s: f64,
    policy: &TolerancePolicy,
) -> Result<DarbouxFrame, FrameError> {
    darboux_at(&trace(curve, patch, s, policy)?, patch, policy)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Checked,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameRelationReport {
    pub status: CheckStatus,
    pub theta: Option<f64>,
    pub max_deviation: f64,
    pub reason: Option<String>,
}

/// Verifies `P = cos(theta) N + sin(theta) B` and
/// `U = -sin(theta) N + cos(theta) B`.
pub fn frame_relation_check(
    frenet: Option<&FrenetFrame>,
    darboux: &DarbouxFrame,
) -> FrameRelationReport {
    match (frenet, darboux.theta) {
        (Some(f), Some(theta)) => {
            let (s, c) = theta.sin_cos();
            let p = f.n * c + f.b * s;
            let u = f.b * c - f.n * s;
            let dev = p
                .max_abs_diff(darboux.p)
                .max(u.max_abs_diff(darboux.u))
                .max(f.t.max_abs_diff(darboux.t));
            FrameRelationReport {
                status: CheckStatus::Checked,
                theta: Some(theta),
                max_deviation: dev,
                reason: None,
            }
        }
        _ => FrameRelationReport {
            status: CheckStatus::Skipped,
            theta: None,
            max_deviation: 0.0,
            reason: Some("Frenet frame undefined (kappa below kappa_min)".into()),
        },
    }
}

/// Deviations of every frame identity at one curve point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameInvariants {
    pub s: f64,
    /// Gram deviation of `{T, N, B}`; `None` where the Frenet frame is undefined.
    pub frenet_gram: Option<f64>,
    pub darboux_gram: f64,
    /// `|k_n^2 + k_g^2 - kappa^2|`.
    pub curvature_split: f64,
    /// `|gamma'' - (k_n U + k_g P)|` entrywise.
    pub acceleration_split: f64,
    pub p_cross: f64,
    pub relation: FrameRelationReport,
    pub tol: f64,
    pub pass: bool,
}

pub fn frame_invariants(
    p: &CurvePoint,
    patch: &SurfacePatch,
    policy: &TolerancePolicy,
) -> Result<FrameInvariants, FrameError> {
    let darboux = darboux_at(p, patch, policy)?;
    let frenet = frenet_at(p, policy).ok();
    let relation = frame_relation_check(frenet.as_ref(), &darboux);
    let curvature_split = (darboux.k_n * darboux.k_n + darboux.k_g * darboux.k_g
        - darboux.kappa * darboux.kappa)
        .abs();
    let acceleration_split =
        p.d2.max_abs_diff(darboux.u * darboux.k_n + darboux.p * darboux.k_g);
    let frenet_gram = frenet.map(|f| f.gram_deviation());
    let tol = policy.identity_tol(p.path);
    let worst = [
        frenet_gram.unwrap_or(0.0),
        darboux.gram_deviation(),
        curvature_split,
        acceleration_split,
        darboux.p_cross_deviation,
        relation.max_deviation,
    ]
    .into_iter()
    .fold(0.0, f64::max);
    Ok(FrameInvariants {
        s: p.s,
        frenet_gram,
        darboux_gram: darboux.gram_deviation(),
        curvature_split,
        acceleration_split,
        p_cross: darboux.p_cross_deviation,
        relation,
        tol,
        pass: worst <= tol,
    })
}

#[cfg(test)]
mod tests;

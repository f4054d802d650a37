//! Parametric surface patches, the first fundamental form and the unit normal.

mod catalog;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numerics::{diff, DerivPath, Interval, Mat3, NumericsError, Order, Vec3};

pub use catalog::{
    catalog, catalog_names, cone_over, monge, plane, revolution_like, ruled, CurveJetFn,
    MongePolynomial, RevolutionProfile,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SurfaceError {
    #[error("point (u, v) = ({u}, {v}) is outside the domain of patch `{patch}`")]
    OutOfDomain { patch: String, u: f64, v: f64 },
    #[error("patch `{patch}` is irregular at (u, v) = ({u}, {v}): EG - F^2 = {det:e}")]
    Degenerate {
        patch: String,
        u: f64,
        v: f64,
        det: f64,
    },
    #[error("unknown catalog surface `{0}`")]
    UnknownSurface(String),
    #[error("invalid parameters for `{name}`: {reason}")]
    InvalidParams { name: String, reason: String },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Rectangular parameter domain `[u_min, u_max] x [v_min, v_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub u: Interval,
    pub v: Interval,
}

impl Domain {
    pub const fn new(u: Interval, v: Interval) -> Self {
        Self { u, v }
    }

    pub fn contains(&self, u: f64, v: f64) -> bool {
        self.u.contains(u) && self.v.contains(v)
    }

    pub fn intersect(&self, other: &Domain) -> Domain {
        Domain::new(
            Interval::new(self.u.lo.max(other.u.lo), self.u.hi.min(other.u.hi)),
            Interval::new(self.v.lo.max(other.v.lo), self.v.hi.min(other.v.hi)),
        )
    }

    /// Uniform tensor grid with `nu * nv` points, row-major in `u`.
    pub fn grid(&self, nu: usize, nv: usize) -> Vec<(f64, f64)> {
        let us = self.u.samples(nu);
        let vs = self.v.samples(nv);
        us.iter()
            .flat_map(|&u| vs.iter().map(move |&v| (u, v)))
            .collect()
    }
}

/// Default tensor-grid resolution for surface sweeps.
pub const DEFAULT_GRID: usize = 33;

/// The point of a patch and its partial derivatives up to third order.
///
/// Third partials are ordered `[uuu, uuv, uvv, vvv]` and are only present on
/// the analytic path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceJet {
    pub point: Vec3,
    pub du: Vec3,
    pub dv: Vec3,
    pub duu: Vec3,
    pub duv: Vec3,
    pub dvv: Vec3,
    pub third: Option<[Vec3; 4]>,
    pub path: DerivPath,
}

impl SurfaceJet {
    pub fn first_form(&self) -> FundamentalForm {
        FundamentalForm {
            e: self.du.dot(self.du),
            f: self.du.dot(self.dv),
            g: self.dv.dot(self.dv),
        }
    }

    fn map(&self, f: impl Fn(Vec3) -> Vec3) -> SurfaceJet {
        SurfaceJet {
            point: f(self.point),
            du: f(self.du),
            dv: f(self.dv),
            duu: f(self.duu),
            duv: f(self.duv),
            dvv: f(self.dvv),
            third: self.third.map(|t| t.map(&f)),
            path: self.path,
        }
    }
}

/// Coefficients of the first fundamental form at a chart point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FundamentalForm {
    pub e: f64,
    pub f: f64,
    pub g: f64,
}

impl FundamentalForm {
    /// `EG - F^2`, the squared area element.
    pub fn det(&self) -> f64 {
        self.e * self.g - self.f * self.f
    }

    pub fn is_positive_definite(&self) -> bool {
        self.e > 0.0 && self.g > 0.0 && self.det() > 0.0
    }

    /// Inner product of the chart vectors `(a1, b1)` and `(a2, b2)`.
    pub fn inner(&self, a1: f64, b1: f64, a2: f64, b2: f64) -> f64 {
        self.e * a1 * a2 + self.f * (a1 * b2 + a2 * b1) + self.g * b1 * b2
    }

    /// Largest coefficient difference between two forms.
    pub fn max_abs_diff(&self, other: &FundamentalForm) -> f64 {
        (self.e - other.e)
            .abs()
            .max((self.f - other.f).abs())
            .max((self.g - other.g).abs())
    }
}

pub type EvalFn = Arc<dyn Fn(f64, f64) -> Vec3 + Send + Sync>;
pub type JetFn = Arc<dyn Fn(f64, f64) -> SurfaceJet + Send + Sync>;

/// A chart `(u, v) -> phi(u, v)` on a rectangular domain, with optional
/// analytic partial derivatives. Patches are immutable and cheap to clone.
#[derive(Clone)]
pub struct SurfacePatch {
    name: String,
    domain: Domain,
    eval: EvalFn,
    analytic: Option<JetFn>,
    h_fd: f64,
}

impl fmt::Debug for SurfacePatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SurfacePatch")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("analytic", &self.analytic.is_some())
            .finish()
    }
}

impl SurfacePatch {
    /// Patch without analytic partials; derivatives come from central
    /// differences with step `1e-4`.
    pub fn numeric(name: impl Into<String>, domain: Domain, eval: EvalFn) -> Self {
        Self {
            name: name.into(),
            domain,
            eval,
            analytic: None,
            h_fd: 1e-4,
        }
    }

    /// Patch with analytic partials supplied by `jet`.
    pub fn analytic(name: impl Into<String>, domain: Domain, jet: JetFn) -> Self {
        let j = jet.clone();
        Self {
            name: name.into(),
            domain,
            eval: Arc::new(move |u, v| j(u, v).point),
            analytic: Some(jet),
            h_fd: 1e-4,
        }
    }

    pub fn with_fd_step(mut self, h: f64) -> Self {
        self.h_fd = h;
        self
    }

    pub fn with_domain(mut self, domain: Domain) -> Self {
        self.domain = domain;
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Drops the analytic partials, forcing the finite-difference route.
    pub fn without_analytic(mut self) -> Self {
        self.analytic = None;
        self
    }

    /// The patch composed with a linear map of 3-space (typically a rotation
    /// about the origin).
    pub fn transformed(&self, m: Mat3, name: impl Into<String>) -> SurfacePatch {
        let eval = self.eval.clone();
        let analytic = self
            .analytic
            .clone()
            .map(|j| -> JetFn { Arc::new(move |u, v| j(u, v).map(|x| m.apply(x))) });
        SurfacePatch {
            name: name.into(),
            domain: self.domain,
            eval: Arc::new(move |u, v| m.apply(eval(u, v))),
            analytic,
            h_fd: self.h_fd,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn has_analytic(&self) -> bool {
        self.analytic.is_some()
    }

    pub fn fd_step(&self) -> f64 {
        self.h_fd
    }

    fn check_domain(&self, u: f64, v: f64) -> Result<(), SurfaceError> {
        if self.domain.contains(u, v) {
            Ok(())
        } else {
            Err(SurfaceError::OutOfDomain {
                patch: self.name.clone(),
                u,
                v,
            })
        }
    }

    pub fn eval(&self, u: f64, v: f64) -> Result<Vec3, SurfaceError> {
        self.check_domain(u, v)?;
        Ok((self.eval)(u, v))
    }

    /// Point and partials at `(u, v)`, analytic when available and otherwise
    /// from central differences (second order at most).
    pub fn local(&self, u: f64, v: f64) -> Result<SurfaceJet, SurfaceError> {
        self.check_domain(u, v)?;
        if let Some(jet) = &self.analytic {
            return Ok(jet(u, v));
        }
        let h = self.h_fd;
        let (du_dom, dv_dom) = (self.domain.u, self.domain.v);
        let f = &self.eval;
        let along_u = |v0: f64, order| diff(|t| f(t, v0), u, order, h, du_dom);
        let du = along_u(v, Order::First)?;
        let duu = along_u(v, Order::Second)?;
        let dv = diff(|t| f(u, t), v, Order::First, h, dv_dom)?;
        let dvv = diff(|t| f(u, t), v, Order::Second, h, dv_dom)?;
        // mixed partial as the v-derivative of the u-stencil; the inner stencil
        // is already checked against the u-interval above
        let duv = diff(
            |t| {
                diff(|w| f(w, t), u, Order::First, h, du_dom).unwrap_or(Vec3::new(
                    f64::NAN,
                    f64::NAN,
                    f64::NAN,
                ))
            },
            v,
            Order::First,
            h,
            dv_dom,
        )?;
        Ok(SurfaceJet {
            point: f(u, v),
            du,
            dv,
            duu,
            duv,
            dvv,
            third: None,
            path: DerivPath::Numeric,
        })
    }

    /// `(phi_u, phi_v)` at `(u, v)`.
    pub fn partials(&self, u: f64, v: f64) -> Result<(Vec3, Vec3), SurfaceError> {
        let j = self.local(u, v)?;
        Ok((j.du, j.dv))
    }

    /// `E = phi_u . phi_u`, `F = phi_u . phi_v`, `G = phi_v . phi_v`.
    pub fn first_form(&self, u: f64, v: f64) -> Result<FundamentalForm, SurfaceError> {
        Ok(self.local(u, v)?.first_form())
    }

    /// `U = (phi_u x phi_v) / sqrt(EG - F^2)`, never reoriented.
    pub fn unit_normal(&self, u: f64, v: f64, reg_min: f64) -> Result<Vec3, SurfaceError> {
        let j = self.local(u, v)?;
        unit_normal_of(&j)
            .filter(|_| j.first_form().det() >= reg_min)
            .ok_or_else(|| SurfaceError::Degenerate {
                patch: self.name.clone(),
                u,
                v,
                det: j.first_form().det(),
            })
    }

    /// Minimum of `EG - F^2` over `grid`.
    pub fn regularity_report(
        &self,
        grid: &[(f64, f64)],
        reg_min: f64,
    ) -> Result<RegularityReport, SurfaceError> {
        let mut report = RegularityReport {
            patch: self.name.clone(),
            min_det: f64::INFINITY,
            at: (f64::NAN, f64::NAN),
            samples: grid.len(),
            reg_min,
            pass: false,
        };
        for &(u, v) in grid {
            let det = self.first_form(u, v)?.det();
            if det < report.min_det || det.is_nan() {
                report.min_det = det;
                report.at = (u, v);
            }
        }
        report.pass = report.min_det >= reg_min;
        Ok(report)
    }
}

/// Normalized `phi_u x phi_v` of a jet, or `None` where the cross product vanishes.
pub fn unit_normal_of(j: &SurfaceJet) -> Option<Vec3> {
    let n = j.du.cross(j.dv);
    let det = j.first_form().det();
    (det > 0.0).then(|| n / det.sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegularityReport {
    pub patch: String,
    pub min_det: f64,
    pub at: (f64, f64),
    pub samples: usize,
    pub reg_min: f64,
    pub pass: bool,
}

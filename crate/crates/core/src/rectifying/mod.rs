//! Rectifying curves: position-vector decomposition, classification by
//! normal and geodesic curvature, and the chart-component identities.
//!
//! A curve is rectifying when its position vector lies in the rectifying
//! plane spanned by `T` and `B`, i.e. `gamma . N = 0`.

mod fixture;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frames::{
    chart_conormal, darboux_at, frenet_at, trace, CurvePoint, DarbouxFrame, FrameError,
    FrenetFrame, SurfaceCurve,
};
use crate::numerics::{DerivPath, TolerancePolicy, Vec3};
use crate::surfaces::{SurfaceError, SurfacePatch};

pub use fixture::{
    cone_geodesic, cone_line_space_curve, fixture_rectifying, ruled_through_cone_line,
    small_circle, small_circle_tangent, ConeLine, DilatedSphericalParams, Dilation,
    SphericalProfile,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RectError {
    #[error("curve is not rectifying at s = {s}: gamma . N = {residual:e} exceeds {tol:e}")]
    NotRectifying { s: f64, residual: f64, tol: f64 },
    #[error("class `{class}` is inconsistent with the curve at s = {s}: {reason}")]
    ClassMismatch {
        s: f64,
        class: ClassTag,
        reason: String,
    },
    #[error("tangent coefficients (a, b) must not both vanish")]
    ZeroTangent,
    #[error("invalid fixture: {0}")]
    Fixture(String),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// Components of `gamma(s)` in the Frenet frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RectifyingDecomposition {
    pub s: f64,
    /// `gamma . T`
    pub lambda: f64,
    /// `gamma . B`
    pub mu: f64,
    /// `gamma . N`; zero exactly when the curve is rectifying at `s`.
    pub residual: f64,
    /// `|lambda T + residual N + mu B - gamma|`, entrywise.
    pub expansion_error: f64,
    /// Largest deviation of `gamma . P` and `gamma . U` from their expressions
    /// through `mu`, `residual` and the rotation angle.
    pub split_deviation: f64,
}

impl RectifyingDecomposition {
    pub fn is_rectifying(&self, tol_rect: f64) -> bool {
        self.residual.abs() <= tol_rect
    }
}

/// Everything about one curve sample that the closed forms need.
#[derive(Debug, Clone, Copy)]
pub struct Sample {
    pub point: CurvePoint,
    pub frenet: FrenetFrame,
    pub darboux: DarbouxFrame,
    pub decomposition: RectifyingDecomposition,
}

impl Sample {
    pub fn s(&self) -> f64 {
        self.point.s
    }

    pub fn position(&self) -> Vec3 {
        self.point.position
    }

    pub fn path(&self) -> DerivPath {
        self.point.path
    }

    pub fn lambda(&self) -> f64 {
        self.decomposition.lambda
    }

    pub fn mu(&self) -> f64 {
        self.decomposition.mu
    }

    pub fn kappa(&self) -> f64 {
        self.frenet.kappa
    }

    /// `sin(theta) = -k_n / kappa`.
    pub fn sin_theta(&self) -> f64 {
        -self.darboux.k_n / self.frenet.kappa
    }

    /// `cos(theta) = k_g / kappa`.
    pub fn cos_theta(&self) -> f64 {
        self.darboux.k_g / self.frenet.kappa
    }

    pub fn sqrt_det(&self) -> f64 {
        self.point.surface.first_form().det().sqrt()
    }

    pub fn require_rectifying(&self, tol_rect: f64) -> Result<(), RectError> {
        let residual = self.decomposition.residual;
        if residual.abs() <= tol_rect {
            Ok(())
        } else {
            Err(RectError::NotRectifying {
                s: self.s(),
                residual,
                tol: tol_rect,
            })
        }
    }

    /// Scale of the chart partials, used to turn a residual into a bound on
    /// the error of the closed forms.
    fn chart_scale(&self) -> f64 {
        let j = &self.point.surface;
        j.du.norm().max(j.dv.norm()).max(1.0)
    }

    /// Tolerance for a closed form that assumes `gamma . N = 0`, scaled by
    /// `weight`: the numeric floor of `path` plus the contribution of the
    /// actual residual.
    fn closed_form_tol(&self, policy: &TolerancePolicy, weight: f64) -> f64 {
        let w = weight.max(1.0);
        (policy.identity_tol(self.path()) + self.decomposition.residual.abs()) * w
    }
}

/// Frames and decomposition at `s`.
pub fn sample(
    curve: &SurfaceCurve,
    patch: &SurfacePatch,
    s: f64,
    policy: &TolerancePolicy,
) -> Result<Sample, RectError> {
    let point = trace(curve, patch, s, policy)?;
    sample_at(point, patch, policy)
}

pub fn sample_at(
    point: CurvePoint,
    patch: &SurfacePatch,
    policy: &TolerancePolicy,
) -> Result<Sample, RectError> {
    let frenet = frenet_at(&point, policy)?;
    let darboux = darboux_at(&point, patch, policy)?;
    let g = point.position;
    let lambda = g.dot(frenet.t);
    let mu = g.dot(frenet.b);
    let residual = g.dot(frenet.n);
    let expansion_error = (frenet.t * lambda + frenet.n * residual + frenet.b * mu).max_abs_diff(g);
    let (sin, cos) = (-darboux.k_n / frenet.kappa, darboux.k_g / frenet.kappa);
    let split_deviation = (g.dot(darboux.p) - (mu * sin + residual * cos))
        .abs()
        .max((g.dot(darboux.u) - (mu * cos - residual * sin)).abs());
    Ok(Sample {
        point,
        frenet,
        darboux,
        decomposition: RectifyingDecomposition {
            s: point.s,
            lambda,
            mu,
            residual,
            expansion_error,
            split_deviation,
        },
    })
}

/// `lambda = gamma . T`, `mu = gamma . B`, `residual = gamma . N`.
pub fn decompose(
    curve: &SurfaceCurve,
    patch: &SurfacePatch,
    s: f64,
    policy: &TolerancePolicy,
) -> Result<RectifyingDecomposition, RectError> {
    Ok(sample(curve, patch, s, policy)?.decomposition)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassTag {
    Geodesic,
    Asymptotic,
    Generic,
    Degenerate,
}

impl std::fmt::Display for ClassTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ClassTag::Geodesic => "geodesic",
            ClassTag::Asymptotic => "asymptotic",
            ClassTag::Generic => "generic",
            ClassTag::Degenerate => "degenerate",
        })
    }
}

/// Classification of a curve over a sample grid.
///
/// A curve whose curvature drops below `kappa_min` anywhere is tagged
/// degenerate, but the curvature maxima are still recorded so callers can ask
/// whether it is geodesic or asymptotic in the weaker sense `k_g = 0` or
/// `k_n = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveClass {
    pub tag: ClassTag,
    pub max_abs_kg: f64,
    pub max_abs_kn: f64,
    pub min_kappa: f64,
    pub tol_class: f64,
    pub samples: usize,
}

impl CurveClass {
    /// `max |k_g| <= tol_class`.
    pub fn geodesic_evidence(&self) -> bool {
        self.max_abs_kg <= self.tol_class
    }

    /// `max |k_n| <= tol_class`.
    pub fn asymptotic_evidence(&self) -> bool {
        self.max_abs_kn <= self.tol_class
    }
}

pub fn classify(
    curve: &SurfaceCurve,
    patch: &SurfacePatch,
    grid: &[f64],
    policy: &TolerancePolicy,
) -> Result<CurveClass, RectError> {
    let mut class = CurveClass {
        tag: ClassTag::Generic,
        max_abs_kg: 0.0,
        max_abs_kn: 0.0,
        min_kappa: f64::INFINITY,
        tol_class: policy.tol_class,
        samples: grid.len(),
    };
    for &s in grid {
        let p = trace(curve, patch, s, policy)?;
        let d = darboux_at(&p, patch, policy)?;
        class.max_abs_kg = class.max_abs_kg.max(d.k_g.abs());
        class.max_abs_kn = class.max_abs_kn.max(d.k_n.abs());
        class.min_kappa = class.min_kappa.min(d.kappa);
    }
    class.tag = if !(class.min_kappa >= policy.kappa_min) {
        ClassTag::Degenerate
    } else if class.geodesic_evidence() {
        ClassTag::Geodesic
    } else if class.asymptotic_evidence() {
        ClassTag::Asymptotic
    } else {
        ClassTag::Generic
    };
    Ok(class)
}

fn check_class(
    sample: &Sample,
    class: ClassTag,
    policy: &TolerancePolicy,
) -> Result<(), RectError> {
    let mismatch = |reason: String| RectError::ClassMismatch {
        s: sample.s(),
        class,
        reason,
    };
    let d = &sample.darboux;
    match class {
        ClassTag::Geodesic if d.k_g.abs() > policy.tol_class => {
            Err(mismatch(format!("|k_g| = {:e}", d.k_g.abs())))
        }
        ClassTag::Asymptotic if d.k_n.abs() > policy.tol_class => {
            Err(mismatch(format!("|k_n| = {:e}", d.k_n.abs())))
        }
        ClassTag::Degenerate => Err(mismatch("degenerate curves have no Frenet frame".into())),
        _ => Ok(()),
    }
}

/// Position rebuilt from `lambda`, `mu`, the rotation angle and chart data:
/// `lambda (u' phi_u + v' phi_v) + mu sin(theta) P + mu cos(theta) U`, with `P`
/// in its chart form. Geodesic samples drop the `U` term and use
/// `sin(theta) = +-1`; asymptotic samples drop the `P` term and use
/// `cos(theta) = +-1`.
pub fn reconstruct_at(
    sample: &Sample,
    class: ClassTag,
    policy: &TolerancePolicy,
) -> Result<Vec3, RectError> {
    sample.require_rectifying(policy.tol_rect)?;
    check_class(sample, class, policy)?;
    let j = &sample.point.surface;
    let (du, dv) = sample.point.chart_velocity();
    let tangent = (j.du * du + j.dv * dv) * sample.lambda();
    let p = chart_conormal(j, du, dv);
    let u = sample.darboux.u;
    let mu = sample.mu();
    Ok(match class {
        ClassTag::Geodesic => tangent + p * (mu * (-sample.darboux.k_n).signum()),
        ClassTag::Asymptotic => tangent + u * (mu * sample.darboux.k_g.signum()),
        _ => tangent + p * (mu * sample.sin_theta()) + u * (mu * sample.cos_theta()),
    })
}

pub fn reconstruct(
    curve: &SurfaceCurve,
    patch: &SurfacePatch,
    s: f64,
    class: ClassTag,
    policy: &TolerancePolicy,
) -> Result<Vec3, RectError> {
    reconstruct_at(&sample(curve, patch, s, policy)?, class, policy)
}

/// A quantity computed directly by dot products next to its closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub s: f64,
    pub direct: f64,
    pub closed_form: f64,
    pub deviation: f64,
    pub tol: f64,
    pub pass: bool,
}

impl IdentityCheck {
    fn new(s: f64, direct: f64, closed_form: f64, tol: f64) -> Self {
        let deviation = (direct - closed_form).abs();
        Self {
            s,
            direct,
            closed_form,
            deviation,
            tol,
            pass: deviation <= tol,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChartComponents {
    /// `gamma . phi_u`
    pub along_u: IdentityCheck,
    /// `gamma . phi_v`
    pub along_v: IdentityCheck,
}

impl ChartComponents {
    pub fn direct(&self) -> (f64, f64) {
        (self.along_u.direct, self.along_v.direct)
    }

    pub fn pass(&self) -> bool {
        self.along_u.pass && self.along_v.pass
    }
}

/// Closed forms of `(gamma . phi_u, gamma . phi_v)` for a rectifying curve:
///
/// `gamma . phi_u = lambda (u' E + v' F) + mu sin(theta) (F^2 - G E) v' / sqrt(EG - F^2)`
/// `gamma . phi_v = lambda (u' F + v' G) - mu sin(theta) (F^2 - G E) u' / sqrt(EG - F^2)`
pub fn chart_closed_forms(sample: &Sample) -> (f64, f64) {
    let ff = sample.point.surface.first_form();
    let (du, dv) = sample.point.chart_velocity();
    let l = sample.lambda();
    let k = sample.mu() * sample.sin_theta() / sample.sqrt_det() * (ff.f * ff.f - ff.g * ff.e);
    (
        l * (du * ff.e + dv * ff.f) + k * dv,
        l * (du * ff.f + dv * ff.g) - k * du,
    )
}

pub fn component_chart_at(
    sample: &Sample,
    policy: &TolerancePolicy,
) -> Result<ChartComponents, RectError> {
    sample.require_rectifying(policy.tol_rect)?;
    let j = &sample.point.surface;
    let g = sample.position();
    let (cu, cv) = chart_closed_forms(sample);
    let tol = sample.closed_form_tol(policy, sample.chart_scale());
    Ok(ChartComponents {
        along_u: IdentityCheck::new(sample.s(), g.dot(j.du), cu, tol),
        along_v: IdentityCheck::new(sample.s(), g.dot(j.dv), cv, tol),
    })
}

pub fn component_chart(
    curve: &SurfaceCurve,
    patch: &SurfacePatch,
    s: f64,
    policy: &TolerancePolicy,
) -> Result<ChartComponents, RectError> {
    component_chart_at(&sample(curve, patch, s, policy)?, policy)
}

fn require_tangent(a: f64, b: f64) -> Result<(), RectError> {
    if a == 0.0 && b == 0.0 {
        Err(RectError::ZeroTangent)
    } else {
        Ok(())
    }
}

/// `gamma . (a phi_u + b phi_v)`, directly and as `a (gamma . phi_u) + b (gamma . phi_v)`
/// with the closed chart components.
pub fn component_tangent_at(
    sample: &Sample,
    a: f64,
    b: f64,
    policy: &TolerancePolicy,
) -> Result<IdentityCheck, RectError> {
    require_tangent(a, b)?;
    let chart = component_chart_at(sample, policy)?;
    let j = &sample.point.surface;
    let direct = sample.position().dot(j.du * a + j.dv * b);
    let closed = a * chart.along_u.closed_form + b * chart.along_v.closed_form;
    let weight = (a.abs() + b.abs()) * sample.chart_scale();
    Ok(IdentityCheck::new(
        sample.s(),
        direct,
        closed,
        sample.closed_form_tol(policy, weight),
    ))
}

pub fn component_tangent(
    curve: &SurfaceCurve,
    patch: &SurfacePatch,
    a: f64,
    b: f64,
    s: f64,
    policy: &TolerancePolicy,
) -> Result<IdentityCheck, RectError> {
    component_tangent_at(&sample(curve, patch, s, policy)?, a, b, policy)
}

/// `gamma . P` for the conormal built from the tangent `a phi_u + b phi_v`:
/// `((aE + bF) gamma . phi_v - (aF + bG) gamma . phi_u) / sqrt(EG - F^2)`,
/// checked against `gamma . (U x (a phi_u + b phi_v))`. No normalization of
/// the tangent is applied to either side.
pub fn component_p_at(
    sample: &Sample,
    a: f64,
    b: f64,
    policy: &TolerancePolicy,
) -> Result<IdentityCheck, RectError> {
    require_tangent(a, b)?;
    let j = &sample.point.surface;
    let ff = j.first_form();
    let g = sample.position();
    let closed = ((a * ff.e + b * ff.f) * g.dot(j.dv) - (a * ff.f + b * ff.g) * g.dot(j.du))
        / ff.det().sqrt();
    let direct = g.dot(sample.darboux.u.cross(j.du * a + j.dv * b));
    let weight = (a.abs() + b.abs()) * sample.chart_scale() * g.norm().max(1.0);
    Ok(IdentityCheck::new(
        sample.s(),
        direct,
        closed,
        policy.identity_tol(sample.path()) * weight,
    ))
}

pub fn component_p(
    curve: &SurfaceCurve,
    patch: &SurfacePatch,
    a: f64,
    b: f64,
    s: f64,
    policy: &TolerancePolicy,
) -> Result<IdentityCheck, RectError> {
    component_p_at(&sample(curve, patch, s, policy)?, a, b, policy)
}

/// `gamma . U`, checked against `mu k_g / kappa`.
pub fn component_normal_at(
    sample: &Sample,
    policy: &TolerancePolicy,
) -> Result<IdentityCheck, RectError> {
    sample.require_rectifying(policy.tol_rect)?;
    let direct = sample.position().dot(sample.darboux.u);
    let closed = sample.mu() * sample.darboux.k_g / sample.kappa();
    Ok(IdentityCheck::new(
        sample.s(),
        direct,
        closed,
        sample.closed_form_tol(policy, 1.0),
    ))
}

pub fn component_normal(
    curve: &SurfaceCurve,
    patch: &SurfacePatch,
    s: f64,
    policy: &TolerancePolicy,
) -> Result<IdentityCheck, RectError> {
    component_normal_at(&sample(curve, patch, s, policy)?, policy)
}

/// Largest `|gamma . N|` over `grid`.
pub fn max_residual(
    curve: &SurfaceCurve,
    patch: &SurfacePatch,
    grid: &[f64],
    policy: &TolerancePolicy,
) -> Result<f64, RectError> {
    grid.iter().try_fold(0.0f64, |m, &s| {
        Ok(m.max(decompose(curve, patch, s, policy)?.residual.abs()))
    })
}

#[cfg(test)]
mod tests;

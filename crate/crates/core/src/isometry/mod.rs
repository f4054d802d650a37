//! Isometries represented as surface pairs on a shared chart: the map sends
//! `phi(u, v)` to `phi_bar(u, v)`, so chart coordinates and chart
//! coefficients of tangent vectors carry over unchanged.

use std::f64::consts::PI;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::frames::{
    darboux_at, trace, unit_speed_check, FrameError, SurfaceCurve, UnitSpeedReport,
};
use crate::numerics::{Interval, Jet, TolerancePolicy, Vec3, VecJet};
use crate::rectifying::{classify, CurveClass, RectError};
use crate::surfaces::{
    catalog, cone_over, plane, Domain, SurfaceError, SurfacePatch, DEFAULT_GRID,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IsoError {
    #[error("pair `{pair}` is not an isometry: metric deviation {deviation:e} at ({u}, {v}) exceeds {tol:e}")]
    NotIsometric {
        pair: String,
        deviation: f64,
        u: f64,
        v: f64,
        tol: f64,
    },
    #[error("curve `{curve}` leaves the shared domain of `{pair}` at ({u}, {v})")]
    OutOfDomain {
        pair: String,
        curve: String,
        u: f64,
        v: f64,
    },
    #[error("transfer of `{curve}` lost unit speed: max deviation {deviation:e}")]
    SpeedNotPreserved { curve: String, deviation: f64 },
    #[error("unknown isometry pair `{0}`")]
    UnknownPair(String),
    #[error("invalid parameters for pair `{name}`: {reason}")]
    InvalidParams { name: String, reason: String },
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Rect(#[from] RectError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// Source and target patches sharing a chart.
#[derive(Debug, Clone)]
pub struct IsometryPair {
    name: String,
    source: SurfacePatch,
    target: SurfacePatch,
    domain: Domain,
}

impl IsometryPair {
    /// Pair on the intersection of both patch domains.
    pub fn new(name: impl Into<String>, source: SurfacePatch, target: SurfacePatch) -> Self {
        let domain = source.domain().intersect(&target.domain());
        Self {
            name: name.into(),
            source,
            target,
            domain,
        }
    }

    pub fn with_domain(mut self, domain: Domain) -> Self {
        self.domain = domain;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &SurfacePatch {
        &self.source
    }

    pub fn target(&self) -> &SurfacePatch {
        &self.target
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// The same pair with the roles of source and target exchanged.
    pub fn reversed(&self) -> Self {
        Self {
            name: format!("{} (reversed)", self.name),
            source: self.target.clone(),
            target: self.source.clone(),
            domain: self.domain,
        }
    }

    pub fn without_analytic(&self) -> Self {
        Self {
            name: self.name.clone(),
            source: self.source.clone().without_analytic(),
            target: self.target.clone().without_analytic(),
            domain: self.domain,
        }
    }

    /// Default metric sweep of the shared domain.
    pub fn default_grid(&self) -> Vec<(f64, f64)> {
        self.domain.grid(DEFAULT_GRID, DEFAULT_GRID)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricReport {
    pub pair: String,
    pub max_deviation: f64,
    pub at: (f64, f64),
    /// Which coefficient attains the maximum: `E`, `F` or `G`.
    pub component: char,
    pub samples: usize,
    pub tol: f64,
    pub pass: bool,
}

/// `max |E - E_bar|, |F - F_bar|, |G - G_bar|` over `grid`.
pub fn metric_deviation(
    pair: &IsometryPair,
    grid: &[(f64, f64)],
    tol: f64,
) -> Result<MetricReport, IsoError> {
    let mut report = MetricReport {
        pair: pair.name.clone(),
        max_deviation: 0.0,
        at: (f64::NAN, f64::NAN),
        component: 'E',
        samples: grid.len(),
        tol,
        pass: false,
    };
    for &(u, v) in grid {
        let a = pair.source.first_form(u, v)?;
        let b = pair.target.first_form(u, v)?;
        for (c, d) in [
            ('E', (a.e - b.e).abs()),
            ('F', (a.f - b.f).abs()),
            ('G', (a.g - b.g).abs()),
        ] {
            if d > report.max_deviation || report.at.0.is_nan() || d.is_nan() {
                report.max_deviation = d;
                report.at = (u, v);
                report.component = c;
            }
        }
    }
    report.pass = report.max_deviation <= tol;
    Ok(report)
}

fn require_isometric(
    pair: &IsometryPair,
    grid: &[(f64, f64)],
    tol: f64,
) -> Result<MetricReport, IsoError> {
    let r = metric_deviation(pair, grid, tol)?;
    if r.pass {
        Ok(r)
    } else {
        Err(IsoError::NotIsometric {
            pair: pair.name.clone(),
            deviation: r.max_deviation,
            u: r.at.0,
            v: r.at.1,
            tol,
        })
    }
}

/// A tangent vector `a phi_u + b phi_v` at `(u, v)` and its image
/// `a phi_bar_u + b phi_bar_v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PushforwardVector {
    pub a: f64,
    pub b: f64,
    pub base: (f64, f64),
    pub source: Vec3,
    pub target: Vec3,
}

impl PushforwardVector {
    /// `| |w|^2 - |f_* w|^2 |`
    pub fn length_deviation(&self) -> f64 {
        (self.source.norm_squared() - self.target.norm_squared()).abs()
    }
}

pub fn pushforward(
    pair: &IsometryPair,
    a: f64,
    b: f64,
    u: f64,
    v: f64,
) -> Result<PushforwardVector, IsoError> {
    if !pair.domain.contains(u, v) {
        return Err(SurfaceError::OutOfDomain {
            patch: pair.name.clone(),
            u,
            v,
        }
        .into());
    }
    let (su, sv) = pair.source.partials(u, v)?;
    let (tu, tv) = pair.target.partials(u, v)?;
    Ok(PushforwardVector {
        a,
        b,
        base: (u, v),
        source: su * a + sv * b,
        target: tu * a + tv * b,
    })
}

/// `|<w1, w2> - <f_* w1, f_* w2>|` for two pushed-forward vectors at the same base.
pub fn inner_product_deviation(w1: &PushforwardVector, w2: &PushforwardVector) -> f64 {
    (w1.source.dot(w2.source) - w1.target.dot(w2.target)).abs()
}

const TRANSFER_SAMPLES: usize = 65;

fn check_in_domain(pair: &IsometryPair, curve: &SurfaceCurve) -> Result<(), IsoError> {
    for s in curve.s_domain().samples(TRANSFER_SAMPLES) {
        let (u, v) = curve.coords(s);
        if !pair.domain.contains(u, v) {
            return Err(IsoError::OutOfDomain {
                pair: pair.name.clone(),
                curve: curve.name().to_string(),
                u,
                v,
            });
        }
    }
    Ok(())
}

/// Speed reports of a curve on the source and of its transfer on the target.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransferReport {
    pub source: UnitSpeedReport,
    pub target: UnitSpeedReport,
}

/// `f o gamma`: the same chart coordinates read on the target patch. When the
/// curve is unit speed on the source, the image must be unit speed too.
pub fn transfer_curve(
    pair: &IsometryPair,
    curve: &SurfaceCurve,
    policy: &TolerancePolicy,
) -> Result<(SurfaceCurve, TransferReport), IsoError> {
    check_in_domain(pair, curve)?;
    let image = curve.clone().renamed(format!("f({})", curve.name()));
    let grid = grid_for(curve, pair, policy);
    let report = TransferReport {
        source: unit_speed_check(curve, &pair.source, &grid, policy.tol_fd, policy)?,
        target: unit_speed_check(&image, &pair.target, &grid, policy.tol_fd, policy)?,
    };
    if report.source.pass && !report.target.pass {
        return Err(IsoError::SpeedNotPreserved {
            curve: curve.name().to_string(),
            deviation: report.target.max_deviation,
        });
    }
    Ok((image, report))
}

/// Sample grid valid on both patches of the pair.
pub fn grid_for(curve: &SurfaceCurve, pair: &IsometryPair, policy: &TolerancePolicy) -> Vec<f64> {
    grid_for_n(curve, pair, TRANSFER_SAMPLES, policy)
}

/// [`grid_for`] with `n` samples.
pub fn grid_for_n(
    curve: &SurfaceCurve,
    pair: &IsometryPair,
    n: usize,
    policy: &TolerancePolicy,
) -> Vec<f64> {
    let a = crate::frames::sample_grid(curve, &pair.source, n, policy);
    let b = crate::frames::sample_grid(curve, &pair.target, n, policy);
    if a.first() >= b.first() {
        a
    } else {
        b
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeodesicReport {
    pub pair: String,
    pub curve: String,
    pub source_class: CurveClass,
    pub target_class: CurveClass,
    /// Largest `|k_g - k_g_bar|` over the grid.
    pub max_kg_difference: f64,
    pub kg_tol: f64,
    pub kg_invariant: bool,
    /// Source and target agree on `max |k_g| <= tol_class`.
    pub pass: bool,
}

/// Compares geodesic curvature of a curve and its transfer. Refuses pairs
/// whose metrics differ along the curve or on the shared domain.
pub fn geodesic_preservation_check(
    pair: &IsometryPair,
    curve: &SurfaceCurve,
    grid: &[f64],
    policy: &TolerancePolicy,
) -> Result<GeodesicReport, IsoError> {
    let chart_points: Vec<(f64, f64)> = grid.iter().map(|&s| curve.coords(s)).collect();
    check_in_domain(pair, curve)?;
    require_isometric(pair, &chart_points, policy.tol_iso)?;
    require_isometric(pair, &pair.domain.grid(17, 17), policy.tol_iso)?;
    let (image, _) = transfer_curve(pair, curve, policy)?;
    let source_class = classify(curve, &pair.source, grid, policy)?;
    let target_class = classify(&image, &pair.target, grid, policy)?;
    let mut max_diff = 0.0f64;
    let mut kg_tol = 0.0f64;
    for &s in grid {
        let p = trace(curve, &pair.source, s, policy)?;
        let q = trace(&image, &pair.target, s, policy)?;
        let a = darboux_at(&p, &pair.source, policy)?;
        let b = darboux_at(&q, &pair.target, policy)?;
        max_diff = max_diff.max((a.k_g - b.k_g).abs());
        kg_tol = kg_tol.max(policy.identity_tol(p.path.join(q.path)) * (1.0 + a.k_g.abs()));
    }
    Ok(GeodesicReport {
        pair: pair.name.clone(),
        curve: curve.name().to_string(),
        pass: source_class.geodesic_evidence() == target_class.geodesic_evidence(),
        source_class,
        target_class,
        max_kg_difference: max_diff,
        kg_tol,
        kg_invariant: max_diff <= kg_tol,
    })
}

const PAIRS: &[(&str, &str)] = &[
    ("plane-cylinder", "(r u, v, 0) and (r cos u, r sin u, v); params [] or [r]"),
    ("helicoid-catenoid", "a (sinh v cos u, sinh v sin u, u) and a (cosh v cos u, cosh v sin u, v); params [] or [a]"),
    ("plane-cone", "polar plane (c v cos(u/c), c v sin(u/c), 0), c = sqrt(1 + k^2), and cone (v cos u, v sin u, k v), apex excluded; params [] or [k]"),
    ("plane-sphere", "(u, v, 0) and (cos u cos v, sin u cos v, sin v); not an isometry"),
];

pub fn pair_names() -> &'static [(&'static str, &'static str)] {
    PAIRS
}

fn invalid(name: &str, reason: impl Into<String>) -> IsoError {
    IsoError::InvalidParams {
        name: name.to_string(),
        reason: reason.into(),
    }
}

fn positive_param(name: &str, params: &[f64], default: f64) -> Result<f64, IsoError> {
    match params {
        [] => Ok(default),
        [x] if *x > 0.0 && x.is_finite() => Ok(*x),
        _ => Err(invalid(name, "expected at most one positive parameter")),
    }
}

/// Planar polar chart `(c v cos(u/c), c v sin(u/c), 0)`, the development of a
/// cone whose rulings have length element `c dv`.
pub fn polar_plane(c: f64, domain: Domain) -> SurfacePatch {
    let y = Arc::new(move |u: f64| {
        let phase = Jet::variable(u) * (1.0 / c);
        VecJet::from_components(phase.cos() * c, phase.sin() * c, Jet::constant(0.0))
    });
    cone_over(format!("polar plane(c={c})"), y, domain)
}

/// `n` short chart lines through the centre of the shared domain in evenly
/// spread directions, each reparametrized by arc length on the source.
pub fn probe_curves(
    pair: &IsometryPair,
    n: usize,
    policy: &TolerancePolicy,
) -> Result<Vec<SurfaceCurve>, IsoError> {
    let d = pair.domain();
    let (u0, v0) = (d.u.mid(), d.v.mid());
    let half = 0.15 * d.u.len().min(d.v.len());
    (0..n)
        .map(|k| {
            let psi = PI * (k as f64 + 0.25) / n as f64;
            let raw = crate::frames::line(u0, v0, psi.cos(), psi.sin(), Interval::new(-half, half));
            let curve = crate::frames::arc_length_reparam(&raw, &pair.source, policy)?;
            Ok(curve.renamed(format!("probe {k} of {}", pair.name)))
        })
        .collect()
}

/// Builds a canonical pair by name.
pub fn canonical_pair(name: &str, params: &[f64]) -> Result<IsometryPair, IsoError> {
    let full_turn = Interval::new(-PI, PI);
    match name {
        "plane-cylinder" => {
            let r = positive_param(name, params, 1.0)?;
            let cyl = catalog("cylinder", &[r])?;
            let flat = plane(r, 1.0, cyl.domain());
            Ok(IsometryPair::new(name, flat, cyl))
        }
        "helicoid-catenoid" => {
            let a = positive_param(name, params, 1.0)?;
            Ok(IsometryPair::new(
                name,
                catalog("helicoid", &[a])?,
                catalog("catenoid", &[a])?,
            ))
        }
        "plane-cone" => {
            let k = match params {
                [] => 1.0,
                [k] if k.is_finite() => *k,
                _ => return Err(invalid(name, "expected [] or [k]")),
            };
            let cone = catalog("cone", &[k])?;
            let c = (1.0 + k * k).sqrt();
            // the development spans an angle of 2 pi / c, so the chart stays injective
            let flat = polar_plane(c, cone.domain());
            Ok(IsometryPair::new(name, flat, cone))
        }
        "plane-sphere" => {
            if !params.is_empty() {
                return Err(invalid(name, "takes no parameters"));
            }
            let sphere = catalog("sphere", &[])?;
            let flat = plane(1.0, 1.0, Domain::new(full_turn, Interval::new(-1.5, 1.5)));
            Ok(IsometryPair::new(name, flat, sphere))
        }
        other => Err(IsoError::UnknownPair(other.to_string())),
    }
}

#[cfg(test)]
mod tests;

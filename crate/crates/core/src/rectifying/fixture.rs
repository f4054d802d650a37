//! Rectifying fixtures built by dilating unit-speed spherical curves.
//!
//! If `y` is a unit-speed curve on the unit sphere, the cone `v y(u)` has
//! metric `v^2 du^2 + dv^2` and develops isometrically onto the plane in polar
//! coordinates. The dilation `rho(t) y(t)` with `rho = a sec(t + t0)` is then
//! a straight line at distance `a` from the apex, which is exactly the
//! rectifying condition.

use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{max_residual, RectError};
use crate::frames::{arc_length_reparam, sample_grid, trace, SurfaceCurve};
use crate::numerics::{Interval, Jet, Mat3, TolerancePolicy, Vec3, VecJet};
use crate::surfaces::{cone_over, CurveJetFn, Domain, SurfacePatch};

/// The curve on the apex side of the cone is excluded from every fixture
/// domain by at least this much.
const APEX_CLEARANCE: f64 = 1e-3;
const FIXTURE_GRID: usize = 65;

/// Unit-speed small circle at colatitude `colatitude` on the unit sphere,
/// rotated by `angle` about `axis`. A colatitude of `pi/2` is a great circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SphericalProfile {
    pub colatitude: f64,
    pub axis: [f64; 3],
    pub angle: f64,
}

impl Default for SphericalProfile {
    fn default() -> Self {
        Self {
            colatitude: std::f64::consts::FRAC_PI_3,
            axis: [1.0, 0.0, 0.0],
            angle: 0.0,
        }
    }
}

impl SphericalProfile {
    pub fn rotation(&self) -> Mat3 {
        Mat3::rotation(Vec3::from(self.axis), self.angle)
    }

    fn validate(&self) -> Result<(), RectError> {
        if !(self.colatitude > 0.0 && self.colatitude <= FRAC_PI_2) {
            return Err(RectError::Fixture(format!(
                "colatitude must lie in (0, pi/2], got {}",
                self.colatitude
            )));
        }
        if !(self.angle.is_finite() && self.axis.iter().all(|x| x.is_finite())) {
            return Err(RectError::Fixture("rotation must be finite".into()));
        }
        Ok(())
    }
}

/// Jet of the unit-speed spherical curve described by `profile`.
pub fn small_circle(profile: &SphericalProfile) -> CurveJetFn {
    let (sa, ca) = profile.colatitude.sin_cos();
    let m = profile.rotation();
    Arc::new(move |u| {
        let phase = Jet::variable(u) * (1.0 / sa);
        VecJet::from_components(phase.cos() * sa, phase.sin() * sa, Jet::constant(ca))
            .map(|x| m.apply(x))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Dilation {
    /// `rho(t) = a sec(t + t0)`
    Secant { a: f64, t0: f64 },
    /// `rho(t) = c`; never rectifying, kept as a negative control.
    Constant { c: f64 },
}

impl Default for Dilation {
    fn default() -> Self {
        Dilation::Secant { a: 1.0, t0: 0.2 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DilatedSphericalParams {
    pub profile: SphericalProfile,
    pub dilation: Dilation,
    pub t_range: Interval,
}

impl Default for DilatedSphericalParams {
    fn default() -> Self {
        Self {
            profile: SphericalProfile::default(),
            dilation: Dilation::default(),
            t_range: Interval::new(-1.0, 1.0),
        }
    }
}

/// A dilated spherical curve on the cone over its profile, reparametrized by
/// arc length. Fails unless the result is rectifying to `tol_rect` and has
/// curvature at least `kappa_min` on the whole sample grid.
pub fn fixture_rectifying(
    params: &DilatedSphericalParams,
    policy: &TolerancePolicy,
) -> Result<(SurfaceCurve, SurfacePatch), RectError> {
    params.profile.validate()?;
    let t = params.t_range;
    if t.is_empty() || !t.lo.is_finite() || !t.hi.is_finite() {
        return Err(RectError::Fixture(
            "t_range must be a nonempty finite interval".into(),
        ));
    }
    let (raw, v_range) = match params.dilation {
        Dilation::Secant { a, t0 } => {
            if !(a > APEX_CLEARANCE) || !t0.is_finite() {
                return Err(RectError::Fixture(format!(
                    "fixture domain too small after excluding apex: a = {a} must exceed {APEX_CLEARANCE}"
                )));
            }
            if !(t.lo + t0 > -FRAC_PI_2 && t.hi + t0 < FRAC_PI_2) {
                return Err(RectError::Fixture(
                    "t_range + t0 must lie inside (-pi/2, pi/2)".into(),
                ));
            }
            let rho = |x: f64| a / (x + t0).cos();
            let v_max = rho(t.lo).max(rho(t.hi));
            let curve =
                SurfaceCurve::from_jets("dilated", t, move |x| (x, ((x + t0).cos()).recip() * a));
            (curve, Interval::new(0.5 * a, 1.5 * v_max))
        }
        Dilation::Constant { c } => {
            if !(c > APEX_CLEARANCE) {
                return Err(RectError::Fixture(format!(
                    "fixture domain too small after excluding apex: c = {c} must exceed {APEX_CLEARANCE}"
                )));
            }
            let curve = SurfaceCurve::from_jets("dilated", t, move |x| (x, Jet::constant(c)));
            (curve, Interval::new(0.5 * c, 1.5 * c))
        }
    };
    let u_range = Interval::new(t.lo - 0.1, t.hi + 0.1);
    let patch = cone_over(
        format!(
            "cone over small circle (colatitude {})",
            params.profile.colatitude
        ),
        small_circle(&params.profile),
        Domain::new(u_range, v_range),
    );
    let curve = arc_length_reparam(&raw, &patch, policy)?.renamed("dilated-spherical");

    let grid = sample_grid(&curve, &patch, FIXTURE_GRID, policy);
    for &s in &grid {
        let kappa = trace(&curve, &patch, s, policy)?.d2.norm();
        if !(kappa >= policy.kappa_min) {
            return Err(RectError::Fixture(format!(
                "dilated curve is degenerate: curvature {kappa:e} at s = {s} (a great-circle profile develops to a straight line)"
            )));
        }
    }
    let residual = max_residual(&curve, &patch, &grid, policy)?;
    if residual > policy.tol_rect {
        return Err(RectError::NotRectifying {
            s: f64::NAN,
            residual,
            tol: policy.tol_rect,
        });
    }
    Ok((curve, patch))
}

/// A straight line in the development of a cone `v y(u)` over a unit-speed
/// spherical curve, at distance `a` from the apex, as a unit-speed chart curve:
/// `u = atan(w / a) - t0`, `v = sqrt(a^2 + w^2)` with `w = s + a tan(t0)`.
/// This is the arc-length form of the secant dilation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConeLine {
    pub a: f64,
    pub t0: f64,
}

impl ConeLine {
    /// Arc-length parameter corresponding to the dilation parameter `t`.
    pub fn s_of_t(&self, t: f64) -> f64 {
        self.a * ((t + self.t0).tan() - self.t0.tan())
    }

    pub fn chart(&self, s: Jet) -> (Jet, Jet) {
        let (a, t0) = (self.a, self.t0);
        let w = s + a * t0.tan();
        ((w / a).atan() - t0, (w * w + a * a).sqrt())
    }
}

pub fn cone_geodesic(line: ConeLine, s_domain: Interval) -> SurfaceCurve {
    SurfaceCurve::from_jets(
        format!("cone-line(a={}, t0={})", line.a, line.t0),
        s_domain,
        move |s| line.chart(s),
    )
}

/// Derivative `y'(u)` of [`small_circle`], as its own jet.
pub fn small_circle_tangent(profile: &SphericalProfile) -> CurveJetFn {
    let sa = profile.colatitude.sin();
    let m = profile.rotation();
    Arc::new(move |u| {
        let phase = Jet::variable(u) * (1.0 / sa);
        VecJet::from_components(-phase.sin(), phase.cos(), Jet::constant(0.0)).map(|x| m.apply(x))
    })
}

/// `f(g(s))` for a vector jet `f` evaluated at `g(s)`.
fn compose_vec(f: VecJet, g: Jet) -> VecJet {
    let comp = |i: usize| g.compose(f.d.map(|x| x[i]));
    VecJet::from_components(comp(0), comp(1), comp(2))
}

/// The cone line of `line` as a space curve, `v(s) y(u(s))`, with its
/// derivatives.
pub fn cone_line_space_curve(profile: &SphericalProfile, line: ConeLine) -> CurveJetFn {
    let y = small_circle(profile);
    Arc::new(move |s| {
        let (u, v) = line.chart(Jet::variable(s));
        compose_vec(y(u.value()), u).scale(v)
    })
}

/// Ruled surface `c(s) + w d(s)` through the cone line `c` of `line`, with
/// rulings `d = cos(beta) (y x y') + sin(beta) y` evaluated at `u(s)`. The
/// curve `(s, 0)` is `c` itself, unit speed and rectifying. For `beta = 0` the
/// rulings are normal to the cone and `c` is an asymptotic line of the ruled
/// surface; for `beta = pi/2` the surface is the cone again and `c` is
/// geodesic; in between `c` is neither.
pub fn ruled_through_cone_line(
    profile: &SphericalProfile,
    line: ConeLine,
    beta: f64,
    s_domain: Interval,
    w_half_width: f64,
) -> (SurfaceCurve, SurfacePatch) {
    let base = cone_line_space_curve(profile, line);
    let y = small_circle(profile);
    let dy = small_circle_tangent(profile);
    let (sb, cb) = beta.sin_cos();
    let director: CurveJetFn = Arc::new(move |s| {
        let (u, _) = line.chart(Jet::variable(s));
        let yu = compose_vec(y(u.value()), u);
        let dyu = compose_vec(dy(u.value()), u);
        yu.cross(&dyu)
            .scale(Jet::constant(cb))
            .add(&yu.scale(Jet::constant(sb)))
    });
    let patch = crate::surfaces::ruled(
        format!("ruled through cone line (beta = {beta})"),
        base,
        director,
        Domain::new(s_domain, Interval::new(-w_half_width, w_half_width)),
    );
    let curve = SurfaceCurve::from_jets("cone line on ruled surface", s_domain, |s| {
        (s, Jet::constant(0.0))
    });
    (curve, patch)
}

//! Classical surface fixtures with analytic partials.

use std::f64::consts::PI;
use std::sync::Arc;

use super::{Domain, SurfaceError, SurfaceJet, SurfacePatch};
use crate::numerics::{DerivPath, Interval, Vec3, VecJet};

/// A space curve with analytic derivatives, as used by cones and ruled surfaces.
pub type CurveJetFn = Arc<dyn Fn(f64) -> VecJet + Send + Sync>;

const CATALOG: &[(&str, &str)] = &[
    ("plane", "(su*u, sv*v, 0); params [] or [su, sv]"),
    ("cylinder", "(r cos u, r sin u, v); params [r]"),
    ("cone", "(v cos u, v sin u, k v), apex excluded; params [k] or [k, v_min, v_max]"),
    ("sphere", "R (cos u cos v, sin u cos v, sin v); params [R]"),
    ("helicoid", "a (sinh v cos u, sinh v sin u, u); params [a]"),
    ("catenoid", "a (cosh v cos u, cosh v sin u, v); params [a]"),
    ("monge", "(u, v, f(u, v)), f a polynomial; params are graded coefficients of 1, u, v, u^2, uv, v^2, ..."),
];

/// Catalog names with a one-line description each.
pub fn catalog_names() -> &'static [(&'static str, &'static str)] {
    CATALOG
}

fn invalid(name: &str, reason: impl Into<String>) -> SurfaceError {
    SurfaceError::InvalidParams {
        name: name.to_string(),
        reason: reason.into(),
    }
}

fn single_param(name: &str, params: &[f64], default: f64) -> Result<f64, SurfaceError> {
    match params {
        [] => Ok(default),
        [x] if x.is_finite() => Ok(*x),
        [_] => Err(invalid(name, "parameter must be finite")),
        _ => Err(invalid(
            name,
            format!("expected at most one parameter, got {}", params.len()),
        )),
    }
}

fn positive(name: &str, what: &str, x: f64) -> Result<f64, SurfaceError> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(invalid(name, format!("{what} must be positive, got {x}")))
    }
}

/// Builds a catalog surface by name.
pub fn catalog(name: &str, params: &[f64]) -> Result<SurfacePatch, SurfaceError> {
    let full_turn = Interval::new(-PI, PI);
    match name {
        "plane" => {
            let (su, sv) = match params {
                [] => (1.0, 1.0),
                [su, sv] => (positive(name, "su", *su)?, positive(name, "sv", *sv)?),
                _ => return Err(invalid(name, "expected [] or [su, sv]")),
            };
            Ok(plane(
                su,
                sv,
                Domain::new(Interval::new(-10.0, 10.0), Interval::new(-10.0, 10.0)),
            ))
        }
        "cylinder" => {
            let r = positive(name, "radius", single_param(name, params, 1.0)?)?;
            let profile =
                RevolutionProfile::new(move |_| [r, 0.0, 0.0, 0.0], |v| [v, 1.0, 0.0, 0.0], 0.0);
            Ok(revolution_like(
                format!("cylinder(r={r})"),
                profile,
                Domain::new(full_turn, Interval::new(-10.0, 10.0)),
            ))
        }
        "cone" => {
            let (k, v_lo, v_hi) = match params {
                [] => (1.0, 0.1, 5.0),
                [k] => (*k, 0.1, 5.0),
                [k, lo, hi] => (*k, *lo, *hi),
                _ => return Err(invalid(name, "expected [k] or [k, v_min, v_max]")),
            };
            if !k.is_finite() {
                return Err(invalid(name, "slope must be finite"));
            }
            if !(v_lo >= 0.0 && v_hi > v_lo && v_hi.is_finite()) {
                return Err(invalid(name, "need 0 <= v_min < v_max"));
            }
            let profile =
                RevolutionProfile::new(|v| [v, 1.0, 0.0, 0.0], move |v| [k * v, k, 0.0, 0.0], 0.0);
            Ok(revolution_like(
                format!("cone(k={k})"),
                profile,
                Domain::new(full_turn, Interval::new(v_lo, v_hi)),
            ))
        }
        "sphere" => {
            let r = positive(name, "radius", single_param(name, params, 1.0)?)?;
            let profile = RevolutionProfile::new(
                move |v| {
                    let (s, c) = v.sin_cos();
                    [r * c, -r * s, -r * c, r * s]
                },
                move |v| {
                    let (s, c) = v.sin_cos();
                    [r * s, r * c, -r * s, -r * c]
                },
                0.0,
            );
            Ok(revolution_like(
                format!("sphere(R={r})"),
                profile,
                Domain::new(full_turn, Interval::new(-1.5, 1.5)),
            ))
        }
        "helicoid" => {
            let a = positive(name, "scale", single_param(name, params, 1.0)?)?;
            let profile = RevolutionProfile::new(
                move |v| {
                    let (s, c) = (v.sinh(), v.cosh());
                    [a * s, a * c, a * s, a * c]
                },
                |_| [0.0; 4],
                a,
            );
            Ok(revolution_like(
                format!("helicoid(a={a})"),
                profile,
                Domain::new(full_turn, Interval::new(-2.0, 2.0)),
            ))
        }
        "catenoid" => {
            let a = positive(name, "scale", single_param(name, params, 1.0)?)?;
            let profile = RevolutionProfile::new(
                move |v| {
                    let (s, c) = (v.sinh(), v.cosh());
                    [a * c, a * s, a * c, a * s]
                },
                move |v| [a * v, a, 0.0, 0.0],
                0.0,
            );
            Ok(revolution_like(
                format!("catenoid(a={a})"),
                profile,
                Domain::new(full_turn, Interval::new(-2.0, 2.0)),
            ))
        }
        "monge" => {
            if params.iter().any(|c| !c.is_finite()) {
                return Err(invalid(name, "coefficients must be finite"));
            }
            Ok(monge(
                MongePolynomial::graded(params),
                Domain::new(Interval::new(-2.0, 2.0), Interval::new(-2.0, 2.0)),
            ))
        }
        other => Err(SurfaceError::UnknownSurface(other.to_string())),
    }
}

/// `(su * u, sv * v, 0)`.
pub fn plane(su: f64, sv: f64, domain: Domain) -> SurfacePatch {
    SurfacePatch::analytic(
        format!("plane(su={su},sv={sv})"),
        domain,
        Arc::new(move |u, v| SurfaceJet {
            point: Vec3::new(su * u, sv * v, 0.0),
            du: Vec3::new(su, 0.0, 0.0),
            dv: Vec3::new(0.0, sv, 0.0),
            duu: Vec3::ZERO,
            duv: Vec3::ZERO,
            dvv: Vec3::ZERO,
            third: Some([Vec3::ZERO; 4]),
            path: DerivPath::Analytic,
        }),
    )
}

type Profile = Arc<dyn Fn(f64) -> [f64; 4] + Send + Sync>;

/// Profile of a surface `(A(v) cos u, A(v) sin u, Z(v) + pitch * u)`; `A` and
/// `Z` return their value and first three derivatives.
#[derive(Clone)]
pub struct RevolutionProfile {
    radius: Profile,
    height: Profile,
    pitch: f64,
}

impl RevolutionProfile {
    pub fn new(
        radius: impl Fn(f64) -> [f64; 4] + Send + Sync + 'static,
        height: impl Fn(f64) -> [f64; 4] + Send + Sync + 'static,
        pitch: f64,
    ) -> Self {
        Self {
            radius: Arc::new(radius),
            height: Arc::new(height),
            pitch,
        }
    }
}

/// Surfaces of the form `(A(v) cos u, A(v) sin u, Z(v) + pitch * u)`: the
/// cylinder, cone, sphere, catenoid and helicoid of the catalog.
pub fn revolution_like(
    name: impl Into<String>,
    profile: RevolutionProfile,
    domain: Domain,
) -> SurfacePatch {
    SurfacePatch::analytic(
        name,
        domain,
        Arc::new(move |u, v| {
            let a = (profile.radius)(v);
            let z = (profile.height)(v);
            let (s, c) = u.sin_cos();
            let cos_d = [c, -s, -c, s];
            let sin_d = [s, c, -s, -c];
            // d^i/du^i d^j/dv^j
            let part = |i: usize, j: usize| {
                let zc = match (i, j) {
                    (0, j) => z[j] + if j == 0 { profile.pitch * u } else { 0.0 },
                    (1, 0) => profile.pitch,
                    _ => 0.0,
                };
                Vec3::new(a[j] * cos_d[i], a[j] * sin_d[i], zc)
            };
            SurfaceJet {
                point: part(0, 0),
                du: part(1, 0),
                dv: part(0, 1),
                duu: part(2, 0),
                duv: part(1, 1),
                dvv: part(0, 2),
                third: Some([part(3, 0), part(2, 1), part(1, 2), part(0, 3)]),
                path: DerivPath::Analytic,
            }
        }),
    )
}

/// Polynomial height function `f(u, v) = sum c_ij u^i v^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct MongePolynomial {
    terms: Vec<(u32, u32, f64)>,
}

impl MongePolynomial {
    pub fn new(terms: Vec<(u32, u32, f64)>) -> Self {
        Self { terms }
    }

    /// Coefficients in graded order `1, u, v, u^2, uv, v^2, u^3, u^2 v, ...`.
    pub fn graded(coeffs: &[f64]) -> Self {
        let mut terms = Vec::with_capacity(coeffs.len());
        let mut it = coeffs.iter();
        'outer: for degree in 0u32.. {
            for j in 0..=degree {
                match it.next() {
                    Some(&c) => terms.push((degree - j, j, c)),
                    None => break 'outer,
                }
            }
        }
        Self { terms }
    }

    /// `d^a/du^a d^b/dv^b f` at `(u, v)`.
    pub fn partial(&self, a: u32, b: u32, u: f64, v: f64) -> f64 {
        fn falling(n: u32, k: u32) -> f64 {
            (0..k).map(|i| (n - i) as f64).product()
        }
        self.terms
            .iter()
            .filter(|(i, j, _)| *i >= a && *j >= b)
            .map(|&(i, j, c)| {
                c * falling(i, a) * falling(j, b) * u.powi((i - a) as i32) * v.powi((j - b) as i32)
            })
            .sum()
    }
}

/// Graph patch `(u, v, f(u, v))`.
pub fn monge(f: MongePolynomial, domain: Domain) -> SurfacePatch {
    SurfacePatch::analytic(
        "monge",
        domain,
        Arc::new(move |u, v| {
            let h = |a, b| Vec3::new(0.0, 0.0, f.partial(a, b, u, v));
            SurfaceJet {
                point: Vec3::new(u, v, f.partial(0, 0, u, v)),
                du: Vec3::new(1.0, 0.0, f.partial(1, 0, u, v)),
                dv: Vec3::new(0.0, 1.0, f.partial(0, 1, u, v)),
                duu: h(2, 0),
                duv: h(1, 1),
                dvv: h(0, 2),
                third: Some([h(3, 0), h(2, 1), h(1, 2), h(0, 3)]),
                path: DerivPath::Analytic,
            }
        }),
    )
}

/// Cone `v * y(u)` with apex at the origin over the curve `y`. When `y` is a
/// unit-speed spherical curve the metric is `E = v^2, F = 0, G = 1`.
pub fn cone_over(name: impl Into<String>, y: CurveJetFn, domain: Domain) -> SurfacePatch {
    SurfacePatch::analytic(
        name,
        domain,
        Arc::new(move |u, v| {
            let [y0, y1, y2, y3] = y(u).d;
            SurfaceJet {
                point: y0 * v,
                du: y1 * v,
                dv: y0,
                duu: y2 * v,
                duv: y1,
                dvv: Vec3::ZERO,
                third: Some([y3 * v, y2, Vec3::ZERO, Vec3::ZERO]),
                path: DerivPath::Analytic,
            }
        }),
    )
}

/// Ruled surface `c(u) + v * d(u)`.
pub fn ruled(
    name: impl Into<String>,
    base: CurveJetFn,
    director: CurveJetFn,
    domain: Domain,
) -> SurfacePatch {
    SurfacePatch::analytic(
        name,
        domain,
        Arc::new(move |u, v| {
            let [c0, c1, c2, c3] = base(u).d;
            let [d0, d1, d2, d3] = director(u).d;
            SurfaceJet {
                point: c0 + d0 * v,
                du: c1 + d1 * v,
                dv: d0,
                duu: c2 + d2 * v,
                duv: d1,
                dvv: Vec3::ZERO,
                third: Some([c3 + d3 * v, d2, Vec3::ZERO, Vec3::ZERO]),
                path: DerivPath::Analytic,
            }
        }),
    )
}

//! Named chart-curve fixtures.

use std::f64::consts::PI;

use super::curve::{polynomial_jet, SurfaceCurve};
use super::FrameError;
use crate::numerics::{Interval, Jet};

const CURVES: &[(&str, &str)] = &[
    (
        "line",
        "(u0 + a s, v0 + b s); params [u0, v0, a, b] (optional [.., s_min, s_max])",
    ),
    (
        "circle",
        "(cu + R cos(s/R), cv + R sin(s/R)); params [R] or [R, cu, cv]",
    ),
    (
        "helix",
        "(s/c, h s/c), c = sqrt(r^2 + h^2), unit speed on cylinder(r); params [r, h]",
    ),
    ("great-circle", "(s, 0) on the unit sphere; params []"),
    (
        "polynomial",
        "truncated series u(s), v(s); see CurveSpec coefficient tables",
    ),
];

pub fn curve_names() -> &'static [(&'static str, &'static str)] {
    CURVES
}

fn invalid(name: &str, reason: impl Into<String>) -> FrameError {
    FrameError::InvalidCurve {
        name: name.to_string(),
        reason: reason.into(),
    }
}

fn tail_domain(name: &str, rest: &[f64], default: Interval) -> Result<Interval, FrameError> {
    match rest {
        [] => Ok(default),
        [lo, hi] if hi > lo => Ok(Interval::new(*lo, *hi)),
        _ => Err(invalid(
            name,
            "optional parameter domain must be [s_min, s_max] with s_min < s_max",
        )),
    }
}

/// Chart line `(u0 + a s, v0 + b s)`.
pub fn line(u0: f64, v0: f64, a: f64, b: f64, s_domain: Interval) -> SurfaceCurve {
    SurfaceCurve::from_jets(format!("line({u0},{v0},{a},{b})"), s_domain, move |s| {
        (s * a + u0, s * b + v0)
    })
}

/// Chart circle of radius `r` about `(cu, cv)`, unit speed in a Euclidean chart.
pub fn circle(r: f64, cu: f64, cv: f64, s_domain: Interval) -> SurfaceCurve {
    SurfaceCurve::from_jets(format!("circle(R={r})"), s_domain, move |s| {
        let phase = s / r;
        (phase.cos() * r + cu, phase.sin() * r + cv)
    })
}

/// Helix of radius `r` and pitch `h` on `cylinder(r)`: `(s / c, h s / c)`.
pub fn helix(r: f64, h: f64, s_domain: Interval) -> SurfaceCurve {
    let c = (r * r + h * h).sqrt();
    SurfaceCurve::from_jets(format!("helix(r={r},h={h})"), s_domain, move |s| {
        (s * (1.0 / c), s * (h / c))
    })
}

pub fn polynomial(
    name: impl Into<String>,
    u: Vec<f64>,
    v: Vec<f64>,
    s_domain: Interval,
) -> SurfaceCurve {
    SurfaceCurve::from_jets(name, s_domain, move |s| {
        (polynomial_jet(&u, s), polynomial_jet(&v, s))
    })
}

/// Builds a named chart curve.
pub fn curve_catalog(name: &str, params: &[f64]) -> Result<SurfaceCurve, FrameError> {
    if params.iter().any(|p| !p.is_finite()) {
        return Err(invalid(name, "parameters must be finite"));
    }
    match name {
        "line" => match params {
            [u0, v0, a, b, rest @ ..] => {
                if *a == 0.0 && *b == 0.0 {
                    return Err(invalid(name, "direction must be nonzero"));
                }
                Ok(line(
                    *u0,
                    *v0,
                    *a,
                    *b,
                    tail_domain(name, rest, Interval::new(-1.0, 1.0))?,
                ))
            }
            _ => Err(invalid(name, "expected [u0, v0, a, b]")),
        },
        "circle" => {
            let (r, cu, cv) = match params {
                [r] => (*r, 0.0, 0.0),
                [r, cu, cv] => (*r, *cu, *cv),
                _ => return Err(invalid(name, "expected [R] or [R, cu, cv]")),
            };
            if r <= 0.0 {
                return Err(invalid(name, "radius must be positive"));
            }
            Ok(circle(
                r,
                cu,
                cv,
                Interval::new(-PI * r * 0.9, PI * r * 0.9),
            ))
        }
        "helix" => match params {
            [r, h, rest @ ..] if *r > 0.0 => Ok(helix(
                *r,
                *h,
                tail_domain(name, rest, Interval::new(-10.0, 10.0))?,
            )),
            _ => Err(invalid(name, "expected [r, h] with r > 0")),
        },
        "great-circle" => match params {
            [] => Ok(SurfaceCurve::from_jets(
                "great-circle",
                Interval::new(-3.0, 3.0),
                |s| (s, Jet::constant(0.0)),
            )),
            _ => Err(invalid(name, "takes no parameters")),
        },
        other => Err(FrameError::UnknownCurve(other.to_string())),
    }
}

//! Scan of simple curve families for curves that are rectifying on both
//! sides of a pair.

use serde::{Deserialize, Serialize};

use crate::frames::{arc_length_reparam, sample_grid, SurfaceCurve};
use crate::isometry::IsometryPair;
use crate::numerics::{Interval, TolerancePolicy};
use crate::rectifying::max_residual;

/// Families of chart curves, reparametrized by arc length on the source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveFamily {
    /// `(u0 + t cos psi, v0 + t sin psi)`; parameters `[u0, v0, psi]`.
    ChartLine,
    /// `v = a sec(u - u0)`, a straight line in polar charts; parameters `[a, u0]`.
    PolarLine,
}

impl CurveFamily {
    pub fn dimension(self) -> usize {
        match self {
            CurveFamily::ChartLine => 3,
            CurveFamily::PolarLine => 2,
        }
    }

    fn bounds(self, pair: &IsometryPair) -> Vec<Interval> {
        let d = pair.domain();
        match self {
            CurveFamily::ChartLine => vec![d.u, d.v, Interval::new(0.0, std::f64::consts::PI)],
            CurveFamily::PolarLine => vec![Interval::new(d.v.lo.max(0.0), d.v.hi), d.u],
        }
    }

    /// The raw member with parameters `p` over `t in [-half, half]`.
    pub fn member(self, p: &[f64], half: f64) -> SurfaceCurve {
        let t = Interval::new(-half, half);
        match self {
            CurveFamily::ChartLine => {
                let (u0, v0, (s, c)) = (p[0], p[1], p[2].sin_cos());
                SurfaceCurve::from_jets(format!("chart-line({u0},{v0},{})", p[2]), t, move |t| {
                    (t * c + u0, t * s + v0)
                })
            }
            CurveFamily::PolarLine => {
                let (a, u0) = (p[0], p[1]);
                SurfaceCurve::from_jets(format!("polar-line({a},{u0})"), t, move |t| {
                    (t + u0, t.cos().recip() * a)
                })
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchSettings {
    /// Coarse grid points per parameter.
    pub coarse: usize,
    /// Pattern-search step halvings after the coarse scan.
    pub refine_steps: usize,
    /// Half-length of the raw parameter interval.
    pub half_length: f64,
    /// Samples at which residuals are evaluated.
    pub grid: usize,
}

impl Default for SearchSettings {
    fn default() -> Self {
        Self {
            coarse: 5,
            refine_steps: 12,
            half_length: 0.4,
            grid: 17,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchOutcome {
    pub pair: String,
    pub family: CurveFamily,
    pub best_params: Vec<f64>,
    pub residual_source: f64,
    pub residual_target: f64,
    pub evaluations: usize,
    pub accepted: bool,
    pub reason: String,
    #[serde(skip)]
    pub curve: Option<SurfaceCurve>,
}

struct Candidate {
    objective: f64,
    source: f64,
    target: f64,
    curve: Option<SurfaceCurve>,
}

impl Candidate {
    const INFEASIBLE: Candidate = Candidate {
        objective: f64::INFINITY,
        source: f64::INFINITY,
        target: f64::INFINITY,
        curve: None,
    };
}

/// Rectifying residuals of one family member on both patches. Members that
/// leave the shared domain, fail to reparametrize, or are degenerate on
/// either side score infinity.
fn evaluate(
    pair: &IsometryPair,
    family: CurveFamily,
    p: &[f64],
    settings: &SearchSettings,
    policy: &TolerancePolicy,
) -> Candidate {
    let raw = family.member(p, settings.half_length);
    let domain = pair.domain();
    if raw.s_domain().samples(9).into_iter().any(|t| {
        let (u, v) = raw.coords(t);
        !domain.contains(u, v)
    }) {
        return Candidate::INFEASIBLE;
    }
    let Ok(curve) = arc_length_reparam(&raw, pair.source(), policy) else {
        return Candidate::INFEASIBLE;
    };
    let grid = sample_grid(&curve, pair.source(), settings.grid, policy);
    let residual = |patch| {
        max_residual(&curve, patch, &grid, policy)
            .ok()
            .filter(|r| r.is_finite())
    };
    match (residual(pair.source()), residual(pair.target())) {
        (Some(source), Some(target)) => Candidate {
            objective: source.max(target),
            source,
            target,
            curve: Some(curve),
        },
        _ => Candidate::INFEASIBLE,
    }
}

/// Coarse scan of `family` over the shared domain followed by a compass
/// pattern search on `max(res_source, res_target)`. The best member is
/// accepted only if both residuals are at most `tol_rect`.
pub fn fixture_search(
    pair: &IsometryPair,
    family: CurveFamily,
    settings: &SearchSettings,
    policy: &TolerancePolicy,
) -> SearchOutcome {
    let bounds = family.bounds(pair);
    let n = settings.coarse.max(2);
    let mut evaluations = 0;
    let mut best_p = Vec::new();
    let mut best = Candidate::INFEASIBLE;

    let total = n.pow(bounds.len() as u32);
    for idx in 0..total {
        let mut k = idx;
        let p: Vec<f64> = bounds
            .iter()
            .map(|b| {
                let i = k % n;
                k /= n;
                b.lo + b.len() * (i as f64 + 0.5) / n as f64
            })
            .collect();
        let c = evaluate(pair, family, &p, settings, policy);
        evaluations += 1;
        if c.objective < best.objective || best_p.is_empty() {
            best = c;
            best_p = p;
        }
    }

    if best.objective.is_finite() {
        let mut step: Vec<f64> = bounds.iter().map(|b| b.len() / (2 * n) as f64).collect();
        for _ in 0..settings.refine_steps {
            let mut improved = true;
            while improved {
                improved = false;
                for d in 0..best_p.len() {
                    for sign in [1.0, -1.0] {
                        let mut p = best_p.clone();
                        p[d] += sign * step[d];
                        let c = evaluate(pair, family, &p, settings, policy);
                        evaluations += 1;
                        if c.objective < best.objective {
                            best = c;
                            best_p = p;
                            improved = true;
                        }
                    }
                }
            }
            step.iter_mut().for_each(|s| *s *= 0.5);
        }
    }

    let accepted = best.source <= policy.tol_rect && best.target <= policy.tol_rect;
    let reason = if accepted {
        "both residuals within tol_rect".to_string()
    } else if !best.objective.is_finite() {
        "every member is degenerate or leaves the domain on one side".to_string()
    } else {
        format!(
            "best member has residuals {:e} (source) and {:e} (target), above tol_rect {:e}",
            best.source, best.target, policy.tol_rect
        )
    };
    SearchOutcome {
        pair: pair.name().to_string(),
        family,
        best_params: best_p,
        residual_source: best.source,
        residual_target: best.target,
        evaluations,
        accepted,
        reason,
        curve: if accepted { best.curve } else { None },
    }
}

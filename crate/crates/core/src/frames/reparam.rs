use std::sync::Arc;

use super::curve::{ChartJet, SurfaceCurve};
use super::{chain_second, is_analytic, trace, FrameError, THIRD_ORDER_STEP};
use crate::numerics::{diff, integrate, Interval, Jet, Order, TolerancePolicy, Vec3};
use crate::surfaces::SurfacePatch;

const TABLE_NODES: usize = 256;
const LENGTH_TOL: f64 = 1e-12;

// 8-point Gauss-Legendre rule on [-1, 1]
#[allow(clippy::excessive_precision)]
const GL_NODES: [f64; 4] = [
    0.183_434_642_495_649_8,
    0.525_532_409_916_329_0,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
#[allow(clippy::excessive_precision)]
const GL_WEIGHTS: [f64; 4] = [
    0.362_683_783_378_362_0,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

/// Fixed-order quadrature, smooth in both limits. Finite-difference
/// derivatives of `t(s)` rely on that smoothness; an adaptive rule changes its
/// subdivision from one evaluation to the next.
fn gauss_legendre(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let (m, r) = (0.5 * (a + b), 0.5 * (b - a));
    let mut acc = 0.0;
    for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS) {
        acc += w * (f(m - r * x) + f(m + r * x));
    }
    acc * r
}

/// Cumulative arc length `s(t)` on a grid of the original parameter, with
/// Newton inversion for `t(s)`.
#[derive(Clone)]
pub struct ArcLengthTable {
    t: Vec<f64>,
    s: Vec<f64>,
    speed: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl std::fmt::Debug for ArcLengthTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ArcLengthTable")
            .field("t", &self.t_domain())
            .field("length", &self.length())
            .finish()
    }
}

impl ArcLengthTable {
    pub fn build(
        t_domain: Interval,
        speed: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        speed_min: f64,
    ) -> Result<Self, FrameError> {
        let t = t_domain.samples(TABLE_NODES);
        // regularity: scan a fine grid, then polish the smallest sample with a
        // golden-section search between its neighbours
        let scan = t_domain.samples(4 * TABLE_NODES);
        let mut imin = 0;
        for (i, &x) in scan.iter().enumerate() {
            let g = speed(x);
            if !(g >= speed_min) {
                return Err(FrameError::SingularParametrization { t: x, speed: g });
            }
            if g < speed(scan[imin]) {
                imin = i;
            }
        }
        let (tmin, gmin) = golden_min(
            &*speed,
            scan[imin.saturating_sub(1)],
            scan[(imin + 1).min(scan.len() - 1)],
        );
        if !(gmin >= speed_min) {
            return Err(FrameError::SingularParametrization {
                t: tmin,
                speed: gmin,
            });
        }
        let mut s = Vec::with_capacity(t.len());
        s.push(0.0);
        for w in t.windows(2) {
            let seg = gauss_legendre(&*speed, w[0], w[1]);
            s.push(s.last().unwrap() + seg);
        }
        // the fixed rule is checked against the adaptive integrator on the whole interval
        let total = integrate(&|x| speed(x), t_domain.lo, t_domain.hi, LENGTH_TOL)?;
        let table = *s.last().unwrap();
        if (total - table).abs() > 1e3 * LENGTH_TOL * (1.0 + total) {
            return Err(FrameError::Numerics(
                crate::numerics::NumericsError::Quadrature(t_domain.lo, t_domain.hi),
            ));
        }
        Ok(Self { t, s, speed })
    }

    pub fn length(&self) -> f64 {
        *self.s.last().unwrap()
    }

    pub fn t_domain(&self) -> Interval {
        Interval::new(self.t[0], *self.t.last().unwrap())
    }

    pub fn s_of_t(&self, t: f64) -> f64 {
        let i = match self.t.partition_point(|&x| x <= t) {
            0 => 0,
            k => (k - 1).min(self.t.len() - 2),
        };
        self.s[i] + gauss_legendre(&*self.speed, self.t[i], t)
    }

    /// Inverts `s(t)` by safeguarded Newton iteration inside one table cell.
    pub fn t_of_s(&self, s: f64) -> f64 {
        let n = self.s.len();
        let i = match self.s.partition_point(|&x| x <= s) {
            0 => 0,
            k => (k - 1).min(n - 2),
        };
        let (mut lo, mut hi) = (self.t[i], self.t[i + 1]);
        let (s0, s1) = (self.s[i], self.s[i + 1]);
        let mut t = lo + (hi - lo) * ((s - s0) / (s1 - s0)).clamp(0.0, 1.0);
        let scale = 1.0 + self.length();
        for _ in 0..40 {
            let r = s0 + gauss_legendre(&*self.speed, self.t[i], t) - s;
            if r.abs() <= 1e-15 * scale {
                break;
            }
            if r > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            let next = t - r / (self.speed)(t);
            t = if next > lo && next < hi {
                next
            } else {
                0.5 * (lo + hi)
            };
            if hi - lo <= 1e-16 * (1.0 + t.abs()) {
                break;
            }
        }
        t
    }
}

/// Reparametrizes a regular curve by arc length, measured from the start of
/// its parameter interval.
///
/// Analytic curves on analytic patches stay analytic: the chart jets are
/// composed with the jet of `t(s)`, whose derivatives follow from
/// `t' = 1 / |gamma_t|`. Other curves come back as coordinate functions only.
/// For those the parameter interval is first trimmed so that the derivative
/// stencils fit.
pub fn arc_length_reparam(
    curve: &SurfaceCurve,
    patch: &SurfacePatch,
    policy: &TolerancePolicy,
) -> Result<SurfaceCurve, FrameError> {
    let analytic = is_analytic(curve, patch);
    let h = policy.h_fd;
    let t_domain = if analytic {
        curve.s_domain()
    } else {
        curve.s_domain().shrink(2.0 * THIRD_ORDER_STEP * h * 1.01)
    };
    if t_domain.is_empty() {
        return Err(FrameError::InvalidCurve {
            name: curve.name().to_string(),
            reason: "parameter interval too short to reparametrize".into(),
        });
    }

    let speed: Arc<dyn Fn(f64) -> f64 + Send + Sync> = if analytic {
        let (c, p) = (curve.clone(), patch.clone());
        Arc::new(move |t| {
            let jet = c.analytic_jet(t).expect("analytic curve");
            let (u, v) = jet.point();
            p.local(u, v)
                .map(|j| chain_second(&j, &jet).0.norm())
                .unwrap_or(f64::NAN)
        })
    } else {
        let (c, p) = (curve.clone(), patch.clone());
        let dom = curve.s_domain();
        Arc::new(move |t| {
            let gamma = |x: f64| {
                let (u, v) = c.coords(x);
                p.eval(u, v)
                    .unwrap_or(Vec3::new(f64::NAN, f64::NAN, f64::NAN))
            };
            diff(gamma, t, Order::First, h, dom)
                .map(|d| d.norm())
                .unwrap_or(f64::NAN)
        })
    };
    let table = Arc::new(ArcLengthTable::build(t_domain, speed, policy.kappa_min)?);
    let s_domain = Interval::new(0.0, table.length());
    let name = format!("{}[arc]", curve.name());

    if analytic {
        let (c, p, tab, pol) = (curve.clone(), patch.clone(), table.clone(), *policy);
        Ok(SurfaceCurve::analytic(
            name,
            s_domain,
            Arc::new(move |s| {
                let t = tab.t_of_s(s);
                let nan = ChartJet::new(Jet::constant(f64::NAN), Jet::constant(f64::NAN));
                let Ok(pt) = trace(&c, &p, t, &pol) else {
                    return nan;
                };
                let g = pt.d1.norm();
                let gt = pt.d1.dot(pt.d2) / g;
                let gtt = (pt.d2.dot(pt.d2) + pt.d1.dot(pt.d3)) / g - gt * gt / g;
                let t1 = 1.0 / g;
                let t2 = -gt / (g * g * g);
                let t3 = (3.0 * gt * gt - g * gtt) / g.powi(5);
                let tj = Jet::new([t, t1, t2, t3]);
                ChartJet::new(tj.compose(pt.chart.u.d), tj.compose(pt.chart.v.d))
            }),
        ))
    } else {
        let (c, tab) = (curve.clone(), table.clone());
        Ok(SurfaceCurve::numeric(
            name,
            s_domain,
            Arc::new(move |s| c.coords(tab.t_of_s(s))),
        ))
    }
}

fn golden_min(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

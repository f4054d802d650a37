use std::fmt;
use std::sync::Arc;

use crate::numerics::{Interval, Jet};

/// Chart coordinates of a curve and their first three derivatives with
/// respect to the curve parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartJet {
    pub u: Jet,
    pub v: Jet,
}

impl ChartJet {
    pub fn new(u: Jet, v: Jet) -> Self {
        Self { u, v }
    }

    pub fn point(&self) -> (f64, f64) {
        (self.u.value(), self.v.value())
    }
}

pub type CoordFn = Arc<dyn Fn(f64) -> (f64, f64) + Send + Sync>;
pub type ChartJetFn = Arc<dyn Fn(f64) -> ChartJet + Send + Sync>;

/// A curve `s -> (u(s), v(s))` in the chart of some patch. The embedding into
/// 3-space is `phi(u(s), v(s))`; see [`super::embed`].
#[derive(Clone)]
pub struct SurfaceCurve {
    name: String,
    s_domain: Interval,
    coords: CoordFn,
    analytic: Option<ChartJetFn>,
}

impl fmt::Debug for SurfaceCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SurfaceCurve")
            .field("name", &self.name)
            .field("s_domain", &self.s_domain)
            .field("analytic", &self.analytic.is_some())
            .finish()
    }
}

impl SurfaceCurve {
    pub fn analytic(name: impl Into<String>, s_domain: Interval, jet: ChartJetFn) -> Self {
        let j = jet.clone();
        Self {
            name: name.into(),
            s_domain,
            coords: Arc::new(move |s| j(s).point()),
            analytic: Some(jet),
        }
    }

    /// Curve known only through its coordinate values.
    pub fn numeric(name: impl Into<String>, s_domain: Interval, coords: CoordFn) -> Self {
        Self {
            name: name.into(),
            s_domain,
            coords,
            analytic: None,
        }
    }

    /// Builds an analytic curve from jet-valued coordinate functions.
    pub fn from_jets<F>(name: impl Into<String>, s_domain: Interval, f: F) -> Self
    where
        F: Fn(Jet) -> (Jet, Jet) + Send + Sync + 'static,
    {
        Self::analytic(
            name,
            s_domain,
            Arc::new(move |s| {
                let (u, v) = f(Jet::variable(s));
                ChartJet::new(u, v)
            }),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn s_domain(&self) -> Interval {
        self.s_domain
    }

    pub fn has_analytic(&self) -> bool {
        self.analytic.is_some()
    }

    pub fn coords(&self, s: f64) -> (f64, f64) {
        (self.coords)(s)
    }

    pub fn analytic_jet(&self, s: f64) -> Option<ChartJet> {
        self.analytic.as_ref().map(|j| j(s))
    }

    pub fn with_domain(mut self, s_domain: Interval) -> Self {
        self.s_domain = s_domain;
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn without_analytic(mut self) -> Self {
        self.analytic = None;
        self
    }
}

/// Polynomial `sum c_k s^k` as a jet.
pub fn polynomial_jet(coeffs: &[f64], s: Jet) -> Jet {
    coeffs
        .iter()
        .rev()
        .fold(Jet::constant(0.0), |acc, &c| acc * s + c)
}

//! Scalar and vector primitives, derivative estimation and the tolerance
//! policy.

mod diff;
mod jet;
mod tolerance;
mod vec3;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use diff::{diff, diff_scalar, Order};
pub use jet::{Jet, VecJet};
pub use tolerance::{DerivPath, TolerancePolicy};
pub use vec3::{cross, dot, gram_deviation, Mat3, Vec3};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error("stencil around s = {s} with step {h} leaves the domain [{lo}, {hi}]; shrink h or clip the sample grid")]
    StencilOutOfDomain { s: f64, h: f64, lo: f64, hi: f64 },
    #[error("finite-difference step must be positive and finite, got {0}")]
    InvalidStep(f64),
    #[error("invalid tolerance policy: {0}")]
    InvalidTolerance(String),
    #[error("quadrature failed to converge on [{0}, {1}]")]
    Quadrature(f64, f64),
}

/// Slack used when testing parameter membership, so that grid endpoints
/// computed in floating point are not rejected.
pub const DOMAIN_SLACK: f64 = 1e-12;

/// A closed interval of the real line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const UNBOUNDED: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub const fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, x: f64) -> bool {
        let slack = DOMAIN_SLACK * (1.0 + x.abs());
        x >= self.lo - slack && x <= self.hi + slack
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.contains(other.lo) && self.contains(other.hi)
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        !(self.hi > self.lo)
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    /// Interval shrunk by `margin` on both ends.
    pub fn shrink(&self, margin: f64) -> Interval {
        Interval::new(self.lo + margin, self.hi - margin)
    }

    /// `n >= 2` uniformly spaced samples including both endpoints.
    pub fn samples(&self, n: usize) -> Vec<f64> {
        match n {
            0 => Vec::new(),
            1 => vec![self.mid()],
            _ => {
                let step = self.len() / (n - 1) as f64;
                (0..n)
                    .map(|i| {
                        if i + 1 == n {
                            self.hi
                        } else {
                            self.lo + step * i as f64
                        }
                    })
                    .collect()
            }
        }
    }
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64, NumericsError> {
    #[allow(clippy::too_many_arguments)]
    fn step<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Option<f64> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol || (b - a).abs() < 1e-14 {
            return Some(left + right + delta / 15.0);
        }
        if depth == 0 {
            return None;
        }
        Some(
            step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?
                + step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?,
        )
    }
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 48).ok_or(NumericsError::Quadrature(a, b))
}

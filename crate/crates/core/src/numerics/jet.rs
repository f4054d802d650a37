//! Third-order forward-mode derivatives along one parameter.
//!
//! A [`Jet`] carries `[f, f', f'', f''']` and propagates them exactly through
//! arithmetic and the elementary functions below. Fixtures use jets to build
//! analytic derivatives of composed curves without hand expansion.

use std::ops::{Add, Div, Mul, Neg, Sub};

use super::Vec3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub d: [f64; 4],
}

impl Jet {
    pub const fn new(d: [f64; 4]) -> Self {
        Self { d }
    }

    pub const fn constant(c: f64) -> Self {
        Self::new([c, 0.0, 0.0, 0.0])
    }

    /// The independent variable evaluated at `s`.
    pub const fn variable(s: f64) -> Self {
        Self::new([s, 1.0, 0.0, 0.0])
    }

    pub fn value(self) -> f64 {
        self.d[0]
    }

    /// Composes a scalar function `f` (given by `[f(g), f'(g), f''(g), f'''(g)]`
    /// at the current value) with this jet.
    pub fn compose(self, f: [f64; 4]) -> Jet {
        let [_, g1, g2, g3] = self.d;
        Jet::new([
            f[0],
            f[1] * g1,
            f[2] * g1 * g1 + f[1] * g2,
            f[3] * g1 * g1 * g1 + 3.0 * f[2] * g1 * g2 + f[1] * g3,
        ])
    }

    pub fn sin(self) -> Jet {
        let (s, c) = self.d[0].sin_cos();
        self.compose([s, c, -s, -c])
    }

    pub fn cos(self) -> Jet {
        let (s, c) = self.d[0].sin_cos();
        self.compose([c, -s, -c, s])
    }

    pub fn sinh(self) -> Jet {
        let (s, c) = (self.d[0].sinh(), self.d[0].cosh());
        self.compose([s, c, s, c])
    }

    pub fn cosh(self) -> Jet {
        let (s, c) = (self.d[0].sinh(), self.d[0].cosh());
        self.compose([c, s, c, s])
    }

    pub fn sqrt(self) -> Jet {
        let r = self.d[0].sqrt();
        self.compose([r, 0.5 / r, -0.25 / (r * r * r), 0.375 / (r * r * r * r * r)])
    }

    pub fn recip(self) -> Jet {
        let x = self.d[0];
        let r = 1.0 / x;
        self.compose([r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r])
    }

    pub fn atan(self) -> Jet {
        let x = self.d[0];
        let q = 1.0 / (1.0 + x * x);
        self.compose([
            x.atan(),
            q,
            -2.0 * x * q * q,
            (6.0 * x * x - 2.0) * q * q * q,
        ])
    }

    pub fn powi(self, n: i32) -> Jet {
        let x = self.d[0];
        let nf = n as f64;
        self.compose([
            x.powi(n),
            nf * x.powi(n - 1),
            nf * (nf - 1.0) * x.powi(n - 2),
            nf * (nf - 1.0) * (nf - 2.0) * x.powi(n - 3),
        ])
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet::new(std::array::from_fn(|i| self.d[i] + o.d[i]))
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(mut self, c: f64) -> Jet {
        self.d[0] += c;
        self
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet::new(std::array::from_fn(|i| self.d[i] - o.d[i]))
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(mut self, c: f64) -> Jet {
        self.d[0] -= c;
        self
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet::new(self.d.map(|x| -x))
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let [a0, a1, a2, a3] = self.d;
        let [b0, b1, b2, b3] = o.d;
        Jet::new([
            a0 * b0,
            a1 * b0 + a0 * b1,
            a2 * b0 + 2.0 * a1 * b1 + a0 * b2,
            a3 * b0 + 3.0 * a2 * b1 + 3.0 * a1 * b2 + a0 * b3,
        ])
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, k: f64) -> Jet {
        Jet::new(self.d.map(|x| x * k))
    }
}

impl Mul<Jet> for f64 {
    type Output = Jet;
    fn mul(self, j: Jet) -> Jet {
        j * self
    }
}

impl Div for Jet {
    type Output = Jet;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Jet) -> Jet {
        self * o.recip()
    }
}

impl Div<f64> for Jet {
    type Output = Jet;
    fn div(self, k: f64) -> Jet {
        self * (1.0 / k)
    }
}

/// A vector-valued jet: a curve in 3-space with three derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VecJet {
    pub d: [Vec3; 4],
}

impl VecJet {
    pub const fn new(d: [Vec3; 4]) -> Self {
        Self { d }
    }

    pub fn from_components(x: Jet, y: Jet, z: Jet) -> Self {
        Self::new(std::array::from_fn(|i| Vec3::new(x.d[i], y.d[i], z.d[i])))
    }

    pub fn constant(v: Vec3) -> Self {
        Self::new([v, Vec3::ZERO, Vec3::ZERO, Vec3::ZERO])
    }

    pub fn value(&self) -> Vec3 {
        self.d[0]
    }

    pub fn scale(&self, k: Jet) -> VecJet {
        let [a0, a1, a2, a3] = self.d;
        let [b0, b1, b2, b3] = k.d;
        VecJet::new([
            a0 * b0,
            a1 * b0 + a0 * b1,
            a2 * b0 + 2.0 * b1 * a1 + a0 * b2,
            a3 * b0 + 3.0 * b1 * a2 + 3.0 * b2 * a1 + a0 * b3,
        ])
    }

    pub fn cross(&self, o: &VecJet) -> VecJet {
        let [a0, a1, a2, a3] = self.d;
        let [b0, b1, b2, b3] = o.d;
        VecJet::new([
            a0.cross(b0),
            a1.cross(b0) + a0.cross(b1),
            a2.cross(b0) + 2.0 * a1.cross(b1) + a0.cross(b2),
            a3.cross(b0) + 3.0 * a2.cross(b1) + 3.0 * a1.cross(b2) + a0.cross(b3),
        ])
    }

    pub fn add(&self, o: &VecJet) -> VecJet {
        VecJet::new(std::array::from_fn(|i| self.d[i] + o.d[i]))
    }

    pub fn map(&self, f: impl Fn(Vec3) -> Vec3) -> VecJet {
        VecJet::new(self.d.map(f))
    }
}

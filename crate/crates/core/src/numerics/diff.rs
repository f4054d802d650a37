//! Central finite-difference stencils for vector-valued functions of one
//! variable.

use super::{Interval, NumericsError, Vec3};

/// Derivative order supported by [`diff`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    First,
    Second,
    Third,
}

impl Order {
    pub fn from_int(n: u8) -> Option<Order> {
        match n {
            1 => Some(Order::First),
            2 => Some(Order::Second),
            3 => Some(Order::Third),
            _ => None,
        }
    }
}

/// Central-stencil estimate of the `order`-th derivative of `f` at `s`.
///
/// First and second derivatives use the five-point stencils (truncation error
/// O(h^4)); the third derivative uses the four-point antisymmetric stencil
/// (O(h^2)). Every stencil samples `[s - 2h, s + 2h]`, which must lie inside
/// `domain`.
pub fn diff<F>(f: F, s: f64, order: Order, h: f64, domain: Interval) -> Result<Vec3, NumericsError>
where
    F: Fn(f64) -> Vec3,
{
    if !(h > 0.0 && h.is_finite()) {
        return Err(NumericsError::InvalidStep(h));
    }
    let reach = 2.0 * h;
    if !domain.contains(s - reach) || !domain.contains(s + reach) {
        return Err(NumericsError::StencilOutOfDomain {
            s,
            h,
            lo: domain.lo,
            hi: domain.hi,
        });
    }
    let fm2 = f(s - 2.0 * h);
    let fm1 = f(s - h);
    let fp1 = f(s + h);
    let fp2 = f(s + 2.0 * h);
    Ok(match order {
        Order::First => (fm2 - fp2 + 8.0 * (fp1 - fm1)) / (12.0 * h),
        Order::Second => {
            let f0 = f(s);
            (16.0 * (fp1 + fm1) - (fp2 + fm2) - 30.0 * f0) / (12.0 * h * h)
        }
        Order::Third => (fp2 - fm2 - 2.0 * (fp1 - fm1)) / (2.0 * h * h * h),
    })
}

/// Scalar convenience wrapper around [`diff`].
pub fn diff_scalar<F>(
    f: F,
    s: f64,
    order: Order,
    h: f64,
    domain: Interval,
) -> Result<f64, NumericsError>
where
    F: Fn(f64) -> f64,
{
    diff(|t| Vec3::new(f(t), 0.0, 0.0), s, order, h, domain).map(|v| v.x)
}

#[cfg(test)]
mod tests {
    use super::*;

    const H: f64 = 1e-4;

    #[test]
    fn polynomial_first_derivative() {
        let f = |s: f64| Vec3::new(s, s * s, s * s * s);
        let d = diff(f, 1.0, Order::First, H, Interval::UNBOUNDED).unwrap();
        assert!(d.max_abs_diff(Vec3::new(1.0, 2.0, 3.0)) < 1e-5);
    }

    #[test]
    fn circle_second_derivative() {
        let f = |s: f64| Vec3::new(s.cos(), s.sin(), 0.0);
        let d = diff(f, 0.0, Order::Second, H, Interval::UNBOUNDED).unwrap();
        // analytic: (-cos 0, -sin 0, 0)
        assert!(d.max_abs_diff(Vec3::new(-1.0, 0.0, 0.0)) < 1e-5);
    }

    #[test]
    fn constant_has_zero_derivatives() {
        let f = |_s: f64| Vec3::new(2.0, -1.0, 7.5);
        for order in [Order::First, Order::Second, Order::Third] {
            let d = diff(f, 0.3, order, H, Interval::UNBOUNDED).unwrap();
            assert_eq!(d, Vec3::ZERO);
        }
    }

    #[test]
    fn third_derivative_of_cubic() {
        let f = |s: f64| Vec3::new(s * s * s, 0.0, 0.0);
        let d = diff(f, 0.7, Order::Third, 1e-2, Interval::UNBOUNDED).unwrap();
        assert!((d.x - 6.0).abs() < 1e-8);
    }

    #[test]
    fn stencil_outside_domain_is_rejected() {
        let f = |s: f64| Vec3::new(s, 0.0, 0.0);
        let dom = Interval::new(0.0, 1.0);
        let err = diff(f, 1e-5, Order::First, H, dom).unwrap_err();
        assert!(matches!(err, NumericsError::StencilOutOfDomain { .. }));
        assert!(diff(f, 0.5, Order::First, H, dom).is_ok());
    }

    #[test]
    fn nonpositive_step_is_rejected() {
        let f = |s: f64| Vec3::new(s, 0.0, 0.0);
        assert!(matches!(
            diff(f, 0.0, Order::First, 0.0, Interval::UNBOUNDED),
            Err(NumericsError::InvalidStep(_))
        ));
    }
}

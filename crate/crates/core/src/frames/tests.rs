use std::sync::Arc;

use super::*;
use crate::numerics::Interval;
use crate::surfaces::catalog;

const TOL_ALG: f64 = 1e-9;
const TOL_FD: f64 = 1e-5;

fn policy() -> TolerancePolicy {
    TolerancePolicy::default()
}

fn helix_345() -> (SurfaceCurve, SurfacePatch) {
    (
        curve_catalog("helix", &[3.0, 4.0]).unwrap(),
        catalog("cylinder", &[3.0]).unwrap(),
    )
}

#[test]
fn embed_examples() {
    let plane = catalog("plane", &[]).unwrap();
    let c = curve_catalog("line", &[0.0, 0.0, 1.0, 0.0]).unwrap();
    assert_eq!(embed(&c, &plane, 0.7).unwrap(), Vec3::new(0.7, 0.0, 0.0));

    let cyl = catalog("cylinder", &[1.0]).unwrap();
    let c = curve_catalog("line", &[0.0, 0.0, 0.6, 0.8]).unwrap();
    assert!(embed(&c, &cyl, 0.0).unwrap().max_abs_diff(Vec3::X) < TOL_ALG);

    let cone = catalog("cone", &[1.0]).unwrap();
    let c = curve_catalog("line", &[0.3, 1.0, 0.5, 0.5]).unwrap();
    let (u, v) = c.coords(0.4);
    let expect = Vec3::new(v * u.cos(), v * u.sin(), v);
    assert!(embed(&c, &cone, 0.4).unwrap().max_abs_diff(expect) < TOL_ALG);
}

#[test]
fn embed_rejects_parameters_outside_the_curve() {
    let plane = catalog("plane", &[]).unwrap();
    let c = curve_catalog("line", &[0.0, 0.0, 1.0, 0.0]).unwrap();
    assert!(matches!(
        embed(&c, &plane, 3.0),
        Err(FrameError::OutOfParameterDomain { .. })
    ));
}

#[test]
fn unit_speed_examples() {
    let pol = policy();
    let plane = catalog("plane", &[]).unwrap();
    let line = curve_catalog("line", &[0.0, 0.0, 1.0, 0.0]).unwrap();
    let grid = sample_grid(&line, &plane, 21, &pol);
    let r = unit_speed_check(&line, &plane, &grid, TOL_FD, &pol).unwrap();
    assert!(r.pass && r.max_deviation < TOL_ALG);

    let (h, cyl) = helix_345();
    let grid = sample_grid(&h, &cyl, 41, &pol);
    assert!(
        unit_speed_check(&h, &cyl, &grid, TOL_FD, &pol)
            .unwrap()
            .pass
    );

    let fast = curve_catalog("line", &[0.0, 0.0, 2.0, 0.0]).unwrap();
    let r = unit_speed_check(&fast, &plane, &grid_of(&fast), TOL_FD, &pol).unwrap();
    assert!(!r.pass);
    assert!((r.max_deviation - 1.0).abs() < TOL_ALG);
}

fn grid_of(c: &SurfaceCurve) -> Vec<f64> {
    c.s_domain().samples(11)
}

#[test]
fn helix_frenet_closed_form() {
    let pol = policy();
    let (h, cyl) = helix_345();
    for &s in &[-4.0, 0.0, 1.0, 7.5] {
        let f = frenet(&h, &cyl, s, &pol).unwrap();
        assert!((f.kappa - 0.12).abs() < TOL_ALG);
        assert!((f.tau - 0.16).abs() < TOL_ALG);
        assert!(f.gram_deviation() < TOL_ALG);
        assert_eq!(f.path, DerivPath::Analytic);
    }
}

#[test]
fn helix_frenet_numeric_route() {
    let pol = policy();
    let (h, cyl) = helix_345();
    let (h, cyl) = (h.without_analytic(), cyl.without_analytic());
    let f = frenet(&h, &cyl, 1.0, &pol).unwrap();
    assert_eq!(f.path, DerivPath::Numeric);
    assert!((f.kappa - 0.12).abs() < TOL_FD);
    assert!((f.tau - 0.16).abs() < pol.tol_torsion_fd);
}

#[test]
fn torsion_is_negative_binormal_derivative() {
    let pol = policy();
    let (h, cyl) = helix_345();
    let s = 0.8;
    let b = |t: f64| frenet(&h, &cyl, t, &pol).unwrap().b;
    let db = diff(b, s, Order::First, 1e-3, h.s_domain()).unwrap();
    let f = frenet(&h, &cyl, s, &pol).unwrap();
    assert!((-db.dot(f.n) - f.tau).abs() < 1e-8);
}

#[test]
fn planar_circle_and_line() {
    let pol = policy();
    let plane = catalog("plane", &[]).unwrap();
    let c = curve_catalog("circle", &[1.0]).unwrap();
    let f = frenet(&c, &plane, 0.3, &pol).unwrap();
    assert!((f.kappa - 1.0).abs() < TOL_ALG);
    assert!(f.tau.abs() < TOL_ALG);

    let line = curve_catalog("line", &[0.0, 0.0, 0.6, 0.8]).unwrap();
    assert!(matches!(
        frenet(&line, &plane, 0.0, &pol),
        Err(FrameError::CurvatureDegenerate { .. })
    ));
}

#[test]
fn frenet_requires_unit_speed() {
    let pol = policy();
    let plane = catalog("plane", &[]).unwrap();
    let c = curve_catalog("circle", &[1.0]).unwrap();
    let slow = SurfaceCurve::from_jets("slow circle", Interval::new(-1.0, 1.0), |t| {
        let s = t * 2.0;
        (s.cos(), s.sin())
    });
    assert!(frenet(&c, &plane, 0.0, &pol).is_ok());
    assert!(matches!(
        frenet(&slow, &plane, 0.0, &pol),
        Err(FrameError::NotUnitSpeed { .. })
    ));
}

#[test]
fn helix_is_geodesic_on_its_cylinder() {
    let pol = policy();
    let (h, cyl) = helix_345();
    let d = darboux(&h, &cyl, 1.0, &pol).unwrap();
    assert!(d.k_g.abs() < TOL_ALG);
    assert!((d.k_n.abs() - 0.12).abs() < TOL_ALG);
    assert!(d.p_cross_deviation < TOL_ALG);
}

#[test]
fn great_circle_on_sphere() {
    let pol = policy();
    let sphere = catalog("sphere", &[]).unwrap();
    let c = curve_catalog("great-circle", &[]).unwrap();
    let d = darboux(&c, &sphere, 0.5, &pol).unwrap();
    assert!(d.k_g.abs() < TOL_ALG);
    assert!((d.k_n.abs() - 1.0).abs() < TOL_ALG);
}

fn generic_fixtures() -> Vec<(SurfaceCurve, SurfacePatch)> {
    let pol = policy();
    let monge = catalog(
        "monge",
        &[0.0, 0.1, -0.2, 0.3, 0.2, -0.4, 0.05, 0.0, 0.1, -0.03],
    )
    .unwrap();
    let raw = SurfaceCurve::from_jets("wiggle", Interval::new(-1.0, 1.0), |t| {
        (t * 0.8 + 0.1, (t * 1.3).sin() * 0.5)
    });
    let wiggle = arc_length_reparam(&raw, &monge, &pol).unwrap();
    let (h, cyl) = helix_345();
    let sphere = catalog("sphere", &[1.5]).unwrap();
    let small = SurfaceCurve::from_jets("latitude", Interval::new(-2.0, 2.0), |s| {
        (s * (1.0 / (1.5 * 0.4f64.cos())), Jet::constant(0.4))
    });
    vec![(wiggle, monge), (h, cyl), (small, sphere)]
}

#[test]
fn darboux_invariants_on_generic_curves() {
    let pol = policy();
    for (c, p) in generic_fixtures() {
        for s in sample_grid(&c, &p, 17, &pol) {
            let d = darboux(&c, &p, s, &pol).unwrap();
            let pt = trace(&c, &p, s, &pol).unwrap();
            let tol = pol.identity_tol(d.path);
            assert!(d.gram_deviation() < tol, "{} gram at {s}", c.name());
            assert!(d.p_cross_deviation < tol, "{} P at {s}", c.name());
            assert!((d.k_n * d.k_n + d.k_g * d.k_g - d.kappa * d.kappa).abs() < tol);
            let split = d.u * d.k_n + d.p * d.k_g;
            assert!(split.max_abs_diff(pt.d2) < tol, "{} split at {s}", c.name());

            let f = frenet_at(&pt, &pol).unwrap();
            let rel = frame_relation_check(Some(&f), &d);
            assert_eq!(rel.status, CheckStatus::Checked);
            assert!(
                rel.max_deviation < tol,
                "{} rotation at {s}: {}",
                c.name(),
                rel.max_deviation
            );
            let (sin, cos) = d.rotation().unwrap();
            assert!((d.k_g - d.kappa * cos).abs() < tol);
            assert!((d.k_n + d.kappa * sin).abs() < tol);
        }
    }
}

#[test]
fn geodesic_point_rotation() {
    let pol = policy();
    let (h, cyl) = helix_345();
    let d = darboux(&h, &cyl, 1.0, &pol).unwrap();
    let f = frenet(&h, &cyl, 1.0, &pol).unwrap();
    let theta = d.theta.unwrap();
    assert!((theta.abs() - std::f64::consts::FRAC_PI_2).abs() < TOL_ALG);
    // P = sin(theta) B and U = -sin(theta) N
    let sign = theta.signum();
    assert!(d.p.max_abs_diff(f.b * sign) < TOL_ALG);
    assert!(d.u.max_abs_diff(f.n * -sign) < TOL_ALG);
    assert!(frame_relation_check(Some(&f), &d).max_deviation < TOL_ALG);
}

#[test]
fn asymptotic_point_rotation() {
    let pol = policy();
    let plane = catalog("plane", &[]).unwrap();
    let c = curve_catalog("circle", &[2.0]).unwrap();
    let d = darboux(&c, &plane, 0.4, &pol).unwrap();
    let f = frenet(&c, &plane, 0.4, &pol).unwrap();
    assert!(d.theta.unwrap().abs() < TOL_ALG);
    assert!(d.p.max_abs_diff(f.n) < TOL_ALG);
    assert!(d.u.max_abs_diff(f.b) < TOL_ALG);
}

#[test]
fn relation_check_skips_without_frenet_frame() {
    let pol = policy();
    let plane = catalog("plane", &[]).unwrap();
    let line = curve_catalog("line", &[0.0, 0.0, 1.0, 0.0]).unwrap();
    let d = darboux(&line, &plane, 0.0, &pol).unwrap();
    assert!(d.theta.is_none());
    let r = frame_relation_check(None, &d);
    assert_eq!(r.status, CheckStatus::Skipped);
    assert!(r.reason.is_some());
}

#[test]
fn darboux_rejects_degenerate_patch_points() {
    let pol = policy();
    let cone = catalog("cone", &[1.0, 0.0, 2.0]).unwrap();
    let c = SurfaceCurve::from_jets("toward apex", Interval::new(-1.0, 0.0), |s| {
        (Jet::constant(0.0), -s * (0.5f64).sqrt())
    });
    assert!(matches!(
        darboux(&c, &cone, 0.0, &pol),
        Err(FrameError::Surface(SurfaceError::Degenerate { .. }))
    ));
}

#[test]
fn helix_right_handed_torsion_positive() {
    let pol = policy();
    let (h, cyl) = helix_345();
    for s in sample_grid(&h, &cyl, 9, &pol) {
        assert!(frenet(&h, &cyl, s, &pol).unwrap().tau > 0.0);
    }
}

#[test]
fn reparam_of_unit_speed_curve_is_identity() {
    let pol = policy();
    let (h, cyl) = helix_345();
    let r = arc_length_reparam(&h, &cyl, &pol).unwrap();
    assert!((r.s_domain().len() - h.s_domain().len()).abs() < TOL_FD);
    for s in r.s_domain().samples(13) {
        let (u0, v0) = h.coords(s + h.s_domain().lo);
        let (u1, v1) = r.coords(s);
        assert!((u0 - u1).abs().max((v0 - v1).abs()) < TOL_FD);
    }
}

#[test]
fn reparam_linear_rescale() {
    let pol = policy();
    let plane = catalog("plane", &[]).unwrap();
    let c = curve_catalog("line", &[0.0, 0.0, 2.0, 0.0]).unwrap();
    let r = arc_length_reparam(&c, &plane, &pol).unwrap();
    assert!((r.s_domain().hi - 4.0).abs() < TOL_ALG);
    for s in r.s_domain().samples(9) {
        let (u, v) = r.coords(s);
        assert!((u - (s - 2.0)).abs() < TOL_FD && v.abs() < TOL_ALG);
    }
    let grid = sample_grid(&r, &plane, 21, &pol);
    assert!(
        unit_speed_check(&r, &plane, &grid, TOL_FD, &pol)
            .unwrap()
            .pass
    );
}

#[test]
fn reparam_circle_gives_unit_speed_circle() {
    let pol = policy();
    let plane = catalog("plane", &[]).unwrap();
    let r0 = 1.7;
    let c = SurfaceCurve::from_jets("circle(t)", Interval::new(0.0, 2.0), move |t| {
        (t.cos() * r0, t.sin() * r0)
    });
    let r = arc_length_reparam(&c, &plane, &pol).unwrap();
    assert!((r.s_domain().hi - 2.0 * r0).abs() < TOL_FD);
    for s in sample_grid(&r, &plane, 15, &pol) {
        let (u, v) = r.coords(s);
        let t = s / r0;
        assert!((u - r0 * t.cos()).abs().max((v - r0 * t.sin()).abs()) < TOL_FD);
        let f = frenet(&r, &plane, s, &pol).unwrap();
        assert!((f.kappa - 1.0 / r0).abs() < TOL_FD);
    }
}

#[test]
fn reparam_numeric_curve() {
    let pol = policy();
    let plane = catalog("plane", &[]).unwrap();
    let c = SurfaceCurve::numeric(
        "numeric circle",
        Interval::new(0.0, 2.0),
        Arc::new(|t: f64| (3.0 * t.cos(), 3.0 * t.sin())),
    );
    let r = arc_length_reparam(&c, &plane, &pol).unwrap();
    assert!(!r.has_analytic());
    let grid = sample_grid(&r, &plane, 11, &pol);
    assert!(
        unit_speed_check(&r, &plane, &grid, TOL_FD, &pol)
            .unwrap()
            .pass
    );
}

#[test]
fn reparam_rejects_singular_parametrization() {
    let pol = policy();
    let plane = catalog("plane", &[]).unwrap();
    let c = SurfaceCurve::from_jets("cusp", Interval::new(-1.0, 1.0), |t| (t * t * t, t * t));
    assert!(matches!(
        arc_length_reparam(&c, &plane, &pol),
        Err(FrameError::SingularParametrization { .. })
    ));
}

#[test]
fn numeric_and_analytic_darboux_agree() {
    let pol = policy();
    for (c, p) in generic_fixtures() {
        let (cn, pn) = (c.clone().without_analytic(), p.clone().without_analytic());
        for s in sample_grid(&cn, &pn, 7, &pol) {
            let a = darboux(&c, &p, s, &pol).unwrap();
            let n = darboux(&cn, &pn, s, &pol).unwrap();
            assert!((a.k_n - n.k_n).abs() < 1e-4, "{} k_n at {s}", c.name());
            assert!((a.k_g - n.k_g).abs() < 1e-4, "{} k_g at {s}", c.name());
        }
    }
}

#[test]
fn catalog_rejects_bad_parameters() {
    assert!(matches!(
        curve_catalog("spiral", &[]),
        Err(FrameError::UnknownCurve(_))
    ));
    assert!(matches!(
        curve_catalog("circle", &[-1.0]),
        Err(FrameError::InvalidCurve { .. })
    ));
    assert!(matches!(
        curve_catalog("line", &[0.0, 0.0, 0.0, 0.0]),
        Err(FrameError::InvalidCurve { .. })
    ));
    assert!(matches!(
        curve_catalog("helix", &[1.0, f64::NAN]),
        Err(FrameError::InvalidCurve { .. })
    ));
}

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::frames::{curve_catalog, sample_grid, unit_speed_check};
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

fn dilated() -> (SurfaceCurve, SurfacePatch) {
    fixture_rectifying(&DilatedSphericalParams::default(), &policy()).unwrap()
}

fn profile() -> SphericalProfile {
    SphericalProfile {
        colatitude: 1.0,
        axis: [0.3, -1.0, 0.4],
        angle: 0.6,
    }
}

const LINE: ConeLine = ConeLine { a: 1.2, t0: 0.3 };

fn ruled(beta: f64) -> (SurfaceCurve, SurfacePatch) {
    ruled_through_cone_line(&profile(), LINE, beta, Interval::new(-1.5, 1.5), 0.3)
}

/// Rectifying fixtures of every class: (name, curve, patch, expected tag).
fn rectifying_fixtures() -> Vec<(&'static str, SurfaceCurve, SurfacePatch, ClassTag)> {
    let (c, p) = dilated();
    let (ca, pa) = ruled(0.0);
    let (cg, pg) = ruled(0.7);
    let (cc, pc) = ruled(FRAC_PI_2);
    vec![
        ("dilated", c, p, ClassTag::Geodesic),
        ("ruled asymptotic", ca, pa, ClassTag::Asymptotic),
        ("ruled generic", cg, pg, ClassTag::Generic),
        ("ruled cone", cc, pc, ClassTag::Geodesic),
    ]
}

#[test]
fn helix_residual_is_minus_radius() {
    let pol = policy();
    let (h, cyl) = helix_345();
    for s in sample_grid(&h, &cyl, 21, &pol) {
        let d = decompose(&h, &cyl, s, &pol).unwrap();
        assert!((d.residual + 3.0).abs() < TOL_ALG);
        assert!(!d.is_rectifying(pol.tol_rect));
        assert!(d.expansion_error < TOL_ALG);
        assert!(d.split_deviation < TOL_ALG);
    }
}

#[test]
fn helix_closed_forms_refuse_non_rectifying_input() {
    let pol = policy();
    let (h, cyl) = helix_345();
    assert!(matches!(
        component_chart(&h, &cyl, 0.5, &pol),
        Err(RectError::NotRectifying { .. })
    ));
    assert!(matches!(
        component_normal(&h, &cyl, 0.5, &pol),
        Err(RectError::NotRectifying { .. })
    ));
    assert!(matches!(
        reconstruct(&h, &cyl, 0.5, ClassTag::Geodesic, &pol),
        Err(RectError::NotRectifying { .. })
    ));
}

#[test]
fn decompose_requires_frenet_frame() {
    let pol = policy();
    let plane = catalog("plane", &[]).unwrap();
    let line = curve_catalog("line", &[0.0, 0.0, 1.0, 0.0]).unwrap();
    assert!(matches!(
        decompose(&line, &plane, 0.0, &pol),
        Err(RectError::Frame(FrameError::CurvatureDegenerate { .. }))
    ));
}

#[test]
fn expansion_is_exact_off_rectifying_curves() {
    let pol = policy();
    let sphere = catalog("sphere", &[1.5]).unwrap();
    let lat = SurfaceCurve::from_jets("latitude", Interval::new(-2.0, 2.0), |s| {
        (
            s * (1.0 / (1.5 * 0.4f64.cos())),
            crate::numerics::Jet::constant(0.4),
        )
    });
    for s in sample_grid(&lat, &sphere, 11, &pol) {
        let d = decompose(&lat, &sphere, s, &pol).unwrap();
        assert!(d.expansion_error < TOL_ALG);
        assert!(d.split_deviation < TOL_ALG);
    }
}

#[test]
fn dilated_fixture_is_rectifying_and_unit_speed() {
    let pol = policy();
    let (c, p) = dilated();
    let grid = sample_grid(&c, &p, 41, &pol);
    assert!(unit_speed_check(&c, &p, &grid, TOL_FD, &pol).unwrap().pass);
    assert!(max_residual(&c, &p, &grid, &pol).unwrap() <= pol.tol_rect);
}

#[test]
fn dilated_fixture_with_finite_difference_frames() {
    // second differences lose about eps / h^2; far from the apex the curvature
    // is small and divides that error, so the oracle uses a coarser step
    let pol = TolerancePolicy {
        h_fd: 1e-3,
        ..policy()
    };
    let (c, p) = dilated();
    let (cn, pn) = (c.without_analytic(), p.without_analytic());
    let grid = sample_grid(&cn, &pn, 21, &pol);
    assert!(max_residual(&cn, &pn, &grid, &pol).unwrap() <= 1e-5);
}

#[test]
fn dilated_fixture_matches_closed_form_cone_line() {
    // the arc-length table starts at t = t_lo, the closed form at t = 0
    let params = DilatedSphericalParams::default();
    let Dilation::Secant { a, t0 } = params.dilation else {
        unreachable!()
    };
    let line = ConeLine { a, t0 };
    let offset = line.s_of_t(params.t_range.lo);
    let (c, _) = dilated();
    assert!((c.s_domain().hi - (line.s_of_t(params.t_range.hi) - offset)).abs() < TOL_FD);
    for s in c.s_domain().samples(17) {
        let (u, v) = c.coords(s);
        let (eu, ev) = line.chart(crate::numerics::Jet::variable(s + offset));
        assert!((u - eu.value()).abs() < TOL_FD, "u at {s}");
        assert!((v - ev.value()).abs() < TOL_FD, "v at {s}");
    }
}

#[test]
fn tilted_profile_fixture() {
    let pol = policy();
    let params = DilatedSphericalParams {
        profile: profile(),
        dilation: Dilation::Secant { a: 0.8, t0: -0.4 },
        t_range: Interval::new(-0.7, 1.2),
    };
    let (c, p) = fixture_rectifying(&params, &pol).unwrap();
    let grid = sample_grid(&c, &p, 33, &pol);
    assert!(max_residual(&c, &p, &grid, &pol).unwrap() <= pol.tol_rect);
}

#[test]
fn great_circle_profile_is_rejected_as_degenerate() {
    let pol = policy();
    let params = DilatedSphericalParams {
        profile: SphericalProfile {
            colatitude: FRAC_PI_2,
            axis: [1.0, 0.0, 0.0],
            angle: 0.3,
        },
        ..Default::default()
    };
    assert!(matches!(
        fixture_rectifying(&params, &pol),
        Err(RectError::Fixture(_))
    ));
}

#[test]
fn constant_dilation_is_rejected() {
    let pol = policy();
    let params = DilatedSphericalParams {
        dilation: Dilation::Constant { c: 2.0 },
        ..Default::default()
    };
    match fixture_rectifying(&params, &pol) {
        Err(RectError::NotRectifying { residual, .. }) => assert!(residual > 0.1),
        other => panic!("expected rejection, got {other:?}"),
    }
}

#[test]
fn fixture_rejects_apex_and_bad_ranges() {
    let pol = policy();
    let near_apex = DilatedSphericalParams {
        dilation: Dilation::Secant { a: 0.0, t0: 0.0 },
        ..Default::default()
    };
    assert!(matches!(
        fixture_rectifying(&near_apex, &pol),
        Err(RectError::Fixture(_))
    ));
    let past_asymptote = DilatedSphericalParams {
        t_range: Interval::new(-1.0, 1.5),
        ..Default::default()
    };
    assert!(matches!(
        fixture_rectifying(&past_asymptote, &pol),
        Err(RectError::Fixture(_))
    ));
}

#[test]
fn classify_examples() {
    let pol = policy();
    let (h, cyl) = helix_345();
    let grid = sample_grid(&h, &cyl, 21, &pol);
    assert_eq!(
        classify(&h, &cyl, &grid, &pol).unwrap().tag,
        ClassTag::Geodesic
    );

    let plane = catalog("plane", &[]).unwrap();
    let circle = curve_catalog("circle", &[1.5]).unwrap();
    let grid = sample_grid(&circle, &plane, 21, &pol);
    assert_eq!(
        classify(&circle, &plane, &grid, &pol).unwrap().tag,
        ClassTag::Asymptotic
    );

    // a straight line has k_n = k_g = 0 but no Frenet frame
    let line = curve_catalog("line", &[0.0, 0.0, 0.6, 0.8]).unwrap();
    let grid = sample_grid(&line, &plane, 11, &pol);
    let c = classify(&line, &plane, &grid, &pol).unwrap();
    assert_eq!(c.tag, ClassTag::Degenerate);
    assert!(c.geodesic_evidence() && c.asymptotic_evidence());

    // a cylinder ruling is a straight line as well
    let ruling = curve_catalog("line", &[0.0, 0.0, 0.0, 1.0]).unwrap();
    let grid = sample_grid(&ruling, &cyl, 11, &pol);
    assert_eq!(
        classify(&ruling, &cyl, &grid, &pol).unwrap().tag,
        ClassTag::Degenerate
    );

    for (name, c, p, tag) in rectifying_fixtures() {
        let grid = sample_grid(&c, &p, 33, &pol);
        assert_eq!(classify(&c, &p, &grid, &pol).unwrap().tag, tag, "{name}");
    }
}

#[test]
fn ruled_fixtures_are_unit_speed_and_rectifying() {
    let pol = policy();
    for beta in [0.0, 0.7, FRAC_PI_4, FRAC_PI_2] {
        let (c, p) = ruled(beta);
        let grid = sample_grid(&c, &p, 33, &pol);
        assert!(unit_speed_check(&c, &p, &grid, TOL_ALG, &pol).unwrap().pass);
        assert!(max_residual(&c, &p, &grid, &pol).unwrap() <= pol.tol_rect);
    }
}

#[test]
fn reconstruction_matches_position() {
    let pol = policy();
    for (name, c, p, tag) in rectifying_fixtures() {
        for s in sample_grid(&c, &p, 25, &pol) {
            let smp = sample(&c, &p, s, &pol).unwrap();
            let r = reconstruct_at(&smp, tag, &pol).unwrap();
            assert!(
                r.max_abs_diff(smp.position()) <= 10.0 * pol.tol_rect,
                "{name} at {s}"
            );
            // the general form agrees in the special cases too
            let g = reconstruct_at(&smp, ClassTag::Generic, &pol).unwrap();
            assert!(
                g.max_abs_diff(smp.position()) <= 10.0 * pol.tol_rect,
                "{name} generic form at {s}"
            );
        }
    }
}

#[test]
fn reconstruction_rejects_class_mismatch() {
    let pol = policy();
    let (c, p) = ruled(0.7);
    assert!(matches!(
        reconstruct(&c, &p, 0.0, ClassTag::Geodesic, &pol),
        Err(RectError::ClassMismatch { .. })
    ));
    assert!(matches!(
        reconstruct(&c, &p, 0.0, ClassTag::Asymptotic, &pol),
        Err(RectError::ClassMismatch { .. })
    ));
    assert!(matches!(
        reconstruct(&c, &p, 0.0, ClassTag::Degenerate, &pol),
        Err(RectError::ClassMismatch { .. })
    ));
}

#[test]
fn closed_forms_hold_on_rectifying_samples() {
    let pol = policy();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, c, p, _) in rectifying_fixtures() {
        for s in sample_grid(&c, &p, 9, &pol) {
            let smp = sample(&c, &p, s, &pol).unwrap();
            let chart = component_chart_at(&smp, &pol).unwrap();
            assert!(chart.pass(), "{name} chart at {s}: {chart:?}");
            let n = component_normal_at(&smp, &pol).unwrap();
            assert!(n.pass, "{name} normal at {s}: {n:?}");
            for _ in 0..20 {
                let (a, b) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
                let t = component_tangent_at(&smp, a, b, &pol).unwrap();
                assert!(t.pass, "{name} tangent at {s}: {t:?}");
                let q = component_p_at(&smp, a, b, &pol).unwrap();
                assert!(q.pass, "{name} P at {s}: {q:?}");
            }
        }
    }
}

#[test]
fn closed_form_special_cases() {
    let pol = policy();
    // geodesic: gamma . U vanishes and the chart forms carry the full mu
    let (c, p) = dilated();
    let smp = sample(&c, &p, 0.7, &pol).unwrap();
    assert!((smp.sin_theta().abs() - 1.0).abs() < TOL_ALG);
    assert!(component_normal_at(&smp, &pol).unwrap().direct.abs() < TOL_FD);

    // asymptotic: the (F^2 - GE) terms drop out and gamma . U = +-mu
    let (c, p) = ruled(0.0);
    let smp = sample(&c, &p, 0.4, &pol).unwrap();
    assert!(smp.sin_theta().abs() < TOL_ALG);
    let (du, dv) = smp.point.chart_velocity();
    let ff = smp.point.surface.first_form();
    let chart = component_chart_at(&smp, &pol).unwrap();
    assert!((chart.along_u.closed_form - smp.lambda() * (du * ff.e + dv * ff.f)).abs() < TOL_ALG);
    assert!((chart.along_v.closed_form - smp.lambda() * (du * ff.f + dv * ff.g)).abs() < TOL_ALG);
    let n = component_normal_at(&smp, &pol).unwrap();
    assert!((n.direct.abs() - smp.mu().abs()).abs() < TOL_FD);
}

#[test]
fn tangent_component_basis_and_linearity() {
    let pol = policy();
    let (c, p) = ruled(0.7);
    let smp = sample(&c, &p, 0.2, &pol).unwrap();
    let chart = component_chart_at(&smp, &pol).unwrap();
    let e1 = component_tangent_at(&smp, 1.0, 0.0, &pol).unwrap();
    let e2 = component_tangent_at(&smp, 0.0, 1.0, &pol).unwrap();
    let both = component_tangent_at(&smp, 1.0, 1.0, &pol).unwrap();
    assert!((e1.direct - chart.along_u.direct).abs() < TOL_ALG);
    assert!((e2.direct - chart.along_v.direct).abs() < TOL_ALG);
    assert!((both.direct - e1.direct - e2.direct).abs() < TOL_ALG);
    assert!(matches!(
        component_tangent_at(&smp, 0.0, 0.0, &pol),
        Err(RectError::ZeroTangent)
    ));
}

#[test]
fn conormal_component_on_orthonormal_chart() {
    let pol = policy();
    let plane = catalog("plane", &[]).unwrap();
    let circle = curve_catalog("circle", &[1.0, 0.5, -0.2]).unwrap();
    let smp = sample(&circle, &plane, 0.3, &pol).unwrap();
    let r = component_p_at(&smp, 1.0, 0.0, &pol).unwrap();
    assert!(r.pass);
    assert!((r.closed_form - smp.position().dot(Vec3::Y)).abs() < TOL_ALG);
    assert!(matches!(
        component_p_at(&smp, 0.0, 0.0, &pol),
        Err(RectError::ZeroTangent)
    ));
}

#[test]
fn darboux_split_of_rectifying_position() {
    let pol = policy();
    for (name, c, p, _) in rectifying_fixtures() {
        for s in sample_grid(&c, &p, 9, &pol) {
            let d = decompose(&c, &p, s, &pol).unwrap();
            assert!(d.split_deviation < TOL_ALG, "{name} at {s}");
        }
    }
}

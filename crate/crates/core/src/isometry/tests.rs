use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::frames::{curve_catalog, sample_grid};

const TOL_ALG: f64 = 1e-9;

fn policy() -> TolerancePolicy {
    TolerancePolicy::default()
}

#[test]
fn canonical_pairs_are_isometric() {
    let pol = policy();
    for (name, params) in [
        ("plane-cylinder", vec![]),
        ("plane-cylinder", vec![3.0]),
        ("helicoid-catenoid", vec![]),
        ("helicoid-catenoid", vec![0.5]),
        ("plane-cone", vec![]),
        ("plane-cone", vec![2.0]),
    ] {
        let pair = canonical_pair(name, &params).unwrap();
        let r = metric_deviation(&pair, &pair.default_grid(), pol.tol_iso).unwrap();
        assert!(r.pass, "{name} {params:?}: {r:?}");
    }
}

#[test]
fn plane_cylinder_metric_is_exact() {
    let pair = canonical_pair("plane-cylinder", &[]).unwrap();
    let r = metric_deviation(&pair, &pair.default_grid(), 0.0).unwrap();
    assert!(r.max_deviation < 1e-15);
}

#[test]
fn helicoid_catenoid_metric_closed_form() {
    let pair = canonical_pair("helicoid-catenoid", &[]).unwrap();
    for (u, v) in pair.domain().grid(7, 7) {
        let c2 = v.cosh().powi(2);
        for p in [pair.source(), pair.target()] {
            let ff = p.first_form(u, v).unwrap();
            assert!(
                (ff.e - c2).abs() < TOL_ALG * c2
                    && ff.f.abs() < TOL_ALG
                    && (ff.g - c2).abs() < TOL_ALG * c2
            );
        }
    }
}

#[test]
fn plane_sphere_is_rejected() {
    let pol = policy();
    let pair = canonical_pair("plane-sphere", &[]).unwrap();
    let r = metric_deviation(&pair, &pair.default_grid(), pol.tol_iso).unwrap();
    assert!(!r.pass);
    assert!(r.max_deviation > 0.5);
}

#[test]
fn numeric_route_metric() {
    let pair = canonical_pair("helicoid-catenoid", &[])
        .unwrap()
        .without_analytic();
    let dom = pair.domain();
    let inner = Domain::new(dom.u.shrink(0.01), dom.v.shrink(0.01));
    let r = metric_deviation(&pair, &inner.grid(9, 9), 1e-5).unwrap();
    assert!(r.pass, "{r:?}");
}

#[test]
fn pushforward_examples() {
    let pair = canonical_pair("plane-cylinder", &[]).unwrap();
    let w = pushforward(&pair, 1.0, 0.0, 0.0, 0.0).unwrap();
    assert!(w.source.max_abs_diff(Vec3::X) < TOL_ALG);
    assert!(w.target.max_abs_diff(Vec3::Y) < TOL_ALG);
    assert!((w.source.norm() - 1.0).abs() < TOL_ALG && (w.target.norm() - 1.0).abs() < TOL_ALG);

    let z = pushforward(&pair, 0.0, 0.0, 0.3, 0.2).unwrap();
    assert_eq!(z.source, Vec3::ZERO);
    assert_eq!(z.target, Vec3::ZERO);

    assert!(pushforward(&pair, 1.0, 1.0, 10.0, 0.0).is_err());
}

#[test]
fn pushforward_preserves_inner_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in ["plane-cylinder", "helicoid-catenoid", "plane-cone"] {
        let pair = canonical_pair(name, &[]).unwrap();
        let d = pair.domain();
        for _ in 0..20 {
            let (u, v) = (rng.gen_range(d.u.lo..d.u.hi), rng.gen_range(d.v.lo..d.v.hi));
            for _ in 0..20 {
                let w1 = pushforward(
                    &pair,
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                    u,
                    v,
                )
                .unwrap();
                let w2 = pushforward(
                    &pair,
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                    u,
                    v,
                )
                .unwrap();
                let scale = 1.0 + w1.source.norm_squared() + w2.source.norm_squared();
                assert!(w1.length_deviation() < TOL_ALG * scale, "{name}");
                assert!(
                    inner_product_deviation(&w1, &w2) < TOL_ALG * scale,
                    "{name}"
                );
            }
        }
    }
}

#[test]
fn transfer_plane_lines_to_cylinder() {
    let pol = policy();
    let pair = canonical_pair("plane-cylinder", &[]).unwrap();
    let directrix = curve_catalog("line", &[0.0, 0.0, 1.0, 0.0]).unwrap();
    let (image, report) = transfer_curve(&pair, &directrix, &pol).unwrap();
    assert!(report.source.pass && report.target.pass);
    assert_eq!(image.coords(0.5), directrix.coords(0.5));

    let slanted = curve_catalog("line", &[0.0, 0.0, 0.6, 0.8]).unwrap();
    let grid = sample_grid(&slanted, pair.source(), 21, &pol);
    let r = geodesic_preservation_check(&pair, &slanted, &grid, &pol).unwrap();
    assert!(r.pass, "{r:?}");
    assert_eq!(r.target_class.tag, crate::rectifying::ClassTag::Geodesic);
    assert!(r.target_class.max_abs_kg < TOL_ALG);
    assert!(r.kg_invariant);
}

#[test]
fn helicoid_curves_transfer_with_equal_speed() {
    let pol = policy();
    let pair = canonical_pair("helicoid-catenoid", &[]).unwrap();
    let ruling = curve_catalog("line", &[0.3, 0.0, 0.0, 1.0, -1.5, 1.5]).unwrap();
    // the ruling has speed cosh(v) on both surfaces
    let (_, r) = transfer_curve(&pair, &ruling, &pol).unwrap();
    assert!(!r.source.pass);
    assert!((r.source.max_deviation - (1.5f64.cosh() - 1.0)).abs() < TOL_ALG);
    assert!((r.source.max_deviation - r.target.max_deviation).abs() < TOL_ALG);

    let v0 = 0.5f64;
    let helix = curve_catalog("line", &[0.0, v0, 1.0 / v0.cosh(), 0.0, -2.0, 2.0]).unwrap();
    let (_, r) = transfer_curve(&pair, &helix, &pol).unwrap();
    assert!(r.source.pass && r.target.pass);
    assert!((r.source.max_deviation - r.target.max_deviation).abs() < TOL_ALG);
}

#[test]
fn geodesic_curvature_is_intrinsic() {
    let pol = policy();
    let pair = canonical_pair("plane-cylinder", &[]).unwrap();
    let r0 = 0.8;
    let circle = curve_catalog("circle", &[r0, 0.5, 1.0]).unwrap();
    let grid = sample_grid(&circle, pair.source(), 21, &pol);
    let r = geodesic_preservation_check(&pair, &circle, &grid, &pol).unwrap();
    assert!(r.pass && r.kg_invariant, "{r:?}");
    assert!((r.source_class.max_abs_kg - 1.0 / r0).abs() < TOL_ALG);
    assert!((r.target_class.max_abs_kg - 1.0 / r0).abs() < TOL_ALG);
    assert_eq!(r.source_class.tag, crate::rectifying::ClassTag::Asymptotic);
    assert_eq!(r.target_class.tag, crate::rectifying::ClassTag::Generic);

    let pair = canonical_pair("helicoid-catenoid", &[]).unwrap();
    let wiggle = SurfaceCurve::from_jets("wiggle", Interval::new(-0.8, 0.8), |s| {
        (s * 0.7, (s * 2.0).sin() * 0.3)
    });
    let unit = crate::frames::arc_length_reparam(&wiggle, pair.source(), &pol).unwrap();
    let grid = sample_grid(&unit, pair.source(), 21, &pol);
    let r = geodesic_preservation_check(&pair, &unit, &grid, &pol).unwrap();
    assert!(r.kg_invariant, "{r:?}");
}

#[test]
fn geodesic_check_refuses_non_isometric_pairs() {
    let pol = policy();
    let pair = canonical_pair("plane-sphere", &[]).unwrap();
    let line = curve_catalog("line", &[0.0, 0.3, 1.0, 0.0]).unwrap();
    let grid = sample_grid(&line, pair.source(), 11, &pol);
    assert!(matches!(
        geodesic_preservation_check(&pair, &line, &grid, &pol),
        Err(IsoError::NotIsometric { .. })
    ));
}

#[test]
fn transfer_rejects_curves_outside_shared_domain() {
    let pol = policy();
    let pair = canonical_pair("plane-cone", &[]).unwrap();
    let through_apex = curve_catalog("line", &[0.0, 0.0, 0.0, 1.0]).unwrap();
    assert!(matches!(
        transfer_curve(&pair, &through_apex, &pol),
        Err(IsoError::OutOfDomain { .. })
    ));
}

#[test]
fn reversed_pair_swaps_roles() {
    let pair = canonical_pair("plane-cylinder", &[]).unwrap();
    let rev = pair.reversed();
    assert_eq!(rev.source().name(), pair.target().name());
    assert_eq!(rev.target().name(), pair.source().name());
}

#[test]
fn unknown_and_invalid_pairs() {
    assert!(matches!(
        canonical_pair("torus-plane", &[]),
        Err(IsoError::UnknownPair(_))
    ));
    assert!(matches!(
        canonical_pair("plane-cylinder", &[-1.0]),
        Err(IsoError::InvalidParams { .. })
    ));
    assert!(matches!(
        canonical_pair("plane-sphere", &[2.0]),
        Err(IsoError::InvalidParams { .. })
    ));
}

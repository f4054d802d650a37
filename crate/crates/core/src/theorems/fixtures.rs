//! Shipped pairs and curves for the theorem checkers.
//!
//! Pairs that satisfy every hypothesis are either two cones over unit-speed
//! spherical curves (both develop onto the same polar plane, so they are
//! isometric to each other) or a surface and a rigid rotation of it. The
//! remaining pairs exercise the gating paths.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};

use super::TheoremError;
use crate::frames::{helix, SurfaceCurve};
use crate::isometry::{canonical_pair, polar_plane, IsometryPair};
use crate::numerics::{Interval, Mat3, TolerancePolicy, Vec3};
use crate::rectifying::{
    cone_geodesic, fixture_rectifying, ruled_through_cone_line, small_circle, ClassTag, ConeLine,
    DilatedSphericalParams, SphericalProfile,
};
use crate::surfaces::{cone_over, Domain};

/// A pair, a curve in its shared chart, and the classes the curve is
/// expected to have on each side.
#[derive(Debug, Clone)]
pub struct FixturePair {
    pub name: &'static str,
    pub description: &'static str,
    pub pair: IsometryPair,
    pub curve: SurfaceCurve,
    pub source_class: ClassTag,
    pub target_class: ClassTag,
    /// Whether every hypothesis of the rectifying theorems holds.
    pub both_rectifying: bool,
}

const CONE_LINE: ConeLine = ConeLine { a: 1.0, t0: 0.2 };
const RULED_LINE: ConeLine = ConeLine { a: 1.2, t0: 0.3 };

fn ruled_profile() -> SphericalProfile {
    SphericalProfile {
        colatitude: 1.0,
        axis: [0.3, -1.0, 0.4],
        angle: 0.6,
    }
}

/// A straight line of the common development, drawn on two cones over small
/// circles of different colatitude. Geodesic on both.
pub fn cone_cone_fixture() -> FixturePair {
    let domain = Domain::new(Interval::new(-1.0, 1.0), Interval::new(0.5, 3.0));
    let profile = |colatitude| SphericalProfile {
        colatitude,
        ..SphericalProfile::default()
    };
    let source = cone_over(
        "cone over small circle (colatitude pi/3)",
        small_circle(&profile(FRAC_PI_3)),
        domain,
    );
    let target = cone_over(
        "cone over small circle (colatitude pi/4)",
        small_circle(&profile(FRAC_PI_4)),
        domain,
    );
    FixturePair {
        name: "cone-cone",
        description: "cone line on two cones with a common development",
        pair: IsometryPair::new("cone-cone", source, target),
        curve: cone_geodesic(CONE_LINE, Interval::new(-1.0, 1.5)),
        source_class: ClassTag::Geodesic,
        target_class: ClassTag::Geodesic,
        both_rectifying: true,
    }
}

/// The cone line on a ruled surface through it and on a rotated copy.
/// `beta = 0` makes the line asymptotic; `0 < beta < pi/2` makes it generic.
pub fn ruled_fixture(beta: f64) -> FixturePair {
    let (curve, patch) = ruled_through_cone_line(
        &ruled_profile(),
        RULED_LINE,
        beta,
        Interval::new(-1.5, 1.5),
        0.3,
    );
    let rotated = patch.transformed(
        Mat3::rotation(Vec3::new(1.0, 2.0, -0.5), 0.9),
        format!("rotated {}", patch.name()),
    );
    let class = if beta == 0.0 {
        ClassTag::Asymptotic
    } else {
        ClassTag::Generic
    };
    let (name, description) = if beta == 0.0 {
        (
            "ruled-asymptotic",
            "asymptotic cone line on a ruled surface and a rotated copy",
        )
    } else {
        (
            "ruled-generic",
            "generic cone line on a ruled surface and a rotated copy",
        )
    };
    FixturePair {
        name,
        description,
        pair: IsometryPair::new(name, patch, rotated),
        curve,
        source_class: class,
        target_class: class,
        both_rectifying: true,
    }
}

/// The dilated spherical curve on its cone, paired with the plane unrolling.
/// The image is a straight line, so the target side is degenerate.
pub fn development_fixture(policy: &TolerancePolicy) -> Result<FixturePair, TheoremError> {
    let (curve, cone) = fixture_rectifying(&DilatedSphericalParams::default(), policy)?;
    let flat = polar_plane(1.0, cone.domain());
    Ok(FixturePair {
        name: "cone-development",
        description: "dilated spherical curve on its cone and the plane unrolling",
        pair: IsometryPair::new("cone-development", cone, flat),
        curve,
        source_class: ClassTag::Geodesic,
        target_class: ClassTag::Degenerate,
        both_rectifying: false,
    })
}

/// The r = 3, h = 4 helix on its cylinder, carried to the plane.
pub fn helix_fixture() -> Result<FixturePair, TheoremError> {
    let pair = canonical_pair("plane-cylinder", &[3.0])?.reversed();
    Ok(FixturePair {
        name: "helix-unrolled",
        description: "helix on a cylinder and its unrolling",
        pair,
        curve: helix(3.0, 4.0, Interval::new(-5.0, 5.0)),
        source_class: ClassTag::Geodesic,
        target_class: ClassTag::Degenerate,
        both_rectifying: false,
    })
}

pub fn fixture_names() -> &'static [(&'static str, &'static str)] {
    &[
        (
            "cone-cone",
            "cone line on two cones with a common development (both geodesic)",
        ),
        (
            "ruled-asymptotic",
            "asymptotic cone line on a ruled surface and a rotated copy",
        ),
        (
            "ruled-generic",
            "generic cone line on a ruled surface and a rotated copy",
        ),
        (
            "cone-development",
            "dilated spherical curve on its cone and the plane unrolling (gating)",
        ),
        (
            "helix-unrolled",
            "helix on a cylinder and its unrolling (gating)",
        ),
    ]
}

pub const RULED_GENERIC_BETA: f64 = 0.7;

pub fn fixture_by_name(name: &str, policy: &TolerancePolicy) -> Result<FixturePair, TheoremError> {
    match name {
        "cone-cone" => Ok(cone_cone_fixture()),
        "ruled-asymptotic" => Ok(ruled_fixture(0.0)),
        "ruled-generic" => Ok(ruled_fixture(RULED_GENERIC_BETA)),
        "cone-development" => development_fixture(policy),
        "helix-unrolled" => helix_fixture(),
        other => Err(TheoremError::UnknownFixture(other.to_string())),
    }
}

/// Every shipped fixture, in catalog order.
pub fn fixture_pairs(policy: &TolerancePolicy) -> Result<Vec<FixturePair>, TheoremError> {
    fixture_names()
        .iter()
        .map(|(n, _)| fixture_by_name(n, policy))
        .collect()
}

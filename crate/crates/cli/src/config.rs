//! Run configuration: a versioned JSON document naming catalog entities,
//! the sample grid, tolerance overrides, checks and outputs.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use surfcurve::frames::{arc_length_reparam, circle, curve_catalog, helix, line, SurfaceCurve};
use surfcurve::isometry::{canonical_pair, pair_names, IsometryPair};
use surfcurve::numerics::Interval;
use surfcurve::rectifying::{fixture_rectifying, DilatedSphericalParams};
use surfcurve::surfaces::{catalog, SurfacePatch};
use surfcurve::theorems::{
    draw_coefficients, fixture_by_name, fixture_names, FixturePair, TheoremId,
};
use surfcurve::TolerancePolicy;

use crate::output::Format;

pub const CONFIG_VERSION: u32 = 1;
pub const MIN_GRID: usize = 8;

/// Raised for anything wrong with the configuration itself; maps to exit
/// status 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "configuration error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn bad(msg: impl Into<String>) -> ConfigError {
    ConfigError(msg.into())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedSpec {
    pub name: String,
    #[serde(default)]
    pub params: Vec<f64>,
}

/// A curve on a surface: either a named fixture or a catalog surface with a
/// catalog curve in its chart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetSpec {
    #[serde(default)]
    pub fixture: Option<String>,
    #[serde(default)]
    pub params: Vec<f64>,
    #[serde(default)]
    pub surface: Option<NamedSpec>,
    #[serde(default)]
    pub curve: Option<NamedSpec>,
    /// Reparametrize the curve by arc length on the surface first.
    #[serde(default)]
    pub arc_length: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSpec {
    pub samples: usize,
    /// Restricts every curve to this parameter interval.
    pub s_range: Option<[f64; 2]>,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            samples: 200,
            s_range: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSpec {
    pub dir: Option<PathBuf>,
    pub formats: Vec<Format>,
}

fn default_version() -> u32 {
    CONFIG_VERSION
}

fn default_coefficients() -> usize {
    20
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_version")]
    pub version: u32,
    /// Curves on surfaces for `frame` and `rectify`.
    #[serde(default)]
    pub targets: Vec<TargetSpec>,
    /// Pairs for `isometry`.
    #[serde(default)]
    pub pairs: Vec<NamedSpec>,
    /// Chart curves transferred across each pair by `isometry`.
    #[serde(default)]
    pub curves: Vec<NamedSpec>,
    /// Theorem fixtures for `theorem`.
    #[serde(default)]
    pub fixtures: Vec<String>,
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(default)]
    pub tolerances: TolerancePolicy,
    /// Theorem ids plus `matched-products` and `internal-consistency`.
    #[serde(default)]
    pub checks: Vec<String>,
    /// Number of random `(a, b)` tangent coefficients per check.
    #[serde(default = "default_coefficients")]
    pub coefficients: usize,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        serde_json::from_str("{}").expect("empty config deserializes")
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| bad(format!("reading {}: {e}", path.display())))?;
        let cfg: RunConfig = serde_json::from_str(&text)
            .map_err(|e| bad(format!("parsing {}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.version != CONFIG_VERSION {
            return Err(bad(format!(
                "unsupported config version {}, expected {CONFIG_VERSION}",
                self.version
            )));
        }
        if self.grid.samples < MIN_GRID {
            return Err(bad(format!(
                "grid.samples must be at least {MIN_GRID}, got {}",
                self.grid.samples
            )));
        }
        if let Some([lo, hi]) = self.grid.s_range {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(bad(format!(
                    "grid.s_range [{lo}, {hi}] is not a nonempty finite interval"
                )));
            }
        }
        self.tolerances
            .validate()
            .map_err(|e| bad(format!("tolerances: {e}")))?;
        for c in &self.checks {
            CheckId::parse(c)?;
        }
        Ok(())
    }

    /// Resolves every entity the config names explicitly, whatever command
    /// will consume it.
    pub fn check_names(&self) -> Result<(), ConfigError> {
        if !self.targets.is_empty() {
            resolve_targets(self)?;
        }
        if !self.pairs.is_empty() {
            resolve_pairs(self)?;
        }
        resolve_curves(self)?;
        if !self.fixtures.is_empty() {
            resolve_fixtures(self)?;
        }
        Ok(())
    }

    pub fn restrict(&self, curve: SurfaceCurve) -> SurfaceCurve {
        match self.grid.s_range {
            Some([lo, hi]) => curve.with_domain(Interval::new(lo, hi)),
            None => curve,
        }
    }

    pub fn coefficient_draws(&self) -> Vec<(f64, f64)> {
        draw_coefficients(self.seed, self.coefficients.max(1))
    }
}

/// Named curve-on-surface fixtures for `frame` and `rectify`.
pub const TARGET_FIXTURES: &[(&str, &str)] = &[
    (
        "helix-cylinder",
        "helix with r = 3, h = 4 on the cylinder of radius 3; params [] or [r, h]",
    ),
    (
        "plane-circle",
        "circle of radius R in the plane; params [] or [R]",
    ),
    ("sphere-great-circle", "equator of the unit sphere"),
    (
        "dilated-spherical",
        "secant dilation of a small circle on its cone, by arc length",
    ),
    (
        "plane-line",
        "straight chart line in the plane (curvature zero)",
    ),
];

pub struct Target {
    pub label: String,
    pub curve: SurfaceCurve,
    pub patch: SurfacePatch,
}

fn target_fixture(
    name: &str,
    params: &[f64],
    policy: &TolerancePolicy,
) -> Result<Target, ConfigError> {
    let s = Interval::new(-3.0, 3.0);
    let (curve, patch) = match (name, params) {
        ("helix-cylinder", []) => (
            helix(3.0, 4.0, s),
            catalog("cylinder", &[3.0]).map_err(|e| bad(e.to_string()))?,
        ),
        ("helix-cylinder", [r, h]) if *r > 0.0 => (
            helix(*r, *h, s),
            catalog("cylinder", &[*r]).map_err(|e| bad(e.to_string()))?,
        ),
        ("plane-circle", []) => (
            circle(2.0, 0.0, 0.0, s),
            catalog("plane", &[]).map_err(|e| bad(e.to_string()))?,
        ),
        ("plane-circle", [r]) if *r > 0.0 => (
            circle(*r, 0.0, 0.0, s),
            catalog("plane", &[]).map_err(|e| bad(e.to_string()))?,
        ),
        ("sphere-great-circle", []) => (
            curve_catalog("great-circle", &[]).map_err(|e| bad(e.to_string()))?,
            catalog("sphere", &[]).map_err(|e| bad(e.to_string()))?,
        ),
        ("dilated-spherical", []) => fixture_rectifying(&DilatedSphericalParams::default(), policy)
            .map_err(|e| bad(format!("dilated-spherical: {e}")))?,
        ("plane-line", []) => (
            line(0.0, 0.0, 0.6, 0.8, Interval::new(-1.0, 1.0)),
            catalog("plane", &[]).map_err(|e| bad(e.to_string()))?,
        ),
        (n, p) if TARGET_FIXTURES.iter().any(|(k, _)| *k == n) => {
            return Err(bad(format!("fixture `{n}` does not accept params {p:?}")))
        }
        (n, []) => {
            let f = fixture_by_name(n, policy)
                .map_err(|_| bad(format!("unknown target fixture `{n}`")))?;
            return Ok(Target {
                label: format!("{n} (source)"),
                curve: f.curve,
                patch: f.pair.source().clone(),
            });
        }
        (n, _) => return Err(bad(format!("unknown target fixture `{n}`"))),
    };
    Ok(Target {
        label: name.to_string(),
        curve,
        patch,
    })
}

pub fn resolve_targets(cfg: &RunConfig) -> Result<Vec<Target>, ConfigError> {
    let policy = &cfg.tolerances;
    let specs: Vec<TargetSpec> = if cfg.targets.is_empty() {
        TARGET_FIXTURES
            .iter()
            .map(|(n, _)| TargetSpec {
                fixture: Some(n.to_string()),
                params: Vec::new(),
                surface: None,
                curve: None,
                arc_length: false,
            })
            .collect()
    } else {
        cfg.targets.clone()
    };
    specs
        .iter()
        .map(|t| {
            let mut target = match (&t.fixture, &t.surface, &t.curve) {
                (Some(f), None, None) => target_fixture(f, &t.params, policy)?,
                (None, Some(s), Some(c)) => {
                    let patch = catalog(&s.name, &s.params).map_err(|e| bad(e.to_string()))?;
                    let curve =
                        curve_catalog(&c.name, &c.params).map_err(|e| bad(e.to_string()))?;
                    Target {
                        label: format!("{} on {}", c.name, s.name),
                        curve,
                        patch,
                    }
                }
                _ => {
                    return Err(bad(
                        "a target names either `fixture` or both `surface` and `curve`",
                    ))
                }
            };
            target.curve = cfg.restrict(target.curve);
            if t.arc_length {
                target.curve = arc_length_reparam(&target.curve, &target.patch, policy)
                    .map_err(|e| bad(format!("{}: {e}", target.label)))?;
            }
            Ok(target)
        })
        .collect()
}

pub fn resolve_pairs(cfg: &RunConfig) -> Result<Vec<IsometryPair>, ConfigError> {
    let specs: Vec<NamedSpec> = if cfg.pairs.is_empty() {
        pair_names()
            .iter()
            .map(|(n, _)| NamedSpec {
                name: n.to_string(),
                params: Vec::new(),
            })
            .collect()
    } else {
        cfg.pairs.clone()
    };
    specs
        .iter()
        .map(|p| canonical_pair(&p.name, &p.params).map_err(|e| bad(e.to_string())))
        .collect()
}

pub fn resolve_curves(cfg: &RunConfig) -> Result<Vec<SurfaceCurve>, ConfigError> {
    cfg.curves
        .iter()
        .map(|c| {
            curve_catalog(&c.name, &c.params)
                .map(|c| cfg.restrict(c))
                .map_err(|e| bad(e.to_string()))
        })
        .collect()
}

pub fn resolve_fixtures(cfg: &RunConfig) -> Result<Vec<FixturePair>, ConfigError> {
    let names: Vec<String> = if cfg.fixtures.is_empty() {
        fixture_names().iter().map(|(n, _)| n.to_string()).collect()
    } else {
        cfg.fixtures.clone()
    };
    names
        .iter()
        .map(|n| {
            let mut f = fixture_by_name(n, &cfg.tolerances).map_err(|e| bad(e.to_string()))?;
            f.curve = cfg.restrict(f.curve);
            Ok(f)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckId {
    Theorem(TheoremId),
    MatchedProducts,
    InternalConsistency,
}

impl CheckId {
    pub fn parse(s: &str) -> Result<CheckId, ConfigError> {
        match s {
            "matched-products" => Ok(CheckId::MatchedProducts),
            "internal-consistency" => Ok(CheckId::InternalConsistency),
            other => TheoremId::parse(other)
                .map(CheckId::Theorem)
                .ok_or_else(|| bad(format!("unknown check `{other}`"))),
        }
    }

    pub fn all() -> Vec<CheckId> {
        let mut v: Vec<CheckId> = TheoremId::ALL.into_iter().map(CheckId::Theorem).collect();
        v.extend([CheckId::MatchedProducts, CheckId::InternalConsistency]);
        v
    }
}

pub fn resolve_checks(cfg: &RunConfig) -> Result<Vec<CheckId>, ConfigError> {
    if cfg.checks.is_empty() {
        Ok(CheckId::all())
    } else {
        cfg.checks.iter().map(|c| CheckId::parse(c)).collect()
    }
}

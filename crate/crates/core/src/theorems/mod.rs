//! Executable checks of the invariance identities for rectifying curves under
//! isometries, with hypothesis detection and structured verdicts.
//!
//! Every check works on a shared-chart [`IsometryPair`] and a unit-speed curve
//! in the common chart. Hypotheses are detected numerically; a report whose
//! hypotheses fail is skipped rather than failed.
//!
//! Sign convention: the rotation angle satisfies `sin(theta) = -k_n / kappa`
//! and `cos(theta) = k_g / kappa` (see [`crate::frames::DarbouxFrame`]).
//! Closed forms whose printed coefficient is `mu k_n / k` are evaluated with
//! `mu sin(theta)`, which is the quantity the expansion of the position vector
//! actually carries.

mod checks;
mod fixtures;
mod search;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::frames::{FrameError, SurfaceCurve};
use crate::isometry::{metric_deviation, IsoError, IsometryPair, MetricReport};
use crate::numerics::{DerivPath, TolerancePolicy};
use crate::rectifying::{classify, sample, ClassTag, CurveClass, RectError, Sample};

pub use checks::{
    check_kn_zero_variants, check_note, check_t3_1, check_t3_2, check_t3_3, check_t3_4, check_t3_5,
    check_t3_6, check_t3_7, internal_consistency, matched_products, note, run_all, t3_1, t3_2,
    t3_3, t3_4, t3_5, t3_6, t3_7,
};
pub use fixtures::{
    cone_cone_fixture, development_fixture, fixture_by_name, fixture_names, fixture_pairs,
    helix_fixture, ruled_fixture, FixturePair,
};
pub use search::{fixture_search, CurveFamily, SearchOutcome, SearchSettings};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TheoremError {
    #[error(transparent)]
    Iso(#[from] IsoError),
    #[error(transparent)]
    Rect(#[from] RectError),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error("unknown fixture pair `{0}`")]
    UnknownFixture(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TheoremId {
    #[serde(rename = "T3.1")]
    T3_1,
    #[serde(rename = "T3.2")]
    T3_2,
    #[serde(rename = "T3.3")]
    T3_3,
    #[serde(rename = "T3.4")]
    T3_4,
    #[serde(rename = "T3.5")]
    T3_5,
    #[serde(rename = "T3.6")]
    T3_6,
    #[serde(rename = "T3.7")]
    T3_7,
    Note,
}

impl TheoremId {
    pub const ALL: [TheoremId; 8] = [
        TheoremId::T3_1,
        TheoremId::T3_2,
        TheoremId::T3_3,
        TheoremId::T3_4,
        TheoremId::T3_5,
        TheoremId::T3_6,
        TheoremId::T3_7,
        TheoremId::Note,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::T3_1 => "T3.1",
            TheoremId::T3_2 => "T3.2",
            TheoremId::T3_3 => "T3.3",
            TheoremId::T3_4 => "T3.4",
            TheoremId::T3_5 => "T3.5",
            TheoremId::T3_6 => "T3.6",
            TheoremId::T3_7 => "T3.7",
            TheoremId::Note => "Note",
        }
    }

    pub fn parse(s: &str) -> Option<TheoremId> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
    }

    /// Cases an explicit-case checker accepts.
    pub fn cases(self) -> &'static [CaseTag] {
        match self {
            TheoremId::T3_1 => &[CaseTag::I, CaseTag::Ii, CaseTag::Iii],
            TheoremId::T3_2 => &[CaseTag::I, CaseTag::Ii],
            _ => &[CaseTag::NotApplicable],
        }
    }
}

impl std::fmt::Display for TheoremId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CaseTag {
    #[serde(rename = "i")]
    I,
    #[serde(rename = "ii")]
    Ii,
    #[serde(rename = "iii")]
    Iii,
    #[serde(rename = "n/a")]
    NotApplicable,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::I => "i",
            CaseTag::Ii => "ii",
            CaseTag::Iii => "iii",
            CaseTag::NotApplicable => "n/a",
        }
    }

    pub fn parse(s: &str) -> Option<CaseTag> {
        [
            CaseTag::I,
            CaseTag::Ii,
            CaseTag::Iii,
            CaseTag::NotApplicable,
        ]
        .into_iter()
        .find(|c| c.as_str() == s)
    }
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisStatus {
    Satisfied,
    Violated,
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skipped => "skipped",
        })
    }
}

/// One evaluated identity at one sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleRow {
    pub s: f64,
    pub quantity: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub dev: f64,
    /// The right-hand side as printed, where it differs from the one derived
    /// from the position expansion. Informational; the verdict uses `rhs`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub printed_rhs: Option<f64>,
}

impl SampleRow {
    pub fn new(s: f64, quantity: &'static str, lhs: f64, rhs: f64) -> Self {
        Self {
            s,
            quantity,
            lhs,
            rhs,
            dev: (lhs - rhs).abs(),
            printed_rhs: None,
        }
    }

    pub fn with_printed(mut self, printed: f64) -> Self {
        self.printed_rhs = Some(printed);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub theorem_id: TheoremId,
    pub case_tag: CaseTag,
    pub pair: String,
    pub curve: String,
    pub hypothesis_status: HypothesisStatus,
    pub source_class: Option<ClassTag>,
    pub target_class: Option<ClassTag>,
    pub samples: Vec<SampleRow>,
    pub max_dev: f64,
    pub tol: f64,
    pub verdict: Verdict,
    pub reason: Option<String>,
    pub notes: Vec<String>,
}

impl TheoremReport {
    fn new(theorem_id: TheoremId, case_tag: CaseTag, hyp: &Hypotheses) -> Self {
        Self {
            theorem_id,
            case_tag,
            pair: hyp.pair.clone(),
            curve: hyp.curve.clone(),
            hypothesis_status: HypothesisStatus::Satisfied,
            source_class: hyp.source_class.map(|c| c.tag),
            target_class: hyp.target_class.map(|c| c.tag),
            samples: Vec::new(),
            max_dev: 0.0,
            tol: hyp.tol_thm,
            verdict: Verdict::Skipped,
            reason: None,
            notes: Vec::new(),
        }
    }

    fn skip(mut self, status: HypothesisStatus, reason: impl Into<String>) -> Self {
        self.hypothesis_status = status;
        self.verdict = Verdict::Skipped;
        self.reason = Some(reason.into());
        self.samples.clear();
        self.max_dev = 0.0;
        self
    }

    fn finish(mut self, rows: Vec<SampleRow>) -> Self {
        self.max_dev = rows.iter().map(|r| r.dev).fold(0.0, f64::max);
        if rows.iter().any(|r| r.dev.is_nan()) {
            self.max_dev = f64::NAN;
        }
        self.samples = rows;
        self.hypothesis_status = HypothesisStatus::Satisfied;
        self.verdict = if self.max_dev <= self.tol {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        self
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// The report invariants: pass only with satisfied hypotheses and
    /// `max_dev <= tol`; skipped exactly when hypotheses are not satisfied.
    pub fn is_consistent(&self) -> bool {
        let satisfied = self.hypothesis_status == HypothesisStatus::Satisfied;
        let pass_ok = (self.verdict == Verdict::Pass) == (satisfied && self.max_dev <= self.tol);
        let skip_ok = (self.verdict == Verdict::Skipped) == !satisfied;
        pass_ok && skip_ok
    }
}

/// A named identity evaluated over samples, outside the theorem catalogue.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub samples: Vec<SampleRow>,
    pub max_dev: f64,
    pub tol: f64,
    pub pass: bool,
    pub reason: Option<String>,
}

impl IdentityReport {
    fn from_rows(name: impl Into<String>, rows: Vec<SampleRow>, tol: f64) -> Self {
        let max_dev = if rows.iter().any(|r| r.dev.is_nan()) {
            f64::NAN
        } else {
            rows.iter().map(|r| r.dev).fold(0.0, f64::max)
        };
        Self {
            name: name.into(),
            pass: max_dev <= tol && !rows.is_empty(),
            samples: rows,
            max_dev,
            tol,
            reason: None,
        }
    }
}

/// Detected hypotheses for a pair and curve, with the per-sample data the
/// checkers need.
#[derive(Debug, Clone)]
pub struct Hypotheses {
    pub pair: String,
    pub curve: String,
    pub metric: MetricReport,
    pub source_class: Option<CurveClass>,
    pub target_class: Option<CurveClass>,
    pub rect_source: bool,
    pub rect_target: bool,
    pub max_residual_source: f64,
    pub max_residual_target: f64,
    /// `min |k_n|` on the source over the grid.
    pub min_abs_kn_source: f64,
    pub tol_thm: f64,
    pub tol_class: f64,
    /// `(source, target)` samples; empty when either curve is degenerate.
    pub samples: Vec<(Sample, Sample)>,
}

impl Hypotheses {
    pub fn isometric(&self) -> bool {
        self.metric.pass
    }

    pub fn degenerate(&self) -> bool {
        let deg = |c: &Option<CurveClass>| c.is_none_or(|c| c.tag == ClassTag::Degenerate);
        deg(&self.source_class) || deg(&self.target_class)
    }

    pub fn source_tag(&self) -> Option<ClassTag> {
        self.source_class.map(|c| c.tag)
    }

    pub fn target_tag(&self) -> Option<ClassTag> {
        self.target_class.map(|c| c.tag)
    }

    /// `k_n != 0` everywhere on the source grid.
    pub fn source_kn_nonzero(&self) -> bool {
        self.min_abs_kn_source > self.tol_class
    }

    pub fn source_asymptotic(&self) -> bool {
        self.source_class.is_some_and(|c| c.asymptotic_evidence())
    }
}

/// Metric sweep used to decide whether a pair is an isometry: the chart
/// points of the curve and the cell centres of a coarse grid of the shared
/// domain (kept off the boundary so difference stencils fit).
fn metric_gate(
    pair: &IsometryPair,
    curve: &SurfaceCurve,
    grid: &[f64],
    tol: f64,
) -> Result<MetricReport, TheoremError> {
    let mut points: Vec<(f64, f64)> = grid.iter().map(|&s| curve.coords(s)).collect();
    let d = pair.domain();
    let centre = |i: usize, r: &crate::numerics::Interval| r.lo + r.len() * (i as f64 + 0.5) / 17.0;
    points.extend((0..17).flat_map(|i| (0..17).map(move |j| (centre(i, &d.u), centre(j, &d.v)))));
    Ok(metric_deviation(pair, &points, tol)?)
}

/// Classifies the curve on both surfaces and tests the rectifying residual on
/// each. A degenerate side has no Frenet frame, so it is never rectifying.
/// When the pair fails the metric gate nothing is evaluated on the target.
pub fn hypotheses(
    pair: &IsometryPair,
    curve: &SurfaceCurve,
    grid: &[f64],
    policy: &TolerancePolicy,
) -> Result<Hypotheses, TheoremError> {
    let metric = metric_gate(pair, curve, grid, policy.tol_iso)?;
    let side =
        |c: &SurfaceCurve, patch| -> Result<(CurveClass, Option<Vec<Sample>>), TheoremError> {
            let class = classify(c, patch, grid, policy)?;
            if class.tag == ClassTag::Degenerate {
                return Ok((class, None));
            }
            let v: Result<Vec<Sample>, RectError> =
                grid.iter().map(|&s| sample(c, patch, s, policy)).collect();
            Ok((class, Some(v?)))
        };
    let (source_class, src) = side(curve, pair.source())?;
    let (target_class, tgt) = if metric.pass {
        let (image, _) = crate::isometry::transfer_curve(pair, curve, policy)?;
        let (c, t) = side(&image, pair.target())?;
        (Some(c), t)
    } else {
        (None, None)
    };
    let max_res = |v: &Option<Vec<Sample>>| {
        v.as_ref().map_or(f64::NAN, |v| {
            v.iter()
                .map(|s| s.decomposition.residual.abs())
                .fold(0.0, f64::max)
        })
    };
    let (rs, rt) = (max_res(&src), max_res(&tgt));
    let min_kn = src.as_ref().map_or(0.0, |v| {
        v.iter()
            .map(|s| s.darboux.k_n.abs())
            .fold(f64::INFINITY, f64::min)
    });
    let path = src
        .iter()
        .chain(tgt.iter())
        .flatten()
        .map(|s| s.path())
        .fold(DerivPath::Analytic, DerivPath::join);
    let samples = match (src, tgt) {
        (Some(a), Some(b)) => a.into_iter().zip(b).collect(),
        _ => Vec::new(),
    };
    Ok(Hypotheses {
        pair: pair.name().to_string(),
        curve: curve.name().to_string(),
        metric,
        source_class: Some(source_class),
        target_class,
        rect_source: rs <= policy.tol_rect,
        rect_target: rt <= policy.tol_rect,
        max_residual_source: rs,
        max_residual_target: rt,
        min_abs_kn_source: min_kn,
        tol_thm: policy.theorem_tol(path),
        tol_class: policy.tol_class,
        samples,
    })
}

/// `n` tangent-coefficient pairs `(a, b)` drawn uniformly from `[-2, 2]^2`,
/// reproducible from `seed`.
pub fn draw_coefficients(seed: u64, n: usize) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| loop {
            let (a, b): (f64, f64) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            if a.abs() + b.abs() > 1e-3 {
                break (a, b);
            }
        })
        .collect()
}

use anyhow::Result;
use rayon::prelude::*;
use serde::Serialize;
use surfcurve::isometry::grid_for_n;
use surfcurve::theorems::{
    hypotheses, internal_consistency, matched_products, note, t3_1, t3_2, t3_3, t3_4, t3_5, t3_6,
    t3_7, CaseTag, FixturePair, Hypotheses, IdentityReport, TheoremError, TheoremId, TheoremReport,
    Verdict,
};
use surfcurve::TolerancePolicy;

use crate::config::{resolve_checks, resolve_fixtures, CheckId};
use crate::output::{num, opt_num, Emitter};
use crate::{Outcome, Run};

/// Table row: id, case, counts, worst deviation, tolerance, first skip reason.
type Group<'a> = (TheoremId, CaseTag, Counts, f64, f64, Option<&'a str>);

#[derive(Debug, Serialize)]
struct IdentityOutcome {
    #[serde(flatten)]
    report: IdentityReport,
    verdict: Verdict,
}

impl IdentityOutcome {
    fn new(report: IdentityReport) -> Self {
        let verdict = if report.samples.is_empty() {
            Verdict::Skipped
        } else if report.pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Self { report, verdict }
    }
}

#[derive(Debug, Serialize)]
struct FixtureRun {
    fixture: String,
    pair: String,
    curve: String,
    rect_source: bool,
    rect_target: bool,
    max_residual_source: f64,
    max_residual_target: f64,
    reports: Vec<TheoremReport>,
    identities: Vec<IdentityOutcome>,
}

fn theorem_reports(
    hyp: &Hypotheses,
    id: TheoremId,
    coeffs: &[(f64, f64)],
) -> Result<Vec<TheoremReport>, TheoremError> {
    let per_coeff = |f: fn(&Hypotheses, f64, f64) -> Result<TheoremReport, TheoremError>| {
        coeffs
            .iter()
            .map(|&(a, b)| f(hyp, a, b))
            .collect::<Result<Vec<_>, _>>()
    };
    Ok(match id {
        TheoremId::T3_1 => id.cases().iter().map(|&c| t3_1(hyp, c)).collect(),
        TheoremId::T3_2 => id.cases().iter().map(|&c| t3_2(hyp, c)).collect(),
        TheoremId::T3_3 => per_coeff(t3_3)?,
        TheoremId::T3_4 => per_coeff(t3_4)?,
        TheoremId::T3_5 => per_coeff(t3_5)?,
        TheoremId::T3_6 => per_coeff(t3_6)?,
        TheoremId::T3_7 => vec![t3_7(hyp)],
        TheoremId::Note => per_coeff(note)?,
    })
}

fn run_fixture(
    f: &FixturePair,
    checks: &[CheckId],
    coeffs: &[(f64, f64)],
    n: usize,
    policy: &TolerancePolicy,
) -> Result<FixtureRun> {
    let grid = grid_for_n(&f.curve, &f.pair, n, policy);
    let hyp = hypotheses(&f.pair, &f.curve, &grid, policy)?;
    let mut reports = Vec::new();
    let mut identities = Vec::new();
    for &c in checks {
        match c {
            CheckId::Theorem(id) => reports.extend(theorem_reports(&hyp, id, coeffs)?),
            CheckId::MatchedProducts => {
                identities.push(IdentityOutcome::new(matched_products(&hyp)))
            }
            CheckId::InternalConsistency => {
                for (rect, patch) in [
                    (hyp.rect_source, f.pair.source()),
                    (hyp.rect_target, f.pair.target()),
                ] {
                    if rect {
                        identities.push(IdentityOutcome::new(internal_consistency(
                            &f.curve, patch, &grid, coeffs, policy,
                        )?));
                    }
                }
            }
        }
    }
    Ok(FixtureRun {
        fixture: f.name.to_string(),
        pair: f.pair.name().to_string(),
        curve: f.curve.name().to_string(),
        rect_source: hyp.rect_source,
        rect_target: hyp.rect_target,
        max_residual_source: hyp.max_residual_source,
        max_residual_target: hyp.max_residual_target,
        reports,
        identities,
    })
}

#[derive(Debug, Default, Serialize)]
struct Counts {
    pass: usize,
    fail: usize,
    skipped: usize,
}

impl Counts {
    fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Pass => self.pass += 1,
            Verdict::Fail => self.fail += 1,
            Verdict::Skipped => self.skipped += 1,
        }
    }
}

const SAMPLE_HEADER: &[&str] = &[
    "fixture",
    "theorem",
    "case",
    "s",
    "quantity",
    "lhs",
    "rhs",
    "dev",
    "printed_rhs",
];

pub fn run(run: &Run, emit: &mut Emitter) -> Result<Outcome> {
    let fixtures = resolve_fixtures(&run.cfg)?;
    let checks = resolve_checks(&run.cfg)?;
    let coeffs = run.cfg.coefficient_draws();
    let n = run.cfg.grid.samples;
    let policy = run.cfg.tolerances;
    let runs: Vec<FixtureRun> = fixtures
        .par_iter()
        .map(|f| run_fixture(f, &checks, &coeffs, n, &policy))
        .collect::<Result<_>>()?;

    let mut counts = Counts::default();
    let mut rows = Vec::new();
    println!(
        "{:<18} {:<6} {:<4} {:>4} {:>4} {:>4} {:>4} {:>10} {:>8}  reason",
        "fixture", "check", "case", "n", "pass", "skip", "fail", "max_dev", "tol"
    );
    for r in &runs {
        let mut groups: Vec<Group> = Vec::new();
        for t in &r.reports {
            counts.add(t.verdict);
            let g = match groups
                .iter_mut()
                .find(|g| g.0 == t.theorem_id && g.1 == t.case_tag)
            {
                Some(g) => g,
                None => {
                    groups.push((
                        t.theorem_id,
                        t.case_tag,
                        Counts::default(),
                        0.0,
                        t.tol,
                        None,
                    ));
                    groups.last_mut().unwrap()
                }
            };
            g.2.add(t.verdict);
            g.3 = g.3.max(t.max_dev);
            g.5 = g.5.or(t.reason.as_deref());
            for row in &t.samples {
                rows.push(vec![
                    r.fixture.clone(),
                    t.theorem_id.to_string(),
                    t.case_tag.to_string(),
                    num(row.s),
                    row.quantity.to_string(),
                    num(row.lhs),
                    num(row.rhs),
                    num(row.dev),
                    opt_num(row.printed_rhs),
                ]);
            }
        }
        for (id, case, c, dev, tol, reason) in groups {
            println!(
                "{:<18} {:<6} {:<4} {:>4} {:>4} {:>4} {:>4} {:>10.2e} {:>8.1e}  {}",
                r.fixture,
                id.as_str(),
                case.as_str(),
                c.pass + c.skipped + c.fail,
                c.pass,
                c.skipped,
                c.fail,
                dev,
                tol,
                reason.unwrap_or("")
            );
        }
        for i in &r.identities {
            counts.add(i.verdict);
            println!(
                "{:<18} {:<8} {:>10.2e} {:>8.1e}  {}",
                r.fixture, i.verdict, i.report.max_dev, i.report.tol, i.report.name
            );
        }
    }
    println!(
        "pass {}  skipped {}  fail {}",
        counts.pass, counts.skipped, counts.fail
    );
    emit.json_compact("theorem_reports", &runs)?;
    emit.json("theorem_summary", &counts)?;
    emit.csv("theorem_samples", SAMPLE_HEADER, &rows)?;
    Ok(if counts.fail == 0 {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}

use anyhow::Result;
use rayon::prelude::*;
use serde::Serialize;
use surfcurve::frames::{arc_length_reparam, SurfaceCurve};
use surfcurve::isometry::{
    geodesic_preservation_check, grid_for_n, metric_deviation, probe_curves, IsometryPair,
    MetricReport,
};
use surfcurve::rectifying::ClassTag;
use surfcurve::TolerancePolicy;

use crate::config::{resolve_curves, resolve_pairs};
use crate::output::{num, slug, Emitter};
use crate::{Outcome, Run};

/// Probe curves per pair when the config names none.
pub const DEFAULT_PROBES: usize = 5;

#[derive(Debug, Serialize)]
struct KgRow {
    curve: String,
    max_kg_difference: Option<f64>,
    kg_tol: Option<f64>,
    kg_invariant: Option<bool>,
    source_class: Option<ClassTag>,
    target_class: Option<ClassTag>,
    geodesic_agreement: Option<bool>,
    skipped: Option<String>,
}

#[derive(Debug, Serialize)]
struct PairSummary {
    pair: String,
    metric: MetricReport,
    kg_invariance: Vec<KgRow>,
}

struct PairRun {
    summary: PairSummary,
    heat: Vec<Vec<String>>,
}

fn curves_for(
    pair: &IsometryPair,
    curves: &[SurfaceCurve],
    policy: &TolerancePolicy,
) -> Result<Vec<SurfaceCurve>> {
    if curves.is_empty() {
        return Ok(probe_curves(pair, DEFAULT_PROBES, policy)?);
    }
    curves
        .iter()
        .map(|c| Ok(arc_length_reparam(c, pair.source(), policy)?))
        .collect()
}

fn run_pair(
    pair: &IsometryPair,
    curves: &[SurfaceCurve],
    n: usize,
    policy: &TolerancePolicy,
) -> Result<PairRun> {
    let grid = pair.default_grid();
    let metric = metric_deviation(pair, &grid, policy.tol_iso)?;
    let mut heat = Vec::with_capacity(grid.len());
    for &(u, v) in &grid {
        let d = metric_deviation(pair, &[(u, v)], policy.tol_iso)?.max_deviation;
        heat.push(vec![num(u), num(v), num(d)]);
    }
    let mut rows = Vec::new();
    for c in curves_for(pair, curves, policy)? {
        let g = grid_for_n(&c, pair, n, policy);
        rows.push(match geodesic_preservation_check(pair, &c, &g, policy) {
            Ok(r) => KgRow {
                curve: c.name().to_string(),
                max_kg_difference: Some(r.max_kg_difference),
                kg_tol: Some(r.kg_tol),
                kg_invariant: Some(r.kg_invariant),
                source_class: Some(r.source_class.tag),
                target_class: Some(r.target_class.tag),
                geodesic_agreement: Some(r.pass),
                skipped: None,
            },
            Err(e) => KgRow {
                curve: c.name().to_string(),
                max_kg_difference: None,
                kg_tol: None,
                kg_invariant: None,
                source_class: None,
                target_class: None,
                geodesic_agreement: None,
                skipped: Some(e.to_string()),
            },
        });
    }
    Ok(PairRun {
        summary: PairSummary {
            pair: pair.name().to_string(),
            metric,
            kg_invariance: rows,
        },
        heat,
    })
}

pub fn run(run: &Run, emit: &mut Emitter) -> Result<Outcome> {
    let pairs = resolve_pairs(&run.cfg)?;
    let curves = resolve_curves(&run.cfg)?;
    let n = run.cfg.grid.samples;
    let policy = run.cfg.tolerances;
    let results: Vec<Result<PairRun>> = pairs
        .par_iter()
        .map(|p| run_pair(p, &curves, n, &policy))
        .collect();

    let mut outcome = Outcome::Pass;
    let mut summaries = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        let r = r?;
        let s = &r.summary;
        emit.csv(
            &format!("isometry_{i:02}_{}_metric", slug(&s.pair)),
            &["u", "v", "deviation"],
            &r.heat,
        )?;
        let kg_rows: Vec<Vec<String>> = s
            .kg_invariance
            .iter()
            .map(|k| {
                vec![
                    k.curve.clone(),
                    k.max_kg_difference.map(num).unwrap_or_default(),
                    k.kg_invariant.map(|b| b.to_string()).unwrap_or_default(),
                    k.source_class.map(|c| c.to_string()).unwrap_or_default(),
                    k.target_class.map(|c| c.to_string()).unwrap_or_default(),
                    k.skipped.clone().unwrap_or_default(),
                ]
            })
            .collect();
        emit.csv(
            &format!("isometry_{i:02}_{}_kg", slug(&s.pair)),
            &[
                "curve",
                "max_kg_difference",
                "kg_invariant",
                "source_class",
                "target_class",
                "skipped",
            ],
            &kg_rows,
        )?;
        let m = &s.metric;
        if m.pass {
            println!(
                "{:<20} pass  metric deviation {:.2e}",
                s.pair, m.max_deviation
            );
        } else {
            outcome = Outcome::Fail;
            println!(
                "{:<20} FAIL  metric deviation {:.2e} in {} at (u, v) = ({}, {})",
                s.pair, m.max_deviation, m.component, m.at.0, m.at.1
            );
        }
        for k in &s.kg_invariance {
            match (k.max_kg_difference, &k.skipped) {
                (Some(d), _) => println!("    {:<40} |k_g - k_g_bar| {:.2e}", k.curve, d),
                (None, Some(why)) => println!("    {:<40} skipped: {why}", k.curve),
                _ => {}
            }
            if k.kg_invariant == Some(false) {
                outcome = Outcome::Fail;
            }
        }
        summaries.push(r.summary);
    }
    emit.json("isometry_summary", &summaries)?;
    Ok(outcome)
}

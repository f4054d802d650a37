use anyhow::Result;
use rayon::prelude::*;
use serde::Serialize;
use surfcurve::frames::{embed, sample_grid};
use surfcurve::rectifying::{classify, decompose, reconstruct, ClassTag, CurveClass};
use surfcurve::TolerancePolicy;

use crate::config::{resolve_targets, Target};
use crate::output::{num, slug, Emitter};
use crate::{Outcome, Run};

/// Position reconstruction from the rectifying expansion must hold to this
/// bound under `--strict`.
pub const RECONSTRUCTION_TOL: f64 = 1e-4;

const HEADER: &[&str] = &["s", "residual", "lambda", "mu", "expansion_error"];

#[derive(Debug, Serialize)]
struct RectifySummary {
    target: String,
    curve: String,
    surface: String,
    samples: usize,
    class: Option<CurveClass>,
    max_abs_residual: f64,
    tol_rect: f64,
    verdict: &'static str,
    max_expansion_error: f64,
    reconstruction_error: Option<f64>,
    reconstruction_tol: f64,
    error: Option<String>,
}

struct RectifyRun {
    summary: RectifySummary,
    rows: Vec<Vec<String>>,
    residuals: Vec<(f64, f64)>,
}

fn run_target(t: &Target, n: usize, policy: &TolerancePolicy) -> RectifyRun {
    let grid = sample_grid(&t.curve, &t.patch, n, policy);
    let mut summary = RectifySummary {
        target: t.label.clone(),
        curve: t.curve.name().to_string(),
        surface: t.patch.name().to_string(),
        samples: grid.len(),
        class: None,
        max_abs_residual: f64::NAN,
        tol_rect: policy.tol_rect,
        verdict: "undetermined",
        max_expansion_error: 0.0,
        reconstruction_error: None,
        reconstruction_tol: RECONSTRUCTION_TOL,
        error: None,
    };
    let mut rows = Vec::new();
    let mut residuals = Vec::new();
    let result = (|| -> Result<()> {
        let class = classify(&t.curve, &t.patch, &grid, policy)?;
        summary.class = Some(class);
        let mut max_res = 0.0f64;
        for &s in &grid {
            let d = decompose(&t.curve, &t.patch, s, policy)?;
            max_res = max_res.max(d.residual.abs());
            summary.max_expansion_error = summary.max_expansion_error.max(d.expansion_error);
            residuals.push((s, d.residual));
            rows.push(vec![
                num(s),
                num(d.residual),
                num(d.lambda),
                num(d.mu),
                num(d.expansion_error),
            ]);
        }
        summary.max_abs_residual = max_res;
        let rectifying = max_res <= policy.tol_rect;
        summary.verdict = if rectifying {
            "rectifying"
        } else {
            "not rectifying"
        };
        if rectifying && class.tag != ClassTag::Degenerate {
            let mut err = 0.0f64;
            for &s in &grid {
                let r = reconstruct(&t.curve, &t.patch, s, class.tag, policy)?;
                err = err.max(r.max_abs_diff(embed(&t.curve, &t.patch, s)?));
            }
            summary.reconstruction_error = Some(err);
        }
        Ok(())
    })();
    if let Err(e) = result {
        summary.error = Some(e.to_string());
    }
    RectifyRun {
        summary,
        rows,
        residuals,
    }
}

pub fn run(run: &Run, emit: &mut Emitter) -> Result<Outcome> {
    let targets = resolve_targets(&run.cfg)?;
    let n = run.cfg.grid.samples;
    let policy = run.cfg.tolerances;
    let results: Vec<RectifyRun> = targets
        .par_iter()
        .map(|t| run_target(t, n, &policy))
        .collect();

    let mut outcome = Outcome::Pass;
    for (i, r) in results.iter().enumerate() {
        let name = format!("rectify_{i:02}_{}", slug(&r.summary.target));
        emit.csv(&name, HEADER, &r.rows)?;
        emit.svg(
            &name,
            &format!("rectifying residual: {}", r.summary.target),
            "gamma . N",
            &r.residuals,
        )?;
        if let Some(e) = &r.summary.error {
            eprintln!("rectify: {}: {e}", r.summary.target);
            outcome = Outcome::Fail;
        }
        if run.strict
            && r.summary
                .reconstruction_error
                .is_some_and(|e| e.is_nan() || e > RECONSTRUCTION_TOL)
        {
            outcome = Outcome::Fail;
        }
        println!(
            "{:<28} {:<16} max |gamma.N| {:9.2e}  class {:<10}  reconstruction {}",
            r.summary.target,
            r.summary.verdict,
            r.summary.max_abs_residual,
            r.summary
                .class
                .map_or("-".to_string(), |c| c.tag.to_string()),
            r.summary
                .reconstruction_error
                .map_or("-".to_string(), |e| format!("{e:.2e}")),
        );
    }
    let summaries: Vec<&RectifySummary> = results.iter().map(|r| &r.summary).collect();
    emit.json("rectify_summary", &summaries)?;
    Ok(outcome)
}

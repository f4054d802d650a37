use anyhow::Result;
use rayon::prelude::*;
use serde::Serialize;
use surfcurve::frames::{
    darboux_at, frame_invariants, frenet_at, sample_grid, trace, unit_speed_check, UnitSpeedReport,
};
use surfcurve::numerics::Vec3;
use surfcurve::TolerancePolicy;

use crate::config::{resolve_targets, Target};
use crate::output::{num, opt_num, slug, Emitter};
use crate::{Outcome, Run};

const HEADER: &[&str] = &[
    "s", "T_x", "T_y", "T_z", "N_x", "N_y", "N_z", "B_x", "B_y", "B_z", "P_x", "P_y", "P_z", "U_x",
    "U_y", "U_z", "kappa", "tau", "k_n", "k_g", "theta",
];

#[derive(Debug, Serialize)]
struct FrameSummary {
    target: String,
    curve: String,
    surface: String,
    samples: usize,
    unit_speed: Option<UnitSpeedReport>,
    max_frenet_gram: f64,
    max_darboux_gram: f64,
    max_curvature_split: f64,
    max_acceleration_split: f64,
    max_p_cross: f64,
    max_frame_relation: f64,
    tol: f64,
    pass: bool,
    error: Option<String>,
}

struct FrameRun {
    summary: FrameSummary,
    rows: Vec<Vec<String>>,
    deviation: Vec<(f64, f64)>,
}

fn push_vec(row: &mut Vec<String>, v: Vec3) {
    row.extend(v.to_array().map(num));
}

fn run_target(t: &Target, n: usize, policy: &TolerancePolicy) -> FrameRun {
    let grid = sample_grid(&t.curve, &t.patch, n, policy);
    let mut summary = FrameSummary {
        target: t.label.clone(),
        curve: t.curve.name().to_string(),
        surface: t.patch.name().to_string(),
        samples: grid.len(),
        unit_speed: None,
        max_frenet_gram: 0.0,
        max_darboux_gram: 0.0,
        max_curvature_split: 0.0,
        max_acceleration_split: 0.0,
        max_p_cross: 0.0,
        max_frame_relation: 0.0,
        tol: 0.0,
        pass: false,
        error: None,
    };
    let mut rows = Vec::new();
    let mut deviation = Vec::new();
    let result = (|| -> Result<()> {
        let speed = unit_speed_check(&t.curve, &t.patch, &grid, policy.tol_fd, policy)?;
        let unit = speed.pass;
        summary.unit_speed = Some(speed);
        if !unit {
            anyhow::bail!("curve is not unit speed; set `arc_length` on the target");
        }
        let mut pass = true;
        for &s in &grid {
            let p = trace(&t.curve, &t.patch, s, policy)?;
            let f = frenet_at(&p, policy)?;
            let d = darboux_at(&p, &t.patch, policy)?;
            let inv = frame_invariants(&p, &t.patch, policy)?;
            summary.max_frenet_gram = summary.max_frenet_gram.max(inv.frenet_gram.unwrap_or(0.0));
            summary.max_darboux_gram = summary.max_darboux_gram.max(inv.darboux_gram);
            summary.max_curvature_split = summary.max_curvature_split.max(inv.curvature_split);
            summary.max_acceleration_split =
                summary.max_acceleration_split.max(inv.acceleration_split);
            summary.max_p_cross = summary.max_p_cross.max(inv.p_cross);
            summary.max_frame_relation = summary.max_frame_relation.max(inv.relation.max_deviation);
            summary.tol = summary.tol.max(inv.tol);
            pass &= inv.pass;
            let worst = [
                inv.frenet_gram.unwrap_or(0.0),
                inv.darboux_gram,
                inv.curvature_split,
                inv.acceleration_split,
                inv.p_cross,
                inv.relation.max_deviation,
            ]
            .into_iter()
            .fold(0.0, f64::max);
            deviation.push((s, worst));
            let mut row = vec![num(s)];
            for v in [f.t, f.n, f.b, d.p, d.u] {
                push_vec(&mut row, v);
            }
            row.extend([
                num(f.kappa),
                num(f.tau),
                num(d.k_n),
                num(d.k_g),
                opt_num(d.theta),
            ]);
            rows.push(row);
        }
        summary.pass = pass;
        Ok(())
    })();
    if let Err(e) = result {
        summary.pass = false;
        summary.error = Some(e.to_string());
    }
    FrameRun {
        summary,
        rows,
        deviation,
    }
}

pub fn run(run: &Run, emit: &mut Emitter) -> Result<Outcome> {
    let targets = resolve_targets(&run.cfg)?;
    let n = run.cfg.grid.samples;
    let policy = run.cfg.tolerances;
    let results: Vec<FrameRun> = targets
        .par_iter()
        .map(|t| run_target(t, n, &policy))
        .collect();

    let mut outcome = Outcome::Pass;
    for (i, r) in results.iter().enumerate() {
        let name = format!("frame_{i:02}_{}", slug(&r.summary.target));
        emit.csv(&name, HEADER, &r.rows)?;
        emit.svg(
            &name,
            &format!("frame identity deviation: {}", r.summary.target),
            "max deviation",
            &r.deviation,
        )?;
        match &r.summary.error {
            Some(e) => {
                eprintln!("frame: {}: {e}", r.summary.target);
                outcome = Outcome::Fail;
            }
            None if !r.summary.pass && run.strict => outcome = Outcome::Fail,
            None => {}
        }
        println!(
            "{:<28} {:>5} samples  gram {:9.2e}  split {:9.2e}  accel {:9.2e}  {}",
            r.summary.target,
            r.summary.samples,
            r.summary.max_frenet_gram.max(r.summary.max_darboux_gram),
            r.summary.max_curvature_split,
            r.summary.max_acceleration_split,
            match (&r.summary.error, r.summary.pass) {
                (Some(_), _) => "error",
                (None, true) => "ok",
                (None, false) => "exceeds tolerance",
            }
        );
    }
    let summaries: Vec<&FrameSummary> = results.iter().map(|r| &r.summary).collect();
    emit.json("frame_summary", &summaries)?;
    Ok(outcome)
}

//! The individual theorem checkers.

use super::{
    hypotheses, CaseTag, Hypotheses, HypothesisStatus, IdentityReport, SampleRow, TheoremError,
    TheoremId, TheoremReport,
};
use crate::frames::{chart_conormal, SurfaceCurve};
use crate::isometry::IsometryPair;
use crate::numerics::{TolerancePolicy, Vec3};
use crate::rectifying::{
    component_chart_at, component_normal_at, component_p_at, component_tangent_at, ClassTag,
    RectError, Sample,
};

const TRANSPLANT_NOTE: &str = "f_*(gamma) is evaluated as the chart-basis transplant lambda T_bar + mu sin(theta) P_bar + mu cos(theta) U_bar";
const F_STAR_NOTE: &str = "F_* in the statement is read as the same operator f_*";
const SIGN_NOTE: &str = "mu k_n / k is evaluated as mu sin(theta) with sin(theta) = -k_n / kappa";

type Gate = Result<(), (HypothesisStatus, String)>;

fn violated(reason: impl Into<String>) -> Gate {
    Err((HypothesisStatus::Violated, reason.into()))
}

/// Isometry, nondegeneracy and the rectifying conditions required by every
/// theorem.
fn gate_common(hyp: &Hypotheses, target_rectifying: bool) -> Gate {
    if !hyp.isometric() {
        return violated(format!(
            "pair is not an isometry: metric deviation {:e} exceeds {:e}",
            hyp.metric.max_deviation, hyp.metric.tol
        ));
    }
    let degenerate = |tag: Option<ClassTag>, side: &str| -> Gate {
        match tag {
            Some(ClassTag::Degenerate) | None => Err((
                HypothesisStatus::Degenerate,
                format!("curvature falls below kappa_min on the {side} surface; the Frenet frame is undefined"),
            )),
            _ => Ok(()),
        }
    };
    degenerate(hyp.source_tag(), "source")?;
    if !hyp.rect_source {
        return violated(format!(
            "source curve is not rectifying: max |gamma . N| = {:e}",
            hyp.max_residual_source
        ));
    }
    degenerate(hyp.target_tag(), "target")?;
    if target_rectifying && !hyp.rect_target {
        return violated(format!(
            "target curve is not rectifying: max |gamma_bar . N_bar| = {:e}",
            hyp.max_residual_target
        ));
    }
    Ok(())
}

fn gate_kn_nonzero(hyp: &Hypotheses) -> Gate {
    if hyp.source_kn_nonzero() {
        Ok(())
    } else {
        violated(format!(
            "source normal curvature vanishes somewhere: min |k_n| = {:e}",
            hyp.min_abs_kn_source
        ))
    }
}

fn gate_kn_zero(hyp: &Hypotheses) -> Gate {
    if hyp.source_asymptotic() {
        Ok(())
    } else {
        violated(format!(
            "source is not asymptotic: max |k_n| = {:e}",
            hyp.source_class.map_or(f64::NAN, |c| c.max_abs_kn)
        ))
    }
}

fn apply(
    report: TheoremReport,
    gate: Gate,
    rows: impl FnOnce() -> Vec<SampleRow>,
) -> TheoremReport {
    match gate {
        Ok(()) => report.finish(rows()),
        Err((status, reason)) => report.skip(status, reason),
    }
}

/// `mu sin(theta)`, the coefficient of `P` in the position expansion.
fn mu_sin(s: &Sample) -> f64 {
    s.mu() * s.sin_theta()
}

/// `mu cos(theta)`, the coefficient of `U`.
fn mu_cos(s: &Sample) -> f64 {
    s.mu() * s.cos_theta()
}

/// `lambda T_bar + mu sin(theta) P_bar + mu cos(theta) U_bar`: the source
/// expansion written in the target's chart basis.
fn transplant(src: &Sample, tgt: &Sample) -> Vec3 {
    let j = &tgt.point.surface;
    let (du, dv) = src.point.chart_velocity();
    let t = j.du * du + j.dv * dv;
    let p = chart_conormal(j, du, dv);
    t * src.lambda() + p * mu_sin(src) + tgt.darboux.u * mu_cos(src)
}

fn target_conormal(tgt: &Sample) -> Vec3 {
    let (du, dv) = tgt.point.chart_velocity();
    chart_conormal(&tgt.point.surface, du, dv)
}

fn position_condition(
    hyp: &Hypotheses,
    shift: impl Fn(&Sample, &Sample) -> Vec3,
    what: &str,
) -> Gate {
    let dev = hyp
        .samples
        .iter()
        .map(|(s, t)| (t.position() + shift(s, t)).max_abs_diff(transplant(s, t)))
        .fold(0.0, f64::max);
    if dev <= hyp.tol_thm {
        Ok(())
    } else {
        violated(format!(
            "position condition {what} fails: max deviation {dev:e}"
        ))
    }
}

fn expect_target(hyp: &Hypotheses, wanted: impl Fn(ClassTag) -> bool, description: &str) -> Gate {
    match hyp.target_tag() {
        Some(tag) if wanted(tag) => Ok(()),
        Some(tag) => violated(format!(
            "case requires a target that is {description}, found {tag}"
        )),
        None => violated("target not classified"),
    }
}

fn residual_rows(hyp: &Hypotheses) -> Vec<SampleRow> {
    hyp.samples
        .iter()
        .map(|(_, t)| SampleRow::new(t.s(), "target_residual", t.decomposition.residual, 0.0))
        .collect()
}

/// Rectifying curve with `k_n != 0` carried by an isometry: the target is
/// rectifying when its class matches `case` and the position condition of
/// that case holds.
pub fn t3_1(hyp: &Hypotheses, case: CaseTag) -> TheoremReport {
    let report = TheoremReport::new(TheoremId::T3_1, case, hyp)
        .note(TRANSPLANT_NOTE)
        .note(SIGN_NOTE);
    let gate = gate_common(hyp, false)
        .and_then(|_| gate_kn_nonzero(hyp))
        .and_then(|_| match case {
            CaseTag::I => expect_target(hyp, |t| t == ClassTag::Geodesic, "geodesic")
                .and_then(|_| position_condition(hyp, |_, _| Vec3::ZERO, "gamma_bar = f_*(gamma)")),
            CaseTag::Ii => expect_target(hyp, |t| t == ClassTag::Asymptotic, "asymptotic")
                .and_then(|_| {
                    position_condition(
                        hyp,
                        |s, t| target_conormal(t) * mu_sin(s),
                        "gamma_bar + mu sin(theta) P_bar = f_*(gamma)",
                    )
                }),
            CaseTag::Iii => expect_target(
                hyp,
                |t| t == ClassTag::Generic,
                "neither geodesic nor asymptotic",
            )
            .and_then(|_| position_condition(hyp, |_, _| Vec3::ZERO, "gamma_bar = f_*(gamma)")),
            CaseTag::NotApplicable => violated("T3.1 needs case i, ii or iii"),
        });
    apply(report, gate, || {
        let mut rows = residual_rows(hyp);
        for (s, t) in &hyp.samples {
            rows.push(SampleRow::new(t.s(), "lambda_bar", t.lambda(), s.lambda()));
            match case {
                CaseTag::I => rows.push(SampleRow::new(t.s(), "mu_bar", mu_sin(t), mu_sin(s))),
                CaseTag::Ii => rows.push(SampleRow::new(
                    t.s(),
                    "mu_bar",
                    t.position().dot(t.darboux.u),
                    mu_cos(s),
                )),
                _ => {
                    rows.push(SampleRow::new(t.s(), "mu_kn_product", mu_sin(t), mu_sin(s)));
                    rows.push(SampleRow::new(t.s(), "mu_kg_product", mu_cos(t), mu_cos(s)));
                }
            }
        }
        rows
    })
}

/// Rectifying asymptotic curve carried by an isometry.
pub fn t3_2(hyp: &Hypotheses, case: CaseTag) -> TheoremReport {
    let report = TheoremReport::new(TheoremId::T3_2, case, hyp)
        .note(TRANSPLANT_NOTE)
        .note(F_STAR_NOTE);
    let gate = gate_common(hyp, false)
        .and_then(|_| gate_kn_zero(hyp))
        .and_then(|_| match case {
            CaseTag::I => expect_target(hyp, |t| t == ClassTag::Asymptotic, "asymptotic")
                .and_then(|_| position_condition(hyp, |_, _| Vec3::ZERO, "gamma_bar = F_*(gamma)")),
            CaseTag::Ii => expect_target(hyp, |t| t != ClassTag::Asymptotic, "not asymptotic")
                .and_then(|_| {
                    position_condition(
                        hyp,
                        |s, t| target_conormal(t) * -s.mu(),
                        "gamma_bar - mu P_bar = F_*(gamma)",
                    )
                }),
            _ => violated("T3.2 needs case i or ii"),
        });
    apply(report, gate, || residual_rows(hyp))
}

fn require_tangent(a: f64, b: f64) -> Result<(), TheoremError> {
    if a == 0.0 && b == 0.0 {
        Err(RectError::ZeroTangent.into())
    } else {
        Ok(())
    }
}

fn tangent_dot(s: &Sample, a: f64, b: f64) -> f64 {
    let j = &s.point.surface;
    s.position().dot(j.du * a + j.dv * b)
}

/// `gamma . P` for the conormal of `a phi_u + b phi_v`, from the chart
/// components on the source.
fn conormal_dot_chart(s: &Sample, a: f64, b: f64) -> f64 {
    let j = &s.point.surface;
    let ff = j.first_form();
    let g = s.position();
    ((a * ff.e + b * ff.f) * g.dot(j.dv) - (a * ff.f + b * ff.g) * g.dot(j.du)) / ff.det().sqrt()
}

/// `gamma_bar . (U_bar x (a phi_bar_u + b phi_bar_v))`.
fn conormal_dot_direct(t: &Sample, a: f64, b: f64) -> f64 {
    let j = &t.point.surface;
    t.position().dot(t.darboux.u.cross(j.du * a + j.dv * b))
}

/// `(aE + bF) u' + (aF + bG) v'`.
fn weighted_velocity(s: &Sample, a: f64, b: f64) -> f64 {
    let ff = s.point.surface.first_form();
    let (du, dv) = s.point.chart_velocity();
    (a * ff.e + b * ff.f) * du + (a * ff.f + b * ff.g) * dv
}

fn case_from_target(hyp: &Hypotheses, asymptotic_split_only: bool) -> CaseTag {
    match hyp.target_tag() {
        Some(ClassTag::Asymptotic) if asymptotic_split_only => CaseTag::I,
        Some(_) if asymptotic_split_only => CaseTag::Ii,
        Some(ClassTag::Geodesic) => CaseTag::I,
        Some(ClassTag::Asymptotic) => CaseTag::Ii,
        Some(ClassTag::Generic) => CaseTag::Iii,
        _ => CaseTag::NotApplicable,
    }
}

/// Tangential component `gamma . (a phi_u + b phi_v)` under an isometry, for a
/// source with `k_n != 0`.
pub fn t3_3(hyp: &Hypotheses, a: f64, b: f64) -> Result<TheoremReport, TheoremError> {
    require_tangent(a, b)?;
    let case = case_from_target(hyp, false);
    let report = TheoremReport::new(TheoremId::T3_3, case, hyp).note(SIGN_NOTE);
    let gate = gate_common(hyp, true).and_then(|_| gate_kn_nonzero(hyp));
    Ok(apply(report, gate, || {
        hyp.samples
            .iter()
            .map(|(s, t)| {
                let lhs = tangent_dot(t, a, b) - tangent_dot(s, a, b);
                let (du, dv) = s.point.chart_velocity();
                let rhs = match case {
                    CaseTag::Ii => mu_sin(s) * s.sqrt_det() * (a * dv - b * du),
                    _ => 0.0,
                };
                SampleRow::new(s.s(), "tangent_difference", lhs, rhs)
            })
            .collect()
    }))
}

/// Tangential component for an asymptotic source.
pub fn t3_4(hyp: &Hypotheses, a: f64, b: f64) -> Result<TheoremReport, TheoremError> {
    require_tangent(a, b)?;
    let case = case_from_target(hyp, true);
    let report = TheoremReport::new(TheoremId::T3_4, case, hyp).note(SIGN_NOTE);
    let gate = gate_common(hyp, true).and_then(|_| gate_kn_zero(hyp));
    Ok(apply(report, gate, || {
        hyp.samples
            .iter()
            .map(|(s, t)| {
                let lhs = tangent_dot(t, a, b) - tangent_dot(s, a, b);
                let (du, dv) = s.point.chart_velocity();
                let rhs = match case {
                    CaseTag::Ii => mu_sin(t) * s.sqrt_det() * (b * du - a * dv),
                    _ => 0.0,
                };
                SampleRow::new(s.s(), "tangent_difference", lhs, rhs)
            })
            .collect()
    }))
}

const CONORMAL_NOTE: &str = "case ii uses the right-hand side derived from the chart components, without the sqrt(EG - F^2) factor and with both velocity terms added; the printed form is reported as printed_rhs";

/// Conormal component `gamma . P` with `P = U x (a phi_u + b phi_v)`, for a
/// source with `k_n != 0`.
pub fn t3_5(hyp: &Hypotheses, a: f64, b: f64) -> Result<TheoremReport, TheoremError> {
    require_tangent(a, b)?;
    let case = case_from_target(hyp, false);
    let mut report = TheoremReport::new(TheoremId::T3_5, case, hyp).note(SIGN_NOTE);
    if case == CaseTag::Ii {
        report = report.note(CONORMAL_NOTE);
    }
    let gate = gate_common(hyp, true).and_then(|_| gate_kn_nonzero(hyp));
    Ok(apply(report, gate, || {
        hyp.samples
            .iter()
            .map(|(s, t)| {
                let lhs = conormal_dot_direct(t, a, b) - conormal_dot_chart(s, a, b);
                match case {
                    CaseTag::Ii => {
                        let ff = s.point.surface.first_form();
                        let (du, dv) = s.point.chart_velocity();
                        let printed = ((a * ff.e + b * ff.f) * du - (a * ff.f + b * ff.g) * dv)
                            * s.sqrt_det()
                            * mu_sin(s);
                        SampleRow::new(
                            s.s(),
                            "conormal_difference",
                            lhs,
                            -mu_sin(s) * weighted_velocity(s, a, b),
                        )
                        .with_printed(printed)
                    }
                    _ => SampleRow::new(s.s(), "conormal_difference", lhs, 0.0),
                }
            })
            .collect()
    }))
}

/// Conormal component for an asymptotic source.
pub fn t3_6(hyp: &Hypotheses, a: f64, b: f64) -> Result<TheoremReport, TheoremError> {
    require_tangent(a, b)?;
    let case = case_from_target(hyp, true);
    let mut report = TheoremReport::new(TheoremId::T3_6, case, hyp).note(SIGN_NOTE);
    if case == CaseTag::Ii {
        report = report.note(CONORMAL_NOTE);
    }
    let gate = gate_common(hyp, true).and_then(|_| gate_kn_zero(hyp));
    Ok(apply(report, gate, || {
        hyp.samples
            .iter()
            .map(|(s, t)| {
                let lhs = conormal_dot_direct(t, a, b) - conormal_dot_chart(s, a, b);
                match case {
                    CaseTag::Ii => {
                        let w = weighted_velocity(s, a, b);
                        SampleRow::new(s.s(), "conormal_difference", lhs, mu_sin(t) * w)
                            .with_printed(w * s.sqrt_det() * mu_sin(t))
                    }
                    _ => SampleRow::new(s.s(), "conormal_difference", lhs, 0.0),
                }
            })
            .collect()
    }))
}

/// Normal component `gamma . U` under an isometry.
pub fn t3_7(hyp: &Hypotheses) -> TheoremReport {
    let report = TheoremReport::new(TheoremId::T3_7, CaseTag::NotApplicable, hyp);
    let gate = gate_common(hyp, true);
    let geodesic = hyp.source_class.is_some_and(|c| c.geodesic_evidence());
    apply(report, gate, || {
        let mut rows = Vec::new();
        for (s, t) in &hyp.samples {
            let lhs = t.position().dot(t.darboux.u);
            let rhs = s.position().dot(s.darboux.u);
            rows.push(SampleRow::new(s.s(), "normal", lhs, rhs));
            rows.push(SampleRow::new(
                s.s(),
                "source_normal_closed_form",
                rhs,
                mu_cos(s),
            ));
            rows.push(SampleRow::new(
                s.s(),
                "target_normal_closed_form",
                lhs,
                mu_cos(t),
            ));
            if geodesic {
                rows.push(SampleRow::new(s.s(), "source_normal_vanishes", rhs, 0.0));
                rows.push(SampleRow::new(s.s(), "target_normal_vanishes", lhs, 0.0));
            }
        }
        rows
    })
}

/// Invariance of all three components when both curves share a class.
pub fn note(hyp: &Hypotheses, a: f64, b: f64) -> Result<TheoremReport, TheoremError> {
    require_tangent(a, b)?;
    let case = match (hyp.source_tag(), hyp.target_tag()) {
        (Some(ClassTag::Asymptotic), Some(ClassTag::Asymptotic)) => CaseTag::I,
        (Some(ClassTag::Geodesic), Some(ClassTag::Geodesic)) => CaseTag::Ii,
        (Some(ClassTag::Generic), Some(ClassTag::Generic)) => CaseTag::Iii,
        _ => CaseTag::NotApplicable,
    };
    let report = TheoremReport::new(TheoremId::Note, case, hyp);
    let gate = gate_common(hyp, true).and_then(|_| {
        if case == CaseTag::NotApplicable {
            violated(format!(
                "classes differ (source {}, target {}); none of the three conditions holds",
                hyp.source_tag().map_or("-".into(), |t| t.to_string()),
                hyp.target_tag().map_or("-".into(), |t| t.to_string())
            ))
        } else {
            Ok(())
        }
    });
    Ok(apply(report, gate, || {
        let mut rows = Vec::new();
        for (s, t) in &hyp.samples {
            rows.push(SampleRow::new(
                s.s(),
                "tangent",
                tangent_dot(t, a, b),
                tangent_dot(s, a, b),
            ));
            rows.push(SampleRow::new(
                s.s(),
                "conormal",
                conormal_dot_direct(t, a, b),
                conormal_dot_direct(s, a, b),
            ));
            rows.push(SampleRow::new(
                s.s(),
                "normal",
                t.position().dot(t.darboux.u),
                s.position().dot(s.darboux.u),
            ));
        }
        rows
    }))
}

pub fn check_t3_1(
    pair: &IsometryPair,
    curve: &SurfaceCurve,
    grid: &[f64],
    case: CaseTag,
    policy: &TolerancePolicy,
) -> Result<TheoremReport, TheoremError> {
    Ok(t3_1(&hypotheses(pair, curve, grid, policy)?, case))
}

pub fn check_t3_2(
    pair: &IsometryPair,
    curve: &SurfaceCurve,
    grid: &[f64],
    case: CaseTag,
    policy: &TolerancePolicy,
) -> Result<TheoremReport, TheoremError> {
    Ok(t3_2(&hypotheses(pair, curve, grid, policy)?, case))
}

pub fn check_t3_3(
    pair: &IsometryPair,
    curve: &SurfaceCurve,
    a: f64,
    b: f64,
    grid: &[f64],
    policy: &TolerancePolicy,
) -> Result<TheoremReport, TheoremError> {
    require_tangent(a, b)?;
    t3_3(&hypotheses(pair, curve, grid, policy)?, a, b)
}

pub fn check_t3_4(
    pair: &IsometryPair,
    curve: &SurfaceCurve,
    a: f64,
    b: f64,
    grid: &[f64],
    policy: &TolerancePolicy,
) -> Result<TheoremReport, TheoremError> {
    require_tangent(a, b)?;
    t3_4(&hypotheses(pair, curve, grid, policy)?, a, b)
}

pub fn check_t3_5(
    pair: &IsometryPair,
    curve: &SurfaceCurve,
    a: f64,
    b: f64,
    grid: &[f64],
    policy: &TolerancePolicy,
) -> Result<TheoremReport, TheoremError> {
    require_tangent(a, b)?;
    t3_5(&hypotheses(pair, curve, grid, policy)?, a, b)
}

pub fn check_t3_6(
    pair: &IsometryPair,
    curve: &SurfaceCurve,
    a: f64,
    b: f64,
    grid: &[f64],
    policy: &TolerancePolicy,
) -> Result<TheoremReport, TheoremError> {
    require_tangent(a, b)?;
    t3_6(&hypotheses(pair, curve, grid, policy)?, a, b)
}

pub fn check_t3_7(
    pair: &IsometryPair,
    curve: &SurfaceCurve,
    grid: &[f64],
    policy: &TolerancePolicy,
) -> Result<TheoremReport, TheoremError> {
    Ok(t3_7(&hypotheses(pair, curve, grid, policy)?))
}

/// The `k_n = 0` analogues: T3.2 in both cases, then T3.4 and T3.6 once per
/// coefficient pair.
pub fn check_kn_zero_variants(
    pair: &IsometryPair,
    curve: &SurfaceCurve,
    coefficients: &[(f64, f64)],
    grid: &[f64],
    policy: &TolerancePolicy,
) -> Result<Vec<TheoremReport>, TheoremError> {
    let hyp = hypotheses(pair, curve, grid, policy)?;
    let mut out = vec![t3_2(&hyp, CaseTag::I), t3_2(&hyp, CaseTag::Ii)];
    for &(a, b) in coefficients {
        out.push(t3_4(&hyp, a, b)?);
        out.push(t3_6(&hyp, a, b)?);
    }
    Ok(out)
}

pub fn check_note(
    pair: &IsometryPair,
    curve: &SurfaceCurve,
    a: f64,
    b: f64,
    grid: &[f64],
    policy: &TolerancePolicy,
) -> Result<TheoremReport, TheoremError> {
    require_tangent(a, b)?;
    note(&hypotheses(pair, curve, grid, policy)?, a, b)
}

/// Every checker on precomputed hypotheses: the explicit cases of T3.1 and
/// T3.2, T3.7, and the coefficient-dependent checks once per `(a, b)`.
pub fn run_all(
    hyp: &Hypotheses,
    coefficients: &[(f64, f64)],
) -> Result<Vec<TheoremReport>, TheoremError> {
    let mut out = Vec::new();
    for &case in TheoremId::T3_1.cases() {
        out.push(t3_1(hyp, case));
    }
    for &case in TheoremId::T3_2.cases() {
        out.push(t3_2(hyp, case));
    }
    for &(a, b) in coefficients {
        out.push(t3_3(hyp, a, b)?);
        out.push(t3_4(hyp, a, b)?);
        out.push(t3_5(hyp, a, b)?);
        out.push(t3_6(hyp, a, b)?);
        out.push(note(hyp, a, b)?);
    }
    out.push(t3_7(hyp));
    Ok(out)
}

/// `mu_bar sin(theta_bar) = mu sin(theta)` and `mu_bar cos(theta_bar) = mu cos(theta)`
/// from the independent decompositions on each surface.
pub fn matched_products(hyp: &Hypotheses) -> IdentityReport {
    let rows: Vec<SampleRow> = hyp
        .samples
        .iter()
        .flat_map(|(s, t)| {
            [
                SampleRow::new(s.s(), "mu_kn_product", mu_sin(t), mu_sin(s)),
                SampleRow::new(s.s(), "mu_kg_product", mu_cos(t), mu_cos(s)),
            ]
        })
        .collect();
    let mut r = IdentityReport::from_rows("matched products", rows, hyp.tol_thm);
    if hyp.samples.is_empty() {
        r.reason =
            Some("no paired samples: a side is degenerate or the pair is not an isometry".into());
    }
    r
}

/// Closed-form chart, conormal, tangent and normal components against direct
/// dot products on a single surface.
pub fn internal_consistency(
    curve: &SurfaceCurve,
    patch: &crate::surfaces::SurfacePatch,
    grid: &[f64],
    coefficients: &[(f64, f64)],
    policy: &TolerancePolicy,
) -> Result<IdentityReport, TheoremError> {
    let mut rows = Vec::new();
    let mut tol = 0.0f64;
    let mut push =
        |quantity: &'static str, c: crate::rectifying::IdentityCheck, rows: &mut Vec<SampleRow>| {
            tol = tol.max(c.tol);
            rows.push(SampleRow::new(c.s, quantity, c.direct, c.closed_form));
        };
    for &s in grid {
        let smp = crate::rectifying::sample(curve, patch, s, policy)?;
        let chart = component_chart_at(&smp, policy)?;
        push("gamma.phi_u", chart.along_u, &mut rows);
        push("gamma.phi_v", chart.along_v, &mut rows);
        push("gamma.U", component_normal_at(&smp, policy)?, &mut rows);
        for &(a, b) in coefficients {
            push(
                "gamma.T_ab",
                component_tangent_at(&smp, a, b, policy)?,
                &mut rows,
            );
            push("gamma.P_ab", component_p_at(&smp, a, b, policy)?, &mut rows);
        }
    }
    Ok(IdentityReport::from_rows(
        format!(
            "internal consistency of {} on {}",
            curve.name(),
            patch.name()
        ),
        rows,
        tol,
    ))
}

//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::Instant;

use surfcurve::frames::{
    curve_catalog, embed, frame_invariants, frenet, sample_grid, trace, FrameError, SurfaceCurve,
};
use surfcurve::isometry::{
    canonical_pair, geodesic_preservation_check, grid_for, metric_deviation, probe_curves,
};
use surfcurve::rectifying::{
    classify, component_chart_at, component_normal_at, component_p_at, component_tangent_at,
    decompose, fixture_rectifying, reconstruct, sample, DilatedSphericalParams,
};
use surfcurve::surfaces::{catalog, SurfacePatch};
use surfcurve::theorems::{
    development_fixture, draw_coefficients, fixture_pairs, fixture_search, helix_fixture,
    hypotheses, matched_products, run_all, CurveFamily, SearchSettings, TheoremId, TheoremReport,
    Verdict,
};
use surfcurve::TolerancePolicy;

const FRAME_SAMPLES: usize = 200;
const TOL_FRAME: f64 = 1e-9;
const TOL_HELIX: f64 = 1e-9;
const TOL_HELIX_RESIDUAL: f64 = 1e-6;
const TOL_RECT: f64 = 1e-5;
const TOL_RECONSTRUCTION: f64 = 1e-4;
const TOL_CLOSED_FORM: f64 = 1e-5;
const DRAWS: usize = 20;
const TOL_PLANE_CYLINDER: f64 = 1e-12;
const TOL_HELICOID_CATENOID: f64 = 1e-9;
const TOL_KG: f64 = 1e-6;
const CURVES_PER_PAIR: usize = 5;
const TOL_MATCHED: f64 = 1e-5;
const RUNTIME_BUDGET_S: f64 = 60.0;

struct Suite {
    failures: usize,
    total: usize,
}

impl Suite {
    fn check(&mut self, name: &str, result: Result<String, String>) {
        self.total += 1;
        match result {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                self.failures += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
}

fn within(value: f64, tol: f64, what: &str) -> Result<String, String> {
    if value <= tol {
        Ok(format!("{what} {value:.3e} <= {tol:.0e}"))
    } else {
        Err(format!("{what} {value:.3e} > {tol:.0e}"))
    }
}

fn frame_catalog(policy: &TolerancePolicy) -> Vec<(&'static str, SurfaceCurve, SurfacePatch)> {
    let (dilated, cone) = fixture_rectifying(&DilatedSphericalParams::default(), policy).unwrap();
    vec![
        (
            "helix",
            curve_catalog("helix", &[3.0, 4.0]).unwrap(),
            catalog("cylinder", &[3.0]).unwrap(),
        ),
        (
            "plane circle",
            curve_catalog("circle", &[2.0]).unwrap(),
            catalog("plane", &[]).unwrap(),
        ),
        (
            "sphere great circle",
            curve_catalog("great-circle", &[]).unwrap(),
            catalog("sphere", &[]).unwrap(),
        ),
        ("dilated-spherical", dilated, cone),
    ]
}

/// Largest value of `f` over the frame invariants of every catalog fixture.
fn worst_invariant(
    policy: &TolerancePolicy,
    f: impl Fn(&surfcurve::frames::FrameInvariants) -> f64,
) -> Result<f64, String> {
    let mut worst = 0.0f64;
    for (name, c, p) in frame_catalog(policy) {
        for s in sample_grid(&c, &p, FRAME_SAMPLES, policy) {
            let point = trace(&c, &p, s, policy).map_err(|e| format!("{name}: {e}"))?;
            let inv = frame_invariants(&point, &p, policy).map_err(|e| format!("{name}: {e}"))?;
            worst = worst.max(f(&inv));
        }
    }
    Ok(worst)
}

/// Per fixture: name, reports, matched-product deviation, whether any sample had both decompositions.
type FixtureRun = (String, Vec<TheoremReport>, f64, bool);

fn theorem_suite(policy: &TolerancePolicy, seed: u64) -> Vec<FixtureRun> {
    let coeffs = draw_coefficients(seed, DRAWS);
    fixture_pairs(policy)
        .unwrap()
        .into_iter()
        .map(|f| {
            let grid = grid_for(&f.curve, &f.pair, policy);
            let h = hypotheses(&f.pair, &f.curve, &grid, policy).unwrap();
            let m = matched_products(&h);
            let reports = run_all(&h, &coeffs).unwrap();
            (
                f.name.to_string(),
                reports,
                m.max_dev,
                !m.samples.is_empty(),
            )
        })
        .collect()
}

fn main() -> ExitCode {
    let start = Instant::now();
    let policy = TolerancePolicy::default();
    let mut suite = Suite {
        failures: 0,
        total: 0,
    };

    // frames
    suite.check(
        "frame orthonormality (Frenet and Darboux Gram, 200 samples x 4 fixtures)",
        worst_invariant(&policy, |i| {
            i.frenet_gram.unwrap_or(f64::INFINITY).max(i.darboux_gram)
        })
        .and_then(|w| within(w, TOL_FRAME, "max Gram deviation")),
    );
    suite.check(
        "curvature split k_n^2 + k_g^2 = kappa^2",
        worst_invariant(&policy, |i| i.curvature_split)
            .and_then(|w| within(w, TOL_FRAME, "max deviation")),
    );
    suite.check(
        "acceleration split gamma'' = k_n U + k_g P",
        worst_invariant(&policy, |i| i.acceleration_split)
            .and_then(|w| within(w, TOL_FRAME, "max deviation")),
    );
    suite.check(
        "rotation reconstruction of P and U from N, B and theta",
        worst_invariant(&policy, |i| i.relation.max_deviation)
            .and_then(|w| within(w, TOL_FRAME, "max deviation")),
    );

    // helix ground truth
    let helix = curve_catalog("helix", &[3.0, 4.0]).unwrap();
    let cyl = catalog("cylinder", &[3.0]).unwrap();
    let helix_grid = sample_grid(&helix, &cyl, 41, &policy);
    suite.check("helix r=3, h=4: kappa = 0.12, tau = 0.16, k_g = 0", {
        let mut worst = 0.0f64;
        for &s in &helix_grid {
            let f = frenet(&helix, &cyl, s, &policy).unwrap();
            let d = surfcurve::frames::darboux(&helix, &cyl, s, &policy).unwrap();
            worst = worst
                .max((f.kappa - 0.12).abs())
                .max((f.tau - 0.16).abs())
                .max(d.k_g.abs());
        }
        within(worst, TOL_HELIX, "max deviation")
    });
    suite.check("helix rectifying residual = -3", {
        let worst = helix_grid
            .iter()
            .map(|&s| (decompose(&helix, &cyl, s, &policy).unwrap().residual + 3.0).abs())
            .fold(0.0, f64::max);
        within(worst, TOL_HELIX_RESIDUAL, "max |residual + 3|")
    });

    // rectifying fixture
    let (dilated, cone) = fixture_rectifying(&DilatedSphericalParams::default(), &policy).unwrap();
    let dgrid = sample_grid(&dilated, &cone, FRAME_SAMPLES, &policy);
    suite.check("dilated-spherical residual max |gamma . N|", {
        let worst = dgrid
            .iter()
            .map(|&s| {
                decompose(&dilated, &cone, s, &policy)
                    .unwrap()
                    .residual
                    .abs()
            })
            .fold(0.0, f64::max);
        within(worst, TOL_RECT, "max |gamma . N|")
    });
    suite.check(
        "dilated-spherical position reconstruction from lambda, mu, theta",
        {
            let class = classify(&dilated, &cone, &dgrid, &policy).unwrap();
            let worst = dgrid
                .iter()
                .map(|&s| {
                    let r = reconstruct(&dilated, &cone, s, class.tag, &policy).unwrap();
                    r.max_abs_diff(embed(&dilated, &cone, s).unwrap())
                })
                .fold(0.0, f64::max);
            within(worst, TOL_RECONSTRUCTION, "max reconstruction error")
        },
    );
    suite.check(
        "closed-form chart, tangent, conormal and normal components (20 draws)",
        {
            let coeffs = draw_coefficients(2024, DRAWS);
            let mut worst = 0.0f64;
            for &s in &dgrid {
                let smp = sample(&dilated, &cone, s, &policy).unwrap();
                let c = component_chart_at(&smp, &policy).unwrap();
                worst = worst.max(c.along_u.deviation).max(c.along_v.deviation);
                worst = worst.max(component_normal_at(&smp, &policy).unwrap().deviation);
                for &(a, b) in &coeffs {
                    worst = worst.max(component_tangent_at(&smp, a, b, &policy).unwrap().deviation);
                    worst = worst.max(component_p_at(&smp, a, b, &policy).unwrap().deviation);
                }
            }
            within(worst, TOL_CLOSED_FORM, "max deviation")
        },
    );

    // isometries
    let pc = canonical_pair("plane-cylinder", &[]).unwrap();
    let hc = canonical_pair("helicoid-catenoid", &[]).unwrap();
    suite.check(
        "plane-cylinder metric deviation",
        within(
            metric_deviation(&pc, &pc.default_grid(), policy.tol_iso)
                .unwrap()
                .max_deviation,
            TOL_PLANE_CYLINDER,
            "max deviation",
        ),
    );
    suite.check(
        "helicoid-catenoid metric deviation",
        within(
            metric_deviation(&hc, &hc.default_grid(), policy.tol_iso)
                .unwrap()
                .max_deviation,
            TOL_HELICOID_CATENOID,
            "max deviation",
        ),
    );
    suite.check(
        "k_g invariance for 5 transferred curves per isometric pair",
        {
            let mut worst = 0.0f64;
            let mut count = 0;
            for name in ["plane-cylinder", "helicoid-catenoid", "plane-cone"] {
                let pair = canonical_pair(name, &[]).unwrap();
                for c in probe_curves(&pair, CURVES_PER_PAIR, &policy).unwrap() {
                    let g = grid_for(&c, &pair, &policy);
                    worst = worst.max(
                        geodesic_preservation_check(&pair, &c, &g, &policy)
                            .unwrap()
                            .max_kg_difference,
                    );
                    count += 1;
                }
            }
            within(
                worst,
                TOL_KG,
                &format!("max |k_g - k_g_bar| over {count} curves"),
            )
        },
    );
    suite.check("geodesic preservation: plane line to cylinder helix", {
        let pair = canonical_pair("plane-cylinder", &[3.0]).unwrap();
        let g = grid_for(&helix, &pair, &policy);
        let r = geodesic_preservation_check(&pair, &helix, &g, &policy).unwrap();
        if r.pass && r.source_class.geodesic_evidence() && r.target_class.geodesic_evidence() {
            Ok(format!(
                "both geodesic, max |k_g - k_g_bar| {:.3e}",
                r.max_kg_difference
            ))
        } else {
            Err(format!(
                "source {} target {}",
                r.source_class.tag, r.target_class.tag
            ))
        }
    });

    // theorem suite
    let suite_a = theorem_suite(&policy, 7);
    suite.check(
        "every theorem checker has a satisfying and a gated input",
        {
            let mut missing = Vec::new();
            for id in TheoremId::ALL {
                let all = || {
                    suite_a
                        .iter()
                        .flat_map(|(_, r, _, _)| r)
                        .filter(|r| r.theorem_id == id)
                };
                let pass = all().any(|r| r.verdict == Verdict::Pass);
                let skip = all().any(|r| r.verdict == Verdict::Skipped);
                if !(pass && skip) {
                    missing.push(format!("{id} (pass {pass}, skipped {skip})"));
                }
            }
            if missing.is_empty() {
                Ok(format!("{} checkers", TheoremId::ALL.len()))
            } else {
                Err(missing.join(", "))
            }
        },
    );
    suite.check("no theorem check reports fail; verdict rule holds", {
        let reports: Vec<_> = suite_a
            .iter()
            .flat_map(|(f, r, _, _)| r.iter().map(move |r| (f, r)))
            .collect();
        let bad: Vec<String> = reports
            .iter()
            .filter(|(_, r)| r.verdict == Verdict::Fail || !r.is_consistent())
            .map(|(f, r)| format!("{f} {} {} ({:.2e})", r.theorem_id, r.case_tag, r.max_dev))
            .collect();
        let passed = reports
            .iter()
            .filter(|(_, r)| r.verdict == Verdict::Pass)
            .count();
        if bad.is_empty() {
            Ok(format!(
                "{} reports, {passed} pass, {} skipped",
                reports.len(),
                reports.len() - passed
            ))
        } else {
            Err(bad.join(", "))
        }
    });
    suite.check(
        "matched products mu sin(theta), mu cos(theta) agree across pairs",
        {
            let with_samples: Vec<_> = suite_a.iter().filter(|(_, _, _, has)| *has).collect();
            let worst = with_samples
                .iter()
                .map(|(_, _, d, _)| *d)
                .fold(0.0, f64::max);
            if with_samples.is_empty() {
                Err("no pair with both decompositions".into())
            } else {
                within(
                    worst,
                    TOL_MATCHED,
                    &format!("max deviation over {} pairs", with_samples.len()),
                )
            }
        },
    );
    suite.check("hypothesis detection on gating fixtures", {
        let dev = development_fixture(&policy).unwrap();
        let hd = hypotheses(
            &dev.pair,
            &dev.curve,
            &grid_for(&dev.curve, &dev.pair, &policy),
            &policy,
        )
        .unwrap();
        let hx = helix_fixture().unwrap();
        let hh = hypotheses(
            &hx.pair,
            &hx.curve,
            &grid_for(&hx.curve, &hx.pair, &policy),
            &policy,
        )
        .unwrap();
        if hd.rect_source && !hd.rect_target && !hh.rect_source {
            Ok(format!(
                "cone/unrolling rect ({}, {}); helix source residual {:.6}",
                hd.rect_source, hd.rect_target, hh.max_residual_source
            ))
        } else {
            Err("unexpected rectifying flags".into())
        }
    });
    suite.check("fixture search: both-rectifying curve on two cones, none on classical pairs", {
        let settings = SearchSettings::default();
        let cc = fixture_search(&surfcurve::theorems::cone_cone_fixture().pair, CurveFamily::PolarLine, &settings, &policy);
        let hcat = fixture_search(&hc, CurveFamily::ChartLine, &settings, &policy);
        let pcone = fixture_search(&canonical_pair("plane-cone", &[]).unwrap(), CurveFamily::PolarLine, &settings, &policy);
        if cc.accepted && !hcat.accepted && !pcone.accepted {
            Ok(format!(
                "cone-cone residuals ({:.1e}, {:.1e}); helicoid-catenoid best {:.2e}; plane-cone best {:.2e}",
                cc.residual_source,
                cc.residual_target,
                hcat.residual_source.max(hcat.residual_target),
                pcone.residual_source.max(pcone.residual_target)
            ))
        } else {
            Err(format!("accepted: cone-cone {}, helicoid-catenoid {}, plane-cone {}", cc.accepted, hcat.accepted, pcone.accepted))
        }
    });

    // negative controls
    suite.check("helix never flagged rectifying", {
        let flagged = helix_grid.iter().any(|&s| {
            decompose(&helix, &cyl, s, &policy)
                .unwrap()
                .is_rectifying(policy.tol_rect)
        });
        if flagged {
            Err("a helix sample passed the rectifying test".into())
        } else {
            Ok(format!("{} samples, none rectifying", helix_grid.len()))
        }
    });
    suite.check("plane-sphere fails the metric check", {
        let ps = canonical_pair("plane-sphere", &[]).unwrap();
        let r = metric_deviation(&ps, &ps.default_grid(), policy.tol_iso).unwrap();
        if r.pass {
            Err("plane-sphere passed".into())
        } else {
            Ok(format!(
                "deviation {:.3e} in {} at ({:.3}, {:.3})",
                r.max_deviation, r.component, r.at.0, r.at.1
            ))
        }
    });
    suite.check("straight line triggers the degenerate-curvature error", {
        let line = curve_catalog("line", &[0.0, 0.0, 0.6, 0.8]).unwrap();
        match frenet(&line, &catalog("plane", &[]).unwrap(), 0.0, &policy) {
            Err(FrameError::CurvatureDegenerate { kappa, .. }) => Ok(format!("kappa = {kappa:e}")),
            other => Err(format!("{other:?}")),
        }
    });

    // determinism
    suite.check("identical seed gives byte-identical reports", {
        let ser = |s: &[FixtureRun]| {
            serde_json::to_vec(&s.iter().map(|(_, r, _, _)| r).collect::<Vec<_>>()).unwrap()
        };
        let (a, b) = (ser(&suite_a), ser(&theorem_suite(&policy, 7)));
        if a == b {
            Ok(format!("{} bytes", a.len()))
        } else {
            Err("reports differ".into())
        }
    });

    let elapsed = start.elapsed().as_secs_f64();
    suite.check(
        "suite runtime",
        within(elapsed, RUNTIME_BUDGET_S, "seconds"),
    );

    println!(
        "{} of {} criteria pass",
        suite.total - suite.failures,
        suite.total
    );
    if suite.failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Acceptance gate: ten numbered criteria, each printing one pass/fail line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines;
//! each criterion is an independent test so a failure pinpoints its bar.

use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nullcone::cone_frame::{
    build_frame_jets, curvature_jets, frenet_residuals, gram_residuals, pairing_identity,
};
use nullcone::null_curve::{validate_null, ConeCurve, Grid};
use nullcone::pseudo_metric::{inner, perp, PerpVariant, Vec4};
use nullcone::scalar_expr::{fd_default_step, fd_derivative, parse, v4_value, Expr};
use nullcone::smarandache::{
    derived_tangent, smarandache_curve, AngleSet, SmarandacheKind, SmarandacheSpec,
};
use nullcone::verify::{run_suite, AuditConfig, SuiteId};

/// Run `body`, print the criterion's pass/fail line, and re-raise on failure.
fn criterion(name: &str, body: impl FnOnce()) {
    let outcome = catch_unwind(AssertUnwindSafe(body));
    match &outcome {
        Ok(()) => println!("{name}: PASS"),
        Err(_) => println!("{name}: FAIL"),
    }
    if let Err(panic) = outcome {
        resume_unwind(panic);
    }
}

struct Fixture {
    label: String,
    curve: ConeCurve,
    kappa1: f64,
}

fn fixtures() -> Vec<Fixture> {
    let mut out = Vec::new();
    for &a in &[0.5, 1.0, 2.0] {
        for &m in &[0.0, 1.0, 2.0] {
            out.push(Fixture {
                label: format!("hyperbolic(a={a}, m={m})"),
                curve: ConeCurve::hyperbolic(a, m).unwrap(),
                kappa1: a * a,
            });
        }
    }
    for &m in &[0.0, 2.0] {
        out.push(Fixture {
            label: format!("trigonometric(a=1, m={m})"),
            curve: ConeCurve::trigonometric(1.0, m).unwrap(),
            kappa1: -1.0,
        });
    }
    out
}

fn wide_grid() -> Grid {
    Grid::new(-2.0, 2.0, 201).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

fn rand_vec(rng: &mut ChaCha8Rng) -> Vec4 {
    let mut v = [0.0; 4];
    for c in v.iter_mut() {
        *c = rng.gen_range(-2.0..=2.0);
    }
    v
}

#[test]
fn criterion_01_canonical_nullity() {
    criterion("criterion-01 canonical-nullity", || {
        let grid = wide_grid();
        for fixture in fixtures() {
            let v = validate_null(&fixture.curve, &grid, 1e-12).unwrap();
            assert!(
                v.passed && v.max_abs_residual <= 1e-12,
                "{}: max residual {} at t = {}",
                fixture.label,
                v.max_abs_residual,
                v.worst_t
            );
        }
    });
}

#[test]
fn criterion_02_lemma1_identities() {
    criterion("criterion-02 lemma1-identities", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_5501);
        for _ in 0..1000 {
            let u = rand_vec(&mut rng);
            let v = rand_vec(&mut rng);
            for variant in [PerpVariant::P13, PerpVariant::P14] {
                let pu = perp(&u, variant);
                let pv = perp(&v, variant);
                let preserve = (inner(&pu, &pv).unwrap() - inner(&u, &v).unwrap()).abs();
                let antisym = (inner(&u, &pv).unwrap() + inner(&pu, &v).unwrap()).abs();
                assert!(
                    preserve <= 1e-12,
                    "product preservation residual {preserve}"
                );
                assert!(antisym <= 1e-12, "antisymmetry residual {antisym}");
            }
        }
    });
}

#[test]
fn criterion_03_frame_gram_conditions() {
    criterion("criterion-03 frame-gram-conditions", || {
        let grid = wide_grid();
        for fixture in fixtures() {
            for t in grid.points() {
                let frame = build_frame_jets(&fixture.curve, t, 2, 1e-9).unwrap();
                let residual = gram_residuals(&frame).max_abs();
                assert!(
                    residual <= 1e-9,
                    "{} at t = {t}: gram residual {residual}",
                    fixture.label
                );
            }
        }
    });
}

#[test]
fn criterion_04_pairing_identity() {
    criterion("criterion-04 pairing-identity", || {
        let grid = wide_grid();
        for fixture in fixtures() {
            for t in grid.points() {
                let identity = pairing_identity(&fixture.curve, t).unwrap();
                assert!(
                    identity.rel_residual <= 1e-10,
                    "{} at t = {t}: relative residual {}",
                    fixture.label,
                    identity.rel_residual
                );
            }
        }
    });
}

#[test]
fn criterion_05_frenet_residuals() {
    criterion("criterion-05 frenet-residuals", || {
        let grid = wide_grid();
        for fixture in fixtures() {
            for t in grid.points() {
                let frame = build_frame_jets(&fixture.curve, t, 3, 1e-9).unwrap();
                let residual = frenet_residuals(&frame).max_abs();
                assert!(
                    residual <= 1e-8,
                    "{} at t = {t}: motion-equation residual {residual}",
                    fixture.label
                );
                let kj = curvature_jets(&frame);
                let triple_dev =
                    kj.h.value()
                        .abs()
                        .max((kj.kappa1.value() - fixture.kappa1).abs())
                        .max(kj.kappa2.value().abs());
                assert!(
                    triple_dev <= 1e-9,
                    "{} at t = {t}: curvature triple off by {triple_dev}",
                    fixture.label
                );
            }
        }
    });
}

#[test]
fn criterion_06_differentiation_cross_oracle() {
    criterion("criterion-06 differentiation-cross-oracle", || {
        // 10 expressions × 100 seeded points = 1000 randomized samples.
        let sources = [
            "sin(2*t)+cos(t/2)",
            "sinh(t)*cosh(t)",
            "exp(t/2)-t^3",
            "(t^2+1)/(t^2+2)",
            "sqrt(t^2+1)",
            "t^4-3*t^2+0.5",
            "sin(t)*exp(-(t^2)/2)",
            "cos(t)^2-sin(t)^2",
            "1/(1+exp(-t))",
            "t*sinh(t/3)+cos((t^2)/4)",
        ];
        let exprs: Vec<Expr> = sources.iter().map(|s| parse(s).unwrap()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_5506);
        for (src, e) in sources.iter().zip(&exprs) {
            for _ in 0..100 {
                let t = rng.gen_range(-2.0..=2.0);
                let jet = e.jet_eval(t, 3).unwrap();
                for j in 1..=3 {
                    let fd = fd_derivative(e, t, j, fd_default_step(j, t)).unwrap();
                    assert!(
                        rel(jet.coeff(j), fd) <= 1e-5,
                        "{src} at t = {t}, order {j}: jet {} vs fd {fd}",
                        jet.coeff(j)
                    );
                }
            }
        }
        // Every frame field against central differences of its values.
        let h = 1e-5;
        let grid = Grid::new(-1.5, 1.5, 21).unwrap();
        for curve in [
            ConeCurve::hyperbolic(1.0, 2.0).unwrap(),
            ConeCurve::trigonometric(1.0, 2.0).unwrap(),
        ] {
            for t in grid.points() {
                let at = |t: f64| build_frame_jets(&curve, t, 2, 1e-9).unwrap();
                let (frame, plus, minus) = (at(t), at(t + h), at(t - h));
                let fields = [
                    ("gamma", &frame.gamma, &plus.gamma, &minus.gamma),
                    ("xi", &frame.xi, &plus.xi, &minus.xi),
                    ("n", &frame.n, &plus.n, &minus.n),
                    ("w", &frame.w, &plus.w, &minus.w),
                ];
                for (name, jet, p, m) in fields {
                    let (pv, mv) = (v4_value(p), v4_value(m));
                    for i in 0..4 {
                        let fd = (pv[i] - mv[i]) / (2.0 * h);
                        let d = jet[i].coeff(1);
                        assert!(
                            rel(d, fd) <= 1e-5,
                            "field {name}[{i}] at t = {t}: jet {d} vs fd {fd}"
                        );
                    }
                }
            }
        }
    });
}

#[test]
fn criterion_07_smarandache_collapse() {
    criterion("criterion-07 smarandache-collapse", || {
        let grid = wide_grid();
        let zero = || Expr::constant(0.0);
        for curve in [
            ConeCurve::hyperbolic(1.0, 2.0).unwrap(),
            ConeCurve::trigonometric(1.0, 2.0).unwrap(),
        ] {
            let cases: [(SmarandacheKind, AngleSet, &str); 5] = [
                (SmarandacheKind::GammaW, AngleSet::One(zero()), "w"),
                (SmarandacheKind::XiN, AngleSet::One(zero()), "n"),
                (SmarandacheKind::WN, AngleSet::One(zero()), "w"),
                (SmarandacheKind::XiNW, AngleSet::One(zero()), "mean"),
                (
                    SmarandacheKind::GammaXiNW,
                    AngleSet::Two(zero(), zero()),
                    "mean",
                ),
            ];
            for (kind, angles, target) in cases {
                let spec = SmarandacheSpec::new(curve.clone(), kind, angles).unwrap();
                for t in grid.points() {
                    let frame = build_frame_jets(&curve, t, 2, 1e-9).unwrap();
                    let n = v4_value(&frame.n);
                    let w = v4_value(&frame.w);
                    let want: Vec4 = match target {
                        "w" => w,
                        "n" => n,
                        _ => {
                            let r = std::f64::consts::FRAC_1_SQRT_2;
                            [
                                (n[0] + w[0]) * r,
                                (n[1] + w[1]) * r,
                                (n[2] + w[2]) * r,
                                (n[3] + w[3]) * r,
                            ]
                        }
                    };
                    let got = smarandache_curve(&spec, t).unwrap();
                    for i in 0..4 {
                        assert!(
                            (got[i] - want[i]).abs() <= 1e-12,
                            "{kind} at t = {t}, component {i}: {} vs {}",
                            got[i],
                            want[i]
                        );
                    }
                }
            }
        }
    });
}

#[test]
fn criterion_08_gamma_w_tangent_norm() {
    criterion("criterion-08 gamma-w-tangent-norm", || {
        let base = ConeCurve::hyperbolic(1.0, 2.0).unwrap();
        let grid = wide_grid();

        let null_spec = SmarandacheSpec::new(
            base.clone(),
            SmarandacheKind::GammaW,
            AngleSet::One(parse("t").unwrap()),
        )
        .unwrap();
        for t in grid.points() {
            let norm_sq = derived_tangent(&null_spec, t).unwrap().norm_sq;
            assert!(
                norm_sq.abs() <= 1e-9,
                "psi = t at t = {t}: norm^2 = {norm_sq}"
            );
        }

        let spec = SmarandacheSpec::new(
            base,
            SmarandacheKind::GammaW,
            AngleSet::One(parse("2*t").unwrap()),
        )
        .unwrap();
        for t in grid.points() {
            let got = derived_tangent(&spec, t).unwrap();
            let want = 3.0 * f64::sinh(4.0 * t);
            assert!(
                rel(got.norm_sq, want) <= 1e-6,
                "psi = 2t at t = {t}: norm^2 {} vs {want}",
                got.norm_sq
            );
        }
        // FD oracle for the tangent itself at spot-check points.
        let h = 1e-5;
        for &t in &[-1.2, 0.3, 0.9] {
            let jet = derived_tangent(&spec, t).unwrap().tangent;
            let plus = smarandache_curve(&spec, t + h).unwrap();
            let minus = smarandache_curve(&spec, t - h).unwrap();
            for i in 0..4 {
                let fd = (plus[i] - minus[i]) / (2.0 * h);
                assert!(
                    rel(jet[i], fd) <= 1e-5,
                    "tangent[{i}] at t = {t}: jet {} vs fd {fd}",
                    jet[i]
                );
            }
        }
    });
}

#[test]
fn criterion_09_curvature_audit_report() {
    criterion("criterion-09 curvature-audit-report", || {
        let config = AuditConfig::default();
        let first = run_suite(SuiteId::SmarandacheCurvatureAudit, &config)
            .expect("audit must complete without harness errors");
        let second = run_suite(SuiteId::SmarandacheCurvatureAudit, &config)
            .expect("audit must complete without harness errors");
        assert_eq!(
            first.to_json(),
            second.to_json(),
            "report must be byte-identical"
        );

        let suite = &first.suites[0];
        let reports = suite
            .audit_reports
            .as_ref()
            .expect("comparison reports present");
        assert_eq!(reports.len(), 14, "seven kinds x both formula modes");
        for kind in SmarandacheKind::all() {
            assert_eq!(
                reports.iter().filter(|r| r.kind == kind).count(),
                2,
                "kind {kind} must be audited in both modes"
            );
        }
        for report in reports {
            assert_eq!(report.records.len(), 11, "11-point grid per report");
            assert_eq!(report.summary.total(), 11);
        }
        assert!(
            suite.checks.iter().any(|c| c.verdict == "match"),
            "the self-test pass-through must record a match verdict"
        );
        assert_eq!(first.summary.unexpected_failures, 0, "zero harness errors");
    });
}

#[test]
fn criterion_10_negative_controls() {
    criterion("criterion-10 negative-controls", || {
        let report = run_suite(SuiteId::All, &AuditConfig::default()).unwrap();
        assert_eq!(report.suites.len(), 9);
        for suite in &report.suites {
            let controls: Vec<_> = suite.checks.iter().filter(|c| c.expected_fail).collect();
            assert!(!controls.is_empty(), "suite {} has no control", suite.suite);
            for control in controls {
                assert_eq!(
                    control.verdict, "fail",
                    "control {} must fail",
                    control.identity
                );
            }
        }
        assert_eq!(report.summary.controls_passed_unexpectedly, 0);
        let tampered: Vec<_> = report
            .suites
            .iter()
            .flat_map(|s| &s.checks)
            .filter(|c| c.identity.contains("tampered-perp"))
            .collect();
        assert!(
            !tampered.is_empty(),
            "tampered-perp self-test must be present"
        );
        assert!(tampered.iter().all(|c| c.verdict == "fail"));
    });
}

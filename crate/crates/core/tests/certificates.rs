use nokcert::certificates::{
    builtin_scenario, builtin_scenarios, default_width_tol, load_scenario, numeric_crosscheck,
    profile_deviation, run_builtin_suite, verify, Scenario, ScenarioDocument, SuiteOptions,
    VerificationReport, VerificationResult, BUILTINS,
};
use nokcert::exact::{Ends, ParamPolynomial, Polynomial, Rational, RationalInterval};
use nokcert::piecewise::{PiecewiseProfile, Segment};
use nokcert::slice_model::simplex_cap_area;
use nokcert::{Error, SignVerdict};
use proptest::prelude::*;

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

fn x() -> Polynomial {
    Polynomial::x()
}

fn c(s: &str) -> Polynomial {
    Polynomial::constant(q(s))
}

fn run(name: &str) -> VerificationResult {
    verify(&builtin_scenario(name).unwrap(), &default_width_tol()).unwrap()
}

fn cube(p: Polynomial) -> Polynomial {
    p.pow(3)
}

/// Exact maximum of a cubic over [a, b] in floating point, from the
/// quadratic formula on its derivative.
fn cubic_max_f64(p: &Polynomial, a: f64, b: f64) -> f64 {
    let d: Vec<f64> = p.derivative().coeffs().iter().map(|c| c.to_f64()).collect();
    let mut pts = vec![a, b];
    if d.len() == 3 {
        let disc = d[1] * d[1] - 4.0 * d[2] * d[0];
        if disc >= 0.0 {
            for sign in [-1.0, 1.0] {
                let r = (-d[1] + sign * disc.sqrt()) / (2.0 * d[2]);
                if r > a && r < b {
                    pts.push(r);
                }
            }
        }
    }
    pts.into_iter().map(|t| p.eval_f64(t)).fold(f64::MIN, f64::max)
}

#[test]
fn case_31_closed_form_and_margin() {
    let r = run("thm-main-case-3.1");
    assert_eq!(r.branches.len(), 1);
    assert_eq!(r.branches[0].volume, Polynomial::monomial(q("45/32"), 3));
    assert!(r.holds);
    assert_eq!(r.verdict, SignVerdict::Positive);
    assert_eq!((r.sup.lo.clone(), r.sup.hi.clone()), (q("1215/256"), q("1215/256")));
    assert_eq!(r.sup.witness, q("3/2"));
    assert_eq!(r.margin_lower_bound, q("29/3") - q("1215/256"));
    assert_eq!(r.margin_lower_bound, q("3779/768"));
    assert!(r.margin_lower_bound >= q("4"));
}

#[test]
fn case_32_branches_and_tail() {
    let s = builtin_scenario("thm-main-case-3.2").unwrap();
    assert_eq!(s.branches.len(), 2);
    assert_eq!(s.branches[0].params().hi(), &q("30/17"));
    assert_eq!(s.branches[1].params().lo(), &q("30/17"));
    assert_eq!(s.branches[0].profile.segments().len(), 3);
    assert_eq!(s.branches[1].profile.segments().len(), 4);

    let r = run("thm-main-case-3.2");
    let main = &x().pow(2).scale(&q("4")) - &x().pow(3).scale(&q("32/27"));
    let tail = cube(&x().scale(&q("17")) - &c("30")).scale(&q("1/486"));
    assert_eq!(r.branches[0].volume, main);
    assert_eq!(r.branches[1].volume, &main + &tail);
    assert_eq!(tail.eval(&q("2")), q("32/243"));
    assert_eq!(tail.eval(&q("30/17")), q("0"));
    assert!(r.holds);
    assert!(r.branches.iter().all(|b| b.comparison.verdict == SignVerdict::Positive));
    assert!(r.sup.contains(&q("1616/243")));
    assert_eq!(q("176/27") + q("32/243"), q("1616/243"));
    assert!(r.margin_lower_bound >= q("3"));
}

#[test]
fn case_33_closed_form_and_exact_margin() {
    let r = run("thm-main-case-3.3");
    let want = &(&cube(&c("6") - &x()) - &cube(&c("6") - &x().scale(&q("2")))).scale(&q("1/6"))
        + &cube(&c("2") - &x().scale(&q("1/3"))).scale(&q("1/6"));
    assert_eq!(r.branches[0].volume, want);
    assert!(r.holds);
    assert!(r.sup.is_exact());
    assert_eq!(r.sup.lo, q("788/81"));
    assert_eq!(r.sup.witness, q("2"));
    assert_eq!(r.margin_lower_bound, q("17/162"));
    // The volume is decreasing on [2, 3]: its derivative has no root there
    // and is negative at 2.
    let d = want.derivative();
    assert!(d.eval(&q("2")).is_negative());
    assert_eq!(nokcert::exact::sturm_root_count(&d, &RationalInterval::new(q("2"), q("3")).unwrap()).unwrap(), 0);
}

#[test]
fn corollary_case_1_true_sup() {
    let r = run("cor-main-case-1");
    let u = &x() - &c("3");
    let factor = &(&c("9") - &u.pow(2).scale(&q("64/3"))) - &u.pow(2).scale(&q("64/81"));
    let want = &(&c("27/6") + &x().pow(3).scale(&q("1/162"))) + &(&u.scale(&q("1/2")) * &factor);
    assert_eq!(r.branches[0].volume, want);
    assert!(r.holds);
    let oracle = cubic_max_f64(&want, 3.5, 3.75);
    assert!((oracle - q("7299/1296").to_f64()).abs() < 1e-12);
    assert_eq!(r.sup.lo, q("7299/1296"));
    assert_eq!(r.sup.witness, q("7/2"));
    assert!(r.margin_lower_bound >= q("1"));
    // The rearranged bound's second factor is negative at 15/4.
    assert!(factor.eval(&q("15/4")).is_negative());
}

#[test]
fn corollary_case_2_closed_form() {
    let r = run("cor-main-case-2");
    let want = &(&x().pow(3).scale(&q("1/6")) - &cube(&x().scale(&q("5")) - &c("15")).scale(&q("1/6")))
        + &x().pow(3).scale(&q("1/162"));
    assert_eq!(r.branches[0].volume, want);
    assert!(r.holds);
    let oracle = cubic_max_f64(&want, 3.0, 3.5);
    assert!(r.sup.lo.to_f64() <= oracle + 1e-12 && oracle <= r.sup.hi.to_f64() + 1e-12);
    assert!(r.sup.width() <= default_width_tol());
    assert!(r.margin_lower_bound >= q("1"));
}

#[test]
fn suite_passes_and_is_deterministic() {
    let a = run_builtin_suite(&SuiteOptions::default(), false);
    let b = run_builtin_suite(&SuiteOptions::default(), false);
    assert!(a.passed(), "{}", a.to_json());
    assert_eq!(a.results.len(), 5);
    assert!(a.structural.iter().all(|s| s.passed));
    assert_eq!(a.to_json(), b.to_json());
    for r in &a.results {
        assert!(r.margin_lower_bound.is_positive());
        assert!(r.crosscheck.as_ref().unwrap().max_rel_deviation <= 1e-9);
    }
}

#[test]
fn stretch_certificate_fails() {
    let r = run("thm-main-case-3.3-stretch");
    assert!(!r.holds);
    assert_eq!(r.sup.lo, q("788/81"));
    assert!(r.margin_lower_bound.is_negative());
    let report = run_builtin_suite(&SuiteOptions::default(), true);
    assert_eq!(report.results.len(), 6);
    assert!(!report.passed());
}

#[test]
fn threshold_at_sup_fails_strict_verdicts() {
    for s in builtin_scenarios(false).unwrap() {
        let r = verify(&s, &default_width_tol()).unwrap();
        let mut doc = s.to_document();
        doc.threshold = r.sup.lo.clone();
        let tight = verify(&load_scenario(&doc).unwrap(), &default_width_tol()).unwrap();
        assert!(!tight.holds, "{} still holds at its own sup", s.name);
        assert_ne!(tight.verdict, SignVerdict::Positive);
        // Non-strict comparison still accepts an exact sup.
        if r.sup.is_exact() {
            doc.strict = false;
            assert!(verify(&load_scenario(&doc).unwrap(), &default_width_tol()).unwrap().holds);
        }
    }
}

#[test]
fn weaker_curve_volume() {
    // Case 3.1 with a multiplicity-3 curve: breakpoint 3 eps/2 and plateau
    // 3 eps^2/4 on [3 eps/2, 3 eps].
    let mut doc = builtin_scenario("thm-main-case-3.1").unwrap().to_document();
    let segs = &mut doc.branches[0].segments;
    segs[1].t_to = "3*eps/2".into();
    segs[1].area = "(t^2 - 3*(t - eps)^2)/2".into();
    segs[2].t_from = "3*eps/2".into();
    segs[2].area = "3*eps^2/4".into();
    for seg in segs.iter_mut().skip(1) {
        seg.constraints = vec![serde_json::from_str(r#"{"kind":"v_curve","t_c":"eps","q":3}"#).unwrap()];
    }
    let s = load_scenario(&doc).unwrap();
    let r = verify(&s, &default_width_tol()).unwrap();
    assert_eq!(r.branches[0].volume, Polynomial::monomial(q("13/8"), 3));
    assert_eq!(r.sup.lo, q("351/64"));
}

#[test]
fn overlapping_segments_are_rejected() {
    let mut doc = builtin_scenario("thm-main-case-3.3").unwrap().to_document();
    doc.branches[0].segments[1].t_from = "eps - 1/2".into();
    match load_scenario(&doc) {
        Err(Error::Scenario { name, msg }) => {
            assert_eq!(name, "thm-main-case-3.3");
            assert!(msg.contains("contiguity"), "{msg}");
        }
        other => panic!("expected a contiguity error, got {other:?}"),
    }
}

#[test]
fn area_above_cap_is_rejected_with_witness() {
    let mut doc = builtin_scenario("thm-main-case-3.1").unwrap().to_document();
    doc.branches[0].segments[0].area = "t^2".into();
    let err = load_scenario(&doc).unwrap_err().to_string();
    assert!(err.contains("dominance"), "{err}");
    assert!(err.contains("at s ="), "{err}");
}

#[test]
fn declared_constraint_must_apply() {
    // The V_C plateau claimed before the breakpoint straddles it.
    let mut doc = builtin_scenario("thm-main-case-3.1").unwrap().to_document();
    doc.branches[0].segments[1].t_to = "3*eps/2".into();
    doc.branches[0].segments[2].t_from = "3*eps/2".into();
    assert!(load_scenario(&doc).is_err());
}

#[test]
fn branch_partition_is_checked() {
    let mut doc = builtin_scenario("thm-main-case-3.2").unwrap().to_document();
    doc.branches[1].param_interval.0 = q("7/4");
    assert!(load_scenario(&doc).unwrap_err().to_string().contains("branch 1 starts"));
    let mut doc = builtin_scenario("thm-main-case-3.2").unwrap().to_document();
    doc.branches.pop();
    assert!(load_scenario(&doc).is_err());
}

#[test]
fn malformed_documents() {
    assert!(ScenarioDocument::from_json("{").is_err());
    assert!(Scenario::from_json(r#"{"name":"x","param":"eps","param_interval":["0","1"],"threshold":"1","branches":[],"extra":1}"#).is_err());
    let raw = BUILTINS[0].json;
    let bad_expr = raw.replace("5*eps/4", "5*e/4");
    assert_ne!(bad_expr, raw);
    let err = Scenario::from_json(&bad_expr).unwrap_err().to_string();
    assert!(err.contains("unknown identifier 'e'"), "{err}");
    let decimal = raw.replace("\"29/3\"", "\"9.5\"");
    assert_ne!(decimal, raw);
    assert!(Scenario::from_json(&decimal).is_err());
}

#[test]
fn documents_roundtrip() {
    for s in builtin_scenarios(true).unwrap() {
        let doc = s.to_document();
        let again = load_scenario(&ScenarioDocument::from_json(&doc.to_json()).unwrap()).unwrap();
        assert_eq!(again.to_document(), doc);
        let (a, b) = (verify(&s, &default_width_tol()).unwrap(), verify(&again, &default_width_tol()).unwrap());
        assert_eq!(a, b);
    }
}

#[test]
fn crosscheck_single_simplex_segment() {
    let params = RationalInterval::new(q("1"), q("2")).unwrap();
    let seg = Segment::new(Polynomial::zero(), x(), simplex_cap_area());
    let profile = PiecewiseProfile::new(vec![seg], params, Ends::CLOSED);
    for s in ["1", "4/3", "2"] {
        assert!(profile_deviation(&profile, &q(s), 1e-13) <= 1e-12);
    }
}

#[test]
fn crosscheck_builtins() {
    for s in builtin_scenarios(false).unwrap() {
        let dev = numeric_crosscheck(&s, 100, &q("1/1000000000"), 11);
        assert!(dev <= 1e-9, "{}: {dev}", s.name);
    }
}

#[test]
fn crosscheck_near_case_32_branch_point() {
    let s = builtin_scenario("thm-main-case-3.2").unwrap();
    let eps = q("1/1000000");
    let below = q("30/17") - eps.clone();
    let above = q("30/17") + eps;
    assert!(profile_deviation(&s.branches[0].profile, &below, 1e-13) <= 1e-9);
    assert!(profile_deviation(&s.branches[1].profile, &above, 1e-13) <= 1e-9);
    assert!(profile_deviation(&s.branches[0].profile, &q("30/17"), 1e-13) <= 1e-9);
    assert!(profile_deviation(&s.branches[1].profile, &q("30/17"), 1e-13) <= 1e-9);
}

#[test]
fn case_33_jump_at_two() {
    let s = builtin_scenario("thm-main-case-3.3").unwrap();
    let jumps = s.branches[0].profile.continuity(&q("2"));
    assert_eq!(jumps.len(), 1);
    assert_eq!((jumps[0].t.clone(), jumps[0].left.clone(), jumps[0].right.clone()), (q("4"), q("6"), q("8/9")));
}

#[test]
fn report_preserves_unknown_fields() {
    let report = run_builtin_suite(&SuiteOptions { crosscheck_samples: 3, ..Default::default() }, false);
    let mut value: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
    value["reviewer"] = "someone".into();
    value["results"][0]["flag"] = serde_json::json!([1, 2]);
    let text = serde_json::to_string_pretty(&value).unwrap();
    let parsed = VerificationReport::from_json(&text).unwrap();
    assert_eq!(parsed.extra["reviewer"], "someone");
    let back: serde_json::Value = serde_json::from_str(&parsed.to_json()).unwrap();
    assert_eq!(back, value);
    value["version"] = 99.into();
    assert!(VerificationReport::from_json(&value.to_string()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn builtin_areas_lie_under_the_cap(which in 0usize..5, a in 0u32..=1000, b in 0u32..=1000) {
        let s = &builtin_scenarios(false).unwrap()[which];
        let cap = simplex_cap_area();
        for branch in &s.branches {
            let p = branch.params();
            let sv = p.lo() + &(&p.width() * &Rational::frac(a as i64, 1000));
            let mu = branch.profile.mu_cap().eval(&sv);
            let t = &mu * &Rational::frac(b as i64, 1000);
            if let Some(area) = branch.profile.area_at(&sv, &t) {
                prop_assert!(!area.is_negative());
                prop_assert!(area <= cap.eval(&sv, &t));
            }
        }
    }

    #[test]
    fn volume_matches_segment_integrals(which in 0usize..5, a in 0u32..=1000) {
        let s = &builtin_scenarios(false).unwrap()[which];
        for branch in &s.branches {
            let p = branch.params();
            let sv = p.lo() + &(&p.width() * &Rational::frac(a as i64, 1000));
            let direct: Rational = branch.profile.segments().iter().map(|seg| {
                let area: ParamPolynomial = seg.area.clone();
                area.at_param(&sv).definite_integral(&seg.t_from.eval(&sv), &seg.t_to.eval(&sv))
            }).sum();
            prop_assert_eq!(branch.profile.volume().eval(&sv), direct);
        }
    }
}

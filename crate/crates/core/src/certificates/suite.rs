//! Built-in certificates and the structural checks run alongside them.

use std::thread;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::crosscheck::{numeric_crosscheck, DEFAULT_SEED};
use super::report::{CertificateRecord, CrossCheck, StructuralCheck, VerificationReport};
use super::scenario::Scenario;
use super::verify::{default_width_tol, verify};
use crate::error::{Error, Result};
use crate::exact::{Polynomial, Rational};
use crate::slice_model::{curve_hull_area, simplex_cap_area, vcurve_profile, VCurvePieces};

pub struct Builtin {
    pub name: &'static str,
    pub json: &'static str,
    /// Not part of the default suite.
    pub optional: bool,
}

pub const BUILTINS: &[Builtin] = &[
    Builtin {
        name: "thm-main-case-3.1",
        json: include_str!("../../scenarios/thm-main-case-3.1.json"),
        optional: false,
    },
    Builtin {
        name: "thm-main-case-3.2",
        json: include_str!("../../scenarios/thm-main-case-3.2.json"),
        optional: false,
    },
    Builtin {
        name: "thm-main-case-3.3",
        json: include_str!("../../scenarios/thm-main-case-3.3.json"),
        optional: false,
    },
    Builtin {
        name: "cor-main-case-1",
        json: include_str!("../../scenarios/cor-main-case-1.json"),
        optional: false,
    },
    Builtin {
        name: "cor-main-case-2",
        json: include_str!("../../scenarios/cor-main-case-2.json"),
        optional: false,
    },
    Builtin {
        name: "thm-main-case-3.3-stretch",
        json: include_str!("../../scenarios/thm-main-case-3.3-stretch.json"),
        optional: true,
    },
];

pub fn builtin_scenario(name: &str) -> Result<Scenario> {
    let b = BUILTINS
        .iter()
        .find(|b| b.name == name)
        .ok_or_else(|| Error::invalid(format!("no built-in scenario named '{name}'")))?;
    Scenario::from_json(b.json)
}

/// The default built-ins, plus the optional ones when asked.
pub fn builtin_scenarios(with_optional: bool) -> Result<Vec<Scenario>> {
    BUILTINS
        .iter()
        .filter(|b| with_optional || !b.optional)
        .map(|b| Scenario::from_json(b.json))
        .collect()
}

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub seed: u64,
    pub width_tol: Rational,
    pub crosscheck_samples: usize,
    pub timestamp: Option<String>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: DEFAULT_SEED,
            width_tol: default_width_tol(),
            crosscheck_samples: 100,
            timestamp: None,
        }
    }
}

/// Per-scenario seed, independent of the order scenarios are run in.
fn scenario_seed(seed: u64, name: &str) -> u64 {
    name.bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
        ^ seed
}

fn certify(s: &Scenario, opts: &SuiteOptions) -> CertificateRecord {
    let interval = s.ends.render(&s.params);
    let crosscheck = (opts.crosscheck_samples > 0).then(|| CrossCheck {
        samples: opts.crosscheck_samples,
        max_rel_deviation: numeric_crosscheck(
            s,
            opts.crosscheck_samples,
            &Rational::frac(1, 1_000_000_000),
            scenario_seed(opts.seed, &s.name),
        ),
    });
    match verify(s, &opts.width_tol) {
        Ok(r) => CertificateRecord::from_result(&r, interval, crosscheck),
        Err(e) => {
            // Only reachable with a nonsensical tolerance; record as a failure.
            let zero = Rational::zero();
            CertificateRecord {
                name: s.name.clone(),
                holds: false,
                verdict: crate::exact::SignVerdict::Mixed,
                param: s.param_name.clone(),
                param_interval: interval,
                threshold: s.target.threshold.clone(),
                strict: s.target.strict,
                volume_poly: Default::default(),
                sup_enclosure: (zero.clone(), zero.clone()),
                sup_witness: zero.clone(),
                margin_lower_bound: zero,
                margin_decimal: "0".into(),
                crosscheck,
                violations: vec![e.to_string()],
                notes: Vec::new(),
                extra: Default::default(),
            }
        }
    }
}

/// Verifies the scenarios concurrently; results keep the input order.
pub fn certify_all(scenarios: &[Scenario], opts: &SuiteOptions) -> Vec<CertificateRecord> {
    thread::scope(|scope| {
        let handles: Vec<_> = scenarios.iter().map(|s| scope.spawn(move || certify(s, opts))).collect();
        handles.into_iter().map(|h| h.join().expect("verification thread panicked")).collect()
    })
}

fn random_positive(rng: &mut ChaCha8Rng) -> Rational {
    Rational::frac(rng.random_range(1..=1000), rng.random_range(1..=97))
}

/// Rising piece and plateau agree at the breakpoint, as polynomials in the
/// parameter.
pub fn vcurve_profile_continuous(pieces: &VCurvePieces) -> bool {
    pieces.rising.at_t(&pieces.breakpoint) == pieces.plateau.at_t(&pieces.breakpoint)
}

/// The V_C profile is continuous at its breakpoint `q t_C/(q - 1)`.
pub fn vcurve_continuity_check(seed: u64) -> StructuralCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7663);
    let mut failures = Vec::new();
    let mut cases = 0;
    for q in 2..=10u32 {
        // Symbolic in t_C first, then at random values.
        let symbolic = vcurve_profile(&Polynomial::x(), q).expect("q >= 2");
        if !vcurve_profile_continuous(&symbolic) {
            failures.push(format!("q = {q}, symbolic t_C"));
        }
        for _ in 0..20 {
            cases += 1;
            let t_c = random_positive(&mut rng);
            let pieces = vcurve_profile(&Polynomial::constant(t_c.clone()), q).expect("q >= 2");
            let bp = pieces.breakpoint.eval(&Rational::zero());
            let expected = &Rational::from(q as i64) * &t_c / Rational::from(q as i64 - 1);
            if bp != expected || !vcurve_profile_continuous(&pieces) {
                failures.push(format!("q = {q}, t_C = {t_c}"));
            }
        }
    }
    StructuralCheck {
        name: "vcurve-continuity".into(),
        passed: failures.is_empty(),
        cases,
        detail: if failures.is_empty() {
            "rising piece meets the plateau at q t_C/(q-1) for q = 2..10".into()
        } else {
            format!("discontinuous at {}", failures.join(", "))
        },
    }
}

/// Every branch of every scenario stays under the simplex cap.
pub fn dominance_check(scenarios: &[Scenario]) -> StructuralCheck {
    let cap = simplex_cap_area();
    let mut failures = Vec::new();
    let mut cases = 0;
    for s in scenarios {
        for (i, b) in s.branches.iter().enumerate() {
            cases += 1;
            if !b.profile.dominance(&cap).holds() {
                failures.push(format!("{} branch {i}", s.name));
            }
        }
    }
    StructuralCheck {
        name: "simplex-cap-dominance".into(),
        passed: failures.is_empty(),
        cases,
        detail: if failures.is_empty() {
            "all profiles lie under t^2/2".into()
        } else {
            format!("not dominated: {}", failures.join(", "))
        },
    }
}

/// Shoelace area of a polygon given by its vertices in order.
pub fn shoelace(vertices: &[(Rational, Rational)]) -> Rational {
    let n = vertices.len();
    let twice: Rational = (0..n)
        .map(|i| {
            let (a, b) = (&vertices[i], &vertices[(i + 1) % n]);
            &(&a.0 * &b.1) - &(&b.0 * &a.1)
        })
        .sum();
    (twice / Rational::from(2)).abs()
}

/// The curve-hull area `(t² - m²)/2` against the shoelace area of the
/// trapezoid `{u, v >= 0, m <= u + v <= t}`.
pub fn shoelace_check(seed: u64, cases: usize) -> StructuralCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5e1);
    let mut failures = Vec::new();
    for _ in 0..cases {
        let t = random_positive(&mut rng);
        let m = &t * &Rational::frac(rng.random_range(0..=1000), 1000);
        let zero = Rational::zero();
        let polygon = [
            (m.clone(), zero.clone()),
            (t.clone(), zero.clone()),
            (zero.clone(), t.clone()),
            (zero.clone(), m.clone()),
        ];
        let model = curve_hull_area(&Polynomial::constant(&t - &m)).eval(&zero, &t);
        if shoelace(&polygon) != model {
            failures.push(format!("t = {t}, m = {m}"));
        }
    }
    StructuralCheck {
        name: "shoelace-oracle".into(),
        passed: failures.is_empty(),
        cases,
        detail: if failures.is_empty() {
            "(t^2 - m^2)/2 matches the polygon area".into()
        } else {
            format!("mismatch at {}", failures.join(", "))
        },
    }
}

pub fn structural_checks(scenarios: &[Scenario], seed: u64) -> Vec<StructuralCheck> {
    vec![vcurve_continuity_check(seed), dominance_check(scenarios), shoelace_check(seed, 500)]
}

/// Runs every default built-in (and the optional ones when asked) with the
/// structural checks. Failures are recorded in the report, never raised.
pub fn run_builtin_suite(opts: &SuiteOptions, with_optional: bool) -> VerificationReport {
    let scenarios = match builtin_scenarios(with_optional) {
        Ok(s) => s,
        Err(e) => {
            let broken = StructuralCheck {
                name: "builtin-load".into(),
                passed: false,
                cases: 1,
                detail: e.to_string(),
            };
            return VerificationReport::new(opts.seed, opts.timestamp.clone(), Vec::new(), vec![broken]);
        }
    };
    let results = certify_all(&scenarios, opts);
    let structural = structural_checks(&scenarios, opts.seed);
    VerificationReport::new(opts.seed, opts.timestamp.clone(), results, structural)
}

/// Report for user-supplied scenarios; no structural checks.
pub fn run_scenarios(scenarios: &[Scenario], opts: &SuiteOptions) -> VerificationReport {
    VerificationReport::new(opts.seed, opts.timestamp.clone(), certify_all(scenarios, opts), Vec::new())
}

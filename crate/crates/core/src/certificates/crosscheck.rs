//! Floating-point oracle: adaptive Simpson quadrature of the slice areas,
//! compared with the exact volume polynomial.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::scenario::Scenario;
use crate::exact::{Rational, RationalInterval};
use crate::piecewise::PiecewiseProfile;

/// Sampling seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x6e6f_6b5f_7365_6564;

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adaptive(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + adaptive(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Adaptive Simpson integral of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = simpson(a, b, fa, fm, fb);
    adaptive(f, a, b, fa, fm, fb, whole, tol, 40)
}

/// Relative deviation between the exact volume at `s` and quadrature of the
/// areas segment by segment in `f64`.
pub fn profile_deviation(profile: &PiecewiseProfile, s: &Rational, tol: f64) -> f64 {
    let exact = profile.volume().eval(s).to_f64();
    let sf = s.to_f64();
    let numeric: f64 = profile
        .segments()
        .iter()
        .map(|seg| {
            let (a, b) = (seg.t_from.eval_f64(sf), seg.t_to.eval_f64(sf));
            let area = |t: f64| seg.area.eval_f64(sf, t);
            adaptive_simpson(&area, a, b, tol)
        })
        .sum();
    let scale = exact.abs().max(f64::MIN_POSITIVE);
    if exact == 0.0 && numeric == 0.0 {
        0.0
    } else {
        (numeric - exact).abs() / scale
    }
}

/// A uniformly random rational in the interval with denominator `2^32`
/// relative to its width.
pub fn sample_rational(rng: &mut impl Rng, interval: &RationalInterval) -> Rational {
    let k: u32 = rng.random();
    interval.lo() + &(&interval.width() * &Rational::frac(k as i64, 1i64 << 32))
}

/// Maximum relative deviation over `n_samples` random parameter values. Each
/// sample picks a branch uniformly, then a point inside it.
pub fn numeric_crosscheck(scenario: &Scenario, n_samples: usize, rel_tol: &Rational, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tol = rel_tol.to_f64().max(f64::EPSILON);
    let mut worst = 0.0f64;
    for _ in 0..n_samples.max(1) {
        let branch = &scenario.branches[rng.random_range(0..scenario.branches.len())];
        let s = sample_rational(&mut rng, branch.params());
        let dev = profile_deviation(&branch.profile, &s, tol * 1e-3);
        worst = worst.max(dev);
    }
    worst
}

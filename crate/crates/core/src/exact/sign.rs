//! Exact sign decisions and supremum enclosures for univariate polynomials
//! on rational intervals.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::sturm::{isolate_roots, refine_root, IsolatedRoot, SturmSequence};
use super::{Ends, Polynomial, Rational, RationalInterval};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignVerdict {
    /// `f > 0` at every point of the queried set.
    Positive,
    /// `f < 0` at every point of the queried set.
    Negative,
    IdenticallyZero,
    /// A zero (or sign change) lies in the queried set.
    Mixed,
}

impl SignVerdict {
    pub fn is_positive(self) -> bool {
        self == SignVerdict::Positive
    }
}

impl fmt::Display for SignVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignVerdict::Positive => "positive",
            SignVerdict::Negative => "negative",
            SignVerdict::IdenticallyZero => "identically_zero",
            SignVerdict::Mixed => "mixed",
        })
    }
}

/// Strict sign of `f` on `interval` with the given ends excluded. A root
/// sitting exactly on an open end does not spoil a strict verdict.
pub fn sign_on_interval(f: &Polynomial, interval: &RationalInterval, ends: Ends) -> SignVerdict {
    if f.is_zero() {
        return SignVerdict::IdenticallyZero;
    }
    if interval.is_point() {
        if ends.open_lo || ends.open_hi {
            // Empty set: nothing can violate a strict claim.
            return SignVerdict::Positive;
        }
        return match f.eval(interval.lo()).signum() {
            1 => SignVerdict::Positive,
            -1 => SignVerdict::Negative,
            _ => SignVerdict::Mixed,
        };
    }
    let seq = SturmSequence::new(f).expect("nonzero polynomial");
    if seq.count(interval, ends) > 0 {
        return SignVerdict::Mixed;
    }
    // No roots in the interior, so the midpoint is a safe sample.
    match f.eval(&interval.midpoint()).signum() {
        1 => SignVerdict::Positive,
        -1 => SignVerdict::Negative,
        _ => unreachable!("midpoint cannot be a root"),
    }
}

/// `f(x) >= 0` for every `x` in the closed interval.
pub fn nonnegative_on(f: &Polynomial, interval: &RationalInterval) -> bool {
    if f.is_zero() {
        return true;
    }
    if interval.is_point() {
        return !f.eval(interval.lo()).is_negative();
    }
    // Only factors of odd multiplicity can change sign.
    let odd: Polynomial = f
        .squarefree_decomposition()
        .iter()
        .enumerate()
        .filter(|(i, _)| i % 2 == 0)
        .fold(Polynomial::one(), |acc, (_, p)| &acc * p);
    if odd.degree().unwrap_or(0) > 0 {
        let seq = SturmSequence::new(&odd).expect("nonzero");
        if seq.count_open(interval.lo(), interval.hi()) > 0 {
            return false;
        }
    }
    // The sign is constant on the interior away from the finitely many
    // even-multiplicity roots; probe until a non-root is found.
    let (lo, hi) = (interval.lo().clone(), interval.hi().clone());
    let mut probe = interval.midpoint();
    loop {
        let v = f.eval(&probe);
        if !v.is_zero() {
            return v.is_positive();
        }
        probe = lo.midpoint(&probe);
        debug_assert!(probe > lo && probe < hi);
    }
}

pub fn nonpositive_on(f: &Polynomial, interval: &RationalInterval) -> bool {
    nonnegative_on(&-f, interval)
}

/// Enclosure `[lo, hi]` of `sup f` over a closed interval. `witness` is a
/// point with `f(witness) = lo`, so `lo` is attained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupEnclosure {
    pub lo: Rational,
    pub hi: Rational,
    pub witness: Rational,
}

impl SupEnclosure {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

/// Encloses the supremum of `f` over `interval` to within `width_tol`, from
/// the endpoint values and the isolated critical points of `f`.
pub fn poly_sup_enclosure(
    f: &Polynomial,
    interval: &RationalInterval,
    width_tol: &Rational,
) -> Result<SupEnclosure> {
    if !width_tol.is_positive() {
        return Err(Error::invalid("sup enclosure tolerance must be positive"));
    }
    let (a, b) = (interval.lo(), interval.hi());
    let mut best = (f.eval(a), a.clone());
    let vb = f.eval(b);
    if vb > best.0 {
        best = (vb, b.clone());
    }
    let df = f.derivative();
    if df.is_zero() || interval.is_point() {
        return Ok(SupEnclosure { lo: best.0.clone(), hi: best.0, witness: best.1 });
    }
    let base = df.squarefree_part();
    let mut pending: Vec<(Rational, Rational)> = Vec::new();
    for root in isolate_roots(&df, a, b)? {
        match root {
            IsolatedRoot::Exact(x) => {
                let v = f.eval(&x);
                if v > best.0 {
                    best = (v, x);
                }
            }
            IsolatedRoot::Bracket(l, r) => pending.push((l, r)),
        }
    }
    let half_tol = width_tol / &Rational::from(2);
    let mut uppers: Vec<Rational> = Vec::new();
    for (mut l, mut r) in pending {
        loop {
            let m = l.midpoint(&r);
            let vm = f.eval(&m);
            if vm > best.0 {
                best = (vm.clone(), m.clone());
            }
            let slack = lipschitz(&df, &l, &r) * (&r - &l) / Rational::from(2);
            let upper = &vm + &slack;
            if upper <= best.0 {
                break;
            }
            if slack <= half_tol {
                uppers.push(upper);
                break;
            }
            match refine_root(&base, IsolatedRoot::Bracket(l.clone(), r.clone()), &((&r - &l) / Rational::from(2))) {
                IsolatedRoot::Exact(x) => {
                    let v = f.eval(&x);
                    if v > best.0 {
                        best = (v, x);
                    }
                    break;
                }
                IsolatedRoot::Bracket(nl, nr) => {
                    l = nl;
                    r = nr;
                }
            }
        }
    }
    let hi = uppers.into_iter().fold(best.0.clone(), Rational::max);
    Ok(SupEnclosure { lo: best.0, hi, witness: best.1 })
}

/// Bound on `|g|` over `[l, r]` by the sum of absolute coefficients times
/// powers of `max(|l|, |r|, 1)`.
fn lipschitz(g: &Polynomial, l: &Rational, r: &Rational) -> Rational {
    let m = l.abs().max(r.abs()).max(Rational::one());
    let mut pow = Rational::one();
    let mut acc = Rational::zero();
    for c in g.coeffs() {
        acc += &(c.abs() * &pow);
        pow *= &m;
    }
    acc
}

/// Enclosure of the infimum, by negation.
pub fn poly_inf_enclosure(
    f: &Polynomial,
    interval: &RationalInterval,
    width_tol: &Rational,
) -> Result<SupEnclosure> {
    let neg = poly_sup_enclosure(&-f, interval, width_tol)?;
    Ok(SupEnclosure { lo: -neg.hi, hi: -neg.lo, witness: neg.witness })
}

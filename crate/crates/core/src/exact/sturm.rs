//! Sturm sequences and real-root isolation over Q.
//!
//! Sequences are built from the square-free part with every term rescaled to
//! a primitive integer polynomial by a positive factor, which keeps the sign
//! pattern intact while holding coefficient growth down.

use super::{Ends, Polynomial, Rational, RationalInterval};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct SturmSequence {
    terms: Vec<Polynomial>,
}

impl SturmSequence {
    /// Sequence of the square-free part of `f`; `f` must be nonzero.
    pub fn new(f: &Polynomial) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::invalid("Sturm sequence of the zero polynomial"));
        }
        let p0 = f.squarefree_part().primitive_part();
        let mut terms = vec![p0.clone()];
        let p1 = p0.derivative().primitive_part();
        if p1.is_zero() {
            return Ok(SturmSequence { terms });
        }
        terms.push(p1);
        loop {
            let n = terms.len();
            let r = terms[n - 2].rem(&terms[n - 1])?;
            if r.is_zero() {
                break;
            }
            terms.push((-&r).primitive_part());
        }
        Ok(SturmSequence { terms })
    }

    pub fn terms(&self) -> &[Polynomial] {
        &self.terms
    }

    /// The square-free polynomial the sequence was built from.
    pub fn base(&self) -> &Polynomial {
        &self.terms[0]
    }

    pub fn sign_variations(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut last = 0;
        for p in &self.terms {
            let s = p.eval(x).signum();
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Distinct roots in the half-open interval `(a, b]`.
    pub fn count_half_open(&self, a: &Rational, b: &Rational) -> usize {
        if a >= b {
            return 0;
        }
        self.sign_variations(a) - self.sign_variations(b)
    }

    /// Distinct roots in the open interval `(a, b)`.
    pub fn count_open(&self, a: &Rational, b: &Rational) -> usize {
        let n = self.count_half_open(a, b);
        if a < b && self.base().eval(b).is_zero() {
            n - 1
        } else {
            n
        }
    }

    /// Distinct roots in `interval`, honoring the endpoint openness.
    pub fn count(&self, interval: &RationalInterval, ends: Ends) -> usize {
        let (a, b) = (interval.lo(), interval.hi());
        let at_a = self.base().eval(a).is_zero();
        let at_b = self.base().eval(b).is_zero();
        if a == b {
            return usize::from(at_a && !ends.open_lo && !ends.open_hi);
        }
        let mut n = self.count_half_open(a, b);
        if at_a && !ends.open_lo {
            n += 1;
        }
        if at_b && ends.open_hi {
            n -= 1;
        }
        n
    }
}

/// Number of distinct real roots of `f` in `(lo, hi]`.
pub fn sturm_root_count(f: &Polynomial, interval: &RationalInterval) -> Result<usize> {
    Ok(SturmSequence::new(f)?.count_half_open(interval.lo(), interval.hi()))
}

/// A real root known either exactly or inside an isolating open interval on
/// whose closure the square-free base changes sign exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsolatedRoot {
    Exact(Rational),
    Bracket(Rational, Rational),
}

impl IsolatedRoot {
    pub fn bounds(&self) -> (Rational, Rational) {
        match self {
            IsolatedRoot::Exact(r) => (r.clone(), r.clone()),
            IsolatedRoot::Bracket(a, b) => (a.clone(), b.clone()),
        }
    }
}

/// Isolates the distinct real roots of `f` in the open interval `(lo, hi)`,
/// in increasing order.
pub fn isolate_roots(f: &Polynomial, lo: &Rational, hi: &Rational) -> Result<Vec<IsolatedRoot>> {
    let seq = SturmSequence::new(f)?;
    let mut out = Vec::new();
    isolate_into(&seq, lo.clone(), hi.clone(), &mut out);
    Ok(out)
}

fn isolate_into(seq: &SturmSequence, a: Rational, b: Rational, out: &mut Vec<IsolatedRoot>) {
    let n = seq.count_open(&a, &b);
    if n == 0 {
        return;
    }
    let base = seq.base();
    if n == 1 && !base.eval(&a).is_zero() && !base.eval(&b).is_zero() {
        out.push(IsolatedRoot::Bracket(a, b));
        return;
    }
    let m = a.midpoint(&b);
    let at_m = base.eval(&m).is_zero();
    isolate_into(seq, a, m.clone(), out);
    if at_m {
        out.push(IsolatedRoot::Exact(m.clone()));
    }
    isolate_into(seq, m, b, out);
}

/// Shrinks a bracket of the square-free `base` by bisection until it is no
/// wider than `width` or the root is hit exactly.
pub fn refine_root(base: &Polynomial, root: IsolatedRoot, width: &Rational) -> IsolatedRoot {
    let IsolatedRoot::Bracket(mut a, mut b) = root else {
        return root;
    };
    let sa = base.eval(&a).signum();
    while &(&b - &a) > width {
        let m = a.midpoint(&b);
        let sm = base.eval(&m).signum();
        if sm == 0 {
            return IsolatedRoot::Exact(m);
        }
        if sm == sa {
            a = m;
        } else {
            b = m;
        }
    }
    IsolatedRoot::Bracket(a, b)
}

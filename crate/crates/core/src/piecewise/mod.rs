//! Piecewise-polynomial slice profiles over the `t`-axis with breakpoints
//! polynomial in the parameter, and the checks that make a profile a
//! legitimate upper bound for slice areas.

pub mod region;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact::{
    nonnegative_on, Ends, ParamPolynomial, Polynomial, Rational, RationalInterval, SignVerdict,
};
pub use region::{negative_witness, region_nonneg, Dominance, Method, Region, Witness};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub t_from: Polynomial,
    pub t_to: Polynomial,
    pub area: ParamPolynomial,
}

impl Segment {
    pub fn new(t_from: Polynomial, t_to: Polynomial, area: ParamPolynomial) -> Self {
        Segment { t_from, t_to, area }
    }

    pub fn region<'a>(&'a self, params: &'a RationalInterval) -> Region<'a> {
        Region { params, t_from: &self.t_from, t_to: &self.t_to }
    }

    pub fn volume(&self) -> Polynomial {
        self.area.definite_integral(&self.t_from, &self.t_to)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseProfile {
    segments: Vec<Segment>,
    params: RationalInterval,
    ends: Ends,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Empty,
    NonzeroStart,
    Contiguity,
    Ordering,
    NegativeArea,
    Dominance,
    Constraint,
    Unresolved,
}

/// A failed profile check. `witness` is the offending polynomial rendered in
/// `s` (or `s, t`); `sample` is a parameter value exhibiting the failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub segment: Option<usize>,
    pub message: String,
    pub witness: String,
    pub sample: Option<Rational>,
}

impl Violation {
    /// Violations that are proved, as opposed to reductions that gave up.
    pub fn is_definite(&self) -> bool {
        self.kind != ViolationKind::Unresolved
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(i) = self.segment {
            write!(f, "segment {i}: ")?;
        }
        write!(f, "{} (witness {}", self.message, self.witness)?;
        if let Some(s) = &self.sample {
            write!(f, ", at s = {s}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Jump {
    pub t: Rational,
    pub left: Rational,
    pub right: Rational,
}

impl PiecewiseProfile {
    pub fn new(segments: Vec<Segment>, params: RationalInterval, ends: Ends) -> Self {
        PiecewiseProfile { segments, params, ends }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn params(&self) -> &RationalInterval {
        &self.params
    }

    pub fn ends(&self) -> Ends {
        self.ends
    }

    /// End of the last segment, the profile's cap on the infinitesimal width.
    pub fn mu_cap(&self) -> Polynomial {
        self.segments.last().map(|s| s.t_to.clone()).unwrap_or_default()
    }

    /// Structural checks: nonempty, starts at 0, contiguous, ordered
    /// breakpoints, and nonnegative areas, all uniformly in the parameter.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.segments.is_empty() {
            out.push(Violation {
                kind: ViolationKind::Empty,
                segment: None,
                message: "profile has no segments".into(),
                witness: "0".into(),
                sample: None,
            });
            return out;
        }
        if !self.segments[0].t_from.is_zero() {
            out.push(Violation {
                kind: ViolationKind::NonzeroStart,
                segment: Some(0),
                message: "first segment does not start at t = 0".into(),
                witness: self.segments[0].t_from.display_in("s"),
                sample: None,
            });
        }
        for (i, pair) in self.segments.windows(2).enumerate() {
            if pair[0].t_to != pair[1].t_from {
                let gap = &pair[1].t_from - &pair[0].t_to;
                // A nonzero polynomial has at most deg roots, so deg + 2 grid
                // points include one where the gap shows.
                let probes = gap.degree().unwrap_or(0) + 2;
                let sample = self.params.grid(probes).into_iter().find(|s| !gap.eval(s).is_zero());
                out.push(Violation {
                    kind: ViolationKind::Contiguity,
                    segment: Some(i + 1),
                    message: "segment does not start where the previous one ends".into(),
                    witness: gap.display_in("s"),
                    sample,
                });
            }
        }
        for (i, seg) in self.segments.iter().enumerate() {
            let len = &seg.t_to - &seg.t_from;
            if let Some(s) = negative_witness(&len, &self.params) {
                out.push(Violation {
                    kind: ViolationKind::Ordering,
                    segment: Some(i),
                    message: "breakpoints cross inside the parameter range".into(),
                    witness: len.display_in("s"),
                    sample: Some(s),
                });
                continue;
            }
            match region_nonneg(&seg.area, seg.region(&self.params)) {
                Dominance::Holds(_) => {}
                Dominance::Violated(w) => out.push(Violation {
                    kind: ViolationKind::NegativeArea,
                    segment: Some(i),
                    message: format!("area is negative: {w}"),
                    witness: seg.area.display_with("t", "s"),
                    sample: Some(w.s),
                }),
                Dominance::Unknown => out.push(Violation {
                    kind: ViolationKind::Unresolved,
                    segment: Some(i),
                    message: "could not decide area nonnegativity".into(),
                    witness: seg.area.display_with("t", "s"),
                    sample: None,
                }),
            }
        }
        out
    }

    /// Fubini volume as a polynomial in the parameter.
    pub fn volume(&self) -> Polynomial {
        self.segments
            .iter()
            .fold(Polynomial::zero(), |acc, seg| &acc + &seg.volume())
    }

    /// Breakpoints at which the left and right areas differ for `s = s0`.
    pub fn continuity(&self, s0: &Rational) -> Vec<Jump> {
        self.segments
            .windows(2)
            .filter_map(|pair| {
                let t = pair[0].t_to.eval(s0);
                let left = pair[0].area.eval(s0, &t);
                let right = pair[1].area.eval(s0, &t);
                (left != right).then_some(Jump { t, left, right })
            })
            .collect()
    }

    /// Worst dominance verdict of `cap - area` over all segments.
    pub fn dominance(&self, cap: &ParamPolynomial) -> Dominance {
        let mut worst = Dominance::Holds(Method::ConstantInT);
        for seg in &self.segments {
            match segment_dominance(&seg.area, cap, seg.region(&self.params)) {
                Dominance::Holds(m) => {
                    if worst.holds() {
                        worst = Dominance::Holds(m);
                    }
                }
                v @ Dominance::Violated(_) => return v,
                Dominance::Unknown => worst = Dominance::Unknown,
            }
        }
        worst
    }

    /// `Positive` iff every piece is nonincreasing in `t` on `[t0, mu_cap]`,
    /// uniformly over the parameter range; `Mixed` otherwise (including when
    /// `t0` cannot be placed relative to the breakpoints).
    pub fn nonincreasing_after(&self, t0: &Polynomial) -> SignVerdict {
        for seg in &self.segments {
            let from = if nonnegative_on(&(t0 - &seg.t_to), &self.params) {
                continue;
            } else if nonnegative_on(&(&seg.t_from - t0), &self.params) {
                seg.t_from.clone()
            } else if nonnegative_on(&(t0 - &seg.t_from), &self.params) {
                t0.clone()
            } else {
                return SignVerdict::Mixed;
            };
            let slope = seg.area.derivative_t();
            let region = Region { params: &self.params, t_from: &from, t_to: &seg.t_to };
            if !region_nonneg(&-&slope, region).holds() {
                return SignVerdict::Mixed;
            }
        }
        SignVerdict::Positive
    }

    /// Area bound at `(s, t)`; breakpoints belong to the segment on their
    /// right, except the final cap. `None` outside `[0, mu_cap(s)]`.
    pub fn area_at(&self, s: &Rational, t: &Rational) -> Option<Rational> {
        let n = self.segments.len();
        for (i, seg) in self.segments.iter().enumerate() {
            let (a, b) = (seg.t_from.eval(s), seg.t_to.eval(s));
            if a > b {
                return None;
            }
            if &a <= t && (t < &b || (i + 1 == n && t == &b)) {
                return Some(seg.area.eval(s, t));
            }
        }
        None
    }
}

/// `cap - area >= 0` over the segment's region.
pub fn segment_dominance(area: &ParamPolynomial, cap: &ParamPolynomial, region: Region<'_>) -> Dominance {
    region_nonneg(&(cap - area), region)
}

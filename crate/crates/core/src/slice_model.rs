//! Slice-area bounds coming from curves and surfaces in the augmented base
//! locus, and the comparison of a Fubini volume against `B^3/6`.
//!
//! Every constraint bounds the slice `Δ ∩ {t} × R²` by a polygon whose area
//! is polynomial in `t` and the parameter:
//!
//! * the simplex cap `{u, v >= 0, u + v <= t}` with area `t²/2`;
//! * a curve entering the base locus at `t_C` cuts the hull down to
//!   `(t² - (t - t_C)²)/2`;
//! * a curve with multiplicity `q >= 2` at the origin gives the two-piece
//!   profile `(t² - q(t - t_C)²)/2`, then the constant `q t_C² / (2(q-1))`;
//! * surfaces with multiplicities `m_i` at the origin and multiplicity
//!   functions `m0_i + (t - t1_i)` squeeze the slice into a triangle of width
//!   `t - Σ m_i (m0_i + t - t1_i)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{
    nonnegative_on, poly_sup_enclosure, sign_on_interval, Ends, ParamPolynomial, Polynomial,
    Rational, RationalInterval, SignVerdict, SupEnclosure,
};
use crate::piecewise::{
    negative_witness, segment_dominance, Dominance, Segment, Violation, ViolationKind,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceEntry {
    /// Multiplicity of the surface at the origin.
    pub m: u32,
    /// Entry time into the base locus.
    pub t1: Polynomial,
    /// Multiplicity along the surface at entry.
    pub m0: Polynomial,
}

impl SurfaceEntry {
    /// Multiplicity function at `t`, slope-one growth from entry.
    pub fn multiplicity(&self) -> ParamPolynomial {
        &ParamPolynomial::from_param(&self.m0 - &self.t1) + &ParamPolynomial::t()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SliceConstraint {
    SimplexCap,
    CurveHull { t_c: Polynomial },
    VCurve { t_c: Polynomial, q: u32 },
    SurfaceCollapse { surfaces: Vec<SurfaceEntry> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeTarget {
    /// The value `B^3/6` the volume is compared against.
    pub threshold: Rational,
    pub strict: bool,
}

impl VolumeTarget {
    pub fn new(threshold: Rational, strict: bool) -> Result<Self> {
        if !threshold.is_positive() {
            return Err(Error::invalid("volume threshold must be positive"));
        }
        Ok(VolumeTarget { threshold, strict })
    }
}

/// `t²/2`, the area of `{u, v >= 0, u + v <= t}`.
pub fn simplex_cap_area() -> ParamPolynomial {
    ParamPolynomial::t().pow(2).scale(&Rational::frac(1, 2))
}

/// `(t² - (t - t_C)²)/2`, valid for `t >= t_C`.
pub fn curve_hull_area(t_c: &Polynomial) -> ParamPolynomial {
    let t = ParamPolynomial::t();
    (&t.pow(2) - &ParamPolynomial::t_minus(t_c).pow(2)).scale(&Rational::frac(1, 2))
}

/// The two pieces of the bound from a curve through the origin of
/// multiplicity `q >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VCurvePieces {
    pub t_c: Polynomial,
    pub q: u32,
    /// `q t_C / (q - 1)`.
    pub breakpoint: Polynomial,
    /// `(t² - q (t - t_C)²)/2` on `[t_C, breakpoint]`.
    pub rising: ParamPolynomial,
    /// `q t_C² / (2 (q - 1))` from the breakpoint on.
    pub plateau: ParamPolynomial,
}

impl VCurvePieces {
    pub fn segments(&self, t_end: &Polynomial) -> [Segment; 2] {
        [
            Segment::new(self.t_c.clone(), self.breakpoint.clone(), self.rising.clone()),
            Segment::new(self.breakpoint.clone(), t_end.clone(), self.plateau.clone()),
        ]
    }
}

pub fn vcurve_profile(t_c: &Polynomial, q: u32) -> Result<VCurvePieces> {
    if q < 2 {
        return Err(Error::invalid(format!(
            "curve multiplicity q = {q} must be at least 2 (use the curve hull for q = 1)"
        )));
    }
    let qr = Rational::from(q as i64);
    let ratio = &qr / &Rational::from(q as i64 - 1);
    let t = ParamPolynomial::t();
    let rising = (&t.pow(2) - &ParamPolynomial::t_minus(t_c).pow(2).scale(&qr))
        .scale(&Rational::frac(1, 2));
    let plateau = ParamPolynomial::from_param((t_c * t_c).scale(&(&ratio / &Rational::from(2))));
    Ok(VCurvePieces {
        t_c: t_c.clone(),
        q,
        breakpoint: t_c.scale(&ratio),
        rising,
        plateau,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceCollapse {
    /// `t - Σ m_i (m0_i + t - t1_i)`, affine in `t`.
    pub width: ParamPolynomial,
    /// `width² / 2`.
    pub area: ParamPolynomial,
    pub total_multiplicity: u32,
}

impl SurfaceCollapse {
    /// The unique `t` where the width vanishes. Needs `Σ m_i >= 2`.
    pub fn collapse_time(&self) -> Result<Polynomial> {
        if self.total_multiplicity < 2 {
            return Err(Error::invalid(
                "total surface multiplicity 1 gives a constant width and no collapse time",
            ));
        }
        // width = c0(s) + (1 - M) t
        let slope = Rational::from(1 - self.total_multiplicity as i64);
        Ok(self.width.coeff(0).scale(&(-(Rational::one() / slope))))
    }
}

pub fn surface_collapse_area(surfaces: &[SurfaceEntry]) -> Result<SurfaceCollapse> {
    if surfaces.is_empty() {
        return Err(Error::invalid("surface constraint needs at least one surface"));
    }
    let mut width = ParamPolynomial::t();
    let mut total = 0;
    for sf in surfaces {
        if sf.m == 0 {
            return Err(Error::invalid("surface multiplicity at the origin must be >= 1"));
        }
        total += sf.m;
        width = &width - &sf.multiplicity().scale(&Rational::from(sf.m as i64));
    }
    let area = width.pow(2).scale(&Rational::frac(1, 2));
    Ok(SurfaceCollapse { width, area, total_multiplicity: total })
}

impl SliceConstraint {
    /// Checks that `segment` lies where this constraint applies and that its
    /// declared area is dominated by the constraint's area bound.
    pub fn check(&self, segment: &Segment, params: &RationalInterval, index: usize) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut require_nonneg = |poly: Polynomial, what: &str| {
            if let Some(s) = negative_witness(&poly, params) {
                out.push(Violation {
                    kind: ViolationKind::Constraint,
                    segment: Some(index),
                    message: format!("{}: {what}", self.label()),
                    witness: poly.display_in("s"),
                    sample: Some(s),
                });
                false
            } else {
                true
            }
        };
        let bound = match self {
            SliceConstraint::SimplexCap => {
                require_nonneg(segment.t_from.clone(), "segment starts before t = 0");
                simplex_cap_area()
            }
            SliceConstraint::CurveHull { t_c } => {
                require_nonneg(t_c.clone(), "entry time is negative");
                require_nonneg(&segment.t_from - t_c, "segment starts before the curve enters");
                curve_hull_area(t_c)
            }
            SliceConstraint::VCurve { t_c, q } => {
                let pieces = match vcurve_profile(t_c, *q) {
                    Ok(p) => p,
                    Err(e) => {
                        out.push(Violation {
                            kind: ViolationKind::Constraint,
                            segment: Some(index),
                            message: e.to_string(),
                            witness: q.to_string(),
                            sample: None,
                        });
                        return out;
                    }
                };
                require_nonneg(t_c.clone(), "entry time is negative");
                require_nonneg(&segment.t_from - t_c, "segment starts before the curve enters");
                if nonnegative_on(&(&pieces.breakpoint - &segment.t_to), params) {
                    pieces.rising
                } else if nonnegative_on(&(&segment.t_from - &pieces.breakpoint), params) {
                    pieces.plateau
                } else {
                    out.push(Violation {
                        kind: ViolationKind::Constraint,
                        segment: Some(index),
                        message: format!("{}: segment straddles the breakpoint", self.label()),
                        witness: pieces.breakpoint.display_in("s"),
                        sample: None,
                    });
                    return out;
                }
            }
            SliceConstraint::SurfaceCollapse { surfaces } => {
                let collapse = match surface_collapse_area(surfaces) {
                    Ok(c) => c,
                    Err(e) => {
                        out.push(Violation {
                            kind: ViolationKind::Constraint,
                            segment: Some(index),
                            message: e.to_string(),
                            witness: String::new(),
                            sample: None,
                        });
                        return out;
                    }
                };
                for sf in surfaces {
                    require_nonneg(sf.m0.clone(), "entry multiplicity is negative");
                    require_nonneg(sf.t1.clone(), "entry time is negative");
                    require_nonneg(&segment.t_from - &sf.t1, "segment starts before a surface enters");
                }
                require_nonneg(collapse.width.at_t(&segment.t_from), "width is negative at the segment start");
                require_nonneg(collapse.width.at_t(&segment.t_to), "width is negative at the segment end");
                collapse.area
            }
        };
        if !out.is_empty() {
            return out;
        }
        match segment_dominance(&segment.area, &bound, segment.region(params)) {
            Dominance::Holds(_) => {}
            Dominance::Violated(w) => out.push(Violation {
                kind: ViolationKind::Dominance,
                segment: Some(index),
                message: format!("area exceeds the {} bound: {w}", self.label()),
                witness: (&bound - &segment.area).display_with("t", "s"),
                sample: Some(w.s),
            }),
            Dominance::Unknown => out.push(Violation {
                kind: ViolationKind::Unresolved,
                segment: Some(index),
                message: format!("could not decide dominance under the {} bound", self.label()),
                witness: (&bound - &segment.area).display_with("t", "s"),
                sample: None,
            }),
        }
        out
    }

    pub fn label(&self) -> &'static str {
        match self {
            SliceConstraint::SimplexCap => "simplex cap",
            SliceConstraint::CurveHull { .. } => "curve hull",
            SliceConstraint::VCurve { .. } => "V_C curve",
            SliceConstraint::SurfaceCollapse { .. } => "surface collapse",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeComparison {
    pub verdict: SignVerdict,
    pub holds: bool,
    pub sup: SupEnclosure,
    /// `threshold - sup.hi`.
    pub margin_lower_bound: Rational,
}

/// Compares a Fubini volume bound against the target on the parameter range:
/// the claim is `volume < threshold` (or `<=` when not strict) everywhere.
pub fn compare_volume(
    volume: &Polynomial,
    target: &VolumeTarget,
    params: &RationalInterval,
    ends: Ends,
    width_tol: &Rational,
) -> Result<VolumeComparison> {
    let gap = &Polynomial::constant(target.threshold.clone()) - volume;
    let verdict = sign_on_interval(&gap, params, ends);
    let holds = if target.strict {
        verdict == SignVerdict::Positive
    } else {
        nonnegative_on(&gap, params)
    };
    let sup = poly_sup_enclosure(volume, params, width_tol)?;
    let margin_lower_bound = &target.threshold - &sup.hi;
    Ok(VolumeComparison { verdict, holds, sup, margin_lower_bound })
}

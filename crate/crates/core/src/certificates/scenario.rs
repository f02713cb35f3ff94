//! Scenario documents (JSON) and their validated form.

use serde::{Deserialize, Serialize};

use super::expr::{parse_expr, parse_param_expr, print_expr, print_param_expr};
use crate::error::{Error, Result};
use crate::exact::{Ends, Polynomial, Rational, RationalInterval};
use crate::piecewise::{PiecewiseProfile, Segment, Violation, ViolationKind};
use crate::slice_model::{SliceConstraint, SurfaceEntry, VolumeTarget};

fn default_strict() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDocument {
    pub name: String,
    pub param: String,
    pub param_interval: (Rational, Rational),
    #[serde(default)]
    pub open_lo: bool,
    #[serde(default)]
    pub open_hi: bool,
    pub threshold: Rational,
    #[serde(default = "default_strict")]
    pub strict: bool,
    pub branches: Vec<BranchDocument>,
    #[serde(default)]
    pub notes: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchDocument {
    pub param_interval: (Rational, Rational),
    pub segments: Vec<SegmentDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentDocument {
    pub t_from: String,
    pub t_to: String,
    pub area: String,
    #[serde(default)]
    pub constraints: Vec<ConstraintDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ConstraintDocument {
    SimplexCap,
    CurveHull { t_c: String },
    VCurve { t_c: String, q: u32 },
    SurfaceCollapse { surfaces: Vec<SurfaceDocument> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceDocument {
    pub m: u32,
    pub t1: String,
    pub m0: String,
}

impl ScenarioDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("malformed scenario document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario documents serialize")
    }
}

#[derive(Debug, Clone)]
pub struct Branch {
    pub profile: PiecewiseProfile,
    /// Declared constraints per segment; the simplex cap is always implied.
    pub constraints: Vec<Vec<SliceConstraint>>,
}

impl Branch {
    pub fn params(&self) -> &RationalInterval {
        self.profile.params()
    }

    pub fn ends(&self) -> Ends {
        self.profile.ends()
    }
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub param_name: String,
    pub params: RationalInterval,
    pub ends: Ends,
    pub target: VolumeTarget,
    pub branches: Vec<Branch>,
    pub notes: String,
    /// Checks the reductions could not decide. They fail the certificate.
    pub unresolved: Vec<Violation>,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        load_scenario(&ScenarioDocument::from_json(text)?)
    }

    /// Canonical document for this scenario, with every expression reprinted.
    pub fn to_document(&self) -> ScenarioDocument {
        let x = self.param_name.as_str();
        let pp = |p: &Polynomial| print_param_expr(p, x);
        ScenarioDocument {
            name: self.name.clone(),
            param: self.param_name.clone(),
            param_interval: (self.params.lo().clone(), self.params.hi().clone()),
            open_lo: self.ends.open_lo,
            open_hi: self.ends.open_hi,
            threshold: self.target.threshold.clone(),
            strict: self.target.strict,
            branches: self
                .branches
                .iter()
                .map(|b| BranchDocument {
                    param_interval: (b.params().lo().clone(), b.params().hi().clone()),
                    segments: b
                        .profile
                        .segments()
                        .iter()
                        .zip(&b.constraints)
                        .map(|(seg, cs)| SegmentDocument {
                            t_from: pp(&seg.t_from),
                            t_to: pp(&seg.t_to),
                            area: print_expr(&seg.area, x),
                            constraints: cs
                                .iter()
                                .map(|c| match c {
                                    SliceConstraint::SimplexCap => ConstraintDocument::SimplexCap,
                                    SliceConstraint::CurveHull { t_c } => ConstraintDocument::CurveHull { t_c: pp(t_c) },
                                    SliceConstraint::VCurve { t_c, q } => {
                                        ConstraintDocument::VCurve { t_c: pp(t_c), q: *q }
                                    }
                                    SliceConstraint::SurfaceCollapse { surfaces } => ConstraintDocument::SurfaceCollapse {
                                        surfaces: surfaces
                                            .iter()
                                            .map(|sf| SurfaceDocument { m: sf.m, t1: pp(&sf.t1), m0: pp(&sf.m0) })
                                            .collect(),
                                    },
                                })
                                .collect(),
                        })
                        .collect(),
                })
                .collect(),
            notes: self.notes.clone(),
        }
    }
}

fn kind_label(kind: ViolationKind) -> &'static str {
    match kind {
        ViolationKind::Empty => "empty profile",
        ViolationKind::NonzeroStart => "start violation",
        ViolationKind::Contiguity => "contiguity violation",
        ViolationKind::Ordering => "ordering violation",
        ViolationKind::NegativeArea => "negative area",
        ViolationKind::Dominance => "dominance violation",
        ViolationKind::Constraint => "constraint violation",
        ViolationKind::Unresolved => "unresolved check",
    }
}

fn scenario_err(name: &str, msg: impl Into<String>) -> Error {
    Error::Scenario { name: name.to_string(), msg: msg.into() }
}

fn field<T>(name: &str, what: String, r: Result<T>) -> Result<T> {
    r.map_err(|e| scenario_err(name, format!("{what}: {e}")))
}

fn convert_constraint(doc: &ConstraintDocument, name: &str, x: &str, at: &str) -> Result<SliceConstraint> {
    let pe = |text: &str, what: &str| field(name, format!("{at}, {what}"), parse_param_expr(text, x));
    Ok(match doc {
        ConstraintDocument::SimplexCap => SliceConstraint::SimplexCap,
        ConstraintDocument::CurveHull { t_c } => SliceConstraint::CurveHull { t_c: pe(t_c, "t_c")? },
        ConstraintDocument::VCurve { t_c, q } => SliceConstraint::VCurve { t_c: pe(t_c, "t_c")?, q: *q },
        ConstraintDocument::SurfaceCollapse { surfaces } => SliceConstraint::SurfaceCollapse {
            surfaces: surfaces
                .iter()
                .map(|sf| {
                    Ok(SurfaceEntry { m: sf.m, t1: pe(&sf.t1, "t1")?, m0: pe(&sf.m0, "m0")? })
                })
                .collect::<Result<_>>()?,
        },
    })
}

/// Parses and validates a scenario: branch partition, profile structure,
/// simplex-cap dominance and every declared constraint. Definite violations
/// reject the document; undecided checks are kept in `unresolved`.
pub fn load_scenario(doc: &ScenarioDocument) -> Result<Scenario> {
    let name = doc.name.as_str();
    let x = doc.param.as_str();
    let params = field(
        name,
        "param_interval".into(),
        RationalInterval::new(doc.param_interval.0.clone(), doc.param_interval.1.clone()),
    )?;
    let ends = Ends::new(doc.open_lo, doc.open_hi);
    if params.is_point() && (ends.open_lo || ends.open_hi) {
        return Err(scenario_err(name, "parameter interval is empty"));
    }
    let target = field(name, "threshold".into(), VolumeTarget::new(doc.threshold.clone(), doc.strict))?;
    if doc.branches.is_empty() {
        return Err(scenario_err(name, "scenario has no branches"));
    }

    let mut expected_lo = params.lo().clone();
    let mut branches = Vec::new();
    let mut problems: Vec<String> = Vec::new();
    let mut unresolved = Vec::new();
    let last = doc.branches.len() - 1;
    for (bi, bdoc) in doc.branches.iter().enumerate() {
        let sub = field(
            name,
            format!("branch {bi} param_interval"),
            RationalInterval::new(bdoc.param_interval.0.clone(), bdoc.param_interval.1.clone()),
        )?;
        if sub.lo() != &expected_lo {
            return Err(scenario_err(
                name,
                format!("branch {bi} starts at {} but the previous range ends at {expected_lo}", sub.lo()),
            ));
        }
        if bi == last && sub.hi() != params.hi() {
            return Err(scenario_err(
                name,
                format!("branches end at {} instead of {}", sub.hi(), params.hi()),
            ));
        }
        expected_lo = sub.hi().clone();
        let sub_ends = Ends::new(bi == 0 && ends.open_lo, bi == last && ends.open_hi);

        let mut segments = Vec::new();
        let mut constraints = Vec::new();
        for (si, sdoc) in bdoc.segments.iter().enumerate() {
            let at = format!("branch {bi} segment {si}");
            let t_from = field(name, format!("{at}, t_from"), parse_param_expr(&sdoc.t_from, x))?;
            let t_to = field(name, format!("{at}, t_to"), parse_param_expr(&sdoc.t_to, x))?;
            let area = field(name, format!("{at}, area"), parse_expr(&sdoc.area, x))?;
            segments.push(Segment::new(t_from, t_to, area));
            constraints.push(
                sdoc.constraints
                    .iter()
                    .map(|c| convert_constraint(c, name, x, &at))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let profile = PiecewiseProfile::new(segments, sub, sub_ends);
        let mut found = profile.validate();
        // Constraint checks need well-ordered breakpoints to mean anything.
        let ordered = !found.iter().any(|v| matches!(v.kind, ViolationKind::Empty | ViolationKind::Ordering));
        if ordered {
            for (si, seg) in profile.segments().iter().enumerate() {
                found.extend(SliceConstraint::SimplexCap.check(seg, profile.params(), si));
                for c in &constraints[si] {
                    if *c != SliceConstraint::SimplexCap {
                        found.extend(c.check(seg, profile.params(), si));
                    }
                }
            }
        }
        for v in found {
            if v.is_definite() {
                problems.push(format!("{} (branch {bi}): {v}", kind_label(v.kind)));
            } else {
                unresolved.push(v);
            }
        }
        branches.push(Branch { profile, constraints });
    }
    if !problems.is_empty() {
        return Err(scenario_err(name, problems.join("; ")));
    }
    Ok(Scenario {
        name: doc.name.clone(),
        param_name: doc.param.clone(),
        params,
        ends,
        target,
        branches,
        notes: doc.notes.clone(),
        unresolved,
    })
}

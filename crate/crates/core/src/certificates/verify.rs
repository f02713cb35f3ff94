use serde::{Deserialize, Serialize};

use super::scenario::Scenario;
use crate::error::Result;
use crate::exact::{Ends, Polynomial, Rational, RationalInterval, SignVerdict, SupEnclosure};
use crate::slice_model::{compare_volume, VolumeComparison};

/// Default width of the sup enclosure when the maximizer is irrational.
pub fn default_width_tol() -> Rational {
    Rational::frac(1, 1_000_000_000_000)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchResult {
    pub params: RationalInterval,
    pub ends: Ends,
    pub volume: Polynomial,
    pub comparison: VolumeComparison,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationResult {
    pub name: String,
    pub param_name: String,
    pub threshold: Rational,
    pub strict: bool,
    pub branches: Vec<BranchResult>,
    /// Conjunction of the branch verdicts: `Positive` only if all are.
    pub verdict: SignVerdict,
    pub holds: bool,
    /// Enclosure of the supremum of the volume over the whole range.
    pub sup: SupEnclosure,
    /// Minimum over branches of `threshold - sup.hi`.
    pub margin_lower_bound: Rational,
    pub violations: Vec<String>,
    pub notes: Vec<String>,
}

/// Certifies `volume < threshold` on every branch of a validated scenario.
pub fn verify(scenario: &Scenario, width_tol: &Rational) -> Result<VerificationResult> {
    let x = &scenario.param_name;
    let mut branches = Vec::new();
    for branch in &scenario.branches {
        let volume = branch.profile.volume();
        let comparison = compare_volume(&volume, &scenario.target, branch.params(), branch.ends(), width_tol)?;
        branches.push(BranchResult { params: branch.params().clone(), ends: branch.ends(), volume, comparison });
    }

    let verdict = branches
        .iter()
        .map(|b| b.comparison.verdict)
        .find(|v| *v != SignVerdict::Positive)
        .unwrap_or(SignVerdict::Positive);
    let violations: Vec<String> = scenario.unresolved.iter().map(|v| v.to_string()).collect();
    let holds = violations.is_empty() && branches.iter().all(|b| b.comparison.holds);

    let best_lo = branches
        .iter()
        .max_by(|a, b| a.comparison.sup.lo.cmp(&b.comparison.sup.lo))
        .expect("scenarios have branches");
    let hi = branches.iter().map(|b| b.comparison.sup.hi.clone()).max().expect("nonempty");
    let sup = SupEnclosure {
        lo: best_lo.comparison.sup.lo.clone(),
        hi: hi.clone(),
        witness: best_lo.comparison.sup.witness.clone(),
    };
    let margin_lower_bound = &scenario.target.threshold - &hi;

    let mut notes = Vec::new();
    if !scenario.notes.is_empty() {
        notes.push(scenario.notes.clone());
    }
    if sup.is_exact() {
        notes.push(format!("sup of the volume is {} at {x} = {}", sup.lo, sup.witness));
    } else {
        notes.push(format!(
            "sup of the volume lies in [{}, {}], near {x} = {}",
            sup.lo, sup.hi, sup.witness
        ));
    }
    if !violations.is_empty() {
        notes.push("undecided dominance checks fail the certificate".to_string());
    }

    Ok(VerificationResult {
        name: scenario.name.clone(),
        param_name: x.clone(),
        threshold: scenario.target.threshold.clone(),
        strict: scenario.target.strict,
        branches,
        verdict,
        holds,
        sup,
        margin_lower_bound,
        violations,
        notes,
    })
}

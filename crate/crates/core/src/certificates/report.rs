//! Versioned JSON report. Fields this version does not know about are kept
//! and written back unchanged.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::verify::VerificationResult;
use crate::error::{Error, Result};
use crate::exact::{Rational, SignVerdict};

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub samples: usize,
    pub max_rel_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub name: String,
    pub holds: bool,
    pub verdict: SignVerdict,
    pub param: String,
    pub param_interval: String,
    pub threshold: Rational,
    pub strict: bool,
    /// Branch interval to volume coefficients, constant term first.
    pub volume_poly: Map<String, Value>,
    pub sup_enclosure: (Rational, Rational),
    pub sup_witness: Rational,
    pub margin_lower_bound: Rational,
    pub margin_decimal: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crosscheck: Option<CrossCheck>,
    #[serde(default)]
    pub violations: Vec<String>,
    #[serde(default)]
    pub notes: Vec<String>,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

impl CertificateRecord {
    pub fn from_result(r: &VerificationResult, param_interval: String, crosscheck: Option<CrossCheck>) -> Self {
        let mut volume_poly = Map::new();
        for b in &r.branches {
            let coeffs = serde_json::to_value(&b.volume).expect("polynomials serialize");
            volume_poly.insert(b.ends.render(&b.params), coeffs);
        }
        CertificateRecord {
            name: r.name.clone(),
            holds: r.holds,
            verdict: r.verdict,
            param: r.param_name.clone(),
            param_interval,
            threshold: r.threshold.clone(),
            strict: r.strict,
            volume_poly,
            sup_enclosure: (r.sup.lo.clone(), r.sup.hi.clone()),
            sup_witness: r.sup.witness.clone(),
            margin_lower_bound: r.margin_lower_bound.clone(),
            margin_decimal: r.margin_lower_bound.to_decimal(12),
            crosscheck,
            violations: r.violations.clone(),
            notes: r.notes.clone(),
            extra: Map::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralCheck {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub version: u32,
    pub tool_version: String,
    /// Taken from `SOURCE_DATE_EPOCH` when set, so reports stay reproducible.
    pub timestamp: Option<String>,
    pub seed: u64,
    pub results: Vec<CertificateRecord>,
    #[serde(default)]
    pub structural: Vec<StructuralCheck>,
    pub status: String,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

impl VerificationReport {
    pub fn new(seed: u64, timestamp: Option<String>, results: Vec<CertificateRecord>, structural: Vec<StructuralCheck>) -> Self {
        let pass = results.iter().all(|r| r.holds) && structural.iter().all(|s| s.passed);
        VerificationReport {
            version: REPORT_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp,
            seed,
            results,
            structural,
            status: if pass { "pass" } else { "fail" }.to_string(),
            extra: Map::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let report: VerificationReport =
            serde_json::from_str(text).map_err(|e| Error::invalid(format!("malformed report: {e}")))?;
        if report.version > REPORT_VERSION {
            return Err(Error::invalid(format!(
                "report version {} is newer than supported version {REPORT_VERSION}",
                report.version
            )));
        }
        Ok(report)
    }
}

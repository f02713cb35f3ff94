//! Scenario documents, the expression syntax they use, and the engine that
//! certifies `volume < threshold` across a parameter range.

pub mod crosscheck;
pub mod expr;
pub mod report;
pub mod scenario;
pub mod suite;
pub mod verify;

pub use crosscheck::{adaptive_simpson, numeric_crosscheck, profile_deviation, DEFAULT_SEED};
pub use expr::{parse_expr, parse_param_expr, print_expr, print_param_expr};
pub use report::{CertificateRecord, CrossCheck, StructuralCheck, VerificationReport, REPORT_VERSION};
pub use scenario::{load_scenario, Branch, Scenario, ScenarioDocument};
pub use suite::{
    builtin_scenario, builtin_scenarios, certify_all, run_builtin_suite, run_scenarios, SuiteOptions, BUILTINS,
};
pub use verify::{default_width_tol, verify, BranchResult, VerificationResult};

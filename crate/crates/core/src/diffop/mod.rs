//! Differential operators on a branch, admissible pairs on the glued algebra,
//! and the two independent admissibility checks (generated conditions and
//! brute-force probing).

mod conditions;
mod linalg;
mod operator;
mod paired;

pub use conditions::{
    generate_conditions, parse_condition_line, symbol_conditions, Branch, ConditionSet, ConditionSyntaxError,
    Constraint, OutOfUniverse, Scope, Unknown, Violation,
};
pub use operator::BranchOperator;
pub use paired::{check_admissible, default_probe_depth, probe_admissible, AdmissibilityReport, PairedOperator};

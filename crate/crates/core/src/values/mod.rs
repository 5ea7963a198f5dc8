//! Allocation rules: Shapley-type values, the ≼-dividend value, the
//! balanced-contributions and fairness rules, and a linear-system oracle.

mod bce;
mod dividends;
mod fce;
pub mod linalg;
mod oracle;
mod rules;
mod shapley;

pub use bce::{bce, bce_with_forest, BceOffsets, BceSolver, TreeChoice};
pub use dividends::{pff_dividends, pff_value, DividendTable};
pub use fce::{fce_direct, fce_formula, FceSolver};
pub use oracle::{oracle_solve, OracleAxiom, OracleOutcome, OracleReport, SystemFailure};
pub use rules::{
    rule_by_name, AllocationRule, Bce, ExternalityFree, FceDirect, FceFormula, JacksonWolinsky,
    Memoized, Myerson, Payoffs, PffValue, Shapley, RULE_NAMES,
};
pub use shapley::{ef_value, ef_value_from_worth, jw_value, myerson, shapley};

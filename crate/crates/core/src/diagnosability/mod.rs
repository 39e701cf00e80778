//! Closed-form `t_g`, extremal witness pairs, and exhaustive verification.

mod brute;
mod enumerate;
mod methods;
mod report;
mod verify;
mod witness;

pub use brute::{classical_diagnosability, tg_bruteforce};
pub use enumerate::{enumerate_gng_sets, GngSets};
pub use methods::{
    methods, BruteForceMethod, FormulaMethod, MethodRegistry, TgMethod, TgOutcome, TgRequest,
    Verdict, VerifyMethod, WitnessMethod, OUTSIDE_THEOREM_RANGE,
};
pub use report::{DiagReport, DiagReportJson, Method};
pub use verify::{check_witness, verify_theorem, CheckStatus, IngredientCheck, TheoremCheck};
pub use witness::{core_pattern, neighborhood_patterns, tg_formula, witness_pair, witness_sizes};

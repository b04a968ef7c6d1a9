pub mod bottom;
pub mod conditions;
pub mod enumerate;
pub mod iterate;

pub use bottom::{constant_map_bottom, solve_on_bottom, solve_on_bottom_sampled, BottomOutcome, BottomSolution, ConstantMapBottom};
pub use conditions::{
    all_pairs, check_condition, check_condition_max, check_condition_min, check_contraction, check_exhaustive,
    Condition, ConditionReport, ConditionVerdict, Scope, Violation,
};
pub use enumerate::{all_maps, exhaustive_condition_maps, FiniteMap, MAX_ENUMERATION_SIZE};
pub use iterate::{iterate, IterateOptions, IterationTrace, Outcome, Step, DEFAULT_BUDGET, DEFAULT_WINDOW};

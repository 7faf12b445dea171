//! Exact references for small instances and validators that share no code
//! with the algorithms they check.

mod brute;
mod claims;
mod closure;
mod sequence;
mod validate;

use thiserror::Error;

pub use brute::{
    brute_longest_rainbow_cycle, brute_longest_rainbow_path, brute_min_spanning_forest, Optimum, CYCLE_CAP, FOREST_CAP,
    PATH_CAP,
};
pub use claims::{claim_chain, forest_claims, ChainLevel, ChainReport, ClaimCheck, ForestClaims, CHAIN_CAP};
pub use closure::{closure_set, swap_closure, ClosureSet, SwapClosureStats};
pub use sequence::{
    first_violating_pair, log_interval, sequence_sweep, verify_sequence_bound, verify_sequence_condition,
    SequenceBound, SequenceCheckInput, SweepReport,
};
pub use validate::{verify_forest, verify_hamilton_cycle, verify_rainbow_cycle, Violation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance has {n} vertices, above the exhaustive limit {cap}")]
    InstanceTooLarge { n: usize, cap: usize },
    #[error("invalid sequence input: {0}")]
    InvalidSequence(String),
    #[error("hypothesis fails at (j, l) = ({j}, {l}); the bound is not claimed")]
    ConditionNotVerified { j: usize, l: usize },
}

use serde::{Deserialize, Serialize};

use super::SolverError;

/// Search limits for the two-phase backends.
///
/// The search keeps improving its best solution until one of: a solution of
/// at most `target_length` moves is found, `max_phase1_candidates` phase-1
/// solutions have been tried, or `time_cap_ms` elapses. Before that, when
/// `exhaustive_depth > 0`, every total length up to `exhaustive_depth` is
/// searched exhaustively, so any state that can be solved within that many
/// moves gets an optimal answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolveBudget {
    pub max_total_length: usize,
    pub target_length: usize,
    pub max_phase1_candidates: u64,
    pub time_cap_ms: u64,
    pub exhaustive_depth: usize,
}

impl Default for SolveBudget {
    fn default() -> Self {
        SolveBudget::two_phase()
    }
}

impl SolveBudget {
    /// Plain two-phase defaults.
    pub const fn two_phase() -> Self {
        SolveBudget {
            max_total_length: 23,
            target_length: 21,
            max_phase1_candidates: 50,
            time_cap_ms: 1_000,
            exhaustive_depth: 0,
        }
    }

    /// Extended exploration used by the knowledge-base solver.
    pub const fn knowledge_base() -> Self {
        SolveBudget {
            max_total_length: 23,
            target_length: 18,
            max_phase1_candidates: 100_000,
            time_cap_ms: 60_000,
            exhaustive_depth: 11,
        }
    }

    /// No early stop: returns a provably shortest solution when one of at
    /// most `max_total_length` moves exists.
    pub const fn exhaustive(max_total_length: usize) -> Self {
        SolveBudget {
            max_total_length,
            target_length: 1,
            max_phase1_candidates: u64::MAX,
            time_cap_ms: u64::MAX,
            exhaustive_depth: max_total_length,
        }
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        let ok = self.max_total_length > 0
            && self.target_length > 0
            && self.max_phase1_candidates > 0
            && self.time_cap_ms > 0
            && self.target_length <= self.max_total_length
            && self.max_total_length <= super::two_phase::MAX_LENGTH;
        if ok {
            Ok(())
        } else {
            Err(SolverError::InvalidBudget(*self))
        }
    }
}

//! Solver backends.
//!
//! * [`solve_two_phase`]: two-phase search with the plain budget.
//! * [`solve_kb`]: the knowledge-base solver, the same search with an
//!   exhaustive short-solution prefix and a much larger budget.
//! * [`solve_layer_by_layer`]: staged human-style baseline.
//! * [`solve_optimal_shallow`]: exact oracle for shallow states.

mod budget;
mod lbl;
mod shallow;
mod two_phase;

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coord::Tables;
use crate::cube::{CubeError, CubieState, MoveSequence};

pub use budget::SolveBudget;
pub use shallow::MAX_SHALLOW_DEPTH;
pub use two_phase::MAX_LENGTH;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    TwoPhase,
    KnowledgeBase,
    LayerByLayer,
    OptimalShallow,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::TwoPhase => "two_phase",
            Backend::KnowledgeBase => "knowledge_base",
            Backend::LayerByLayer => "layer_by_layer",
            Backend::OptimalShallow => "optimal_shallow",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("state is not solvable: {0}")]
    Unsolvable(CubeError),
    #[error("no solution found within the search budget")]
    TimeBudgetExhausted,
    #[error("invalid budget {0:?}")]
    InvalidBudget(SolveBudget),
    #[error("layer-by-layer stage {0:?} failed")]
    StageFailed(&'static str),
    #[error("shallow search depth {0} exceeds the supported maximum")]
    DepthTooLarge(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub backend: Backend,
    pub solution: MoveSequence,
    pub length: usize,
    pub phase1_length: usize,
    pub phase2_length: usize,
    pub nodes_expanded: u64,
    pub elapsed_ms: u64,
}

impl SolveResult {
    fn new(
        solution: MoveSequence,
        phase1_length: usize,
        phase2_length: usize,
        nodes_expanded: u64,
        started: Instant,
        backend: Backend,
    ) -> Self {
        SolveResult {
            backend,
            length: solution.len(),
            solution,
            phase1_length,
            phase2_length,
            nodes_expanded,
            elapsed_ms: started.elapsed().as_millis() as u64,
        }
    }
}

pub fn solve_two_phase(state: &CubieState, budget: &SolveBudget) -> Result<SolveResult, SolverError> {
    two_phase::solve(state, budget, Tables::shared(), Backend::TwoPhase)
}

pub fn solve_two_phase_with(
    state: &CubieState,
    budget: &SolveBudget,
    tables: &Tables,
) -> Result<SolveResult, SolverError> {
    two_phase::solve(state, budget, tables, Backend::TwoPhase)
}

/// Knowledge-base solve. Pass [`SolveBudget::knowledge_base`] for the
/// standard extended exploration.
pub fn solve_kb(state: &CubieState, budget: &SolveBudget) -> Result<SolveResult, SolverError> {
    two_phase::solve(state, budget, Tables::shared(), Backend::KnowledgeBase)
}

pub fn solve_kb_with(state: &CubieState, budget: &SolveBudget, tables: &Tables) -> Result<SolveResult, SolverError> {
    two_phase::solve(state, budget, tables, Backend::KnowledgeBase)
}

pub fn solve_layer_by_layer(state: &CubieState) -> Result<SolveResult, SolverError> {
    lbl::solve(state)
}

/// `Ok(None)` when no solution of at most `max_depth` moves exists.
pub fn solve_optimal_shallow(state: &CubieState, max_depth: usize) -> Result<Option<SolveResult>, SolverError> {
    shallow::solve(state, max_depth)
}

pub fn verify_solution(state: &CubieState, s: &MoveSequence) -> bool {
    state.apply_sequence(s).is_solved()
}

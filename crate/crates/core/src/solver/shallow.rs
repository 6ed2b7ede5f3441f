//! Exact shortest solutions by iterative deepening over canonical move
//! sequences. No pruning tables; only practical to about seven moves.

use std::time::Instant;

use crate::coord::canonical_successor;
use crate::cube::{CubieState, Face, Move, MoveSequence};

use super::{Backend, SolveResult, SolverError};

pub const MAX_SHALLOW_DEPTH: usize = 7;

fn dfs(state: &CubieState, togo: usize, prev: Option<Face>, path: &mut Vec<Move>, nodes: &mut u64) -> bool {
    if togo == 0 {
        return state.is_solved();
    }
    for m in Move::ALL {
        if !canonical_successor(prev, m.face()) {
            continue;
        }
        *nodes += 1;
        path.push(m);
        if dfs(&state.apply_move(m), togo - 1, Some(m.face()), path, nodes) {
            return true;
        }
        path.pop();
    }
    false
}

/// Minimal-length solution if one of at most `max_depth` moves exists.
pub(crate) fn solve(state: &CubieState, max_depth: usize) -> Result<Option<SolveResult>, SolverError> {
    state.validate().map_err(SolverError::Unsolvable)?;
    if max_depth > MAX_SHALLOW_DEPTH {
        return Err(SolverError::DepthTooLarge(max_depth));
    }
    let started = Instant::now();
    let mut nodes = 0;
    let mut path = Vec::with_capacity(max_depth);
    for depth in 0..=max_depth {
        if dfs(state, depth, None, &mut path, &mut nodes) {
            let n = path.len();
            return Ok(Some(SolveResult::new(
                MoveSequence::from_moves(path),
                n,
                0,
                nodes,
                started,
                Backend::OptimalShallow,
            )));
        }
    }
    Ok(None)
}

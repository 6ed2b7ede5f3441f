//! Two-phase search: reach `G1 = <U, D, R2, L2, F2, B2>` with all 18 moves,
//! then finish with the ten `G1` moves. Phase-1 solutions are enumerated in
//! order of increasing length; each one is completed by a phase-2 search that
//! must beat the best total found so far, so every accepted solution is
//! strictly shorter than the previous one.

use std::time::{Duration, Instant};

use crate::coord::{canonical_successor, encode_phase1, encode_phase2, Tables, PHASE2_MOVES};
use crate::cube::{CubieState, Face, Move, MoveSequence};

use super::{Backend, SolveBudget, SolveResult, SolverError};

/// Longest total length a budget may ask for.
pub const MAX_LENGTH: usize = 30;

/// How often (in nodes) the deadline is polled.
const CLOCK_MASK: u64 = 0x3ff;

struct Search<'a> {
    t: &'a Tables,
    start: CubieState,
    path1: Vec<u8>,
    path2: Vec<u8>,
    /// Solutions must be strictly shorter than this.
    bound: usize,
    best: Option<(Vec<Move>, usize)>,
    target: usize,
    stop_on_first: bool,
    max_candidates: u64,
    candidates: u64,
    nodes: u64,
    deadline: Option<Instant>,
    timed_out: bool,
    stop: bool,
}

impl<'a> Search<'a> {
    fn out_of_time(&mut self) -> bool {
        if self.nodes & CLOCK_MASK == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.timed_out = true;
                    self.stop = true;
                }
            }
        }
        self.stop
    }

    /// Enumerates phase-1 paths of length exactly `depth` that end in `G1`.
    fn phase1(&mut self, twist: usize, flip: usize, slice: usize, togo: usize, prev: Option<Face>) {
        if togo == 0 {
            if twist == 0 && flip == 0 && slice == 0 {
                self.candidate();
            }
            return;
        }
        let m1 = &self.t.move1;
        for mi in 0..18 {
            let mv = Move::from_index(mi);
            if !canonical_successor(prev, mv.face()) {
                continue;
            }
            // the last phase-1 move must leave G1 territory, or the path
            // would already have been a shorter phase-1 solution
            if togo == 1 && mv.preserves_g1() {
                continue;
            }
            let nt = m1.twist.get(twist, mi);
            let nf = m1.flip.get(flip, mi);
            let ns = m1.slice.get(slice, mi);
            if self.t.prune1.bound(nt, nf, ns) as usize > togo - 1 {
                continue;
            }
            self.nodes += 1;
            if self.out_of_time() {
                return;
            }
            self.path1.push(mi as u8);
            self.phase1(nt, nf, ns, togo - 1, Some(mv.face()));
            self.path1.pop();
            if self.stop {
                return;
            }
        }
    }

    fn candidate(&mut self) {
        self.candidates += 1;
        let d1 = self.path1.len();
        let allowance = self.bound - 1 - d1;
        let mut state = self.start;
        for &mi in &self.path1 {
            state = state.apply_move(Move::from_index(mi as usize));
        }
        let c2 = encode_phase2(&state).expect("phase-1 leaf lies in G1");
        let (cp, ep, sp) = (
            c2.corner_perm as usize,
            c2.ud_edge_perm as usize,
            c2.slice_perm as usize,
        );
        let h2 = self.t.prune2.bound(cp, ep, sp) as usize;
        let prev = self.path1.last().map(|&m| Move::from_index(m as usize).face());
        for d2 in h2..=allowance {
            if self.phase2(cp, ep, sp, d2, prev) {
                let mut sol: Vec<Move> = self.path1.iter().map(|&m| Move::from_index(m as usize)).collect();
                sol.extend(self.path2.iter().rev().map(|&m| PHASE2_MOVES[m as usize]));
                self.path2.clear();
                self.bound = sol.len();
                self.best = Some((sol, d1));
                if self.stop_on_first || self.bound <= self.target {
                    self.stop = true;
                }
                break;
            }
            if self.stop {
                return;
            }
        }
        if self.candidates >= self.max_candidates {
            self.stop = true;
        }
    }

    /// Depth-limited phase-2 search; on success the moves are left in
    /// `path2` in reverse order.
    fn phase2(&mut self, cp: usize, ep: usize, sp: usize, togo: usize, prev: Option<Face>) -> bool {
        if togo == 0 {
            return cp == 0 && ep == 0 && sp == 0;
        }
        let m2 = &self.t.move2;
        for (mi, mv) in PHASE2_MOVES.iter().enumerate() {
            if !canonical_successor(prev, mv.face()) {
                continue;
            }
            let ncp = m2.corner_perm.get(cp, mi);
            let nep = m2.ud_edge_perm.get(ep, mi);
            let nsp = m2.slice_perm.get(sp, mi);
            if self.t.prune2.bound(ncp, nep, nsp) as usize > togo - 1 {
                continue;
            }
            self.nodes += 1;
            if self.out_of_time() {
                return false;
            }
            if self.phase2(ncp, nep, nsp, togo - 1, Some(mv.face())) {
                self.path2.push(mi as u8);
                return true;
            }
            if self.stop {
                return false;
            }
        }
        false
    }

    /// Runs phase-1 depths upward while they can still beat `bound`.
    fn run(&mut self) {
        let c1 = encode_phase1(&self.start);
        let (tw, fl, sl) = (c1.twist as usize, c1.flip as usize, c1.slice as usize);
        let h1 = self.t.prune1.bound(tw, fl, sl) as usize;
        let mut d1 = h1;
        while d1 < self.bound && !self.stop {
            self.phase1(tw, fl, sl, d1, None);
            d1 += 1;
        }
    }
}

pub(crate) fn solve(
    state: &CubieState,
    budget: &SolveBudget,
    tables: &Tables,
    backend: Backend,
) -> Result<SolveResult, SolverError> {
    budget.validate()?;
    state.validate().map_err(SolverError::Unsolvable)?;
    let started = Instant::now();
    if state.is_solved() {
        return Ok(SolveResult::new(MoveSequence::new(), 0, 0, 0, started, backend));
    }
    let deadline = started.checked_add(Duration::from_millis(budget.time_cap_ms));
    let mut s = Search {
        t: tables,
        start: *state,
        path1: Vec::with_capacity(MAX_LENGTH),
        path2: Vec::with_capacity(MAX_LENGTH),
        bound: budget.max_total_length + 1,
        best: None,
        target: budget.target_length,
        stop_on_first: true,
        max_candidates: u64::MAX,
        candidates: 0,
        nodes: 0,
        deadline,
        timed_out: false,
        stop: false,
    };

    // Exhaustive prefix: iterative deepening on the total length.
    let c1 = encode_phase1(state);
    let lower = tables
        .prune1
        .bound(c1.twist as usize, c1.flip as usize, c1.slice as usize) as usize;
    let cap = budget.exhaustive_depth.min(budget.max_total_length);
    let mut total = lower.max(1);
    while total <= cap && s.best.is_none() && !s.timed_out {
        s.bound = total + 1;
        s.stop = false;
        s.run();
        total += 1;
    }

    if s.best.is_none() && !s.timed_out {
        s.bound = budget.max_total_length + 1;
        s.stop = false;
        s.stop_on_first = false;
        s.candidates = 0;
        s.max_candidates = budget.max_phase1_candidates;
        s.run();
    }

    match s.best {
        Some((moves, d1)) => {
            let d2 = moves.len() - d1;
            Ok(SolveResult::new(
                MoveSequence::from_moves(moves),
                d1,
                d2,
                s.nodes,
                started,
                backend,
            ))
        }
        None => Err(SolverError::TimeBudgetExhausted),
    }
}

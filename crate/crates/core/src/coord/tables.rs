//! Dense move and pruning tables for both search phases.

use std::collections::VecDeque;

use crate::cube::{CubieState, Face, Move};

use super::coords::*;

/// Phase-2 moves, in expansion order. They generate `G1`.
pub const PHASE2_MOVES: [Move; 10] = {
    let m = Move::ALL;
    [
        m[0],  // U1
        m[1],  // U2
        m[2],  // U3
        m[4],  // R2
        m[7],  // F2
        m[9],  // D1
        m[10], // D2
        m[11], // D3
        m[13], // L2
        m[16], // B2
    ]
};

pub const UNVISITED: u8 = u8::MAX;

/// `table[c][m]` is the coordinate reached from `c` by move `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveTable {
    rows: usize,
    cols: usize,
    data: Vec<u16>,
}

impl MoveTable {
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> u16) -> MoveTable {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        MoveTable { rows, cols, data }
    }

    pub(crate) fn from_raw(rows: usize, cols: usize, data: Vec<u16>) -> MoveTable {
        debug_assert_eq!(data.len(), rows * cols);
        MoveTable { rows, cols, data }
    }

    #[inline]
    pub fn get(&self, coord: usize, mv: usize) -> usize {
        self.data[coord * self.cols + mv] as usize
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u16] {
        &self.data
    }
}

/// Breadth-first distance (in moves) from the goal over a pair of
/// coordinates, indexed `a * cols + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PruneTable {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl PruneTable {
    /// BFS from `(0, 0)` over the product graph of two move tables sharing a
    /// move set.
    pub fn build(a: &MoveTable, b: &MoveTable) -> PruneTable {
        assert_eq!(a.cols(), b.cols());
        let (rows, cols) = (a.rows(), b.rows());
        let n_moves = a.cols();
        let mut data = vec![UNVISITED; rows * cols];
        data[0] = 0;
        let mut queue = VecDeque::with_capacity(1 << 16);
        queue.push_back(0u32);
        while let Some(idx) = queue.pop_front() {
            let idx = idx as usize;
            let depth = data[idx];
            let (ia, ib) = (idx / cols, idx % cols);
            for m in 0..n_moves {
                let next = a.get(ia, m) * cols + b.get(ib, m);
                if data[next] == UNVISITED {
                    data[next] = depth + 1;
                    queue.push_back(next as u32);
                }
            }
        }
        PruneTable { rows, cols, data }
    }

    pub(crate) fn from_raw(rows: usize, cols: usize, data: Vec<u8>) -> PruneTable {
        debug_assert_eq!(data.len(), rows * cols);
        PruneTable { rows, cols, data }
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> u8 {
        self.data[a * self.cols + b]
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn max_depth(&self) -> u8 {
        self.data.iter().copied().max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Phase1MoveTables {
    pub twist: MoveTable,
    pub flip: MoveTable,
    pub slice: MoveTable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Phase2MoveTables {
    pub corner_perm: MoveTable,
    pub ud_edge_perm: MoveTable,
    pub slice_perm: MoveTable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Phase1PruneTables {
    pub twist_slice: PruneTable,
    pub flip_slice: PruneTable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Phase2PruneTables {
    pub corner_slice: PruneTable,
    pub edge_slice: PruneTable,
}

fn coord_move_table(
    rows: usize,
    moves: &[Move],
    set: impl Fn(&mut CubieState, usize),
    get: impl Fn(&CubieState) -> u16,
) -> MoveTable {
    MoveTable::from_fn(rows, moves.len(), |r, m| {
        let mut c = CubieState::SOLVED;
        set(&mut c, r);
        get(&c.apply_move(moves[m]))
    })
}

impl Phase1MoveTables {
    pub fn build() -> Self {
        let moves = &Move::ALL;
        Phase1MoveTables {
            twist: coord_move_table(N_TWIST, moves, |c, r| set_twist(c, r as u16), twist),
            flip: coord_move_table(N_FLIP, moves, |c, r| set_flip(c, r as u16), flip),
            slice: coord_move_table(N_SLICE, moves, |c, r| set_slice(c, r as u16), slice),
        }
    }
}

impl Phase2MoveTables {
    pub fn build() -> Self {
        let moves = &PHASE2_MOVES;
        Phase2MoveTables {
            corner_perm: coord_move_table(
                N_CORNER_PERM,
                moves,
                |c, r| set_corner_perm(c, r as u16),
                |c| lehmer_rank(&c.cp) as u16,
            ),
            ud_edge_perm: coord_move_table(
                N_UD_EDGE_PERM,
                moves,
                |c, r| set_ud_edge_perm(c, r as u16),
                |c| lehmer_rank(&c.ep[..8]) as u16,
            ),
            slice_perm: coord_move_table(
                N_SLICE_PERM,
                moves,
                |c, r| set_slice_perm(c, r as u8),
                |c| {
                    let sl: Vec<u8> = c.ep[8..].iter().map(|e| e - 8).collect();
                    lehmer_rank(&sl) as u16
                },
            ),
        }
    }
}

impl Phase1PruneTables {
    pub fn build(m: &Phase1MoveTables) -> Self {
        Phase1PruneTables {
            twist_slice: PruneTable::build(&m.twist, &m.slice),
            flip_slice: PruneTable::build(&m.flip, &m.slice),
        }
    }

    /// Admissible lower bound on the number of moves to reach `G1`.
    #[inline]
    pub fn bound(&self, twist: usize, flip: usize, slice: usize) -> u8 {
        self.twist_slice.get(twist, slice).max(self.flip_slice.get(flip, slice))
    }
}

impl Phase2PruneTables {
    pub fn build(m: &Phase2MoveTables) -> Self {
        Phase2PruneTables {
            corner_slice: PruneTable::build(&m.corner_perm, &m.slice_perm),
            edge_slice: PruneTable::build(&m.ud_edge_perm, &m.slice_perm),
        }
    }

    /// Admissible lower bound on the number of `G1` moves to solve.
    #[inline]
    pub fn bound(&self, corner_perm: usize, ud_edge_perm: usize, slice_perm: usize) -> u8 {
        self.corner_slice
            .get(corner_perm, slice_perm)
            .max(self.edge_slice.get(ud_edge_perm, slice_perm))
    }
}

/// Which search phase a table belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    One = 1,
    Two = 2,
}

/// Everything the two-phase search needs. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tables {
    pub move1: Phase1MoveTables,
    pub move2: Phase2MoveTables,
    pub prune1: Phase1PruneTables,
    pub prune2: Phase2PruneTables,
}

impl Tables {
    pub fn build() -> Tables {
        let move1 = Phase1MoveTables::build();
        let move2 = Phase2MoveTables::build();
        let prune1 = Phase1PruneTables::build(&move1);
        let prune2 = Phase2PruneTables::build(&move2);
        Tables {
            move1,
            move2,
            prune1,
            prune2,
        }
    }

    /// Process-wide tables, built in memory on first use.
    pub fn shared() -> &'static Tables {
        static TABLES: std::sync::OnceLock<Tables> = std::sync::OnceLock::new();
        TABLES.get_or_init(Tables::build)
    }
}

/// Phase-2 index of a `G1` move, if it is one.
pub fn phase2_index(m: Move) -> Option<usize> {
    PHASE2_MOVES.iter().position(|&p| p == m)
}

/// True when `next` may follow `prev` in a canonical sequence: never the same
/// face twice, and of two commuting opposite faces only the lower-indexed one
/// may come first.
#[inline]
pub fn canonical_successor(prev: Option<Face>, next: Face) -> bool {
    match prev {
        None => true,
        Some(p) => p != next && !(p.opposite() == next && p.index() > next.index()),
    }
}

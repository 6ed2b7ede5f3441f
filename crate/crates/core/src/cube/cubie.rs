//! Permutation/orientation representation of a cube configuration.
//!
//! Corner slots: `URF UFL ULB UBR DFR DLF DBL DRB`.
//! Edge slots: `UR UF UL UB DR DF DL DB FR FL BL BR`.
//! `cp[i]` names the corner currently sitting in slot `i` and `co[i]` its
//! twist; likewise for edges. Composition is "apply the right operand after
//! the left", so `state.multiply(&MOVE_R)` is the state after turning R.

use serde::{Deserialize, Serialize};

use super::{CubeError, Move, MoveSequence};

pub const N_CORNERS: usize = 8;
pub const N_EDGES: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CubieState {
    pub cp: [u8; N_CORNERS],
    pub co: [u8; N_CORNERS],
    pub ep: [u8; N_EDGES],
    pub eo: [u8; N_EDGES],
}

// Corner and edge names, for readability of the basic move tables.
const URF: u8 = 0;
const UFL: u8 = 1;
const ULB: u8 = 2;
const UBR: u8 = 3;
const DFR: u8 = 4;
const DLF: u8 = 5;
const DBL: u8 = 6;
const DRB: u8 = 7;

const UR: u8 = 0;
const UF: u8 = 1;
const UL: u8 = 2;
const UB: u8 = 3;
const DR: u8 = 4;
const DF: u8 = 5;
const DL: u8 = 6;
const DB: u8 = 7;
const FR: u8 = 8;
const FL: u8 = 9;
const BL: u8 = 10;
const BR: u8 = 11;

/// Clockwise quarter turn of each face, in `Face` order.
const BASIC_MOVES: [CubieState; 6] = [
    // U
    CubieState {
        cp: [UBR, URF, UFL, ULB, DFR, DLF, DBL, DRB],
        co: [0; 8],
        ep: [UB, UR, UF, UL, DR, DF, DL, DB, FR, FL, BL, BR],
        eo: [0; 12],
    },
    // R
    CubieState {
        cp: [DFR, UFL, ULB, URF, DRB, DLF, DBL, UBR],
        co: [2, 0, 0, 1, 1, 0, 0, 2],
        ep: [FR, UF, UL, UB, BR, DF, DL, DB, DR, FL, BL, UR],
        eo: [0; 12],
    },
    // F
    CubieState {
        cp: [UFL, DLF, ULB, UBR, URF, DFR, DBL, DRB],
        co: [1, 2, 0, 0, 2, 1, 0, 0],
        ep: [UR, FL, UL, UB, DR, FR, DL, DB, UF, DF, BL, BR],
        eo: [0, 1, 0, 0, 0, 1, 0, 0, 1, 1, 0, 0],
    },
    // D
    CubieState {
        cp: [URF, UFL, ULB, UBR, DLF, DBL, DRB, DFR],
        co: [0; 8],
        ep: [UR, UF, UL, UB, DF, DL, DB, DR, FR, FL, BL, BR],
        eo: [0; 12],
    },
    // L
    CubieState {
        cp: [URF, ULB, DBL, UBR, DFR, UFL, DLF, DRB],
        co: [0, 1, 2, 0, 0, 2, 1, 0],
        ep: [UR, UF, BL, UB, DR, DF, FL, DB, FR, UL, DL, BR],
        eo: [0; 12],
    },
    // B
    CubieState {
        cp: [URF, UFL, UBR, DRB, DFR, DLF, ULB, DBL],
        co: [0, 0, 1, 2, 0, 0, 2, 1],
        ep: [UR, UF, UL, BR, DR, DF, DL, BL, FR, FL, UB, DB],
        eo: [0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 1],
    },
];

/// All 18 face moves as cubie states, indexed like [`Move::ALL`].
pub static MOVE_CUBES: [CubieState; 18] = {
    let mut out = [CubieState::SOLVED; 18];
    let mut f = 0;
    while f < 6 {
        let mut acc = CubieState::SOLVED;
        let mut t = 0;
        while t < 3 {
            acc = acc.multiply(&BASIC_MOVES[f]);
            out[f * 3 + t] = acc;
            t += 1;
        }
        f += 1;
    }
    out
};

impl Default for CubieState {
    fn default() -> Self {
        CubieState::SOLVED
    }
}

impl CubieState {
    pub const SOLVED: CubieState = CubieState {
        cp: [0, 1, 2, 3, 4, 5, 6, 7],
        co: [0; 8],
        ep: [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11],
        eo: [0; 12],
    };

    /// Group product: the configuration reached by applying `other` after `self`.
    pub const fn multiply(&self, other: &CubieState) -> CubieState {
        let mut r = CubieState::SOLVED;
        let mut i = 0;
        while i < N_CORNERS {
            let src = other.cp[i] as usize;
            r.cp[i] = self.cp[src];
            r.co[i] = (self.co[src] + other.co[i]) % 3;
            i += 1;
        }
        let mut i = 0;
        while i < N_EDGES {
            let src = other.ep[i] as usize;
            r.ep[i] = self.ep[src];
            r.eo[i] = (self.eo[src] + other.eo[i]) % 2;
            i += 1;
        }
        r
    }

    pub fn inverse(&self) -> CubieState {
        let mut r = CubieState::SOLVED;
        for i in 0..N_CORNERS {
            let p = self.cp[i] as usize;
            r.cp[p] = i as u8;
            r.co[p] = (3 - self.co[i]) % 3;
        }
        for i in 0..N_EDGES {
            let p = self.ep[i] as usize;
            r.ep[p] = i as u8;
            r.eo[p] = self.eo[i];
        }
        r
    }

    #[inline]
    pub fn apply_move(&self, m: Move) -> CubieState {
        self.multiply(&MOVE_CUBES[m.index()])
    }

    pub fn apply_sequence(&self, s: &MoveSequence) -> CubieState {
        s.iter().fold(*self, |acc, &m| acc.apply_move(m))
    }

    pub fn from_moves(s: &MoveSequence) -> CubieState {
        CubieState::SOLVED.apply_sequence(s)
    }

    pub fn is_solved(&self) -> bool {
        *self == CubieState::SOLVED
    }

    pub fn corner_parity(&self) -> u8 {
        permutation_parity(&self.cp)
    }

    pub fn edge_parity(&self) -> u8 {
        permutation_parity(&self.ep)
    }

    pub fn twist_sum(&self) -> u32 {
        self.co.iter().map(|&c| c as u32).sum()
    }

    pub fn flip_sum(&self) -> u32 {
        self.eo.iter().map(|&e| e as u32).sum()
    }

    /// Checks that the state is a legal permutation/orientation record and
    /// reachable from solved by face turns.
    pub fn validate(&self) -> Result<(), CubeError> {
        if !is_permutation(&self.cp) || !is_permutation(&self.ep) {
            return Err(CubeError::NotAPermutation);
        }
        if self.co.iter().any(|&c| c > 2) || self.eo.iter().any(|&e| e > 1) {
            return Err(CubeError::OrientationOutOfRange);
        }
        if !self.twist_sum().is_multiple_of(3) {
            return Err(CubeError::TwistViolation);
        }
        if !self.flip_sum().is_multiple_of(2) {
            return Err(CubeError::FlipViolation);
        }
        if self.corner_parity() != self.edge_parity() {
            return Err(CubeError::ParityViolation);
        }
        Ok(())
    }

    /// Uniformly random reachable state.
    pub fn random<R: rand::Rng + ?Sized>(rng: &mut R) -> CubieState {
        use rand::seq::SliceRandom;
        let mut c = CubieState::SOLVED;
        c.cp.shuffle(rng);
        c.ep.shuffle(rng);
        if c.corner_parity() != c.edge_parity() {
            c.ep.swap(0, 1);
        }
        for i in 0..N_CORNERS - 1 {
            c.co[i] = rng.gen_range(0..3);
        }
        c.co[7] = ((3 - c.twist_sum() % 3) % 3) as u8;
        for i in 0..N_EDGES - 1 {
            c.eo[i] = rng.gen_range(0..2);
        }
        c.eo[11] = (c.flip_sum() % 2) as u8;
        c
    }
}

pub fn apply_move(state: &CubieState, m: Move) -> CubieState {
    state.apply_move(m)
}

pub fn apply_sequence(state: &CubieState, s: &MoveSequence) -> CubieState {
    state.apply_sequence(s)
}

pub fn validate(state: &CubieState) -> Result<(), CubeError> {
    state.validate()
}

pub fn is_solved(state: &CubieState) -> bool {
    state.is_solved()
}

fn is_permutation(p: &[u8]) -> bool {
    let mut seen = 0u32;
    for &x in p {
        if x as usize >= p.len() || seen & (1 << x) != 0 {
            return false;
        }
        seen |= 1 << x;
    }
    true
}

/// 0 for even, 1 for odd. Assumes `p` is a permutation.
fn permutation_parity(p: &[u8]) -> u8 {
    let mut inversions = 0u32;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    (inversions % 2) as u8
}

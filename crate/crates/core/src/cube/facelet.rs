//! The 54-sticker descriptor.
//!
//! Faces are stored in the order `U R F D L B`, nine stickers each, row-major
//! from the top-left corner. U is viewed with B at the top, D with F at the
//! top, and the four side faces upright with U at the top. Centres therefore
//! sit at indices 4, 13, 22, 31, 40 and 49.

use std::fmt;
use std::str::FromStr;

use super::cubie::{CubieState, N_CORNERS, N_EDGES};
use super::{CubeError, Face};

pub const N_FACELETS: usize = 54;

/// Sticker indices of each corner slot, starting with the U/D sticker and
/// proceeding clockwise.
pub const CORNER_FACELETS: [[usize; 3]; N_CORNERS] = [
    [8, 9, 20],   // URF
    [6, 18, 38],  // UFL
    [0, 36, 47],  // ULB
    [2, 45, 11],  // UBR
    [29, 26, 15], // DFR
    [27, 44, 24], // DLF
    [33, 53, 42], // DBL
    [35, 17, 51], // DRB
];

/// Sticker indices of each edge slot; the first is the reference sticker.
pub const EDGE_FACELETS: [[usize; 2]; N_EDGES] = [
    [5, 10],  // UR
    [7, 19],  // UF
    [3, 37],  // UL
    [1, 46],  // UB
    [32, 16], // DR
    [28, 25], // DF
    [30, 43], // DL
    [34, 52], // DB
    [23, 12], // FR
    [21, 41], // FL
    [50, 39], // BL
    [48, 14], // BR
];

pub const CORNER_COLORS: [[Face; 3]; N_CORNERS] = [
    [Face::U, Face::R, Face::F],
    [Face::U, Face::F, Face::L],
    [Face::U, Face::L, Face::B],
    [Face::U, Face::B, Face::R],
    [Face::D, Face::F, Face::R],
    [Face::D, Face::L, Face::F],
    [Face::D, Face::B, Face::L],
    [Face::D, Face::R, Face::B],
];

pub const EDGE_COLORS: [[Face; 2]; N_EDGES] = [
    [Face::U, Face::R],
    [Face::U, Face::F],
    [Face::U, Face::L],
    [Face::U, Face::B],
    [Face::D, Face::R],
    [Face::D, Face::F],
    [Face::D, Face::L],
    [Face::D, Face::B],
    [Face::F, Face::R],
    [Face::F, Face::L],
    [Face::B, Face::L],
    [Face::B, Face::R],
];

pub const CENTER_INDICES: [usize; 6] = [4, 13, 22, 31, 40, 49];

/// Sticker-level cube configuration. Construct through [`parse_facelets`] or
/// [`cubies_to_facelets`] so the invariants hold.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FaceletState([Face; N_FACELETS]);

impl FaceletState {
    pub fn solved() -> FaceletState {
        FaceletState(std::array::from_fn(|i| Face::from_index(i / 9)))
    }

    pub fn stickers(&self) -> &[Face; N_FACELETS] {
        &self.0
    }

    pub fn sticker(&self, i: usize) -> Face {
        self.0[i]
    }

    /// The nine stickers of `face`, row-major.
    pub fn face_stickers(&self, face: Face) -> &[Face] {
        let base = face.index() * 9;
        &self.0[base..base + 9]
    }

    /// Checks the count and centre invariants on a raw sticker array.
    pub fn from_stickers(stickers: [Face; N_FACELETS]) -> Result<FaceletState, CubeError> {
        let mut counts = [0usize; 6];
        for f in stickers {
            counts[f.index()] += 1;
        }
        if let Some(face) = Face::ALL.into_iter().find(|f| counts[f.index()] != 9) {
            return Err(CubeError::CountViolation {
                label: face.letter(),
                count: counts[face.index()],
            });
        }
        for face in Face::ALL {
            let i = CENTER_INDICES[face.index()];
            if stickers[i] != face {
                return Err(CubeError::CenterViolation { index: i });
            }
        }
        Ok(FaceletState(stickers))
    }

    pub fn to_cubies(&self) -> Result<CubieState, CubeError> {
        facelets_to_cubies(self)
    }
}

impl fmt::Display for FaceletState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for face in self.0 {
            write!(f, "{}", face.letter())?;
        }
        Ok(())
    }
}

impl fmt::Debug for FaceletState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FaceletState({self})")
    }
}

impl FromStr for FaceletState {
    type Err = CubeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_facelets(s)
    }
}

pub fn parse_facelets(text: &str) -> Result<FaceletState, CubeError> {
    let n = text.chars().count();
    if n != N_FACELETS {
        return Err(CubeError::WrongLength(n));
    }
    let mut stickers = [Face::U; N_FACELETS];
    for (i, c) in text.chars().enumerate() {
        stickers[i] = Face::from_letter(c).ok_or(CubeError::InvalidCharacter { index: i, ch: c })?;
    }
    FaceletState::from_stickers(stickers)
}

pub fn facelets_to_cubies(f: &FaceletState) -> Result<CubieState, CubeError> {
    let s = &f.0;
    let mut c = CubieState::SOLVED;

    for (slot, idx) in CORNER_FACELETS.iter().enumerate() {
        let ori = (0..3)
            .find(|&o| matches!(s[idx[o]], Face::U | Face::D))
            .ok_or(CubeError::UnrecognizedCubie { slot, corner: true })?;
        let c1 = s[idx[(ori + 1) % 3]];
        let c2 = s[idx[(ori + 2) % 3]];
        let piece = CORNER_COLORS
            .iter()
            .position(|col| col[1] == c1 && col[2] == c2 && col[0] == s[idx[ori]])
            .ok_or(CubeError::UnrecognizedCubie { slot, corner: true })?;
        c.cp[slot] = piece as u8;
        c.co[slot] = ori as u8;
    }

    for (slot, idx) in EDGE_FACELETS.iter().enumerate() {
        let (a, b) = (s[idx[0]], s[idx[1]]);
        let found = EDGE_COLORS.iter().enumerate().find_map(|(piece, col)| {
            if col[0] == a && col[1] == b {
                Some((piece, 0))
            } else if col[0] == b && col[1] == a {
                Some((piece, 1))
            } else {
                None
            }
        });
        let (piece, ori) = found.ok_or(CubeError::UnrecognizedCubie { slot, corner: false })?;
        c.ep[slot] = piece as u8;
        c.eo[slot] = ori;
    }

    // Every slot matched some physical piece, but a piece may appear twice.
    let mut seen_c = [false; N_CORNERS];
    for (slot, &p) in c.cp.iter().enumerate() {
        if std::mem::replace(&mut seen_c[p as usize], true) {
            return Err(CubeError::UnrecognizedCubie { slot, corner: true });
        }
    }
    let mut seen_e = [false; N_EDGES];
    for (slot, &p) in c.ep.iter().enumerate() {
        if std::mem::replace(&mut seen_e[p as usize], true) {
            return Err(CubeError::UnrecognizedCubie { slot, corner: false });
        }
    }
    Ok(c)
}

pub fn cubies_to_facelets(c: &CubieState) -> FaceletState {
    let mut s: [Face; N_FACELETS] = std::array::from_fn(|i| Face::from_index(i / 9));
    for slot in 0..N_CORNERS {
        let piece = c.cp[slot] as usize;
        let ori = c.co[slot] as usize;
        for n in 0..3 {
            s[CORNER_FACELETS[slot][(n + ori) % 3]] = CORNER_COLORS[piece][n];
        }
    }
    for slot in 0..N_EDGES {
        let piece = c.ep[slot] as usize;
        let ori = c.eo[slot] as usize;
        for n in 0..2 {
            s[EDGE_FACELETS[slot][(n + ori) % 2]] = EDGE_COLORS[piece][n];
        }
    }
    FaceletState(s)
}

impl CubieState {
    pub fn to_facelets(&self) -> FaceletState {
        cubies_to_facelets(self)
    }
}

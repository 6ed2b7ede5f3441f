//! Exact model of the 3x3x3 cube group.

mod cubie;
mod face;
mod facelet;
mod moves;
mod scramble;

pub use cubie::{apply_move, apply_sequence, is_solved, validate, CubieState, MOVE_CUBES, N_CORNERS, N_EDGES};
pub use face::{Color, Face};
pub use facelet::{
    cubies_to_facelets, facelets_to_cubies, parse_facelets, FaceletState, CENTER_INDICES, CORNER_COLORS,
    CORNER_FACELETS, EDGE_COLORS, EDGE_FACELETS, N_FACELETS,
};
pub use moves::{invert_sequence, parse_moves, Move, MoveSequence};
pub use scramble::{random_scramble, random_scramble_with};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubeError {
    #[error("descriptor must be 54 characters, got {0}")]
    WrongLength(usize),
    #[error("invalid character {ch:?} at index {index}")]
    InvalidCharacter { index: usize, ch: char },
    #[error("label {label} appears {count} times, expected 9")]
    CountViolation { label: char, count: usize },
    #[error("centre sticker at index {index} does not match its face")]
    CenterViolation { index: usize },
    #[error("stickers of {} slot {slot} match no physical piece", if *corner { "corner" } else { "edge" })]
    UnrecognizedCubie { slot: usize, corner: bool },
    #[error("bad move token {0:?}")]
    BadToken(String),
    #[error("piece permutation is not a bijection")]
    NotAPermutation,
    #[error("orientation value out of range")]
    OrientationOutOfRange,
    #[error("corner twist sum is not a multiple of 3")]
    TwistViolation,
    #[error("edge flip sum is odd")]
    FlipViolation,
    #[error("corner and edge permutation parities differ")]
    ParityViolation,
}

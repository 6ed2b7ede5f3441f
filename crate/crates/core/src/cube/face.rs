use std::fmt;

use serde::{Deserialize, Serialize};

/// One of the six cube faces. The discriminant order `U, R, F, D, L, B` is the
/// descriptor order and the deterministic move-expansion order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Face {
    U = 0,
    R = 1,
    F = 2,
    D = 3,
    L = 4,
    B = 5,
}

/// Sticker colour bound to a face when the robot faces the red side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Yellow,
    Green,
    Red,
    White,
    Blue,
    Orange,
}

impl Face {
    pub const ALL: [Face; 6] = [Face::U, Face::R, Face::F, Face::D, Face::L, Face::B];

    #[inline]
    pub const fn index(self) -> usize {
        self as usize
    }

    #[inline]
    pub const fn from_index(i: usize) -> Face {
        Face::ALL[i]
    }

    pub const fn color(self) -> Color {
        match self {
            Face::U => Color::Yellow,
            Face::R => Color::Green,
            Face::F => Color::Red,
            Face::D => Color::White,
            Face::L => Color::Blue,
            Face::B => Color::Orange,
        }
    }

    pub const fn opposite(self) -> Face {
        match self {
            Face::U => Face::D,
            Face::R => Face::L,
            Face::F => Face::B,
            Face::D => Face::U,
            Face::L => Face::R,
            Face::B => Face::F,
        }
    }

    pub const fn letter(self) -> char {
        match self {
            Face::U => 'U',
            Face::R => 'R',
            Face::F => 'F',
            Face::D => 'D',
            Face::L => 'L',
            Face::B => 'B',
        }
    }

    pub fn from_letter(c: char) -> Option<Face> {
        Some(match c {
            'U' => Face::U,
            'R' => Face::R,
            'F' => Face::F,
            'D' => Face::D,
            'L' => Face::L,
            'B' => Face::B,
            _ => return None,
        })
    }

    /// Lower-case layer name used in robot command phrasing.
    pub const fn layer_name(self) -> &'static str {
        match self {
            Face::U => "upper",
            Face::R => "right",
            Face::F => "front",
            Face::D => "down",
            Face::L => "left",
            Face::B => "back",
        }
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{CubeError, Face};

/// A single face turn: `turns` clockwise quarter turns (1, 2 or 3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Move {
    face: Face,
    turns: u8,
}

impl Move {
    /// All 18 face moves in expansion order: `U1 U2 U3 R1 ... B3`.
    pub const ALL: [Move; 18] = {
        let mut out = [Move {
            face: Face::U,
            turns: 1,
        }; 18];
        let mut i = 0;
        while i < 18 {
            out[i] = Move {
                face: Face::ALL[i / 3],
                turns: (i % 3) as u8 + 1,
            };
            i += 1;
        }
        out
    };

    pub fn new(face: Face, turns: u8) -> Result<Move, CubeError> {
        if (1..=3).contains(&turns) {
            Ok(Move { face, turns })
        } else {
            Err(CubeError::BadToken(format!("{}{}", face.letter(), turns)))
        }
    }

    #[inline]
    pub const fn face(self) -> Face {
        self.face
    }

    #[inline]
    pub const fn turns(self) -> u8 {
        self.turns
    }

    /// Index into [`Move::ALL`].
    #[inline]
    pub const fn index(self) -> usize {
        self.face as usize * 3 + self.turns as usize - 1
    }

    #[inline]
    pub const fn from_index(i: usize) -> Move {
        Move::ALL[i]
    }

    pub const fn inverse(self) -> Move {
        Move {
            face: self.face,
            turns: 4 - self.turns,
        }
    }

    /// True for the generators of the subgroup `<U, D, R2, L2, F2, B2>`.
    pub const fn preserves_g1(self) -> bool {
        matches!(self.face, Face::U | Face::D) || self.turns == 2
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.face.letter(), self.turns)
    }
}

impl FromStr for Move {
    type Err = CubeError;

    fn from_str(tok: &str) -> Result<Move, CubeError> {
        let bad = || CubeError::BadToken(tok.to_string());
        let mut chars = tok.chars();
        let (Some(f), Some(d), None) = (chars.next(), chars.next(), chars.next()) else {
            return Err(bad());
        };
        let face = Face::from_letter(f).ok_or_else(bad)?;
        let turns = d.to_digit(10).ok_or_else(bad)?;
        if !(1..=3).contains(&turns) {
            return Err(bad());
        }
        Ok(Move {
            face,
            turns: turns as u8,
        })
    }
}

impl TryFrom<String> for Move {
    type Error = CubeError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Move> for String {
    fn from(m: Move) -> String {
        m.to_string()
    }
}

/// An ordered list of face turns, written as `"B1 U2 F2 L1 D1 R3"`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct MoveSequence(Vec<Move>);

impl MoveSequence {
    pub fn new() -> Self {
        MoveSequence(Vec::new())
    }

    pub fn from_moves(moves: Vec<Move>) -> Self {
        MoveSequence(moves)
    }

    pub fn moves(&self) -> &[Move] {
        &self.0
    }

    pub fn into_moves(self) -> Vec<Move> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, m: Move) {
        self.0.push(m);
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Move> {
        self.0.iter()
    }

    /// Reversed order with every turn count `t` mapped to `4 - t`.
    pub fn inverse(&self) -> MoveSequence {
        MoveSequence(self.0.iter().rev().map(|m| m.inverse()).collect())
    }

    pub fn concat(&self, other: &MoveSequence) -> MoveSequence {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        MoveSequence(v)
    }
}

/// Parses whitespace-separated `<FACE><TURNS>` tokens.
pub fn parse_moves(text: &str) -> Result<MoveSequence, CubeError> {
    text.split_whitespace()
        .map(str::parse)
        .collect::<Result<Vec<_>, _>>()
        .map(MoveSequence)
}

pub fn invert_sequence(s: &MoveSequence) -> MoveSequence {
    s.inverse()
}

impl FromStr for MoveSequence {
    type Err = CubeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_moves(s)
    }
}

impl fmt::Display for MoveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl TryFrom<String> for MoveSequence {
    type Error = CubeError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        parse_moves(&s)
    }
}

impl From<MoveSequence> for String {
    fn from(s: MoveSequence) -> String {
        s.to_string()
    }
}

impl FromIterator<Move> for MoveSequence {
    fn from_iter<I: IntoIterator<Item = Move>>(iter: I) -> Self {
        MoveSequence(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a MoveSequence {
    type Item = &'a Move;
    type IntoIter = std::slice::Iter<'a, Move>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_knowledge_base_format() {
        let s = parse_moves("B1 U2 F2 L1 D1 R3").unwrap();
        let faces: Vec<Face> = s.iter().map(|m| m.face()).collect();
        let turns: Vec<u8> = s.iter().map(|m| m.turns()).collect();
        assert_eq!(faces, [Face::B, Face::U, Face::F, Face::L, Face::D, Face::R]);
        assert_eq!(turns, [1, 2, 2, 1, 1, 3]);
    }

    #[test]
    fn empty_text_is_empty_sequence() {
        assert!(parse_moves("").unwrap().is_empty());
        assert!(parse_moves("   \n\t").unwrap().is_empty());
    }

    #[test]
    fn bad_tokens_rejected() {
        for t in ["R0", "R4", "X1", "R", "R11", "r1", "1R", "R1U2"] {
            assert!(
                matches!(parse_moves(t), Err(CubeError::BadToken(_))),
                "{t} should be rejected"
            );
        }
    }

    #[test]
    fn whitespace_canonicalised() {
        let s = parse_moves("  R1\tU2 \n F3 ").unwrap();
        assert_eq!(s.to_string(), "R1 U2 F3");
    }

    #[test]
    fn inversion_examples() {
        let s = parse_moves("R1 U2").unwrap();
        assert_eq!(invert_sequence(&s).to_string(), "U2 R3");
        assert!(invert_sequence(&MoveSequence::new()).is_empty());
        assert_eq!(invert_sequence(&invert_sequence(&s)), s);
    }

    #[test]
    fn move_index_round_trip() {
        for (i, m) in Move::ALL.iter().enumerate() {
            assert_eq!(m.index(), i);
            assert_eq!(Move::from_index(i), *m);
        }
        assert!(Move::new(Face::R, 0).is_err());
    }

    fn arb_sequence() -> impl Strategy<Value = MoveSequence> {
        prop::collection::vec(0usize..18, 0..40).prop_map(|v| v.into_iter().map(Move::from_index).collect())
    }

    proptest! {
        #[test]
        fn text_round_trip(s in arb_sequence()) {
            prop_assert_eq!(parse_moves(&s.to_string()).unwrap(), s);
        }

        #[test]
        fn double_inverse_is_identity(s in arb_sequence()) {
            prop_assert_eq!(s.inverse().inverse(), s);
        }
    }
}

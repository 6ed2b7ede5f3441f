//! Move sequence to robot-primitive scripts.
//!
//! Every move becomes the triple "move gripper to layer", "rotate at layer",
//! "move to initial pose". A three-quarter turn is emitted as one
//! counter-clockwise quarter turn, so no command rotates more than 180°.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cube::{Face, Move, MoveSequence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanError {
    #[error("malformed plan at command {index}: {reason}")]
    MalformedPlan { index: usize, reason: String },
}

/// One letter/number pair of the restoration sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subtask {
    pub face: Face,
    pub turns: u8,
}

impl From<Move> for Subtask {
    fn from(m: Move) -> Self {
        Subtask {
            face: m.face(),
            turns: m.turns(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Clockwise,
    CounterClockwise,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Clockwise => "clockwise",
            Direction::CounterClockwise => "counter-clockwise",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PrimitiveCommand {
    MoveToLayer {
        layer: Face,
    },
    RotateAtLayer {
        layer: Face,
        direction: Direction,
        quarter_turns: u8,
    },
    MoveToInitialPose,
}

impl fmt::Display for PrimitiveCommand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PrimitiveCommand::MoveToLayer { layer } => {
                write!(f, "move gripper to {} layer", layer.layer_name())
            }
            PrimitiveCommand::RotateAtLayer {
                layer,
                direction,
                quarter_turns,
            } => write!(
                f,
                "rotate gripper at {} layer {} by {}*90 degrees",
                layer.layer_name(),
                direction.as_str(),
                quarter_turns
            ),
            PrimitiveCommand::MoveToInitialPose => f.write_str("move to initial pose"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Plan {
    pub commands: Vec<PrimitiveCommand>,
    /// Index of the first command of each subtask.
    pub subtask_boundaries: Vec<usize>,
}

impl Plan {
    pub fn len(&self) -> usize {
        self.commands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.commands.is_empty()
    }

    /// One command per line, trailing newline included when non-empty.
    pub fn natural_language(&self) -> String {
        self.commands.iter().map(|c| format!("{c}\n")).collect()
    }
}

pub fn decompose(s: &MoveSequence) -> Vec<Subtask> {
    s.iter().map(|&m| Subtask::from(m)).collect()
}

pub fn expand_subtask(t: Subtask) -> [PrimitiveCommand; 3] {
    let (direction, quarter_turns) = match t.turns {
        3 => (Direction::CounterClockwise, 1),
        q => (Direction::Clockwise, q),
    };
    [
        PrimitiveCommand::MoveToLayer { layer: t.face },
        PrimitiveCommand::RotateAtLayer {
            layer: t.face,
            direction,
            quarter_turns,
        },
        PrimitiveCommand::MoveToInitialPose,
    ]
}

pub fn compile_plan(s: &MoveSequence) -> Plan {
    let mut plan = Plan::default();
    for t in decompose(s) {
        plan.subtask_boundaries.push(plan.commands.len());
        plan.commands.extend(expand_subtask(t));
    }
    plan
}

/// Recovers the move sequence a plan executes.
pub fn plan_semantics(p: &Plan) -> Result<MoveSequence, PlanError> {
    let bad = |index: usize, reason: &str| PlanError::MalformedPlan {
        index,
        reason: reason.into(),
    };
    if !p.commands.len().is_multiple_of(3) {
        let index = p.commands.len() - p.commands.len() % 3;
        return Err(bad(index, "incomplete subtask triple"));
    }
    let expected: Vec<usize> = (0..p.commands.len() / 3).map(|i| 3 * i).collect();
    if p.subtask_boundaries != expected {
        return Err(bad(0, "subtask boundaries do not partition commands into triples"));
    }
    let mut out = MoveSequence::new();
    for (i, triple) in p.commands.chunks_exact(3).enumerate() {
        let base = 3 * i;
        let face = match triple[0] {
            PrimitiveCommand::MoveToLayer { layer } => layer,
            _ => return Err(bad(base, "expected move to layer")),
        };
        let turns = match triple[1] {
            PrimitiveCommand::RotateAtLayer { layer, .. } if layer != face => {
                return Err(bad(base + 1, "rotation layer differs from approached layer"))
            }
            PrimitiveCommand::RotateAtLayer {
                direction: Direction::Clockwise,
                quarter_turns: q @ (1 | 2),
                ..
            } => q,
            PrimitiveCommand::RotateAtLayer {
                direction: Direction::CounterClockwise,
                quarter_turns: 1,
                ..
            } => 3,
            PrimitiveCommand::RotateAtLayer { .. } => return Err(bad(base + 1, "rotation outside the emitted range")),
            _ => return Err(bad(base + 1, "expected rotation")),
        };
        if triple[2] != PrimitiveCommand::MoveToInitialPose {
            return Err(bad(base + 2, "expected move to initial pose"));
        }
        out.push(Move::new(face, turns).expect("turns checked above"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::parse_moves;

    #[test]
    fn r3_matches_worked_example() {
        let p = compile_plan(&parse_moves("R3").unwrap());
        assert_eq!(
            p.natural_language(),
            "move gripper to right layer\n\
             rotate gripper at right layer counter-clockwise by 1*90 degrees\n\
             move to initial pose\n"
        );
        assert_eq!(p.subtask_boundaries, vec![0]);
    }

    #[test]
    fn expansion_rules() {
        let [_, rot, _] = expand_subtask(Subtask {
            face: Face::U,
            turns: 2,
        });
        assert_eq!(
            rot,
            PrimitiveCommand::RotateAtLayer {
                layer: Face::U,
                direction: Direction::Clockwise,
                quarter_turns: 2
            }
        );
        let [mv, rot, home] = expand_subtask(Subtask {
            face: Face::F,
            turns: 1,
        });
        assert_eq!(mv, PrimitiveCommand::MoveToLayer { layer: Face::F });
        assert_eq!(
            rot,
            PrimitiveCommand::RotateAtLayer {
                layer: Face::F,
                direction: Direction::Clockwise,
                quarter_turns: 1
            }
        );
        assert_eq!(home, PrimitiveCommand::MoveToInitialPose);
    }

    #[test]
    fn decompose_keeps_order() {
        let d = decompose(&parse_moves("B1 U2 F2 L1 D1 R3").unwrap());
        let faces: Vec<Face> = d.iter().map(|t| t.face).collect();
        assert_eq!(faces, [Face::B, Face::U, Face::F, Face::L, Face::D, Face::R]);
        assert_eq!(
            d[5],
            Subtask {
                face: Face::R,
                turns: 3
            }
        );
    }

    #[test]
    fn empty_plan() {
        let p = compile_plan(&MoveSequence::new());
        assert!(p.is_empty());
        assert_eq!(p.natural_language(), "");
        assert!(plan_semantics(&p).unwrap().is_empty());
    }

    #[test]
    fn json_layout() {
        let p = compile_plan(&parse_moves("R3").unwrap());
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(
            v["commands"][0],
            serde_json::json!({"kind": "move_to_layer", "layer": "R"})
        );
        assert_eq!(
            v["commands"][1],
            serde_json::json!({"kind": "rotate_at_layer", "layer": "R", "direction": "counter-clockwise", "quarter_turns": 1})
        );
        assert_eq!(v["commands"][2], serde_json::json!({"kind": "move_to_initial_pose"}));
        let back: Plan = serde_json::from_value(v).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn malformed_plans_are_rejected() {
        let mut p = compile_plan(&parse_moves("R1 U2").unwrap());
        p.commands.push(PrimitiveCommand::MoveToLayer { layer: Face::F });
        assert!(matches!(
            plan_semantics(&p),
            Err(PlanError::MalformedPlan { index: 6, .. })
        ));

        let mut p = compile_plan(&parse_moves("R1").unwrap());
        p.commands[1] = PrimitiveCommand::RotateAtLayer {
            layer: Face::R,
            direction: Direction::Clockwise,
            quarter_turns: 3,
        };
        assert!(plan_semantics(&p).is_err());

        let mut p = compile_plan(&parse_moves("R1").unwrap());
        p.commands.swap(0, 2);
        assert!(plan_semantics(&p).is_err());
    }
}

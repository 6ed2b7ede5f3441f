use proptest::prelude::*;
use rubikai_core::cube::{random_scramble, CubieState, Move, MoveSequence};
use rubikai_core::plan::{compile_plan, plan_semantics, PrimitiveCommand};
use rubikai_core::solver::{solve_two_phase, SolveBudget};

fn any_sequence() -> impl Strategy<Value = MoveSequence> {
    prop::collection::vec(0usize..18, 0..60)
        .prop_map(|v| MoveSequence::from_moves(v.into_iter().map(Move::from_index).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn semantics_inverts_compile(s in any_sequence()) {
        let p = compile_plan(&s);
        prop_assert_eq!(p.len(), 3 * s.len());
        prop_assert_eq!(plan_semantics(&p).unwrap(), s);
    }

    #[test]
    fn rotations_never_exceed_half_turn(s in any_sequence()) {
        for c in compile_plan(&s).commands {
            if let PrimitiveCommand::RotateAtLayer { quarter_turns, .. } = c {
                prop_assert!((1..=2).contains(&quarter_turns));
            }
        }
    }
}

#[test]
fn compiled_solution_restores_the_cube() {
    let s = CubieState::from_moves(&random_scramble(40, 11));
    let r = solve_two_phase(&s, &SolveBudget::two_phase()).unwrap();
    let plan = compile_plan(&r.solution);
    assert_eq!(plan.subtask_boundaries.len(), r.length);
    let moves = plan_semantics(&plan).unwrap();
    assert!(s.apply_sequence(&moves).is_solved());
}

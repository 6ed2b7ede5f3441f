use rubikai_core::cube::{parse_moves, random_scramble, CubieState, Move, MoveSequence};
use rubikai_core::solver::{
    solve_kb, solve_layer_by_layer, solve_optimal_shallow, solve_two_phase, verify_solution, SolveBudget, SolverError,
};

fn scrambled(n: usize, seed: u64) -> CubieState {
    CubieState::from_moves(&random_scramble(n, seed))
}

#[test]
fn solved_state_gives_empty_solution_everywhere() {
    let s = CubieState::SOLVED;
    let tp = solve_two_phase(&s, &SolveBudget::two_phase()).unwrap();
    assert!(tp.solution.is_empty());
    assert_eq!(tp.nodes_expanded, 0);
    assert!(solve_kb(&s, &SolveBudget::knowledge_base())
        .unwrap()
        .solution
        .is_empty());
    assert!(solve_layer_by_layer(&s).unwrap().solution.is_empty());
    assert_eq!(solve_optimal_shallow(&s, 3).unwrap().unwrap().length, 0);
}

#[test]
fn single_quarter_turn_is_undone_in_one_move() {
    let s = CubieState::from_moves(&parse_moves("R1").unwrap());
    let r = solve_kb(&s, &SolveBudget::exhaustive(5)).unwrap();
    assert_eq!(r.solution.to_string(), "R3");
    let r = solve_two_phase(&s, &SolveBudget::exhaustive(5)).unwrap();
    assert_eq!(r.solution.to_string(), "R3");
}

#[test]
fn two_distinct_faces_need_two_moves() {
    let s = CubieState::from_moves(&parse_moves("R1 U1").unwrap());
    assert_eq!(solve_optimal_shallow(&s, 4).unwrap().unwrap().length, 2);
}

#[test]
fn shallow_oracle_never_exceeds_scramble_length() {
    for seed in 0..200 {
        let n = (seed % 6) as usize;
        let s = scrambled(n, seed);
        let r = solve_optimal_shallow(&s, 5)
            .unwrap()
            .expect("inverse scramble is a witness");
        assert!(r.length <= n);
        assert!(verify_solution(&s, &r.solution));
    }
}

#[test]
fn shallow_oracle_reports_not_found_beyond_depth() {
    let s = scrambled(10, 3);
    assert!(solve_optimal_shallow(&s, 2).unwrap().is_none());
    assert!(matches!(
        solve_optimal_shallow(&s, 8),
        Err(SolverError::DepthTooLarge(8))
    ));
}

#[test]
fn exhaustive_kb_is_optimal_on_shallow_scrambles() {
    for seed in 0..40 {
        let s = scrambled(1 + (seed % 5) as usize, 1000 + seed);
        let oracle = solve_optimal_shallow(&s, 5).unwrap().unwrap();
        let kb = solve_kb(&s, &SolveBudget::exhaustive(5)).unwrap();
        assert_eq!(kb.length, oracle.length, "seed {seed}");
    }
}

#[test]
fn every_backend_is_sound_on_mixed_depths() {
    for (i, depth) in [5usize, 10, 20, 40].into_iter().enumerate() {
        for seed in 0..8u64 {
            let s = scrambled(depth, seed * 7 + i as u64);
            let tp = solve_two_phase(&s, &SolveBudget::two_phase()).unwrap();
            assert!(verify_solution(&s, &tp.solution));
            assert!(tp.length <= 23);
            assert_eq!(tp.phase1_length + tp.phase2_length, tp.length);
            let lbl = solve_layer_by_layer(&s).unwrap();
            assert!(verify_solution(&s, &lbl.solution));
        }
    }
}

#[test]
fn kb_dominates_two_phase() {
    for seed in 0..3 {
        let s = scrambled(40, 500 + seed);
        let tp = solve_two_phase(&s, &SolveBudget::two_phase()).unwrap();
        let kb = solve_kb(&s, &SolveBudget::knowledge_base()).unwrap();
        assert!(verify_solution(&s, &kb.solution));
        assert!(kb.length <= tp.length);
        assert!(kb.length <= 23);
    }
}

#[test]
fn larger_candidate_budget_never_lengthens_the_solution() {
    let s = scrambled(40, 77);
    let mut last = usize::MAX;
    for cap in [1u64, 10, 100, 1_000] {
        let budget = SolveBudget {
            max_phase1_candidates: cap,
            target_length: 1,
            time_cap_ms: 600_000,
            ..SolveBudget::two_phase()
        };
        let r = solve_two_phase(&s, &budget).unwrap();
        assert!(r.length <= last, "cap {cap}: {} > {last}", r.length);
        last = r.length;
    }
}

#[test]
fn search_is_deterministic() {
    let s = scrambled(40, 9);
    let b = SolveBudget {
        time_cap_ms: 600_000,
        ..SolveBudget::two_phase()
    };
    let a = solve_two_phase(&s, &b).unwrap();
    let c = solve_two_phase(&s, &b).unwrap();
    assert_eq!(a.solution, c.solution);
    assert_eq!(a.nodes_expanded, c.nodes_expanded);
}

#[test]
fn unsolvable_states_are_rejected() {
    let mut s = CubieState::SOLVED;
    s.co[0] = 1;
    assert!(matches!(
        solve_two_phase(&s, &SolveBudget::two_phase()),
        Err(SolverError::Unsolvable(_))
    ));
    assert!(matches!(solve_layer_by_layer(&s), Err(SolverError::Unsolvable(_))));
}

#[test]
fn invalid_budget_is_rejected() {
    let b = SolveBudget {
        target_length: 0,
        ..SolveBudget::two_phase()
    };
    assert!(matches!(
        solve_two_phase(&scrambled(5, 1), &b),
        Err(SolverError::InvalidBudget(_))
    ));
}

#[test]
fn verify_rejects_mutated_solutions() {
    for seed in 0..20 {
        let s = scrambled(20, seed);
        let r = solve_two_phase(&s, &SolveBudget::two_phase()).unwrap();
        let mut moves = r.solution.clone().into_moves();
        let k = (seed as usize) % moves.len();
        let m = moves[k];
        moves[k] = Move::new(m.face(), (m.turns() % 3) + 1).unwrap();
        let mutated = MoveSequence::from_moves(moves);
        assert!(!verify_solution(&s, &mutated));
    }
    let q = random_scramble(15, 4);
    assert!(verify_solution(&CubieState::from_moves(&q), &q.inverse()));
}

//! Solve seeded depth-40 scrambles with every backend and print the lengths.
//!
//! `cargo run --release -p rubikai-core --example solve_stats -- 30`

use std::time::Instant;

use rubikai_core::cube::{random_scramble, CubieState};
use rubikai_core::solver::{solve_kb, solve_layer_by_layer, solve_two_phase, verify_solution, SolveBudget};

fn main() {
    let n: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(30);
    let t0 = Instant::now();
    rubikai_core::coord::Tables::shared();
    println!("tables built in {:?}", t0.elapsed());
    let mut sums = [0usize; 3];
    for seed in 0..n {
        let s = CubieState::from_moves(&random_scramble(40, seed));
        let tp = solve_two_phase(&s, &SolveBudget::two_phase()).unwrap();
        let kb = solve_kb(&s, &SolveBudget::knowledge_base()).unwrap();
        let lbl = solve_layer_by_layer(&s).unwrap();
        assert!(verify_solution(&s, &tp.solution));
        assert!(verify_solution(&s, &kb.solution));
        assert!(verify_solution(&s, &lbl.solution));
        println!(
            "seed {seed:3}: tp {:2} ({:5} ms)  kb {:2} ({:5} ms, {} nodes)  lbl {:3} ({:5} ms)",
            tp.length, tp.elapsed_ms, kb.length, kb.elapsed_ms, kb.nodes_expanded, lbl.length, lbl.elapsed_ms
        );
        sums[0] += tp.length;
        sums[1] += kb.length;
        sums[2] += lbl.length;
    }
    let avg = |s: usize| s as f64 / n as f64;
    println!(
        "avg: tp {:.2}  kb {:.2}  lbl {:.2}  total {:?}",
        avg(sums[0]),
        avg(sums[1]),
        avg(sums[2]),
        t0.elapsed()
    );
}

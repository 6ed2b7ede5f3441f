use std::path::Path;
use std::process::{Command, Output};

use rubikai_core::cube::{invert_sequence, parse_facelets, parse_moves, CubieState};
use rubikai_core::plan::{plan_semantics, Plan};
use serde_json::Value;

fn rubikai(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rubikai"))
        .args(args)
        .env("RUBIK_KB_CACHE", std::env::temp_dir().join("rubikai-cli-tests"))
        .output()
        .expect("spawn rubikai")
}

fn stdout_json(o: &Output) -> Value {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("json output")
}

fn descriptor(depth: &str, seed: &str) -> String {
    let v = stdout_json(&rubikai(&["--seed", seed, "--json", "scramble", depth]));
    v["descriptor"].as_str().unwrap().to_string()
}

#[test]
fn scramble_descriptor_matches_moves() {
    let v = stdout_json(&rubikai(&["--seed", "3", "--json", "scramble", "25"]));
    let s = parse_moves(v["scramble"].as_str().unwrap()).unwrap();
    assert_eq!(s.len(), 25);
    let f = parse_facelets(v["descriptor"].as_str().unwrap()).unwrap();
    assert_eq!(f.to_cubies().unwrap(), CubieState::from_moves(&s));
}

#[test]
fn solve_output_verifies_for_every_backend() {
    let d = descriptor("6", "11");
    let state = parse_facelets(&d).unwrap().to_cubies().unwrap();
    for backend in ["two-phase", "lbl", "shallow"] {
        let v = stdout_json(&rubikai(&["--json", "solve", &d, "--backend", backend]));
        let sol = parse_moves(v["solution"].as_str().unwrap()).unwrap();
        assert!(state.apply_sequence(&sol).is_solved(), "{backend}");
        assert!(v.get("elapsed_ms").is_none());
    }
    let v = stdout_json(&rubikai(&["--json", "--timing", "solve", &d, "--backend", "two-phase"]));
    assert!(v.get("elapsed_ms").is_some());
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| rubikai(args).status.code().unwrap();
    assert_eq!(code(&["solve", "UUU"]), 2);
    assert_eq!(code(&["plan", "R1 X2"]), 2);
    assert_eq!(code(&["bogus-command"]), 2);
    // A single twisted corner parses but is not a physical cube.
    let solved = descriptor("0", "0");
    let mut twisted: Vec<char> = solved.chars().collect();
    // U9, R1, F3 form the URF corner; rotate its stickers.
    let (a, b, c) = (twisted[8], twisted[9], twisted[20]);
    twisted[8] = b;
    twisted[9] = c;
    twisted[20] = a;
    let twisted: String = twisted.into_iter().collect();
    assert_eq!(code(&["solve", &twisted]), 3);
    let d = descriptor("20", "7");
    assert_eq!(
        code(&[
            "solve",
            &d,
            "--backend",
            "two-phase",
            "--max-total-length",
            "6",
            "--target-length",
            "6"
        ]),
        4
    );
    assert_eq!(code(&["solve", &d, "--target-length", "0"]), 3);
    assert_eq!(code(&["pipeline", "--config", "/nonexistent/campaign.toml"]), 6);
}

#[test]
fn plan_writes_json_sidecar_and_trajectories() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let v = stdout_json(&rubikai(&["--json", "plan", "R1 U3 F2", "--scene", "--out-dir", out]));
    assert_eq!(v["trajectories"].as_array().unwrap().len(), 3);
    for t in v["trajectories"].as_array().unwrap() {
        assert_eq!(t["violations"], 0);
    }
    let plan: Plan = serde_json::from_str(&std::fs::read_to_string(dir.path().join("plan.json")).unwrap()).unwrap();
    assert_eq!(plan_semantics(&plan).unwrap(), parse_moves("R1 U3 F2").unwrap());
    let text = std::fs::read_to_string(dir.path().join("plan.txt")).unwrap();
    assert_eq!(text.lines().count(), 9);
    assert_eq!(
        text.lines().nth(1).unwrap(),
        "rotate gripper at right layer clockwise by 1*90 degrees"
    );
    for i in 0..3 {
        assert!(Path::new(&dir.path().join(format!("trajectory_{i:03}.json"))).exists());
    }
}

#[test]
fn plan_from_descriptor_restores_the_cube() {
    let s = parse_moves("R1 U1 F3").unwrap();
    let d = CubieState::from_moves(&s).to_facelets().to_string();
    let v = stdout_json(&rubikai(&["--json", "plan", &d]));
    let plan: Plan = serde_json::from_value(v["plan"].clone()).unwrap();
    let sol = plan_semantics(&plan).unwrap();
    assert_eq!(sol, invert_sequence(&s));
}

#[test]
fn trace_csv_ends_solved() {
    let d = descriptor("12", "5");
    let o = rubikai(&["trace", &d, "--backend", "two-phase"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let last = text.lines().last().unwrap();
    assert!(last.ends_with("1.000000,1.000000,1.000000"), "{last}");
}

#[test]
fn small_pipeline_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    std::fs::write(&cfg, "depths = [10]\ntrials_per_depth = 200\npool_size = 3\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let a = rubikai(&["--seed", "4", "--json", "pipeline", "--config", cfg]);
    let b = rubikai(&["--seed", "4", "--json", "pipeline", "--config", cfg]);
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    assert_eq!(v["stats"]["n"], 200);
    assert_eq!(v["config"]["seed"], 4);
}

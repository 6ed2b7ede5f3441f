use std::fs;
use std::io::Write;
use std::path::Path;

use rubikai_core::coord::{default_cache_dir, Tables};
use rubikai_core::cube::{parse_facelets, parse_moves, random_scramble, CubieState, MoveSequence};
use rubikai_core::metrics::{reduction, step_stats, trace_restoration, write_trace_csv, RunTrace, StepStats};
use rubikai_core::plan::{compile_plan, decompose, Plan};
use rubikai_core::solver::{
    solve_kb_with, solve_layer_by_layer, solve_optimal_shallow, solve_two_phase_with, verify_solution, Backend,
    SolveBudget, SolveResult,
};
use rubikai_motion::io::trajectory_to_json;
use rubikai_motion::{check_constraints, evaluate_costs, KinematicLimitsf, PlannerConfigf};
use rubikai_sim::{initial_pose, plan_subtask, run_campaign, trial_seed, write_stats_csv, CampaignConfig, Scene};
use serde::Serialize;
use serde_json::{json, Value};

use crate::{BackendArg, BudgetArgs, Cli, CliError, Command};

/// Lengths published for DeepCubeA on depth-40 scrambles, shown for reference.
const DEEPCUBEA: (usize, usize, f64) = (21, 33, 28.0);

type Result<T> = std::result::Result<T, CliError>;

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let mut ctx = Ctx { cli, tables: None };
    match &cli.command {
        Command::Scramble { depth } => ctx.scramble(*depth, out),
        Command::Solve {
            descriptor,
            backend,
            budget,
        } => ctx.solve(descriptor, *backend, budget, out),
        Command::Compare { n, depth } => ctx.compare(*n, *depth, out),
        Command::Trace {
            descriptor,
            backend,
            out: path,
            budget,
        } => ctx.trace(descriptor, *backend, budget, path.as_deref(), out),
        Command::Plan {
            input,
            scene,
            out_dir,
            budget,
        } => ctx.plan(input, *scene, out_dir.as_deref(), budget, out),
        Command::Pipeline {
            config,
            trials_per_depth,
            csv,
        } => ctx.pipeline(config.as_deref(), *trials_per_depth, csv.as_deref(), out),
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    tables: Option<Tables>,
}

fn descriptor_state(text: &str) -> Result<CubieState> {
    Ok(parse_facelets(text.trim())?.to_cubies()?)
}

fn write_json(out: &mut dyn Write, v: &impl Serialize) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

fn budget_for(backend: BackendArg, a: &BudgetArgs) -> SolveBudget {
    let mut b = match backend {
        BackendArg::Kb => SolveBudget::knowledge_base(),
        _ => SolveBudget::two_phase(),
    };
    if let Some(v) = a.max_total_length {
        b.max_total_length = v;
    }
    if let Some(v) = a.target_length {
        b.target_length = v;
    }
    if let Some(v) = a.max_phase1_candidates {
        b.max_phase1_candidates = v;
    }
    if let Some(v) = a.time_cap_ms {
        b.time_cap_ms = v;
    }
    if let Some(v) = a.exhaustive_depth {
        b.exhaustive_depth = v;
    }
    b
}

impl Ctx<'_> {
    fn seed(&self) -> u64 {
        self.cli.seed.unwrap_or(0)
    }

    fn tables(&mut self) -> &Tables {
        let dir = self.cli.cache_dir.clone().unwrap_or_else(default_cache_dir);
        self.tables.get_or_insert_with(|| {
            let (t, err) = Tables::load_or_build(&dir);
            if let Some(e) = err {
                eprintln!("warning: table cache not written: {e}");
            }
            t
        })
    }

    fn run_solver(&mut self, state: &CubieState, backend: BackendArg, a: &BudgetArgs) -> Result<SolveResult> {
        let budget = budget_for(backend, a);
        let r = match backend {
            BackendArg::Kb => solve_kb_with(state, &budget, self.tables())?,
            BackendArg::TwoPhase => solve_two_phase_with(state, &budget, self.tables())?,
            BackendArg::Lbl => solve_layer_by_layer(state)?,
            BackendArg::Shallow => solve_optimal_shallow(state, a.max_depth)?
                .ok_or_else(|| CliError::Timeout(format!("no solution within {} moves", a.max_depth)))?,
        };
        if !verify_solution(state, &r.solution) {
            return Err(CliError::Validation(format!("{} returned a non-solution", r.backend)));
        }
        Ok(r)
    }

    /// The result as JSON, without the elapsed time unless `--timing`.
    fn result_json(&self, r: &SolveResult) -> Result<Value> {
        let mut v = serde_json::to_value(r)?;
        if !self.cli.timing {
            if let Some(m) = v.as_object_mut() {
                m.remove("elapsed_ms");
            }
        }
        Ok(v)
    }

    fn scramble(&mut self, depth: usize, out: &mut dyn Write) -> Result<()> {
        let seed = self.seed();
        let s = random_scramble(depth, seed);
        let descriptor = CubieState::from_moves(&s).to_facelets().to_string();
        if self.cli.json {
            write_json(
                out,
                &json!({ "depth": depth, "seed": seed, "scramble": s, "descriptor": descriptor }),
            )
        } else {
            writeln!(out, "scramble    {s}")?;
            writeln!(out, "descriptor  {descriptor}")?;
            Ok(())
        }
    }

    fn solve(&mut self, descriptor: &str, backend: BackendArg, a: &BudgetArgs, out: &mut dyn Write) -> Result<()> {
        let state = descriptor_state(descriptor)?;
        let r = self.run_solver(&state, backend, a)?;
        if self.cli.json {
            return write_json(out, &self.result_json(&r)?);
        }
        writeln!(out, "backend   {}", r.backend)?;
        writeln!(out, "solution  {}", r.solution)?;
        writeln!(out, "length    {}", r.length)?;
        if matches!(r.backend, Backend::TwoPhase | Backend::KnowledgeBase) {
            writeln!(out, "phases    {} + {}", r.phase1_length, r.phase2_length)?;
        }
        writeln!(out, "nodes     {}", r.nodes_expanded)?;
        if self.cli.timing {
            writeln!(out, "elapsed   {} ms", r.elapsed_ms)?;
        }
        Ok(())
    }

    fn compare(&mut self, n: usize, depth: usize, out: &mut dyn Write) -> Result<()> {
        if n == 0 {
            return Err(CliError::Validation("compare needs at least one scramble".into()));
        }
        let seed = self.seed();
        let order = [BackendArg::Lbl, BackendArg::TwoPhase, BackendArg::Kb];
        let defaults = BudgetArgs::default();
        let mut lengths: [Vec<usize>; 3] = Default::default();
        let mut per_scramble = Vec::with_capacity(n);
        for i in 0..n {
            let scramble_seed = trial_seed(seed, i as u64);
            let scramble = random_scramble(depth, scramble_seed);
            let state = CubieState::from_moves(&scramble);
            let mut row = serde_json::Map::new();
            let mut kb_solution = MoveSequence::new();
            for (k, &b) in order.iter().enumerate() {
                let r = self.run_solver(&state, b, &defaults)?;
                lengths[k].push(r.length);
                row.insert(r.backend.name().into(), json!(r.length));
                if b == BackendArg::Kb {
                    kb_solution = r.solution;
                }
            }
            per_scramble.push(json!({
                "index": i,
                "seed": scramble_seed,
                "scramble": scramble,
                "lengths": row,
                "kb_solution": kb_solution,
            }));
        }
        let stats: Vec<StepStats> = lengths
            .iter()
            .map(|l| step_stats(l))
            .collect::<std::result::Result<_, _>>()?;
        let kb_avg = stats[2].avg;
        let mut rows = Vec::new();
        for (k, &b) in order.iter().enumerate() {
            let name = match b {
                BackendArg::Lbl => Backend::LayerByLayer,
                BackendArg::TwoPhase => Backend::TwoPhase,
                _ => Backend::KnowledgeBase,
            };
            let red = (b != BackendArg::Kb).then(|| reduction(stats[k].avg, kb_avg));
            rows.push(json!({
                "method": name.name(),
                "source": "measured",
                "min": stats[k].min,
                "max": stats[k].max,
                "avg": stats[k].avg,
                "reduction_pct": red,
            }));
        }
        rows.push(json!({
            "method": "deepcubea",
            "source": "published",
            "min": DEEPCUBEA.0,
            "max": DEEPCUBEA.1,
            "avg": DEEPCUBEA.2,
            "reduction_pct": reduction(DEEPCUBEA.2, kb_avg),
        }));
        if self.cli.json {
            return write_json(
                out,
                &json!({ "seed": seed, "depth": depth, "n": n, "rows": rows, "scrambles": per_scramble }),
            );
        }
        writeln!(out, "{n} scrambles of depth {depth}, seed {seed}")?;
        writeln!(
            out,
            "{:<16} {:>4} {:>4} {:>7} {:>10}  source",
            "method", "min", "max", "avg", "reduction"
        )?;
        for r in &rows {
            let red = match r["reduction_pct"].as_f64() {
                Some(x) => format!("{x:.1}%"),
                None => "-".into(),
            };
            writeln!(
                out,
                "{:<16} {:>4} {:>4} {:>7.2} {:>10}  {}",
                r["method"].as_str().unwrap_or_default(),
                r["min"],
                r["max"],
                r["avg"].as_f64().unwrap_or_default(),
                red,
                r["source"].as_str().unwrap_or_default(),
            )?;
        }
        Ok(())
    }

    fn trace(
        &mut self,
        descriptor: &str,
        backend: BackendArg,
        a: &BudgetArgs,
        path: Option<&Path>,
        out: &mut dyn Write,
    ) -> Result<()> {
        let state = descriptor_state(descriptor)?;
        let r = self.run_solver(&state, backend, a)?;
        let records = trace_restoration(&state, &r.solution)?;
        let traces = [RunTrace {
            run_id: self.seed(),
            records,
        }];
        if let Some(p) = path {
            let f = fs::File::create(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            write_trace_csv(f, &traces)?;
        }
        if self.cli.json {
            write_json(out, &json!({ "solution": r.solution, "records": traces[0].records }))
        } else if path.is_none() {
            write_trace_csv(out, &traces)?;
            Ok(())
        } else {
            writeln!(
                out,
                "{} records written to {}",
                traces[0].records.len(),
                path.map(|p| p.display()).unwrap()
            )?;
            Ok(())
        }
    }

    /// A 54-letter facelet string is solved first; anything else is read as
    /// a move sequence.
    fn plan_input(&mut self, input: &str, a: &BudgetArgs) -> Result<(CubieState, MoveSequence)> {
        let t = input.trim();
        let looks_like_descriptor = t.chars().count() == 54 && t.chars().all(|c| "URFDLB".contains(c));
        if looks_like_descriptor {
            let state = descriptor_state(t)?;
            let r = self.run_solver(&state, BackendArg::Kb, a)?;
            Ok((state, r.solution))
        } else {
            let s = parse_moves(t)?;
            Ok((CubieState::from_moves(&s.inverse()), s))
        }
    }

    fn plan(
        &mut self,
        input: &str,
        with_scene: bool,
        out_dir: Option<&Path>,
        a: &BudgetArgs,
        out: &mut dyn Write,
    ) -> Result<()> {
        let (state, solution) = self.plan_input(input, a)?;
        let plan: Plan = compile_plan(&solution);
        let mut trajectories = Vec::new();
        let mut trajectory_files = Vec::new();
        if with_scene {
            let scene = Scene::centered(state);
            let limits = KinematicLimitsf::default();
            let config = PlannerConfigf::default();
            for (i, t) in decompose(&solution).into_iter().enumerate() {
                let start = initial_pose(&scene, t.face);
                let (traj, costs) = plan_subtask(&scene, t, start, &limits, &config)
                    .map_err(|e| CliError::Planning(format!("subtask {i} ({}): {e}", t.face.letter())))?;
                let (fe, fc) = evaluate_costs(&traj, &costs.total)?;
                let violations = check_constraints(&traj, &limits)?.len();
                trajectories.push(json!({
                    "subtask": i,
                    "face": t.face.letter().to_string(),
                    "waypoints": traj.len(),
                    "f_e": fe,
                    "f_c": fc,
                    "violations": violations,
                }));
                trajectory_files.push(trajectory_to_json(&traj)?);
            }
        }
        if let Some(dir) = out_dir {
            let io = |p: &Path, e: std::io::Error| CliError::Io(format!("{}: {e}", p.display()));
            fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
            let p = dir.join("plan.json");
            fs::write(&p, serde_json::to_string_pretty(&plan)? + "\n").map_err(|e| io(&p, e))?;
            let p = dir.join("plan.txt");
            fs::write(&p, plan.natural_language()).map_err(|e| io(&p, e))?;
            for (i, body) in trajectory_files.iter().enumerate() {
                let p = dir.join(format!("trajectory_{i:03}.json"));
                fs::write(&p, body.clone() + "\n").map_err(|e| io(&p, e))?;
            }
        }
        if self.cli.json {
            let mut v = json!({
                "solution": solution,
                "plan": plan,
                "natural_language": plan.natural_language(),
            });
            if with_scene {
                v["trajectories"] = Value::Array(trajectories);
            }
            return write_json(out, &v);
        }
        writeln!(out, "solution  {solution}")?;
        write!(out, "{}", plan.natural_language())?;
        for t in &trajectories {
            writeln!(
                out,
                "subtask {} {}: {} waypoints, path {:.4} m, {} violations",
                t["subtask"],
                t["face"].as_str().unwrap_or_default(),
                t["waypoints"],
                t["f_c"].as_f64().unwrap_or_default(),
                t["violations"]
            )?;
        }
        Ok(())
    }

    fn pipeline(
        &mut self,
        config_path: Option<&Path>,
        trials_per_depth: Option<usize>,
        csv_path: Option<&Path>,
        out: &mut dyn Write,
    ) -> Result<()> {
        let mut config = match config_path {
            Some(p) => {
                let text = fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
                CampaignConfig::from_toml_str(&text)?
            }
            None => CampaignConfig::default(),
        };
        if let Some(s) = self.cli.seed {
            config.seed = s;
        }
        if let Some(t) = trials_per_depth {
            config.trials_per_depth = t;
        }
        let stats = run_campaign(&config)?;
        if let Some(p) = csv_path {
            let f = fs::File::create(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            write_stats_csv(f, &stats)?;
        }
        if self.cli.json {
            return write_json(out, &json!({ "config": config, "stats": stats }));
        }
        writeln!(out, "{} trials, seed {}", stats.n, config.seed)?;
        writeln!(
            out,
            "{:>6} {:>8} {:>7} {:>7} {:>7} {:>8}  modal length",
            "depth", "trials", "kb", "llm", "exe", "overall"
        )?;
        for d in &stats.per_depth {
            let modal = d
                .modal_length
                .map_or("-".to_string(), |l| format!("{l} ({:.1}%)", d.modal_share * 100.0));
            writeln!(
                out,
                "{:>6} {:>8} {:>7.4} {:>7.4} {:>7.4} {:>8.4}  {modal}",
                d.depth, d.trials, d.kb_rate, d.llm_rate, d.exe_rate, d.overall
            )?;
        }
        writeln!(
            out,
            "{:>6} {:>8} {:>7.4} {:>7.4} {:>7.4} {:>8.4}",
            "all", stats.n, stats.kb_rate, stats.llm_rate, stats.exe_rate, stats.overall
        )?;
        if let Some(s) = stats.failure_shares {
            writeln!(
                out,
                "failure shares  KB {:.3}  LLM {:.3}  EXE {:.3}",
                s.kb, s.llm, s.exe
            )?;
        }
        Ok(())
    }
}

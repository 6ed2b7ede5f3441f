use std::collections::{BTreeMap, HashMap};
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rubikai_core::cube::parse_facelets;
use rubikai_core::solver::{solve_kb, verify_solution, SolveBudget};
use serde::{Deserialize, Serialize};

use crate::perception::observe_with;
use crate::seeds::{pool_seed, trial_seed};
use crate::{build_scene, Scene, SimError};

/// Success probabilities of the three sequential stages.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct StageModel {
    pub p_kb: f64,
    pub p_llm: f64,
    pub p_exe: f64,
}

impl Default for StageModel {
    fn default() -> Self {
        StageModel {
            p_kb: 0.90,
            p_llm: 0.9276,
            p_exe: 0.9461,
        }
    }
}

impl StageModel {
    pub fn validate(&self) -> Result<(), SimError> {
        for (name, p) in [("p_kb", self.p_kb), ("p_llm", self.p_llm), ("p_exe", self.p_exe)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(SimError::InvalidStageModel(format!("{name} = {p} not in [0, 1]")));
            }
        }
        Ok(())
    }

    pub fn expected_overall(&self) -> f64 {
        self.p_kb * self.p_llm * self.p_exe
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FailureCategory {
    #[serde(rename = "KB")]
    Kb,
    #[serde(rename = "LLM")]
    Llm,
    #[serde(rename = "EXE")]
    Exe,
}

impl FailureCategory {
    pub fn name(self) -> &'static str {
        match self {
            FailureCategory::Kb => "KB",
            FailureCategory::Llm => "LLM",
            FailureCategory::Exe => "EXE",
        }
    }
}

/// Conditional sub-category probabilities within each failure category.
/// Weights are normalized when drawn.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SubSplits {
    pub kb: BTreeMap<String, f64>,
    pub llm: BTreeMap<String, f64>,
    pub exe: BTreeMap<String, f64>,
}

impl Default for SubSplits {
    fn default() -> Self {
        let uniform = |names: &[&str]| {
            names
                .iter()
                .map(|n| (n.to_string(), 1.0 / names.len() as f64))
                .collect()
        };
        SubSplits {
            kb: uniform(&["color_recognition", "timeout"]),
            llm: uniform(&["annotation", "code_generation"]),
            exe: uniform(&["localization", "motion", "initial_state"]),
        }
    }
}

impl SubSplits {
    fn of(&self, c: FailureCategory) -> &BTreeMap<String, f64> {
        match c {
            FailureCategory::Kb => &self.kb,
            FailureCategory::Llm => &self.llm,
            FailureCategory::Exe => &self.exe,
        }
    }

    fn validate(&self) -> Result<(), SimError> {
        for c in [FailureCategory::Kb, FailureCategory::Llm, FailureCategory::Exe] {
            let m = self.of(c);
            if m.is_empty() || m.values().any(|&w| !(w >= 0.0)) || m.values().sum::<f64>() <= 0.0 {
                return Err(SimError::InvalidConfig(format!(
                    "sub-splits for {} need positive weights",
                    c.name()
                )));
            }
        }
        Ok(())
    }

    fn draw<R: Rng + ?Sized>(&self, c: FailureCategory, rng: &mut R) -> String {
        let m = self.of(c);
        let total: f64 = m.values().sum();
        let mut u = rng.gen::<f64>() * total;
        for (name, &w) in m {
            if u < w {
                return name.clone();
            }
            u -= w;
        }
        m.keys().next_back().cloned().unwrap_or_default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum KbOutcome {
    Solved { length: usize },
    Failed { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum Outcome {
    Success,
    Failure {
        category: FailureCategory,
        subcategory: String,
    },
}

/// One pass through the pipeline. Stages after the first failure are not
/// evaluated and stay `None`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub scramble_depth: usize,
    pub kb_outcome: KbOutcome,
    pub llm_outcome: Option<bool>,
    pub exe_outcome: Option<bool>,
    pub overall: Outcome,
}

impl TrialRecord {
    pub fn failure_category(&self) -> Option<FailureCategory> {
        match self.overall {
            Outcome::Success => None,
            Outcome::Failure { category, .. } => Some(category),
        }
    }
}

/// Budget fields a config may override on top of the campaign default.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BudgetOverrides {
    pub max_total_length: Option<usize>,
    pub target_length: Option<usize>,
    pub max_phase1_candidates: Option<u64>,
    pub time_cap_ms: Option<u64>,
    pub exhaustive_depth: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CampaignConfig {
    pub seed: u64,
    pub depths: Vec<usize>,
    pub trials_per_depth: usize,
    /// Distinct scrambles per depth; trials draw from this pool so every
    /// scramble is solved once.
    pub pool_size: usize,
    pub sticker_noise: f64,
    pub stage_model: StageModel,
    pub budget: BudgetOverrides,
    pub sub_splits: SubSplits,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            seed: 0,
            depths: vec![10, 20, 30, 40],
            trials_per_depth: 25_000,
            pool_size: 20,
            sticker_noise: 0.0,
            stage_model: StageModel::default(),
            budget: BudgetOverrides::default(),
            sub_splits: SubSplits::default(),
        }
    }
}

impl CampaignConfig {
    /// Knowledge-base budget with 10,000 phase-1 candidates, overridden by
    /// the config's `[budget]` table.
    pub fn budget(&self) -> SolveBudget {
        let mut b = SolveBudget {
            max_phase1_candidates: 10_000,
            time_cap_ms: 15_000,
            ..SolveBudget::knowledge_base()
        };
        let o = &self.budget;
        if let Some(v) = o.max_total_length {
            b.max_total_length = v;
        }
        if let Some(v) = o.target_length {
            b.target_length = v;
        }
        if let Some(v) = o.max_phase1_candidates {
            b.max_phase1_candidates = v;
        }
        if let Some(v) = o.time_cap_ms {
            b.time_cap_ms = v;
        }
        if let Some(v) = o.exhaustive_depth {
            b.exhaustive_depth = v;
        }
        b
    }

    pub fn from_toml_str(s: &str) -> Result<Self, SimError> {
        let c: CampaignConfig = toml::from_str(s)?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), SimError> {
        self.stage_model.validate()?;
        self.sub_splits.validate()?;
        if self.depths.is_empty() || self.trials_per_depth == 0 || self.pool_size == 0 {
            return Err(SimError::InvalidConfig(
                "need depths, trials_per_depth >= 1 and pool_size >= 1".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.sticker_noise) {
            return Err(SimError::InvalidConfig(format!(
                "sticker_noise {} not in [0, 1]",
                self.sticker_noise
            )));
        }
        self.budget()
            .validate()
            .map_err(|e| SimError::InvalidConfig(e.to_string()))
    }

    /// Chance that perception corrupts at least one of the 48 movable
    /// stickers, which always makes the knowledge-base stage fail.
    pub fn perception_failure_rate(&self) -> f64 {
        1.0 - (1.0 - self.sticker_noise).powi(48)
    }

    /// Probability of an injected knowledge-base failure on an otherwise
    /// successful solve, chosen so the stage succeeds with `p_kb` overall.
    pub fn kb_top_up(&self) -> f64 {
        let g = self.perception_failure_rate();
        if g >= 1.0 {
            return 0.0;
        }
        ((1.0 - g - self.stage_model.p_kb) / (1.0 - g)).max(0.0)
    }
}

/// Scrambles of each depth, solved once each.
#[derive(Debug, Default)]
pub struct ScramblePool {
    seed: u64,
    size: usize,
    budget: Option<SolveBudget>,
    solved: HashMap<(usize, usize), (Scene, Result<usize, String>)>,
}

impl ScramblePool {
    pub fn new(campaign_seed: u64, size: usize, budget: SolveBudget) -> Self {
        ScramblePool {
            seed: campaign_seed,
            size,
            budget: Some(budget),
            solved: HashMap::new(),
        }
    }

    pub fn solves_performed(&self) -> usize {
        self.solved.len()
    }

    fn entry(&mut self, depth: usize, pick: u64) -> &(Scene, Result<usize, String>) {
        let j = (pick % self.size as u64) as usize;
        let seed = pool_seed(self.seed, depth, j);
        let budget = self.budget.unwrap_or_else(SolveBudget::knowledge_base);
        self.solved.entry((depth, j)).or_insert_with(|| {
            let scene = build_scene(depth, seed);
            let r = kb_solve(&scene, &budget);
            (scene, r)
        })
    }
}

fn kb_solve(scene: &Scene, budget: &SolveBudget) -> Result<usize, String> {
    match solve_kb(&scene.cube_state, budget) {
        Ok(r) if verify_solution(&scene.cube_state, &r.solution) => Ok(r.length),
        Ok(_) => Err("unverified".into()),
        Err(_) => Err("timeout".into()),
    }
}

/// One trial on a fresh scramble drawn from `seed`, solved directly.
pub fn run_trial(depth: usize, config: &CampaignConfig, seed: u64) -> TrialRecord {
    let budget = config.budget();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick: u64 = rng.gen();
    let scene = build_scene(depth, pick);
    let solved = kb_solve(&scene, &budget);
    trial_after_scramble(depth, config, &scene, solved, &mut rng)
}

fn trial_after_scramble(
    depth: usize,
    config: &CampaignConfig,
    scene: &Scene,
    solved: Result<usize, String>,
    rng: &mut ChaCha8Rng,
) -> TrialRecord {
    let fail = |kb_outcome, llm, exe, category, subcategory: String| TrialRecord {
        scramble_depth: depth,
        kb_outcome,
        llm_outcome: llm,
        exe_outcome: exe,
        overall: Outcome::Failure { category, subcategory },
    };
    let descriptor = observe_with(scene, config.sticker_noise, rng);
    let top_up = rng.gen::<f64>();
    let truth = scene.cube_state.to_facelets().to_string();
    let genuine = if descriptor != truth {
        // A misread descriptor either fails to parse or describes another
        // cube; in both cases no verified solution of the real cube results.
        let reason = match parse_facelets(&descriptor).and_then(|f| f.to_cubies()) {
            Err(_) => "color_recognition",
            Ok(_) => "color_recognition_wrong_state",
        };
        Err(reason.to_string())
    } else {
        solved
    };
    let length = match genuine {
        Err(reason) => {
            let sub = if reason == "timeout" {
                reason.clone()
            } else {
                "color_recognition".to_string()
            };
            return fail(KbOutcome::Failed { reason }, None, None, FailureCategory::Kb, sub);
        }
        Ok(len) => len,
    };
    if top_up < config.kb_top_up() {
        let sub = config.sub_splits.draw(FailureCategory::Kb, rng);
        return fail(
            KbOutcome::Failed {
                reason: "injected".into(),
            },
            None,
            None,
            FailureCategory::Kb,
            sub,
        );
    }
    let kb_outcome = KbOutcome::Solved { length };
    if !rng.gen_bool(config.stage_model.p_llm) {
        let sub = config.sub_splits.draw(FailureCategory::Llm, rng);
        return fail(kb_outcome, Some(false), None, FailureCategory::Llm, sub);
    }
    if !rng.gen_bool(config.stage_model.p_exe) {
        let sub = config.sub_splits.draw(FailureCategory::Exe, rng);
        return fail(kb_outcome, Some(true), Some(false), FailureCategory::Exe, sub);
    }
    TrialRecord {
        scramble_depth: depth,
        kb_outcome,
        llm_outcome: Some(true),
        exe_outcome: Some(true),
        overall: Outcome::Success,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FailureShares {
    pub kb: f64,
    pub llm: f64,
    pub exe: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DepthStats {
    pub depth: usize,
    pub trials: u64,
    pub kb_successes: u64,
    pub llm_successes: u64,
    pub exe_successes: u64,
    pub kb_rate: f64,
    pub llm_rate: f64,
    pub exe_rate: f64,
    pub overall: f64,
    /// Knowledge-base solution length → number of trials whose KB stage
    /// succeeded with that length.
    pub length_histogram: BTreeMap<usize, u64>,
    pub modal_length: Option<usize>,
    pub modal_share: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PipelineStats {
    pub n: u64,
    pub kb_successes: u64,
    pub llm_successes: u64,
    pub exe_successes: u64,
    /// Conditional stage rates: KB over all trials, LLM over KB successes,
    /// EXE over LLM successes.
    pub kb_rate: f64,
    pub llm_rate: f64,
    pub exe_rate: f64,
    pub overall: f64,
    pub failures: BTreeMap<FailureCategory, u64>,
    /// `None` when no trial failed.
    pub failure_shares: Option<FailureShares>,
    /// Keyed `CATEGORY/subcategory`.
    pub subcategories: BTreeMap<String, u64>,
    pub per_depth: Vec<DepthStats>,
    pub distinct_scrambles_solved: usize,
}

fn ratio(a: u64, b: u64) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

#[derive(Default)]
struct Tally {
    n: u64,
    kb: u64,
    llm: u64,
    exe: u64,
    hist: BTreeMap<usize, u64>,
}

impl Tally {
    fn add(&mut self, r: &TrialRecord) {
        self.n += 1;
        if let KbOutcome::Solved { length } = r.kb_outcome {
            self.kb += 1;
            *self.hist.entry(length).or_default() += 1;
        }
        if r.llm_outcome == Some(true) {
            self.llm += 1;
        }
        if r.exe_outcome == Some(true) {
            self.exe += 1;
        }
    }

    fn depth_stats(self, depth: usize) -> DepthStats {
        let (modal_length, modal_count) =
            self.hist.iter().fold(
                (None, 0u64),
                |best, (&len, &c)| if c > best.1 { (Some(len), c) } else { best },
            );
        DepthStats {
            depth,
            trials: self.n,
            kb_successes: self.kb,
            llm_successes: self.llm,
            exe_successes: self.exe,
            kb_rate: ratio(self.kb, self.n),
            llm_rate: ratio(self.llm, self.kb),
            exe_rate: ratio(self.exe, self.llm),
            overall: ratio(self.exe, self.n),
            modal_length,
            modal_share: ratio(modal_count, self.kb),
            length_histogram: self.hist,
        }
    }
}

/// Runs `trials_per_depth` trials at each depth. Trial `i` (numbered across
/// depths in config order) is seeded with `trial_seed(config.seed, i)`.
pub fn run_campaign(config: &CampaignConfig) -> Result<PipelineStats, SimError> {
    config.validate()?;
    let mut pool = ScramblePool::new(config.seed, config.pool_size, config.budget());
    let mut total = Tally::default();
    let mut failures: BTreeMap<FailureCategory, u64> = BTreeMap::new();
    let mut subcategories: BTreeMap<String, u64> = BTreeMap::new();
    let mut per_depth = Vec::new();
    let mut index = 0u64;
    for &depth in &config.depths {
        let mut tally = Tally::default();
        for _ in 0..config.trials_per_depth {
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(config.seed, index));
            index += 1;
            let pick: u64 = rng.gen();
            let (scene, solved) = pool.entry(depth, pick).clone();
            let r = trial_after_scramble(depth, config, &scene, solved, &mut rng);
            if let Outcome::Failure { category, subcategory } = &r.overall {
                *failures.entry(*category).or_default() += 1;
                *subcategories
                    .entry(format!("{}/{}", category.name(), subcategory))
                    .or_default() += 1;
            }
            tally.add(&r);
            total.add(&r);
        }
        per_depth.push(tally.depth_stats(depth));
    }
    let failed: u64 = failures.values().sum();
    let share = |c| ratio(failures.get(&c).copied().unwrap_or(0), failed);
    Ok(PipelineStats {
        n: total.n,
        kb_successes: total.kb,
        llm_successes: total.llm,
        exe_successes: total.exe,
        kb_rate: ratio(total.kb, total.n),
        llm_rate: ratio(total.llm, total.kb),
        exe_rate: ratio(total.exe, total.llm),
        overall: ratio(total.exe, total.n),
        failure_shares: (failed > 0).then(|| FailureShares {
            kb: share(FailureCategory::Kb),
            llm: share(FailureCategory::Llm),
            exe: share(FailureCategory::Exe),
        }),
        failures,
        subcategories,
        per_depth,
        distinct_scrambles_solved: pool.solves_performed(),
    })
}

/// Per-depth success table as CSV, one row per depth plus an `average` row.
pub fn write_stats_csv<W: Write>(w: W, stats: &PipelineStats) -> Result<(), SimError> {
    let mut wtr = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w);
    wtr.write_record([
        "depth",
        "trials",
        "kb_success_rate",
        "kb_modal_length",
        "kb_modal_share",
        "llm_success_rate",
        "exe_success_rate",
        "overall_success_rate",
        "length_histogram",
    ])?;
    for d in &stats.per_depth {
        let hist: Vec<String> = d.length_histogram.iter().map(|(l, c)| format!("{l}:{c}")).collect();
        wtr.write_record([
            d.depth.to_string(),
            d.trials.to_string(),
            format!("{:.4}", d.kb_rate),
            d.modal_length.map(|l| l.to_string()).unwrap_or_default(),
            format!("{:.4}", d.modal_share),
            format!("{:.4}", d.llm_rate),
            format!("{:.4}", d.exe_rate),
            format!("{:.4}", d.overall),
            hist.join(";"),
        ])?;
    }
    wtr.write_record([
        "average".to_string(),
        stats.n.to_string(),
        format!("{:.4}", stats.kb_rate),
        String::new(),
        String::new(),
        format!("{:.4}", stats.llm_rate),
        format!("{:.4}", stats.exe_rate),
        format!("{:.4}", stats.overall),
        String::new(),
    ])?;
    wtr.flush()?;
    Ok(())
}

//! Synthetic scenes and the closed-loop pipeline simulation.
//!
//! The knowledge-base stage runs the real solver on the scrambled cube as
//! seen through a noisy perception stub. The plan-generation and execution
//! stages are Bernoulli draws from a [`StageModel`].

// `!(x > 0)` is deliberate: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod campaign;
mod maps;
mod perception;
mod scene;
mod seeds;

use thiserror::Error;

pub use campaign::{
    run_campaign, run_trial, write_stats_csv, CampaignConfig, DepthStats, FailureCategory, FailureShares, KbOutcome,
    Outcome, PipelineStats, ScramblePool, StageModel, SubSplits, TrialRecord,
};
pub use maps::{
    approach_point, build_subtask_maps, grasp_region_contains, initial_pose, motion_scenarios, plan_subtask,
    MotionScenario, APPROACH_MAX, APPROACH_MIN, APPROACH_RADIUS, STANDOFF, TABLE_THICKNESS, TOOL_AXIS,
};
pub use perception::observe_cube;
pub use scene::{build_scene, face_normal, Pose, Scene, DEFAULT_CUBE_EDGE, DEFAULT_GRID_DIM, DEFAULT_RESOLUTION};
pub use seeds::{splitmix64, trial_seed};

#[derive(Debug, Error)]
pub enum SimError {
    #[error("layer {0} is outside the grid")]
    LayerUnreachable(char),
    #[error("invalid stage model: {0}")]
    InvalidStageModel(String),
    #[error("invalid campaign config: {0}")]
    InvalidConfig(String),
    #[error("config parse: {0}")]
    ConfigParse(#[from] toml::de::Error),
    #[error(transparent)]
    Motion(#[from] rubikai_motion::MotionError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

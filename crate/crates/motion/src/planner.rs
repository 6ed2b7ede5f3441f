use serde::{Deserialize, Serialize};

use crate::{
    attach_gripper, attach_rotation, euclidean_distance_transform, gaussian_smooth, greedy_search, lit, normalize,
    total_cost, KinematicLimits, MapSet, MotionError, Real, SearchOptions, Trajectory, Vec3, VoxelGrid,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, bound = "T: Real")]
pub struct PlannerConfig<T> {
    /// Gaussian width applied to the ignore map, meters.
    pub sigma: T,
    pub search: SearchOptions<T>,
}

impl<T: Real> Default for PlannerConfig<T> {
    fn default() -> Self {
        PlannerConfig {
            sigma: lit(0.01),
            search: SearchOptions::default(),
        }
    }
}

/// Normalized fields the search runs on.
#[derive(Clone, Debug, PartialEq)]
pub struct PreparedCosts<T> {
    pub interact_n: VoxelGrid<T>,
    pub ignore_n: VoxelGrid<T>,
    pub total: VoxelGrid<T>,
}

pub fn prepare_costs<T: Real>(maps: &MapSet<T>, sigma: T) -> Result<PreparedCosts<T>, MotionError> {
    maps.validate()?;
    let interact_n = normalize(&euclidean_distance_transform(&maps.interact)?);
    let ignore_n = normalize(&gaussian_smooth(&maps.ignore, sigma)?);
    let total = total_cost(&interact_n, &ignore_n)?;
    Ok(PreparedCosts {
        interact_n,
        ignore_n,
        total,
    })
}

/// Full per-subtask planning: cost preparation, greedy search, then rotation
/// and gripper annotation.
pub fn plan_trajectory<T: Real>(
    maps: &MapSet<T>,
    start: Vec3<T>,
    target: Vec3<T>,
    limits: &KinematicLimits<T>,
    config: &PlannerConfig<T>,
) -> Result<(Trajectory<T>, PreparedCosts<T>), MotionError> {
    let costs = prepare_costs(maps, config.sigma)?;
    let path = greedy_search(&costs.total, &costs.ignore_n, start, target, limits, &config.search)?;
    let path = attach_rotation(&path, &maps.rotation)?;
    let path = attach_gripper(&path, &maps.gripper)?;
    Ok((path, costs))
}

//! End-effector motion planning over voxel maps.
//!
//! The pipeline per subtask: distance transform of the interact map, Gaussian
//! smoothing of the ignore map, normalization, a 2:1 weighted total cost, a
//! greedy waypoint search, then per-waypoint rotation and gripper commands
//! read from their fields.
//!
//! Everything is generic over the scalar type; `f64` aliases are exported for
//! the common case.

// `!(x > 0)` is deliberate: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod geom;
mod grid;
pub mod io;
mod planner;
mod preprocess;
mod search;
mod trajectory;

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;
use thiserror::Error;

pub use geom::{Quat, Vec3};
pub use grid::{Geometry, Grid, MapSet, VoxelGrid};
pub use planner::{plan_trajectory, prepare_costs, PlannerConfig, PreparedCosts};
pub use preprocess::{euclidean_distance_transform, gaussian_smooth, normalize, total_cost};
pub use search::{greedy_search, SearchOptions, DIRECTIONS};
pub use trajectory::{
    assign_timestamps, attach_gripper, attach_rotation, check_constraints, check_joint_positions, evaluate_costs,
    Gripper, KinematicLimits, Trajectory, Violation, ViolationKind, Waypoint,
};

/// Floating-point scalar the planner can run on.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Serialize + DeserializeOwned + Send + Sync + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts a literal into `T`.
#[inline]
pub(crate) fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

pub(crate) fn to_array<T: Real>(p: Vec3<T>) -> [f64; 3] {
    [
        p.x.to_f64().unwrap_or(f64::NAN),
        p.y.to_f64().unwrap_or(f64::NAN),
        p.z.to_f64().unwrap_or(f64::NAN),
    ]
}

#[derive(Debug, Error)]
pub enum MotionError {
    #[error("interact map has no target voxel")]
    NoTargetVoxel,
    #[error("grids do not share dimensions, resolution and origin")]
    GeometryMismatch,
    #[error("greedy search stuck at {position:?}")]
    NoProgress { position: [f64; 3] },
    #[error("position {position:?} is outside the grid")]
    OutOfBounds { position: [f64; 3] },
    #[error("start {position:?} lies in an obstacle voxel")]
    StartBlocked { position: [f64; 3] },
    #[error("timestamps not strictly increasing at waypoint {index}")]
    NonMonotonicTime { index: usize },
    #[error("invalid grid geometry: {0}")]
    InvalidGeometry(String),
    #[error("invalid kinematic limits: {0}")]
    InvalidLimits(String),
    #[error("rotation at voxel {index} is not a unit quaternion")]
    InvalidRotation { index: usize },
    #[error("grid file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Vec3f = Vec3<f64>;
pub type Quatf = Quat<f64>;
pub type Geometryf = Geometry<f64>;
pub type VoxelGridf = VoxelGrid<f64>;
pub type MapSetf = MapSet<f64>;
pub type Waypointf = Waypoint<f64>;
pub type Trajectoryf = Trajectory<f64>;
pub type KinematicLimitsf = KinematicLimits<f64>;
pub type SearchOptionsf = SearchOptions<f64>;
pub type PlannerConfigf = PlannerConfig<f64>;

use serde::{Deserialize, Serialize};

use crate::{lit, Grid, MotionError, Quat, Real, Vec3, VoxelGrid};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gripper {
    #[default]
    Open,
    Close,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct Waypoint<T> {
    #[serde(rename = "p")]
    pub position: Vec3<T>,
    #[serde(rename = "quat")]
    pub orientation: Quat<T>,
    pub gripper: Gripper,
    /// Seconds since the first waypoint.
    pub t: T,
}

impl<T: Real> Waypoint<T> {
    pub fn at(position: Vec3<T>) -> Self {
        Waypoint {
            position,
            orientation: Quat::identity(),
            gripper: Gripper::Open,
            t: T::zero(),
        }
    }
}

/// Ordered waypoints of one subtask. Serialized as a plain JSON array.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent, bound = "T: Real")]
pub struct Trajectory<T> {
    pub waypoints: Vec<Waypoint<T>>,
}

impl<T: Real> Trajectory<T> {
    pub fn from_positions(points: impl IntoIterator<Item = Vec3<T>>) -> Self {
        Trajectory {
            waypoints: points.into_iter().map(Waypoint::at).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.waypoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.waypoints.is_empty()
    }

    pub fn positions(&self) -> impl Iterator<Item = Vec3<T>> + '_ {
        self.waypoints.iter().map(|w| w.position)
    }

    /// Sum of segment lengths.
    pub fn path_length(&self) -> T {
        self.waypoints
            .windows(2)
            .fold(T::zero(), |acc, w| acc + w[1].position.dist(w[0].position))
    }
}

/// Bounds of the trajectory optimization. The joint bounds are per axis and
/// only used by [`check_joint_positions`]; the planner works in end-effector
/// space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, bound = "T: Real")]
pub struct KinematicLimits<T> {
    pub d_min: T,
    pub d_max: T,
    pub v_min: T,
    pub v_max: T,
    pub a_min: T,
    pub a_max: T,
    pub q_min: Vec<T>,
    pub q_max: Vec<T>,
}

impl<T: Real> Default for KinematicLimits<T> {
    fn default() -> Self {
        KinematicLimits {
            d_min: lit(0.005),
            d_max: lit(0.02),
            v_min: lit(0.01),
            v_max: lit(0.2),
            a_min: T::zero(),
            a_max: lit(10.0),
            q_min: Vec::new(),
            q_max: Vec::new(),
        }
    }
}

impl<T: Real> KinematicLimits<T> {
    pub fn validate(&self) -> Result<(), MotionError> {
        let bad = |m: &str| Err(MotionError::InvalidLimits(m.to_string()));
        if !(self.d_min >= T::zero() && self.d_min <= self.d_max && self.d_max > T::zero()) {
            return bad("need 0 <= d_min <= d_max, d_max > 0");
        }
        if !(self.v_min <= self.v_max && self.v_max > T::zero()) {
            return bad("need v_min <= v_max, v_max > 0");
        }
        if !(self.a_min <= self.a_max) {
            return bad("need a_min <= a_max");
        }
        if self.q_min.len() != self.q_max.len() || self.q_min.iter().zip(&self.q_max).any(|(a, b)| a > b) {
            return bad("joint bounds must pair up with q_min <= q_max");
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Spacing,
    Speed,
    Acceleration,
}

/// A failed check on segment `segment`, the step from waypoint
/// `segment - 1` to waypoint `segment`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct Violation<T> {
    pub segment: usize,
    pub kind: ViolationKind,
    pub value: T,
}

/// `(F_e, F_c)`: summed cost of the voxels under the waypoints and path
/// length, both to be minimized.
pub fn evaluate_costs<T: Real>(t: &Trajectory<T>, m: &VoxelGrid<T>) -> Result<(T, T), MotionError> {
    let mut fe = T::zero();
    for p in t.positions() {
        fe = fe + *m.at(p)?;
    }
    Ok((fe, t.path_length()))
}

/// Spacing, speed `‖Δp‖/Δt` and acceleration `‖Δv‖/Δt` per segment. An
/// empty result means the trajectory is admissible.
pub fn check_constraints<T: Real>(
    t: &Trajectory<T>,
    limits: &KinematicLimits<T>,
) -> Result<Vec<Violation<T>>, MotionError> {
    let w = &t.waypoints;
    for j in 1..w.len() {
        if !(w[j].t > w[j - 1].t) {
            return Err(MotionError::NonMonotonicTime { index: j });
        }
    }
    let mut out = Vec::new();
    let mut prev_v: Option<Vec3<T>> = None;
    for j in 1..w.len() {
        let dp = w[j].position - w[j - 1].position;
        let dt = w[j].t - w[j - 1].t;
        let d = dp.norm();
        if d < limits.d_min || d > limits.d_max {
            out.push(Violation {
                segment: j,
                kind: ViolationKind::Spacing,
                value: d,
            });
        }
        let v = dp * dt.recip();
        let speed = v.norm();
        if speed < limits.v_min || speed > limits.v_max {
            out.push(Violation {
                segment: j,
                kind: ViolationKind::Speed,
                value: speed,
            });
        }
        if let Some(pv) = prev_v {
            let a = (v - pv).norm() / dt;
            if a < limits.a_min || a > limits.a_max {
                out.push(Violation {
                    segment: j,
                    kind: ViolationKind::Acceleration,
                    value: a,
                });
            }
        }
        prev_v = Some(v);
    }
    Ok(out)
}

/// Uniform time step: the smallest `Δt` that keeps the longest segment at or
/// below `v_max`, padded by a relative `√ε` against rounding.
pub fn assign_timestamps<T: Real>(t: &mut Trajectory<T>, limits: &KinematicLimits<T>) {
    let longest = t
        .waypoints
        .windows(2)
        .map(|w| w[1].position.dist(w[0].position))
        .fold(T::zero(), T::max);
    let dt = if longest > T::zero() {
        longest / limits.v_max * (T::one() + T::epsilon().sqrt())
    } else {
        T::one()
    };
    let mut time = T::zero();
    for w in &mut t.waypoints {
        w.t = time;
        time = time + dt;
    }
}

pub fn attach_rotation<T: Real>(t: &Trajectory<T>, rotation: &Grid<T, Quat<T>>) -> Result<Trajectory<T>, MotionError> {
    let mut out = t.clone();
    for w in &mut out.waypoints {
        w.orientation = *rotation.at(w.position)?;
    }
    Ok(out)
}

pub fn attach_gripper<T: Real>(t: &Trajectory<T>, gripper: &Grid<T, Gripper>) -> Result<Trajectory<T>, MotionError> {
    let mut out = t.clone();
    for w in &mut out.waypoints {
        w.gripper = *gripper.at(w.position)?;
    }
    Ok(out)
}

/// `(sample, joint)` pairs outside `[q_min, q_max]`.
pub fn check_joint_positions<T: Real>(q: &[Vec<T>], limits: &KinematicLimits<T>) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (s, row) in q.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let lo = limits.q_min.get(j).copied().unwrap_or(T::neg_infinity());
            let hi = limits.q_max.get(j).copied().unwrap_or(T::infinity());
            if v < lo || v > hi {
                out.push((s, j));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Geometry;

    fn two(dp: f64, dt: f64) -> Trajectory<f64> {
        let mut t = Trajectory::from_positions([Vec3::zero(), Vec3::new(dp, 0.0, 0.0)]);
        t.waypoints[1].t = dt;
        t
    }

    #[test]
    fn speed_examples() {
        let lim = KinematicLimits {
            d_max: 0.1,
            ..KinematicLimits::default()
        };
        assert!(check_constraints(&two(0.05, 0.5), &lim).unwrap().is_empty());
        let v = check_constraints(&two(0.05, 0.1), &lim).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].segment, v[0].kind), (1, ViolationKind::Speed));
        assert!((v[0].value - 0.5).abs() < 1e-12);
    }

    #[test]
    fn single_waypoint_is_trivially_fine() {
        let t = Trajectory::from_positions([Vec3::new(0.1, 0.1, 0.1)]);
        assert!(check_constraints(&t, &KinematicLimits::default()).unwrap().is_empty());
        let g = Geometry::cube(4, 0.1).unwrap();
        let (_, fc) = evaluate_costs(&t, &VoxelGrid::zeros(g)).unwrap();
        assert_eq!(fc, 0.0);
    }

    #[test]
    fn time_must_increase() {
        let t = two(0.01, 0.0);
        assert!(matches!(
            check_constraints(&t, &KinematicLimits::default()),
            Err(MotionError::NonMonotonicTime { index: 1 })
        ));
    }

    #[test]
    fn costs_on_uniform_map() {
        let g = Geometry::cube(10, 0.1).unwrap();
        let m = Grid::filled(g, 0.25);
        let t = Trajectory::from_positions((0..5).map(|i| Vec3::new(0.05 + 0.1 * i as f64, 0.05, 0.05)));
        let (fe, fc) = evaluate_costs(&t, &m).unwrap();
        assert!((fe - 1.25).abs() < 1e-12);
        assert!((fc - 0.4).abs() < 1e-12);
        let pair = Trajectory::from_positions([Vec3::new(0.05, 0.05, 0.05), Vec3::new(0.15, 0.05, 0.05)]);
        let (fe, fc) = evaluate_costs(&pair, &VoxelGrid::zeros(g)).unwrap();
        assert_eq!(fe, 0.0);
        assert!((fc - 0.1).abs() < 1e-12);
    }

    #[test]
    fn timestamps_respect_speed_band() {
        let lim = KinematicLimits::default();
        let mut t: Trajectory<f64> = Trajectory::from_positions([
            Vec3::zero(),
            Vec3::new(0.02, 0.0, 0.0),
            Vec3::new(0.03, 0.0, 0.0),
            Vec3::new(0.03, 0.015, 0.0),
        ]);
        assign_timestamps(&mut t, &lim);
        assert!((t.waypoints[1].t - 0.1).abs() < 1e-7);
        assert!(check_constraints(&t, &lim).unwrap().is_empty());
    }

    #[test]
    fn joint_bounds() {
        let lim = KinematicLimits {
            q_min: vec![-1.0, 0.0],
            q_max: vec![1.0, 2.0],
            ..KinematicLimits::default()
        };
        assert!(lim.validate().is_ok());
        assert_eq!(
            check_joint_positions(&[vec![0.0, 1.0], vec![1.5, -0.1]], &lim),
            vec![(1, 0), (1, 1)]
        );
    }

    #[test]
    fn json_layout() {
        let t = Trajectory::from_positions([Vec3::new(1.0, 2.0, 3.0)]);
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(
            s,
            r#"[{"p":[1.0,2.0,3.0],"quat":[1.0,0.0,0.0,0.0],"gripper":"open","t":0.0}]"#
        );
        let back: Trajectory<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
    }
}

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rubikai_core::cube::Face;
use rubikai_core::plan::Subtask;
use rubikai_motion::{
    plan_trajectory, Grid, Gripper, KinematicLimitsf, MapSetf, PlannerConfigf, PreparedCosts, Quatf, Trajectoryf,
    Vec3f, VoxelGrid,
};

use crate::{build_scene, Scene, SimError};

/// The grasp approach region is the slab `[APPROACH_MIN, APPROACH_MAX]`
/// outside the face plane, within `APPROACH_RADIUS` of the face axis.
pub const APPROACH_MIN: f64 = 0.02;
pub const APPROACH_MAX: f64 = 0.03;
pub const APPROACH_RADIUS: f64 = 0.01;
/// Distance of the initial pose from the face center, along the normal.
pub const STANDOFF: f64 = 0.15;
/// Thickness of the table slab at the bottom of the grid.
pub const TABLE_THICKNESS: f64 = 0.02;
/// Tool axis in the gripper frame.
pub const TOOL_AXIS: Vec3f = Vec3f::new(0.0, 0.0, 1.0);

/// Goal of the greedy search: the middle of the approach slab on the face
/// axis.
pub fn approach_point(scene: &Scene, face: Face) -> Vec3f {
    scene.face_center(face) + scene.normal(face) * ((APPROACH_MIN + APPROACH_MAX) / 2.0)
}

/// Pose the arm returns to between subtasks for this face.
pub fn initial_pose(scene: &Scene, face: Face) -> Vec3f {
    scene.face_center(face) + scene.normal(face) * STANDOFF
}

pub fn grasp_region_contains(scene: &Scene, face: Face, p: Vec3f) -> bool {
    let n = scene.normal(face);
    let rel = p - scene.face_center(face);
    let along = rel.dot(n);
    let lateral = (rel - n * along).norm();
    (APPROACH_MIN..=APPROACH_MAX).contains(&along) && lateral <= APPROACH_RADIUS
}

/// Maps for one subtask. They depend only on the scene and the face.
///
/// * interact: 1 in the grasp approach region (always including the voxel of
///   the approach point), else 0;
/// * ignore: 1 in the cube body and the table slab, else 0;
/// * rotation: turns [`TOOL_AXIS`] toward the face center;
/// * gripper: closed inside the approach region.
pub fn build_subtask_maps(scene: &Scene, t: Subtask) -> Result<MapSetf, SimError> {
    let face = t.face;
    let g = scene.grid;
    let target = approach_point(scene, face);
    let center = scene.face_center(face);
    let Some(target_voxel) = g.voxel_of(target) else {
        return Err(SimError::LayerUnreachable(face.letter()));
    };
    if !g.contains(center) {
        return Err(SimError::LayerUnreachable(face.letter()));
    }
    let table_top = g.origin.z + TABLE_THICKNESS;
    let mut interact = VoxelGrid::from_fn(g, |_, c| {
        if grasp_region_contains(scene, face, c) {
            1.0
        } else {
            0.0
        }
    });
    interact.set(target_voxel, 1.0);
    let ignore = VoxelGrid::from_fn(g, |_, c| if scene.in_body(c) || c.z < table_top { 1.0 } else { 0.0 });
    let rotation = Grid::from_fn(g, |_, c| Quatf::from_two_vectors(TOOL_AXIS, center - c));
    let gripper = Grid::from_fn(g, |ijk, _| {
        if *interact.get(ijk) > 0.0 {
            Gripper::Close
        } else {
            Gripper::Open
        }
    });
    Ok(MapSetf {
        interact,
        ignore,
        rotation,
        gripper,
    })
}

/// Plans the approach trajectory of one subtask from `start`.
pub fn plan_subtask(
    scene: &Scene,
    t: Subtask,
    start: Vec3f,
    limits: &KinematicLimitsf,
    config: &PlannerConfigf,
) -> Result<(Trajectoryf, PreparedCosts<f64>), SimError> {
    let maps = build_subtask_maps(scene, t)?;
    Ok(plan_trajectory(
        &maps,
        start,
        approach_point(scene, t.face),
        limits,
        config,
    )?)
}

/// A seeded planning problem: scene, subtask and a start pose near the
/// face's initial pose.
#[derive(Clone, Debug)]
pub struct MotionScenario {
    pub scene: Scene,
    pub subtask: Subtask,
    pub start: Vec3f,
}

/// `n` scenarios. Starts are drawn 10 to 18 cm out along the face normal
/// with up to 4 cm of lateral offset, kept clear of the table.
pub fn motion_scenarios(n: usize, seed: u64) -> Vec<MotionScenario> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let scene = build_scene(rng.gen_range(0..=40), rng.gen());
            let face = Face::ALL[rng.gen_range(0..6)];
            let subtask = Subtask {
                face,
                turns: rng.gen_range(1..=3),
            };
            let n = scene.normal(face);
            let mut offset = Vec3f::new(
                rng.gen_range(-0.04..0.04),
                rng.gen_range(-0.04..0.04),
                rng.gen_range(-0.04..0.04),
            );
            offset = offset - n * offset.dot(n);
            let mut start = scene.face_center(face) + n * rng.gen_range(0.10..0.18) + offset;
            start.z = start.z.max(scene.grid.origin.z + TABLE_THICKNESS + 0.03);
            MotionScenario { scene, subtask, start }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Pose;
    use rubikai_core::cube::CubieState;
    use rubikai_motion::Vec3;

    #[test]
    fn right_face_targets_sit_outside_plus_x() {
        let s = Scene::centered(CubieState::SOLVED);
        let m = build_subtask_maps(
            &s,
            Subtask {
                face: Face::R,
                turns: 1,
            },
        )
        .unwrap();
        let g = m.geometry();
        let center = s.face_center(Face::R);
        let mut count = 0;
        for i in 0..g.len() {
            if m.interact.values()[i] > 0.0 {
                let c = g.center(g.coords(i));
                assert!(c.x > center.x);
                assert!(c.dist(center) <= s.cube_edge);
                count += 1;
            }
        }
        assert!(count > 0);
    }

    #[test]
    fn same_face_same_maps() {
        let s = build_scene(20, 3);
        let a = build_subtask_maps(
            &s,
            Subtask {
                face: Face::U,
                turns: 1,
            },
        )
        .unwrap();
        let b = build_subtask_maps(
            &s,
            Subtask {
                face: Face::U,
                turns: 3,
            },
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn cube_at_corner_is_unreachable() {
        let mut s = Scene::centered(CubieState::SOLVED);
        s.cube_pose = Pose {
            position: Vec3::new(0.03, 0.3, 0.3),
            orientation: Quatf::identity(),
        };
        assert!(matches!(
            build_subtask_maps(
                &s,
                Subtask {
                    face: Face::L,
                    turns: 1
                }
            ),
            Err(SimError::LayerUnreachable('L'))
        ));
    }
}

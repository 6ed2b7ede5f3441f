use rubikai_core::cube::{random_scramble, CubieState, Face};
use rubikai_motion::{Geometryf, Quatf, Vec3f};
use serde::{Deserialize, Serialize};

/// Side length of the physical cube, meters.
pub const DEFAULT_CUBE_EDGE: f64 = 0.056;
pub const DEFAULT_GRID_DIM: usize = 64;
pub const DEFAULT_RESOLUTION: f64 = 0.01;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pose {
    pub position: Vec3f,
    pub orientation: Quatf,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    pub cube_state: CubieState,
    pub cube_pose: Pose,
    pub grid: Geometryf,
    pub cube_edge: f64,
}

/// Outward unit normal of a face in the cube frame. F faces the robot (-y),
/// U points up (+z).
pub fn face_normal(face: Face) -> Vec3f {
    match face {
        Face::U => Vec3f::new(0.0, 0.0, 1.0),
        Face::D => Vec3f::new(0.0, 0.0, -1.0),
        Face::R => Vec3f::new(1.0, 0.0, 0.0),
        Face::L => Vec3f::new(-1.0, 0.0, 0.0),
        Face::F => Vec3f::new(0.0, -1.0, 0.0),
        Face::B => Vec3f::new(0.0, 1.0, 0.0),
    }
}

impl Scene {
    /// Solved cube centered in the default 64³ grid at 1 cm resolution.
    pub fn centered(cube_state: CubieState) -> Scene {
        let grid = Geometryf::cube(DEFAULT_GRID_DIM, DEFAULT_RESOLUTION).expect("static geometry");
        let half = DEFAULT_GRID_DIM as f64 * DEFAULT_RESOLUTION / 2.0;
        Scene {
            cube_state,
            cube_pose: Pose {
                position: Vec3f::new(half, half, half),
                orientation: Quatf::identity(),
            },
            grid,
            cube_edge: DEFAULT_CUBE_EDGE,
        }
    }

    /// Outward normal of `face` in world coordinates.
    pub fn normal(&self, face: Face) -> Vec3f {
        self.cube_pose.orientation.rotate(face_normal(face))
    }

    pub fn face_center(&self, face: Face) -> Vec3f {
        self.cube_pose.position + self.normal(face) * (self.cube_edge / 2.0)
    }

    /// Coordinates of `p` in the cube frame.
    pub fn to_cube_frame(&self, p: Vec3f) -> Vec3f {
        let q = self.cube_pose.orientation;
        let inv = Quatf {
            w: q.w,
            x: -q.x,
            y: -q.y,
            z: -q.z,
        };
        inv.rotate(p - self.cube_pose.position)
    }

    pub fn in_body(&self, p: Vec3f) -> bool {
        let l = self.to_cube_frame(p);
        let h = self.cube_edge / 2.0;
        l.x.abs() <= h && l.y.abs() <= h && l.z.abs() <= h
    }

    pub fn cube_inside_grid(&self) -> bool {
        let h = self.cube_edge / 2.0;
        (0..8).all(|k| {
            let corner = Vec3f::new(
                if k & 1 == 0 { -h } else { h },
                if k & 2 == 0 { -h } else { h },
                if k & 4 == 0 { -h } else { h },
            );
            self.grid
                .contains(self.cube_pose.position + self.cube_pose.orientation.rotate(corner))
        })
    }
}

pub fn build_scene(scramble_depth: usize, seed: u64) -> Scene {
    Scene::centered(CubieState::from_moves(&random_scramble(scramble_depth, seed)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_scene_geometry() {
        let s = build_scene(0, 1);
        assert!(s.cube_state.is_solved());
        assert!(s.cube_inside_grid());
        assert!(s.in_body(s.cube_pose.position));
        assert!((s.face_center(Face::R).x - 0.348).abs() < 1e-12);
        assert_eq!(build_scene(40, 9), build_scene(40, 9));
        assert!(build_scene(40, 9).cube_state.validate().is_ok());
    }
}

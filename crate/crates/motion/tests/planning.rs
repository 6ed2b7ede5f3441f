use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rubikai_motion::*;

fn point_costs(g: Geometry<f64>, target: [usize; 3], ignore: &VoxelGridf) -> (VoxelGridf, VoxelGridf) {
    let mut interact = VoxelGrid::zeros(g);
    interact.set(target, 1.0);
    let ignore_n = normalize(ignore);
    let cost = total_cost(&normalize(&euclidean_distance_transform(&interact).unwrap()), &ignore_n).unwrap();
    (cost, ignore_n)
}

#[test]
fn unobstructed_paths_are_nearly_straight() {
    let g = Geometry::cube(32, 0.01).unwrap();
    let lim = KinematicLimits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let empty = VoxelGrid::zeros(g);
    for _ in 0..50 {
        let mut pick = || [rng.gen_range(0..32), rng.gen_range(0..32), rng.gen_range(0..32)];
        let (s, t) = (pick(), pick());
        let (cost, ignore_n) = point_costs(g, t, &empty);
        let (start, target) = (g.center(s), g.center(t));
        let path = greedy_search(&cost, &ignore_n, start, target, &lim, &SearchOptions::default()).unwrap();
        assert!(path.waypoints.last().unwrap().position.dist(target) <= g.resolution);
        let (_, fc) = evaluate_costs(&path, &cost).unwrap();
        assert!(fc <= 1.2 * start.dist(target) + 1e-12, "{fc} vs {}", start.dist(target));
        assert!(check_constraints(&path, &lim).unwrap().is_empty());
    }
}

#[test]
fn wall_with_gap_is_threaded() {
    let g = Geometry::cube(32, 0.01).unwrap();
    let mut ignore = VoxelGrid::zeros(g);
    for y in 0..32 {
        for z in 0..32 {
            let in_gap = (14..18).contains(&y) && (14..18).contains(&z);
            if !in_gap {
                ignore.set([16, y, z], 1.0);
            }
        }
    }
    let (cost, ignore_n) = point_costs(g, [28, 16, 16], &ignore);
    let lim = KinematicLimits::default();
    let path = greedy_search(
        &cost,
        &ignore_n,
        g.center([4, 15, 15]),
        g.center([28, 16, 16]),
        &lim,
        &SearchOptions::default(),
    )
    .unwrap();
    assert!(check_constraints(&path, &lim).unwrap().is_empty());
    let mut crossed = false;
    for w in path.waypoints.windows(2) {
        assert!(*ignore_n.at(w[1].position).unwrap() <= 0.5);
        if (w[0].position.x < 0.16) != (w[1].position.x < 0.16) {
            crossed = true;
        }
    }
    assert!(crossed);
    for p in path.positions() {
        if (0.16..0.17).contains(&p.x) {
            let [_, y, z] = g.voxel_of(p).unwrap();
            assert!((14..18).contains(&y) && (14..18).contains(&z));
        }
    }
}

#[test]
fn dead_end_reports_no_progress() {
    let g = Geometry::cube(16, 0.01).unwrap();
    let mut ignore = VoxelGrid::zeros(g);
    for y in 0..16 {
        for z in 0..16 {
            ignore.set([8, y, z], 1.0);
        }
    }
    let (cost, ignore_n) = point_costs(g, [13, 8, 8], &ignore);
    let r = greedy_search(
        &cost,
        &ignore_n,
        g.center([2, 8, 8]),
        g.center([13, 8, 8]),
        &KinematicLimits::default(),
        &SearchOptions::default(),
    );
    assert!(matches!(r, Err(MotionError::NoProgress { .. })));
    let r = greedy_search(
        &cost,
        &ignore_n,
        Vec3::new(-1.0, 0.0, 0.0),
        g.center([13, 8, 8]),
        &KinematicLimits::default(),
        &SearchOptions::default(),
    );
    assert!(matches!(r, Err(MotionError::OutOfBounds { .. })));
}

#[test]
fn rotation_and_gripper_annotation() {
    let g = Geometry::cube(20, 0.01).unwrap();
    let center = Vec3::new(0.1, 0.1, 0.1);
    let rot = Grid::from_fn(g, |_, c| Quat::from_two_vectors(Vec3::new(0.0, 0.0, 1.0), center - c));
    let grasp = |p: Vec3f| p.x > 0.15;
    let grip = Grid::from_fn(g, |_, c| if grasp(c) { Gripper::Close } else { Gripper::Open });
    let path = Trajectory::from_positions((0..10).map(|i| Vec3::new(0.055 + 0.013 * i as f64, 0.04, 0.13)));
    let with_rot = attach_rotation(&path, &rot).unwrap();
    let last = with_rot.waypoints.last().unwrap();
    assert!(last.orientation.is_unit(1e-6));
    let axis = last.orientation.rotate(Vec3::new(0.0, 0.0, 1.0));
    let rel = center - last.position;
    let off_axis = (rel - axis * rel.dot(axis)).norm();
    assert!(off_axis <= g.resolution);

    let constant = Grid::filled(g, Quat::from_axis_angle(Vec3::new(0.0, 1.0, 0.0), 0.3));
    let c = attach_rotation(&path, &constant).unwrap();
    assert!(c
        .waypoints
        .iter()
        .all(|w| w.orientation == *constant.values().first().unwrap()));

    let with_grip = attach_gripper(&path, &grip).unwrap();
    for w in &with_grip.waypoints {
        assert_eq!(
            w.gripper == Gripper::Close,
            grasp(g.center(g.voxel_of(w.position).unwrap()))
        );
    }
    assert_eq!(attach_gripper(&with_grip, &grip).unwrap(), with_grip);
    let all_open = attach_gripper(&path, &Grid::filled(g, Gripper::Open)).unwrap();
    assert!(all_open.waypoints.iter().all(|w| w.gripper == Gripper::Open));
}

#[test]
fn grid_file_round_trip() {
    let g = Geometry::cube(5, 0.02).unwrap();
    let m = Grid::from_fn(g, |[i, j, k], _| (i * 25 + j * 5 + k) as f64 / 7.0);
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("m.grid");
    io::write_grid(&p, &m).unwrap();
    assert_eq!(io::read_grid::<f64>(&p).unwrap(), m);
}

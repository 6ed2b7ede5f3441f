use serde::{Deserialize, Serialize};

use crate::{assign_timestamps, lit, to_array, KinematicLimits, MotionError, Real, Trajectory, Vec3, VoxelGrid};

/// The 26 neighbor offsets in candidate order (x varies fastest).
pub const DIRECTIONS: [[i8; 3]; 26] = {
    let mut out = [[0i8; 3]; 26];
    let mut n = 0;
    let mut k = 0;
    while k < 27 {
        let d = [(k % 3) as i8 - 1, ((k / 3) % 3) as i8 - 1, (k / 9) as i8 - 1];
        if !(d[0] == 0 && d[1] == 0 && d[2] == 0) {
            out[n] = d;
            n += 1;
        }
        k += 1;
    }
    out
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, bound = "T: Real")]
pub struct SearchOptions<T> {
    /// Voxels whose normalized ignore value exceeds this are forbidden.
    pub obstacle_threshold: T,
    /// Weight (per meter) of the distance-to-target term added to the cost.
    pub tiebreak_weight: T,
    pub max_steps: usize,
}

impl<T: Real> Default for SearchOptions<T> {
    fn default() -> Self {
        SearchOptions {
            obstacle_threshold: lit(0.5),
            tiebreak_weight: lit(0.05),
            max_steps: 10_000,
        }
    }
}

/// Greedy descent from `start` to `target`.
///
/// Each step tries the straight step toward the target and the 26 neighbor
/// directions, all scaled to `clamp(distance, d_min, d_max)`, and keeps the
/// candidate with the lowest score: the cost map interpolated at the
/// candidate plus `tiebreak_weight` times its distance to the target. Ties
/// go to the earlier candidate. A candidate is admissible when the whole
/// segment to it stays inside the grid and off forbidden voxels. The search
/// fails with `NoProgress` once no admissible candidate lowers the score.
/// When the target is within one admissible step it is taken directly.
///
/// The returned waypoints carry identity orientation, an open gripper and
/// uniform timestamps from [`assign_timestamps`].
pub fn greedy_search<T: Real>(
    cost: &VoxelGrid<T>,
    ignore_n: &VoxelGrid<T>,
    start: Vec3<T>,
    target: Vec3<T>,
    limits: &KinematicLimits<T>,
    opts: &SearchOptions<T>,
) -> Result<Trajectory<T>, MotionError> {
    limits.validate()?;
    if !cost.same_geometry(ignore_n) {
        return Err(MotionError::GeometryMismatch);
    }
    let g = cost.geometry();
    g.require(start)?;
    g.require(target)?;
    let blocked = |p: Vec3<T>| match ignore_n.at(p) {
        Ok(&v) => v > opts.obstacle_threshold,
        Err(_) => true,
    };
    if blocked(start) {
        return Err(MotionError::StartBlocked {
            position: to_array(start),
        });
    }
    let half_voxel = g.resolution * lit(0.5);
    let segment_free = |a: Vec3<T>, b: Vec3<T>| {
        let n = (a.dist(b) / half_voxel).ceil().to_usize().unwrap_or(1).max(1);
        let nt = T::from_usize(n).expect("step count fits scalar");
        (1..=n).all(|i| {
            let s = T::from_usize(i).expect("step count fits scalar") / nt;
            !blocked(a + (b - a) * s)
        })
    };
    // Plan strictly inside the spacing band so that positions recomputed
    // from stored waypoints still pass the check after rounding.
    let margin = T::epsilon().sqrt();
    let lo = limits.d_min * (T::one() + margin);
    let hi = limits.d_max * (T::one() - margin);
    let score = |p: Vec3<T>| cost.sample_trilinear(p) + opts.tiebreak_weight * p.dist(target);

    let mut points = vec![start];
    let mut p = start;
    let mut steps = 0;
    loop {
        let dist = p.dist(target);
        if dist == T::zero() {
            break;
        }
        if dist <= limits.d_max && dist >= limits.d_min && segment_free(p, target) {
            points.push(target);
            break;
        }
        if dist < limits.d_min && dist <= g.resolution {
            break;
        }
        if steps == opts.max_steps {
            return Err(MotionError::NoProgress { position: to_array(p) });
        }
        steps += 1;
        let step = dist.max(lo).min(hi);
        let toward = (target - p) * dist.recip();
        let here = score(p);
        let mut best: Option<(T, Vec3<T>)> = None;
        let candidates = std::iter::once(toward).chain(DIRECTIONS.iter().map(|d| {
            let v = Vec3::new(
                T::from_i8(d[0]).unwrap(),
                T::from_i8(d[1]).unwrap(),
                T::from_i8(d[2]).unwrap(),
            );
            v * v.norm().recip()
        }));
        for dir in candidates {
            let c = p + dir * step;
            if !g.contains(c) || !segment_free(p, c) {
                continue;
            }
            let s = score(c);
            if best.is_none_or(|(b, _)| s < b) {
                best = Some((s, c));
            }
        }
        match best {
            Some((s, c)) if s < here => {
                points.push(c);
                p = c;
            }
            _ => return Err(MotionError::NoProgress { position: to_array(p) }),
        }
    }
    let mut t = Trajectory::from_positions(points);
    assign_timestamps(&mut t, limits);
    Ok(t)
}

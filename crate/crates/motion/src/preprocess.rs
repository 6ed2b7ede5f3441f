use crate::{lit, Grid, MotionError, Real, VoxelGrid};

/// Exact Euclidean distance (meters) from every voxel center to the nearest
/// target voxel center, targets being voxels with a positive value.
///
/// Separable lower-envelope-of-parabolas transform: squared distances are
/// computed in voxel units, which are integers and therefore exact, and
/// scaled by the resolution at the end.
pub fn euclidean_distance_transform<T: Real>(interact: &VoxelGrid<T>) -> Result<VoxelGrid<T>, MotionError> {
    let g = *interact.geometry();
    let mut d2: Vec<T> = interact
        .values()
        .iter()
        .map(|&v| if v > T::zero() { T::zero() } else { T::infinity() })
        .collect();
    if d2.iter().all(|v| v.is_infinite()) {
        return Err(MotionError::NoTargetVoxel);
    }
    let mut scratch = Envelope::default();
    for axis in 0..3 {
        for_each_line(g.dims, axis, |idx| scratch.transform(&mut d2, idx));
    }
    let res = g.resolution;
    let values = d2.into_iter().map(|v| v.sqrt() * res).collect();
    Grid::from_values(g, values)
}

/// 3D Gaussian blur with standard deviation `sigma` in meters. The kernel is
/// truncated at 3σ along each axis and renormalized over the voxels that lie
/// inside the grid, so a constant field is left unchanged.
pub fn gaussian_smooth<T: Real>(ignore: &VoxelGrid<T>, sigma: T) -> Result<VoxelGrid<T>, MotionError> {
    if !(sigma > T::zero()) {
        return Err(MotionError::InvalidGeometry(format!("sigma {sigma} must be positive")));
    }
    let g = *ignore.geometry();
    let s = sigma / g.resolution;
    let radius = (lit::<T>(3.0) * s).floor().to_usize().unwrap_or(0);
    let kernel: Vec<T> = (0..=radius)
        .map(|k| {
            let x = T::from_usize(k).expect("radius fits scalar");
            (-(x * x) / (lit::<T>(2.0) * s * s)).exp()
        })
        .collect();
    let mut data = ignore.values().to_vec();
    let mut line = Vec::new();
    for axis in 0..3 {
        for_each_line(g.dims, axis, |idx| {
            line.clear();
            line.extend(idx.iter().map(|&i| data[i]));
            let n = line.len();
            for (x, &out) in idx.iter().enumerate() {
                let lo = x.saturating_sub(radius);
                let hi = (x + radius).min(n - 1);
                let mut acc = T::zero();
                let mut wsum = T::zero();
                for (y, &v) in line.iter().enumerate().take(hi + 1).skip(lo) {
                    let w = kernel[x.abs_diff(y)];
                    acc = acc + w * v;
                    wsum = wsum + w;
                }
                data[out] = acc / wsum;
            }
        });
    }
    Grid::from_values(g, data)
}

/// Affine rescale to `[0, 1]`. A constant field maps to all zeros.
pub fn normalize<T: Real>(g: &VoxelGrid<T>) -> VoxelGrid<T> {
    let lo = g.min_value();
    let hi = g.max_value();
    let span = hi - lo;
    if !(span > T::zero()) {
        return g.map(|_| T::zero());
    }
    g.map(|&v| (v - lo) / span)
}

/// `(2·interact + ignore) / 3`: low cost near targets and away from
/// obstacles.
pub fn total_cost<T: Real>(interact_n: &VoxelGrid<T>, ignore_n: &VoxelGrid<T>) -> Result<VoxelGrid<T>, MotionError> {
    if !interact_n.same_geometry(ignore_n) {
        return Err(MotionError::GeometryMismatch);
    }
    let third = lit::<T>(3.0).recip();
    let values = interact_n
        .values()
        .iter()
        .zip(ignore_n.values())
        .map(|(&i, &g)| (i + i + g) * third)
        .collect();
    Grid::from_values(*interact_n.geometry(), values)
}

/// Calls `f` with the flat indices of every grid line parallel to `axis`.
fn for_each_line(dims: [usize; 3], axis: usize, mut f: impl FnMut(&[usize])) {
    let (a, b) = match axis {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let mut idx = Vec::with_capacity(dims[axis]);
    for u in 0..dims[b] {
        for v in 0..dims[a] {
            idx.clear();
            for w in 0..dims[axis] {
                let mut c = [0usize; 3];
                c[axis] = w;
                c[a] = v;
                c[b] = u;
                idx.push(c[0] + dims[0] * (c[1] + dims[1] * c[2]));
            }
            f(&idx);
        }
    }
}

/// Reusable buffers for the 1D squared-distance transform.
#[derive(Default)]
struct Envelope<T> {
    input: Vec<T>,
    vertex: Vec<usize>,
    start: Vec<T>,
}

impl<T: Real> Envelope<T> {
    /// In-place transform of the line `data[idx[..]]`.
    fn transform(&mut self, data: &mut [T], idx: &[usize]) {
        self.input.clear();
        self.input.extend(idx.iter().map(|&i| data[i]));
        self.vertex.clear();
        self.start.clear();
        let f = &self.input;
        let sq = |q: usize| {
            let q = T::from_usize(q).expect("index fits scalar");
            q * q
        };
        for q in 0..f.len() {
            if f[q].is_infinite() {
                continue;
            }
            loop {
                let Some(&p) = self.vertex.last() else {
                    self.vertex.push(q);
                    self.start.push(T::neg_infinity());
                    break;
                };
                let num = (f[q] + sq(q)) - (f[p] + sq(p));
                let s = num / T::from_usize(2 * (q - p)).expect("index fits scalar");
                if s <= *self.start.last().expect("parallel stacks") {
                    self.vertex.pop();
                    self.start.pop();
                    continue;
                }
                self.vertex.push(q);
                self.start.push(s);
                break;
            }
        }
        if self.vertex.is_empty() {
            return;
        }
        let mut k = 0;
        for (q, &out) in idx.iter().enumerate() {
            let qt = T::from_usize(q).expect("index fits scalar");
            while k + 1 < self.vertex.len() && self.start[k + 1] < qt {
                k += 1;
            }
            let p = self.vertex[k];
            let d = T::from_usize(q.abs_diff(p)).expect("index fits scalar");
            data[out] = d * d + f[p];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Geometry, Vec3};

    #[test]
    fn single_target_is_straight_line_distance() {
        let g = Geometry::<f64>::cube(9, 0.1).unwrap();
        let mut m = VoxelGrid::zeros(g);
        m.set([2, 7, 4], 1.0);
        let d = euclidean_distance_transform(&m).unwrap();
        let t = g.center([2, 7, 4]);
        for i in 0..g.len() {
            let want = g.center(g.coords(i)).dist(t);
            assert!((d.values()[i] - want).abs() < 1e-12);
        }
    }

    #[test]
    fn all_targets_give_zero_and_none_is_an_error() {
        let g = Geometry::<f64>::cube(4, 1.0).unwrap();
        let d = euclidean_distance_transform(&Grid::filled(g, 1.0)).unwrap();
        assert!(d.values().iter().all(|&v| v == 0.0));
        assert!(matches!(
            euclidean_distance_transform(&VoxelGrid::zeros(g)),
            Err(MotionError::NoTargetVoxel)
        ));
    }

    #[test]
    fn normalize_examples() {
        let g = Geometry::<f64>::new([3, 1, 1], 1.0, Vec3::zero()).unwrap();
        let n = normalize(&Grid::from_values(g, vec![2.0, 4.0, 6.0]).unwrap());
        assert_eq!(n.values(), &[0.0, 0.5, 1.0]);
        let n = normalize(&Grid::filled(g, 3.0));
        assert_eq!(n.values(), &[0.0; 3]);
        let unit = Grid::from_values(g, vec![0.0, 0.25, 1.0]).unwrap();
        assert_eq!(normalize(&unit), unit);
    }

    #[test]
    fn total_cost_arithmetic() {
        let g = Geometry::<f64>::cube(1, 1.0).unwrap();
        let c = total_cost(&Grid::filled(g, 0.3), &Grid::filled(g, 0.9)).unwrap();
        assert!((c.values()[0] - 0.5).abs() < 1e-12);
        let other = Geometry::<f64>::cube(2, 1.0).unwrap();
        assert!(matches!(
            total_cost(&Grid::filled(g, 0.0), &Grid::filled(other, 0.0)),
            Err(MotionError::GeometryMismatch)
        ));
    }

    #[test]
    fn smoothing_keeps_constants() {
        let g = Geometry::<f64>::new([7, 5, 3], 0.01, Vec3::zero()).unwrap();
        let s = gaussian_smooth(&Grid::filled(g, 1.0), 0.015).unwrap();
        assert!(s.values().iter().all(|&v| (v - 1.0).abs() < 1e-9));
        let z = gaussian_smooth(&VoxelGrid::zeros(g), 0.015).unwrap();
        assert!(z.values().iter().all(|&v| v == 0.0));
    }
}

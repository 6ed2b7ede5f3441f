use serde::{Deserialize, Serialize};

use crate::{lit, to_array, Gripper, MotionError, Quat, Real, Vec3};

/// Placement of a regular voxel lattice in meters. Voxel `(i, j, k)` covers
/// `origin + [i, i+1) × [j, j+1) × [k, k+1)` scaled by `resolution`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct Geometry<T> {
    pub dims: [usize; 3],
    pub resolution: T,
    pub origin: Vec3<T>,
}

impl<T: Real> Geometry<T> {
    pub fn new(dims: [usize; 3], resolution: T, origin: Vec3<T>) -> Result<Self, MotionError> {
        if dims.contains(&0) {
            return Err(MotionError::InvalidGeometry(format!("dims {dims:?} must be positive")));
        }
        if !(resolution > T::zero()) || !resolution.is_finite() {
            return Err(MotionError::InvalidGeometry(format!("resolution {resolution}")));
        }
        Ok(Geometry {
            dims,
            resolution,
            origin,
        })
    }

    /// Cube of `n` voxels per side with its low corner at the origin.
    pub fn cube(n: usize, resolution: T) -> Result<Self, MotionError> {
        Geometry::new([n, n, n], resolution, Vec3::zero())
    }

    pub fn len(&self) -> usize {
        self.dims[0] * self.dims[1] * self.dims[2]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn index(&self, [i, j, k]: [usize; 3]) -> usize {
        i + self.dims[0] * (j + self.dims[1] * k)
    }

    #[inline]
    pub fn coords(&self, idx: usize) -> [usize; 3] {
        let i = idx % self.dims[0];
        let j = (idx / self.dims[0]) % self.dims[1];
        let k = idx / (self.dims[0] * self.dims[1]);
        [i, j, k]
    }

    pub fn center(&self, [i, j, k]: [usize; 3]) -> Vec3<T> {
        let h = lit::<T>(0.5);
        let f = |n: usize| T::from_usize(n).expect("index fits scalar");
        self.origin + Vec3::new(f(i) + h, f(j) + h, f(k) + h) * self.resolution
    }

    pub fn voxel_of(&self, p: Vec3<T>) -> Option<[usize; 3]> {
        let rel = p - self.origin;
        let mut out = [0usize; 3];
        for (axis, slot) in out.iter_mut().enumerate() {
            let v = (rel.get(axis) / self.resolution).floor();
            if !(v >= T::zero()) {
                return None;
            }
            let v = v.to_usize()?;
            if v >= self.dims[axis] {
                return None;
            }
            *slot = v;
        }
        Some(out)
    }

    pub fn contains(&self, p: Vec3<T>) -> bool {
        self.voxel_of(p).is_some()
    }

    pub fn require(&self, p: Vec3<T>) -> Result<[usize; 3], MotionError> {
        self.voxel_of(p)
            .ok_or(MotionError::OutOfBounds { position: to_array(p) })
    }
}

/// Dense per-voxel field.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real, V: Serialize", deserialize = "T: Real, V: Deserialize<'de>"))]
pub struct Grid<T, V> {
    geometry: Geometry<T>,
    values: Vec<V>,
}

/// Scalar field (the environment map M and its derived cost maps).
pub type VoxelGrid<T> = Grid<T, T>;

impl<T: Real, V: Clone> Grid<T, V> {
    pub fn filled(geometry: Geometry<T>, fill: V) -> Self {
        Grid {
            values: vec![fill; geometry.len()],
            geometry,
        }
    }

    pub fn from_values(geometry: Geometry<T>, values: Vec<V>) -> Result<Self, MotionError> {
        if values.len() != geometry.len() {
            return Err(MotionError::InvalidGeometry(format!(
                "{} values for {} voxels",
                values.len(),
                geometry.len()
            )));
        }
        Ok(Grid { geometry, values })
    }

    pub fn from_fn(geometry: Geometry<T>, f: impl Fn([usize; 3], Vec3<T>) -> V) -> Self {
        let values = (0..geometry.len())
            .map(|i| {
                let c = geometry.coords(i);
                f(c, geometry.center(c))
            })
            .collect();
        Grid { geometry, values }
    }

    pub fn geometry(&self) -> &Geometry<T> {
        &self.geometry
    }

    pub fn values(&self) -> &[V] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [V] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<V> {
        self.values
    }

    pub fn get(&self, c: [usize; 3]) -> &V {
        &self.values[self.geometry.index(c)]
    }

    pub fn set(&mut self, c: [usize; 3], v: V) {
        let i = self.geometry.index(c);
        self.values[i] = v;
    }

    /// Value of the voxel containing `p`.
    pub fn at(&self, p: Vec3<T>) -> Result<&V, MotionError> {
        Ok(self.get(self.geometry.require(p)?))
    }

    pub fn map<W>(&self, f: impl Fn(&V) -> W) -> Grid<T, W> {
        Grid {
            geometry: self.geometry,
            values: self.values.iter().map(f).collect(),
        }
    }

    pub fn same_geometry<W>(&self, other: &Grid<T, W>) -> bool {
        self.geometry == other.geometry
    }
}

impl<T: Real> VoxelGrid<T> {
    pub fn zeros(geometry: Geometry<T>) -> Self {
        Grid::filled(geometry, T::zero())
    }

    pub fn min_value(&self) -> T {
        self.values.iter().copied().fold(T::infinity(), T::min)
    }

    pub fn max_value(&self) -> T {
        self.values.iter().copied().fold(T::neg_infinity(), T::max)
    }

    pub fn sum(&self) -> T {
        self.values.iter().copied().fold(T::zero(), |a, b| a + b)
    }

    /// Trilinear interpolation between voxel centers, clamped at the border.
    pub fn sample_trilinear(&self, p: Vec3<T>) -> T {
        let g = &self.geometry;
        let rel = (p - g.origin) * g.resolution.recip() - Vec3::splat(lit(0.5));
        let mut lo = [0usize; 3];
        let mut frac = [T::zero(); 3];
        for axis in 0..3 {
            let max = T::from_usize(g.dims[axis] - 1).expect("index fits scalar");
            let v = rel.get(axis).max(T::zero()).min(max);
            let f = v.floor();
            lo[axis] = f.to_usize().unwrap_or(0).min(g.dims[axis] - 1);
            frac[axis] = v - f;
        }
        let mut acc = T::zero();
        for corner in 0..8 {
            let mut w = T::one();
            let mut c = lo;
            for axis in 0..3 {
                if corner >> axis & 1 == 1 {
                    c[axis] = (lo[axis] + 1).min(g.dims[axis] - 1);
                    w = w * frac[axis];
                } else {
                    w = w * (T::one() - frac[axis]);
                }
            }
            if w > T::zero() {
                acc = acc + w * *self.get(c);
            }
        }
        acc
    }
}

/// The four per-subtask fields: target affinity, avoidance, tool orientation
/// and gripper command.
#[derive(Clone, Debug, PartialEq)]
pub struct MapSet<T> {
    pub interact: VoxelGrid<T>,
    pub ignore: VoxelGrid<T>,
    pub rotation: Grid<T, Quat<T>>,
    pub gripper: Grid<T, Gripper>,
}

impl<T: Real> MapSet<T> {
    pub fn geometry(&self) -> &Geometry<T> {
        self.interact.geometry()
    }

    pub fn validate(&self) -> Result<(), MotionError> {
        if !(self.interact.same_geometry(&self.ignore)
            && self.interact.same_geometry(&self.rotation)
            && self.interact.same_geometry(&self.gripper))
        {
            return Err(MotionError::GeometryMismatch);
        }
        let tol = lit(1e-6);
        match self.rotation.values().iter().position(|q| !q.is_unit(tol)) {
            Some(index) => Err(MotionError::InvalidRotation { index }),
            None => Ok(()),
        }
    }
}

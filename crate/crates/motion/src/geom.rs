use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::{lit, Real};

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[T; 3]", into = "[T; 3]", bound = "T: Real")]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T> From<[T; 3]> for Vec3<T> {
    fn from([x, y, z]: [T; 3]) -> Self {
        Vec3 { x, y, z }
    }
}

impl<T> From<Vec3<T>> for [T; 3] {
    fn from(v: Vec3<T>) -> Self {
        [v.x, v.y, v.z]
    }
}

impl<T: Real> Vec3<T> {
    pub const fn new(x: T, y: T, z: T) -> Self {
        Vec3 { x, y, z }
    }

    pub fn zero() -> Self {
        Vec3::new(T::zero(), T::zero(), T::zero())
    }

    pub fn splat(v: T) -> Self {
        Vec3::new(v, v, v)
    }

    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Self) -> Self {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> T {
        self.dot(self).sqrt()
    }

    pub fn dist(self, o: Self) -> T {
        (self - o).norm()
    }

    /// Unit vector, or `None` for the zero vector.
    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        if n > T::zero() {
            Some(self * n.recip())
        } else {
            None
        }
    }

    pub fn get(self, axis: usize) -> T {
        match axis {
            0 => self.x,
            1 => self.y,
            _ => self.z,
        }
    }
}

impl<T: Real> Add for Vec3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Real> Sub for Vec3<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Real> Mul<T> for Vec3<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl<T: Real> Neg for Vec3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// Rotation as a unit quaternion. Serialized as `[w, x, y, z]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "[T; 4]", into = "[T; 4]", bound = "T: Real")]
pub struct Quat<T> {
    pub w: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T> From<[T; 4]> for Quat<T> {
    fn from([w, x, y, z]: [T; 4]) -> Self {
        Quat { w, x, y, z }
    }
}

impl<T> From<Quat<T>> for [T; 4] {
    fn from(q: Quat<T>) -> Self {
        [q.w, q.x, q.y, q.z]
    }
}

impl<T: Real> Default for Quat<T> {
    fn default() -> Self {
        Quat::identity()
    }
}

impl<T: Real> Quat<T> {
    pub fn identity() -> Self {
        Quat {
            w: T::one(),
            x: T::zero(),
            y: T::zero(),
            z: T::zero(),
        }
    }

    pub fn from_axis_angle(axis: Vec3<T>, angle: T) -> Self {
        let a = axis.normalized().unwrap_or(Vec3::new(T::one(), T::zero(), T::zero()));
        let half = angle * lit(0.5);
        let s = half.sin();
        Quat {
            w: half.cos(),
            x: a.x * s,
            y: a.y * s,
            z: a.z * s,
        }
    }

    /// Shortest rotation taking direction `from` onto direction `to`.
    /// Identity when either vector is zero.
    pub fn from_two_vectors(from: Vec3<T>, to: Vec3<T>) -> Self {
        let (a, b) = match (from.normalized(), to.normalized()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Quat::identity(),
        };
        let d = a.dot(b);
        if d < lit::<T>(-1.0 + 1e-12) {
            // Antiparallel: half turn about any axis orthogonal to `a`.
            let helper = if a.x.abs() < lit(0.9) {
                Vec3::new(T::one(), T::zero(), T::zero())
            } else {
                Vec3::new(T::zero(), T::one(), T::zero())
            };
            return Quat::from_axis_angle(a.cross(helper), T::PI());
        }
        let c = a.cross(b);
        Quat {
            w: T::one() + d,
            x: c.x,
            y: c.y,
            z: c.z,
        }
        .normalized()
    }

    pub fn norm(self) -> T {
        (self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn normalized(self) -> Self {
        let n = self.norm();
        Quat {
            w: self.w / n,
            x: self.x / n,
            y: self.y / n,
            z: self.z / n,
        }
    }

    pub fn is_unit(self, tol: T) -> bool {
        (self.norm() - T::one()).abs() <= tol
    }

    pub fn rotate(self, v: Vec3<T>) -> Vec3<T> {
        let u = Vec3::new(self.x, self.y, self.z);
        let t = u.cross(v) * lit(2.0);
        v + t * self.w + u.cross(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_vector_rotation_maps_direction() {
        let cases = [
            (Vec3::new(0.0, 0.0, 1.0), Vec3::new(1.0, 2.0, -0.5)),
            (Vec3::new(0.0, 0.0, 1.0), Vec3::new(0.0, 0.0, -3.0)),
            (Vec3::new(1.0, 0.0, 0.0), Vec3::new(-1.0, 0.0, 0.0)),
            (Vec3::new(0.0, 1.0, 0.0), Vec3::new(0.0, 1.0, 0.0)),
        ];
        for (a, b) in cases {
            let q = Quat::<f64>::from_two_vectors(a, b);
            assert!(q.is_unit(1e-12));
            let r = q.rotate(a);
            let want = b.normalized().unwrap();
            assert!(r.dist(want) < 1e-12, "{r:?} vs {want:?}");
        }
    }

    #[test]
    fn serde_layout() {
        let q = Quat::<f64>::identity();
        assert_eq!(serde_json::to_string(&q).unwrap(), "[1.0,0.0,0.0,0.0]");
        let v: Vec3<f32> = serde_json::from_str("[1.0,2.0,3.0]").unwrap();
        assert_eq!(v, Vec3::new(1.0, 2.0, 3.0));
    }
}

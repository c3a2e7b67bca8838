//! Bloch-sphere geometry: unit vectors and 3D rotations with their SU(2) lifts.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::Mat2;

/// A point on (or inside) the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        BlochVector { x, y, z }
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(&self, s: f64) -> BlochVector {
        BlochVector::new(s * self.x, s * self.y, s * self.z)
    }
}

/// A proper rotation of the Bloch sphere (orthogonal, determinant +1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation3 {
    m: [[f64; 3]; 3],
}

impl Rotation3 {
    pub fn identity() -> Self {
        Rotation3 {
            m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
        }
    }

    /// Validates orthogonality and det = +1 to 1e-10.
    pub fn from_matrix(m: [[f64; 3]; 3]) -> Result<Self> {
        let r = Rotation3 { m };
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = 0.0;
                for k in 0..3 {
                    acc += m[k][i] * m[k][j];
                }
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((acc - want).abs());
            }
        }
        if worst > 1e-10 {
            return Err(Error::domain(format!(
                "rotation matrix is not orthogonal (max residual {worst:.3e})"
            )));
        }
        let det = r.det();
        if (det - 1.0).abs() > 1e-10 {
            return Err(Error::domain(format!(
                "rotation matrix must have determinant +1 (got {det})"
            )));
        }
        Ok(r)
    }

    /// Intrinsic Z-Y-Z Euler rotation Rz(alpha) * Ry(beta) * Rz(gamma).
    pub fn from_euler_zyz(alpha: f64, beta: f64, gamma: f64) -> Self {
        let rz = |t: f64| {
            let (s, c) = t.sin_cos();
            [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]
        };
        let (sb, cb) = beta.sin_cos();
        let ry = [[cb, 0.0, sb], [0.0, 1.0, 0.0], [-sb, 0.0, cb]];
        let mul = |a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]| {
            let mut out = [[0.0; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    for (k, bk) in b.iter().enumerate() {
                        out[i][j] += a[i][k] * bk[j];
                    }
                }
            }
            out
        };
        Rotation3 {
            m: mul(&mul(&rz(alpha), &ry), &rz(gamma)),
        }
    }

    pub fn matrix(&self) -> [[f64; 3]; 3] {
        self.m
    }

    pub fn det(&self) -> f64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn apply(&self, v: &BlochVector) -> BlochVector {
        let m = &self.m;
        BlochVector::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }

    /// Unit quaternion (w, x, y, z) with w >= 0 representing this
    /// rotation: w = cos(angle/2), (x, y, z) = sin(angle/2) * axis.
    ///
    /// Shepperd's method: take the square root on whichever of
    /// {trace, R00, R11, R22} is largest, which stays well conditioned at
    /// every rotation angle, including near pi where the antisymmetric
    /// part vanishes.
    pub fn quaternion(&self) -> [f64; 4] {
        let m = &self.m;
        let trace = m[0][0] + m[1][1] + m[2][2];
        let mut q = if trace >= m[0][0].max(m[1][1]).max(m[2][2]) {
            let r = (1.0 + trace).max(0.0).sqrt();
            let s = 0.5 / r;
            [
                0.5 * r,
                (m[2][1] - m[1][2]) * s,
                (m[0][2] - m[2][0]) * s,
                (m[1][0] - m[0][1]) * s,
            ]
        } else if m[0][0] >= m[1][1] && m[0][0] >= m[2][2] {
            let r = (1.0 + m[0][0] - m[1][1] - m[2][2]).max(0.0).sqrt();
            let s = 0.5 / r;
            [
                (m[2][1] - m[1][2]) * s,
                0.5 * r,
                (m[0][1] + m[1][0]) * s,
                (m[0][2] + m[2][0]) * s,
            ]
        } else if m[1][1] >= m[2][2] {
            let r = (1.0 + m[1][1] - m[0][0] - m[2][2]).max(0.0).sqrt();
            let s = 0.5 / r;
            [
                (m[0][2] - m[2][0]) * s,
                (m[0][1] + m[1][0]) * s,
                0.5 * r,
                (m[1][2] + m[2][1]) * s,
            ]
        } else {
            let r = (1.0 + m[2][2] - m[0][0] - m[1][1]).max(0.0).sqrt();
            let s = 0.5 / r;
            [
                (m[1][0] - m[0][1]) * s,
                (m[0][2] + m[2][0]) * s,
                (m[1][2] + m[2][1]) * s,
                0.5 * r,
            ]
        };
        let norm = (q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]).sqrt();
        for v in q.iter_mut() {
            *v /= norm;
        }
        if q[0] < 0.0 {
            for v in q.iter_mut() {
                *v = -*v;
            }
        }
        q
    }

    /// Axis-angle form (unit axis, angle in [0, pi]).
    pub fn axis_angle(&self) -> (BlochVector, f64) {
        let [w, x, y, z] = self.quaternion();
        let s = (x * x + y * y + z * z).sqrt();
        if s < 1e-15 {
            return (BlochVector::new(0.0, 0.0, 1.0), 0.0);
        }
        (BlochVector::new(x / s, y / s, z / s), 2.0 * s.atan2(w))
    }

    /// The SU(2) unitary implementing this rotation on qubit states:
    /// U = cos(w/2) I - i sin(w/2) (n . sigma).
    pub fn su2(&self) -> Mat2 {
        let [w, x, y, z] = self.quaternion();
        Mat2::new([
            [Complex64::new(w, -z), Complex64::new(-y, -x)],
            [Complex64::new(y, -x), Complex64::new(w, z)],
        ])
    }
}

//! Dense complex 2x2 (and minimal 4x4) linear algebra.
//!
//! Everything here is closed-form: eigenvalues of a 2x2 Hermitian matrix
//! come from the characteristic polynomial and the second eigenvector is
//! always taken as the exact orthogonal complement of the first, so the
//! returned factors are unitary to machine precision.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A 2x2 complex matrix. Also serves as a single-qubit operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub m: [[Complex64; 2]; 2],
}

/// Single-qubit operators are plain 2x2 complex matrices.
pub type SingleQubitOperator = Mat2;

impl Mat2 {
    pub fn new(m: [[Complex64; 2]; 2]) -> Self {
        Mat2 { m }
    }

    pub fn identity() -> Self {
        Mat2::new([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn diag(a: Complex64, d: Complex64) -> Self {
        Mat2::new([[a, ZERO], [ZERO, d]])
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let mut out = [[ZERO; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = self.m[i][0] * rhs.m[0][j] + self.m[i][1] * rhs.m[1][j];
            }
        }
        Mat2::new(out)
    }

    pub fn add(&self, rhs: &Mat2) -> Mat2 {
        let mut out = [[ZERO; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = self.m[i][j] + rhs.m[i][j];
            }
        }
        Mat2::new(out)
    }

    pub fn scale(&self, s: Complex64) -> Mat2 {
        let mut out = self.m;
        for row in out.iter_mut() {
            for v in row.iter_mut() {
                *v *= s;
            }
        }
        Mat2::new(out)
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new([[self.m[0][0], self.m[1][0]], [self.m[0][1], self.m[1][1]]])
    }

    pub fn conj(&self) -> Mat2 {
        let mut out = self.m;
        for row in out.iter_mut() {
            for v in row.iter_mut() {
                *v = v.conj();
            }
        }
        Mat2::new(out)
    }

    pub fn adjoint(&self) -> Mat2 {
        self.transpose().conj()
    }

    pub fn trace(&self) -> Complex64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.m[0][0] * v[0] + self.m[0][1] * v[1],
            self.m[1][0] * v[0] + self.m[1][1] * v[1],
        ]
    }

    /// Largest absolute entry of `self - rhs`.
    pub fn max_abs_diff(&self, rhs: &Mat2) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.m[i][j] - rhs.m[i][j]).norm());
            }
        }
        worst
    }

    /// Frobenius norm squared.
    pub fn norm_sqr(&self) -> f64 {
        self.m.iter().flatten().map(|v| v.norm_sqr()).sum()
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.adjoint().mul(self).max_abs_diff(&Mat2::identity()) <= tol
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    /// Rotation about the Bloch y axis: exp(-i beta sigma_y / 2).
    pub fn rotation_y(beta: f64) -> Mat2 {
        let (s, c) = (beta / 2.0).sin_cos();
        Mat2::new([
            [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
            [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
        ])
    }

    /// Rotation about the Bloch z axis: exp(-i alpha sigma_z / 2).
    pub fn rotation_z(alpha: f64) -> Mat2 {
        Mat2::diag(
            Complex64::from_polar(1.0, -alpha / 2.0),
            Complex64::from_polar(1.0, alpha / 2.0),
        )
    }

    /// Z-Y-Z Euler unitary Rz(alpha) * Ry(beta) * Rz(gamma).
    pub fn euler_zyz(alpha: f64, beta: f64, gamma: f64) -> Mat2 {
        Mat2::rotation_z(alpha)
            .mul(&Mat2::rotation_y(beta))
            .mul(&Mat2::rotation_z(gamma))
    }

    /// Eigendecomposition of a Hermitian matrix.
    ///
    /// Returns eigenvalues in descending order and a unitary whose columns
    /// are the matching eigenvectors. Each eigenvector is normalized so
    /// that its largest-magnitude component is real and nonnegative.
    pub fn hermitian_eigen(&self) -> Result<([f64; 2], Mat2)> {
        if !self.is_hermitian(1e-9) {
            return Err(Error::domain("hermitian_eigen: matrix is not Hermitian"));
        }
        let a = self.m[0][0].re;
        let d = self.m[1][1].re;
        // Use the average of the off-diagonal pair so tiny Hermiticity
        // drift cannot skew the decomposition.
        let b = 0.5 * (self.m[0][1] + self.m[1][0].conj());
        let half_gap = 0.5 * (a - d);
        let disc = (half_gap * half_gap + b.norm_sqr()).sqrt();
        let mid = 0.5 * (a + d);
        let hi = mid + disc;
        let lo = mid - disc;

        // Two algebraically equivalent expressions for the top eigenvector;
        // pick the better-conditioned one.
        let cand1 = [b, Complex64::new(hi - a, 0.0)];
        let cand2 = [Complex64::new(hi - d, 0.0), b.conj()];
        let n1 = cand1[0].norm_sqr() + cand1[1].norm_sqr();
        let n2 = cand2[0].norm_sqr() + cand2[1].norm_sqr();
        let v = if n1 >= n2 { cand1 } else { cand2 };
        let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        let v = if norm > 0.0 {
            [v[0] / norm, v[1] / norm]
        } else {
            // b == 0 and degenerate diagonal: any basis works.
            [ONE, ZERO]
        };
        let v = canonical_phase(v);
        // Exact orthogonal complement; for a Hermitian matrix this is the
        // second eigenvector.
        let w = canonical_phase([-v[1].conj(), v[0].conj()]);
        Ok(([hi, lo], Mat2::new([[v[0], w[0]], [v[1], w[1]]])))
    }

    /// Singular value decomposition `self = U * diag(s) * V^dagger` with
    /// singular values in descending order and U, V unitary.
    pub fn svd(&self) -> ([f64; 2], Mat2, Mat2) {
        let h = self.adjoint().mul(self);
        // h is Hermitian PSD by construction.
        let (vals, v) = h
            .hermitian_eigen()
            .expect("A^dagger A is Hermitian by construction");
        let s = [vals[0].max(0.0).sqrt(), vals[1].max(0.0).sqrt()];
        let v1 = [v.m[0][0], v.m[1][0]];
        let v2 = [v.m[0][1], v.m[1][1]];
        let scale = s[0].max(1.0);
        let u1 = if s[0] > 1e-15 * scale {
            let t = self.apply(v1);
            [t[0] / s[0], t[1] / s[0]]
        } else {
            [ONE, ZERO]
        };
        let u2 = if s[1] > 1e-12 * scale {
            let t = self.apply(v2);
            [t[0] / s[1], t[1] / s[1]]
        } else {
            // Rank-deficient: complete to a unitary.
            [-u1[1].conj(), u1[0].conj()]
        };
        let u = Mat2::new([[u1[0], u2[0]], [u1[1], u2[1]]]);
        (s, u, Mat2::new([[v1[0], v2[0]], [v1[1], v2[1]]]))
    }
}

/// Multiply by a global phase so the largest-magnitude component of the
/// vector is real and nonnegative.
fn canonical_phase(v: [Complex64; 2]) -> [Complex64; 2] {
    let lead = if v[0].norm_sqr() >= v[1].norm_sqr() {
        v[0]
    } else {
        v[1]
    };
    let r = lead.norm();
    if r == 0.0 {
        return v;
    }
    let phase = lead.conj() / r;
    [v[0] * phase, v[1] * phase]
}

/// A 4x4 complex matrix; only what the device quadratic forms need.
#[derive(Debug, Clone, Copy)]
pub struct Mat4 {
    pub m: [[Complex64; 4]; 4],
}

impl Mat4 {
    pub fn zeros() -> Self {
        Mat4 { m: [[ZERO; 4]; 4] }
    }

    pub fn identity() -> Self {
        let mut out = Mat4::zeros();
        for i in 0..4 {
            out.m[i][i] = ONE;
        }
        out
    }

    /// Kronecker product of two 2x2 matrices, row index = 2*i1 + i2.
    pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
        let mut out = Mat4::zeros();
        for i1 in 0..2 {
            for i2 in 0..2 {
                for j1 in 0..2 {
                    for j2 in 0..2 {
                        out.m[2 * i1 + i2][2 * j1 + j2] = a.m[i1][j1] * b.m[i2][j2];
                    }
                }
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Mat4) -> Mat4 {
        let mut out = Mat4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = ZERO;
                for k in 0..4 {
                    acc += self.m[i][k] * rhs.m[k][j];
                }
                out.m[i][j] = acc;
            }
        }
        out
    }

    pub fn adjoint(&self) -> Mat4 {
        let mut out = Mat4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                out.m[i][j] = self.m[j][i].conj();
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat4) -> Mat4 {
        let mut out = Mat4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                out.m[i][j] = self.m[i][j] + rhs.m[i][j];
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Mat4 {
        let mut out = *self;
        for row in out.m.iter_mut() {
            for v in row.iter_mut() {
                *v *= s;
            }
        }
        out
    }

    pub fn apply(&self, v: [Complex64; 4]) -> [Complex64; 4] {
        let mut out = [ZERO; 4];
        for (i, slot) in out.iter_mut().enumerate() {
            let mut acc = ZERO;
            for k in 0..4 {
                acc += self.m[i][k] * v[k];
            }
            *slot = acc;
        }
        out
    }

    /// Trace of `self * rhs`.
    pub fn trace_mul(&self, rhs: &Mat4) -> Complex64 {
        let mut acc = ZERO;
        for i in 0..4 {
            for k in 0..4 {
                acc += self.m[i][k] * rhs.m[k][i];
            }
        }
        acc
    }
}

/// The qubit swap permutation on the 4-dimensional two-qubit space.
pub fn swap_matrix() -> Mat4 {
    let mut out = Mat4::zeros();
    out.m[0][0] = ONE;
    out.m[1][2] = ONE;
    out.m[2][1] = ONE;
    out.m[3][3] = ONE;
    out
}

/// Pauli matrices with sigma_0 = identity.
pub fn pauli(index: usize) -> Mat2 {
    match index {
        0 => Mat2::identity(),
        1 => Mat2::new([[ZERO, ONE], [ONE, ZERO]]),
        2 => Mat2::new([
            [ZERO, Complex64::new(0.0, -1.0)],
            [Complex64::new(0.0, 1.0), ZERO],
        ]),
        3 => Mat2::new([[ONE, ZERO], [ZERO, -ONE]]),
        _ => panic!("pauli index out of range"),
    }
}

//! Qubit density matrices and the Uhlmann fidelity.

use num_complex::Complex64;

use crate::bloch::BlochVector;
use crate::error::{Error, Result};
use crate::linalg::Mat2;
use crate::qubit::PureQubit;

/// Eigenvalues this far below zero are treated as numerical drift and
/// clipped before matrix square roots; anything lower is rejected.
const PSD_TOL: f64 = 1e-12;

/// A 2x2 Hermitian, unit-trace, positive-semidefinite matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitDensityMatrix {
    m: Mat2,
}

impl QubitDensityMatrix {
    pub fn new(m: Mat2) -> Result<Self> {
        if !m.is_hermitian(1e-12) {
            return Err(Error::domain("density matrix is not Hermitian"));
        }
        let trace = m.trace();
        if (trace.re - 1.0).abs() > 1e-12 || trace.im.abs() > 1e-12 {
            return Err(Error::domain(format!(
                "density matrix trace must be 1, got {trace}"
            )));
        }
        let (vals, _) = m.hermitian_eigen()?;
        if vals[1] < -PSD_TOL {
            return Err(Error::domain(format!(
                "density matrix is not positive semidefinite (min eigenvalue {})",
                vals[1]
            )));
        }
        Ok(QubitDensityMatrix { m })
    }

    pub fn from_pure(q: &PureQubit) -> Self {
        let [c0, c1] = q.amplitudes();
        QubitDensityMatrix {
            m: Mat2::new([
                [c0 * c0.conj(), c0 * c1.conj()],
                [c1 * c0.conj(), c1 * c1.conj()],
            ]),
        }
    }

    /// rho = (I + r . sigma)/2 for |r| <= 1.
    pub fn from_bloch(r: &BlochVector) -> Result<Self> {
        if r.norm() > 1.0 + 1e-12 {
            return Err(Error::domain(format!(
                "Bloch vector of a density matrix must have norm <= 1, got {}",
                r.norm()
            )));
        }
        Ok(QubitDensityMatrix {
            m: Mat2::new([
                [
                    Complex64::new((1.0 + r.z) / 2.0, 0.0),
                    Complex64::new(r.x / 2.0, -r.y / 2.0),
                ],
                [
                    Complex64::new(r.x / 2.0, r.y / 2.0),
                    Complex64::new((1.0 - r.z) / 2.0, 0.0),
                ],
            ]),
        })
    }

    pub fn maximally_mixed() -> Self {
        QubitDensityMatrix {
            m: Mat2::diag(Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0)),
        }
    }

    pub fn matrix(&self) -> Mat2 {
        self.m
    }

    /// Eigenvalues in descending order, tiny negatives clipped at -1e-12.
    pub fn eigenvalues(&self) -> Result<[f64; 2]> {
        let (vals, _) = self.m.hermitian_eigen()?;
        for v in vals {
            if v < -PSD_TOL {
                return Err(Error::domain(format!(
                    "density matrix is not positive semidefinite (eigenvalue {v})"
                )));
            }
        }
        Ok([vals[0].max(0.0), vals[1].max(0.0)])
    }
}

/// Uhlmann fidelity [Tr sqrt(sqrt(rho) sigma sqrt(rho))]^2.
///
/// For qubits this equals the closed form Tr(rho sigma) + 2 sqrt(det rho
/// det sigma), which is evaluated directly: taking eigenvalue noise of a
/// rank-deficient intermediate through a square root would cost ~1e-8 of
/// accuracy, while the determinants of the inputs vanish cleanly.
pub fn fidelity_mixed(a: &QubitDensityMatrix, b: &QubitDensityMatrix) -> Result<f64> {
    a.eigenvalues()?;
    b.eigenvalues()?;
    let cross = a.matrix().mul(&b.matrix()).trace().re;
    let det_a = a.matrix().det().re.max(0.0);
    let det_b = b.matrix().det().re.max(0.0);
    Ok((cross + 2.0 * (det_a * det_b).sqrt()).clamp(0.0, 1.0))
}

/// 1 - fidelity_mixed. Reduces to 1 - |<a|b>|^2 for rank-1 inputs.
pub fn infidelity_mixed(est: &QubitDensityMatrix, true_state: &QubitDensityMatrix) -> Result<f64> {
    Ok(1.0 - fidelity_mixed(est, true_state)?)
}

//! Two-qubit pure states in the computational product basis.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::Mat2;
use crate::qubit::PureQubit;

/// A normalized two-qubit pure state with amplitudes ordered
/// (|00>, |01>, |10>, |11>).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitState {
    amps: [Complex64; 4],
}

impl TwoQubitState {
    /// Errors unless the amplitudes are normalized to 1e-9. Unnormalized
    /// vectors only appear as raw `[Complex64; 4]` intermediates inside
    /// device calculations.
    pub fn new(amps: [Complex64; 4]) -> Result<Self> {
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > 1e-9 {
            return Err(Error::domain(format!(
                "two-qubit amplitudes are not normalized (|psi|^2 = {norm_sqr})"
            )));
        }
        Ok(TwoQubitState { amps })
    }

    /// The singlet |S> = (|01> - |10>)/sqrt(2).
    pub fn singlet() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        TwoQubitState {
            amps: [
                Complex64::new(0.0, 0.0),
                Complex64::new(s, 0.0),
                Complex64::new(-s, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        }
    }

    pub fn amplitudes(&self) -> [Complex64; 4] {
        self.amps
    }

    /// Amplitudes as a 2x2 matrix: entry (j, k) multiplies |jk>.
    pub fn amplitude_matrix(&self) -> Mat2 {
        Mat2::new([[self.amps[0], self.amps[1]], [self.amps[2], self.amps[3]]])
    }

    pub fn from_amplitude_matrix(m: &Mat2) -> Result<Self> {
        TwoQubitState::new([m.m[0][0], m.m[0][1], m.m[1][0], m.m[1][1]])
    }

    /// <self|other>
    pub fn inner(&self, other: &TwoQubitState) -> Complex64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Applies a local operator pair (a on qubit 1, b on qubit 2).
    /// Both must be unitary for the result to stay normalized.
    pub fn apply_local(&self, a: &Mat2, b: &Mat2) -> Result<Self> {
        let out = a.mul(&self.amplitude_matrix()).mul(&b.transpose());
        TwoQubitState::from_amplitude_matrix(&out)
    }

    /// Concurrence 2|ad - bc| of the pure state (a, b, c, d).
    pub fn concurrence(&self) -> f64 {
        let [a, b, c, d] = self.amps;
        (2.0 * (a * d - b * c).norm()).clamp(0.0, 1.0)
    }
}

/// |n> tensor |n> for a single-qubit state |n>.
pub fn tensor_square(n: &PureQubit) -> TwoQubitState {
    let [c0, c1] = n.amplitudes();
    TwoQubitState {
        amps: [c0 * c0, c0 * c1, c1 * c0, c1 * c1],
    }
}

//! The tetrahedron guess frame.
//!
//! The four base states are |up_1> = |0> and
//! |up_j> = 1/sqrt(3) |0> + sqrt(2/3) e^{i alpha_j} |1>, j = 2, 3, 4,
//! with alpha = 0, 2pi/3, 4pi/3. Their Bloch vectors form a regular
//! tetrahedron (pairwise dot products -1/3). An optional rotation turns
//! the whole frame; it acts on the states through its SU(2) lift so the
//! relative phases that make the collective basis orthonormal survive.

use num_complex::Complex64;

use crate::bloch::{BlochVector, Rotation3};
use crate::error::Result;
use crate::linalg::Mat2;
use crate::qubit::PureQubit;

/// Phases of the three equatorial-belt base states.
pub const TETRAHEDRON_ALPHAS: [f64; 3] = [
    0.0,
    2.0 * std::f64::consts::FRAC_PI_3,
    4.0 * std::f64::consts::FRAC_PI_3,
];

/// Raw amplitude pairs of the four base states, phases included.
pub(crate) fn base_state_amplitudes() -> [[Complex64; 2]; 4] {
    let c0 = 1.0 / 3.0f64.sqrt();
    let c1 = (2.0f64 / 3.0).sqrt();
    let mut out = [[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]; 4];
    for (j, alpha) in TETRAHEDRON_ALPHAS.iter().enumerate() {
        out[j + 1] = [Complex64::new(c0, 0.0), Complex64::from_polar(c1, *alpha)];
    }
    out
}

/// Four tetrahedron states plus the rotation that placed them.
#[derive(Debug, Clone)]
pub struct TetrahedronFrame {
    states: [PureQubit; 4],
    bloch: [BlochVector; 4],
    rotation: Rotation3,
    spin: Mat2,
}

impl TetrahedronFrame {
    /// Builds the frame, optionally rotated. The rotation must be a proper
    /// rotation (checked to 1e-10 by `Rotation3::from_matrix`).
    pub fn new(rotation: Option<Rotation3>) -> Result<Self> {
        let rotation = rotation.unwrap_or_else(Rotation3::identity);
        let spin = rotation.su2();
        let mut states = [PureQubit::zero(); 4];
        let mut bloch = [BlochVector::new(0.0, 0.0, 1.0); 4];
        for (i, base) in base_state_amplitudes().iter().enumerate() {
            let rotated = spin.apply(*base);
            states[i] = PureQubit::from_amplitudes(rotated)?;
            bloch[i] = states[i].bloch();
        }
        Ok(TetrahedronFrame {
            states,
            bloch,
            rotation,
            spin,
        })
    }

    pub fn identity() -> Self {
        TetrahedronFrame::new(None).expect("identity frame is always valid")
    }

    pub fn states(&self) -> &[PureQubit; 4] {
        &self.states
    }

    pub fn state(&self, index: usize) -> &PureQubit {
        &self.states[index]
    }

    pub fn bloch_vectors(&self) -> &[BlochVector; 4] {
        &self.bloch
    }

    pub fn rotation(&self) -> &Rotation3 {
        &self.rotation
    }

    /// The SU(2) unitary implementing the frame rotation.
    pub fn spin(&self) -> &Mat2 {
        &self.spin
    }
}

//! The collective measurement basis.
//!
//! |MP_1> =  1/2 |S> + sqrt(3)/2 |up_1 up_1>
//! |MP_j> = -1/2 |S> + sqrt(3)/2 |up_j up_j>, j = 2, 3, 4,
//!
//! an orthonormal basis of the two-qubit space whose elements all have
//! concurrence 1/4. Rotated frames reuse the base construction and apply
//! the frame's SU(2) lift to both qubits, which preserves orthonormality
//! exactly.

use crate::error::{Error, Result};
use crate::frame::{base_state_amplitudes, TetrahedronFrame};
use crate::qubit::PureQubit;
use crate::twoqubit::{tensor_square, TwoQubitState};

/// Builds the family s |S> (with the +,-,-,- sign pattern) + w |up_i up_i>
/// over the frame's tetrahedron, s^2 + w^2 = 1.
fn singlet_tetra_family(frame: &TetrahedronFrame, s: f64, w: f64) -> [TwoQubitState; 4] {
    let singlet = TwoQubitState::singlet().amplitudes();
    let spin = frame.spin();
    let mut states = [TwoQubitState::singlet(); 4];
    for (i, base) in base_state_amplitudes().iter().enumerate() {
        let sign = if i == 0 { s } else { -s };
        // Doubled base state |up_i up_i> with its construction phases.
        let mut amps = [num_complex::Complex64::new(0.0, 0.0); 4];
        for j in 0..2 {
            for k in 0..2 {
                amps[2 * j + k] = base[j] * base[k];
            }
        }
        for (a, sv) in amps.iter_mut().zip(singlet.iter()) {
            *a = *a * w + sv * sign;
        }
        let base_state = TwoQubitState::new(amps).expect("family states are normalized");
        states[i] = base_state
            .apply_local(spin, spin)
            .expect("unitary rotation preserves the norm");
    }
    states
}

/// The device's projection targets at concurrence `c`:
/// +-sqrt(c)|S> + sqrt(1-c)|up_i up_i>. Orthogonal exactly at c = 1/4,
/// where they coincide with the MP basis.
pub fn projection_targets(frame: &TetrahedronFrame, c: f64) -> Result<[TwoQubitState; 4]> {
    if !(c > 0.0 && c <= 1.0) {
        return Err(Error::domain(format!(
            "projection concurrence must lie in (0, 1], got {c}"
        )));
    }
    Ok(singlet_tetra_family(frame, c.sqrt(), (1.0 - c).sqrt()))
}

/// The four MP states together with the frame that generated them.
#[derive(Debug, Clone)]
pub struct MpBasis {
    states: [TwoQubitState; 4],
    frame: TetrahedronFrame,
}

impl MpBasis {
    pub fn new(frame: &TetrahedronFrame) -> Self {
        MpBasis {
            states: singlet_tetra_family(frame, 0.5, 3.0f64.sqrt() / 2.0),
            frame: frame.clone(),
        }
    }

    pub fn states(&self) -> &[TwoQubitState; 4] {
        &self.states
    }

    pub fn state(&self, index: usize) -> &TwoQubitState {
        &self.states[index]
    }

    pub fn frame(&self) -> &TetrahedronFrame {
        &self.frame
    }
}

/// Born probabilities P(i|n) = |<MP_i|n n>|^2 of the ideal collective
/// measurement on the doubled input |n> tensor |n>.
pub fn collective_outcome_probs(basis: &MpBasis, n: &PureQubit) -> [f64; 4] {
    let doubled = tensor_square(n);
    let mut out = [0.0; 4];
    for (p, mp) in out.iter_mut().zip(basis.states.iter()) {
        *p = mp.inner(&doubled).norm_sqr();
    }
    out
}

//! Single-qubit pure states parameterized on the Bloch sphere.

use num_complex::Complex64;
use rand::Rng;

use crate::bloch::BlochVector;
use crate::error::{Error, Result};

const TAU: f64 = std::f64::consts::TAU;

/// A pure qubit state cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>,
/// with |0> = |H> and |1> = |V| in the polarization encoding.
///
/// The global phase is fixed by keeping the |0> amplitude real and
/// nonnegative, so states compare canonically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureQubit {
    theta: f64,
    phi: f64,
    c0: f64,
    c1: Complex64,
}

impl PureQubit {
    /// Builds the state from polar angle theta in [0, pi] and azimuth
    /// phi in [0, 2pi).
    pub fn from_angles(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=std::f64::consts::PI).contains(&theta) || !theta.is_finite() {
            return Err(Error::domain(format!(
                "theta must lie in [0, pi], got {theta}"
            )));
        }
        if !(0.0..TAU).contains(&phi) || !phi.is_finite() {
            return Err(Error::domain(format!(
                "phi must lie in [0, 2pi), got {phi}"
            )));
        }
        let c0 = (theta / 2.0).cos();
        let s = (theta / 2.0).sin();
        // sin(0) == 0 exactly, so theta = 0 yields amplitudes (1, 0)
        // regardless of phi.
        let c1 = Complex64::from_polar(s, phi);
        Ok(PureQubit { theta, phi, c0, c1 })
    }

    /// Canonicalizes arbitrary normalized amplitudes (global phase is
    /// dropped). Errors if the amplitudes are not normalized to 1e-9.
    pub fn from_amplitudes(amps: [Complex64; 2]) -> Result<Self> {
        let norm_sqr = amps[0].norm_sqr() + amps[1].norm_sqr();
        if (norm_sqr - 1.0).abs() > 1e-9 {
            return Err(Error::domain(format!(
                "amplitudes are not normalized (|psi|^2 = {norm_sqr})"
            )));
        }
        let r0 = amps[0].norm();
        let theta = 2.0 * amps[1].norm().atan2(r0);
        let phi = if amps[1].norm() < 1e-300 {
            0.0
        } else {
            let rel = amps[1].arg() - if r0 > 0.0 { amps[0].arg() } else { 0.0 };
            rel.rem_euclid(TAU)
        };
        PureQubit::from_angles(theta.clamp(0.0, std::f64::consts::PI), wrap_phi(phi))
    }

    /// State at the given Bloch direction; the vector is normalized first.
    pub fn from_bloch(v: &BlochVector) -> Result<Self> {
        let n = v.norm();
        if n < 1e-12 {
            return Err(Error::domain(
                "cannot build a pure state from a zero Bloch vector",
            ));
        }
        let theta = (v.z / n).clamp(-1.0, 1.0).acos();
        let phi = if v.x == 0.0 && v.y == 0.0 {
            0.0
        } else {
            v.y.atan2(v.x).rem_euclid(TAU)
        };
        PureQubit::from_angles(theta, wrap_phi(phi))
    }

    pub fn zero() -> Self {
        PureQubit::from_angles(0.0, 0.0).unwrap()
    }

    pub fn one() -> Self {
        PureQubit::from_angles(std::f64::consts::PI, 0.0).unwrap()
    }

    /// |D> = (|H> + |V>)/sqrt(2)
    pub fn diagonal() -> Self {
        PureQubit::from_angles(std::f64::consts::FRAC_PI_2, 0.0).unwrap()
    }

    /// |A> = (|H> - |V>)/sqrt(2)
    pub fn antidiagonal() -> Self {
        PureQubit::from_angles(std::f64::consts::FRAC_PI_2, std::f64::consts::PI).unwrap()
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn amplitudes(&self) -> [Complex64; 2] {
        [Complex64::new(self.c0, 0.0), self.c1]
    }

    /// <self|other>
    pub fn inner(&self, other: &PureQubit) -> Complex64 {
        Complex64::new(self.c0, 0.0) * other.amplitudes()[0] + self.c1.conj() * other.c1
    }

    pub fn bloch(&self) -> BlochVector {
        let cross = 2.0 * self.c1 * self.c0; // 2 conj(c0) c1 with c0 real
        BlochVector::new(cross.re, cross.im, self.c0 * self.c0 - self.c1.norm_sqr())
    }
}

fn wrap_phi(phi: f64) -> f64 {
    // rem_euclid can return exactly 2pi when the input is a tiny negative
    // number; fold that back to zero.
    if phi >= TAU {
        phi - TAU
    } else {
        phi
    }
}

/// |<a|b>|^2, clamped to [0, 1].
pub fn fidelity_pure(a: &PureQubit, b: &PureQubit) -> f64 {
    a.inner(b).norm_sqr().clamp(0.0, 1.0)
}

/// Draws a Haar-uniform pure state: cos(theta) uniform on [-1, 1],
/// phi uniform on [0, 2pi).
pub fn haar_random_qubit<R: Rng + ?Sized>(rng: &mut R) -> PureQubit {
    let u: f64 = rng.random();
    let theta = (1.0 - 2.0 * u).clamp(-1.0, 1.0).acos();
    let phi: f64 = rng.random::<f64>() * TAU;
    PureQubit::from_angles(theta, wrap_phi(phi)).expect("sampled angles are in range")
}

//! Physical model of the two-photon projection device: a partial polarizer
//! in one input arm, per-setting local unitaries, an optional residual
//! unitary from imperfect fiber compensation, and a beamsplitter where a
//! coincidence between opposite output ports heralds the projection.
//!
//! For input amplitudes psi and post-element amplitudes psi' (index j =
//! polarization in arm 1, k = arm 2), the coincidence probability at a
//! beamsplitter with power transmittance T is
//!
//!   sum_{jk} | T psi'_{jk} - (1 - T) psi'_{kj} |^2 ,
//!
//! which at T = 1/2 reduces to |<S|psi'>|^2, the singlet projection. With
//! distinguishable photons (long relative delay) the interference term is
//! absent and the coincidence probability is (T^2 + (1-T)^2) |psi'|^2.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::Mat2;
use crate::mp::MpBasis;
use crate::twoqubit::TwoQubitState;

/// Polarization-dependent attenuator diag(t_H, t_V) acting on arm 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialPolarizer {
    t_h: f64,
    t_v: f64,
}

impl PartialPolarizer {
    pub fn new(t_h: f64, t_v: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&t_h) || !(0.0..=1.0).contains(&t_v) {
            return Err(Error::domain(format!(
                "transmission amplitudes must lie in [0, 1], got ({t_h}, {t_v})"
            )));
        }
        if t_h == 0.0 && t_v == 0.0 {
            return Err(Error::domain("polarizer cannot block both polarizations"));
        }
        Ok(PartialPolarizer { t_h, t_v })
    }

    /// Fully transparent element.
    pub fn transparent() -> Self {
        PartialPolarizer { t_h: 1.0, t_v: 1.0 }
    }

    /// The polarizer realizing a projection of concurrence `c`, normalized
    /// so the stronger arm transmits fully: (t_H, t_V) = ((1 - sqrt(1 - c^2))/c, 1).
    pub fn for_concurrence(c: f64) -> Result<Self> {
        if !(c > 0.0 && c <= 1.0) {
            return Err(Error::domain(format!(
                "concurrence must lie in (0, 1], got {c}"
            )));
        }
        let t_h = (1.0 - (1.0 - c * c).max(0.0).sqrt()) / c;
        PartialPolarizer::new(t_h, 1.0)
    }

    pub fn t_h(&self) -> f64 {
        self.t_h
    }

    pub fn t_v(&self) -> f64 {
        self.t_v
    }

    /// Concurrence 2 t_H t_V / (t_H^2 + t_V^2) of the projection this
    /// polarizer turns the singlet into.
    pub fn concurrence(&self) -> f64 {
        2.0 * self.t_h * self.t_v / (self.t_h * self.t_h + self.t_v * self.t_v)
    }

    /// Power extinction ratio between the favored and suppressed
    /// polarizations, max(t)^2 / min(t)^2. Infinite for a full polarizer.
    pub fn extinction_ratio(&self) -> f64 {
        let hi = self.t_h.max(self.t_v).powi(2);
        let lo = self.t_h.min(self.t_v).powi(2);
        hi / lo
    }

    pub fn matrix(&self) -> Mat2 {
        Mat2::diag(Complex64::new(self.t_h, 0.0), Complex64::new(self.t_v, 0.0))
    }
}

/// Projection efficiency eta = 1/(1 + sqrt(1 - C^2)): the success
/// probability of the device projecting a pair that is already in the
/// target state.
pub fn efficiency(c: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::domain(format!(
            "concurrence must lie in [0, 1], got {c}"
        )));
    }
    Ok(1.0 / (1.0 + (1.0 - c * c).max(0.0).sqrt()))
}

/// The per-setting local unitaries (arm 1, arm 2).
#[derive(Debug, Clone, Copy)]
pub struct SettingPair {
    pub arm1: Mat2,
    pub arm2: Mat2,
}

/// Everything between state preparation and the detectors.
#[derive(Debug, Clone)]
pub struct DeviceModel {
    transmittance: f64,
    polarizer: PartialPolarizer,
    settings: [SettingPair; 4],
    imperfection: Mat2,
    distinguishable: bool,
    /// Cached arm-1 chains imperfection * W * U_A, one per setting.
    arm1: [Mat2; 4],
}

impl DeviceModel {
    pub fn new(
        transmittance: f64,
        polarizer: PartialPolarizer,
        settings: [SettingPair; 4],
    ) -> Result<Self> {
        if !(0.0..=1.0).contains(&transmittance) {
            return Err(Error::domain(format!(
                "beamsplitter transmittance must lie in [0, 1], got {transmittance}"
            )));
        }
        let mut device = DeviceModel {
            transmittance,
            polarizer,
            settings,
            imperfection: Mat2::identity(),
            distinguishable: false,
            arm1: [Mat2::identity(); 4],
        };
        device.rebuild_arm1();
        Ok(device)
    }

    /// The ideal device for a basis: balanced beamsplitter, the polarizer
    /// matched to the basis concurrence, aligned setting unitaries, no
    /// imperfection.
    pub fn ideal_for(basis: &MpBasis) -> Result<Self> {
        let polarizer = PartialPolarizer::for_concurrence(basis.state(0).concurrence())?;
        let settings = setting_unitaries_for(basis, &polarizer)?;
        DeviceModel::new(0.5, polarizer, settings)
    }

    /// A bare device with identity setting unitaries, for raw
    /// interference checks.
    pub fn bare(transmittance: f64, polarizer: PartialPolarizer) -> Result<Self> {
        let id = SettingPair {
            arm1: Mat2::identity(),
            arm2: Mat2::identity(),
        };
        DeviceModel::new(transmittance, polarizer, [id; 4])
    }

    pub fn with_imperfection(mut self, u: Mat2) -> Result<Self> {
        if !u.is_unitary(1e-10) {
            return Err(Error::domain("imperfection operator must be unitary"));
        }
        self.imperfection = u;
        self.rebuild_arm1();
        Ok(self)
    }

    pub fn with_distinguishable(mut self, distinguishable: bool) -> Self {
        self.distinguishable = distinguishable;
        self
    }

    fn rebuild_arm1(&mut self) {
        let w = self.polarizer.matrix();
        for (cached, setting) in self.arm1.iter_mut().zip(self.settings.iter()) {
            *cached = self.imperfection.mul(&w).mul(&setting.arm1);
        }
    }

    pub fn transmittance(&self) -> f64 {
        self.transmittance
    }

    pub fn polarizer(&self) -> &PartialPolarizer {
        &self.polarizer
    }

    pub fn settings(&self) -> &[SettingPair; 4] {
        &self.settings
    }

    pub fn imperfection(&self) -> &Mat2 {
        &self.imperfection
    }

    pub fn distinguishable(&self) -> bool {
        self.distinguishable
    }

    /// Coincidence probability for `input` at `setting` (1..=4), in the
    /// device's configured interference mode.
    pub fn coincidence_prob(&self, setting: usize, input: &TwoQubitState) -> Result<f64> {
        self.coincidence_prob_mode(setting, input, self.distinguishable)
    }

    /// Same, with the interference mode chosen explicitly.
    pub fn coincidence_prob_mode(
        &self,
        setting: usize,
        input: &TwoQubitState,
        distinguishable: bool,
    ) -> Result<f64> {
        if !(1..=4).contains(&setting) {
            return Err(Error::domain(format!(
                "setting must be 1..=4, got {setting}"
            )));
        }
        let pair = &self.settings[setting - 1];
        let post = self.arm1[setting - 1]
            .mul(&input.amplitude_matrix())
            .mul(&pair.arm2.transpose());
        let t = self.transmittance;
        let r = 1.0 - t;
        if distinguishable {
            // No two-photon interference: both transmitted or both
            // reflected, independent of polarization.
            return Ok((t * t + r * r) * post.norm_sqr());
        }
        let mut p = 0.0;
        for j in 0..2 {
            for k in 0..2 {
                p += (post.m[j][k] * t - post.m[k][j] * r).norm_sqr();
            }
        }
        Ok(p)
    }
}

/// Builds, for every target state, the local unitary pair (U_A, U_B) that
/// aligns the device's effective projection vector
/// (U_A^dag W (x) U_B^dag)|S> with that target.
///
/// The construction matches singular value decompositions: with
/// W S = U_W D_W V_W^dag and target M = U_M D_M V_M^dag (as amplitude
/// matrices), taking U_A = U_W U_M^dag and U_B = conj(V_W V_M^dag) makes
/// the projection vector exactly proportional to M whenever the singular
/// value ratios agree, i.e. whenever the polarizer concurrence equals the
/// target concurrence.
pub fn setting_unitaries_for_targets(
    targets: &[TwoQubitState; 4],
    polarizer: &PartialPolarizer,
) -> Result<[SettingPair; 4]> {
    let k = polarizer
        .matrix()
        .mul(&TwoQubitState::singlet().amplitude_matrix());
    let (_, u_w, v_w) = k.svd();
    let id = SettingPair {
        arm1: Mat2::identity(),
        arm2: Mat2::identity(),
    };
    let mut out = [id; 4];
    for (i, slot) in out.iter_mut().enumerate() {
        let target = &targets[i];
        let mismatch = (polarizer.concurrence() - target.concurrence()).abs();
        if mismatch > 1e-10 {
            return Err(Error::domain(format!(
                "polarizer concurrence {} does not match target concurrence {} (setting {})",
                polarizer.concurrence(),
                target.concurrence(),
                i + 1
            )));
        }
        let (_, u_m, v_m) = target.amplitude_matrix().svd();
        let arm1 = u_w.mul(&u_m.adjoint());
        let arm2 = v_w.mul(&v_m.adjoint()).conj();
        *slot = SettingPair { arm1, arm2 };
    }
    Ok(out)
}

/// `setting_unitaries_for_targets` for the MP basis itself.
pub fn setting_unitaries_for(
    basis: &MpBasis,
    polarizer: &PartialPolarizer,
) -> Result<[SettingPair; 4]> {
    setting_unitaries_for_targets(basis.states(), polarizer)
}

/// The unnormalized effective projection vector
/// (U_A^dag W^dag U~^dag (x) U_B^dag)|S> of a device setting; coincidence
/// at a balanced beamsplitter equals |<phi|input>|^2.
pub fn effective_projection_vector(device: &DeviceModel, setting: usize) -> Result<[Complex64; 4]> {
    if !(1..=4).contains(&setting) {
        return Err(Error::domain(format!(
            "setting must be 1..=4, got {setting}"
        )));
    }
    let pair = &device.settings[setting - 1];
    let chain = device
        .imperfection
        .mul(&device.polarizer.matrix())
        .mul(&pair.arm1);
    let m = chain
        .adjoint()
        .mul(&TwoQubitState::singlet().amplitude_matrix())
        .mul(&pair.arm2.conj());
    Ok([m.m[0][0], m.m[0][1], m.m[1][0], m.m[1][1]])
}

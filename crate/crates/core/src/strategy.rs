//! Measurement strategies for the two-copy guessing game.

use crate::device::DeviceModel;
use crate::error::{Error, Result};
use crate::locc::{locc_guess, locc_outcome_probs};
use crate::mp::MpBasis;
use crate::qubit::PureQubit;
use crate::twoqubit::tensor_square;

/// How the two copies are measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrategyKind {
    /// The entangling MP-basis projection via HOM interference.
    Collective,
    /// Separate single-photon measurements in the {H,V} and {D,A} bases.
    Locc,
    /// The collective setup with a long relative delay: polarizer loss and
    /// classical routing survive, two-photon interference does not.
    SuppressedEntanglement,
}

/// Normalized outcome probabilities for input |n> tensor |n>.
///
/// Collective and suppressed-entanglement strategies take the four
/// per-setting coincidence probabilities and renormalize them to sum one,
/// modeling post-selection on coincidences; the LOCC strategy returns its
/// Born probabilities directly.
pub fn strategy_outcome_probs(
    kind: StrategyKind,
    device: &DeviceModel,
    basis: &MpBasis,
    n: &PureQubit,
) -> Result<[f64; 4]> {
    match kind {
        StrategyKind::Locc => Ok(locc_outcome_probs(n)),
        StrategyKind::Collective | StrategyKind::SuppressedEntanglement => {
            let _ = basis; // settings already encode the basis
            let distinguishable = kind == StrategyKind::SuppressedEntanglement;
            let doubled = tensor_square(n);
            let mut probs = [0.0; 4];
            let mut total = 0.0;
            for (i, p) in probs.iter_mut().enumerate() {
                *p = device.coincidence_prob_mode(i + 1, &doubled, distinguishable)?;
                total += *p;
            }
            if total <= 1e-300 {
                return Err(Error::degenerate(
                    "all four coincidence probabilities vanish for this input",
                ));
            }
            for p in probs.iter_mut() {
                *p /= total;
            }
            Ok(probs)
        }
    }
}

/// The guess associated with outcome `index` (1..=4): the frame vertex for
/// the coincidence strategies, the bisector state for LOCC.
pub fn strategy_guess(kind: StrategyKind, basis: &MpBasis, index: usize) -> Result<PureQubit> {
    if !(1..=4).contains(&index) {
        return Err(Error::domain(format!(
            "outcome index must be 1..=4, got {index}"
        )));
    }
    match kind {
        StrategyKind::Locc => locc_guess(index),
        StrategyKind::Collective | StrategyKind::SuppressedEntanglement => {
            Ok(*basis.frame().state(index - 1))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::device::{setting_unitaries_for, PartialPolarizer};
    use crate::frame::TetrahedronFrame;
    use crate::qubit::haar_random_qubit;
    use crate::seed::task_rng;

    const EPS: f64 = 1e-12;

    fn ideal() -> (MpBasis, DeviceModel) {
        let basis = MpBasis::new(&TetrahedronFrame::identity());
        let device = DeviceModel::ideal_for(&basis).unwrap();
        (basis, device)
    }

    #[test]
    fn collective_probs_match_ideal_projection() {
        let (basis, device) = ideal();
        let p = strategy_outcome_probs(
            StrategyKind::Collective,
            &device,
            &basis,
            &PureQubit::zero(),
        )
        .unwrap();
        // The uniform efficiency cancels in the renormalization.
        assert!((p[0] - 0.75).abs() < 1e-10);
        for v in &p[1..] {
            assert!((v - 1.0 / 12.0).abs() < 1e-10);
        }
    }

    #[test]
    fn locc_passthrough() {
        let (basis, device) = ideal();
        let p = strategy_outcome_probs(StrategyKind::Locc, &device, &basis, &PureQubit::zero())
            .unwrap();
        assert!((p[0] - 0.5).abs() < EPS);
        assert!((p[2] - 0.5).abs() < EPS);
    }

    #[test]
    fn probs_are_invariant_under_polarizer_rescaling() {
        let basis = MpBasis::new(&TetrahedronFrame::identity());
        let p1 = PartialPolarizer::for_concurrence(0.25).unwrap();
        let settings = setting_unitaries_for(&basis, &p1).unwrap();
        let scaled = PartialPolarizer::new(p1.t_h() * 0.6, p1.t_v() * 0.6).unwrap();
        let d1 = DeviceModel::new(0.5, p1, settings).unwrap();
        let d2 = DeviceModel::new(0.5, scaled, settings).unwrap();
        let mut rng = task_rng(21, 0);
        for _ in 0..100 {
            let n = haar_random_qubit(&mut rng);
            for kind in [
                StrategyKind::Collective,
                StrategyKind::SuppressedEntanglement,
            ] {
                let a = strategy_outcome_probs(kind, &d1, &basis, &n).unwrap();
                let b = strategy_outcome_probs(kind, &d2, &basis, &n).unwrap();
                for i in 0..4 {
                    assert!((a[i] - b[i]).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn suppressed_entanglement_matches_brute_force() {
        let (basis, device) = ideal();
        let mut rng = task_rng(22, 0);
        for _ in 0..100 {
            let n = haar_random_qubit(&mut rng);
            let got =
                strategy_outcome_probs(StrategyKind::SuppressedEntanglement, &device, &basis, &n)
                    .unwrap();
            // Brute force: || (U~ W U_A (x) U_B) |nn> ||^2, renormalized.
            let doubled = tensor_square(&n);
            let w = device.polarizer().matrix();
            let mut weights = [0.0; 4];
            for (i, wgt) in weights.iter_mut().enumerate() {
                let pair = &device.settings()[i];
                let chain = device.imperfection().mul(&w).mul(&pair.arm1);
                let post = chain
                    .mul(&doubled.amplitude_matrix())
                    .mul(&pair.arm2.transpose());
                *wgt = post.norm_sqr();
            }
            let total: f64 = weights.iter().sum();
            for i in 0..4 {
                assert!((got[i] - weights[i] / total).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn probabilities_sum_to_one() {
        let (basis, device) = ideal();
        let mut rng = task_rng(23, 0);
        for _ in 0..200 {
            let n = haar_random_qubit(&mut rng);
            for kind in [
                StrategyKind::Collective,
                StrategyKind::Locc,
                StrategyKind::SuppressedEntanglement,
            ] {
                let p = strategy_outcome_probs(kind, &device, &basis, &n).unwrap();
                let total: f64 = p.iter().sum();
                assert!((total - 1.0).abs() < EPS);
            }
        }
    }

    #[test]
    fn fully_blocked_input_is_degenerate() {
        // A full polarizer with identity settings annihilates |00>; every
        // setting then has coincidence probability zero.
        let basis = MpBasis::new(&TetrahedronFrame::identity());
        let blocking = PartialPolarizer::new(0.0, 1.0).unwrap();
        let device = DeviceModel::bare(0.5, blocking).unwrap();
        let err = strategy_outcome_probs(
            StrategyKind::SuppressedEntanglement,
            &device,
            &basis,
            &PureQubit::zero(),
        )
        .unwrap_err();
        assert!(matches!(err, crate::error::Error::Degenerate(_)));
    }

    #[test]
    fn guesses_point_at_frame_or_bisectors() {
        let (basis, _) = ideal();
        let g = strategy_guess(StrategyKind::Collective, &basis, 1).unwrap();
        assert_eq!(g, *basis.frame().state(0));
        let l = strategy_guess(StrategyKind::Locc, &basis, 2).unwrap();
        assert_eq!(l, locc_guess(2).unwrap());
        assert!(strategy_guess(StrategyKind::Collective, &basis, 5).is_err());
    }
}

//! The optimal local strategy for the two-copy game: one photon measured
//! in {|H>, |V>}, the other in {|D>, |A>}, and the guess placed on the
//! bisector of the two outcome states.

use crate::error::{Error, Result};
use crate::qubit::{fidelity_pure, PureQubit};

/// Joint outcome probabilities (P(D,H), P(D,V), P(A,H), P(A,V)) for the
/// product input |n> tensor |n>.
pub fn locc_outcome_probs(n: &PureQubit) -> [f64; 4] {
    let p_d = fidelity_pure(&PureQubit::diagonal(), n);
    let p_a = 1.0 - p_d;
    let p_h = fidelity_pure(&PureQubit::zero(), n);
    let p_v = 1.0 - p_h;
    [p_d * p_h, p_d * p_v, p_a * p_h, p_a * p_v]
}

/// Guess state for outcome `index` in 1..=4:
/// L_1 = cos(pi/8)|H> + sin(pi/8)|V>,  L_2 = cos(3pi/8)|H> + sin(3pi/8)|V>,
/// L_3, L_4 are their reflections through the H-V plane.
pub fn locc_guess(index: usize) -> Result<PureQubit> {
    let quarter = std::f64::consts::FRAC_PI_4;
    let (theta, phi) = match index {
        1 => (quarter, 0.0),
        2 => (3.0 * quarter, 0.0),
        3 => (quarter, std::f64::consts::PI),
        4 => (3.0 * quarter, std::f64::consts::PI),
        _ => {
            return Err(Error::domain(format!(
                "LOCC outcome index must be 1..=4, got {index}"
            )))
        }
    };
    PureQubit::from_angles(theta, phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qubit::haar_random_qubit;
    use crate::seed::task_rng;

    const EPS: f64 = 1e-12;

    #[test]
    fn probabilities_for_h_input() {
        let p = locc_outcome_probs(&PureQubit::zero());
        assert!((p[0] - 0.5).abs() < EPS);
        assert!(p[1].abs() < EPS);
        assert!((p[2] - 0.5).abs() < EPS);
        assert!(p[3].abs() < EPS);
    }

    #[test]
    fn probabilities_for_d_input() {
        let p = locc_outcome_probs(&PureQubit::diagonal());
        assert!((p[0] - 0.5).abs() < EPS);
        assert!((p[1] - 0.5).abs() < EPS);
        assert!(p[2].abs() < EPS);
        assert!(p[3].abs() < EPS);
    }

    #[test]
    fn probabilities_sum_to_one() {
        let mut rng = task_rng(16, 0);
        for _ in 0..500 {
            let n = haar_random_qubit(&mut rng);
            let total: f64 = locc_outcome_probs(&n).iter().sum();
            assert!((total - 1.0).abs() < EPS);
        }
    }

    #[test]
    fn guess_amplitudes() {
        let eighth = std::f64::consts::PI / 8.0;
        let l1 = locc_guess(1).unwrap();
        assert!((l1.amplitudes()[0].re - eighth.cos()).abs() < EPS);
        assert!((l1.amplitudes()[1].re - eighth.sin()).abs() < EPS);

        let l4 = locc_guess(4).unwrap();
        assert!((l4.amplitudes()[0].re - (3.0 * eighth).cos()).abs() < EPS);
        assert!((l4.amplitudes()[1].re + (3.0 * eighth).sin()).abs() < EPS);

        // F(L1, |H>) = cos^2(pi/8).
        let f = fidelity_pure(&l1, &PureQubit::zero());
        assert!((f - eighth.cos().powi(2)).abs() < EPS);
    }

    #[test]
    fn guess_index_out_of_range() {
        assert!(locc_guess(0).is_err());
        assert!(locc_guess(5).is_err());
    }
}

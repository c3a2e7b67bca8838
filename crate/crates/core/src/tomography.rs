//! Collective-measurement tomography: finite-sample data generation,
//! constrained maximum-likelihood reconstruction, and infidelity scaling.
//!
//! The ensemble of N_ens photons is split into N_ens/2 pairs, each pair
//! measured in one of the four collective settings; the estimate is the
//! pure product state maximizing the multinomial likelihood of the
//! observed setting counts.

use rand::Rng;
use rand_distr::{Binomial, Distribution};

use crate::bloch::BlochVector;
use crate::device::DeviceModel;
use crate::error::{Error, Result};
use crate::frame::TetrahedronFrame;
use crate::linalg::{pauli, swap_matrix, Mat4};
use crate::mp::MpBasis;
use crate::qubit::{fidelity_pure, PureQubit};
use crate::seed::task_rng;
use crate::strategy::{strategy_outcome_probs, StrategyKind};

/// Probabilities are clamped here before logarithms so zero-probability
/// outcomes with zero counts cannot poison the objective.
const PROB_FLOOR: f64 = 1e-300;

/// APG stopping criteria.
const GRAD_TOL: f64 = 1e-10;
const MAX_ITERATIONS: usize = 10_000;

/// Setting counts for one tomography run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OutcomeCounts {
    pub counts: [u64; 4],
}

impl OutcomeCounts {
    pub fn total_pairs(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Draws `pairs` collective-measurement outcomes for `state` as one
/// multinomial sample (sequential binomial decomposition).
pub fn sample_outcomes<R: Rng + ?Sized>(
    state: &PureQubit,
    pairs: u64,
    device: &DeviceModel,
    frame: &TetrahedronFrame,
    rng: &mut R,
) -> Result<OutcomeCounts> {
    if pairs == 0 {
        return Err(Error::domain("need at least one pair to sample"));
    }
    let basis = MpBasis::new(frame);
    let probs = strategy_outcome_probs(StrategyKind::Collective, device, &basis, state)?;
    let mut counts = [0u64; 4];
    let mut remaining = pairs;
    let mut tail_prob = 1.0;
    for i in 0..3 {
        if remaining == 0 {
            break;
        }
        let p = if tail_prob <= 0.0 {
            0.0
        } else {
            (probs[i] / tail_prob).clamp(0.0, 1.0)
        };
        let c = if p >= 1.0 {
            remaining
        } else if p <= 0.0 {
            0
        } else {
            let dist = Binomial::new(remaining, p)
                .map_err(|e| Error::numeric(format!("binomial setup failed: {e}")))?;
            dist.sample(rng)
        };
        counts[i] = c;
        remaining -= c;
        tail_prob -= probs[i];
    }
    counts[3] = remaining;
    Ok(OutcomeCounts { counts })
}

/// The four outcome weights q_i as exact quadratic polynomials in the
/// Bloch vector.
///
/// The coincidence weight at setting i is psi^dag E_i psi with
/// E_i = F_i^dag F_i, F_i = (T I - (1-T) SWAP) (A_i (x) B_i), and for the
/// product input |n(m)> tensor |n(m)> this becomes
/// Tr(E_i rho(m) (x) rho(m)) = sum_{ab} K_ab m_a m_b, m_0 = 1 --- a
/// quadratic form whose coefficients are Pauli traces of E_i.
#[derive(Debug, Clone)]
pub struct OutcomeModel {
    coeff: [[[f64; 4]; 4]; 4],
}

impl OutcomeModel {
    pub fn new(device: &DeviceModel) -> Self {
        let t = device.transmittance();
        let r = 1.0 - t;
        let mixer = Mat4::identity()
            .scale(num_complex::Complex64::new(t, 0.0))
            .add(&swap_matrix().scale(num_complex::Complex64::new(-r, 0.0)));
        let w = device.polarizer().matrix();
        let mut coeff = [[[0.0; 4]; 4]; 4];
        for (setting, k_out) in coeff.iter_mut().enumerate() {
            let pair = &device.settings()[setting];
            let arm1 = device.imperfection().mul(&w).mul(&pair.arm1);
            let f = mixer.mul(&Mat4::kron(&arm1, &pair.arm2));
            let e = f.adjoint().mul(&f);
            let mut k = [[0.0; 4]; 4];
            for a in 0..4 {
                for b in 0..4 {
                    let basis_op = Mat4::kron(&pauli(a), &pauli(b));
                    k[a][b] = e.trace_mul(&basis_op).re / 4.0;
                }
            }
            // Only the symmetric part contributes to m_a m_b.
            for a in 0..4 {
                for b in (a + 1)..4 {
                    let s = 0.5 * (k[a][b] + k[b][a]);
                    k[a][b] = s;
                    k[b][a] = s;
                }
            }
            *k_out = k;
        }
        OutcomeModel { coeff }
    }

    /// Raw weight of setting `i` at Bloch vector `m`.
    pub fn weight(&self, i: usize, m: &BlochVector) -> f64 {
        let mm = [1.0, m.x, m.y, m.z];
        let k = &self.coeff[i];
        let mut q = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                q += k[a][b] * mm[a] * mm[b];
            }
        }
        q
    }

    /// Gradient of `weight` with respect to (m_x, m_y, m_z).
    fn weight_gradient(&self, i: usize, m: &BlochVector) -> [f64; 3] {
        let mm = [1.0, m.x, m.y, m.z];
        let k = &self.coeff[i];
        let mut g = [0.0; 3];
        for (c, slot) in g.iter_mut().enumerate() {
            let mut acc = 0.0;
            for b in 0..4 {
                acc += k[c + 1][b] * mm[b];
            }
            *slot = 2.0 * acc;
        }
        g
    }

    /// Renormalized outcome probabilities at `m`.
    pub fn probabilities(&self, m: &BlochVector) -> [f64; 4] {
        let mut q = [0.0; 4];
        let mut total = 0.0;
        for i in 0..4 {
            q[i] = self.weight(i, m).max(0.0);
            total += q[i];
        }
        for v in q.iter_mut() {
            *v /= total.max(PROB_FLOOR);
        }
        q
    }

    fn log_likelihood(&self, m: &BlochVector, counts: &[f64; 4]) -> f64 {
        let total: f64 = counts.iter().sum();
        let mut q_total = 0.0;
        let mut ll = 0.0;
        for i in 0..4 {
            let q = self.weight(i, m).max(0.0);
            q_total += q;
            if counts[i] > 0.0 {
                ll += counts[i] * q.max(PROB_FLOOR).ln();
            }
        }
        ll - total * q_total.max(PROB_FLOOR).ln()
    }

    fn log_likelihood_gradient(&self, m: &BlochVector, counts: &[f64; 4]) -> [f64; 3] {
        let total: f64 = counts.iter().sum();
        let mut q_total = 0.0;
        let mut g_total = [0.0; 3];
        let mut g = [0.0; 3];
        for i in 0..4 {
            let q = self.weight(i, m).max(0.0);
            let gq = self.weight_gradient(i, m);
            q_total += q;
            for c in 0..3 {
                g_total[c] += gq[c];
            }
            if counts[i] > 0.0 {
                let scale = counts[i] / q.max(PROB_FLOOR);
                for c in 0..3 {
                    g[c] += scale * gq[c];
                }
            }
        }
        let scale = total / q_total.max(PROB_FLOOR);
        for c in 0..3 {
            g[c] -= scale * g_total[c];
        }
        g
    }
}

fn normalize(v: [f64; 3]) -> Option<BlochVector> {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    // A floored probability under a gradient can blow the step up past
    // f64 range; treat overflowed candidates as unusable rather than
    // letting inf/inf become a zero vector.
    if !n.is_finite() || n < 1e-14 {
        None
    } else {
        Some(BlochVector::new(v[0] / n, v[1] / n, v[2] / n))
    }
}

fn tangential_norm(m: &BlochVector, g: &[f64; 3]) -> f64 {
    let radial = m.x * g[0] + m.y * g[1] + m.z * g[2];
    let tx = g[0] - radial * m.x;
    let ty = g[1] - radial * m.y;
    let tz = g[2] - radial * m.z;
    (tx * tx + ty * ty + tz * tz).sqrt()
}

struct ApgOutcome {
    point: BlochVector,
    log_likelihood: f64,
}

/// Projected gradient ascent on the unit sphere with Nesterov-style
/// momentum; the momentum is restarted whenever a step fails to improve
/// the objective. Projection is renormalization onto the sphere, which is
/// the feasibility step for the purity constraint.
fn apg_maximize(model: &OutcomeModel, counts: &[f64; 4], start: BlochVector) -> Result<ApgOutcome> {
    let total: f64 = counts.iter().sum();
    let mut x = normalize([start.x, start.y, start.z])
        .ok_or_else(|| Error::domain("APG start must be a nonzero direction"))?;
    let mut x_prev = x;
    let mut momentum = 1.0f64;
    let mut step = 0.1 / total.max(1.0);
    let mut value = model.log_likelihood(&x, counts);
    if !value.is_finite() {
        return Err(Error::numeric(format!(
            "log-likelihood is not finite at the start point ({}, {}, {})",
            x.x, x.y, x.z
        )));
    }
    for iteration in 0..MAX_ITERATIONS {
        let grad_x = model.log_likelihood_gradient(&x, counts);
        if grad_x.iter().any(|g| !g.is_finite()) {
            return Err(Error::numeric(format!(
                "gradient diverged at iteration {iteration}; last iterate ({}, {}, {})",
                x.x, x.y, x.z
            )));
        }
        if tangential_norm(&x, &grad_x) < GRAD_TOL {
            return Ok(ApgOutcome {
                point: x,
                log_likelihood: value,
            });
        }

        let momentum_next = 0.5 * (1.0 + (1.0 + 4.0 * momentum * momentum).sqrt());
        let beta = (momentum - 1.0) / momentum_next;
        let y = normalize([
            x.x + beta * (x.x - x_prev.x),
            x.y + beta * (x.y - x_prev.y),
            x.z + beta * (x.z - x_prev.z),
        ])
        .unwrap_or(x);
        let grad_y = model.log_likelihood_gradient(&y, counts);

        // Backtracking from the momentum point, demanding monotonicity.
        let mut accepted = None;
        let mut s = step;
        for _ in 0..60 {
            if let Some(z) = normalize([
                y.x + s * grad_y[0],
                y.y + s * grad_y[1],
                y.z + s * grad_y[2],
            ]) {
                let candidate = model.log_likelihood(&z, counts);
                if candidate >= value {
                    accepted = Some((z, candidate, s));
                    break;
                }
            }
            s *= 0.5;
        }

        match accepted {
            Some((z, candidate, used)) => {
                x_prev = x;
                x = z;
                value = candidate;
                momentum = momentum_next;
                step = used * 1.5;
            }
            None => {
                // Momentum restart: plain gradient step from x.
                momentum = 1.0;
                let mut improved = None;
                let mut s = step;
                for _ in 0..60 {
                    if let Some(z) = normalize([
                        x.x + s * grad_x[0],
                        x.y + s * grad_x[1],
                        x.z + s * grad_x[2],
                    ]) {
                        let candidate = model.log_likelihood(&z, counts);
                        if candidate > value {
                            improved = Some((z, candidate, s));
                            break;
                        }
                    }
                    s *= 0.5;
                }
                match improved {
                    Some((z, candidate, used)) => {
                        x_prev = x;
                        x = z;
                        value = candidate;
                        step = used * 1.5;
                    }
                    None => {
                        // No ascent direction at floating-point resolution.
                        return Ok(ApgOutcome {
                            point: x,
                            log_likelihood: value,
                        });
                    }
                }
            }
        }
    }
    Ok(ApgOutcome {
        point: x,
        log_likelihood: value,
    })
}

/// Maximum-likelihood estimate from real-valued outcome weights.
///
/// Runs the APG from the fixed start schedule (the four frame vertices,
/// then the poles) and keeps the best final likelihood, which makes the
/// result deterministic even when small counts admit near-ties.
pub fn mle_reconstruct_weights(
    weights: &[f64; 4],
    frame: &TetrahedronFrame,
    device: &DeviceModel,
) -> Result<PureQubit> {
    if weights.iter().any(|c| !c.is_finite() || *c < 0.0) {
        return Err(Error::domain(
            "outcome weights must be finite and nonnegative",
        ));
    }
    if weights.iter().sum::<f64>() <= 0.0 {
        return Err(Error::domain("all outcome counts are zero"));
    }
    let model = OutcomeModel::new(device);
    let mut starts: Vec<BlochVector> = frame.bloch_vectors().to_vec();
    starts.push(BlochVector::new(0.0, 0.0, 1.0));
    starts.push(BlochVector::new(0.0, 0.0, -1.0));
    let mut best: Option<ApgOutcome> = None;
    for start in starts {
        let outcome = apg_maximize(&model, weights, start)?;
        let better = match &best {
            None => true,
            Some(b) => outcome.log_likelihood > b.log_likelihood,
        };
        if better {
            best = Some(outcome);
        }
    }
    let best = best.expect("at least one start ran");
    PureQubit::from_bloch(&best.point)
}

/// Maximum-likelihood estimate from measured counts.
pub fn mle_reconstruct(
    counts: &OutcomeCounts,
    frame: &TetrahedronFrame,
    device: &DeviceModel,
) -> Result<PureQubit> {
    let weights = [
        counts.counts[0] as f64,
        counts.counts[1] as f64,
        counts.counts[2] as f64,
        counts.counts[3] as f64,
    ];
    mle_reconstruct_weights(&weights, frame, device)
}

/// Which state the per-size estimates are compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceMode {
    /// The configured true state: the clean scaling benchmark.
    TrueState,
    /// The same repeat's estimate at the largest ensemble size, matching
    /// the experimental convention where the true state is unknown.
    LargestEnsemble,
}

/// Configuration of an infidelity-scaling sweep.
#[derive(Debug, Clone)]
pub struct TomographyConfig {
    pub true_state: PureQubit,
    /// Ascending even photon counts; pairs measured = N_ens / 2.
    pub ensemble_sizes: Vec<u64>,
    pub repeats: u32,
    pub seed: u64,
    pub device: DeviceModel,
    pub frame: TetrahedronFrame,
    pub reference: ReferenceMode,
}

/// One ensemble size on the scaling curve.
#[derive(Debug, Clone, Copy)]
pub struct CurvePoint {
    pub n_ens: u64,
    pub mean_infidelity: f64,
    /// Absent when a single repeat leaves the spread undefined.
    pub stderr: Option<f64>,
    pub repeats: u32,
}

/// Samples, reconstructs, and scores every (size, repeat) cell.
///
/// Substream `size_index * repeats + repeat` of the master seed drives
/// each cell, so cells are reproducible independently of evaluation order.
pub fn infidelity_curve(config: &TomographyConfig) -> Result<Vec<CurvePoint>> {
    if config.ensemble_sizes.is_empty() {
        return Err(Error::domain("at least one ensemble size is required"));
    }
    if config.repeats == 0 {
        return Err(Error::domain("repeats must be at least 1"));
    }
    for pair in config.ensemble_sizes.windows(2) {
        if pair[1] <= pair[0] {
            return Err(Error::domain("ensemble sizes must be strictly ascending"));
        }
    }
    for &n in &config.ensemble_sizes {
        if n % 2 != 0 || n < 4 {
            return Err(Error::domain(format!(
                "ensemble sizes must be even and at least 4, got {n}"
            )));
        }
    }

    let n_sizes = config.ensemble_sizes.len();
    let repeats = config.repeats as usize;
    let mut estimates: Vec<Vec<PureQubit>> = vec![Vec::with_capacity(repeats); n_sizes];
    for (size_index, &n_ens) in config.ensemble_sizes.iter().enumerate() {
        for repeat in 0..repeats {
            let stream = (size_index * repeats + repeat) as u64;
            let mut rng = task_rng(config.seed, stream);
            let counts = sample_outcomes(
                &config.true_state,
                n_ens / 2,
                &config.device,
                &config.frame,
                &mut rng,
            )?;
            let estimate = mle_reconstruct(&counts, &config.frame, &config.device)?;
            estimates[size_index].push(estimate);
        }
    }

    let mut curve = Vec::with_capacity(n_sizes);
    for (size_index, &n_ens) in config.ensemble_sizes.iter().enumerate() {
        let mut infidelities = Vec::with_capacity(repeats);
        for repeat in 0..repeats {
            let reference = match config.reference {
                ReferenceMode::TrueState => config.true_state,
                ReferenceMode::LargestEnsemble => estimates[n_sizes - 1][repeat],
            };
            let estimate = &estimates[size_index][repeat];
            // A state compared against itself (the largest-size reference)
            // is infidelity zero by construction, not one ulp off it.
            let f = if *estimate == reference {
                1.0
            } else {
                fidelity_pure(estimate, &reference)
            };
            infidelities.push(1.0 - f);
        }
        let n = infidelities.len() as f64;
        let mean = infidelities.iter().sum::<f64>() / n;
        let stderr = if repeats > 1 {
            let var = infidelities
                .iter()
                .map(|x| (x - mean) * (x - mean))
                .sum::<f64>()
                / (n - 1.0);
            Some((var / n).sqrt())
        } else {
            None
        };
        curve.push(CurvePoint {
            n_ens,
            mean_infidelity: mean,
            stderr,
            repeats: config.repeats,
        });
    }
    Ok(curve)
}

/// The optimal pure-qubit infidelity scaling, 1/N_ens.
pub fn gill_massar_reference(n_ens: u64) -> Result<f64> {
    if n_ens == 0 {
        return Err(Error::domain("ensemble size must be at least 1"));
    }
    Ok(1.0 / n_ens as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qubit::haar_random_qubit;

    fn ideal_setup() -> (TetrahedronFrame, DeviceModel) {
        let frame = TetrahedronFrame::identity();
        let device = DeviceModel::ideal_for(&MpBasis::new(&frame)).unwrap();
        (frame, device)
    }

    #[test]
    fn model_matches_device_on_the_sphere() {
        let (frame, device) = ideal_setup();
        let basis = MpBasis::new(&frame);
        let model = OutcomeModel::new(&device);
        let mut rng = task_rng(41, 0);
        for _ in 0..200 {
            let n = haar_random_qubit(&mut rng);
            let direct =
                strategy_outcome_probs(StrategyKind::Collective, &device, &basis, &n).unwrap();
            let via_model = model.probabilities(&n.bloch());
            for i in 0..4 {
                assert!(
                    (direct[i] - via_model[i]).abs() < 1e-12,
                    "setting {i}: {} vs {}",
                    direct[i],
                    via_model[i]
                );
            }
        }
    }

    #[test]
    fn model_matches_device_with_imperfection_and_rotation() {
        use crate::bloch::Rotation3;
        let frame = TetrahedronFrame::new(Some(Rotation3::from_euler_zyz(0.4, 1.0, -0.7))).unwrap();
        let basis = MpBasis::new(&frame);
        let device = DeviceModel::ideal_for(&basis)
            .unwrap()
            .with_imperfection(crate::linalg::Mat2::euler_zyz(0.2, 0.15, -0.1))
            .unwrap();
        let model = OutcomeModel::new(&device);
        let mut rng = task_rng(42, 0);
        for _ in 0..100 {
            let n = haar_random_qubit(&mut rng);
            let direct =
                strategy_outcome_probs(StrategyKind::Collective, &device, &basis, &n).unwrap();
            let via_model = model.probabilities(&n.bloch());
            for i in 0..4 {
                assert!((direct[i] - via_model[i]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sampling_is_deterministic_and_counts_add_up() {
        let (frame, device) = ideal_setup();
        let mut rng_a = task_rng(50, 3);
        let mut rng_b = task_rng(50, 3);
        let a = sample_outcomes(&PureQubit::zero(), 1200, &device, &frame, &mut rng_a).unwrap();
        let b = sample_outcomes(&PureQubit::zero(), 1200, &device, &frame, &mut rng_b).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.total_pairs(), 1200);
        // Setting-1 share fluctuates around 3/4.
        let share = a.counts[0] as f64 / 1200.0;
        assert!((share - 0.75).abs() < 0.04, "share {share}");
    }

    #[test]
    fn single_pair_yields_single_count() {
        let (frame, device) = ideal_setup();
        let mut rng = task_rng(51, 0);
        let c = sample_outcomes(&PureQubit::diagonal(), 1, &device, &frame, &mut rng).unwrap();
        assert_eq!(c.total_pairs(), 1);
        assert_eq!(c.counts.iter().filter(|&&x| x == 1).count(), 1);
    }

    #[test]
    fn exact_frequencies_recover_the_pole() {
        let (frame, device) = ideal_setup();
        let weights = [900.0, 100.0, 100.0, 100.0];
        let est = mle_reconstruct_weights(&weights, &frame, &device).unwrap();
        assert!(1.0 - fidelity_pure(&est, &PureQubit::zero()) < 1e-9);
    }

    #[test]
    fn exact_frequencies_recover_random_states() {
        let (frame, device) = ideal_setup();
        let basis = MpBasis::new(&frame);
        let mut rng = task_rng(52, 0);
        for _ in 0..100 {
            let truth = haar_random_qubit(&mut rng);
            let probs =
                strategy_outcome_probs(StrategyKind::Collective, &device, &basis, &truth).unwrap();
            let weights = [
                probs[0] * 5e4,
                probs[1] * 5e4,
                probs[2] * 5e4,
                probs[3] * 5e4,
            ];
            let est = mle_reconstruct_weights(&weights, &frame, &device).unwrap();
            let infidelity = 1.0 - fidelity_pure(&est, &truth);
            assert!(infidelity < 1e-9, "infidelity {infidelity}");
        }
    }

    #[test]
    fn estimate_is_invariant_under_count_scaling() {
        let (frame, device) = ideal_setup();
        let counts = OutcomeCounts {
            counts: [431, 97, 63, 109],
        };
        let scaled = OutcomeCounts {
            counts: [431 * 7, 97 * 7, 63 * 7, 109 * 7],
        };
        let a = mle_reconstruct(&counts, &frame, &device).unwrap();
        let b = mle_reconstruct(&scaled, &frame, &device).unwrap();
        assert!(1.0 - fidelity_pure(&a, &b) < 1e-10);
    }

    #[test]
    fn small_flat_counts_reconstruct() {
        // Regression: the pole-antipodal start has one exactly-zero
        // outcome weight; the floored gradient there must not derail the
        // optimizer into a non-finite iterate.
        let (frame, device) = ideal_setup();
        let counts = OutcomeCounts {
            counts: [6, 5, 4, 1],
        };
        let est = mle_reconstruct(&counts, &frame, &device).unwrap();
        assert!((est.bloch().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_counts_are_rejected() {
        let (frame, device) = ideal_setup();
        let counts = OutcomeCounts { counts: [0; 4] };
        assert!(mle_reconstruct(&counts, &frame, &device).is_err());
    }

    #[test]
    fn curve_shrinks_with_ensemble_size() {
        let (frame, device) = ideal_setup();
        let config = TomographyConfig {
            true_state: PureQubit::from_angles(1.1, 0.6).unwrap(),
            ensemble_sizes: vec![8, 64, 512],
            repeats: 40,
            seed: 77,
            device,
            frame,
            reference: ReferenceMode::TrueState,
        };
        let curve = infidelity_curve(&config).unwrap();
        assert_eq!(curve.len(), 3);
        assert!(curve[2].mean_infidelity < curve[0].mean_infidelity);
        for p in &curve {
            assert!(p.stderr.is_some());
        }
    }

    #[test]
    fn largest_reference_is_zero_at_the_top_size() {
        let (frame, device) = ideal_setup();
        let config = TomographyConfig {
            true_state: PureQubit::from_angles(2.0, 4.0).unwrap(),
            ensemble_sizes: vec![16, 128],
            repeats: 5,
            seed: 78,
            device,
            frame,
            reference: ReferenceMode::LargestEnsemble,
        };
        let curve = infidelity_curve(&config).unwrap();
        assert_eq!(curve[1].mean_infidelity, 0.0);
    }

    #[test]
    fn single_repeat_has_no_stderr() {
        let (frame, device) = ideal_setup();
        let config = TomographyConfig {
            true_state: PureQubit::diagonal(),
            ensemble_sizes: vec![32],
            repeats: 1,
            seed: 79,
            device,
            frame,
            reference: ReferenceMode::TrueState,
        };
        let curve = infidelity_curve(&config).unwrap();
        assert!(curve[0].stderr.is_none());
    }

    #[test]
    fn curve_rejects_bad_schedules() {
        let (frame, device) = ideal_setup();
        let base = TomographyConfig {
            true_state: PureQubit::zero(),
            ensemble_sizes: vec![8, 16],
            repeats: 1,
            seed: 0,
            device,
            frame,
            reference: ReferenceMode::TrueState,
        };
        let odd = TomographyConfig {
            ensemble_sizes: vec![8, 15],
            ..base.clone()
        };
        assert!(infidelity_curve(&odd).is_err());
        let tiny = TomographyConfig {
            ensemble_sizes: vec![2, 8],
            ..base.clone()
        };
        assert!(infidelity_curve(&tiny).is_err());
        let unsorted = TomographyConfig {
            ensemble_sizes: vec![16, 8],
            ..base
        };
        assert!(infidelity_curve(&unsorted).is_err());
    }

    #[test]
    fn gill_massar_values() {
        assert_eq!(gill_massar_reference(1).unwrap(), 1.0);
        assert_eq!(gill_massar_reference(100).unwrap(), 0.01);
        assert!((gill_massar_reference(2400).unwrap() - 1.0 / 2400.0).abs() < 1e-18);
        assert!(gill_massar_reference(0).is_err());
    }
}

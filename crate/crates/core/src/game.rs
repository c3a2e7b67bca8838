//! Monte Carlo engine and analytic expectations for the two-copy
//! state-guessing game.
//!
//! Each round draws a state from the prior, measures both copies with the
//! configured strategy, guesses from the outcome, and scores the fidelity
//! between truth and guess. The average fidelity is
//!
//!   F = integral P(n) dn sum_g P(g|n) (1 + n . n_g)/2 .

use rand::Rng;

use crate::device::DeviceModel;
use crate::error::{Error, Result};
use crate::frame::TetrahedronFrame;
use crate::mp::MpBasis;
use crate::quadrature::sphere_average;
use crate::qubit::{fidelity_pure, haar_random_qubit, PureQubit};
use crate::seed::task_rng;
use crate::strategy::{strategy_guess, strategy_outcome_probs, StrategyKind};

/// Trials per random substream; fixed so results do not depend on how
/// chunks are scheduled.
const TRIAL_CHUNK: u64 = 8192;

/// Quadrature order for uniform-sphere expectations.
const QUAD_POLAR: usize = 80;
const QUAD_AZIMUTH: usize = 160;

/// A state with its prior weight.
#[derive(Debug, Clone)]
pub struct WeightedState {
    pub state: PureQubit,
    pub weight: f64,
}

/// Prior distribution of the unknown state.
#[derive(Debug, Clone)]
pub enum Prior {
    /// Haar-uniform over the whole sphere.
    UniformSphere,
    /// Uniform over the four frame vertices.
    TetrahedronVertices,
    /// A fixed weighted set of states.
    FiniteSet(Vec<WeightedState>),
}

impl Prior {
    /// A finite set with uniform weights.
    pub fn finite_uniform(states: Vec<PureQubit>) -> Result<Prior> {
        if states.is_empty() {
            return Err(Error::domain("finite prior needs at least one state"));
        }
        let w = 1.0 / states.len() as f64;
        Ok(Prior::FiniteSet(
            states
                .into_iter()
                .map(|state| WeightedState { state, weight: w })
                .collect(),
        ))
    }

    fn validate(&self) -> Result<()> {
        if let Prior::FiniteSet(set) = self {
            if set.is_empty() {
                return Err(Error::domain("finite prior needs at least one state"));
            }
            let mut total = 0.0;
            for ws in set {
                if ws.weight < 0.0 {
                    return Err(Error::domain("prior weights must be nonnegative"));
                }
                total += ws.weight;
            }
            if (total - 1.0).abs() > 1e-9 {
                return Err(Error::domain(format!(
                    "prior weights must sum to 1 (got {total})"
                )));
            }
        }
        Ok(())
    }
}

/// Full description of a game run.
#[derive(Debug, Clone)]
pub struct GameConfig {
    pub prior: Prior,
    pub strategy: StrategyKind,
    pub trials: u64,
    pub seed: u64,
    pub device: DeviceModel,
    pub frame: TetrahedronFrame,
}

/// Per-state tallies for finite priors.
#[derive(Debug, Clone)]
pub struct PerStateStats {
    pub state: PureQubit,
    pub trials: u64,
    /// Conditional guess frequencies P(g|n).
    pub guess_freq: [f64; 4],
    pub mean_fidelity: f64,
}

/// Outcome of a Monte Carlo game.
#[derive(Debug, Clone)]
pub struct GameResult {
    pub average_fidelity: f64,
    pub standard_error: f64,
    /// One entry per prior state for finite priors; empty for the
    /// uniform-sphere prior.
    pub per_state: Vec<PerStateStats>,
}

/// Neumaier compensated accumulator, so reduction order cannot move the
/// reported values.
#[derive(Debug, Clone, Copy, Default)]
struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

fn draw_outcome<R: Rng + ?Sized>(probs: &[f64; 4], rng: &mut R) -> usize {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    for (i, p) in probs.iter().enumerate() {
        acc += p;
        if u < acc {
            return i + 1;
        }
    }
    4
}

/// Runs the Monte Carlo game. Deterministic for a fixed config and seed.
pub fn run_game(config: &GameConfig) -> Result<GameResult> {
    if config.trials == 0 {
        return Err(Error::domain("trials must be at least 1"));
    }
    config.prior.validate()?;
    let basis = MpBasis::new(&config.frame);
    let guesses: [PureQubit; 4] = {
        let mut out = [PureQubit::zero(); 4];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = strategy_guess(config.strategy, &basis, i + 1)?;
        }
        out
    };

    // Finite priors get per-state tallies; their cumulative weights drive
    // the draw.
    let finite: Option<Vec<WeightedState>> = match &config.prior {
        Prior::UniformSphere => None,
        Prior::TetrahedronVertices => Some(
            config
                .frame
                .states()
                .iter()
                .map(|s| WeightedState {
                    state: *s,
                    weight: 0.25,
                })
                .collect(),
        ),
        Prior::FiniteSet(set) => Some(set.clone()),
    };
    let cumulative: Option<Vec<f64>> = finite.as_ref().map(|set| {
        let mut acc = 0.0;
        set.iter()
            .map(|ws| {
                acc += ws.weight;
                acc
            })
            .collect()
    });

    let mut fid_sum = CompensatedSum::default();
    let mut fid_sq_sum = CompensatedSum::default();
    let n_states = finite.as_ref().map_or(0, |s| s.len());
    let mut state_trials = vec![0u64; n_states];
    let mut state_outcomes = vec![[0u64; 4]; n_states];
    let mut state_fid = vec![CompensatedSum::default(); n_states];

    let chunks = config.trials.div_ceil(TRIAL_CHUNK);
    for chunk in 0..chunks {
        let mut rng = task_rng(config.seed, chunk);
        let in_chunk = TRIAL_CHUNK.min(config.trials - chunk * TRIAL_CHUNK);
        for _ in 0..in_chunk {
            let (state, state_index) = match (&finite, &cumulative) {
                (Some(set), Some(cum)) => {
                    let u: f64 = rng.random();
                    let idx = cum.iter().position(|c| u < *c).unwrap_or(set.len() - 1);
                    (set[idx].state, Some(idx))
                }
                _ => (haar_random_qubit(&mut rng), None),
            };
            let probs = strategy_outcome_probs(config.strategy, &config.device, &basis, &state)?;
            let outcome = draw_outcome(&probs, &mut rng);
            let f = fidelity_pure(&state, &guesses[outcome - 1]);
            fid_sum.add(f);
            fid_sq_sum.add(f * f);
            if let Some(idx) = state_index {
                state_trials[idx] += 1;
                state_outcomes[idx][outcome - 1] += 1;
                state_fid[idx].add(f);
            }
        }
    }

    let n = config.trials as f64;
    let mean = fid_sum.value() / n;
    let variance = if config.trials > 1 {
        ((fid_sq_sum.value() - fid_sum.value() * fid_sum.value() / n) / (n - 1.0)).max(0.0)
    } else {
        0.0
    };
    let standard_error = (variance / n).sqrt();

    let per_state = finite
        .map(|set| {
            set.iter()
                .enumerate()
                .filter(|(i, _)| state_trials[*i] > 0)
                .map(|(i, ws)| {
                    let t = state_trials[i] as f64;
                    let mut freq = [0.0; 4];
                    for (f, c) in freq.iter_mut().zip(state_outcomes[i].iter()) {
                        *f = *c as f64 / t;
                    }
                    PerStateStats {
                        state: ws.state,
                        trials: state_trials[i],
                        guess_freq: freq,
                        mean_fidelity: state_fid[i].value() / t,
                    }
                })
                .collect()
        })
        .unwrap_or_default();

    Ok(GameResult {
        average_fidelity: mean,
        standard_error,
        per_state,
    })
}

/// The exact expectation the Monte Carlo game converges to: an analytic
/// sum for finite priors, sphere quadrature for the uniform prior.
pub fn expected_fidelity(
    prior: &Prior,
    strategy: StrategyKind,
    device: &DeviceModel,
    frame: &TetrahedronFrame,
) -> Result<f64> {
    prior.validate()?;
    let basis = MpBasis::new(frame);
    let guesses: [PureQubit; 4] = {
        let mut out = [PureQubit::zero(); 4];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = strategy_guess(strategy, &basis, i + 1)?;
        }
        out
    };
    let per_state = |state: &PureQubit| -> Result<f64> {
        let probs = strategy_outcome_probs(strategy, device, &basis, state)?;
        Ok(probs
            .iter()
            .zip(guesses.iter())
            .map(|(p, g)| p * fidelity_pure(state, g))
            .sum())
    };
    match prior {
        Prior::TetrahedronVertices => {
            let mut total = 0.0;
            for s in frame.states() {
                total += 0.25 * per_state(s)?;
            }
            Ok(total)
        }
        Prior::FiniteSet(set) => {
            let mut total = 0.0;
            for ws in set {
                total += ws.weight * per_state(&ws.state)?;
            }
            Ok(total)
        }
        Prior::UniformSphere => {
            let mut failure = None;
            let value =
                sphere_average(QUAD_POLAR, QUAD_AZIMUTH, |v| {
                    match PureQubit::from_bloch(v).and_then(|s| per_state(&s)) {
                        Ok(f) => f,
                        Err(e) => {
                            failure.get_or_insert(e);
                            f64::NAN
                        }
                    }
                });
            match failure {
                Some(e) => Err(e),
                None => Ok(value),
            }
        }
    }
}

/// Optimal collective average fidelity (N + 1)/(N + 2) for N copies under
/// the uniform prior.
pub fn optimal_collective_fidelity(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("the game needs at least one copy"));
    }
    Ok((n as f64 + 1.0) / (n as f64 + 2.0))
}

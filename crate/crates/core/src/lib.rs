//! Simulation of two-copy collective-measurement state estimation.
//!
//! Two identical photons carry two copies of an unknown polarization
//! qubit. A joint projection onto the MP basis (singlet/tetrahedron
//! superpositions) realized through Hong-Ou-Mandel interference and a
//! partial polarizer estimates the state better than any local strategy;
//! this crate models the states, the photonic device, the guessing game
//! benchmarks, and maximum-likelihood tomography built on the same
//! measurement.
//!
//! Layout:
//! - [`qubit`], [`twoqubit`], [`density`], [`bloch`], [`linalg`]: states,
//!   operators, fidelities, and the sphere geometry.
//! - [`frame`], [`mp`]: the tetrahedron frame and the collective basis.
//! - [`device`], [`locc`], [`strategy`]: the physical projection device
//!   and the measurement strategies.
//! - [`game`], [`imperfection`]: Monte Carlo games, analytic expectations,
//!   and the systematic-error model.
//! - [`tomography`], [`fit`]: finite-sample reconstruction and infidelity
//!   scaling.

pub mod bloch;
pub mod density;
pub mod device;
pub mod error;
pub mod fit;
pub mod frame;
pub mod game;
pub mod imperfection;
pub mod linalg;
pub mod locc;
pub mod mp;
pub mod quadrature;
pub mod qubit;
pub mod seed;
pub mod strategy;
pub mod tomography;
pub mod twoqubit;

pub use bloch::{BlochVector, Rotation3};
pub use density::{fidelity_mixed, infidelity_mixed, QubitDensityMatrix};
pub use device::{
    efficiency, setting_unitaries_for, setting_unitaries_for_targets, DeviceModel,
    PartialPolarizer, SettingPair,
};
pub use error::{Error, Result};
pub use fit::{fit_power_law, ScalingFit};
pub use frame::TetrahedronFrame;
pub use game::{
    expected_fidelity, optimal_collective_fidelity, run_game, GameConfig, GameResult,
    PerStateStats, Prior, WeightedState,
};
pub use imperfection::{corrected_fidelity_bound, fit_imperfection_unitary, ImperfectionTargets};
pub use linalg::{Mat2, SingleQubitOperator};
pub use locc::{locc_guess, locc_outcome_probs};
pub use mp::{collective_outcome_probs, projection_targets, MpBasis};
pub use qubit::{fidelity_pure, haar_random_qubit, PureQubit};
pub use strategy::{strategy_guess, strategy_outcome_probs, StrategyKind};
pub use tomography::{
    gill_massar_reference, infidelity_curve, mle_reconstruct, mle_reconstruct_weights,
    sample_outcomes, CurvePoint, OutcomeCounts, OutcomeModel, ReferenceMode, TomographyConfig,
};
pub use twoqubit::{tensor_square, TwoQubitState};

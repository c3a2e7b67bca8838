//! `mpsim game`: Monte Carlo runs of the guessing game.

use std::fs;
use std::path::PathBuf;

use clap::Args;
use mpsim_core::{
    expected_fidelity, fit_imperfection_unitary, run_game, DeviceModel, GameConfig,
    ImperfectionTargets, Prior, PureQubit, Rotation3, StrategyKind, TetrahedronFrame,
    WeightedState,
};
use serde_json::Value;

use crate::output::{parse_csv_floats, RunWriter};
use crate::CliError;

#[derive(Args)]
pub struct GameArgs {
    /// JSON config file; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Prior: genmp (uniform sphere), tetramp (frame vertices), or set.
    #[arg(long)]
    kind: Option<String>,
    /// Strategy: collective, locc, or supp-ent.
    #[arg(long)]
    strategy: Option<String>,
    /// Monte Carlo trials.
    #[arg(long)]
    trials: Option<u64>,
    /// Master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Projection concurrence of the device (default 0.25).
    #[arg(long)]
    concurrence: Option<f64>,
    /// Beamsplitter power transmittance (default 0.5).
    #[arg(long)]
    splitting: Option<f64>,
    /// Fit a residual unitary to "vV,vA" overlap targets and insert it.
    #[arg(long)]
    imperfection: Option<String>,
    /// Frame rotation as Z-Y-Z Euler angles "a,b,c" in radians.
    #[arg(long)]
    rotation: Option<String>,
    /// States file for --kind set: JSON array of {theta, phi[, weight]}.
    #[arg(long)]
    set: Option<PathBuf>,
    /// Output JSON path; the manifest lands next to it.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Reads --config if given, as a JSON object.
pub fn load_config_file(path: &Option<PathBuf>) -> Result<Value, CliError> {
    match path {
        None => Ok(Value::Null),
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", p.display())))?;
            let value: Value = serde_json::from_str(&text).map_err(|e| {
                CliError::usage(format!("config {} is not valid JSON: {e}", p.display()))
            })?;
            if !value.is_object() {
                return Err(CliError::usage("config file must hold a JSON object"));
            }
            Ok(value)
        }
    }
}

pub fn file_str(file: &Value, key: &str) -> Option<String> {
    file.get(key).and_then(|v| v.as_str()).map(str::to_owned)
}

pub fn file_u64(file: &Value, key: &str) -> Option<u64> {
    file.get(key).and_then(Value::as_u64)
}

pub fn file_f64(file: &Value, key: &str) -> Option<f64> {
    file.get(key).and_then(Value::as_f64)
}

pub fn required<T>(value: Option<T>, flag: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::usage(format!("--{flag} is required (flag or config file)")))
}

/// Shared device setup: rotation -> frame, concurrence/splitting ->
/// polarizer + aligned settings, optional fitted imperfection.
pub struct DeviceSetup {
    pub frame: TetrahedronFrame,
    pub device: DeviceModel,
    pub concurrence: f64,
    pub splitting: f64,
    pub rotation: Option<[f64; 3]>,
    pub imperfection: Option<[f64; 2]>,
}

pub fn build_device(
    concurrence: f64,
    splitting: f64,
    rotation: Option<String>,
    imperfection: Option<String>,
) -> Result<DeviceSetup, CliError> {
    if !(concurrence > 0.0 && concurrence <= 1.0) {
        return Err(CliError::usage(format!(
            "--concurrence must lie in (0, 1], got {concurrence}"
        )));
    }
    if !(0.0..=1.0).contains(&splitting) {
        return Err(CliError::usage(format!(
            "--splitting must lie in [0, 1], got {splitting}"
        )));
    }
    let euler = match &rotation {
        None => None,
        Some(text) => {
            let v = parse_csv_floats(text, 3, "--rotation")?;
            Some([v[0], v[1], v[2]])
        }
    };
    let frame = match euler {
        None => TetrahedronFrame::identity(),
        Some([a, b, c]) => TetrahedronFrame::new(Some(Rotation3::from_euler_zyz(a, b, c)))?,
    };
    let targets = mpsim_core::projection_targets(&frame, concurrence)?;
    let polarizer = mpsim_core::PartialPolarizer::for_concurrence(concurrence)?;
    let settings = mpsim_core::setting_unitaries_for_targets(&targets, &polarizer)?;
    let mut device = DeviceModel::new(splitting, polarizer, settings)?;
    let targets = match &imperfection {
        None => None,
        Some(text) => {
            let v = parse_csv_floats(text, 2, "--imperfection")?;
            Some([v[0], v[1]])
        }
    };
    if let Some([v, a]) = targets {
        let fitted = fit_imperfection_unitary(&ImperfectionTargets::new(v, a)?)?;
        device = device.with_imperfection(fitted)?;
    }
    Ok(DeviceSetup {
        frame,
        device,
        concurrence,
        splitting,
        rotation: euler,
        imperfection: targets,
    })
}

fn parse_strategy(text: &str) -> Result<StrategyKind, CliError> {
    match text {
        "collective" => Ok(StrategyKind::Collective),
        "locc" => Ok(StrategyKind::Locc),
        "supp-ent" => Ok(StrategyKind::SuppressedEntanglement),
        other => Err(CliError::usage(format!(
            "--strategy must be collective, locc, or supp-ent, got '{other}'"
        ))),
    }
}

fn load_state_set(path: &PathBuf) -> Result<Vec<WeightedState>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read state set {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| {
        CliError::usage(format!(
            "state set {} is not valid JSON: {e}",
            path.display()
        ))
    })?;
    let entries = value
        .as_array()
        .ok_or_else(|| CliError::usage("state set file must hold a JSON array"))?;
    if entries.is_empty() {
        return Err(CliError::usage("state set file holds no states"));
    }
    let mut states = Vec::with_capacity(entries.len());
    let mut explicit_weights = 0usize;
    for (i, entry) in entries.iter().enumerate() {
        let theta = entry
            .get("theta")
            .and_then(Value::as_f64)
            .ok_or_else(|| CliError::usage(format!("state {i}: missing numeric 'theta'")))?;
        let phi = entry
            .get("phi")
            .and_then(Value::as_f64)
            .ok_or_else(|| CliError::usage(format!("state {i}: missing numeric 'phi'")))?;
        let weight = entry.get("weight").and_then(Value::as_f64);
        if weight.is_some() {
            explicit_weights += 1;
        }
        states.push((PureQubit::from_angles(theta, phi)?, weight));
    }
    if explicit_weights != 0 && explicit_weights != states.len() {
        return Err(CliError::usage(
            "state set: give 'weight' on every state or on none",
        ));
    }
    let uniform = 1.0 / states.len() as f64;
    Ok(states
        .into_iter()
        .map(|(state, weight)| WeightedState {
            state,
            weight: weight.unwrap_or(uniform),
        })
        .collect())
}

pub fn run(args: GameArgs) -> Result<(), CliError> {
    let file = load_config_file(&args.config)?;

    let kind = required(args.kind.or(file_str(&file, "kind")), "kind")?;
    let strategy_name = required(args.strategy.or(file_str(&file, "strategy")), "strategy")?;
    let trials = required(args.trials.or(file_u64(&file, "trials")), "trials")?;
    let seed = required(args.seed.or(file_u64(&file, "seed")), "seed")?;
    let concurrence = args
        .concurrence
        .or(file_f64(&file, "concurrence"))
        .unwrap_or(0.25);
    let splitting = args
        .splitting
        .or(file_f64(&file, "splitting"))
        .unwrap_or(0.5);
    let imperfection = args.imperfection.or(file_str(&file, "imperfection"));
    let rotation = args.rotation.or(file_str(&file, "rotation"));
    let set_path = args.set.or(file_str(&file, "set").map(PathBuf::from));
    let out = required(
        args.out.or(file_str(&file, "out").map(PathBuf::from)),
        "out",
    )?;

    if trials == 0 {
        return Err(CliError::usage("--trials must be at least 1"));
    }
    let strategy = parse_strategy(&strategy_name)?;
    let prior = match kind.as_str() {
        "genmp" => Prior::UniformSphere,
        "tetramp" => Prior::TetrahedronVertices,
        "set" => {
            let path = set_path
                .as_ref()
                .ok_or_else(|| CliError::usage("--kind set needs --set <file>"))?;
            Prior::FiniteSet(load_state_set(path)?)
        }
        other => {
            return Err(CliError::usage(format!(
                "--kind must be genmp, tetramp, or set, got '{other}'"
            )))
        }
    };

    let setup = build_device(concurrence, splitting, rotation, imperfection)?;
    let config = GameConfig {
        prior,
        strategy,
        trials,
        seed,
        device: setup.device.clone(),
        frame: setup.frame.clone(),
    };
    let result = run_game(&config)?;
    let benchmark = expected_fidelity(&config.prior, strategy, &setup.device, &setup.frame)?;

    let per_state: Vec<Value> = result
        .per_state
        .iter()
        .map(|s| {
            serde_json::json!({
                "theta": s.state.theta(),
                "phi": s.state.phi(),
                "trials": s.trials,
                "freq": s.guess_freq.to_vec(),
                "fidelity": s.mean_fidelity,
            })
        })
        .collect();
    let report = serde_json::json!({
        "kind": kind,
        "strategy": strategy_name,
        "trials": trials,
        "seed": seed,
        "average_fidelity": result.average_fidelity,
        "standard_error": result.standard_error,
        "theoretical_benchmark": benchmark,
        "per_state": per_state,
    });

    let mut resolved = serde_json::json!({
        "kind": kind,
        "strategy": strategy_name,
        "trials": trials,
        "seed": seed,
        "concurrence": setup.concurrence,
        "splitting": setup.splitting,
        "out": out.to_string_lossy(),
    });
    if let Some([a, b, c]) = setup.rotation {
        resolved["rotation"] = Value::String(format!("{a},{b},{c}"));
    }
    if let Some([v, a]) = setup.imperfection {
        resolved["imperfection"] = Value::String(format!("{v},{a}"));
    }
    if let Some(path) = &set_path {
        resolved["set"] = Value::String(path.to_string_lossy().into_owned());
    }

    let mut writer = RunWriter::new("game", resolved, seed);
    writer.add_json(out.clone(), &report)?;
    let manifest_path = out.with_extension("manifest.json");
    writer.finish(&manifest_path)?;
    println!(
        "average_fidelity {:.6} +- {:.6} (benchmark {:.6}) -> {}",
        result.average_fidelity,
        result.standard_error,
        benchmark,
        out.display()
    );
    Ok(())
}

//! `mpsim tomography`: infidelity scaling sweeps with the power-law fit
//! and Gill-Massar reference curve.

use std::path::PathBuf;

use clap::Args;
use mpsim_core::{
    fit_power_law, gill_massar_reference, haar_random_qubit, infidelity_curve, seed::task_rng,
    CurvePoint, PureQubit, ReferenceMode, TomographyConfig,
};
use serde_json::Value;

use crate::game_cmd::{build_device, file_f64, file_str, file_u64, load_config_file, required};
use crate::output::{fmt_sci, RunWriter};
use crate::CliError;

/// Substream reserved for drawing the --random-state.
const STATE_STREAM: u64 = u64::MAX;

#[derive(Args)]
pub struct TomographyArgs {
    /// JSON config file; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Polar angle of the true state, radians in [0, pi].
    #[arg(long)]
    theta: Option<f64>,
    /// Azimuth of the true state, radians in [0, 2pi).
    #[arg(long)]
    phi: Option<f64>,
    /// Draw the true state Haar-uniformly from the seed instead.
    #[arg(long, default_value_t = false)]
    random_state: bool,
    /// Master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated even ensemble sizes (photons), ascending.
    #[arg(long)]
    nens: Option<String>,
    /// Reconstructions per ensemble size.
    #[arg(long)]
    repeats: Option<u32>,
    /// Infidelity reference: true (the true state) or largest-n.
    #[arg(long)]
    reference: Option<String>,
    /// Projection concurrence of the device (default 0.25).
    #[arg(long)]
    concurrence: Option<f64>,
    /// Beamsplitter power transmittance (default 0.5).
    #[arg(long)]
    splitting: Option<f64>,
    /// Frame rotation as Z-Y-Z Euler angles "a,b,c" in radians.
    #[arg(long)]
    rotation: Option<String>,
    /// Output path prefix for <prefix>_curve.csv, <prefix>_fit.json,
    /// <prefix>_gill_massar.csv, and <prefix>.manifest.json.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_nens(text: &str) -> Result<Vec<u64>, CliError> {
    let mut sizes = Vec::new();
    for part in text.split(',') {
        let n: u64 = part
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("--nens: cannot parse '{part}' as an integer")))?;
        if n % 2 != 0 || n < 4 {
            return Err(CliError::usage(format!(
                "--nens entries must be even and at least 4 (pairs must be integral), got {n}"
            )));
        }
        sizes.push(n);
    }
    if sizes.is_empty() {
        return Err(CliError::usage("--nens holds no sizes"));
    }
    if sizes.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::usage("--nens must be strictly ascending"));
    }
    Ok(sizes)
}

fn curve_csv(curve: &[CurvePoint]) -> Vec<u8> {
    let mut text = String::from("n_ens,mean_infidelity,stderr,repeats\n");
    for p in curve {
        let stderr = p.stderr.map(fmt_sci).unwrap_or_default();
        text.push_str(&format!(
            "{},{},{},{}\n",
            p.n_ens,
            fmt_sci(p.mean_infidelity),
            stderr,
            p.repeats
        ));
    }
    text.into_bytes()
}

fn gill_massar_csv(sizes: &[u64]) -> Result<Vec<u8>, CliError> {
    let mut text = String::from("n_ens,gill_massar\n");
    for &n in sizes {
        text.push_str(&format!("{},{}\n", n, fmt_sci(gill_massar_reference(n)?)));
    }
    Ok(text.into_bytes())
}

pub fn run(args: TomographyArgs) -> Result<(), CliError> {
    let file = load_config_file(&args.config)?;

    let seed = required(args.seed.or(file_u64(&file, "seed")), "seed")?;
    let nens_text = required(args.nens.or(file_str(&file, "nens")), "nens")?;
    let repeats = required(
        args.repeats
            .or(file_u64(&file, "repeats").map(|v| v as u32)),
        "repeats",
    )?;
    let reference_name = args
        .reference
        .or(file_str(&file, "reference"))
        .unwrap_or_else(|| "true".to_owned());
    let concurrence = args
        .concurrence
        .or(file_f64(&file, "concurrence"))
        .unwrap_or(0.25);
    let splitting = args
        .splitting
        .or(file_f64(&file, "splitting"))
        .unwrap_or(0.5);
    let rotation = args.rotation.or(file_str(&file, "rotation"));
    let out = required(
        args.out.or(file_str(&file, "out").map(PathBuf::from)),
        "out",
    )?;
    let random_state = args.random_state
        || file
            .get("random_state")
            .and_then(Value::as_bool)
            .unwrap_or(false);
    let theta = args.theta.or(file_f64(&file, "theta"));
    let phi = args.phi.or(file_f64(&file, "phi"));

    if repeats == 0 {
        return Err(CliError::usage("--repeats must be at least 1"));
    }
    let ensemble_sizes = parse_nens(&nens_text)?;
    let reference = match reference_name.as_str() {
        "true" => ReferenceMode::TrueState,
        "largest-n" => ReferenceMode::LargestEnsemble,
        other => {
            return Err(CliError::usage(format!(
                "--reference must be 'true' or 'largest-n', got '{other}'"
            )))
        }
    };
    let true_state = if random_state {
        if theta.is_some() || phi.is_some() {
            return Err(CliError::usage(
                "--random-state conflicts with --theta/--phi",
            ));
        }
        haar_random_qubit(&mut task_rng(seed, STATE_STREAM))
    } else {
        let theta =
            theta.ok_or_else(|| CliError::usage("give --theta and --phi, or --random-state"))?;
        let phi = phi.unwrap_or(0.0);
        PureQubit::from_angles(theta, phi)?
    };

    let setup = build_device(concurrence, splitting, rotation, None)?;
    let config = TomographyConfig {
        true_state,
        ensemble_sizes: ensemble_sizes.clone(),
        repeats,
        seed,
        device: setup.device,
        frame: setup.frame,
        reference,
    };
    let curve = infidelity_curve(&config)?;

    // The zero-by-construction largest-N point (and any other exact zero)
    // cannot enter the log-log fit.
    let fit_points: Vec<(f64, f64)> = curve
        .iter()
        .filter(|p| p.mean_infidelity > 0.0)
        .map(|p| (p.n_ens as f64, p.mean_infidelity))
        .collect();
    let fit = if fit_points.len() >= 3 {
        Some(fit_power_law(&fit_points)?)
    } else {
        None
    };

    let mut resolved = serde_json::json!({
        "theta": true_state.theta(),
        "phi": true_state.phi(),
        "random_state": random_state,
        "seed": seed,
        "nens": nens_text,
        "repeats": repeats,
        "reference": reference_name,
        "concurrence": setup.concurrence,
        "splitting": setup.splitting,
        "out": out.to_string_lossy(),
    });
    if let Some([a, b, c]) = setup.rotation {
        resolved["rotation"] = Value::String(format!("{a},{b},{c}"));
    }

    let prefix = out.to_string_lossy().into_owned();
    let curve_path = PathBuf::from(format!("{prefix}_curve.csv"));
    let gill_path = PathBuf::from(format!("{prefix}_gill_massar.csv"));
    let mut writer = RunWriter::new("tomography", resolved, seed);
    writer.add_file(curve_path.clone(), curve_csv(&curve));
    writer.add_file(gill_path, gill_massar_csv(&ensemble_sizes)?);
    if let Some(fit) = &fit {
        let record = serde_json::json!({
            "a": fit.coefficient,
            "b": fit.exponent,
            "stderr_a": fit.stderr_coefficient,
            "stderr_b": fit.stderr_exponent,
            "r_squared": fit.r_squared,
        });
        writer.add_json(PathBuf::from(format!("{prefix}_fit.json")), &record)?;
    }
    writer.finish(&PathBuf::from(format!("{prefix}.manifest.json")))?;

    match &fit {
        Some(f) => println!(
            "curve over {} sizes -> {}; fit 1-F = {:.3} * N^{:.4}",
            curve.len(),
            curve_path.display(),
            f.coefficient,
            f.exponent
        ),
        None => println!(
            "curve over {} sizes -> {}; too few positive points for a fit",
            curve.len(),
            curve_path.display()
        ),
    }
    Ok(())
}

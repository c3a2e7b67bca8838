//! Output formatting shared by the subcommands.
//!
//! Every float in an emitted file is written in fixed scientific notation
//! with 12 significant digits, so identical runs produce byte-identical
//! files that can be compared by digest.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde_json::ser::Formatter;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::CliError;

/// 12 significant digits, fixed scientific notation.
pub fn fmt_sci(value: f64) -> String {
    format!("{value:.11e}")
}

/// serde_json formatter that routes every f64 through `fmt_sci`.
struct SciFormatter;

impl Formatter for SciFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(fmt_sci(value).as_bytes())
    }
}

/// Serializes `value` with the fixed float format, trailing newline
/// included.
pub fn json_to_bytes(value: &Value) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SciFormatter);
    serde::Serialize::serialize(value, &mut ser)
        .map_err(|e| CliError::runtime(format!("json serialization failed: {e}")))?;
    buf.push(b'\n');
    Ok(buf)
}

fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Collects output files, then writes them together with a manifest
/// recording the resolved configuration and per-file digests.
pub struct RunWriter {
    command: &'static str,
    config: Value,
    seed: u64,
    started: Instant,
    outputs: Vec<(PathBuf, Vec<u8>)>,
}

impl RunWriter {
    pub fn new(command: &'static str, config: Value, seed: u64) -> Self {
        RunWriter {
            command,
            config,
            seed,
            started: Instant::now(),
            outputs: Vec::new(),
        }
    }

    pub fn add_file(&mut self, path: PathBuf, bytes: Vec<u8>) {
        self.outputs.push((path, bytes));
    }

    pub fn add_json(&mut self, path: PathBuf, value: &Value) -> Result<(), CliError> {
        let bytes = json_to_bytes(value)?;
        self.add_file(path, bytes);
        Ok(())
    }

    /// Writes all data files plus `manifest_path`. The data files are
    /// byte-reproducible; the manifest additionally records the wall-clock
    /// duration, which is not.
    pub fn finish(self, manifest_path: &Path) -> Result<(), CliError> {
        let mut entries = Vec::new();
        for (path, bytes) in &self.outputs {
            fs::write(path, bytes)?;
            entries.push(serde_json::json!({
                "path": path.to_string_lossy(),
                "sha256": sha256_hex(bytes),
            }));
        }
        let manifest = serde_json::json!({
            "command": self.command,
            "config": self.config,
            "seed": self.seed,
            "version": env!("CARGO_PKG_VERSION"),
            "duration_seconds": self.started.elapsed().as_secs_f64(),
            "outputs": entries,
        });
        let mut file = fs::File::create(manifest_path)?;
        file.write_all(&json_to_bytes(&manifest)?)?;
        Ok(())
    }
}

/// Parses "a,b,..." into exactly `n` floats.
pub fn parse_csv_floats(text: &str, n: usize, what: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != n {
        return Err(CliError::usage(format!(
            "{what} needs {n} comma-separated values, got {}",
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| CliError::usage(format!("{what}: cannot parse '{p}' as a number")))
        })
        .collect()
}

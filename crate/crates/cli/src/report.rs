//! The machine-readable report every command emits.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Environment variable overriding the directory relative `--out`
/// paths are resolved against.
pub const OUT_DIR_ENV: &str = "UNIONBOUND_OUT_DIR";

/// One report per invocation: the command echo, a digest of the
/// resolved inputs, the bound reports produced, command-specific
/// reference values, and the wall-clock duration. Field order is fixed
/// for diffability.
#[derive(Debug, Serialize)]
pub struct CliReport {
    pub command: String,
    pub inputs_digest: String,
    pub bounds: Vec<unionbound::Report>,
    pub references: Option<serde_json::Value>,
    pub duration_seconds: f64,
}

impl CliReport {
    pub fn new(
        inputs: &serde_json::Value,
        bounds: Vec<unionbound::Report>,
        references: Option<serde_json::Value>,
        started: Instant,
    ) -> Self {
        CliReport {
            command: command_echo(),
            inputs_digest: digest(inputs),
            bounds,
            references,
            duration_seconds: started.elapsed().as_secs_f64(),
        }
    }
}

/// `unionbound <args...>`, with the binary path normalised away.
fn command_echo() -> String {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.is_empty() {
        "unionbound".to_string()
    } else {
        format!("unionbound {}", args.join(" "))
    }
}

/// SHA-256 of the canonical JSON encoding of the resolved inputs
/// (serde_json maps serialize with sorted keys).
pub fn digest(inputs: &serde_json::Value) -> String {
    let canonical = serde_json::to_string(inputs).expect("inputs serialize");
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    let raw = hasher.finalize();
    let mut hex = String::with_capacity(7 + raw.len() * 2);
    hex.push_str("sha256:");
    for byte in raw {
        hex.push_str(&format!("{byte:02x}"));
    }
    hex
}

/// Prints either the human summary or the JSON document, and writes
/// the JSON to `--out` when requested.
pub fn emit(report: &CliReport, human: &str, json: bool, out: Option<&Path>) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(report)?);
    } else {
        print!("{human}");
    }
    if let Some(path) = out {
        let resolved = resolve_out_path(path);
        if let Some(parent) = resolved.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent)
                    .with_context(|| format!("creating {}", parent.display()))?;
            }
        }
        std::fs::write(&resolved, serde_json::to_string_pretty(report)?)
            .with_context(|| format!("writing {}", resolved.display()))?;
    }
    Ok(())
}

fn resolve_out_path(path: &Path) -> PathBuf {
    if path.is_absolute() {
        return path.to_path_buf();
    }
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir).join(path),
        _ => path.to_path_buf(),
    }
}

/// Human-readable lines for a list of bound reports.
pub fn describe_bounds(bounds: &[unionbound::Report]) -> String {
    let mut text = String::new();
    for report in bounds {
        text.push_str(&format!(
            "form: {}\nbound: {:.12}\n",
            report.form.name(),
            report.bound
        ));
        if let Some(expo) = report.exponent {
            text.push_str(&format!("exponent: {expo:.12}\n"));
        }
        if let Some(spacing) = report.spacing {
            text.push_str(&format!("L: {spacing}\n"));
        }
        if report.clipped {
            text.push_str("clipped: true\n");
        }
        for (name, value) in &report.residuals {
            text.push_str(&format!("residual {name}: {value:.12}\n"));
        }
    }
    text
}

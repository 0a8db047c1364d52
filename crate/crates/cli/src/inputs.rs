//! File loading helpers shared by the subcommands.

use std::path::Path;

use anyhow::{Context, Result};
use unionbound::models::TABLE_FILE_MAGIC;
use unionbound::{Band, JointTable, Marginals, Profile};

fn has_extension(path: &Path, ext: &str) -> bool {
    path.extension()
        .map(|e| e.eq_ignore_ascii_case(ext))
        .unwrap_or(false)
}

/// Loads marginals from CSV (one probability per line) or, for `.json`
/// files, from `{"probs":[...]}`.
pub fn load_marginals(path: &Path) -> Result<Marginals> {
    let loaded = if has_extension(path, "json") {
        Marginals::from_json_path(path)
    } else {
        Marginals::from_csv_path(path)
    };
    loaded.with_context(|| format!("loading marginals from {}", path.display()))
}

/// Loads an intersection band from CSV (`i,j,value` lines) or, for
/// `.json` files, from `{"band":{"W":..,"entries":[[i,j,v],...]}}`.
pub fn load_band(path: &Path) -> Result<Band> {
    let loaded = if has_extension(path, "json") {
        Band::from_json_path(path)
    } else {
        Band::from_csv_path(path)
    };
    loaded.with_context(|| format!("loading intersection band from {}", path.display()))
}

/// Loads a mixing profile from its JSON document.
pub fn load_profile(path: &Path) -> Result<Profile> {
    Profile::from_json_path(path)
        .with_context(|| format!("loading mixing profile from {}", path.display()))
}

/// Loads a joint table, sniffing the raw binary format by its magic
/// and falling back to the JSON form.
pub fn load_table(path: &Path) -> Result<JointTable> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let loaded = if bytes.len() >= 8 && &bytes[..8] == TABLE_FILE_MAGIC {
        JointTable::read_binary(bytes.as_slice())
    } else {
        let text = String::from_utf8(bytes)
            .map_err(|_| unionbound::Error::MalformedTable("neither magic nor UTF-8".into()))?;
        JointTable::from_json_str(&text)
    };
    loaded.with_context(|| format!("loading joint table from {}", path.display()))
}

/// File contents as a JSON value for the inputs digest.
pub fn file_for_digest(path: &Path) -> Result<serde_json::Value> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(match String::from_utf8(bytes) {
        Ok(text) => serde_json::Value::String(text),
        Err(e) => {
            // binary inputs digest their hex dump
            let mut hex = String::new();
            for b in e.as_bytes() {
                hex.push_str(&format!("{b:02x}"));
            }
            serde_json::Value::String(hex)
        }
    })
}

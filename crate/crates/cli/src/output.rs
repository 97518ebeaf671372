//! Deterministic artifact emission: CSV with a config-hash comment line
//! and 17-significant-digit floats, JSON with stable struct key order.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::CliError;

/// FNV-1a 64-bit hash of the canonical JSON of the effective config; ties
/// every artifact to the run that produced it.
pub fn config_hash<C: Serialize>(config: &C) -> String {
    let canonical = serde_json::to_string(config).expect("config serializes");
    let mut hash: u64 = 0xcbf29ce484222325;
    for byte in canonical.as_bytes() {
        hash ^= u64::from(*byte);
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:016x}")
}

/// Round-trip-exact float formatting (17 significant digits).
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// A CSV artifact under construction: `#` comment lines, a header row,
/// comma-separated data, `.` decimal point, LF line endings.
pub struct Csv {
    buf: String,
}

impl Csv {
    pub fn new(hash: &str, columns: &[&str]) -> Self {
        let mut buf = String::new();
        let _ = write!(buf, "# config={hash}\n{}\n", columns.join(","));
        Csv { buf }
    }

    pub fn comment(&mut self, text: &str) {
        let _ = write!(self.buf, "# {text}\n");
    }

    /// One data row; `None` cells are left empty.
    pub fn row(&mut self, cells: &[Option<f64>]) {
        let rendered: Vec<String> = cells
            .iter()
            .map(|c| c.map(fmt_float).unwrap_or_default())
            .collect();
        let _ = write!(self.buf, "{}\n", rendered.join(","));
    }

    pub fn finish(self) -> String {
        self.buf
    }
}

/// Writes text to `path`, creating parent directories.
pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)
                .map_err(|e| CliError::numerical(&format!("{}: {e}", parent.display())))?;
        }
    }
    fs::write(path, text).map_err(|e| CliError::numerical(&format!("{}: {e}", path.display())))
}

/// Serializes a summary as pretty JSON (stable struct field order, UTF-8,
/// trailing newline).
pub fn write_json<S: Serialize>(path: &Path, value: &S) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::numerical(&format!("json: {e}")))?;
    text.push('\n');
    write_text(path, &text)
}

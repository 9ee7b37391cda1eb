use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Numerical(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<isoperim::Error> for CliError {
    fn from(e: isoperim::Error) -> Self {
        use isoperim::Error::*;
        match e {
            InvalidParameter(_) | Domain(_) | InvalidSet(_) | Precondition(_) => CliError::Usage(e.to_string()),
            Infeasible(_) | Numerical(_) => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// Fixed 17-significant-digit float formatting.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "NA".to_string(), num)
}

/// In-memory CSV with a header row and LF line endings.
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.join(","));
            s.push('\n');
        }
        s
    }
}

/// Everything needed to reproduce a run.
#[derive(Serialize, Debug)]
pub struct RunManifest {
    pub command: String,
    pub measure: String,
    pub settings: BTreeMap<String, serde_json::Value>,
    pub seed: Option<u64>,
    pub outputs: Vec<String>,
    pub tool_version: String,
}

impl RunManifest {
    pub fn new(command: &str, measure: &str) -> Self {
        Self {
            command: command.to_string(),
            measure: measure.to_string(),
            settings: BTreeMap::new(),
            seed: None,
            outputs: Vec::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<serde_json::Value>) {
        self.settings.insert(key.to_string(), value.into());
    }
}

/// `dir/stem.csv` → `dir/stem<suffix>.csv`.
pub fn sibling(path: &str, suffix: &str) -> String {
    let p = Path::new(path);
    let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let ext = p.extension().map(|e| format!(".{}", e.to_string_lossy())).unwrap_or_default();
    let name = format!("{stem}{suffix}{ext}");
    match p.parent() {
        Some(dir) if !dir.as_os_str().is_empty() => dir.join(name).to_string_lossy().into_owned(),
        _ => name,
    }
}

/// Collects output files; the primary CSV goes to stdout when no path is given.
pub struct Sink {
    primary: Option<String>,
    manifest: RunManifest,
}

impl Sink {
    pub fn new(primary: Option<String>, manifest: RunManifest) -> Self {
        Self { primary, manifest }
    }

    pub fn manifest_mut(&mut self) -> &mut RunManifest {
        &mut self.manifest
    }

    pub fn primary_path(&self) -> Option<&str> {
        self.primary.as_deref()
    }

    pub fn write_primary(&mut self, table: &Table) -> Result<(), CliError> {
        match self.primary.clone() {
            Some(path) => self.write_file(&path, &table.render()),
            None => {
                io::stdout().write_all(table.render().as_bytes())?;
                Ok(())
            }
        }
    }

    pub fn write_file(&mut self, path: &str, contents: &str) -> Result<(), CliError> {
        fs::write(PathBuf::from(path), contents).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
        self.manifest.outputs.push(path.to_string());
        Ok(())
    }

    /// Writes `<primary>.manifest.json` when the primary output is a file.
    pub fn finish(self) -> Result<(), CliError> {
        if let Some(path) = &self.primary {
            let mut json = serde_json::to_string_pretty(&self.manifest).map_err(|e| CliError::Io(e.to_string()))?;
            json.push('\n');
            let mpath = format!("{path}.manifest.json");
            fs::write(&mpath, json).map_err(|e| CliError::Io(format!("{mpath}: {e}")))?;
        }
        Ok(())
    }
}

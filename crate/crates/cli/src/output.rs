use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use expspline::CurveSample;
use tempfile::NamedTempFile;

use crate::commands::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

pub fn render_curve(curve: &CurveSample, format: Format) -> Result<String, Failure> {
    match format {
        Format::Csv => Ok(curve.to_csv()),
        Format::Json => Ok(curve.to_json()? + "\n"),
    }
}

/// Writes through a temporary file in the target directory and renames it into
/// place, so a failed run never leaves a partial file.
pub fn write_atomic(path: &Path, text: &str) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir).map_err(|e| Failure::io(path, e))?;
    tmp.write_all(text.as_bytes()).map_err(|e| Failure::io(path, e))?;
    tmp.persist(path).map_err(|e| Failure::io(path, e.error))?;
    Ok(())
}

/// Sends `text` to `out`, or to stdout when no path is given.
pub fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => write_atomic(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Internal(e.to_string()))
        }
    }
}

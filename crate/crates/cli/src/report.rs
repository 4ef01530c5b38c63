//! Artifact writers: pretty JSON reports, CSV series, and raw little-endian
//! complex arrays with a JSON sidecar describing the layout.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use dkp_core::evolution::GridState;

use crate::CliError;

pub fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)?;
    Ok(())
}

pub fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<PathBuf, CliError> {
    let path = dir.join(name);
    let mut file = BufWriter::new(File::create(&path)?);
    serde_json::to_writer_pretty(&mut file, value)?;
    file.write_all(b"\n")?;
    file.flush()?;
    Ok(path)
}

pub fn write_csv<I>(dir: &Path, name: &str, header: &str, rows: I) -> Result<PathBuf, CliError>
where
    I: IntoIterator<Item = String>,
{
    let path = dir.join(name);
    let mut file = BufWriter::new(File::create(&path)?);
    writeln!(file, "{header}")?;
    for row in rows {
        writeln!(file, "{row}")?;
    }
    file.flush()?;
    Ok(path)
}

/// Layout descriptor written next to every binary array.
#[derive(Serialize)]
pub struct BinarySidecar {
    pub dims: Vec<usize>,
    pub component_order: String,
    pub dtype: String,
}

/// Writes the state as contiguous little-endian `f64` pairs plus a
/// `<stem>.json` sidecar; returns the two paths.
pub fn write_state(
    dir: &Path,
    stem: &str,
    state: &GridState,
) -> Result<(PathBuf, PathBuf), CliError> {
    let bin_path = dir.join(format!("{stem}.bin"));
    let mut file = BufWriter::new(File::create(&bin_path)?);
    for v in state.data() {
        file.write_all(&v.re.to_le_bytes())?;
        file.write_all(&v.im.to_le_bytes())?;
    }
    file.flush()?;

    let sizes = state.grid().sizes();
    let sidecar = BinarySidecar {
        dims: vec![sizes[0], sizes[1], sizes[2], sizes[3], state.kind().dim()],
        component_order: "row-major over [t, x, y, z, spinor]; each element stored as re, im"
            .to_owned(),
        dtype: "complex128-le".to_owned(),
    };
    let sidecar_path = write_json(dir, &format!("{stem}.json"), &sidecar)?;
    Ok((bin_path, sidecar_path))
}

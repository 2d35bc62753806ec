//! CSV and JSON writers with fixed formatting.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use delta_riemann::{Atom, SampledProfile};
use serde::Serialize;

use crate::CliError;

/// 17 significant digits, `.` decimal point, no locale.
pub fn num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{x:.16e}")
}

pub fn profile_csv(p: &SampledProfile) -> String {
    let mut s = String::from("x,rho,u\n");
    for i in 0..p.x.len() {
        let _ = writeln!(s, "{},{},{}", num(p.x[i]), num(p.rho[i]), num(p.u[i]));
    }
    s
}

#[derive(Serialize)]
struct AtomsFile<'a> {
    time: f64,
    atoms: &'a [Atom],
}

pub fn atoms_json(p: &SampledProfile) -> Result<String, CliError> {
    json(&AtomsFile { time: p.time, atoms: &p.atoms })
}

/// `<stem>.atoms.json` next to the CSV.
pub fn sidecar_path(csv: &Path) -> PathBuf {
    let stem = csv.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "profile".into());
    csv.with_file_name(format!("{stem}.atoms.json"))
}

pub fn json<T: Serialize + ?Sized>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

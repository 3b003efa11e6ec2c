//! Plain-text path storage: a `t,value` CSV plus a `key=value` metadata sidecar.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::{Path as FsPath, PathBuf};

use super::{DyadicGrid, Path, ProcessSpec};
use crate::error::{Error, Result};

/// Formats a float with 17 significant digits, which round-trips every `f64`.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes `t,value` rows with a header line.
pub fn write_path_csv<W: Write>(path: &Path, mut out: W) -> Result<()> {
    writeln!(out, "t,value")?;
    let grid = path.grid();
    for (i, v) in path.values().iter().enumerate() {
        writeln!(out, "{},{}", format_f64(grid.time(i)), format_f64(*v))?;
    }
    Ok(())
}

/// Reads a `t,value` CSV. The time column must be the dyadic grid `i 2^-m`.
pub fn read_path_csv<R: Read>(input: R) -> Result<Path> {
    let reader = BufReader::new(input);
    let mut times = Vec::new();
    let mut values = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split(',');
        let (Some(t), Some(v), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::Parse(format!("line {}: expected two columns", lineno + 1)));
        };
        let t = t.trim();
        let v = v.trim();
        if times.is_empty() && values.is_empty() && t.parse::<f64>().is_err() {
            // header
            continue;
        }
        let parse = |s: &str| {
            s.parse::<f64>()
                .map_err(|e| Error::Parse(format!("line {}: `{s}`: {e}", lineno + 1)))
        };
        times.push(parse(t)?);
        values.push(parse(v)?);
    }
    let grid = DyadicGrid::from_len(times.len())?;
    for (i, t) in times.iter().enumerate() {
        if (t - grid.time(i)).abs() > 1e-12 {
            return Err(Error::Parse(format!(
                "row {i}: time {t} is not the dyadic grid point {}",
                grid.time(i)
            )));
        }
    }
    Path::new(grid, values, None)
}

/// Sidecar location for a CSV file: `foo.csv` -> `foo.csv.meta`.
pub fn sidecar_path(csv: &FsPath) -> PathBuf {
    let mut s = csv.as_os_str().to_owned();
    s.push(".meta");
    PathBuf::from(s)
}

pub fn write_metadata<W: Write>(meta: &BTreeMap<String, String>, mut out: W) -> Result<()> {
    for (k, v) in meta {
        if k.contains('=') || k.contains('\n') || v.contains('\n') {
            return Err(Error::Parse(format!("metadata entry `{k}` is not representable")));
        }
        writeln!(out, "{k}={v}")?;
    }
    Ok(())
}

pub fn read_metadata<R: Read>(input: R) -> Result<BTreeMap<String, String>> {
    let mut meta = BTreeMap::new();
    for line in BufReader::new(input).lines() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("metadata line `{line}` has no `=`")))?;
        meta.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(meta)
}

/// Writes `csv` and its sidecar. `extra` entries are stored next to the process tag.
pub fn save_path(path: &Path, csv: &FsPath, extra: &BTreeMap<String, String>) -> Result<()> {
    let mut file = fs::File::create(csv)?;
    write_path_csv(path, &mut file)?;
    let mut meta = extra.clone();
    meta.insert("level".into(), path.level().to_string());
    if let Some(spec) = path.process() {
        for (k, v) in spec.to_pairs() {
            meta.insert(k.to_string(), v);
        }
    }
    write_metadata(&meta, fs::File::create(sidecar_path(csv))?)
}

/// Reads a CSV and, when present, its sidecar; the process tag is restored
/// from the sidecar if it names one.
pub fn load_path(csv: &FsPath) -> Result<(Path, BTreeMap<String, String>)> {
    let path = read_path_csv(fs::File::open(csv)?)?;
    let meta_file = sidecar_path(csv);
    if !meta_file.exists() {
        return Ok((path, BTreeMap::new()));
    }
    let meta = read_metadata(fs::File::open(meta_file)?)?;
    let process = if meta.contains_key("process") {
        Some(ProcessSpec::from_pairs(&meta)?)
    } else {
        None
    };
    let path = Path::new(path.grid(), path.into_values(), process)?;
    Ok((path, meta))
}

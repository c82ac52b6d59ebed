//! Manifest files naming the terms of mixtures and averages.
//!
//! Mixture manifests carry one `alpha L-path B-path` line per term;
//! average manifests drop the map: `alpha B-path`. Full-line `#` comments
//! and blank lines are allowed; relative paths resolve against the
//! manifest's own directory.

use std::fs;
use std::path::{Path, PathBuf};

use rescomp_core::{MixtureSpec, MixtureTerm, SpdMatrix};

use crate::textmat::{read_map, read_spd};
use crate::CliError;

fn resolve(base: &Path, raw: &str) -> PathBuf {
    let p = PathBuf::from(raw);
    if p.is_absolute() {
        p
    } else {
        base.join(p)
    }
}

fn manifest_lines(path: &Path) -> Result<Vec<(usize, Vec<String>)>, CliError> {
    let text = fs::read_to_string(path).map_err(|err| CliError::Io {
        path: path.display().to_string(),
        err,
    })?;
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        rows.push((
            idx + 1,
            trimmed.split_whitespace().map(str::to_owned).collect(),
        ));
    }
    if rows.is_empty() {
        return Err(CliError::Parse {
            path: path.display().to_string(),
            line: 1,
            what: "manifest has no terms".into(),
        });
    }
    Ok(rows)
}

fn parse_weight(path: &Path, line: usize, tok: &str) -> Result<f64, CliError> {
    tok.parse().map_err(|_| CliError::Parse {
        path: path.display().to_string(),
        line,
        what: format!("invalid weight '{tok}'"),
    })
}

/// `alpha L-path B-path` per line.
pub fn read_mixture(path: &Path) -> Result<MixtureSpec, CliError> {
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let mut terms = Vec::new();
    for (line, fields) in manifest_lines(path)? {
        if fields.len() != 3 {
            return Err(CliError::Parse {
                path: path.display().to_string(),
                line,
                what: format!("expected 'alpha L-path B-path', found {} fields", fields.len()),
            });
        }
        let weight = parse_weight(path, line, &fields[0])?;
        let map = read_map(&resolve(&base, &fields[1]))?;
        let operand = read_spd(&resolve(&base, &fields[2]))?;
        terms.push(MixtureTerm {
            map,
            operand,
            weight,
        });
    }
    MixtureSpec::new(terms).map_err(CliError::Domain)
}

/// `alpha B-path` per line.
pub fn read_average(path: &Path) -> Result<(Vec<SpdMatrix>, Vec<f64>), CliError> {
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let mut operands = Vec::new();
    let mut weights = Vec::new();
    for (line, fields) in manifest_lines(path)? {
        if fields.len() != 2 {
            return Err(CliError::Parse {
                path: path.display().to_string(),
                line,
                what: format!("expected 'alpha B-path', found {} fields", fields.len()),
            });
        }
        weights.push(parse_weight(path, line, &fields[0])?);
        operands.push(read_spd(&resolve(&base, &fields[1]))?);
    }
    Ok((operands, weights))
}

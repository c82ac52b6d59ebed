//! The matrix text format.
//!
//! Layout: optional leading `#` comment lines, a `rows cols` header, then
//! `rows` lines of `cols` decimal literals separated by single spaces.
//! Writers emit 17 significant digits so a write/parse round trip is exact
//! for 64-bit floats; readers accept any finite decimal or scientific
//! literal.

use std::fs;
use std::path::Path;

use rescomp_core::{LinearMap, Matrix, SpdMatrix, SymMatrix};

use crate::CliError;

/// 17 significant digits, round-trip exact for f64.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn matrix_to_text(m: &Matrix) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", m.rows(), m.cols()));
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|&v| format_float(v)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn parse_error(path: &Path, line: usize, what: impl Into<String>) -> CliError {
    CliError::Parse {
        path: path.display().to_string(),
        line,
        what: what.into(),
    }
}

pub fn parse_matrix_text(text: &str, path: &Path) -> Result<Matrix, CliError> {
    let mut lines = text.lines().enumerate();

    // leading comment lines, then the dimension header
    let (header_line, header) = loop {
        match lines.next() {
            Some((idx, line)) if line.trim_start().starts_with('#') => {
                let _ = idx;
                continue;
            }
            Some((idx, line)) => break (idx + 1, line),
            None => return Err(parse_error(path, 1, "missing dimension header")),
        }
    };

    let mut parts = header.split_whitespace();
    let rows: usize = parts
        .next()
        .ok_or_else(|| parse_error(path, header_line, "missing row count"))?
        .parse()
        .map_err(|_| parse_error(path, header_line, "invalid row count"))?;
    let cols: usize = parts
        .next()
        .ok_or_else(|| parse_error(path, header_line, "missing column count"))?
        .parse()
        .map_err(|_| parse_error(path, header_line, "invalid column count"))?;
    if parts.next().is_some() {
        return Err(parse_error(path, header_line, "trailing tokens after dimensions"));
    }
    if rows == 0 || cols == 0 {
        return Err(parse_error(path, header_line, "dimensions must be positive"));
    }

    let mut data = Vec::with_capacity(rows * cols);
    let mut row_count = 0;
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        if row_count == rows {
            return Err(parse_error(path, line_no, "more rows than declared"));
        }
        let mut fields = 0;
        for tok in line.split_whitespace() {
            let v: f64 = tok
                .parse()
                .map_err(|_| parse_error(path, line_no, format!("invalid literal '{tok}'")))?;
            if !v.is_finite() {
                return Err(parse_error(path, line_no, format!("non-finite value '{tok}'")));
            }
            data.push(v);
            fields += 1;
        }
        if fields != cols {
            return Err(parse_error(
                path,
                line_no,
                format!("expected {cols} values, found {fields}"),
            ));
        }
        row_count += 1;
    }
    if row_count != rows {
        return Err(parse_error(
            path,
            row_count + 1,
            format!("expected {rows} rows, found {row_count}"),
        ));
    }

    Matrix::new(rows, cols, data).map_err(CliError::Domain)
}

pub fn read_matrix(path: &Path) -> Result<Matrix, CliError> {
    let text = fs::read_to_string(path).map_err(|err| CliError::Io {
        path: path.display().to_string(),
        err,
    })?;
    parse_matrix_text(&text, path)
}

/// Reads a matrix destined for an SPD slot: symmetrized, then certified.
pub fn read_spd(path: &Path) -> Result<SpdMatrix, CliError> {
    let m = read_matrix(path)?;
    let sym = SymMatrix::from_matrix(&m).map_err(CliError::Domain)?;
    SpdMatrix::new(sym).map_err(CliError::Domain)
}

pub fn read_map(path: &Path) -> Result<LinearMap, CliError> {
    LinearMap::new(read_matrix(path)?).map_err(CliError::Domain)
}

pub fn write_output(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|err| CliError::Io {
            path: path.display().to_string(),
            err,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::PathBuf;

    fn p() -> PathBuf {
        PathBuf::from("test-input")
    }

    #[test]
    fn identity_parses() {
        let m = parse_matrix_text("2 2\n1 0\n0 1\n", &p()).unwrap();
        assert_eq!(m.data(), &[1.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn leading_comments_are_skipped() {
        let m = parse_matrix_text("# generated\n# second\n1 1\n4.25\n", &p()).unwrap();
        assert_eq!(m.get(0, 0), 4.25);
    }

    #[test]
    fn round_trip_is_bitwise() {
        let values = vec![1.0 / 3.0, -2.5e-17, 1.0, 9.007199254740993e15];
        let m = Matrix::new(2, 2, values.clone()).unwrap();
        let text = matrix_to_text(&m);
        let back = parse_matrix_text(&text, &p()).unwrap();
        for (a, b) in values.iter().zip(back.data()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        // and the text itself is reproduced
        assert_eq!(matrix_to_text(&back), text);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_matrix_text("2 2\n1 0\nx 1\n", &p()).unwrap_err();
        match err {
            CliError::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other}"),
        }
        let err = parse_matrix_text("2 2\n1 0\n", &p()).unwrap_err();
        assert!(matches!(err, CliError::Parse { .. }));
    }

    #[test]
    fn negative_scalar_is_rejected_by_the_spd_reader() {
        let m = parse_matrix_text("1 1\n-1\n", &p()).unwrap();
        let sym = SymMatrix::from_matrix(&m).unwrap();
        assert!(SpdMatrix::new(sym).is_err());
    }
}

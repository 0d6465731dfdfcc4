//! Matrix text format: first line `rows cols`, then one line per row with
//! space-separated values. Values are written in exponent form, which in
//! Rust is the shortest representation that round-trips exactly.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use pinv_core::Matrix;

pub fn format_matrix(g: &Matrix) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.rows(), g.cols());
    for i in 0..g.rows() {
        let mut first = true;
        for j in 0..g.cols() {
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{:e}", g.at(i, j));
        }
        out.push('\n');
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<Matrix, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty matrix file")?;
    let mut dims = header.split_whitespace();
    let rows: usize = dims
        .next()
        .ok_or("missing row count")?
        .parse()
        .map_err(|e| format!("bad row count: {e}"))?;
    let cols: usize = dims
        .next()
        .ok_or("missing column count")?
        .parse()
        .map_err(|e| format!("bad column count: {e}"))?;
    if dims.next().is_some() {
        return Err("header has more than two fields".into());
    }
    let mut values = Vec::with_capacity(rows * cols);
    for (i, line) in lines.by_ref().take(rows).enumerate() {
        let before = values.len();
        for tok in line.split_whitespace() {
            let v: f64 = tok
                .parse()
                .map_err(|e| format!("row {}: bad value {tok:?}: {e}", i + 1))?;
            if !v.is_finite() {
                return Err(format!("row {}: non-finite value {tok:?}", i + 1));
            }
            values.push(v);
        }
        if values.len() - before != cols {
            return Err(format!(
                "row {} has {} values, expected {cols}",
                i + 1,
                values.len() - before
            ));
        }
    }
    if values.len() != rows * cols {
        return Err(format!(
            "expected {rows} rows, found {}",
            values.len() / cols.max(1)
        ));
    }
    if lines.any(|l| !l.trim().is_empty()) {
        return Err("trailing content after matrix rows".into());
    }
    Ok(Matrix::from_vec(rows, cols, values))
}

pub fn read_matrix(path: &Path) -> Result<Matrix, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_matrix(&text).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn write_matrix(path: &Path, g: &Matrix) -> Result<(), String> {
    fs::write(path, format_matrix(g)).map_err(|e| format!("{}: {e}", path.display()))
}
